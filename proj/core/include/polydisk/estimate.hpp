#pragma once

#include <complex>
#include <span>
#include <vector>

#include "polydisk/hermitian.hpp"
#include "polydisk/siegel.hpp"

namespace polydisk {

/// Reflection coefficients are clamped to |mu| <= 1 - kDiskBoundaryMargin;
/// deterministic signals would otherwise land exactly on the disk boundary
/// where the hyperbolic geometry degenerates.
inline constexpr double kDiskBoundaryMargin = 1e-9;

/// A range cell's coordinates in R x D^{m-1}: log power plus reflection
/// (Verblunsky/PARCOR) coefficients strictly inside the unit disk.
struct ReflectionPoint {
  double log_p0 = 0.0;
  std::vector<Complex> mu;

  int order() const { return static_cast<int>(mu.size()); }
};

void validate_reflection_point(const ReflectionPoint& point);
ReflectionPoint make_reflection_point(double log_p0, std::vector<Complex> mu);

/// Autoregressive model z_t = -sum_k a_k z_{t-k} + w_t with innovation power
/// sigma2 and process power p0 = E|z|^2.
struct ArModel {
  std::vector<Complex> a;
  double sigma2 = 1.0;
  double p0 = 1.0;
};

/// Lattice estimation of reflection coefficients from one time series.
///
/// At stage k the coefficient minimizes the mean squared forward+backward
/// prediction error plus gamma * sum_j (2 pi j)^2 |a_j|^2 over the stage-k AR
/// coefficients; gamma = 0 is the classical ratio
/// mu_k = -2 sum f b^* / sum(|f|^2 + |b|^2). p0 is the biased sample power
/// (1/n) sum |z|^2 and log_p0 its logarithm.
ReflectionPoint burg_regularized(std::span<const Complex> series, int order, double gamma = 0.0);

/// Levinson-Durbin step from reflection coefficients to AR coefficients, with
/// sigma2 = p0 * prod(1 - |mu_k|^2).
ArModel levinson(const ReflectionPoint& point);

/// Toeplitz HPD covariance whose Levinson decomposition recovers the point
/// exactly; lags past the model order follow r_j = -sum a_k r_{j-k}.
HpdMatrix covariance_from_reflection(const ReflectionPoint& point, int size);

/// Exact Levinson/Schur recursion on the autocorrelation sequence; inverse of
/// covariance_from_reflection.
ReflectionPoint reflection_from_covariance(const HpdMatrix& r);

/// S = -sum_{k} (n-k) log(1 - |mu_k|^2) - n log(pi e p0).
///
/// Sign convention: this is the negative differential entropy of the length-n
/// Gaussian process (the Koszul characteristic-function convention, equal to
/// -log det R_n up to the additive constant), so it grows without bound as
/// any |mu_k| approaches 1.
double entropy_scalar(const ReflectionPoint& point, int n);

/// Block generalization: S = -sum_k (n-k) log det(I - A_k A_k^*)
/// - n (p log(pi e) + log det R0). Agrees with entropy_scalar at block size 1.
double entropy_matrix(const SiegelParams& params, int n);

/// AR power spectral density sigma2 / |1 + sum_k a_k e^{-2 pi i f k}|^2 on the
/// grid f = j/n_freq - 1/2, j = 0..n_freq-1. The grid mean approximates p0.
std::vector<double> doppler_spectrum(const ArModel& model, int n_freq);

}  // namespace polydisk
