#pragma once

#include <span>
#include <vector>

#include "polydisk/hermitian.hpp"

namespace polydisk {

/// Required margin on 1 - spectral norm when validating a Siegel point.
inline constexpr double kSiegelMargin = 1e-12;

/// A point of the Siegel disk: a square complex matrix Z with I - Z Z^* > 0,
/// i.e. spectral norm strictly below one. Inputs that violate the margin are
/// rejected, never clamped; these are caller-supplied parameters rather than
/// estimates.
class SiegelPoint {
 public:
  explicit SiegelPoint(ComplexMatrix z);

  static SiegelPoint zero(Eigen::Index dim);

  const ComplexMatrix& matrix() const { return z_; }
  Eigen::Index dim() const { return z_.rows(); }

 private:
  ComplexMatrix z_;
};

/// Block-Toeplitz covariance coordinates: an HPD zero-lag block R0 together
/// with matrix reflection coefficient blocks A_1 .. A_{N-1}, all p x p.
struct SiegelParams {
  HpdMatrix r0;
  std::vector<SiegelPoint> a;

  Eigen::Index block_dim() const { return r0.dim(); }
  int order() const { return static_cast<int>(a.size()); }
  int n() const { return order() + 1; }
};

SiegelParams make_siegel_params(HpdMatrix r0, std::vector<SiegelPoint> a);

enum class SiegelNorm {
  spectral,             // largest singular value of the transfer matrix
  all_singular_values,  // sum of squared per-singular-value terms
};

/// Disk automorphism sending Z to the origin, evaluated at W:
/// (I - Z Z^*)^{-1/2} (W - Z) (I - Z^* W)^{-1} (I - Z^* Z)^{1/2}.
ComplexMatrix siegel_phi(const SiegelPoint& z, const SiegelPoint& w);

double siegel_distance(const SiegelPoint& z1, const SiegelPoint& z2,
                       SiegelNorm norm = SiegelNorm::spectral);

/// Affine-invariant distance ||log(R1^{-1/2} R2 R1^{-1/2})||_F on HPD matrices.
double hpd_affine_distance(const HpdMatrix& r1, const HpdMatrix& r2);

/// Weighted product distance on (R0, A_1..A_{N-1}):
/// sqrt(N * d_hpd(R0,R0')^2 + sum_k (N-k) * d_siegel(A_k,A_k')^2).
double block_toeplitz_distance(const SiegelParams& p1, const SiegelParams& p2,
                               SiegelNorm norm = SiegelNorm::spectral);

/// Quadratic form of the Fisher metric at P:
/// N Tr[(R0^{-1} dR0)^2] + sum_k (N-k) Tr[(I-A A^*)^{-1} dA (I-A^* A)^{-1} dA^*].
/// dR0 must be Hermitian; the imaginary residue of the trace is checked
/// against 1e-12 and discarded.
double matrix_metric_form(const SiegelParams& p, const ComplexMatrix& d_r0,
                          std::span<const ComplexMatrix> d_a);

}  // namespace polydisk
