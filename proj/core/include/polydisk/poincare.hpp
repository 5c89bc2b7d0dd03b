#pragma once

#include <span>
#include <vector>

#include "polydisk/estimate.hpp"

namespace polydisk {

/// Ratio between the disk distance used here, log((1+d)/(1-d)), and the
/// textbook Poincare distance atanh(d) induced by |dz|^2 / (1-|z|^2)^2.
/// metric_form keeps the Hessian-of-entropy normalization, so along pure disk
/// directions the squared distance differentiates to kDiskDistanceScale^2
/// times the metric form.
inline constexpr double kDiskDistanceScale = 2.0;

/// A point of R x D^{m-1} together with the pulse count n that fixes the
/// metric weights n and n - k.
struct ProductPoint {
  double log_p0 = 0.0;
  std::vector<Complex> mu;
  int n_pulses = 0;

  int order() const { return static_cast<int>(mu.size()); }
};

ProductPoint make_product_point(double log_p0, std::vector<Complex> mu, int n_pulses);
ProductPoint make_product_point(const ReflectionPoint& point, int n_pulses);
void validate_product_point(const ProductPoint& point);

struct TangentVector {
  double d_log_p0 = 0.0;
  std::vector<Complex> d_mu;
};

/// Fisher metric quadratic form
/// ds^2 = n (d log p0)^2 + sum_k (n-k) |d mu_k|^2 / (1-|mu_k|^2)^2.
double metric_form(const ProductPoint& point, const TangentVector& v);

/// d = log((1+delta)/(1-delta)) with delta = |(z2-z1)/(1-conj(z1) z2)|.
/// Bit-exactly symmetric in its arguments.
double poincare_distance(Complex z1, Complex z2);

/// d^2 = n (log p0 difference)^2 + sum_k (n-k) poincare_distance(mu_k, mu'_k)^2.
double product_distance(const ProductPoint& x, const ProductPoint& y);

/// Geodesic exponential on the disk, scaled so that
/// poincare_distance(base, exp_map(base, v)) = |v| / (1 - |base|^2).
Complex exp_map(Complex base, Complex v);

/// Inverse of exp_map; the returned tangent's metric norm at base equals
/// poincare_distance(base, target).
Complex log_map(Complex base, Complex target);

struct BarycenterOptions {
  double tol = 1e-9;   // on the (sub)gradient norm
  int max_iter = 1000;
};

struct BarycenterResult {
  ProductPoint point;
  int iterations = 0;
  double grad_norm = 0.0;
  bool converged = false;
};

/// Weighted Karcher mean, the minimizer of sum w_i d^2(x, p_i). The real
/// component has the closed form sum w_i log_p0_i; the disk components follow
/// the gradient flow x <- exp_x(step * sum w_i log_x(p_i)) with backtracking.
/// Weights must be non-negative and sum to 1. Inner sums are reduced in index
/// order, so results are bit-reproducible.
BarycenterResult karcher_mean(std::span<const ProductPoint> points,
                              std::span<const double> weights,
                              const BarycenterOptions& options = {});

/// Weighted Frechet median, the minimizer of sum w_i d(x, p_i), by Weiszfeld
/// subgradient flow with the standard anchor rule when the iterate lands on a
/// data point.
BarycenterResult frechet_median(std::span<const ProductPoint> points,
                                std::span<const double> weights,
                                const BarycenterOptions& options = {});

}  // namespace polydisk
