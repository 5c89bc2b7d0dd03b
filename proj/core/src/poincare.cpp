#include "polydisk/poincare.hpp"

#include <algorithm>
#include <cmath>

namespace polydisk {

namespace {

constexpr double kAnchorEps = 1e-12;  // iterate-on-data-point threshold

void check_inside_disk(Complex z) {
  require(std::norm(z) < 1.0, ErrorKind::OutsideDisk,
          "|z| = " + std::to_string(std::abs(z)) + " is not inside the unit disk");
}

void check_same_shape(const ProductPoint& x, const ProductPoint& y) {
  require(x.n_pulses == y.n_pulses && x.mu.size() == y.mu.size(), ErrorKind::DimensionMismatch,
          "points have different pulse counts or orders");
}

double weight(const ProductPoint& point, int k) {
  return static_cast<double>(point.n_pulses - k);
}

// Norm of a tangent vector in the weighted product metric at `point`.
double tangent_norm(const ProductPoint& point, double d_log_p0,
                    const std::vector<Complex>& d_mu) {
  double acc = point.n_pulses * d_log_p0 * d_log_p0;
  for (std::size_t k = 0; k < d_mu.size(); ++k) {
    const double denom = 1.0 - std::norm(point.mu[k]);
    acc += weight(point, static_cast<int>(k) + 1) * std::norm(d_mu[k]) / (denom * denom);
  }
  return std::sqrt(acc);
}

struct BarycenterProblem {
  std::span<const ProductPoint> points;
  std::vector<double> weights;
};

// Hessian comparison bounds in curvature >= -1: Hess(d^2/2) <= d coth(d) and
// Hess(d) <= coth(d). Steps of 1 over the weighted average of these bounds
// are guaranteed to descend, which matters because near the minimizer the
// objective decrease per step drops below one ulp of the objective and a
// backtracking test alone cannot certify progress down to the gradient
// tolerance.
double d_coth_d(double d) {
  if (d < 1e-8) return 1.0 + d * d / 3.0;
  return d / std::tanh(d);
}

double coth(double d) { return 1.0 / std::tanh(d); }

BarycenterProblem validate_barycenter_input(std::span<const ProductPoint> points,
                                            std::span<const double> weights) {
  require(!points.empty(), ErrorKind::TooFewPoints, "need at least one point");
  require(points.size() == weights.size(), ErrorKind::LengthMismatch,
          "points and weights differ in length");
  for (std::size_t i = 1; i < points.size(); ++i) check_same_shape(points[0], points[i]);
  double sum = 0.0;
  for (const double w : weights) {
    require(w >= 0.0 && std::isfinite(w), ErrorKind::InvalidWeights,
            "weights must be non-negative");
    sum += w;
  }
  require(std::abs(sum - 1.0) <= 1e-9, ErrorKind::InvalidWeights, "weights must sum to 1");
  return {points, {weights.begin(), weights.end()}};
}

// Euclidean weighted average of the coordinates; lies inside the disk by
// convexity and serves as the initial iterate.
ProductPoint chart_average(const BarycenterProblem& problem) {
  const ProductPoint& first = problem.points[0];
  ProductPoint init;
  init.n_pulses = first.n_pulses;
  init.mu.assign(first.mu.size(), Complex{});
  for (std::size_t i = 0; i < problem.points.size(); ++i) {
    const double w = problem.weights[i];
    init.log_p0 += w * problem.points[i].log_p0;
    for (std::size_t k = 0; k < init.mu.size(); ++k) init.mu[k] += w * problem.points[i].mu[k];
  }
  return init;
}

}  // namespace

void validate_product_point(const ProductPoint& point) {
  validate_reflection_point(ReflectionPoint{point.log_p0, point.mu});
  require(point.n_pulses > point.order(), ErrorKind::InvalidOrder,
          "n_pulses must exceed the model order");
}

ProductPoint make_product_point(double log_p0, std::vector<Complex> mu, int n_pulses) {
  ProductPoint point{log_p0, std::move(mu), n_pulses};
  validate_product_point(point);
  return point;
}

ProductPoint make_product_point(const ReflectionPoint& point, int n_pulses) {
  return make_product_point(point.log_p0, point.mu, n_pulses);
}

double metric_form(const ProductPoint& point, const TangentVector& v) {
  require(v.d_mu.size() == point.mu.size(), ErrorKind::DimensionMismatch,
          "tangent vector order mismatch");
  const double norm = tangent_norm(point, v.d_log_p0, v.d_mu);
  return norm * norm;
}

// log((1+delta)/(1-delta)) for the Mobius ratio delta of z1, z2. Near the
// disk boundary 1 - delta cancels catastrophically, so the tail uses the
// identity 1 - delta^2 = (1-|z1|^2)(1-|z2|^2) / |1 - conj(z1) z2|^2, which
// stays smooth there. Written to be bit-exactly symmetric in its arguments.
static double disk_log_ratio(Complex z1, Complex z2) {
  if (z1 == z2) return 0.0;
  const double num2 = std::norm(z2 - z1);
  const double den2 = std::norm(1.0 - std::conj(z1) * z2);
  const double delta = std::sqrt(num2 / den2);
  if (delta < 0.5) return std::log1p(2.0 * delta / (1.0 - delta));
  const double f1 = 1.0 - std::norm(z1);
  const double f2 = 1.0 - std::norm(z2);
  return 2.0 * std::log1p(delta) + std::log(den2) - (std::log(f1) + std::log(f2));
}

double poincare_distance(Complex z1, Complex z2) {
  check_inside_disk(z1);
  check_inside_disk(z2);
  return disk_log_ratio(z1, z2);
}

double product_distance(const ProductPoint& x, const ProductPoint& y) {
  check_same_shape(x, y);
  const double dr = y.log_p0 - x.log_p0;
  double acc = x.n_pulses * dr * dr;
  for (std::size_t k = 0; k < x.mu.size(); ++k) {
    const double dk = poincare_distance(x.mu[k], y.mu[k]);
    acc += weight(x, static_cast<int>(k) + 1) * dk * dk;
  }
  return std::sqrt(acc);
}

Complex exp_map(Complex base, Complex v) {
  check_inside_disk(base);
  if (v == Complex{}) return base;
  const Complex v0 = v / (1.0 - std::norm(base));
  const double m = std::abs(v0);
  const Complex w = std::tanh(0.5 * m) * (v0 / m);
  return (w + base) / (1.0 + std::conj(base) * w);
}

Complex log_map(Complex base, Complex target) {
  check_inside_disk(base);
  check_inside_disk(target);
  const Complex z0 = (target - base) / (1.0 - std::conj(base) * target);
  const double r = std::abs(z0);
  if (r == 0.0) return Complex{};
  const double m = disk_log_ratio(base, target);
  return m * (z0 / r) * (1.0 - std::norm(base));
}

BarycenterResult karcher_mean(std::span<const ProductPoint> points,
                              std::span<const double> weights,
                              const BarycenterOptions& options) {
  const BarycenterProblem problem = validate_barycenter_input(points, weights);
  if (points.size() == 1) return {points[0], 0, 0.0, true};

  ProductPoint x = chart_average(problem);
  const std::size_t m = x.mu.size();

  const auto objective = [&](const ProductPoint& candidate) {
    double acc = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double d = product_distance(candidate, points[i]);
      acc += problem.weights[i] * d * d;
    }
    return acc;
  };

  // The real component of the mean is the weighted average of log_p0 and
  // stays fixed; only the disk components flow. The disk objective is
  // separable, so each component takes its own curvature-safe step.
  double obj = objective(x);
  double grad_norm = 0.0;
  bool converged = false;
  int iter = 0;
  std::vector<Complex> grad(m);
  std::vector<double> stiffness(m);
  for (; iter < options.max_iter; ++iter) {
    std::fill(grad.begin(), grad.end(), Complex{});
    std::fill(stiffness.begin(), stiffness.end(), 0.0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t k = 0; k < m; ++k) {
        const Complex v = log_map(x.mu[k], points[i].mu[k]);
        grad[k] += problem.weights[i] * v;
        const double d = std::abs(v) / (1.0 - std::norm(x.mu[k]));
        stiffness[k] += problem.weights[i] * d_coth_d(d);
      }
    }
    grad_norm = tangent_norm(x, 0.0, grad);
    if (grad_norm < options.tol) {
      converged = true;
      break;
    }
    const double slack = obj * 1e-13 + 1e-300;
    bool accepted = false;
    for (double scale = 1.0; scale >= 0x1p-60; scale *= 0.5) {
      ProductPoint candidate = x;
      for (std::size_t k = 0; k < m; ++k) {
        const double step = scale * std::min(1.0, 1.0 / stiffness[k]);
        candidate.mu[k] = exp_map(x.mu[k], step * grad[k]);
      }
      const double cand_obj = objective(candidate);
      // The full safe step cannot increase the objective; a tie within
      // rounding noise still counts as progress.
      if (cand_obj < obj || (scale == 1.0 && cand_obj <= obj + slack)) {
        x = std::move(candidate);
        obj = cand_obj;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // objective is flat at working precision
  }
  return {std::move(x), iter, grad_norm, converged || grad_norm < options.tol};
}

BarycenterResult frechet_median(std::span<const ProductPoint> points,
                                std::span<const double> weights,
                                const BarycenterOptions& options) {
  const BarycenterProblem problem = validate_barycenter_input(points, weights);
  if (points.size() == 1) return {points[0], 0, 0.0, true};

  ProductPoint x = chart_average(problem);
  const std::size_t m = x.mu.size();

  const auto objective = [&](const ProductPoint& candidate) {
    double acc = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      acc += problem.weights[i] * product_distance(candidate, points[i]);
    }
    return acc;
  };

  double obj = objective(x);
  double residual = 0.0;
  bool converged = false;
  int iter = 0;
  std::vector<Complex> grad(m);
  for (; iter < options.max_iter; ++iter) {
    double grad_r = 0.0;
    std::fill(grad.begin(), grad.end(), Complex{});
    double anchored_weight = 0.0;
    double stiffness = 0.0;
    int anchor_index = -1;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double d = product_distance(x, points[i]);
      if (d <= kAnchorEps) {
        anchored_weight += problem.weights[i];
        if (anchor_index < 0) anchor_index = static_cast<int>(i);
        continue;
      }
      const double scale = problem.weights[i] / d;
      stiffness += problem.weights[i] * coth(d);
      grad_r += scale * (points[i].log_p0 - x.log_p0);
      for (std::size_t k = 0; k < m; ++k) {
        grad[k] += scale * log_map(x.mu[k], points[i].mu[k]);
      }
    }
    const double pull = tangent_norm(x, grad_r, grad);
    residual = std::max(0.0, pull - anchored_weight);
    if (pull <= anchored_weight + options.tol) {
      // Weiszfeld anchor test: the pull of the far points does not exceed the
      // weight sitting at the iterate, so the (data) point is the median.
      if (anchor_index >= 0) x = points[anchor_index];
      converged = true;
      break;
    }
    const double slack = obj * 1e-13 + 1e-300;
    bool accepted = false;
    for (double scale = std::min(1.0, 1.0 / stiffness); scale >= 0x1p-60; scale *= 0.5) {
      ProductPoint candidate = x;
      candidate.log_p0 = x.log_p0 + scale * grad_r;
      for (std::size_t k = 0; k < m; ++k) candidate.mu[k] = exp_map(x.mu[k], scale * grad[k]);
      const double cand_obj = objective(candidate);
      if (cand_obj < obj ||
          (scale >= std::min(1.0, 1.0 / stiffness) && cand_obj <= obj + slack)) {
        x = std::move(candidate);
        obj = cand_obj;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return {std::move(x), iter, residual, converged};
}

}  // namespace polydisk
