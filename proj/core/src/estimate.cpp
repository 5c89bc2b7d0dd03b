#include "polydisk/estimate.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <numbers>

namespace polydisk {

namespace {

constexpr double kPi = std::numbers::pi;

// One Levinson-Durbin update: a^{(k)} = [a^{(k-1)} + mu * conj(reverse(a^{(k-1)})), mu].
void levinson_step(std::vector<Complex>& a, Complex mu) {
  const std::size_t k = a.size();
  std::vector<Complex> next(k + 1);
  for (std::size_t j = 0; j < k; ++j) next[j] = a[j] + mu * std::conj(a[k - 1 - j]);
  next[k] = mu;
  a = std::move(next);
}

Complex clamp_to_disk(Complex mu) {
  const double mag = std::abs(mu);
  const double limit = 1.0 - kDiskBoundaryMargin;
  if (mag > limit) mu *= limit / mag;
  return mu;
}

}  // namespace

void validate_reflection_point(const ReflectionPoint& point) {
  require(std::isfinite(point.log_p0), ErrorKind::NonFiniteValue, "log_p0 is not finite");
  for (std::size_t k = 0; k < point.mu.size(); ++k) {
    const double mag = std::abs(point.mu[k]);
    require(std::isfinite(mag) && mag <= 1.0 - kDiskBoundaryMargin, ErrorKind::InvalidCoefficient,
            "mu[" + std::to_string(k) + "] with |mu| = " + std::to_string(mag) +
                " is not inside the unit disk");
  }
}

ReflectionPoint make_reflection_point(double log_p0, std::vector<Complex> mu) {
  ReflectionPoint point{log_p0, std::move(mu)};
  validate_reflection_point(point);
  return point;
}

ReflectionPoint burg_regularized(std::span<const Complex> series, int order, double gamma) {
  const int n = static_cast<int>(series.size());
  require(n > 0, ErrorKind::EmptySeries, "empty input series");
  require(n >= 2, ErrorKind::OrderTooLarge, "need at least two samples");
  require(order >= 1 && order <= n - 1, ErrorKind::OrderTooLarge,
          "order " + std::to_string(order) + " out of range [1, " + std::to_string(n - 1) + "]");
  require(gamma >= 0.0, ErrorKind::InvalidCoefficient, "gamma must be non-negative");

  double p0 = 0.0;
  for (const Complex z : series) p0 += std::norm(z);
  p0 /= n;
  require(p0 > 0.0, ErrorKind::ZeroSignal, "all samples are zero");

  std::vector<Complex> f(series.begin(), series.end());
  std::vector<Complex> b(series.begin(), series.end());
  std::vector<Complex> a;  // AR coefficients of the previous stage
  std::vector<Complex> mu;
  mu.reserve(order);

  for (int k = 1; k <= order; ++k) {
    Complex num{};
    double den = 0.0;
    for (int t = k; t < n; ++t) {
      num += f[t] * std::conj(b[t - 1]);
      den += std::norm(f[t]) + std::norm(b[t - 1]);
    }
    const double count = n - k;
    Complex numerator = num / count;
    double denominator = den / (2.0 * count);
    if (gamma > 0.0) {
      Complex reg_num{};
      double reg_den = 0.0;
      for (int j = 1; j < k; ++j) {
        const double w = (2.0 * kPi * j) * (2.0 * kPi * j);
        reg_num += w * a[j - 1] * a[k - j - 1];
        reg_den += w * std::norm(a[k - j - 1]);
      }
      reg_den += (2.0 * kPi * k) * (2.0 * kPi * k);
      numerator += gamma * reg_num;
      denominator += gamma * reg_den;
    }
    const Complex mu_k = clamp_to_disk(-numerator / denominator);
    mu.push_back(mu_k);
    levinson_step(a, mu_k);

    // Update prediction errors in place; descending t keeps old values live.
    for (int t = n - 1; t >= k; --t) {
      const Complex ft = f[t] + mu_k * b[t - 1];
      const Complex bt = b[t - 1] + std::conj(mu_k) * f[t];
      f[t] = ft;
      b[t] = bt;
    }
  }

  return ReflectionPoint{std::log(p0), std::move(mu)};
}

ArModel levinson(const ReflectionPoint& point) {
  validate_reflection_point(point);
  ArModel model;
  model.p0 = std::exp(point.log_p0);
  double sigma2 = model.p0;
  for (const Complex mu : point.mu) {
    levinson_step(model.a, mu);
    sigma2 *= 1.0 - std::norm(mu);
  }
  model.sigma2 = sigma2;
  return model;
}

HpdMatrix covariance_from_reflection(const ReflectionPoint& point, int size) {
  validate_reflection_point(point);
  require(size >= 1, ErrorKind::DimensionMismatch, "size must be at least 1");

  const int order = point.order();
  const double p0 = std::exp(point.log_p0);
  std::vector<Complex> r(size);
  r[0] = p0;

  std::vector<Complex> a;
  double err = p0;
  for (int k = 1; k <= std::min(order, size - 1); ++k) {
    Complex acc{};
    for (int j = 1; j < k; ++j) acc += a[j - 1] * r[k - j];
    r[k] = -point.mu[k - 1] * err - acc;
    levinson_step(a, point.mu[k - 1]);
    err *= 1.0 - std::norm(point.mu[k - 1]);
  }
  for (int k = order + 1; k < size; ++k) {
    Complex acc{};
    for (int j = 1; j <= order; ++j) acc += a[j - 1] * r[k - j];
    r[k] = -acc;
  }

  ComplexMatrix t(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      t(i, j) = i >= j ? r[i - j] : std::conj(r[j - i]);
    }
  }
  return HpdMatrix(std::move(t));
}

ReflectionPoint reflection_from_covariance(const HpdMatrix& cov) {
  const ComplexMatrix& t = cov.matrix();
  const int n = static_cast<int>(t.rows());
  for (int i = 0; i + 1 < n; ++i) {
    for (int j = 0; j + 1 < n; ++j) {
      require(std::abs(t(i, j) - t(i + 1, j + 1)) <= kHermTolerance * t.norm(),
              ErrorKind::NotToeplitz,
              "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                  ") breaks the Toeplitz structure");
    }
  }

  std::vector<Complex> r(n);
  for (int k = 0; k < n; ++k) r[k] = t(k, 0);
  const double p0 = r[0].real();
  require(p0 > 0.0, ErrorKind::NotPositiveDefinite, "zero-lag power is not positive");

  std::vector<Complex> a;
  std::vector<Complex> mu;
  double err = p0;
  for (int k = 1; k < n; ++k) {
    Complex acc = r[k];
    for (int j = 1; j < k; ++j) acc += a[j - 1] * r[k - j];
    const Complex mu_k = -acc / err;
    require(std::norm(mu_k) < 1.0, ErrorKind::NotPositiveDefinite,
            "reflection coefficient " + std::to_string(k) + " reached the disk boundary");
    mu.push_back(mu_k);
    levinson_step(a, mu_k);
    err *= 1.0 - std::norm(mu_k);
  }
  return make_reflection_point(std::log(p0), std::move(mu));
}

double entropy_scalar(const ReflectionPoint& point, int n) {
  validate_reflection_point(point);
  require(n >= point.order() + 1, ErrorKind::InvalidOrder,
          "n must be at least order + 1");
  double s = 0.0;
  for (int k = 1; k <= point.order(); ++k) {
    s -= static_cast<double>(n - k) * std::log1p(-std::norm(point.mu[k - 1]));
  }
  s -= n * (std::log(kPi) + 1.0 + point.log_p0);
  return s;
}

double entropy_matrix(const SiegelParams& params, int n) {
  require(n >= params.order() + 1, ErrorKind::InvalidOrder, "n must be at least order + 1");
  const Eigen::Index p = params.block_dim();
  const ComplexMatrix eye = ComplexMatrix::Identity(p, p);

  double s = 0.0;
  for (int k = 1; k <= params.order(); ++k) {
    const ComplexMatrix& am = params.a[k - 1].matrix();
    const Eigen::LLT<ComplexMatrix> llt(eye - am * am.adjoint());
    require(llt.info() == Eigen::Success, ErrorKind::SingularBlock,
            "det(I - A A^*) is not positive at block " + std::to_string(k));
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < p; ++i) log_det += 2.0 * std::log(llt.matrixL()(i, i).real());
    s -= static_cast<double>(n - k) * log_det;
  }

  const Eigen::LLT<ComplexMatrix> llt(params.r0.matrix());
  require(llt.info() == Eigen::Success, ErrorKind::NotPositiveDefinite,
          "R0 is not positive definite");
  double log_det_r0 = 0.0;
  for (Eigen::Index i = 0; i < p; ++i) log_det_r0 += 2.0 * std::log(llt.matrixL()(i, i).real());
  s -= n * (static_cast<double>(p) * (std::log(kPi) + 1.0) + log_det_r0);
  return s;
}

std::vector<double> doppler_spectrum(const ArModel& model, int n_freq) {
  require(n_freq >= 2, ErrorKind::InvalidOrder, "n_freq must be at least 2");
  std::vector<double> psd(n_freq);
  for (int j = 0; j < n_freq; ++j) {
    const double f = static_cast<double>(j) / n_freq - 0.5;
    Complex den{1.0, 0.0};
    for (std::size_t k = 0; k < model.a.size(); ++k) {
      const double angle = -2.0 * kPi * f * static_cast<double>(k + 1);
      den += model.a[k] * Complex{std::cos(angle), std::sin(angle)};
    }
    psd[j] = model.sigma2 / std::norm(den);
  }
  return psd;
}

}  // namespace polydisk
