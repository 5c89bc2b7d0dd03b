#include "polydisk/siegel.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>

namespace polydisk {

namespace {

// Lexicographic order on (re, im) of row-major entries. Distances evaluate
// their arguments in canonical order so d(x, y) and d(y, x) are bit-identical.
bool lex_less(const ComplexMatrix& a, const ComplexMatrix& b) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const Complex x = a(i, j);
      const Complex y = b(i, j);
      if (x.real() != y.real()) return x.real() < y.real();
      if (x.imag() != y.imag()) return x.imag() < y.imag();
    }
  }
  return false;
}

double log_ratio(double s) {
  // log((1+s)/(1-s)) evaluated stably for small s.
  return std::log1p(2.0 * s / (1.0 - s));
}

}  // namespace

SiegelPoint::SiegelPoint(ComplexMatrix z) {
  require(z.rows() >= 1 && z.rows() == z.cols(), ErrorKind::DimensionMismatch,
          "Siegel point must be a square matrix");
  require(z.allFinite(), ErrorKind::NonFiniteValue, "Siegel point has non-finite entries");
  Eigen::JacobiSVD<ComplexMatrix> svd(z);
  const double top = svd.singularValues()(0);
  require(top <= 1.0 - kSiegelMargin, ErrorKind::OutsideDisk,
          "spectral norm " + std::to_string(top) + " is not inside the Siegel disk");
  z_ = std::move(z);
}

SiegelPoint SiegelPoint::zero(Eigen::Index dim) {
  return SiegelPoint(ComplexMatrix::Zero(dim, dim));
}

SiegelParams make_siegel_params(HpdMatrix r0, std::vector<SiegelPoint> a) {
  for (const SiegelPoint& block : a) {
    require(block.dim() == r0.dim(), ErrorKind::DimensionMismatch,
            "all parameter blocks must share the R0 dimension");
  }
  return SiegelParams{std::move(r0), std::move(a)};
}

ComplexMatrix siegel_phi(const SiegelPoint& z, const SiegelPoint& w) {
  require(z.dim() == w.dim(), ErrorKind::DimensionMismatch, "siegel_phi dimension mismatch");
  const Eigen::Index p = z.dim();
  const ComplexMatrix& zm = z.matrix();
  const ComplexMatrix& wm = w.matrix();
  const ComplexMatrix eye = ComplexMatrix::Identity(p, p);

  const HpdMatrix left(eye - zm * zm.adjoint());
  const HpdMatrix right(eye - zm.adjoint() * zm);
  const ComplexMatrix pivot = eye - zm.adjoint() * wm;

  Eigen::PartialPivLU<ComplexMatrix> lu(pivot);
  const ComplexMatrix pivot_inv = lu.inverse();
  const double cond = pivot.norm() * pivot_inv.norm();
  require(std::isfinite(cond) && cond <= 1e14, ErrorKind::SingularPivot,
          "I - Z^* W is numerically singular");

  return hpd_inv_sqrt(left).matrix() * (wm - zm) * pivot_inv * hpd_sqrt(right).matrix();
}

double siegel_distance(const SiegelPoint& z1, const SiegelPoint& z2, SiegelNorm norm) {
  require(z1.dim() == z2.dim(), ErrorKind::DimensionMismatch, "siegel_distance dimension mismatch");
  const bool swap = lex_less(z2.matrix(), z1.matrix());
  const SiegelPoint& a = swap ? z2 : z1;
  const SiegelPoint& b = swap ? z1 : z2;

  const ComplexMatrix phi = siegel_phi(a, b);
  Eigen::JacobiSVD<ComplexMatrix> svd(phi);
  const auto& sigma = svd.singularValues();
  if (norm == SiegelNorm::spectral) {
    const double s = std::min(sigma(0), 1.0 - 1e-16);
    return log_ratio(s);
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    const double s = std::min(sigma(i), 1.0 - 1e-16);
    const double term = log_ratio(s);
    sum += term * term;
  }
  return std::sqrt(sum);
}

double hpd_affine_distance(const HpdMatrix& r1, const HpdMatrix& r2) {
  require(r1.dim() == r2.dim(), ErrorKind::DimensionMismatch,
          "hpd_affine_distance dimension mismatch");
  if (r1.matrix() == r2.matrix()) return 0.0;
  const bool swap = lex_less(r2.matrix(), r1.matrix());
  const HpdMatrix& a = swap ? r2 : r1;
  const HpdMatrix& b = swap ? r1 : r2;

  const ComplexMatrix is = hpd_inv_sqrt(a).matrix();
  const HpdMatrix mid(is * b.matrix() * is);
  return hpd_log(mid).norm();
}

double block_toeplitz_distance(const SiegelParams& p1, const SiegelParams& p2, SiegelNorm norm) {
  require(p1.n() == p2.n() && p1.block_dim() == p2.block_dim(), ErrorKind::DimensionMismatch,
          "parameter shapes do not match");
  const int n = p1.n();
  const double d0 = hpd_affine_distance(p1.r0, p2.r0);
  double acc = n * d0 * d0;
  for (int k = 1; k < n; ++k) {
    const double dk = siegel_distance(p1.a[k - 1], p2.a[k - 1], norm);
    acc += static_cast<double>(n - k) * dk * dk;
  }
  return std::sqrt(acc);
}

double matrix_metric_form(const SiegelParams& p, const ComplexMatrix& d_r0,
                          std::span<const ComplexMatrix> d_a) {
  const Eigen::Index dim = p.block_dim();
  require(d_r0.rows() == dim && d_r0.cols() == dim, ErrorKind::DimensionMismatch,
          "dR0 shape mismatch");
  require((d_r0 - d_r0.adjoint()).norm() <= kHermTolerance * d_r0.norm() + 1e-300,
          ErrorKind::NotHermitian, "dR0 must be Hermitian");
  require(static_cast<int>(d_a.size()) == p.order(), ErrorKind::DimensionMismatch,
          "dA block count mismatch");

  const int n = p.n();
  const ComplexMatrix eye = ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix dh = 0.5 * (d_r0 + d_r0.adjoint());

  const ComplexMatrix r0_inv = p.r0.matrix().llt().solve(eye);
  const ComplexMatrix g = r0_inv * dh;
  Complex total = static_cast<double>(n) * (g * g).trace();

  for (int k = 1; k <= p.order(); ++k) {
    const ComplexMatrix& da = d_a[k - 1];
    require(da.rows() == dim && da.cols() == dim, ErrorKind::DimensionMismatch,
            "dA shape mismatch at block " + std::to_string(k));
    const ComplexMatrix& am = p.a[k - 1].matrix();
    const ComplexMatrix left_inv = (eye - am * am.adjoint()).llt().solve(eye);
    const ComplexMatrix right_inv = (eye - am.adjoint() * am).llt().solve(eye);
    total += static_cast<double>(n - k) * (left_inv * da * right_inv * da.adjoint()).trace();
  }

  require(std::abs(total.imag()) < 1e-12 * (1.0 + std::abs(total.real())),
          ErrorKind::NonFiniteValue, "metric form has a non-real residue");
  return total.real();
}

}  // namespace polydisk
