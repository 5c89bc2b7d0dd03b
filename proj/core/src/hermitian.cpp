#include "polydisk/hermitian.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace polydisk {

namespace {

void check_square(const ComplexMatrix& m) {
  require(m.rows() >= 1 && m.rows() == m.cols(), ErrorKind::DimensionMismatch,
          "expected a square matrix, got " + std::to_string(m.rows()) + "x" +
              std::to_string(m.cols()));
}

void check_hermitian(const ComplexMatrix& m) {
  const double asym = (m - m.adjoint()).norm();
  require(asym <= kHermTolerance * m.norm() + 1e-300, ErrorKind::NotHermitian,
          "asymmetry " + std::to_string(asym) + " exceeds tolerance");
}

// Symmetrized eigendecomposition with deterministic eigenvector phases.
EigResult eig_of_symmetrized(const ComplexMatrix& m) {
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  require(solver.info() == Eigen::Success, ErrorKind::NotHermitian,
          "eigendecomposition failed to converge");

  const Eigen::Index n = h.rows();
  EigResult result;
  result.eigenvalues = solver.eigenvalues().reverse();
  result.eigenvectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    ComplexVector v = solver.eigenvectors().col(n - 1 - j);
    Eigen::Index imax = 0;
    double best = std::abs(v(0));
    for (Eigen::Index i = 1; i < n; ++i) {
      const double mag = std::abs(v(i));
      if (mag > best) {
        best = mag;
        imax = i;
      }
    }
    if (best > 0.0) v *= std::conj(v(imax)) / best;
    result.eigenvectors.col(j) = v;
  }
  return result;
}

// Applies f to the spectrum. The floor rule: values at or below
// kEigenvalueFloor * lambda_max raise NotPositiveDefinite unless `regularize`
// clamps them; silent clamping would hide estimation bugs upstream.
template <typename F>
ComplexMatrix spectral_map(const HpdMatrix& h, bool regularize, F&& f, const char* op) {
  EigResult eig = eig_of_symmetrized(h.matrix());
  const double lmax = eig.eigenvalues(0);
  require(lmax > 0.0, ErrorKind::NotPositiveDefinite,
          std::string(op) + ": largest eigenvalue is not positive");
  const double floor = kEigenvalueFloor * lmax;
  RealVector mapped(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    double lambda = eig.eigenvalues(i);
    if (lambda <= floor) {
      require(regularize, ErrorKind::NotPositiveDefinite,
              std::string(op) + ": eigenvalue " + std::to_string(lambda) +
                  " is numerically singular (pass regularize to clamp)");
      lambda = floor;
    }
    mapped(i) = f(lambda);
  }
  ComplexMatrix out = eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.adjoint();
  return 0.5 * (out + out.adjoint());
}

}  // namespace

HpdMatrix::HpdMatrix(ComplexMatrix m) {
  check_square(m);
  check_hermitian(m);
  m_ = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m_, Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, ErrorKind::NotPositiveDefinite,
          "eigenvalue check failed to converge");
  const double lmin = solver.eigenvalues().minCoeff();
  const double lmax = solver.eigenvalues().maxCoeff();
  require(lmax > 0.0 && lmin > -kHermTolerance * lmax, ErrorKind::NotPositiveDefinite,
          "smallest eigenvalue " + std::to_string(lmin) + " is not positive");
}

HpdMatrix HpdMatrix::identity(Eigen::Index dim) {
  return HpdMatrix(ComplexMatrix::Identity(dim, dim));
}

EigResult hermitian_eig(const ComplexMatrix& h) {
  check_square(h);
  check_hermitian(h);
  return eig_of_symmetrized(h);
}

EigResult hermitian_eig(const HpdMatrix& h) { return eig_of_symmetrized(h.matrix()); }

HpdMatrix hpd_sqrt(const HpdMatrix& h, bool regularize) {
  return HpdMatrix(spectral_map(h, regularize, [](double x) { return std::sqrt(x); }, "hpd_sqrt"));
}

HpdMatrix hpd_inv_sqrt(const HpdMatrix& h, bool regularize) {
  return HpdMatrix(
      spectral_map(h, regularize, [](double x) { return 1.0 / std::sqrt(x); }, "hpd_inv_sqrt"));
}

ComplexMatrix hpd_log(const HpdMatrix& h, bool regularize) {
  return spectral_map(h, regularize, [](double x) { return std::log(x); }, "hpd_log");
}

MatrixNorms matrix_norms(const ComplexMatrix& m) {
  require(m.rows() >= 1 && m.cols() >= 1, ErrorKind::DimensionMismatch, "empty matrix");
  MatrixNorms norms;
  norms.frobenius = m.norm();
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  norms.spectral = svd.singularValues()(0);
  return norms;
}

}  // namespace polydisk
