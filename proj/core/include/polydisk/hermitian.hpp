#pragma once

#include <Eigen/Dense>
#include <complex>

#include "polydisk/errors.hpp"

namespace polydisk {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative tolerance used to validate Hermitian symmetry and positivity.
inline constexpr double kHermTolerance = 1e-10;

/// Relative eigenvalue floor below which an HPD matrix counts as numerically
/// singular for log / sqrt / inverse-sqrt purposes.
inline constexpr double kEigenvalueFloor = 1e-14;

/// Hermitian positive definite matrix. Construction symmetrizes the input as
/// (H + H^*)/2, rejects inputs whose asymmetry exceeds kHermTolerance
/// relative to the Frobenius norm, and rejects non-positive spectra.
class HpdMatrix {
 public:
  explicit HpdMatrix(ComplexMatrix m);

  static HpdMatrix identity(Eigen::Index dim);

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

struct EigResult {
  RealVector eigenvalues;      // descending
  ComplexMatrix eigenvectors;  // columns aligned with eigenvalues, unitary
};

/// Eigendecomposition of a Hermitian matrix. Eigenvalues are returned in
/// descending order; each eigenvector's phase is fixed by making its
/// largest-magnitude component real positive, so output is deterministic.
EigResult hermitian_eig(const ComplexMatrix& h);
EigResult hermitian_eig(const HpdMatrix& h);

/// Principal matrix square root. If `regularize` is set, eigenvalues are
/// clamped to kEigenvalueFloor * lambda_max instead of raising
/// NotPositiveDefinite on a numerically singular spectrum.
HpdMatrix hpd_sqrt(const HpdMatrix& h, bool regularize = false);
HpdMatrix hpd_inv_sqrt(const HpdMatrix& h, bool regularize = false);

/// Principal matrix logarithm; the result is Hermitian but in general
/// indefinite.
ComplexMatrix hpd_log(const HpdMatrix& h, bool regularize = false);

struct MatrixNorms {
  double frobenius = 0.0;
  double spectral = 0.0;  // largest singular value
};

MatrixNorms matrix_norms(const ComplexMatrix& m);

}  // namespace polydisk
