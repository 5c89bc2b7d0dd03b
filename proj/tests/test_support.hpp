#pragma once

// Shared random-object generators for the test suites. Everything is driven
// by PhiloxRng so the suites are deterministic across platforms.

#include <cmath>
#include <numbers>
#include <vector>

#include "polydisk/hermitian.hpp"
#include "polydisk/poincare.hpp"
#include "polydisk/rng.hpp"
#include "polydisk/siegel.hpp"

namespace polydisk::testing {

inline Complex random_disk(PhiloxRng& rng, double max_radius = 0.9) {
  const double radius = max_radius * rng.next_double();
  const double phase = 2.0 * std::numbers::pi * rng.next_double();
  return Complex{radius * std::cos(phase), radius * std::sin(phase)};
}

inline ComplexMatrix random_matrix(PhiloxRng& rng, Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.next_complex_gaussian();
  }
  return m;
}

inline ComplexMatrix random_hermitian(PhiloxRng& rng, Eigen::Index dim) {
  const ComplexMatrix g = random_matrix(rng, dim, dim);
  return 0.5 * (g + g.adjoint());
}

// Well-conditioned random HPD matrix.
inline HpdMatrix random_hpd(PhiloxRng& rng, Eigen::Index dim) {
  const ComplexMatrix g = random_matrix(rng, dim, dim);
  ComplexMatrix h = g * g.adjoint();
  h += (0.3 + rng.next_double()) * static_cast<double>(dim) *
       ComplexMatrix::Identity(dim, dim);
  return HpdMatrix(h);
}

// Random Siegel point with spectral norm in (0, max_norm].
inline SiegelPoint random_siegel_point(PhiloxRng& rng, Eigen::Index dim,
                                       double max_norm = 0.85) {
  const ComplexMatrix g = random_matrix(rng, dim, dim);
  const double top = matrix_norms(g).spectral;
  const double target = max_norm * (0.2 + 0.8 * rng.next_double());
  return SiegelPoint(g * (target / top));
}

inline SiegelParams random_siegel_params(PhiloxRng& rng, Eigen::Index dim, int order) {
  std::vector<SiegelPoint> a;
  for (int k = 0; k < order; ++k) a.push_back(random_siegel_point(rng, dim));
  return make_siegel_params(random_hpd(rng, dim), std::move(a));
}

inline ProductPoint random_product_point(PhiloxRng& rng, int order, int n_pulses,
                                         double max_radius = 0.8) {
  std::vector<Complex> mu(order);
  for (Complex& m : mu) m = random_disk(rng, max_radius);
  return make_product_point(2.0 * rng.next_gaussian(), std::move(mu), n_pulses);
}

// Random invertible matrix with singular values in [0.5, 2].
inline ComplexMatrix random_invertible(PhiloxRng& rng, Eigen::Index dim) {
  const ComplexMatrix g = random_matrix(rng, dim, dim);
  Eigen::JacobiSVD<ComplexMatrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RealVector s(dim);
  for (Eigen::Index i = 0; i < dim; ++i) s(i) = 0.5 + 1.5 * rng.next_double();
  return svd.matrixU() * s.asDiagonal().toDenseMatrix().cast<Complex>() *
         svd.matrixV().adjoint();
}

}  // namespace polydisk::testing
