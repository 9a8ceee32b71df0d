#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "bohrlab/tolerances.hpp"

namespace bohrlab {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Largest singular value, computed through the Hermitian eigendecomposition
// of M^H M (closed form for dim <= 2, solver above). Throws "invalid matrix"
// on non-finite entries or an empty matrix.
double operator_norm(const CMatrix& m);

bool is_finite(const CMatrix& m);
double unitarity_error(const CMatrix& m);  // ||M^H M - I||

// Value type certifying unitarity at construction.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(CMatrix m, double tol = Tolerances{}.unitary);

  const CMatrix& matrix() const { return m_; }
  operator const CMatrix&() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  CMatrix m_;
};

// Bi-invariant metric d(A, B) = ||A - B|| in operator norm.
double unitary_distance(const CMatrix& a, const CMatrix& b);

// Unitary factor of the polar decomposition M = U P. Requires the smallest
// singular value to exceed 1e-12 ("polar undefined" otherwise).
UnitaryMatrix polar_unitary_part(const CMatrix& m);

struct SimDiagResult {
  UnitaryMatrix conjugator;          // Q with Q^H M Q diagonal for every M
  std::vector<CVector> diagonals;    // unit-modulus diagonal entries per input
};

// Simultaneously diagonalizes a family of pairwise commuting unitaries
// (commutators must stay within commute_tol, else "family not abelian").
SimDiagResult simultaneous_diagonalize(const std::vector<CMatrix>& family,
                                       double commute_tol = Tolerances{}.commute);

}  // namespace bohrlab
