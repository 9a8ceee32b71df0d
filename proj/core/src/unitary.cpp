#include "bohrlab/unitary.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "bohrlab/error.hpp"
#include "bohrlab/rng.hpp"

namespace bohrlab {
namespace {

void check_valid(const CMatrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols())
    fail("invalid matrix", "matrix must be square and non-empty");
  if (!is_finite(m)) fail("invalid matrix", "matrix has non-finite entries");
}

// Eigenvalues of a 2x2 Hermitian PSD matrix via the characteristic
// polynomial; used so that tiny matrices get exact arithmetic instead of an
// iterative solver.
double largest_eig_2x2_psd(double a, double d, Complex b) {
  const double tr = a + d;
  const double det = a * d - std::norm(b);
  const double disc = std::max(0.0, tr * tr - 4.0 * det);
  return 0.5 * (tr + std::sqrt(disc));
}

}  // namespace

bool is_finite(const CMatrix& m) {
  return m.allFinite();
}

double operator_norm(const CMatrix& m) {
  check_valid(m);
  const int n = static_cast<int>(m.rows());
  if (n == 1) return std::abs(m(0, 0));
  const CMatrix g = m.adjoint() * m;
  if (n == 2) {
    const double lam = largest_eig_2x2_psd(g(0, 0).real(), g(1, 1).real(), g(0, 1));
    return std::sqrt(std::max(0.0, lam));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(g, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail("invalid matrix", "eigendecomposition failed");
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double unitarity_error(const CMatrix& m) {
  check_valid(m);
  const CMatrix r = m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols());
  return operator_norm(r);
}

UnitaryMatrix::UnitaryMatrix(CMatrix m, double tol) : m_(std::move(m)) {
  check_valid(m_);
  const double err = unitarity_error(m_);
  if (err > tol)
    fail("invalid matrix", "not unitary within tolerance (error " +
                               std::to_string(err) + ")");
}

double unitary_distance(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail("invalid matrix", "distance requires equal dimensions");
  return operator_norm(a - b);
}

UnitaryMatrix polar_unitary_part(const CMatrix& m) {
  check_valid(m);
  const CMatrix g = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(g);
  if (es.info() != Eigen::Success) fail("invalid matrix", "eigendecomposition failed");
  Eigen::VectorXd sv = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Tolerances tol;
  if (sv.minCoeff() <= tol.polar_min_sv)
    fail("polar undefined", "smallest singular value " + std::to_string(sv.minCoeff()));
  // U = M (M^H M)^{-1/2}
  CMatrix inv_root = es.eigenvectors() * sv.cwiseInverse().asDiagonal() *
                     es.eigenvectors().adjoint();
  CMatrix u = m * inv_root;
  // one Newton polish keeps the unitarity residual at rounding level even for
  // moderately conditioned inputs
  u = 0.5 * (u + u.adjoint().inverse());
  return UnitaryMatrix(std::move(u));
}

SimDiagResult simultaneous_diagonalize(const std::vector<CMatrix>& family,
                                       double commute_tol) {
  if (family.empty()) fail("invalid matrix", "empty family");
  const int n = static_cast<int>(family[0].rows());
  for (const auto& m : family) {
    check_valid(m);
    if (m.rows() != n) fail("invalid matrix", "family dimensions differ");
  }
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const double c = operator_norm(family[i] * family[j] - family[j] * family[i]);
      if (c > commute_tol)
        fail("family not abelian", "commutator norm " + std::to_string(c));
    }

  // A random Hermitian combination of the family generically has the joint
  // eigenspaces as its eigenspaces; deterministic retry seeds cover the
  // degenerate draws.
  for (int attempt = 0; attempt < 5; ++attempt) {
    Rng rng(0x51d1a600 + static_cast<std::uint64_t>(attempt));
    CMatrix h = CMatrix::Zero(n, n);
    for (const auto& m : family) {
      const double a = rng.next_gaussian();
      const double b = rng.next_gaussian();
      h += a * (m + m.adjoint());
      h += Complex(0.0, b) * (m - m.adjoint());
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    if (es.info() != Eigen::Success) continue;
    const CMatrix q = es.eigenvectors();
    bool ok = true;
    std::vector<CVector> diags;
    for (const auto& m : family) {
      CMatrix r = q.adjoint() * m * q;
      CVector d = r.diagonal();
      r.diagonal().setZero();
      if (operator_norm(r) > commute_tol) {
        ok = false;
        break;
      }
      for (int i = 0; i < n; ++i) {
        const double mag = std::abs(d(i));
        if (std::abs(mag - 1.0) > 100 * commute_tol) {
          ok = false;
          break;
        }
        d(i) /= mag;  // project to the unit circle
      }
      if (!ok) break;
      diags.push_back(std::move(d));
    }
    if (!ok) continue;
    return SimDiagResult{UnitaryMatrix(q), std::move(diags)};
  }
  fail("family not abelian", "no simultaneous eigenbasis found within tolerance");
}

}  // namespace bohrlab
