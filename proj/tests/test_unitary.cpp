#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include "bohrlab/error.hpp"
#include "bohrlab/unitary.hpp"

using namespace bohrlab;

namespace {

// Independent largest-singular-value oracle: power iteration on M^H M with a
// deterministic start, run to stagnation.
double oracle_norm(const CMatrix& m) {
  const CMatrix a = m.adjoint() * m;
  CVector v = CVector::Ones(a.rows());
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 20000; ++it) {
    CVector w = a * v;
    const double next = w.norm();
    if (next == 0.0) return 0.0;
    w /= next;
    if (std::abs(next - lambda) < 1e-14 * std::max(1.0, next) && it > 4) {
      lambda = next;
      break;
    }
    lambda = next;
    v = w;
  }
  return std::sqrt(lambda);
}

CMatrix random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  return m;
}

CMatrix random_unitary(int n, std::mt19937_64& rng) {
  return polar_unitary_part(random_matrix(n, rng)).matrix();
}

}  // namespace

TEST_CASE("operator norm on closed-form cases", "[unitary]") {
  CMatrix id = CMatrix::Identity(3, 3);
  REQUIRE_THAT(operator_norm(id), Catch::Matchers::WithinAbs(1.0, 1e-14));

  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  REQUIRE_THAT(operator_norm(d), Catch::Matchers::WithinAbs(3.0, 1e-13));

  CMatrix nil = CMatrix::Zero(2, 2);
  nil(0, 1) = 2.0;
  REQUIRE_THAT(operator_norm(nil), Catch::Matchers::WithinAbs(2.0, 1e-13));
}

TEST_CASE("operator norm matches power iteration", "[unitary]") {
  std::mt19937_64 rng(42);
  for (int n = 1; n <= 6; ++n)
    for (int rep = 0; rep < 8; ++rep) {
      const CMatrix m = random_matrix(n, rng);
      REQUIRE_THAT(operator_norm(m),
                   Catch::Matchers::WithinRel(oracle_norm(m), 1e-9));
    }
}

TEST_CASE("operator norm rejects bad input", "[unitary]") {
  CMatrix m(1, 1);
  m(0, 0) = std::numeric_limits<double>::quiet_NaN();
  bool threw = false;
  try {
    operator_norm(m);
  } catch (const Error& e) {
    threw = true;
    REQUIRE(std::string(e.name()) == "invalid matrix");
  }
  REQUIRE(threw);
}

TEST_CASE("unitary distance is bi-invariant", "[unitary]") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 5; ++rep) {
    const CMatrix a = random_unitary(3, rng);
    const CMatrix b = random_unitary(3, rng);
    const CMatrix u = random_unitary(3, rng);
    const double d = unitary_distance(a, b);
    REQUIRE_THAT(unitary_distance(u * a, u * b),
                 Catch::Matchers::WithinAbs(d, 1e-12));
    REQUIRE_THAT(unitary_distance(a * u, b * u),
                 Catch::Matchers::WithinAbs(d, 1e-12));
    REQUIRE_THAT(unitary_distance(b, a), Catch::Matchers::WithinAbs(d, 1e-12));
  }
}

TEST_CASE("unitary distance on the circle is the chord", "[unitary]") {
  for (double theta : {0.1, 0.5, 1.0, 2.0, 3.0}) {
    CMatrix a(1, 1), b(1, 1);
    a(0, 0) = 1.0;
    b(0, 0) = std::polar(1.0, theta);
    REQUIRE_THAT(unitary_distance(a, b),
                 Catch::Matchers::WithinAbs(2.0 * std::sin(theta / 2.0), 1e-13));
  }
}

TEST_CASE("polar part recovers the unitary factor", "[unitary]") {
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 6; ++rep) {
    const CMatrix u = random_unitary(3, rng);
    CMatrix p = random_matrix(3, rng);
    p = p.adjoint() * p + 0.5 * CMatrix::Identity(3, 3);  // positive definite
    const CMatrix w = polar_unitary_part(u * p).matrix();
    REQUIRE(unitary_distance(w, u) < 1e-10);
  }
}

TEST_CASE("polar part of a singular matrix is undefined", "[unitary]") {
  CMatrix z = CMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  bool threw = false;
  try {
    polar_unitary_part(z);
  } catch (const Error& e) {
    threw = true;
    REQUIRE(std::string(e.name()) == "polar undefined");
  }
  REQUIRE(threw);
}

TEST_CASE("unitary certification", "[unitary]") {
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 0) = 1.5;
  REQUIRE_THROWS(UnitaryMatrix(m));
  REQUIRE_NOTHROW(UnitaryMatrix(CMatrix::Identity(2, 2)));
}

TEST_CASE("simultaneous diagonalization of a commuting family", "[unitary]") {
  std::mt19937_64 rng(23);
  const CMatrix w = random_unitary(3, rng);
  std::vector<CMatrix> family;
  std::vector<CVector> expected;
  for (int k = 0; k < 4; ++k) {
    CVector d(3);
    for (int i = 0; i < 3; ++i)
      d(i) = std::polar(1.0, 2.0 * std::numbers::pi * ((k + 1) * (i + 1) % 7) / 7.0);
    expected.push_back(d);
    family.push_back(w * d.asDiagonal() * w.adjoint());
  }
  const SimDiagResult r = simultaneous_diagonalize(family);
  const CMatrix& q = r.conjugator.matrix();
  for (std::size_t k = 0; k < family.size(); ++k) {
    const CMatrix back = q.adjoint() * family[k] * q;
    // off-diagonal residue small, diagonal unimodular
    for (int i = 0; i < 3; ++i) {
      REQUIRE_THAT(std::abs(r.diagonals[k](i)),
                   Catch::Matchers::WithinAbs(1.0, 1e-9));
      for (int j = 0; j < 3; ++j)
        if (i != j) REQUIRE(std::abs(back(i, j)) < 1e-8);
    }
    // recovered spectrum matches the planted one as a multiset
    std::vector<double> got, want;
    for (int i = 0; i < 3; ++i) {
      got.push_back(std::arg(r.diagonals[k](i)));
      want.push_back(std::arg(expected[k](i)));
    }
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 3; ++i)
      REQUIRE_THAT(got[i], Catch::Matchers::WithinAbs(want[i], 1e-8));
  }
}

TEST_CASE("non-commuting family is rejected", "[unitary]") {
  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  CMatrix z = CMatrix::Identity(2, 2);
  z(1, 1) = -1.0;
  bool threw = false;
  try {
    simultaneous_diagonalize({x, z});
  } catch (const Error& e) {
    threw = true;
    REQUIRE(std::string(e.name()) == "family not abelian");
  }
  REQUIRE(threw);
}
