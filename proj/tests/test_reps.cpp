#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include "bohrlab/error.hpp"
#include "bohrlab/group.hpp"
#include "bohrlab/reps.hpp"

using namespace bohrlab;

namespace {

Complex trace_of(const CMatrix& m) { return m.trace(); }

// Schur orthogonality: an exact rep is irreducible iff the squared norm of
// its character equals |G|; two irreps are inequivalent iff their characters
// are orthogonal. Both computed here from scratch.
double char_norm2(const GroupMap& f) {
  double s = 0.0;
  for (int g = 0; g < f.group()->order(); ++g)
    s += std::norm(trace_of(f.image(g)));
  return s / f.group()->order();
}

Complex char_inner(const GroupMap& f, const GroupMap& h) {
  Complex s = 0.0;
  for (int g = 0; g < f.group()->order(); ++g)
    s += trace_of(f.image(g)) * std::conj(trace_of(h.image(g)));
  return s / static_cast<double>(f.group()->order());
}

// number of conjugacy classes, straight from the Cayley table
int class_count(const FiniteGroup& g) {
  std::vector<int> cls(g.order(), -1);
  int classes = 0;
  for (int a = 0; a < g.order(); ++a) {
    if (cls[a] >= 0) continue;
    for (int x = 0; x < g.order(); ++x) cls[g.conj(x, a)] = classes;
    ++classes;
  }
  return classes;
}

const std::vector<std::vector<int>> kA5Gens{{2, 3, 4, 5, 1}, {2, 1, 4, 3, 5}};

}  // namespace

TEST_CASE("cyclic decomposition reconstructs every element", "[reps]") {
  for (auto desc :
       {GroupDescriptor::cyclic(12), GroupDescriptor::cyclic(1),
        GroupDescriptor::product({GroupDescriptor::cyclic(2),
                                  GroupDescriptor::cyclic(2),
                                  GroupDescriptor::cyclic(3)}),
        GroupDescriptor::product(
            {GroupDescriptor::cyclic(4), GroupDescriptor::cyclic(6)})}) {
    const GroupPtr g = build_group(desc);
    const CyclicDecomposition dec = cyclic_decomposition(g);

    long long prod = 1;
    for (std::size_t i = 0; i < dec.orders.size(); ++i) {
      prod *= dec.orders[i];
      REQUIRE(g->element_order(dec.basis[i]) == dec.orders[i]);
      // prime power check
      int v = dec.orders[i];
      int p = 0;
      for (int q = 2; q <= v; ++q)
        if (v % q == 0) {
          p = q;
          break;
        }
      if (v > 1) {
        while (v % p == 0) v /= p;
        REQUIRE(v == 1);
      }
    }
    REQUIRE(prod == g->order());

    for (int a = 0; a < g->order(); ++a) {
      int rebuilt = g->identity();
      for (std::size_t i = 0; i < dec.basis.size(); ++i)
        for (int k = 0; k < dec.digits[a][i]; ++k)
          rebuilt = g->mul(rebuilt, dec.basis[i]);
      REQUIRE(rebuilt == a);
    }
  }
}

TEST_CASE("cyclic decomposition rejects nonabelian groups", "[reps]") {
  bool threw = false;
  try {
    cyclic_decomposition(build_group(GroupDescriptor::dihedral(3)));
  } catch (const Error& e) {
    threw = true;
    REQUIRE(std::string(e.name()) == "group not abelian");
  }
  REQUIRE(threw);
}

TEST_CASE("abelian characters are orthonormal homomorphisms", "[reps]") {
  const GroupPtr g = build_group(GroupDescriptor::product(
      {GroupDescriptor::cyclic(2), GroupDescriptor::cyclic(4)}));
  const auto chars = characters_abelian(g);
  REQUIRE(static_cast<int>(chars.size()) == 8);

  // trivial character first
  for (int x = 0; x < 8; ++x)
    REQUIRE(std::abs(chars[0].map.image(x)(0, 0) - Complex(1.0)) < 1e-14);

  for (std::size_t i = 0; i < chars.size(); ++i) {
    REQUIRE_THAT(char_norm2(chars[i].map),
                 Catch::Matchers::WithinAbs(1.0, 1e-10));
    for (std::size_t j = i + 1; j < chars.size(); ++j)
      REQUIRE(std::abs(char_inner(chars[i].map, chars[j].map)) < 1e-10);
  }
}

TEST_CASE("catalog irreps of the dihedral groups", "[reps]") {
  for (int n : {3, 4, 6}) {
    const GroupPtr g = build_group(GroupDescriptor::dihedral(n));
    const auto irreps = catalog_irreps(g);

    int sum_sq = 0;
    for (const auto& r : irreps) {
      sum_sq += r.map.dim() * r.map.dim();
      REQUIRE_THAT(char_norm2(r.map), Catch::Matchers::WithinAbs(1.0, 1e-9));
    }
    // the dihedral catalog is complete
    REQUIRE(sum_sq == g->order());
    REQUIRE(static_cast<int>(irreps.size()) == class_count(*g));

    for (std::size_t i = 0; i < irreps.size(); ++i)
      for (std::size_t j = i + 1; j < irreps.size(); ++j)
        REQUIRE(std::abs(char_inner(irreps[i].map, irreps[j].map)) < 1e-9);
  }
}

TEST_CASE("catalog irreps of the quaternion group", "[reps]") {
  const GroupPtr g = build_group(GroupDescriptor::quaternion8());
  const auto irreps = catalog_irreps(g);
  REQUIRE(irreps.size() == 5);
  std::multiset<int> dims;
  for (const auto& r : irreps) {
    dims.insert(r.map.dim());
    REQUIRE_THAT(char_norm2(r.map), Catch::Matchers::WithinAbs(1.0, 1e-10));
  }
  REQUIRE(dims == std::multiset<int>{1, 1, 1, 1, 2});
  for (std::size_t i = 0; i < irreps.size(); ++i)
    for (std::size_t j = i + 1; j < irreps.size(); ++j)
      REQUIRE(std::abs(char_inner(irreps[i].map, irreps[j].map)) < 1e-10);
}

TEST_CASE("catalog irreps of symmetric groups", "[reps]") {
  for (int n : {3, 4, 5}) {
    const GroupPtr g = build_group(GroupDescriptor::symmetric(n));
    const auto irreps = catalog_irreps(g);
    REQUIRE(irreps.size() == 3);  // trivial, sign, deleted permutation
    REQUIRE(irreps[0].map.dim() == 1);
    std::multiset<int> dims;
    for (const auto& r : irreps) {
      dims.insert(r.map.dim());
      REQUIRE_THAT(char_norm2(r.map), Catch::Matchers::WithinAbs(1.0, 1e-9));
    }
    REQUIRE(dims.count(n - 1) == 1);
  }
}

TEST_CASE("perm_gens catalog drops the sign rep for even generators", "[reps]") {
  const GroupPtr a5 = build_group(GroupDescriptor::perm_gens(5, kA5Gens));
  const auto irreps = catalog_irreps(a5);
  REQUIRE(irreps.size() == 2);  // trivial and the 4-dim deleted permutation
  REQUIRE(irreps[0].map.dim() == 1);
  REQUIRE(irreps[1].map.dim() == 4);
  REQUIRE_THAT(char_norm2(irreps[1].map),
               Catch::Matchers::WithinAbs(1.0, 1e-9));
}

TEST_CASE("no catalog entry for unsupported groups", "[reps]") {
  const GroupPtr g = build_group(GroupDescriptor::product(
      {GroupDescriptor::cyclic(2), GroupDescriptor::symmetric(3)}));
  bool threw = false;
  try {
    catalog_irreps(g);
  } catch (const Error& e) {
    threw = true;
    REQUIRE(std::string(e.name()) == "no catalog entry");
  }
  REQUIRE(threw);
}

TEST_CASE("make_representation rejects non-homomorphisms", "[reps]") {
  const GroupPtr g = build_group(GroupDescriptor::cyclic(3));
  std::vector<CMatrix> bad;
  for (int x = 0; x < 3; ++x) {
    CMatrix m(1, 1);
    m(0, 0) = std::polar(1.0, 0.7 * x);
    bad.push_back(m);
  }
  bool threw = false;
  try {
    make_representation("bad", g, bad);
  } catch (const Error& e) {
    threw = true;
    REQUIRE(std::string(e.name()) == "input not a homomorphism");
  }
  REQUIRE(threw);
}

TEST_CASE("regular representation degrees match known multisets", "[reps]") {
  struct Case {
    GroupDescriptor desc;
    std::vector<std::pair<int, int>> counts;
  };
  const std::vector<Case> cases{
      {GroupDescriptor::cyclic(7), {{1, 7}}},
      {GroupDescriptor::symmetric(3), {{1, 2}, {2, 1}}},
      {GroupDescriptor::dihedral(4), {{1, 4}, {2, 1}}},
      {GroupDescriptor::quaternion8(), {{1, 4}, {2, 1}}},
      {GroupDescriptor::symmetric(4), {{1, 2}, {2, 1}, {3, 2}}},
      {GroupDescriptor::perm_gens(4, {{2, 3, 1, 4}, {2, 1, 4, 3}}),
       {{1, 3}, {3, 1}}},
      {GroupDescriptor::dihedral(5), {{1, 2}, {2, 2}}},
  };
  for (const auto& c : cases) {
    const GroupPtr g = build_group(c.desc);
    const DegreeMultiset d = regular_rep_degrees(g);
    REQUIRE(d.counts == c.counts);
    REQUIRE(d.sum_of_squares == g->order());
    // irrep count equals conjugacy class count
    int total = 0;
    for (const auto& [deg, cnt] : d.counts) total += cnt;
    REQUIRE(total == class_count(*g));
  }
}

TEST_CASE("degrees of A5 and the quasirandomness parameter", "[reps]") {
  const GroupPtr a5 = build_group(GroupDescriptor::perm_gens(5, kA5Gens));
  const DegreeMultiset d = regular_rep_degrees(a5);
  REQUIRE(d.counts == std::vector<std::pair<int, int>>{
                          {1, 1}, {3, 2}, {4, 1}, {5, 1}});
  REQUIRE(d.sum_of_squares == 60);
  REQUIRE(min_nontrivial_dim(a5) == 3);
}

TEST_CASE("min nontrivial dimension falls to one with a second character", "[reps]") {
  REQUIRE(min_nontrivial_dim(build_group(GroupDescriptor::symmetric(3))) == 1);
  REQUIRE(min_nontrivial_dim(build_group(GroupDescriptor::cyclic(6))) == 1);
  const GroupPtr a4 =
      build_group(GroupDescriptor::perm_gens(4, {{2, 3, 1, 4}, {2, 1, 4, 3}}));
  REQUIRE(min_nontrivial_dim(a4) == 1);  // A4 has three characters
}

TEST_CASE("degree extraction is seed independent", "[reps]") {
  const GroupPtr g = build_group(GroupDescriptor::symmetric(4));
  const DegreeMultiset a = regular_rep_degrees(g, 1);
  const DegreeMultiset b = regular_rep_degrees(g, 999);
  REQUIRE(a.counts == b.counts);
}
