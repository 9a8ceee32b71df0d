#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "bohrlab/probe.hpp"

using namespace bohrlab;

namespace {

int oracle_grid_m(double eps) {
  return static_cast<int>(
      std::ceil(std::numbers::pi / std::asin(std::min(eps, 2.0) / 2.0)));
}

// independent closure size count over quaternions, bucketed to kill float
// noise (catalog groups have coordinates spaced far apart)
int closure_size(std::vector<Quat> gens) {
  const auto key = [](const Quat& q) {
    const auto r = [](double v) { return std::llround(v * 1e6); };
    return std::array<long long, 4>{r(q.w), r(q.x), r(q.y), r(q.z)};
  };
  std::set<std::array<long long, 4>> seen;
  std::vector<Quat> frontier{Quat{}};
  seen.insert(key(Quat{}));
  while (!frontier.empty()) {
    std::vector<Quat> next;
    for (const Quat& p : frontier)
      for (const Quat& g : gens) {
        const Quat q = quat_mul(p, g);
        if (seen.insert(key(q)).second) next.push_back(q);
      }
    frontier = std::move(next);
  }
  return static_cast<int>(seen.size());
}

}  // namespace

TEST_CASE("torus probe succeeds on the whole epsilon grid", "[probe]") {
  for (double eps : {1.0, 0.5, 0.1, 0.05, 0.01}) {
    const ProbeReport r = turing_probe_torus(1, eps);
    REQUIRE(r.net_exists);
    REQUIRE(r.grid_m == oracle_grid_m(eps));
    REQUIRE(r.net_size == r.grid_m);
    REQUIRE(r.certified_radius < eps);
  }
  const ProbeReport r2 = turing_probe_torus(2, 0.5);
  REQUIRE(r2.net_exists);
  REQUIRE(r2.net_size == static_cast<long>(oracle_grid_m(0.5)) * oracle_grid_m(0.5));
}

TEST_CASE("torus probe spot check from the examples", "[probe]") {
  const ProbeReport r = turing_probe_torus(1, 0.5);
  REQUIRE(r.grid_m == static_cast<int>(std::ceil(std::numbers::pi / std::asin(0.25))));
  REQUIRE(r.grid_m == 13);
}

TEST_CASE("su2 catalog closures have the classical orders", "[probe]") {
  REQUIRE(closure_size(quat_binary_tetrahedral()) == 24);
  REQUIRE(closure_size(quat_binary_octahedral()) == 48);
  REQUIRE(closure_size(quat_binary_icosahedral()) == 120);
  REQUIRE(static_cast<int>(quat_binary_tetrahedral().size()) == 24);
  REQUIRE(static_cast<int>(quat_binary_octahedral().size()) == 48);
  REQUIRE(static_cast<int>(quat_binary_icosahedral().size()) == 120);
  REQUIRE(static_cast<int>(quat_cyclic(5).size()) == 5);
  REQUIRE(static_cast<int>(quat_binary_dihedral(3).size()) == 12);
}

TEST_CASE("su2 probe reports the icosahedral minimum", "[probe]") {
  const ProbeReport r = turing_probe_su2(0.3, 200, 7);
  REQUIRE(r.min_covering_radius > 0.0);
  REQUIRE(!r.subgroups.empty());

  double best = 1e9;
  std::string best_name;
  for (const auto& s : r.subgroups) {
    REQUIRE(s.covering_radius > 0.0);
    REQUIRE(s.order <= 200);
    if (s.covering_radius < best) {
      best = s.covering_radius;
      best_name = s.name;
    }
  }
  REQUIRE(r.min_covering_radius == best);
  REQUIRE(r.attained_by == best_name);

  bool has_icosahedral = false;
  for (const auto& s : r.subgroups)
    if (s.order == 120 && s.name == r.attained_by) has_icosahedral = true;
  REQUIRE(has_icosahedral);
  REQUIRE(r.net_exists == (r.min_covering_radius <= 0.3));
}

TEST_CASE("su2 probe is deterministic in the seed", "[probe]") {
  const ProbeReport a = turing_probe_su2(0.6, 48, 3);
  const ProbeReport b = turing_probe_su2(0.6, 48, 3);
  REQUIRE(a.subgroups.size() == b.subgroups.size());
  for (std::size_t i = 0; i < a.subgroups.size(); ++i) {
    REQUIRE(a.subgroups[i].name == b.subgroups[i].name);
    REQUIRE(a.subgroups[i].covering_radius == b.subgroups[i].covering_radius);
  }
  REQUIRE(a.min_covering_radius == b.min_covering_radius);
}

TEST_CASE("cap skips the large families with a warning", "[probe]") {
  const ProbeReport r = turing_probe_su2(0.5, 20, 5);
  for (const auto& s : r.subgroups) REQUIRE(s.order <= 20);
  REQUIRE(!r.warnings.empty());
}
