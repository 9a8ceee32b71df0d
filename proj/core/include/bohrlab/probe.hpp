#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bohrlab/nets.hpp"

namespace bohrlab {

enum class ProbeTarget { torus, su2 };

struct ProbeSubgroupStat {
  std::string name;
  int order = 0;
  double covering_radius = 0.0;
};

struct ProbeReport {
  ProbeTarget target = ProbeTarget::torus;
  double epsilon = 0.0;
  int cap = 0;
  std::uint64_t seed = 0;
  long sample_count = 0;
  bool net_exists = false;  // some reported subgroup is an eps-net

  // torus branch: the cyclic grid subgroup (m-th roots per coordinate)
  int torus_dim = 0;
  int grid_m = 0;
  long net_size = 0;
  double certified_radius = 0.0;

  // su2 branch: the finite-subgroup catalog
  std::vector<ProbeSubgroupStat> subgroups;
  double min_covering_radius = 0.0;
  std::string attained_by;
  std::vector<std::string> warnings;
};

// The torus always admits a finite eps-approximation: the grid subgroup of
// m-th roots of unity per coordinate with m = ceil(pi/asin(eps/2)).
ProbeReport turing_probe_torus(int n, double eps);

// Enumerates the finite subgroups of SU(2) up to `cap` (cyclic, binary
// dihedral, and the binary tetrahedral/octahedral/icosahedral groups built by
// quaternion closure), estimates each covering radius on a seeded dense
// sample, and reports whether any is an eps-net. Families whose closure would
// exceed the cap are skipped with a warning.
ProbeReport turing_probe_su2(double eps, int cap, std::uint64_t seed);

// Explicit quaternion element lists for the catalog subgroups (exposed for
// tests and the turing-probe report).
std::vector<Quat> quat_cyclic(int k);
std::vector<Quat> quat_binary_dihedral(int k);  // order 4k
std::vector<Quat> quat_closure(const std::vector<Quat>& gens, int cap);
std::vector<Quat> quat_binary_tetrahedral();
std::vector<Quat> quat_binary_octahedral();
std::vector<Quat> quat_binary_icosahedral();

}  // namespace bohrlab
