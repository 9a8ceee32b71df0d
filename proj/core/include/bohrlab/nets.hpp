#pragma once

#include <cstdint>
#include <vector>

#include "bohrlab/unitary.hpp"

namespace bohrlab {

enum class NetTarget { torus, su2, unitary };

// Finite point set covering a target group within `radius` in operator norm.
// certified_radius is the verified covering radius: exact for torus grids and
// finite point sets, a dense-sample estimate (sample_count seeded draws) for
// SU(2).
struct EpsNet {
  NetTarget target = NetTarget::torus;
  int dim = 1;            // matrix dimension of the points
  double radius = 0.0;
  double certified_radius = 0.0;
  long sample_count = 0;
  std::uint64_t seed = 0;
  int grid_m = 0;         // torus grids: roots of unity per coordinate
  std::vector<UnitaryMatrix> points;
};

// Grid of m-th roots of unity in each diagonal slot, m = ceil(pi/asin(e/2))
// (e clamped to the diameter 2). Deterministic.
EpsNet torus_net(int n, double eps);

// Greedy farthest-point net over SU(2), certified on a fresh seeded sample.
EpsNet su2_net(double eps, std::uint64_t seed);

// Greedy subnet of a finite set of unitaries (e.g. the image of a
// representation), certified exactly over that set.
EpsNet finite_image_net(const std::vector<CMatrix>& points, double eps);

int covering_number_estimate(const EpsNet& net);

// Distance from 1 to the nearest nontrivial r-th root of unity:
// 2 sin(pi/r) for r >= 2, and 0 for r = 1.
double root_unity_distance(int r);

// Unit quaternion <-> SU(2) embedding used by the nets and the probe.
struct Quat {
  double w = 1, x = 0, y = 0, z = 0;
};
CMatrix quat_to_su2(const Quat& q);
Quat su2_to_quat(const CMatrix& m);
// Operator-norm distance between the corresponding 2x2 unitaries, computed
// from the matrix-difference entries (which again have quaternion form).
double su2_distance(const Quat& a, const Quat& b);
Quat quat_mul(const Quat& a, const Quat& b);
Quat random_unit_quat(class Rng& rng);

}  // namespace bohrlab
