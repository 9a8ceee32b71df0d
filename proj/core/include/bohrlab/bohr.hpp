#pragma once

#include <vector>

#include "bohrlab/approx_hom.hpp"
#include "bohrlab/nets.hpp"
#include "bohrlab/subset.hpp"
#include "bohrlab/unitary.hpp"

namespace bohrlab {

// B(tau, delta) = { g : d(tau(g), I) < delta }, with strict comparison.
// Elements whose distance lies within `collar` of delta are kept out or in by
// the strict rule but flagged, so callers can see float-ambiguous decisions.
struct BohrSet {
  GroupMap hom;
  double delta = 0.0;
  Subset members;
  std::vector<double> distances;  // d(tau(g), I) for every g
  std::vector<int> boundary;      // g with |distance - delta| <= collar
};

BohrSet bohr_set(const GroupMap& hom, double delta,
                 double hom_tol = Tolerances{}.hom,
                 double collar = Tolerances{}.boundary_collar);

struct BohrBasicReport {
  bool symmetric = false;          // B = B^{-1}
  bool has_identity = false;       // 1 in B
  bool conj_invariant = false;     // gBg^{-1} = B for all g
  bool doubling = false;           // B*B inside the 2*delta Bohr set
};

// Checks the four structural properties and throws "bohr property failed" if
// any of them does not hold.
BohrBasicReport verify_bohr_basic(const BohrSet& b);

struct CoverResult {
  std::vector<int> translates;  // F with F*B = G
  int net_size = 0;
  int skipped_net_points = 0;   // net points with no witness nearby
};

// Covering bound: a net for the target with certified radius < delta/2 yields
// witnesses g_a (lowest index with d(tau(g), a) < delta/2); the chosen
// translates cover G, so the genericity of B is at most the net size.
CoverResult genericity_cover(const BohrSet& b, const EpsNet& net);

struct GenericityBoundReport {
  int genericity = 0;
  bool exact = false;
  long long bound = 0;       // ceil((c/delta)^(n^2))
  double density = 0.0;
  double density_floor = 0.0;  // (delta/c)^(n^2)
};

// Certifies genericity(B) <= ceil((c/delta)^(n^2)) and density >= the
// matching floor; throws "bound violated" otherwise.
GenericityBoundReport genericity_bound_check(const BohrSet& b,
                                             double c = kDefaultCoveringConstant);

struct DiagonalizeResult {
  BohrSet diagonal;          // same group and delta, diagonal images
  UnitaryMatrix conjugator;
  double projection_error = 0.0;  // max over g of d(W^H tau(g) W, diag part)
};

// Conjugates a commuting image family into the diagonal torus. Membership is
// asserted unchanged (distances to I are conjugation invariant).
DiagonalizeResult diagonalize_abelian(const BohrSet& b);

struct TorsionReduceResult {
  GroupPtr image;            // tau(G) as an abstract group
  int image_order = 0;
  GroupPtr subgroup;         // H <= G of minimal index with tau(H) abelian
  std::vector<int> embedding;  // H index -> G index
  int index = 0;             // [G : H]
  bool normal = false;
  DiagonalizeResult reduced;   // Bohr set of the restriction, diagonalized
};

// Restricts a Bohr set to a minimal-index subgroup whose image commutes and
// rewrites it as a torus Bohr set there.
TorsionReduceResult torsion_reduce(const BohrSet& b);

struct CollapseResult {
  Subset kernel;             // B minus boundary-flagged elements
  GroupPtr kernel_group;
  std::vector<int> embedding;
  int index = 0;             // [G : B]
  int boundary_excluded = 0;
};

// Under delta <= 2 sin(pi / exponent(G)) the Bohr set is exactly ker(tau),
// hence a normal subgroup. Verifies membership distances vanish, subgroup
// closure, normality and the kernel identity; throws "hypothesis violated"
// when delta is too large and "collapse failed" when a check fails.
CollapseResult exponent_collapse(const BohrSet& b,
                                 double hom_tol = Tolerances{}.hom);

}  // namespace bohrlab
