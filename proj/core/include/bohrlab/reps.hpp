#pragma once

#include <string>
#include <vector>

#include "bohrlab/approx_hom.hpp"
#include "bohrlab/group.hpp"

namespace bohrlab {

// A named exact unitary representation. Construction certifies that the map
// is a homomorphism: defect <= hom_tol (default 1e-10) or it throws.
struct Representation {
  std::string name;
  GroupMap map;
};

Representation make_representation(std::string name, GroupPtr group,
                                   std::vector<CMatrix> images,
                                   double hom_tol = 1e-10);

// Invariant-factor style decomposition of an abelian group: an internal
// direct sum of cyclic subgroups <basis[i]> of order `orders[i]`. Verified
// exhaustively at construction (the product map over all exponent tuples hits
// every element exactly once). Trivial groups decompose into zero factors.
struct CyclicDecomposition {
  GroupPtr group;
  std::vector<int> basis;    // element indices, one generator per factor
  std::vector<int> orders;   // prime-power orders, grouped by prime
  std::vector<std::vector<int>> digits;  // digits[g][i]: g = prod basis[i]^digits[g][i]
};

CyclicDecomposition cyclic_decomposition(const GroupPtr& group);

// All |G| characters of an abelian group as 1x1 representations, the trivial
// character first. Deterministic order: mixed-radix enumeration over the
// cyclic decomposition.
std::vector<Representation> characters_abelian(const GroupPtr& group);

// Built-in exact irreducibles:
//   abelian         all characters
//   dihedral n>=3   all 1-dim characters and all 2-dim irreps (complete)
//   quaternion8     four characters and the 2-dim irrep (complete)
//   symmetric 3..5  trivial, sign, deleted permutation (n-1 dimensional)
//   perm_gens       trivial, sign when some generator is odd, deleted
//                   permutation (irreducible when the action is 2-transitive)
// Anything else throws "no catalog entry".
std::vector<Representation> catalog_irreps(const GroupPtr& group);

struct DegreeMultiset {
  std::vector<std::pair<int, int>> counts;  // (degree, number of irreps), ascending
  int sum_of_squares = 0;                   // always equals |G|
};

// Irreducible degrees of any group of order <= 360, computed numerically from
// the regular representation: a random Hermitian matrix averaged over the
// group action lands in the commutant, where each degree-d irrep contributes
// d random eigenvalues of multiplicity d. Retries nearby seeds on eigenvalue
// collisions, then throws "degree extraction failed".
DegreeMultiset regular_rep_degrees(const GroupPtr& group,
                                   std::uint64_t seed = 0x5ca1ab1e);

// Smallest dimension of a nontrivial irreducible component of the regular
// representation (quasirandomness parameter d).
int min_nontrivial_dim(const GroupPtr& group, std::uint64_t seed = 0x5ca1ab1e);

}  // namespace bohrlab
