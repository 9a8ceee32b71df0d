#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bohrlab/group.hpp"

namespace bohrlab {

// Subset of a finite group, stored as a sorted list of element indices plus a
// bitmask for O(1) membership. Immutable after construction.
class Subset {
 public:
  Subset(GroupPtr group, std::vector<int> members);

  static Subset whole(GroupPtr group);
  static Subset singleton(GroupPtr group, int g);
  static Subset empty(GroupPtr group);

  const GroupPtr& group() const { return group_; }
  const std::vector<int>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool is_empty() const { return members_.empty(); }
  bool contains(int g) const {
    return (mask_[g >> 6] >> (g & 63)) & 1u;
  }
  const std::vector<std::uint64_t>& mask() const { return mask_; }

  bool operator==(const Subset& other) const;

 private:
  GroupPtr group_;
  std::vector<int> members_;
  std::vector<std::uint64_t> mask_;
};

// Normalized counting measure mu(A) = |A| / |G|.
struct DensityMeasure {
  GroupPtr group;
  double operator()(const Subset& a) const;
};

double density(const Subset& a);

Subset product_set(const Subset& a, const Subset& b);  // {xy : x in A, y in B}
Subset inverse_set(const Subset& a);
Subset power_set(const Subset& a, int n);  // A^n, n != 0; negative uses A^-1
Subset translate_set(int g, const Subset& a);  // gA
Subset union_set(const Subset& a, const Subset& b);
Subset intersect_set(const Subset& a, const Subset& b);
Subset difference_set(const Subset& a, const Subset& b);

struct GenericityResult {
  int count = 0;          // number of left translates used
  bool exact = false;     // true when found by exhaustive branch and bound
  std::vector<int> translates;  // g's with union gA = G
};

// Least n <= cap with n left translates of A covering G. Exact search for
// |G| <= 64, greedy upper bound (exact=false) above. nullopt when no cover
// within cap exists.
std::optional<GenericityResult> genericity(const Subset& a, int cap);

bool is_subgroup(const Subset& a);
bool is_normal(const Subset& a);     // requires is_subgroup
int subgroup_index(const Subset& a); // requires is_subgroup

int group_exponent(const FiniteGroup& g);

// Materialize a subgroup as a standalone FiniteGroup. Returns the new group
// and the embedding (new index -> parent index).
std::pair<GroupPtr, std::vector<int>> subgroup_as_group(const Subset& a);

}  // namespace bohrlab
