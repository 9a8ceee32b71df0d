#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bohrlab/tolerances.hpp"

namespace bohrlab {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Construction recipe for a finite group. Serializable; see json_io.hpp for
// the wire format.
struct GroupDescriptor {
  enum class Kind {
    cyclic,       // Z/n, n >= 1
    product,      // direct product of factors
    dihedral,     // order 2n (n rotations + n reflections)
    quaternion8,  // the eight unit quaternions
    symmetric,    // all permutations of {1..n}, n <= 7
    perm_gens,    // closure of permutation generators (1-based images)
    subgroup,     // subgroup of factors[0] spanned by `members`
    derived,      // internal (image groups etc.), not serializable
  };

  Kind kind = Kind::cyclic;
  int n = 0;                             // cyclic / dihedral / symmetric
  std::vector<GroupDescriptor> factors;  // product, subgroup parent
  int degree = 0;                        // perm_gens
  std::vector<std::vector<int>> gens;    // perm_gens generators
  std::vector<int> members;              // subgroup element indices in parent

  static GroupDescriptor cyclic(int n);
  static GroupDescriptor product(std::vector<GroupDescriptor> factors);
  static GroupDescriptor dihedral(int n);
  static GroupDescriptor quaternion8();
  static GroupDescriptor symmetric(int n);
  static GroupDescriptor perm_gens(int degree, std::vector<std::vector<int>> gens);
};

// Immutable finite group with elements 0..order-1 and a precomputed Cayley
// table. Construction validates the table: rows and columns are permutations,
// a two-sided identity and inverses exist, and associativity is verified
// completely for order <= 4096 (Light's test over a computed generating set)
// or by seeded spot sampling above that.
class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
 public:
  struct Options {
    int order_cap = kDefaultOrderCap;
  };

  static GroupPtr build(const GroupDescriptor& desc, const Options& opts);
  static GroupPtr build(const GroupDescriptor& desc);

  // table is row-major: table[a * order + b] = a*b
  static GroupPtr from_table(std::string label, GroupDescriptor desc,
                             std::vector<std::uint16_t> table,
                             const Options& opts);
  static GroupPtr from_table(std::string label, GroupDescriptor desc,
                             std::vector<std::uint16_t> table);

  int order() const { return order_; }
  int identity() const { return identity_; }
  int mul(int a, int b) const {
    return table_[static_cast<std::size_t>(a) * order_ + b];
  }
  int inv(int a) const { return inverse_[a]; }
  int conj(int g, int a) const { return mul(mul(g, a), inv(g)); }

  const std::string& label() const { return label_; }
  const GroupDescriptor& descriptor() const { return desc_; }
  bool abelian() const { return abelian_; }

  int element_order(int a) const;
  int exponent() const;  // lcm of element orders

 private:
  FiniteGroup() = default;

  int order_ = 0;
  int identity_ = 0;
  bool abelian_ = false;
  std::string label_;
  GroupDescriptor desc_;
  std::vector<std::uint16_t> table_;
  std::vector<std::uint16_t> inverse_;
};

inline GroupPtr FiniteGroup::build(const GroupDescriptor& desc) {
  return build(desc, Options{});
}

inline GroupPtr FiniteGroup::from_table(std::string label, GroupDescriptor desc,
                                        std::vector<std::uint16_t> table) {
  return from_table(std::move(label), std::move(desc), std::move(table),
                    Options{});
}

// True when the two handles denote the same underlying group object.
inline bool same_group(const GroupPtr& a, const GroupPtr& b) {
  return a.get() == b.get();
}

// Builds any descriptor, including subgroup descriptors (which FiniteGroup::
// build cannot resolve on its own).
GroupPtr build_group(const GroupDescriptor& desc,
                     const FiniteGroup::Options& opts = {});

}  // namespace bohrlab
