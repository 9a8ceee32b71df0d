#include "bohrlab/subset.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "bohrlab/error.hpp"

namespace bohrlab {
namespace {

void check_same(const Subset& a, const Subset& b) {
  if (!same_group(a.group(), b.group()))
    fail("group mismatch", "operands live in different groups");
}

std::vector<int> mask_to_members(const std::vector<std::uint64_t>& mask, int order) {
  std::vector<int> out;
  for (int g = 0; g < order; ++g)
    if ((mask[g >> 6] >> (g & 63)) & 1u) out.push_back(g);
  return out;
}

// Exact minimum cover over at most 64 ground elements: classic branch and
// bound, always branching on the element covered by the fewest candidates.
struct CoverSearch {
  std::uint64_t full;
  const std::vector<std::uint64_t>& sets;
  int best;
  std::vector<int> best_pick;
  std::vector<int> pick;

  CoverSearch(std::uint64_t full_, const std::vector<std::uint64_t>& sets_, int cap)
      : full(full_), sets(sets_), best(cap + 1) {}

  void run(std::uint64_t covered, int used) {
    if (covered == full) {
      best = used;
      best_pick = pick;
      return;
    }
    if (used + 1 >= best) return;
    // cheap lower bound: every chosen set covers at most max_new elements
    const int remaining = std::popcount(full & ~covered);
    int max_new = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const int cnt = std::popcount(sets[i] & ~covered);
      if (cnt > max_new) max_new = cnt;
    }
    if (max_new == 0) return;
    if (used + (remaining + max_new - 1) / max_new >= best) return;

    int pivot = -1, pivot_options = INT32_MAX;
    std::uint64_t uncovered = full & ~covered;
    while (uncovered) {
      const int e = std::countr_zero(uncovered);
      uncovered &= uncovered - 1;
      int options = 0;
      for (std::size_t i = 0; i < sets.size(); ++i)
        if ((sets[i] >> e) & 1u) ++options;
      if (options < pivot_options) {
        pivot_options = options;
        pivot = e;
      }
      if (options <= 1) break;
    }
    if (pivot < 0 || pivot_options == 0) return;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (!((sets[i] >> pivot) & 1u)) continue;
      pick.push_back(static_cast<int>(i));
      run(covered | sets[i], used + 1);
      pick.pop_back();
    }
  }
};

}  // namespace

Subset::Subset(GroupPtr group, std::vector<int> members)
    : group_(std::move(group)), members_(std::move(members)) {
  if (!group_) fail("bad descriptor", "subset needs a group");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  const int n = group_->order();
  if (!members_.empty() && (members_.front() < 0 || members_.back() >= n))
    fail("bad descriptor", "subset member out of range");
  mask_.assign((n + 63) / 64, 0);
  for (int g : members_) mask_[g >> 6] |= 1ull << (g & 63);
}

Subset Subset::whole(GroupPtr group) {
  std::vector<int> all(group->order());
  std::iota(all.begin(), all.end(), 0);
  return Subset(std::move(group), std::move(all));
}

Subset Subset::singleton(GroupPtr group, int g) {
  return Subset(std::move(group), {g});
}

Subset Subset::empty(GroupPtr group) { return Subset(std::move(group), {}); }

bool Subset::operator==(const Subset& other) const {
  return same_group(group_, other.group_) && members_ == other.members_;
}

double DensityMeasure::operator()(const Subset& a) const {
  if (!same_group(group, a.group()))
    fail("group mismatch", "measure applied to a foreign subset");
  return static_cast<double>(a.size()) / group->order();
}

double density(const Subset& a) {
  return static_cast<double>(a.size()) / a.group()->order();
}

Subset product_set(const Subset& a, const Subset& b) {
  check_same(a, b);
  const auto& g = *a.group();
  std::vector<std::uint64_t> out((g.order() + 63) / 64, 0);
  for (int x : a.members())
    for (int y : b.members()) {
      const int v = g.mul(x, y);
      out[v >> 6] |= 1ull << (v & 63);
    }
  return Subset(a.group(), mask_to_members(out, g.order()));
}

Subset inverse_set(const Subset& a) {
  const auto& g = *a.group();
  std::vector<int> out;
  out.reserve(a.size());
  for (int x : a.members()) out.push_back(g.inv(x));
  return Subset(a.group(), std::move(out));
}

Subset power_set(const Subset& a, int n) {
  if (n == 0) fail("bad descriptor", "A^0 is not defined");
  Subset base = n > 0 ? a : inverse_set(a);
  const int k = n > 0 ? n : -n;
  Subset acc = base;
  for (int i = 1; i < k; ++i) acc = product_set(acc, base);
  return acc;
}

Subset translate_set(int g, const Subset& a) {
  const auto& grp = *a.group();
  if (g < 0 || g >= grp.order()) fail("bad descriptor", "translate out of range");
  std::vector<int> out;
  out.reserve(a.size());
  for (int x : a.members()) out.push_back(grp.mul(g, x));
  return Subset(a.group(), std::move(out));
}

Subset union_set(const Subset& a, const Subset& b) {
  check_same(a, b);
  std::vector<int> out;
  std::set_union(a.members().begin(), a.members().end(), b.members().begin(),
                 b.members().end(), std::back_inserter(out));
  return Subset(a.group(), std::move(out));
}

Subset intersect_set(const Subset& a, const Subset& b) {
  check_same(a, b);
  std::vector<int> out;
  std::set_intersection(a.members().begin(), a.members().end(),
                        b.members().begin(), b.members().end(),
                        std::back_inserter(out));
  return Subset(a.group(), std::move(out));
}

Subset difference_set(const Subset& a, const Subset& b) {
  check_same(a, b);
  std::vector<int> out;
  std::set_difference(a.members().begin(), a.members().end(),
                      b.members().begin(), b.members().end(),
                      std::back_inserter(out));
  return Subset(a.group(), std::move(out));
}

std::optional<GenericityResult> genericity(const Subset& a, int cap) {
  if (a.is_empty()) fail("empty set not generic", "no translates of the empty set cover G");
  if (cap < 1) fail("bad descriptor", "cap must be positive");
  const auto& g = *a.group();
  const int n = g.order();

  if (n <= 64) {
    const std::uint64_t full = n == 64 ? ~0ull : (1ull << n) - 1;
    std::vector<std::uint64_t> translates(n, 0);
    for (int t = 0; t < n; ++t) {
      std::uint64_t m = 0;
      for (int x : a.members()) m |= 1ull << g.mul(t, x);
      translates[t] = m;
    }
    CoverSearch search(full, translates, cap);
    search.run(0, 0);
    if (search.best > cap) return std::nullopt;
    GenericityResult r;
    r.count = search.best;
    r.exact = true;
    r.translates = search.best_pick;
    return r;
  }

  // greedy cover; an upper bound only
  std::vector<char> covered(n, 0);
  int covered_count = 0;
  GenericityResult r;
  r.exact = false;
  while (covered_count < n) {
    if (r.count >= cap) return std::nullopt;
    int best_t = -1, best_new = -1;
    for (int t = 0; t < n; ++t) {
      int cnt = 0;
      for (int x : a.members())
        if (!covered[g.mul(t, x)]) ++cnt;
      if (cnt > best_new) {
        best_new = cnt;
        best_t = t;
      }
    }
    if (best_new <= 0) return std::nullopt;
    for (int x : a.members()) {
      const int v = g.mul(best_t, x);
      if (!covered[v]) {
        covered[v] = 1;
        ++covered_count;
      }
    }
    r.translates.push_back(best_t);
    ++r.count;
  }
  return r;
}

bool is_subgroup(const Subset& a) {
  if (a.is_empty()) return false;
  const auto& g = *a.group();
  if (!a.contains(g.identity())) return false;
  for (int x : a.members()) {
    if (!a.contains(g.inv(x))) return false;
    for (int y : a.members())
      if (!a.contains(g.mul(x, y))) return false;
  }
  return true;
}

bool is_normal(const Subset& a) {
  if (!is_subgroup(a)) fail("not a subgroup", "normality is defined for subgroups");
  const auto& g = *a.group();
  for (int t = 0; t < g.order(); ++t)
    for (int x : a.members())
      if (!a.contains(g.conj(t, x))) return false;
  return true;
}

int subgroup_index(const Subset& a) {
  if (!is_subgroup(a)) fail("not a subgroup", "index is defined for subgroups");
  return a.group()->order() / a.size();
}

int group_exponent(const FiniteGroup& g) { return g.exponent(); }

std::pair<GroupPtr, std::vector<int>> subgroup_as_group(const Subset& a) {
  if (!is_subgroup(a)) fail("not a subgroup", "cannot materialize a non-subgroup");
  const auto& g = *a.group();
  const auto& mem = a.members();
  const int m = a.size();
  std::vector<int> pos(g.order(), -1);
  for (int i = 0; i < m; ++i) pos[mem[i]] = i;
  std::vector<std::uint16_t> table(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      table[static_cast<std::size_t>(i) * m + j] =
          static_cast<std::uint16_t>(pos[g.mul(mem[i], mem[j])]);
  GroupDescriptor d;
  d.kind = GroupDescriptor::Kind::subgroup;
  d.factors = {g.descriptor()};
  d.members = mem;
  std::string label = g.label() + ".sub" + std::to_string(m);
  return {FiniteGroup::from_table(std::move(label), std::move(d), std::move(table)), mem};
}

GroupPtr build_group(const GroupDescriptor& desc, const FiniteGroup::Options& opts) {
  if (desc.kind == GroupDescriptor::Kind::subgroup) {
    if (desc.factors.size() != 1)
      fail("bad descriptor", "subgroup descriptor needs one parent");
    GroupPtr parent = build_group(desc.factors[0], opts);
    Subset members(parent, desc.members);
    if (!is_subgroup(members))
      fail("bad descriptor", "subgroup members are not closed");
    return subgroup_as_group(members).first;
  }
  return FiniteGroup::build(desc, opts);
}

}  // namespace bohrlab
