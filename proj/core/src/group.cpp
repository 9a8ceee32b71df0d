#include "bohrlab/group.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "bohrlab/error.hpp"
#include "bohrlab/rng.hpp"
#include "perm_util.hpp"

namespace bohrlab {
namespace {

constexpr int kTableIndexCap = 65535;  // Cayley entries are stored as uint16

using detail::Perm;
using detail::perm_compose;
using detail::perm_pack;

long long checked_mul(long long a, long long b, long long limit) {
  if (a != 0 && b > limit / a) return limit + 1;
  return a * b;
}

std::string kind_name(GroupDescriptor::Kind k) {
  switch (k) {
    case GroupDescriptor::Kind::cyclic: return "cyclic";
    case GroupDescriptor::Kind::product: return "product";
    case GroupDescriptor::Kind::dihedral: return "dihedral";
    case GroupDescriptor::Kind::quaternion8: return "quaternion8";
    case GroupDescriptor::Kind::symmetric: return "symmetric";
    case GroupDescriptor::Kind::perm_gens: return "perm_gens";
    case GroupDescriptor::Kind::subgroup: return "subgroup";
    case GroupDescriptor::Kind::derived: return "derived";
  }
  return "?";
}

// Validates that `table` is the Cayley table of a group. Rows/columns must be
// permutations, a two-sided identity and inverses must exist. Associativity
// is verified completely for order <= 4096 via Light's test (it suffices to
// check a(gc) = (ag)c for g in a generating set) and by seeded random triples
// above that.
struct TableCheck {
  int identity = -1;
  std::vector<std::uint16_t> inverse;
  bool abelian = false;
};

TableCheck validate_table(const std::vector<std::uint16_t>& t, int n) {
  const auto at = [&](int a, int b) -> int {
    return t[static_cast<std::size_t>(a) * n + b];
  };
  if (static_cast<long long>(t.size()) != static_cast<long long>(n) * n)
    fail("bad descriptor", "Cayley table size mismatch");

  std::vector<char> seen(n);
  for (int a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < n; ++b) {
      const int v = at(a, b);
      if (v < 0 || v >= n || seen[v])
        fail("bad descriptor", "row " + std::to_string(a) + " is not a permutation");
      seen[v] = 1;
    }
  }
  for (int b = 0; b < n; ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int a = 0; a < n; ++a) {
      const int v = at(a, b);
      if (seen[v])
        fail("bad descriptor", "column " + std::to_string(b) + " is not a permutation");
      seen[v] = 1;
    }
  }

  TableCheck out;
  for (int e = 0; e < n; ++e) {
    if (at(e, 0) != 0) continue;
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = at(e, x) == x && at(x, e) == x;
    if (ok) {
      out.identity = e;
      break;
    }
  }
  if (out.identity < 0) fail("bad descriptor", "no two-sided identity");

  out.inverse.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    int found = -1;
    for (int b = 0; b < n; ++b) {
      if (at(a, b) == out.identity) {
        found = b;
        break;
      }
    }
    if (found < 0 || at(found, a) != out.identity)
      fail("bad descriptor", "element " + std::to_string(a) + " has no two-sided inverse");
    out.inverse[a] = static_cast<std::uint16_t>(found);
  }

  if (n <= 4096) {
    // greedy generating set: each new generator at least doubles the closure
    std::vector<char> closed(n, 0);
    std::vector<int> frontier{out.identity};
    std::vector<int> gens;
    closed[out.identity] = 1;
    int closed_count = 1;
    int cursor = 0;
    while (closed_count < n) {
      while (cursor < n && closed[cursor]) ++cursor;
      gens.push_back(cursor);
      std::vector<int> queue{cursor};
      if (!closed[cursor]) {
        closed[cursor] = 1;
        ++closed_count;
      }
      // right-multiplication closure over the current generator list
      for (int x : frontier) queue.push_back(x);
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        for (int g : gens) {
          const int y = at(queue[qi], g);
          if (!closed[y]) {
            closed[y] = 1;
            ++closed_count;
            queue.push_back(y);
          }
        }
      }
      frontier = queue;
    }
    for (int g : gens)
      for (int a = 0; a < n; ++a) {
        const int ag = at(a, g);
        for (int c = 0; c < n; ++c)
          if (at(ag, c) != at(a, at(g, c)))
            fail("bad descriptor", "multiplication is not associative");
      }
  } else {
    Rng rng(0x5eedbeef);
    for (int trial = 0; trial < 200000; ++trial) {
      const int a = static_cast<int>(rng.next_below(n));
      const int b = static_cast<int>(rng.next_below(n));
      const int c = static_cast<int>(rng.next_below(n));
      if (at(at(a, b), c) != at(a, at(b, c)))
        fail("bad descriptor", "multiplication is not associative (sampled)");
    }
  }

  out.abelian = true;
  for (int a = 0; a < n && out.abelian; ++a)
    for (int b = a + 1; b < n; ++b)
      if (at(a, b) != at(b, a)) {
        out.abelian = false;
        break;
      }
  return out;
}

std::vector<std::uint16_t> cyclic_table(int n) {
  std::vector<std::uint16_t> t(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      t[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>((a + b) % n);
  return t;
}

std::vector<std::uint16_t> dihedral_table(int n) {
  // element (eps, i) = s^eps r^i at index eps*n + i, with s r s = r^-1
  const int order = 2 * n;
  std::vector<std::uint16_t> t(static_cast<std::size_t>(order) * order);
  const auto idx = [n](int eps, int i) { return eps * n + ((i % n + n) % n); };
  for (int e1 = 0; e1 < 2; ++e1)
    for (int i = 0; i < n; ++i)
      for (int e2 = 0; e2 < 2; ++e2)
        for (int j = 0; j < n; ++j) {
          const int a = idx(e1, i), b = idx(e2, j);
          const int prod = e2 == 0 ? idx(e1, i + j) : idx(1 - e1, j - i);
          t[static_cast<std::size_t>(a) * order + b] = static_cast<std::uint16_t>(prod);
        }
  return t;
}

std::vector<std::uint16_t> quaternion8_table() {
  // index = 2*t + s for unit t in {1,i,j,k} and sign bit s
  static constexpr int unit[4][4] = {
      {0, 1, 2, 3},  // 1 * x
      {1, 0, 3, 2},  // i * x -> {i, -1, k, -j}
      {2, 3, 0, 1},  // j * x -> {j, -k, -1, i}
      {3, 2, 1, 0},  // k * x -> {k, j, -i, -1}
  };
  static constexpr int sign[4][4] = {
      {0, 0, 0, 0},
      {0, 1, 0, 1},
      {0, 1, 1, 0},
      {0, 0, 1, 1},
  };
  std::vector<std::uint16_t> t(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int t1 = a >> 1, s1 = a & 1, t2 = b >> 1, s2 = b & 1;
      const int t3 = unit[t1][t2];
      const int s3 = s1 ^ s2 ^ sign[t1][t2];
      t[static_cast<std::size_t>(a) * 8 + b] = static_cast<std::uint16_t>(t3 * 2 + s3);
    }
  return t;
}

std::vector<std::uint16_t> table_from_perms(const std::vector<Perm>& elems) {
  const int order = static_cast<int>(elems.size());
  std::unordered_map<std::uint64_t, int> index;
  index.reserve(elems.size() * 2);
  for (int i = 0; i < order; ++i) index.emplace(perm_pack(elems[i]), i);
  std::vector<std::uint16_t> t(static_cast<std::size_t>(order) * order);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      const auto it = index.find(perm_pack(perm_compose(elems[a], elems[b])));
      if (it == index.end())
        fail("bad descriptor", "permutation set is not closed under composition");
      t[static_cast<std::size_t>(a) * order + b] = static_cast<std::uint16_t>(it->second);
    }
  return t;
}

std::vector<Perm> perm_closure(int degree, const std::vector<Perm>& gens, int cap) {
  bool exceeded = false;
  std::vector<Perm> elems = detail::perm_closure_list(degree, gens, cap, &exceeded);
  if (exceeded)
    fail("group too large", "closure exceeded order cap " + std::to_string(cap));
  return elems;
}

std::string product_label(const std::vector<GroupPtr>& factors) {
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += "x";
    s += factors[i]->label();
  }
  return s;
}

}  // namespace

GroupDescriptor GroupDescriptor::cyclic(int n) {
  GroupDescriptor d;
  d.kind = Kind::cyclic;
  d.n = n;
  return d;
}
GroupDescriptor GroupDescriptor::product(std::vector<GroupDescriptor> factors) {
  GroupDescriptor d;
  d.kind = Kind::product;
  d.factors = std::move(factors);
  return d;
}
GroupDescriptor GroupDescriptor::dihedral(int n) {
  GroupDescriptor d;
  d.kind = Kind::dihedral;
  d.n = n;
  return d;
}
GroupDescriptor GroupDescriptor::quaternion8() {
  GroupDescriptor d;
  d.kind = Kind::quaternion8;
  return d;
}
GroupDescriptor GroupDescriptor::symmetric(int n) {
  GroupDescriptor d;
  d.kind = Kind::symmetric;
  d.n = n;
  return d;
}
GroupDescriptor GroupDescriptor::perm_gens(int degree,
                                           std::vector<std::vector<int>> gens) {
  GroupDescriptor d;
  d.kind = Kind::perm_gens;
  d.degree = degree;
  d.gens = std::move(gens);
  return d;
}

GroupPtr FiniteGroup::from_table(std::string label, GroupDescriptor desc,
                                 std::vector<std::uint16_t> table,
                                 const Options& opts) {
  long long n2 = static_cast<long long>(table.size());
  long long n = 0;
  while (n * n < n2) ++n;
  if (n * n != n2 || n == 0) fail("bad descriptor", "Cayley table is not square");
  if (n > opts.order_cap || n > kTableIndexCap)
    fail("group too large", "order " + std::to_string(n) + " exceeds cap " +
                                std::to_string(std::min<long long>(opts.order_cap, kTableIndexCap)));
  const TableCheck check = validate_table(table, static_cast<int>(n));
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->order_ = static_cast<int>(n);
  g->identity_ = check.identity;
  g->abelian_ = check.abelian;
  g->label_ = std::move(label);
  g->desc_ = std::move(desc);
  g->table_ = std::move(table);
  g->inverse_ = check.inverse;
  return g;
}

GroupPtr FiniteGroup::build(const GroupDescriptor& desc, const Options& opts) {
  using Kind = GroupDescriptor::Kind;
  switch (desc.kind) {
    case Kind::cyclic: {
      if (desc.n < 1) fail("bad descriptor", "cyclic modulus must be >= 1");
      if (desc.n > opts.order_cap)
        fail("group too large", "cyclic order exceeds cap");
      return from_table("Z/" + std::to_string(desc.n), desc, cyclic_table(desc.n), opts);
    }
    case Kind::product: {
      if (desc.factors.empty()) fail("bad descriptor", "product needs factors");
      std::vector<GroupPtr> parts;
      long long order = 1;
      for (const auto& f : desc.factors) {
        parts.push_back(build(f, opts));
        order = checked_mul(order, parts.back()->order(), kTableIndexCap);
        if (order > opts.order_cap || order > kTableIndexCap)
          fail("group too large", "product order exceeds cap");
      }
      const int n = static_cast<int>(order);
      // mixed-radix index, last factor fastest
      std::vector<int> radix(parts.size());
      for (std::size_t i = 0; i < parts.size(); ++i) radix[i] = parts[i]->order();
      const auto split = [&](int x, std::vector<int>& digits) {
        for (std::size_t i = parts.size(); i-- > 0;) {
          digits[i] = x % radix[i];
          x /= radix[i];
        }
      };
      std::vector<std::uint16_t> t(static_cast<std::size_t>(n) * n);
      std::vector<int> da(parts.size()), db(parts.size());
      for (int a = 0; a < n; ++a) {
        split(a, da);
        for (int b = 0; b < n; ++b) {
          split(b, db);
          int prod = 0;
          for (std::size_t i = 0; i < parts.size(); ++i)
            prod = prod * radix[i] + parts[i]->mul(da[i], db[i]);
          t[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>(prod);
        }
      }
      return from_table(product_label(parts), desc, std::move(t), opts);
    }
    case Kind::dihedral: {
      if (desc.n < 1) fail("bad descriptor", "dihedral parameter must be >= 1");
      if (2LL * desc.n > opts.order_cap)
        fail("group too large", "dihedral order exceeds cap");
      return from_table("D" + std::to_string(desc.n), desc, dihedral_table(desc.n), opts);
    }
    case Kind::quaternion8:
      return from_table("Q8", desc, quaternion8_table(), opts);
    case Kind::symmetric: {
      if (desc.n < 1 || desc.n > 7)
        fail("bad descriptor", "symmetric degree must be in 1..7");
      std::vector<Perm> elems = detail::perm_all(desc.n);
      if (static_cast<int>(elems.size()) > opts.order_cap)
        fail("group too large", "factorial order exceeds cap");
      return from_table("S" + std::to_string(desc.n), desc, table_from_perms(elems), opts);
    }
    case Kind::perm_gens: {
      if (desc.degree < 1 || desc.degree > 16)
        fail("bad descriptor", "permutation degree must be in 1..16");
      std::vector<Perm> gens;
      for (const auto& img : desc.gens) {
        if (static_cast<int>(img.size()) != desc.degree)
          fail("bad descriptor", "generator image length mismatch");
        Perm p(desc.degree);
        std::vector<char> hit(desc.degree, 0);
        for (int i = 0; i < desc.degree; ++i) {
          const int v = img[i] - 1;  // images are 1-based
          if (v < 0 || v >= desc.degree || hit[v])
            fail("bad descriptor", "generator is not a permutation");
          hit[v] = 1;
          p[i] = static_cast<std::uint8_t>(v);
        }
        gens.push_back(std::move(p));
      }
      std::vector<Perm> elems =
          perm_closure(desc.degree, gens, std::min(opts.order_cap, kTableIndexCap));
      std::string label = "perm(deg=" + std::to_string(desc.degree) +
                          ",order=" + std::to_string(elems.size()) + ")";
      return from_table(std::move(label), desc, table_from_perms(elems), opts);
    }
    case Kind::subgroup: {
      if (desc.factors.size() != 1)
        fail("bad descriptor", "subgroup descriptor needs one parent");
      fail("bad descriptor",
           "subgroup descriptors are built via subgroup_as_group");
    }
    case Kind::derived:
      fail("bad descriptor", "derived groups cannot be built from a descriptor");
  }
  fail("bad descriptor", "unknown kind " + kind_name(desc.kind));
}

int FiniteGroup::element_order(int a) const {
  int x = a;
  int k = 1;
  while (x != identity_) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

int FiniteGroup::exponent() const {
  long long l = 1;
  for (int a = 0; a < order_; ++a) {
    const long long o = element_order(a);
    l = std::lcm(l, o);
  }
  return static_cast<int>(l);
}

}  // namespace bohrlab
