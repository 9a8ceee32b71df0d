#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

namespace bohrlab::detail {

using Perm = std::vector<std::uint8_t>;

inline Perm perm_identity(int degree) {
  Perm p(degree);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline Perm perm_compose(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[x] = p[q[x]];
  return r;
}

inline std::uint64_t perm_pack(const Perm& p) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    key |= static_cast<std::uint64_t>(p[i]) << (4 * i);
  return key;
}

inline bool perm_is_even(const Perm& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0;
}

// all permutations of degree n in lexicographic order (identity first)
inline std::vector<Perm> perm_all(int n) {
  Perm base = perm_identity(n);
  std::vector<Perm> out;
  do {
    out.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

// BFS closure under right multiplication; returns -1 size sentinel never,
// throws nothing itself (caller checks the cap)
inline std::vector<Perm> perm_closure_list(int degree, const std::vector<Perm>& gens,
                                           int cap, bool* exceeded) {
  std::vector<Perm> elems{perm_identity(degree)};
  std::unordered_map<std::uint64_t, int> seen;
  seen.emplace(perm_pack(elems[0]), 0);
  *exceeded = false;
  for (std::size_t qi = 0; qi < elems.size(); ++qi) {
    for (const Perm& g : gens) {
      Perm y = perm_compose(elems[qi], g);
      const std::uint64_t key = perm_pack(y);
      if (seen.emplace(key, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(y));
        if (static_cast<int>(elems.size()) > cap) {
          *exceeded = true;
          return elems;
        }
      }
    }
  }
  return elems;
}

}  // namespace bohrlab::detail
