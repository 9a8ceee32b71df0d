#include "bohrlab/reps.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <utility>

#include "bohrlab/error.hpp"
#include "bohrlab/rng.hpp"
#include "perm_util.hpp"

namespace bohrlab {
namespace {

// Small standalone Cayley table with the identity pinned at index 0, used for
// the quotient towers inside the abelian decomposition.
struct LocalTab {
  int n = 0;
  std::vector<int> mul;

  int at(int a, int b) const { return mul[static_cast<std::size_t>(a) * n + b]; }
};

int local_order(const LocalTab& t, int x) {
  int k = 1;
  for (int y = x; y != 0; y = t.at(y, x)) ++k;
  return k;
}

// Basis of a finite abelian p-group: picks an element of maximal order,
// recurses on the quotient by it and lifts the quotient basis back. A lift z
// of a quotient element of order m satisfies z^m = x^t with m | t (because
// ord(x) is maximal), so y = z x^{-t/m} has order exactly m.
std::vector<std::pair<int, int>> p_basis(const LocalTab& t) {
  if (t.n == 1) return {};

  int x = 0, max_ord = 1;
  for (int e = 0; e < t.n; ++e) {
    const int o = local_order(t, e);
    if (o > max_ord) {
      max_ord = o;
      x = e;
    }
  }
  const int big = max_ord;

  std::vector<int> pow(big);
  std::vector<int> in_x(t.n, -1);
  pow[0] = 0;
  in_x[0] = 0;
  for (int k = 1; k < big; ++k) {
    pow[k] = t.at(pow[k - 1], x);
    in_x[pow[k]] = k;
  }

  std::vector<int> coset_of(t.n, -1);
  std::vector<int> reps;
  for (int e = 0; e < t.n; ++e) {
    if (coset_of[e] != -1) continue;
    const int id = static_cast<int>(reps.size());
    reps.push_back(e);
    int y = e;
    do {
      coset_of[y] = id;
      y = t.at(y, x);
    } while (y != e);
  }

  LocalTab q;
  q.n = static_cast<int>(reps.size());
  q.mul.resize(static_cast<std::size_t>(q.n) * q.n);
  for (int a = 0; a < q.n; ++a)
    for (int b = 0; b < q.n; ++b)
      q.mul[static_cast<std::size_t>(a) * q.n + b] = coset_of[t.at(reps[a], reps[b])];

  std::vector<std::pair<int, int>> basis{{x, big}};
  for (const auto& [qe, m] : p_basis(q)) {
    const int z = reps[qe];
    int zm = 0;
    for (int k = 0; k < m; ++k) zm = t.at(zm, z);
    const int shift = in_x[zm];
    require(shift >= 0 && shift % m == 0, "abelian basis lift failed");
    const int s = (shift / m) % big;
    basis.emplace_back(t.at(z, pow[(big - s) % big]), m);
  }
  return basis;
}

std::vector<int> prime_factors(int n) {
  std::vector<int> ps;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

bool is_power_of(int v, int p) {
  while (v % p == 0) v /= p;
  return v == 1;
}

CMatrix scalar1(Complex z) {
  CMatrix m(1, 1);
  m(0, 0) = z;
  return m;
}

Eigen::MatrixXd helmert_basis(int n) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n - 1);
  for (int k = 1; k < n; ++k) {
    const double s = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int r = 0; r < k; ++r) b(r, k - 1) = s;
    b(k, k - 1) = -k * s;
  }
  return b;
}

// trivial / sign / deleted-permutation images for an explicit permutation list
std::vector<Representation> perm_list_reps(const GroupPtr& group,
                                           const std::vector<detail::Perm>& elems,
                                           bool include_sign) {
  const int order = group->order();
  const int deg = static_cast<int>(elems[0].size());
  std::vector<Representation> out;

  std::vector<CMatrix> triv(order, scalar1(1.0));
  out.push_back(make_representation("trivial", group, std::move(triv)));

  if (include_sign) {
    bool any_odd = false;
    std::vector<CMatrix> sgn(order);
    for (int g = 0; g < order; ++g) {
      const bool even = detail::perm_is_even(elems[g]);
      any_odd = any_odd || !even;
      sgn[g] = scalar1(even ? 1.0 : -1.0);
    }
    if (any_odd) out.push_back(make_representation("sign", group, std::move(sgn)));
  }

  if (deg >= 2) {
    const Eigen::MatrixXd b = helmert_basis(deg);
    std::vector<CMatrix> std_rep(order);
    for (int g = 0; g < order; ++g) {
      Eigen::MatrixXd pb(deg, deg - 1);
      for (int x = 0; x < deg; ++x) pb.row(elems[g][x]) = b.row(x);
      std_rep[g] = (b.transpose() * pb).cast<Complex>();
    }
    out.push_back(make_representation("std", group, std::move(std_rep)));
  }
  return out;
}

std::vector<Representation> dihedral_irreps(const GroupPtr& group) {
  const int n = group->descriptor().n;  // order 2n, element (eps,i) at eps*n+i
  const int order = 2 * n;
  std::vector<Representation> out;

  const auto add_char = [&](const std::string& name, int a, int b) {
    std::vector<CMatrix> im(order);
    for (int eps = 0; eps < 2; ++eps)
      for (int i = 0; i < n; ++i) {
        double v = (i % 2 && a < 0) ? -1.0 : 1.0;
        if (eps && b < 0) v = -v;
        im[eps * n + i] = scalar1(v);
      }
    out.push_back(make_representation(name, group, std::move(im)));
  };

  add_char("chi0", 1, 1);
  add_char("chi1", 1, -1);
  if (n % 2 == 0) {
    add_char("chi2", -1, 1);
    add_char("chi3", -1, -1);
  }

  const int two_dim = (n % 2) ? (n - 1) / 2 : n / 2 - 1;
  for (int h = 1; h <= two_dim; ++h) {
    std::vector<CMatrix> im(order);
    for (int i = 0; i < n; ++i) {
      const double th = 2.0 * std::numbers::pi * h * i / n;
      const Complex w = std::polar(1.0, th);
      CMatrix rot = CMatrix::Zero(2, 2);
      rot(0, 0) = w;
      rot(1, 1) = std::conj(w);
      im[i] = rot;
      CMatrix ref = CMatrix::Zero(2, 2);
      ref(0, 1) = std::conj(w);
      ref(1, 0) = w;
      im[n + i] = ref;
    }
    out.push_back(make_representation("rho" + std::to_string(h), group, std::move(im)));
  }
  return out;
}

std::vector<Representation> quaternion8_irreps(const GroupPtr& group) {
  std::vector<Representation> out;
  const int chars[4][4] = {  // value at {1, i, j, k} for the four characters
      {1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
  for (int c = 0; c < 4; ++c) {
    std::vector<CMatrix> im(8);
    for (int t = 0; t < 4; ++t)
      for (int s = 0; s < 2; ++s) im[2 * t + s] = scalar1(chars[c][t]);
    out.push_back(make_representation("chi" + std::to_string(c), group, std::move(im)));
  }

  const Complex one(1, 0), im_i(0, 1);
  std::vector<CMatrix> base(4, CMatrix::Zero(2, 2));
  base[0] << one, 0, 0, one;
  base[1] << im_i, 0, 0, -im_i;
  base[2] << 0, one, -one, 0;
  base[3] << 0, im_i, im_i, 0;
  std::vector<CMatrix> im(8);
  for (int t = 0; t < 4; ++t) {
    im[2 * t] = base[t];
    im[2 * t + 1] = -base[t];
  }
  out.push_back(make_representation("rho1", group, std::move(im)));
  return out;
}

}  // namespace

Representation make_representation(std::string name, GroupPtr group,
                                   std::vector<CMatrix> images, double hom_tol) {
  GroupMap map(std::move(group), std::move(images));
  const DefectReport d = defect(map);
  if (d.defect > hom_tol)
    fail("input not a homomorphism",
         name + " has defect " + std::to_string(d.defect));
  return Representation{std::move(name), std::move(map)};
}

CyclicDecomposition cyclic_decomposition(const GroupPtr& group) {
  if (!group->abelian())
    fail("group not abelian", group->label() + " admits no cyclic decomposition");
  const int n = group->order();
  const int e = group->identity();

  CyclicDecomposition dec;
  dec.group = group;

  for (const int p : prime_factors(n)) {
    std::vector<int> locals{e};
    for (int g = 0; g < n; ++g)
      if (g != e && is_power_of(group->element_order(g), p)) locals.push_back(g);

    LocalTab t;
    t.n = static_cast<int>(locals.size());
    t.mul.resize(static_cast<std::size_t>(t.n) * t.n);
    std::vector<int> to_local(n, -1);
    for (int i = 0; i < t.n; ++i) to_local[locals[i]] = i;
    for (int a = 0; a < t.n; ++a)
      for (int b = 0; b < t.n; ++b) {
        const int prod = to_local[group->mul(locals[a], locals[b])];
        require(prod >= 0, "p-torsion subset not closed");
        t.mul[static_cast<std::size_t>(a) * t.n + b] = prod;
      }

    for (const auto& [loc, ord] : p_basis(t)) {
      dec.basis.push_back(locals[loc]);
      dec.orders.push_back(ord);
    }
  }

  const int f = static_cast<int>(dec.basis.size());

  // exhaustive verification: the product map over exponent tuples is a
  // bijection onto G (last factor fastest)
  dec.digits.assign(n, {});
  std::vector<int> digit(f, 0);
  long long total = 1;
  for (const int o : dec.orders) total *= o;
  require(total == n, "cyclic factor orders do not multiply to |G|");
  std::vector<std::vector<int>> pow_tab(f);
  for (int i = 0; i < f; ++i) {
    pow_tab[i].resize(dec.orders[i]);
    pow_tab[i][0] = e;
    for (int d = 1; d < dec.orders[i]; ++d)
      pow_tab[i][d] = group->mul(pow_tab[i][d - 1], dec.basis[i]);
  }
  std::vector<char> hit(n, 0);
  for (int k = 0; k < n; ++k) {
    int rem = k, elem = e;
    for (int i = f - 1; i >= 0; --i) {
      digit[i] = rem % dec.orders[i];
      rem /= dec.orders[i];
    }
    for (int i = 0; i < f; ++i) elem = group->mul(elem, pow_tab[i][digit[i]]);
    require(!hit[elem], "cyclic decomposition is not a direct sum");
    hit[elem] = 1;
    dec.digits[elem] = digit;
  }
  return dec;
}

std::vector<Representation> characters_abelian(const GroupPtr& group) {
  const CyclicDecomposition dec = cyclic_decomposition(group);
  const int n = group->order();
  const int f = static_cast<int>(dec.orders.size());

  std::vector<Representation> out;
  out.reserve(n);
  std::vector<int> kd(f, 0);
  for (int k = 0; k < n; ++k) {
    int rem = k;
    for (int i = f - 1; i >= 0; --i) {
      kd[i] = rem % dec.orders[i];
      rem /= dec.orders[i];
    }
    std::vector<CMatrix> im(n);
    for (int g = 0; g < n; ++g) {
      double frac = 0.0;
      for (int i = 0; i < f; ++i) {
        const long long prod =
            static_cast<long long>(kd[i]) * dec.digits[g][i] % dec.orders[i];
        frac += static_cast<double>(prod) / dec.orders[i];
      }
      im[g] = scalar1(std::polar(1.0, 2.0 * std::numbers::pi * frac));
    }
    out.push_back(make_representation("chi" + std::to_string(k), group, std::move(im)));
  }
  return out;
}

std::vector<Representation> catalog_irreps(const GroupPtr& group) {
  if (group->abelian()) return characters_abelian(group);

  const GroupDescriptor& d = group->descriptor();
  switch (d.kind) {
    case GroupDescriptor::Kind::dihedral:
      return dihedral_irreps(group);
    case GroupDescriptor::Kind::quaternion8:
      return quaternion8_irreps(group);
    case GroupDescriptor::Kind::symmetric:
      return perm_list_reps(group, detail::perm_all(d.n), true);
    case GroupDescriptor::Kind::perm_gens: {
      std::vector<detail::Perm> gens;
      for (const auto& g : d.gens) {
        detail::Perm p(d.degree);
        for (int i = 0; i < d.degree; ++i) p[i] = static_cast<std::uint8_t>(g[i] - 1);
        gens.push_back(std::move(p));
      }
      bool exceeded = false;
      std::vector<detail::Perm> elems =
          detail::perm_closure_list(d.degree, gens, group->order(), &exceeded);
      require(!exceeded && static_cast<int>(elems.size()) == group->order(),
              "generator closure does not reproduce the group");
      return perm_list_reps(group, elems, true);
    }
    default:
      fail("no catalog entry",
           "no built-in irreducibles for " + group->label());
  }
}

DegreeMultiset regular_rep_degrees(const GroupPtr& group, std::uint64_t seed) {
  const int n = group->order();
  if (n > 360)
    fail("group too large", "degree extraction is capped at order 360, got " +
                                std::to_string(n));

  std::string last_err = "no attempt succeeded";
  for (int attempt = 0; attempt < 5; ++attempt) {
    Rng rng(seed + static_cast<std::uint64_t>(attempt));
    CMatrix a(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        a(r, c) = Complex(rng.next_gaussian(), rng.next_gaussian());
    const CMatrix h = a + a.adjoint();

    // average over the left regular action: the result commutes with it, so
    // it is block scalar across each isotypic component
    CMatrix p = CMatrix::Zero(n, n);
    for (int g = 0; g < n; ++g) {
      const int gi = group->inv(g);
      for (int r = 0; r < n; ++r) {
        const int rr = group->mul(gi, r);
        for (int c = 0; c < n; ++c) p(r, c) += h(rr, group->mul(gi, c));
      }
    }
    p = ((p + p.adjoint()) / (2.0 * n)).eval();

    Eigen::SelfAdjointEigenSolver<CMatrix> es(p, Eigen::EigenvaluesOnly);
    Eigen::VectorXd ev = es.eigenvalues();
    std::sort(ev.data(), ev.data() + n);
    const double scale =
        std::max(1.0, std::max(std::abs(ev(0)), std::abs(ev(n - 1))));
    const double split = 1e-8 * scale;

    std::vector<std::pair<double, double>> clusters;  // (lo, hi)
    std::vector<int> sizes;
    for (int i = 0; i < n; ++i) {
      if (i == 0 || ev(i) - ev(i - 1) > split) {
        clusters.emplace_back(ev(i), ev(i));
        sizes.push_back(1);
      } else {
        clusters.back().second = ev(i);
        ++sizes.back();
      }
    }

    bool clean = true;
    for (std::size_t i = 0; i < clusters.size() && clean; ++i) {
      if (clusters[i].second - clusters[i].first > 1e-9 * scale) clean = false;
      if (i && clusters[i].first - clusters[i - 1].second < 1e-5 * scale)
        clean = false;
    }
    if (!clean) {
      last_err = "eigenvalue clusters not separated";
      continue;
    }

    std::map<int, int> by_mult;
    for (const int s : sizes) ++by_mult[s];
    DegreeMultiset out;
    bool ok = true;
    for (const auto& [deg, cnt] : by_mult) {
      if (cnt % deg != 0) {
        ok = false;
        break;
      }
      out.counts.emplace_back(deg, cnt / deg);
      out.sum_of_squares += (cnt / deg) * deg * deg;
    }
    if (!ok || out.sum_of_squares != n) {
      last_err = "cluster multiplicities inconsistent";
      continue;
    }
    if (group->abelian() &&
        (out.counts.size() != 1 || out.counts[0] != std::make_pair(1, n))) {
      last_err = "abelian group produced a degree above 1";
      continue;
    }
    return out;
  }
  fail("degree extraction failed", group->label() + ": " + last_err);
}

int min_nontrivial_dim(const GroupPtr& group, std::uint64_t seed) {
  const int n = group->order();
  if (n < 2)
    fail("bad descriptor", "trivial group has no nontrivial components");

  // the averaging projector must have rank one (left translation is
  // transitive, so only the identity fixes anything)
  long long fixed = 0;
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (group->mul(g, h) == h) ++fixed;
  require(fixed == n, "trivial component has multiplicity above one");

  const DegreeMultiset degs = regular_rep_degrees(group, seed);
  int ones = 0;
  for (const auto& [deg, cnt] : degs.counts)
    if (deg == 1) ones = cnt;
  require(ones >= 1, "trivial character missing from degree multiset");
  if (ones >= 2) return 1;
  for (const auto& [deg, cnt] : degs.counts)
    if (deg > 1) return deg;
  fail("degree extraction failed", group->label() + ": no nontrivial degree");
}

}  // namespace bohrlab
