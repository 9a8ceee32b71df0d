#include "bohrlab/bohr.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "bohrlab/error.hpp"

namespace bohrlab {
namespace {

std::string fmt(double v) { return std::to_string(v); }

}  // namespace

BohrSet bohr_set(const GroupMap& hom, double delta, double hom_tol,
                 double collar) {
  if (delta <= 0.0) fail("hypothesis violated", "delta must be positive");
  const DefectReport d = defect(hom);
  if (d.defect > hom_tol)
    fail("input not a homomorphism",
         "defect " + fmt(d.defect) + " exceeds " + fmt(hom_tol));

  const GroupPtr& g = hom.group();
  const int n = g->order();
  const CMatrix eye = CMatrix::Identity(hom.dim(), hom.dim());

  std::vector<double> dist(n);
  std::vector<int> members, boundary;
  for (int x = 0; x < n; ++x) {
    dist[x] = operator_norm(hom.image(x) - eye);
    if (dist[x] < delta) members.push_back(x);
    if (std::abs(dist[x] - delta) <= collar) boundary.push_back(x);
  }
  return BohrSet{hom, delta, Subset(g, std::move(members)), std::move(dist),
                 std::move(boundary)};
}

BohrBasicReport verify_bohr_basic(const BohrSet& b) {
  const GroupPtr& g = b.hom.group();
  const int n = g->order();
  BohrBasicReport r;

  r.symmetric = true;
  for (const int x : b.members.members())
    if (!b.members.contains(g->inv(x))) r.symmetric = false;
  if (!r.symmetric) fail("bohr property failed", "B != B^-1");

  r.has_identity = b.members.contains(g->identity());
  if (!r.has_identity) fail("bohr property failed", "identity not in B");

  r.conj_invariant = true;
  for (int x = 0; x < n && r.conj_invariant; ++x)
    for (const int m : b.members.members())
      if (!b.members.contains(g->conj(x, m))) {
        r.conj_invariant = false;
        break;
      }
  if (!r.conj_invariant) fail("bohr property failed", "B not conjugation invariant");

  // exact homomorphisms give d(tau(ab), I) < 2*delta; the hom_tol slack
  // absorbs the certified defect of the stored map
  const double cap = 2.0 * b.delta + Tolerances{}.hom;
  r.doubling = true;
  const Subset sq = product_set(b.members, b.members);
  for (const int x : sq.members())
    if (b.distances[x] >= cap) {
      r.doubling = false;
      break;
    }
  if (!r.doubling) fail("bohr property failed", "B*B leaves the 2*delta set");
  return r;
}

CoverResult genericity_cover(const BohrSet& b, const EpsNet& net) {
  const GroupPtr& g = b.hom.group();
  const int n = g->order();
  if (net.points.empty() ||
      static_cast<const CMatrix&>(net.points[0]).rows() != b.hom.dim())
    fail("invalid matrix", "net dimension does not match the map");
  if (!(net.certified_radius < b.delta / 2.0))
    fail("hypothesis violated", "net radius " + fmt(net.certified_radius) +
                                    " is not below delta/2");

  const double half = b.delta / 2.0;
  CoverResult out;
  out.net_size = static_cast<int>(net.points.size());
  for (const UnitaryMatrix& a : net.points) {
    int witness = -1;
    for (int x = 0; x < n; ++x)
      if (unitary_distance(b.hom.image(x), a) < half) {
        witness = x;
        break;
      }
    if (witness < 0)
      ++out.skipped_net_points;
    else
      out.translates.push_back(witness);
  }

  std::vector<char> covered(n, 0);
  int left = n;
  for (const int w : out.translates)
    for (const int m : b.members.members()) {
      char& c = covered[g->mul(w, m)];
      if (!c) {
        c = 1;
        --left;
      }
    }
  if (left != 0)
    fail("cover construction failed",
         std::to_string(left) + " elements uncovered by " +
             std::to_string(out.translates.size()) + " translates");
  return out;
}

GenericityBoundReport genericity_bound_check(const BohrSet& b, double c) {
  if (c <= 0.0) fail("hypothesis violated", "covering constant must be positive");
  const int n = b.hom.group()->order();
  const int dim = b.hom.dim();
  const double exponent = static_cast<double>(dim) * dim;
  // distances never exceed 2, so B(delta) = B(2) for larger delta
  const double delta_eff = std::min(b.delta, 2.0);

  GenericityBoundReport r;
  const double raw = std::pow(c / delta_eff, exponent);
  r.bound = raw >= static_cast<double>(n)
                ? n
                : std::max(1LL, static_cast<long long>(std::ceil(raw)));
  r.density = density(b.members);
  r.density_floor = std::min(1.0, std::pow(delta_eff / c, exponent));

  const auto gen = genericity(b.members, static_cast<int>(r.bound));
  if (!gen)
    fail("bound violated", "no cover with " + std::to_string(r.bound) +
                               " translates found");
  r.genericity = gen->count;
  r.exact = gen->exact;
  if (r.density < r.density_floor)
    fail("bound violated", "density " + fmt(r.density) + " below floor " +
                               fmt(r.density_floor));
  return r;
}

DiagonalizeResult diagonalize_abelian(const BohrSet& b) {
  const GroupPtr& g = b.hom.group();
  const int n = g->order();
  const int dim = b.hom.dim();

  SimDiagResult sd = simultaneous_diagonalize(b.hom.images());
  const CMatrix& w = sd.conjugator;

  double proj_err = 0.0;
  std::vector<CMatrix> diag(n);
  for (int x = 0; x < n; ++x) {
    CMatrix d = CMatrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) d(i, i) = sd.diagonals[x](i);
    proj_err = std::max(
        proj_err, operator_norm(w.adjoint() * b.hom.image(x) * w - d));
    diag[x] = std::move(d);
  }

  // the projection perturbs entries by at most proj_err, so the diagonal map
  // is certified against the looser commuting-family tolerance
  GroupMap dm(g, std::move(diag));
  BohrSet db = bohr_set(dm, b.delta, Tolerances{}.commute);
  if (!(db.members == b.members))
    fail("collapse failed", "membership changed under diagonalization");
  return DiagonalizeResult{std::move(db), std::move(sd.conjugator), proj_err};
}

namespace {

// image of the map as an abstract group: elements are matrix classes
struct ImageQuotient {
  GroupPtr image;
  std::vector<int> class_of;  // G index -> image index
};

ImageQuotient image_group(const GroupMap& hom) {
  const GroupPtr& g = hom.group();
  const int n = g->order();
  constexpr double kSame = 1e-6;

  std::vector<int> reps;
  std::vector<int> class_of(n, -1);
  for (int x = 0; x < n; ++x) {
    for (std::size_t c = 0; c < reps.size(); ++c)
      if (unitary_distance(hom.image(x), hom.image(reps[c])) < kSame) {
        class_of[x] = static_cast<int>(c);
        break;
      }
    if (class_of[x] < 0) {
      class_of[x] = static_cast<int>(reps.size());
      reps.push_back(x);
    }
  }

  const int q = static_cast<int>(reps.size());
  for (int a = 0; a < q; ++a)
    for (int c = a + 1; c < q; ++c)
      if (unitary_distance(hom.image(reps[a]), hom.image(reps[c])) < 10 * kSame)
        fail("hypothesis violated", "image classes not separated");

  if (q > 65535) fail("group too large", "image has more than 65535 classes");
  std::vector<std::uint16_t> table(static_cast<std::size_t>(q) * q);
  for (int a = 0; a < q; ++a)
    for (int c = 0; c < q; ++c)
      table[static_cast<std::size_t>(a) * q + c] =
          static_cast<std::uint16_t>(class_of[g->mul(reps[a], reps[c])]);

  GroupDescriptor desc;
  desc.kind = GroupDescriptor::Kind::derived;
  desc.n = q;
  return ImageQuotient{
      FiniteGroup::from_table(g->label() + ".im", desc, std::move(table)),
      std::move(class_of)};
}

// largest abelian subgroup, preferring normal ones among the largest
std::vector<int> best_abelian_subgroup(const GroupPtr& q) {
  const int n = q->order();
  std::vector<bool> commute(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      commute[static_cast<std::size_t>(a) * n + c] = q->mul(a, c) == q->mul(c, a);

  const auto closure = [&](const std::vector<int>& seed) {
    std::vector<int> elems = seed;
    std::vector<char> in(n, 0);
    for (const int e : elems) in[e] = 1;
    if (!in[q->identity()]) {
      elems.push_back(q->identity());
      in[q->identity()] = 1;
    }
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = 0; j < elems.size(); ++j) {
        const int p = q->mul(elems[i], elems[j]);
        if (!in[p]) {
          in[p] = 1;
          elems.push_back(p);
        }
      }
    std::sort(elems.begin(), elems.end());
    return elems;
  };

  std::map<std::vector<int>, bool> seen;  // members -> expanded
  std::vector<std::vector<int>> queue{closure({})};
  seen.emplace(queue[0], true);
  std::vector<int> best = queue[0];
  bool best_normal = true;
  constexpr int kCap = 50000;

  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const std::vector<int> cur = queue[qi];
    for (int y = 0; y < n; ++y) {
      if (std::binary_search(cur.begin(), cur.end(), y)) continue;
      bool ok = true;
      for (const int s : cur)
        if (!commute[static_cast<std::size_t>(y) * n + s]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      std::vector<int> ext = cur;
      ext.push_back(y);
      std::sort(ext.begin(), ext.end());
      std::vector<int> sub = closure(ext);
      bool abelian = true;
      for (std::size_t i = 0; i < sub.size() && abelian; ++i)
        for (std::size_t j = i + 1; j < sub.size(); ++j)
          if (!commute[static_cast<std::size_t>(sub[i]) * n + sub[j]]) {
            abelian = false;
            break;
          }
      if (!abelian) continue;
      if (!seen.emplace(sub, true).second) continue;
      if (static_cast<int>(seen.size()) > kCap)
        fail("group too large", "abelian subgroup enumeration exceeded cap");
      const bool nrm = is_normal(Subset(q, sub));
      if (sub.size() > best.size() ||
          (sub.size() == best.size() && nrm && !best_normal) ||
          (sub.size() == best.size() && nrm == best_normal && sub < best)) {
        best = sub;
        best_normal = nrm;
      }
      queue.push_back(std::move(sub));
    }
  }
  return best;
}

}  // namespace

TorsionReduceResult torsion_reduce(const BohrSet& b) {
  const GroupPtr& g = b.hom.group();
  const int n = g->order();

  ImageQuotient iq = image_group(b.hom);
  const std::vector<int> abelian_part = iq.image->abelian()
                                            ? Subset::whole(iq.image).members()
                                            : best_abelian_subgroup(iq.image);

  std::vector<char> keep(iq.image->order(), 0);
  for (const int c : abelian_part) keep[c] = 1;
  std::vector<int> h_members;
  for (int x = 0; x < n; ++x)
    if (keep[iq.class_of[x]]) h_members.push_back(x);

  Subset h(g, std::move(h_members));
  require(is_subgroup(h), "image preimage is not a subgroup");

  const int index = subgroup_index(h);
  const bool normal = is_normal(h);
  auto [sub, emb] = subgroup_as_group(h);

  GroupMap restricted = restrict_map(b.hom, sub, emb);
  BohrSet sub_bohr = bohr_set(restricted, b.delta);
  return TorsionReduceResult{iq.image,  iq.image->order(),
                             sub,       std::move(emb),
                             index,     normal,
                             diagonalize_abelian(sub_bohr)};
}

CollapseResult exponent_collapse(const BohrSet& b, double hom_tol) {
  const GroupPtr& g = b.hom.group();
  const int n = g->order();
  const int r = g->exponent();
  const double gamma = root_unity_distance(r);
  if (b.delta > gamma)
    fail("hypothesis violated", "delta " + fmt(b.delta) +
                                    " exceeds 2 sin(pi/" + std::to_string(r) +
                                    ") = " + fmt(gamma));

  std::vector<char> flagged(n, 0);
  for (const int x : b.boundary) flagged[x] = 1;

  std::vector<int> kernel_members;
  int excluded = 0;
  for (const int x : b.members.members()) {
    if (flagged[x]) {
      ++excluded;
      continue;
    }
    if (b.distances[x] > hom_tol)
      fail("collapse failed", "member " + std::to_string(x) +
                                  " at distance " + fmt(b.distances[x]) +
                                  " is neither 0 nor >= delta");
    kernel_members.push_back(x);
  }

  for (int x = 0; x < n; ++x)
    if (b.distances[x] <= hom_tol && !b.members.contains(x))
      fail("collapse failed",
           "kernel element " + std::to_string(x) + " missing from B");

  Subset kernel(g, std::move(kernel_members));
  if (!is_subgroup(kernel)) fail("collapse failed", "B is not a subgroup");
  if (!is_normal(kernel)) fail("collapse failed", "B is not normal");

  const int index = subgroup_index(kernel);
  auto [sub, emb] = subgroup_as_group(kernel);
  return CollapseResult{std::move(kernel), sub, std::move(emb), index, excluded};
}

}  // namespace bohrlab
