#include "bohrlab/approx_hom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bohrlab/error.hpp"

namespace bohrlab {
namespace {

bool exactly_diagonal(const CMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != Complex(0.0, 0.0)) return false;
  return true;
}

double diag_distance(const CMatrix& a, const CMatrix& b) {
  double d = 0.0;
  for (int i = 0; i < a.rows(); ++i) d = std::max(d, std::abs(a(i, i) - b(i, i)));
  return d;
}

// d(f(xy), f(x)f(y)) without forming the product matrix in the diagonal case
double pair_defect(const GroupMap& f, int x, int y) {
  const auto& g = *f.group();
  const CMatrix& fxy = f.image(g.mul(x, y));
  const CMatrix& fx = f.image(x);
  const CMatrix& fy = f.image(y);
  if (f.diagonal()) {
    double d = 0.0;
    for (int i = 0; i < fx.rows(); ++i)
      d = std::max(d, std::abs(fxy(i, i) - fx(i, i) * fy(i, i)));
    return d;
  }
  return unitary_distance(fxy, fx * fy);
}

}  // namespace

GroupMap::GroupMap(GroupPtr group, std::vector<CMatrix> images, double u_tol)
    : group_(std::move(group)), images_(std::move(images)) {
  if (!group_) fail("bad descriptor", "map needs a group");
  if (static_cast<int>(images_.size()) != group_->order())
    fail("bad descriptor", "map needs one image per group element");
  dim_ = static_cast<int>(images_[0].rows());
  if (dim_ < 1) fail("invalid matrix", "images must be non-empty");
  diagonal_ = true;
  for (const auto& m : images_) {
    if (m.rows() != dim_ || m.cols() != dim_)
      fail("invalid matrix", "image dimensions differ");
    const double err = unitarity_error(m);
    if (err > u_tol)
      fail("invalid matrix",
           "image not unitary within tolerance (error " + std::to_string(err) + ")");
    if (diagonal_ && !exactly_diagonal(m)) diagonal_ = false;
  }
}

DefectReport defect(const GroupMap& f) {
  const int n = f.group()->order();
  DefectReport out;
  out.defect = 0.0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const double d = pair_defect(f, x, y);
      if (d > out.defect) {
        out.defect = d;
        out.witness = {x, y};
      }
    }
  return out;
}

double sup_distance(const GroupMap& f, const GroupMap& h) {
  if (!same_group(f.group(), h.group()))
    fail("group mismatch", "maps live on different groups");
  if (f.dim() != h.dim()) fail("invalid matrix", "map dimensions differ");
  double d = 0.0;
  const bool fast = f.diagonal() && h.diagonal();
  for (int g = 0; g < f.group()->order(); ++g)
    d = std::max(d, fast ? diag_distance(f.image(g), h.image(g))
                         : unitary_distance(f.image(g), h.image(g)));
  return d;
}

GroupMap restrict_map(const GroupMap& f, const GroupPtr& sub,
                      const std::vector<int>& embedding) {
  if (static_cast<int>(embedding.size()) != sub->order())
    fail("bad descriptor", "embedding size mismatch");
  std::vector<CMatrix> images;
  images.reserve(embedding.size());
  for (int parent : embedding) images.push_back(f.image(parent));
  return GroupMap(sub, std::move(images));
}

DiscretizeResult discretize(const GroupMap& hom, const EpsNet& net,
                            double hom_tol) {
  const DefectReport input_defect = defect(hom);
  if (input_defect.defect > hom_tol)
    fail("input not a homomorphism",
         "defect " + std::to_string(input_defect.defect) + " exceeds " +
             std::to_string(hom_tol));
  if (net.points.empty()) fail("bad descriptor", "net has no points");
  if (static_cast<int>(net.points[0].matrix().rows()) != hom.dim())
    fail("invalid matrix", "net dimension does not match the map");

  const int n = hom.group()->order();
  std::vector<CMatrix> snapped;
  snapped.reserve(n);
  double sup = 0.0;
  for (int g = 0; g < n; ++g) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < net.points.size(); ++i) {
      const double d = unitary_distance(hom.image(g), net.points[i].matrix());
      if (d < best_d) {  // strict keeps the lowest index on ties
        best_d = d;
        best = static_cast<int>(i);
      }
    }
    snapped.push_back(net.points[best].matrix());
    sup = std::max(sup, best_d);
  }

  DiscretizeResult out{GroupMap(hom.group(), std::move(snapped)), sup, {}};
  require(out.sup_distance <= net.radius, "snap distance exceeded the net radius");
  out.defect_report = defect(out.map);
  require(out.defect_report.defect <= 3.0 * net.radius + 1e-12,
          "snapped defect exceeded 3x the net radius");
  return out;
}

CorrectionResult correct_homomorphism(const GroupMap& f,
                                      const CorrectionOptions& opts) {
  const DefectReport d0 = defect(f);
  if (d0.defect >= opts.defect_cap)
    fail("defect too large", "input defect " + std::to_string(d0.defect) +
                                 " is not below the cap " +
                                 std::to_string(opts.defect_cap));

  const auto& g = *f.group();
  const int n = g.order();
  const double inv_n = 1.0 / n;

  GroupMap tau = f;
  double current = d0.defect;
  int iters = 0;
  while (current > opts.hom_tol && iters < opts.max_iters) {
    std::vector<CMatrix> adj;
    adj.reserve(n);
    for (int a = 0; a < n; ++a) adj.push_back(tau.image(a).adjoint());
    std::vector<CMatrix> next;
    next.reserve(n);
    for (int x = 0; x < n; ++x) {
      CMatrix s = CMatrix::Zero(f.dim(), f.dim());
      for (int a = 0; a < n; ++a) s += tau.image(g.mul(x, a)) * adj[a];
      s *= inv_n;
      try {
        next.push_back(polar_unitary_part(s).matrix());
      } catch (const Error& e) {
        fail("averaging degenerate", e.what());
      }
    }
    tau = GroupMap(f.group(), std::move(next));
    current = defect(tau).defect;
    ++iters;
  }
  if (current > opts.hom_tol)
    fail("correction did not converge",
         "defect " + std::to_string(current) + " after " +
             std::to_string(iters) + " iterations");

  CorrectionResult out{std::move(tau), iters, d0.defect, current, 0.0};
  out.sup_distance = sup_distance(f, out.corrected);
  require(out.sup_distance <= 2.0 * d0.defect + opts.hom_tol,
          "corrected map drifted beyond twice the input defect");
  return out;
}

}  // namespace bohrlab
