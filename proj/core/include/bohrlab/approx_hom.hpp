#pragma once

#include <utility>
#include <vector>

#include "bohrlab/group.hpp"
#include "bohrlab/nets.hpp"
#include "bohrlab/subset.hpp"
#include "bohrlab/unitary.hpp"

namespace bohrlab {

// Total map G -> U(n) with one image per element, certified unitary at
// construction. Diagonal families are detected and get O(n) distance
// arithmetic (the operator norm of a diagonal difference is the sup over
// entries, so results are identical).
class GroupMap {
 public:
  GroupMap(GroupPtr group, std::vector<CMatrix> images,
           double u_tol = Tolerances{}.unitary);

  const GroupPtr& group() const { return group_; }
  int dim() const { return dim_; }
  bool diagonal() const { return diagonal_; }
  const CMatrix& image(int g) const { return images_[g]; }
  const std::vector<CMatrix>& images() const { return images_; }

 private:
  GroupPtr group_;
  int dim_ = 0;
  bool diagonal_ = false;
  std::vector<CMatrix> images_;
};

struct DefectReport {
  double defect = 0.0;
  std::pair<int, int> witness{0, 0};  // first maximizing pair in lex order
};

// max over all |G|^2 pairs of d(f(xy), f(x) f(y)).
DefectReport defect(const GroupMap& f);

// Distance between two maps on the same group: sup_g d(f(g), h(g)).
double sup_distance(const GroupMap& f, const GroupMap& h);

// Restriction of f to a subgroup materialized by subgroup_as_group.
GroupMap restrict_map(const GroupMap& f, const GroupPtr& sub,
                      const std::vector<int>& embedding);

struct DiscretizeResult {
  GroupMap map;
  double sup_distance = 0.0;   // max snap distance, <= net radius
  DefectReport defect_report;  // defect of the snapped map, <= 3 * radius
};

// Snaps an exact homomorphism to the nearest net point per element (ties
// break to the lowest net index). Input must have defect <= hom_tol.
DiscretizeResult discretize(const GroupMap& hom, const EpsNet& net,
                            double hom_tol = Tolerances{}.hom);

struct CorrectionOptions {
  int max_iters = 60;
  double hom_tol = Tolerances{}.hom;
  // precondition cap on the input defect; the classical guarantee needs
  // 1/200, larger values are accepted at the caller's risk
  double defect_cap = kDefaultCorrectionCap;
};

struct CorrectionResult {
  GroupMap corrected;
  int iterations = 0;
  double input_defect = 0.0;
  double final_defect = 0.0;
  double sup_distance = 0.0;  // sup_g d(input(g), corrected(g))
};

// Iterates tau <- polar(avg_g tau(xg) tau(g)^H) until the defect falls below
// hom_tol, then asserts the corrected map stays within 2*defect(input) +
// hom_tol of the input.
CorrectionResult correct_homomorphism(const GroupMap& f,
                                      const CorrectionOptions& opts = {});

}  // namespace bohrlab
