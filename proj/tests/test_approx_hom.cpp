#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bohrlab/approx_hom.hpp"
#include "bohrlab/error.hpp"
#include "bohrlab/group.hpp"
#include "bohrlab/nets.hpp"
#include "bohrlab/subset.hpp"

using namespace bohrlab;

namespace {

CMatrix phase(double theta) {
  CMatrix m(1, 1);
  m(0, 0) = std::polar(1.0, theta);
  return m;
}

// character x -> e^{2 pi i k x / n} on Z/n
GroupMap character_map(const GroupPtr& g, int k) {
  const int n = g->order();
  std::vector<CMatrix> images;
  for (int x = 0; x < n; ++x)
    images.push_back(phase(2.0 * std::numbers::pi * k * x / n));
  return GroupMap(g, std::move(images));
}

// pair-by-pair defect oracle written directly against the definition
double oracle_defect(const GroupMap& f) {
  double worst = 0.0;
  const auto& g = *f.group();
  for (int x = 0; x < g.order(); ++x)
    for (int y = 0; y < g.order(); ++y)
      worst = std::max(worst, operator_norm(f.image(g.mul(x, y)) -
                                            f.image(x) * f.image(y)));
  return worst;
}

}  // namespace

TEST_CASE("homomorphisms have zero defect", "[approx_hom]") {
  const GroupPtr g = build_group(GroupDescriptor::cyclic(12));
  for (int k : {0, 1, 5}) {
    const DefectReport d = defect(character_map(g, k));
    REQUIRE(d.defect < 1e-12);
  }
}

TEST_CASE("planted perturbation is measured exactly", "[approx_hom]") {
  const GroupPtr g = build_group(GroupDescriptor::cyclic(4));
  std::vector<CMatrix> images;
  for (int x = 0; x < 4; ++x)
    images.push_back(phase(std::numbers::pi * x / 2.0));
  images[1] = phase(std::numbers::pi / 2.0 + 0.1);
  const GroupMap f(g, std::move(images));

  const DefectReport d = defect(f);
  REQUIRE_THAT(d.defect, Catch::Matchers::WithinAbs(2.0 * std::sin(0.1), 1e-12));
  REQUIRE(d.witness == std::pair<int, int>{1, 1});
  REQUIRE_THAT(d.defect, Catch::Matchers::WithinAbs(oracle_defect(f), 1e-13));
}

TEST_CASE("defect agrees with the oracle on a 2-dim map", "[approx_hom]") {
  const GroupPtr g = build_group(GroupDescriptor::dihedral(3));
  std::vector<CMatrix> images;
  const double w = 2.0 * std::numbers::pi / 3.0;
  for (int i = 0; i < 3; ++i) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = std::polar(1.0, w * i);
    m(1, 1) = std::polar(1.0, -w * i);
    images.push_back(m);
  }
  for (int i = 0; i < 3; ++i) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = std::polar(1.0, -w * i);
    m(1, 0) = std::polar(1.0, w * i);
    images.push_back(m);
  }
  // nudge one reflection
  CMatrix nudge = CMatrix::Zero(2, 2);
  nudge(0, 1) = std::polar(1.0, -w + 0.05);
  nudge(1, 0) = std::polar(1.0, w - 0.05);
  images[4] = nudge;
  const GroupMap f(g, std::move(images));
  REQUIRE_THAT(defect(f).defect,
               Catch::Matchers::WithinAbs(oracle_defect(f), 1e-12));
}

TEST_CASE("sup distance and restriction", "[approx_hom]") {
  const GroupPtr g = build_group(GroupDescriptor::cyclic(8));
  const GroupMap f = character_map(g, 1);
  const GroupMap h = character_map(g, 2);
  double worst = 0.0;
  for (int x = 0; x < 8; ++x)
    worst = std::max(worst, std::abs(f.image(x)(0, 0) - h.image(x)(0, 0)));
  REQUIRE_THAT(sup_distance(f, h), Catch::Matchers::WithinAbs(worst, 1e-13));

  const Subset evens(g, {0, 2, 4, 6});
  REQUIRE(is_subgroup(evens));
  const auto [sub, emb] = subgroup_as_group(evens);
  const GroupMap fr = restrict_map(f, sub, emb);
  REQUIRE(defect(fr).defect <= defect(f).defect + 1e-15);
  for (int i = 0; i < sub->order(); ++i)
    REQUIRE(std::abs(fr.image(i)(0, 0) - f.image(emb[i])(0, 0)) == 0.0);
}

TEST_CASE("correction fixes a small perturbation", "[approx_hom]") {
  const GroupPtr g = build_group(GroupDescriptor::cyclic(12));
  std::vector<CMatrix> images;
  for (int x = 0; x < 12; ++x) {
    const double eta = 0.0012 * std::cos(7.0 * x);
    images.push_back(phase(2.0 * std::numbers::pi * x / 12.0 + eta));
  }
  const GroupMap f(g, std::move(images));
  const double d0 = defect(f).defect;
  REQUIRE(d0 > 1e-6);
  REQUIRE(d0 < kDefaultCorrectionCap);

  const CorrectionResult r = correct_homomorphism(f);
  REQUIRE(r.final_defect <= 1e-9);
  REQUIRE(r.input_defect == d0);
  REQUIRE(r.sup_distance <= 2.0 * d0 + 1e-9);

  // lands on the nearest exact character
  double best = 1e9;
  for (int k = 0; k < 12; ++k)
    best = std::min(best, sup_distance(r.corrected, character_map(g, k)));
  REQUIRE(best <= 2.0 * d0 + 1e-9);
}

TEST_CASE("correction is a fixed point on homomorphisms", "[approx_hom]") {
  const GroupPtr g = build_group(GroupDescriptor::cyclic(5));
  const GroupMap f = character_map(g, 2);
  const CorrectionResult r = correct_homomorphism(f);
  REQUIRE(r.iterations <= 1);
  REQUIRE(r.sup_distance <= 1e-9);
}

TEST_CASE("correction refuses a large defect", "[approx_hom]") {
  const GroupPtr g = build_group(GroupDescriptor::cyclic(4));
  std::vector<CMatrix> images;
  for (int x = 0; x < 4; ++x) images.push_back(phase(1.3 * x));
  const GroupMap f(g, std::move(images));
  bool threw = false;
  try {
    correct_homomorphism(f);
  } catch (const Error& e) {
    threw = true;
    REQUIRE(std::string(e.name()) == "defect too large");
  }
  REQUIRE(threw);
}

TEST_CASE("correction is deterministic", "[approx_hom]") {
  const GroupPtr g = build_group(GroupDescriptor::cyclic(6));
  std::vector<CMatrix> images;
  for (int x = 0; x < 6; ++x)
    images.push_back(phase(2.0 * std::numbers::pi * x / 6.0 + 0.0003 * x * (5 - x)));
  const GroupMap f(g, std::move(images));
  const CorrectionResult a = correct_homomorphism(f);
  const CorrectionResult b = correct_homomorphism(f);
  REQUIRE(a.iterations == b.iterations);
  for (int x = 0; x < 6; ++x) {
    const CMatrix diff = a.corrected.image(x) - b.corrected.image(x);
    REQUIRE(diff.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("discretize snaps within the net radius", "[approx_hom]") {
  const GroupPtr g = build_group(GroupDescriptor::cyclic(64));
  const GroupMap tau = character_map(g, 1);
  const EpsNet net = torus_net(1, 0.05);
  const DiscretizeResult r = discretize(tau, net);
  REQUIRE(r.sup_distance <= 0.05);
  REQUIRE(r.defect_report.defect <= 0.15 + 1e-12);
  REQUIRE_THAT(r.defect_report.defect,
               Catch::Matchers::WithinAbs(oracle_defect(r.map), 1e-12));
}

TEST_CASE("discretize is exact when the net contains the image", "[approx_hom]") {
  const GroupPtr g = build_group(GroupDescriptor::cyclic(8));
  const GroupMap tau = character_map(g, 1);
  // 8th roots of unity: the image itself
  std::vector<CMatrix> pts;
  for (int k = 0; k < 8; ++k)
    pts.push_back(phase(2.0 * std::numbers::pi * k / 8.0));
  const EpsNet net = finite_image_net(pts, 0.1);
  REQUIRE(net.points.size() == 8);
  const DiscretizeResult r = discretize(tau, net);
  REQUIRE(r.sup_distance <= 1e-12);
  REQUIRE(r.defect_report.defect <= 1e-12);
}

TEST_CASE("discretize rejects an uncertified input", "[approx_hom]") {
  const GroupPtr g = build_group(GroupDescriptor::cyclic(4));
  std::vector<CMatrix> images;
  for (int x = 0; x < 4; ++x) images.push_back(phase(1.1 * x));
  const GroupMap f(g, std::move(images));
  bool threw = false;
  try {
    discretize(f, torus_net(1, 0.5));
  } catch (const Error& e) {
    threw = true;
    REQUIRE(std::string(e.name()) == "input not a homomorphism");
  }
  REQUIRE(threw);
}

TEST_CASE("trivial net yields the constant map", "[approx_hom]") {
  const GroupPtr g = build_group(GroupDescriptor::cyclic(3));
  const GroupMap tau = character_map(g, 1);
  const EpsNet net = finite_image_net({CMatrix::Identity(1, 1)}, 2.5);
  REQUIRE(net.points.size() == 1);
  const DiscretizeResult r = discretize(tau, net);
  REQUIRE(r.defect_report.defect <= 1e-15);
  REQUIRE(r.sup_distance <= net.radius);
}
