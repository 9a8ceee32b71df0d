#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include "bohrlab/error.hpp"
#include "bohrlab/nets.hpp"

using namespace bohrlab;

namespace {

// grid size formula, computed independently
int oracle_grid_m(double eps) {
  const double e = std::min(eps, 2.0);
  return static_cast<int>(std::ceil(std::numbers::pi / std::asin(e / 2.0)));
}

CMatrix circle_point(double theta) {
  CMatrix m(1, 1);
  m(0, 0) = std::polar(1.0, theta);
  return m;
}

double nearest_net_distance(const EpsNet& net, const CMatrix& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& q : net.points)
    best = std::min(best, unitary_distance(p, q.matrix()));
  return best;
}

}  // namespace

TEST_CASE("torus net matches the grid formula", "[nets]") {
  for (double eps : {1.0, 0.5, 0.1, 0.05, 0.01}) {
    const EpsNet net = torus_net(1, eps);
    const int m = oracle_grid_m(eps);
    REQUIRE(net.grid_m == m);
    REQUIRE(static_cast<int>(net.points.size()) == m);
    REQUIRE(net.certified_radius < eps);
    REQUIRE_THAT(net.certified_radius,
                 Catch::Matchers::WithinAbs(
                     2.0 * std::sin(std::numbers::pi / (2.0 * m)), 1e-13));
  }
}

TEST_CASE("torus net covers sampled circle points", "[nets]") {
  const EpsNet net = torus_net(1, 0.3);
  for (int k = 0; k < 5000; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / 5000.0;
    REQUIRE(nearest_net_distance(net, circle_point(theta)) <=
            net.certified_radius + 1e-12);
  }
}

TEST_CASE("torus net in dimension two", "[nets]") {
  const EpsNet net = torus_net(2, 0.8);
  const int m = oracle_grid_m(0.8);
  REQUIRE(static_cast<int>(net.points.size()) == m * m);
  REQUIRE(net.dim == 2);
  for (const auto& p : net.points) {
    REQUIRE(std::abs(p.matrix()(0, 1)) == 0.0);
    REQUIRE(std::abs(p.matrix()(1, 0)) == 0.0);
  }
  // worst case: both coordinates halfway between grid points
  CMatrix worst = CMatrix::Zero(2, 2);
  worst(0, 0) = std::polar(1.0, std::numbers::pi / m);
  worst(1, 1) = std::polar(1.0, std::numbers::pi / m);
  REQUIRE(nearest_net_distance(net, worst) <= net.certified_radius + 1e-12);
}

TEST_CASE("huge torus demand is refused", "[nets]") {
  bool threw = false;
  try {
    torus_net(3, 1e-4);
  } catch (const Error& e) {
    threw = true;
    REQUIRE(std::string(e.name()) == "net too large");
  }
  REQUIRE(threw);
}

TEST_CASE("su2 net is certified on a fresh sample", "[nets]") {
  const EpsNet net = su2_net(0.8, 11);
  REQUIRE(net.certified_radius < 0.8);
  REQUIRE(net.sample_count > 0);

  std::mt19937_64 rng(987123);
  std::normal_distribution<double> gauss;
  for (int k = 0; k < 2000; ++k) {
    Quat q{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
    const double norm = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
    q.w /= norm;
    q.x /= norm;
    q.y /= norm;
    q.z /= norm;
    // the estimate may miss rare directions; allow modest slack
    REQUIRE(nearest_net_distance(net, quat_to_su2(q)) <=
            net.certified_radius * 1.15 + 1e-9);
  }
}

TEST_CASE("su2 net is deterministic in the seed", "[nets]") {
  const EpsNet a = su2_net(0.9, 5);
  const EpsNet b = su2_net(0.9, 5);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i)
    REQUIRE(unitary_distance(a.points[i].matrix(), b.points[i].matrix()) == 0.0);
  REQUIRE(a.certified_radius == b.certified_radius);
}

TEST_CASE("diameter-sized radius gives a singleton su2 net", "[nets]") {
  const EpsNet net = su2_net(2.0, 3);
  REQUIRE(net.points.size() == 1);
}

TEST_CASE("finite image net is exact", "[nets]") {
  std::vector<CMatrix> pts;
  for (int k = 0; k < 16; ++k)
    pts.push_back(circle_point(2.0 * std::numbers::pi * k / 16.0));
  const EpsNet net = finite_image_net(pts, 0.5);
  REQUIRE(net.certified_radius < 0.5);
  for (const auto& p : pts)
    REQUIRE(nearest_net_distance(net, p) <= net.certified_radius + 1e-13);
  REQUIRE(net.points.size() <= pts.size());
}

TEST_CASE("root of unity distance", "[nets]") {
  REQUIRE(root_unity_distance(1) == 0.0);
  REQUIRE_THAT(root_unity_distance(2), Catch::Matchers::WithinAbs(2.0, 1e-14));
  REQUIRE_THAT(root_unity_distance(4),
               Catch::Matchers::WithinAbs(std::sqrt(2.0), 1e-14));
  for (int r = 2; r <= 12; ++r) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi / r);
    REQUIRE_THAT(root_unity_distance(r),
                 Catch::Matchers::WithinAbs(std::abs(z - 1.0), 1e-13));
  }
}

TEST_CASE("quaternion embedding respects products and distance", "[nets]") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss;
  const auto draw = [&] {
    Quat q{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
    const double n = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
    return Quat{q.w / n, q.x / n, q.y / n, q.z / n};
  };
  for (int rep = 0; rep < 20; ++rep) {
    const Quat a = draw();
    const Quat b = draw();
    REQUIRE_THAT(su2_distance(a, b),
                 Catch::Matchers::WithinAbs(
                     unitary_distance(quat_to_su2(a), quat_to_su2(b)), 1e-12));
    const CMatrix prod = quat_to_su2(a) * quat_to_su2(b);
    REQUIRE(unitary_distance(quat_to_su2(quat_mul(a, b)), prod) < 1e-12);
    const Quat back = su2_to_quat(quat_to_su2(a));
    REQUIRE(su2_distance(back, a) < 1e-12);
  }
}
