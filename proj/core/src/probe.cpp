#include "bohrlab/probe.hpp"

#include <algorithm>
#include <cmath>

#include "bohrlab/error.hpp"
#include "bohrlab/rng.hpp"

namespace bohrlab {
namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kDedupTol = 1e-6;

bool known(const std::vector<Quat>& elems, const Quat& q) {
  for (const Quat& e : elems)
    if (su2_distance(e, q) < kDedupTol) return true;
  return false;
}

// covering radius of a finite quaternion set over a fixed sample
double covering_radius(const std::vector<Quat>& elems,
                       const std::vector<Quat>& samples) {
  double worst = 0.0;
  for (const Quat& s : samples) {
    double best = 4.0;
    for (const Quat& e : elems) {
      const double dw = s.w - e.w, dx = s.x - e.x, dy = s.y - e.y, dz = s.z - e.z;
      const double d2 = dw * dw + dx * dx + dy * dy + dz * dz;
      if (d2 < best) {
        best = d2;
        // this sample can no longer raise the maximum
        if (best <= worst) break;
      }
    }
    if (best > worst) worst = best;
  }
  return std::sqrt(worst);
}

}  // namespace

std::vector<Quat> quat_cyclic(int k) {
  if (k < 1) fail("bad descriptor", "cyclic order must be >= 1");
  std::vector<Quat> out;
  out.reserve(k);
  for (int j = 0; j < k; ++j) {
    const double a = 2.0 * kPi * j / k;
    out.push_back(Quat{std::cos(a), std::sin(a), 0.0, 0.0});
  }
  return out;
}

std::vector<Quat> quat_binary_dihedral(int k) {
  if (k < 1) fail("bad descriptor", "binary dihedral parameter must be >= 1");
  std::vector<Quat> gens{Quat{std::cos(kPi / k), std::sin(kPi / k), 0.0, 0.0},
                         Quat{0.0, 0.0, 1.0, 0.0}};
  return quat_closure(gens, 4 * k);
}

std::vector<Quat> quat_closure(const std::vector<Quat>& gens, int cap) {
  std::vector<Quat> elems{Quat{}};
  for (std::size_t qi = 0; qi < elems.size(); ++qi) {
    for (const Quat& g : gens) {
      const Quat y = quat_mul(elems[qi], g);
      if (!known(elems, y)) {
        elems.push_back(y);
        if (static_cast<int>(elems.size()) > cap)
          fail("group too large", "quaternion closure exceeded cap " +
                                      std::to_string(cap));
      }
    }
  }
  return elems;
}

std::vector<Quat> quat_binary_tetrahedral() {
  const std::vector<Quat> gens{Quat{0.5, 0.5, 0.5, 0.5}, Quat{0.0, 1.0, 0.0, 0.0}};
  return quat_closure(gens, 24);
}

std::vector<Quat> quat_binary_octahedral() {
  const double r = std::sqrt(0.5);
  const std::vector<Quat> gens{Quat{0.5, 0.5, 0.5, 0.5}, Quat{r, r, 0.0, 0.0}};
  return quat_closure(gens, 48);
}

std::vector<Quat> quat_binary_icosahedral() {
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  const std::vector<Quat> gens{Quat{0.5, 0.5, 0.5, 0.5},
                               Quat{0.5 * phi, 0.5 / phi, 0.5, 0.0}};
  return quat_closure(gens, 120);
}

ProbeReport turing_probe_torus(int n, double eps) {
  EpsNet net = torus_net(n, eps);
  ProbeReport r;
  r.target = ProbeTarget::torus;
  r.epsilon = eps;
  r.torus_dim = n;
  r.grid_m = net.grid_m;
  r.net_size = static_cast<long>(net.points.size());
  r.certified_radius = net.certified_radius;
  r.sample_count = net.sample_count;
  r.seed = net.seed;
  r.net_exists = true;
  return r;
}

ProbeReport turing_probe_su2(double eps, int cap, std::uint64_t seed) {
  if (!(eps > 0.0)) fail("epsilon out of range", "epsilon must be positive");
  if (cap < 1) fail("bad descriptor", "cap must be positive");

  ProbeReport r;
  r.target = ProbeTarget::su2;
  r.epsilon = eps;
  r.cap = cap;
  r.seed = seed;
  r.sample_count = kNetSampleCount;

  Rng rng(seed);
  std::vector<Quat> samples;
  samples.reserve(r.sample_count);
  for (long i = 0; i < r.sample_count; ++i) samples.push_back(random_unit_quat(rng));

  const auto add = [&](const std::string& name, const std::vector<Quat>& elems) {
    r.subgroups.push_back(
        ProbeSubgroupStat{name, static_cast<int>(elems.size()),
                          covering_radius(elems, samples)});
  };

  for (int k = 1; k <= cap; ++k) add("cyclic-" + std::to_string(k), quat_cyclic(k));
  for (int k = 1; 4 * k <= cap; ++k)
    add("binary-dihedral-" + std::to_string(4 * k), quat_binary_dihedral(k));

  struct Exceptional {
    const char* name;
    int order;
    std::vector<Quat> (*build)();
  };
  const Exceptional exceptional[] = {
      {"binary-tetrahedral", 24, quat_binary_tetrahedral},
      {"binary-octahedral", 48, quat_binary_octahedral},
      {"binary-icosahedral", 120, quat_binary_icosahedral},
  };
  for (const auto& e : exceptional) {
    if (e.order > cap) {
      r.warnings.push_back(std::string(e.name) + " (order " +
                           std::to_string(e.order) + ") exceeds cap " +
                           std::to_string(cap));
      continue;
    }
    add(e.name, e.build());
  }

  r.min_covering_radius = std::numeric_limits<double>::infinity();
  for (const auto& s : r.subgroups) {
    if (s.covering_radius < r.min_covering_radius) {
      r.min_covering_radius = s.covering_radius;
      r.attained_by = s.name;
    }
  }
  r.net_exists = r.min_covering_radius <= eps;
  return r;
}

}  // namespace bohrlab
