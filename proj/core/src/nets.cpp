#include "bohrlab/nets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bohrlab/error.hpp"
#include "bohrlab/rng.hpp"

namespace bohrlab {
namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr long kNetPointCap = 4000000;

}  // namespace

CMatrix quat_to_su2(const Quat& q) {
  CMatrix m(2, 2);
  m(0, 0) = Complex(q.w, q.x);
  m(0, 1) = Complex(q.y, q.z);
  m(1, 0) = Complex(-q.y, q.z);
  m(1, 1) = Complex(q.w, -q.x);
  return m;
}

Quat su2_to_quat(const CMatrix& m) {
  return Quat{m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(), m(0, 1).imag()};
}

double su2_distance(const Quat& a, const Quat& b) {
  // The difference of two quaternion-form matrices is again quaternion-form,
  // so D^H D = (|dw|^2+|dx|^2+|dy|^2+|dz|^2) I and the largest singular value
  // is the euclidean norm of the component difference.
  const double dw = a.w - b.w, dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dw * dw + dx * dx + dy * dy + dz * dz);
}

Quat quat_mul(const Quat& a, const Quat& b) {
  return Quat{a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
              a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
              a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
              a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quat random_unit_quat(Rng& rng) {
  while (true) {
    Quat q{rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian(),
           rng.next_gaussian()};
    const double n = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
    if (n > 1e-8) {
      q.w /= n;
      q.x /= n;
      q.y /= n;
      q.z /= n;
      return q;
    }
  }
}

double root_unity_distance(int r) {
  if (r < 1) fail("bad descriptor", "exponent must be >= 1");
  if (r == 1) return 0.0;
  return 2.0 * std::sin(kPi / r);
}

EpsNet torus_net(int n, double eps) {
  if (n < 1) fail("bad descriptor", "torus dimension must be >= 1");
  if (!(eps > 0.0)) fail("epsilon out of range", "radius must be positive");
  const double clamped = std::min(eps, 2.0);
  const int m = static_cast<int>(std::ceil(kPi / std::asin(clamped / 2.0)));

  double count = 1;
  for (int i = 0; i < n; ++i) count *= m;
  if (count > kNetPointCap)
    fail("net too large", "grid would need " + std::to_string(count) + " points");
  const long total = static_cast<long>(count);

  EpsNet net;
  net.target = NetTarget::torus;
  net.dim = n;
  net.radius = eps;
  net.grid_m = m;
  net.seed = 0x7042;
  net.sample_count = kNetSampleCount;
  net.points.reserve(total);

  std::vector<Complex> roots(m);
  for (int j = 0; j < m; ++j)
    roots[j] = std::polar(1.0, 2.0 * kPi * j / m);

  std::vector<int> digits(n, 0);
  for (long idx = 0; idx < total; ++idx) {
    CMatrix p = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) p(i, i) = roots[digits[i]];
    net.points.emplace_back(std::move(p));
    for (int i = n - 1; i >= 0; --i) {
      if (++digits[i] < m) break;
      digits[i] = 0;
    }
  }

  // exact per-coordinate covering radius of the m-point grid
  net.certified_radius = 2.0 * std::sin(kPi / (2.0 * m));
  require(net.certified_radius < eps, "torus grid radius below target");

  // spot verification on a dense sample; the sup metric over the diagonal
  // splits per coordinate, nearest grid point is the rounded angle
  Rng rng(net.seed);
  double worst = 0.0;
  for (long s = 0; s < net.sample_count; ++s) {
    double chord_sup = 0.0;
    for (int i = 0; i < n; ++i) {
      const double theta = 2.0 * kPi * rng.next_double();
      const long j = std::lround(theta * m / (2.0 * kPi)) % m;
      const double chord = std::abs(std::polar(1.0, theta) - roots[j]);
      chord_sup = std::max(chord_sup, chord);
    }
    worst = std::max(worst, chord_sup);
  }
  require(worst <= net.certified_radius + 1e-12, "sampled radius exceeds analytic bound");
  return net;
}

EpsNet su2_net(double eps, std::uint64_t seed) {
  if (!(eps > 0.0)) fail("epsilon out of range", "radius must be positive");

  const long pool_size = kNetSampleCount;
  Rng pool_rng(seed);
  std::vector<Quat> pool;
  pool.reserve(pool_size);
  for (long i = 0; i < pool_size; ++i) pool.push_back(random_unit_quat(pool_rng));

  // farthest-point greedy; the visit order is independent of eps, so net
  // sizes are monotone in the radius by construction. The diameter of SU(2)
  // is 2, so any single point suffices once eps reaches it.
  const double margin = 0.92;
  std::vector<Quat> centers{Quat{}};
  std::vector<double> dist(pool_size);
  for (long i = 0; i < pool_size; ++i) dist[i] = su2_distance(pool[i], centers[0]);
  while (eps < 2.0) {
    long imax = 0;
    for (long i = 1; i < pool_size; ++i)
      if (dist[i] > dist[imax]) imax = i;
    if (dist[imax] < margin * eps) break;
    centers.push_back(pool[imax]);
    for (long i = 0; i < pool_size; ++i)
      dist[i] = std::min(dist[i], su2_distance(pool[i], centers.back()));
  }

  EpsNet net;
  net.target = NetTarget::su2;
  net.dim = 2;
  net.radius = eps;
  net.seed = seed;
  net.sample_count = kNetSampleCount;
  net.points.reserve(centers.size());
  for (const Quat& q : centers) net.points.emplace_back(quat_to_su2(q));

  Rng check_rng(seed ^ 0x9e3779b97f4a7c15ull);
  double worst = 0.0;
  for (long s = 0; s < net.sample_count; ++s) {
    const Quat q = random_unit_quat(check_rng);
    double best = 4.0;
    for (const Quat& c : centers) best = std::min(best, su2_distance(q, c));
    worst = std::max(worst, best);
  }
  net.certified_radius = worst;
  require(net.certified_radius <= eps, "sampled covering radius exceeds target");
  return net;
}

EpsNet finite_image_net(const std::vector<CMatrix>& points, double eps) {
  if (points.empty()) fail("invalid matrix", "net needs points");
  if (!(eps > 0.0)) fail("epsilon out of range", "radius must be positive");
  const int dim = static_cast<int>(points[0].rows());

  std::vector<int> centers;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool covered = false;
    for (int c : centers)
      if (unitary_distance(points[i], points[c]) < eps) {
        covered = true;
        break;
      }
    if (!covered) centers.push_back(static_cast<int>(i));
  }

  EpsNet net;
  net.target = NetTarget::unitary;
  net.dim = dim;
  net.radius = eps;
  net.seed = 0;
  net.sample_count = static_cast<long>(points.size());
  double worst = 0.0;
  for (const auto& p : points) {
    double best = std::numeric_limits<double>::infinity();
    for (int c : centers) best = std::min(best, unitary_distance(p, points[c]));
    worst = std::max(worst, best);
  }
  net.certified_radius = worst;
  require(net.certified_radius < eps, "subnet failed to cover its own points");
  for (int c : centers) net.points.emplace_back(points[c]);
  return net;
}

int covering_number_estimate(const EpsNet& net) {
  return static_cast<int>(net.points.size());
}

}  // namespace bohrlab
