#include "fluct/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Geometry>

#include "fluct/errors.hpp"
#include "fluct/parallel.hpp"

namespace fluct {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Vec3 sample_part(const Part& p, double u0, double u1, double u2) {
  return std::visit(
      Overloaded{
          [&](const BallPart& b) -> Vec3 {
            const double r = b.radius * std::cbrt(u0);
            const double c = 2.0 * u1 - 1.0;
            const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
            const double ph = 2.0 * kPi * u2;
            return b.center + r * Vec3(s * std::cos(ph), s * std::sin(ph), c);
          },
          [&](const HalfBallPart& h) -> Vec3 {
            const double r = h.radius * std::cbrt(u0);
            const double c = u1 * (h.side > 0 ? 1.0 : -1.0);
            const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
            const double ph = 2.0 * kPi * u2;
            return h.center + r * Vec3(s * std::cos(ph), s * std::sin(ph), c);
          },
          [&](const BoxPart& b) -> Vec3 {
            return b.lo + Vec3(u0, u1, u2).cwiseProduct(b.hi - b.lo);
          },
          [&](const CylinderPart& c) -> Vec3 {
            const double r = c.radius * std::sqrt(u0);
            const double ph = 2.0 * kPi * u1;
            Vec3 v = c.base;
            const int i = (c.axis + 1) % 3, j = (c.axis + 2) % 3;
            v[i] += r * std::cos(ph);
            v[j] += r * std::sin(ph);
            v[c.axis] += u2 * c.length;
            return v;
          },
          [&](const WirePart& w) -> Vec3 { return w.start + u0 * (w.end - w.start); },
      },
      p);
}

struct Moments {
  Vec3 mean = Vec3::Zero();
  Vec3 m2 = Vec3::Zero();
  std::uint64_t n = 0;

  void push(const Vec3& x) {
    ++n;
    const Vec3 d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d.cwiseProduct(x - mean);
  }
};

}  // namespace

Vec3 sample_region(const Region& r, const double u[3]) {
  double total = region_measure(r);
  double acc = 0.0;
  const double target = u[0] * total;
  for (std::size_t i = 0; i < r.parts.size(); ++i) {
    const double m = part_measure(r.parts[i]);
    if (target < acc + m || i + 1 == r.parts.size()) {
      const double u0 = std::clamp((target - acc) / m, 0.0, std::nextafter(1.0, 0.0));
      return sample_part(r.parts[i], u0, u[1], u[2]);
    }
    acc += m;
  }
  throw DomainError("sample_region: empty region");
}

VectorEstimate mc_pair_oracle(const BodyGeometry& g, double omega, PairKind kind, const QuadratureSpec& q) {
  q.validate();
  if (!(omega > 0.0)) throw DomainError("mc_pair_oracle: omega must be positive");
  validate_geometry(g);
  const GenericPair pair = to_generic(g);
  const double va = region_measure(pair.a);
  const double vb = region_measure(pair.b);
  const PhiEvalPolicy pol = q.phi_policy;
  const double w8 = std::pow(omega, 8);
  const double scale_i = w8 / (16.0 * kPi * kPi);

  constexpr int K = kMonteCarloStrata;
  const std::uint64_t per = std::max<std::uint64_t>(2, (q.mc_samples + K - 1) / K);
  std::vector<Moments> strata(K);

  parallel_for(K, q.threads, [&](std::size_t k) {
    const CounterRng rng(q.rng_seed, k);
    Moments m;
    for (std::uint64_t i = 0; i < per; ++i) {
      const std::uint64_t c = i * 8;
      const double ua[3] = {(static_cast<double>(k) + rng.uniform(c)) / K, rng.uniform(c + 1), rng.uniform(c + 2)};
      const double ub[3] = {rng.uniform(c + 3), rng.uniform(c + 4), rng.uniform(c + 5)};
      const Vec3 r = sample_region(pair.a, ua);
      const Vec3 rp = sample_region(pair.b, ub);
      const Vec3 d = r - rp;
      const double g = phi_over_r8(omega * d.norm(), pol);
      if (kind == PairKind::IAB)
        m.push(d * (scale_i * g));
      else
        m.push(-r.cross(rp) * (w8 * g));
    }
    strata[k] = m;
  });

  VectorEstimate out;
  Vec3 var = Vec3::Zero();
  for (const auto& s : strata) {
    out.value += s.mean;
    var += s.m2 / (static_cast<double>(s.n - 1) * static_cast<double>(s.n));
  }
  const double vol = va * vb;
  out.value *= vol / K;
  out.error = var.cwiseSqrt() * (vol / K);
  return out;
}

}  // namespace fluct
