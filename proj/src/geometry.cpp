#include "fluct/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fluct/errors.hpp"
#include "fluct/units.hpp"

namespace fluct {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Part reflect(const Part& p, int axis) {
  auto flip = [axis](Vec3 v) {
    v[axis] = -v[axis];
    return v;
  };
  return std::visit(
      Overloaded{
          [&](const BallPart& b) -> Part { return BallPart{flip(b.center), b.radius}; },
          [&](const HalfBallPart& h) -> Part {
            return HalfBallPart{flip(h.center), h.radius, axis == 2 ? -h.side : h.side};
          },
          [&](const BoxPart& b) -> Part {
            Vec3 lo = b.lo, hi = b.hi;
            lo[axis] = -b.hi[axis];
            hi[axis] = -b.lo[axis];
            return BoxPart{lo, hi};
          },
          [&](const CylinderPart& c) -> Part {
            Vec3 base = flip(c.base);
            if (c.axis == axis) base[axis] -= c.length;
            return CylinderPart{base, c.axis, c.radius, c.length};
          },
          [&](const WirePart& w) -> Part { return WirePart{flip(w.start), flip(w.end), w.area}; },
      },
      p);
}

Region reflect(const Region& r, int axis) {
  Region out;
  for (const auto& p : r.parts) out.parts.push_back(reflect(p, axis));
  return out;
}

bool strictly_overlap(const std::pair<Vec3, Vec3>& x, const std::pair<Vec3, Vec3>& y) {
  for (int i = 0; i < 3; ++i) {
    const double lo = std::max(x.first[i], y.first[i]);
    const double hi = std::min(x.second[i], y.second[i]);
    if (!(lo < hi)) return false;
  }
  return true;
}

bool parts_overlap(const Part& p, const Part& q) {
  if (std::holds_alternative<BallPart>(p) && std::holds_alternative<BallPart>(q)) {
    const auto& a = std::get<BallPart>(p);
    const auto& b = std::get<BallPart>(q);
    return (a.center - b.center).norm() < a.radius + b.radius;
  }
  return strictly_overlap(part_bounds(p), part_bounds(q));
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string("geometry: ") + what + " must be positive");
}

}  // namespace

double part_measure(const Part& p) {
  return std::visit(Overloaded{
                        [](const BallPart& b) { return 4.0 / 3.0 * kPi * b.radius * b.radius * b.radius; },
                        [](const HalfBallPart& h) { return 2.0 / 3.0 * kPi * h.radius * h.radius * h.radius; },
                        [](const BoxPart& b) { return (b.hi - b.lo).prod(); },
                        [](const CylinderPart& c) { return kPi * c.radius * c.radius * c.length; },
                        [](const WirePart& w) { return w.area * (w.end - w.start).norm(); },
                    },
                    p);
}

double region_measure(const Region& r) {
  double v = 0.0;
  for (const auto& p : r.parts) v += part_measure(p);
  return v;
}

std::pair<Vec3, Vec3> part_bounds(const Part& p) {
  return std::visit(
      Overloaded{
          [](const BallPart& b) {
            return std::pair{Vec3(b.center.array() - b.radius), Vec3(b.center.array() + b.radius)};
          },
          [](const HalfBallPart& h) {
            Vec3 lo = h.center.array() - h.radius;
            Vec3 hi = h.center.array() + h.radius;
            if (h.side > 0)
              lo.z() = h.center.z();
            else
              hi.z() = h.center.z();
            return std::pair{lo, hi};
          },
          [](const BoxPart& b) { return std::pair{b.lo, b.hi}; },
          [](const CylinderPart& c) {
            Vec3 lo = c.base.array() - c.radius;
            Vec3 hi = c.base.array() + c.radius;
            lo[c.axis] = c.base[c.axis];
            hi[c.axis] = c.base[c.axis] + c.length;
            return std::pair{lo, hi};
          },
          [](const WirePart& w) { return std::pair{Vec3(w.start.cwiseMin(w.end)), Vec3(w.start.cwiseMax(w.end))}; },
      },
      p);
}

GenericPair to_generic(const BodyGeometry& g) {
  return std::visit(
      Overloaded{
          [](const JanusBall& j) {
            GenericPair out;
            const int a_side = j.a_on_top ? 1 : -1;
            out.a.parts.push_back(HalfBallPart{Vec3::Zero(), j.radius, a_side});
            out.b.parts.push_back(HalfBallPart{Vec3::Zero(), j.radius, -a_side});
            return out;
          },
          [](const DualWrench& w) {
            const double a = w.half_length, b = w.tag_length;
            GenericPair out;
            out.a.parts.push_back(WirePart{Vec3(0, -a, 0), Vec3(0, a, 0), w.area_a});
            out.b.parts.push_back(WirePart{Vec3(0, -a, 0), Vec3(b, -a, 0), w.area_b});
            out.b.parts.push_back(WirePart{Vec3(-b, a, 0), Vec3(0, a, 0), w.area_b});
            return out;
          },
          [](const DualFlag& f) {
            const double a = f.half_length, h = f.flag_height, t = 0.5 * f.thickness, w = f.flag_width;
            GenericPair out;
            out.a.parts.push_back(WirePart{Vec3(0, -a, 0), Vec3(0, a, 0), f.wire_area});
            out.b.parts.push_back(BoxPart{Vec3(0, -a, -t), Vec3(w, -a + h, t)});
            out.b.parts.push_back(BoxPart{Vec3(-w, a - h, -t), Vec3(0, a, t)});
            return out;
          },
          [](const GenericPair& p) { return p; },
      },
      g);
}

BodyGeometry exchange_regions(const BodyGeometry& g) {
  if (const auto* j = std::get_if<JanusBall>(&g)) return JanusBall{j->radius, !j->a_on_top};
  GenericPair p = to_generic(g);
  std::swap(p.a, p.b);
  return p;
}

BodyGeometry mirrored(const BodyGeometry& g, int axis) {
  if (axis < 0 || axis > 2) throw DomainError("mirrored: axis must be 0, 1 or 2");
  const GenericPair p = to_generic(g);
  return GenericPair{reflect(p.a, axis), reflect(p.b, axis)};
}

void validate_geometry(const BodyGeometry& g) {
  std::visit(Overloaded{
                 [](const JanusBall& j) { check_positive(j.radius, "janus radius"); },
                 [](const DualWrench& w) {
                   check_positive(w.half_length, "wrench half length");
                   check_positive(w.tag_length, "wrench tag length");
                   check_positive(w.area_a, "wrench wire area");
                   check_positive(w.area_b, "wrench tag area");
                 },
                 [](const DualFlag& f) {
                   check_positive(f.half_length, "flag wire half length");
                   check_positive(f.flag_width, "flag width");
                   check_positive(f.flag_height, "flag height");
                   check_positive(f.thickness, "flag thickness");
                   check_positive(f.wire_area, "flag wire area");
                   if (f.flag_height > f.half_length)
                     throw DomainError("geometry: flag height must not exceed the wire half length");
                 },
                 [](const GenericPair&) {},
             },
             g);
  const GenericPair p = to_generic(g);
  if (p.a.parts.empty() || p.b.parts.empty()) throw DomainError("geometry: both regions need at least one part");
  for (const Region* r : {&p.a, &p.b}) {
    for (const auto& part : r->parts) check_positive(part_measure(part), "part measure");
    for (std::size_t i = 0; i < r->parts.size(); ++i)
      for (std::size_t k = i + 1; k < r->parts.size(); ++k)
        if (parts_overlap(r->parts[i], r->parts[k])) throw DomainError("geometry: parts within a region overlap");
  }
  for (const auto& x : p.a.parts)
    for (const auto& y : p.b.parts)
      if (parts_overlap(x, y)) throw DomainError("geometry: regions A and B overlap");
}

bool is_planar_xy(const BodyGeometry& g) {
  const GenericPair p = to_generic(g);
  for (const Region* r : {&p.a, &p.b})
    for (const auto& part : r->parts) {
      const auto [lo, hi] = part_bounds(part);
      if (lo.z() != 0.0 || hi.z() != 0.0) return false;
    }
  return true;
}

std::string geometry_name(const BodyGeometry& g) {
  const auto& u = default_units();
  std::ostringstream os;
  os.precision(6);
  std::visit(Overloaded{
                 [&](const JanusBall& j) { os << "janus(a=" << u.length_to_nm(j.radius) << "nm)"; },
                 [&](const DualWrench& w) {
                   os << "wrench(a=" << u.length_to_nm(w.half_length) << "nm,b=" << u.length_to_nm(w.tag_length)
                      << "nm)";
                 },
                 [&](const DualFlag& f) {
                   os << "flags(a=" << u.length_to_nm(f.half_length) << "nm,w=" << u.length_to_nm(f.flag_width)
                      << "nm,h=" << u.length_to_nm(f.flag_height) << "nm,t=" << u.length_to_nm(f.thickness)
                      << "nm)";
                 },
                 [&](const GenericPair& p) { os << "generic(" << p.a.parts.size() << "+" << p.b.parts.size() << ")"; },
             },
             g);
  return os.str();
}

BodyGeometry geometry_from_preset(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("geometry preset needs ':' in '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  std::vector<double> args;
  std::stringstream ss(spec.substr(colon + 1));
  for (std::string item; std::getline(ss, item, ',');) args.push_back(parse_quantity(item, Quantity::Length));
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw std::invalid_argument("preset '" + kind + "' takes " + std::to_string(n) + " lengths, got " +
                                  std::to_string(args.size()));
  };
  BodyGeometry g;
  if (kind == "janus") {
    need(1);
    g = JanusBall{args[0], true};
  } else if (kind == "wrench") {
    need(3);
    const double s = kPi * args[2] * args[2];
    g = DualWrench{args[0], args[1], s, s};
  } else if (kind == "flags") {
    need(4);
    const double r = parse_quantity("50nm", Quantity::Length);
    g = DualFlag{args[0], args[1], args[2], args[3], kPi * r * r};
  } else {
    throw std::invalid_argument("unknown geometry preset '" + kind + "'");
  }
  validate_geometry(g);
  return g;
}

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || rel_tol > 1e-2) throw DomainError("QuadratureSpec: rel_tol must be in (0, 1e-2]");
  if (!(abs_tol >= 0.0)) throw DomainError("QuadratureSpec: abs_tol must be non-negative");
  if (max_subdivisions < 16) throw DomainError("QuadratureSpec: max_subdivisions too small");
  if (mc_samples < 10000) throw DomainError("QuadratureSpec: mc_samples must be at least 1e4");
  if (threads == 0) throw DomainError("QuadratureSpec: threads must be >= 1");
  phi_policy.validate();
}

TwoPartBody TwoPartBody::exchanged() const {
  return TwoPartBody{exchange_regions(geometry), material_b, material_a};
}

ThinMetalReport TwoPartBody::thin_metal_check(double omega_peak) const {
  ThinMetalReport rep;
  const auto& u = default_units();
  const GenericPair p = to_generic(geometry);
  auto thickness = [](const Part& part) {
    return std::visit(Overloaded{
                          [](const BallPart& b) { return 2.0 * b.radius; },
                          [](const HalfBallPart& h) { return h.radius; },
                          [](const BoxPart& b) { return (b.hi - b.lo).minCoeff(); },
                          [](const CylinderPart& c) { return std::min(2.0 * c.radius, c.length); },
                          [](const WirePart& w) { return 2.0 * std::sqrt(w.area / kPi); },
                      },
                      part);
  };
  double delta = std::numeric_limits<double>::infinity();
  for (const auto& [mat, region] : {std::pair{&material_a, &p.a}, std::pair{&material_b, &p.b}}) {
    const auto* metal = std::get_if<DrudeMetal>(mat);
    if (!metal) continue;
    delta = std::min(delta, skin_depth(omega_peak, *metal));
    for (const auto& part : region->parts)
      rep.max_metal_thickness_nm = std::max(rep.max_metal_thickness_nm, u.length_to_nm(thickness(part)));
  }
  rep.skin_depth_nm = std::isfinite(delta) ? delta : 0.0;
  rep.valid = !std::isfinite(delta) || rep.max_metal_thickness_nm <= delta;
  return rep;
}

// ---------------------------------------------------------------------------
// Dispatch

Estimate pair_integral_IAB(const BodyGeometry& g, double omega, const QuadratureSpec& q) {
  q.validate();
  if (!(omega > 0.0)) throw DomainError("pair_integral_IAB: omega must be positive");
  validate_geometry(g);
  if (const auto* j = std::get_if<JanusBall>(&g)) {
    const Estimate s = janus_scaled_IAB(omega * j->radius, j->a_on_top, q);
    const double norm = 8.0 * kPi * j->radius;
    return {s.value / norm, s.error / norm};
  }
  // r -> -r symmetric planar bodies have R_z == 0 identically.
  if (std::holds_alternative<DualWrench>(g) || is_planar_xy(g)) return {0.0, 0.0};
  if (!q.allow_monte_carlo)
    throw DomainError("pair_integral_IAB: no deterministic reduction for " + geometry_name(g) +
                      "; enable Monte Carlo");
  const VectorEstimate mc = mc_pair_oracle(g, omega, PairKind::IAB, q);
  return {mc.value.z(), mc.error.z()};
}

VectorEstimate pair_integral_JAB(const BodyGeometry& g, double omega, const QuadratureSpec& q) {
  q.validate();
  if (!(omega > 0.0)) throw DomainError("pair_integral_JAB: omega must be positive");
  validate_geometry(g);
  // Axisymmetric pair: every component of J vanishes.
  if (std::holds_alternative<JanusBall>(g)) return {};
  if (const auto* w = std::get_if<DualWrench>(&g)) {
    const WrenchFactor f = wrench_JAB_reduced(w->half_length, w->tag_length, w->area_a, w->area_b, omega, q);
    VectorEstimate out;
    out.value.z() = f.j_ab;
    out.error.z() = f.error * std::abs(f.j_ab / (f.j_hat == 0.0 ? 1.0 : f.j_hat));
    return out;
  }
  if (!q.allow_monte_carlo)
    throw DomainError("pair_integral_JAB: no deterministic reduction for " + geometry_name(g) +
                      "; enable Monte Carlo");
  return mc_pair_oracle(g, omega, PairKind::JAB, q);
}

}  // namespace fluct
