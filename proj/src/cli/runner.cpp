#include "fluct/cli/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <functional>
#include <numbers>

#include "fluct/errors.hpp"
#include "fluct/friction.hpp"
#include "fluct/geometry.hpp"
#include "fluct/material.hpp"
#include "fluct/noneq.hpp"
#include "fluct/parallel.hpp"
#include "fluct/relax.hpp"
#include "fluct/units.hpp"

#ifndef FLUCT_VERSION
#define FLUCT_VERSION "dev"
#endif

namespace fluct::cli {

namespace {

using Q = Quantity;
constexpr double kPi = std::numbers::pi;

const UnitContext& U() { return default_units(); }

std::string num(double v) { return format_number(v); }

// Kelvin abscissae pass through eV and back; trim the round-off.
double kelvin(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.14g", U().temperature_to_k(t));
  return std::strtod(buf, nullptr);
}

void def(ScenarioConfig& c, std::string_view s, std::string_view k, std::string v, std::string unit = {}) {
  if (!c.has(s, k)) c.set(s, k, std::move(v), std::move(unit));
}

[[noreturn]] void fail_at(const ScenarioConfig& c, std::string_view s, std::string_view k, const std::string& why) {
  const auto* e = c.find(s, k);
  throw ConfigError("[" + std::string(s) + "] " + std::string(k) + ": " + why, e ? e->line : 0, e ? e->column : 0,
                    std::string(s), std::string(k));
}

/// Run f and turn domain problems into a config diagnostic pointing at (s, k).
template <class F>
auto as_config(const ScenarioConfig& c, std::string_view s, std::string_view k, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail_at(c, s, k, e.what());
  } catch (const std::domain_error& e) {
    fail_at(c, s, k, e.what());
  }
}

double si(const ScenarioConfig& c, std::string_view s, std::string_view k, Q q) {
  return U().to_si(q, c.quantity(s, k, 0.0));
}

// ---------------------------------------------------------------------------
// Materials

const std::vector<std::string_view>& keys_for_kind(const std::string& kind) {
  static const std::vector<std::string_view> drude{"kind", "plasma_freq", "damping", "atom_density", "mass_density"};
  static const std::vector<std::string_view> diel{"kind", "chi0", "mass_density"};
  static const std::vector<std::string_view> mono{"kind", "exponent", "amplitude"};
  static const std::vector<std::string_view> gyro{"kind", "plasma_freq", "damping", "magnetic_field", "radius"};
  if (kind == "drude") return drude;
  if (kind == "dielectric") return diel;
  if (kind == "monomial") return mono;
  return gyro;
}

void resolve_material(ScenarioConfig& c, const std::string& sec, const std::string& fallback_preset) {
  if (!c.has(sec, "preset") && !c.has(sec, "kind")) c.set(sec, "preset", fallback_preset);
  if (c.has(sec, "preset")) {
    if (c.has(sec, "kind")) fail_at(c, sec, "kind", "give either a preset or a kind, not both");
    for (const auto& s : c.sections)
      if (s.name == sec)
        for (const auto& e : s.entries)
          if (e.key != "preset") fail_at(c, sec, e.key, "does not combine with a preset");
    as_config(c, sec, "preset", [&] { return material_from_preset(c.text(sec, "preset", "")); });
    return;
  }
  const std::string kind = c.text(sec, "kind", "");
  const auto& allowed = keys_for_kind(kind);
  for (const auto& s : c.sections)
    if (s.name == sec)
      for (const auto& e : s.entries)
        if (std::find(allowed.begin(), allowed.end(), e.key) == allowed.end())
          fail_at(c, sec, e.key, "does not apply to kind " + kind);
  if (kind == "drude" || kind == "gyrotropic") {
    def(c, sec, "plasma_freq", "9", "eV");
    def(c, sec, "damping", "0.035", "eV");
  }
  if (kind == "drude") {
    def(c, sec, "atom_density", "5.9e28", "m^-3");
    def(c, sec, "mass_density", "19300", "kg/m^3");
  } else if (kind == "dielectric") {
    def(c, sec, "chi0", "1");
    def(c, sec, "mass_density", "2200", "kg/m^3");
  } else if (kind == "monomial") {
    def(c, sec, "exponent", "3");
    def(c, sec, "amplitude", "1");
  } else {
    def(c, sec, "magnetic_field", "1", "T");
    def(c, sec, "radius", "100", "nm");
  }
}

Material build_material(const ScenarioConfig& c, const std::string& sec) {
  if (c.has(sec, "preset")) return material_from_preset(c.text(sec, "preset", ""));
  const std::string kind = c.text(sec, "kind", "");
  if (kind == "drude")
    return DrudeMetal{c.quantity(sec, "plasma_freq", 0), c.quantity(sec, "damping", 0),
                      si(c, sec, "atom_density", Q::NumberDensity), si(c, sec, "mass_density", Q::MassDensity)};
  if (kind == "dielectric") return Dielectric{c.real(sec, "chi0", 0), si(c, sec, "mass_density", Q::MassDensity)};
  if (kind == "monomial")
    return MonomialAbsorber{static_cast<int>(c.integer(sec, "exponent", 0)), c.real(sec, "amplitude", 0)};
  return GyrotropicSphere{c.quantity(sec, "plasma_freq", 0), c.quantity(sec, "damping", 0),
                          c.quantity(sec, "magnetic_field", 0), c.quantity(sec, "radius", 0)};
}

// ---------------------------------------------------------------------------
// Geometry

std::string geometry_kind(const BodyGeometry& g) {
  if (std::holds_alternative<JanusBall>(g)) return "janus";
  if (std::holds_alternative<DualWrench>(g)) return "wrench";
  return "flags";
}

/// Resolves [geometry] and returns its kind.
std::string resolve_geometry(ScenarioConfig& c, const std::string& fallback_kind) {
  const std::string sec = "geometry";
  if (c.has(sec, "preset")) {
    for (const auto& s : c.sections)
      if (s.name == sec)
        for (const auto& e : s.entries)
          if (e.key != "preset" && e.key != "a_on_top") fail_at(c, sec, e.key, "does not combine with a preset");
    const auto g = as_config(c, sec, "preset", [&] { return geometry_from_preset(c.text(sec, "preset", "")); });
    if (std::holds_alternative<JanusBall>(g)) def(c, sec, "a_on_top", "true");
    else if (c.has(sec, "a_on_top")) fail_at(c, sec, "a_on_top", "only applies to a janus ball");
    return geometry_kind(g);
  }
  def(c, sec, "kind", fallback_kind);
  const std::string kind = c.text(sec, "kind", "");
  std::vector<std::string_view> allowed{"kind"};
  if (kind == "janus") {
    allowed.insert(allowed.end(), {"radius", "a_on_top"});
    def(c, sec, "radius", "100", "nm");
    def(c, sec, "a_on_top", "true");
  } else if (kind == "wrench") {
    allowed.insert(allowed.end(), {"half_length", "tag_length", "wire_radius", "tag_radius"});
    def(c, sec, "half_length", "1", "um");
    def(c, sec, "tag_length", "1", "um");
    def(c, sec, "wire_radius", "50", "nm");
    def(c, sec, "tag_radius", "50", "nm");
  } else {
    allowed.insert(allowed.end(), {"half_length", "flag_width", "flag_height", "thickness", "wire_radius"});
    def(c, sec, "half_length", "1", "um");
    def(c, sec, "flag_width", "500", "nm");
    def(c, sec, "flag_height", "500", "nm");
    def(c, sec, "thickness", "50", "nm");
    def(c, sec, "wire_radius", "50", "nm");
  }
  for (const auto& s : c.sections)
    if (s.name == sec)
      for (const auto& e : s.entries)
        if (std::find(allowed.begin(), allowed.end(), e.key) == allowed.end())
          fail_at(c, sec, e.key, "does not apply to kind " + kind);
  return kind;
}

BodyGeometry build_geometry(const ScenarioConfig& c) {
  const std::string sec = "geometry";
  if (c.has(sec, "preset")) {
    auto g = geometry_from_preset(c.text(sec, "preset", ""));
    if (auto* j = std::get_if<JanusBall>(&g)) j->a_on_top = c.boolean(sec, "a_on_top", true);
    return g;
  }
  const std::string kind = c.text(sec, "kind", "");
  auto len = [&](const char* k) { return c.quantity(sec, k, 0.0); };
  if (kind == "janus") return JanusBall{len("radius"), c.boolean(sec, "a_on_top", true)};
  if (kind == "wrench") {
    const double ra = len("wire_radius"), rb = len("tag_radius");
    return DualWrench{len("half_length"), len("tag_length"), kPi * ra * ra, kPi * rb * rb};
  }
  const double rw = len("wire_radius");
  return DualFlag{len("half_length"), len("flag_width"), len("flag_height"), len("thickness"), kPi * rw * rw};
}

// ---------------------------------------------------------------------------
// Quadrature and sweep

void resolve_quadrature(ScenarioConfig& c, const RunOptions& opt) {
  const std::string sec = "quadrature";
  if (opt.rel_tol) c.set(sec, "rel_tol", num(*opt.rel_tol));
  if (opt.seed) c.set(sec, "seed", std::to_string(*opt.seed));
  def(c, sec, "rel_tol", "1e-6");
  def(c, sec, "abs_tol", "0");
  def(c, sec, "max_subdivisions", "20000");
  def(c, sec, "series_switch", "0.5");
  def(c, sec, "series_terms", "12");
  def(c, sec, "precision_bits", "64");
  def(c, sec, "mc_samples", "65536");
  def(c, sec, "seed", "20240611");
  def(c, sec, "monte_carlo", "false");
}

QuadratureSpec build_quadrature(const ScenarioConfig& c) {
  const std::string sec = "quadrature";
  QuadratureSpec q;
  q.rel_tol = c.real(sec, "rel_tol", q.rel_tol);
  q.abs_tol = c.real(sec, "abs_tol", q.abs_tol);
  q.max_subdivisions = static_cast<int>(c.integer(sec, "max_subdivisions", q.max_subdivisions));
  q.phi_policy.switch_threshold = c.real(sec, "series_switch", q.phi_policy.switch_threshold);
  q.phi_policy.series_terms = static_cast<int>(c.integer(sec, "series_terms", q.phi_policy.series_terms));
  q.phi_policy.working_precision_bits =
      static_cast<int>(c.integer(sec, "precision_bits", q.phi_policy.working_precision_bits));
  const long long samples = c.integer(sec, "mc_samples", static_cast<long long>(q.mc_samples));
  if (samples < 0) fail_at(c, sec, "mc_samples", "must be positive");
  q.mc_samples = static_cast<std::uint64_t>(samples);
  const long long seed = c.integer(sec, "seed", 0);
  if (seed < 0) fail_at(c, sec, "seed", "must be non-negative");
  q.rng_seed = static_cast<std::uint64_t>(seed);
  q.allow_monte_carlo = c.boolean(sec, "monte_carlo", false);
  q.threads = 1;
  as_config(c, sec, "rel_tol", [&] {
    q.validate();
    return 0;
  });
  return q;
}

struct SweepDefault {
  std::string variable;
  std::string from, to, unit;
  int points;
  std::string spacing;
};

void resolve_sweep(ScenarioConfig& c, const SweepDefault& d) {
  const std::string sec = "sweep";
  if (!c.has_section(sec)) {
    c.set(sec, "variable", d.variable);
    c.set(sec, "from", d.from, d.unit);
    c.set(sec, "to", d.to, d.unit);
    c.set(sec, "points", std::to_string(d.points));
    c.set(sec, "spacing", d.spacing);
    return;
  }
  if (!c.has(sec, "variable")) fail_at(c, sec, "variable", "missing (this subcommand sweeps " + d.variable + ")");
  if (c.text(sec, "variable", "") != d.variable)
    fail_at(c, sec, "variable", "this subcommand sweeps " + d.variable);
  if (!c.has(sec, "from")) fail_at(c, sec, "from", "missing");
  if (!c.has(sec, "to")) c.set(sec, "to", c.find(sec, "from")->value, c.find(sec, "from")->unit);
  def(c, sec, "points", "21");
  def(c, sec, "spacing", "linear");
}

/// Sweep values in natural units, strictly increasing.
std::vector<double> sweep_values(const ScenarioConfig& c) {
  const std::string sec = "sweep";
  const auto q = sweep_variable_quantity(c.text(sec, "variable", ""));
  const double from = c.swept(sec, "from", q, 0.0), to = c.swept(sec, "to", q, 0.0);
  const long long n = c.integer(sec, "points", 0);
  const bool log = c.text(sec, "spacing", "linear") == "log";
  if (n < 1) fail_at(c, sec, "points", "must be at least 1");
  if (n == 1) {
    if (from != to) fail_at(c, sec, "points", "one point needs from == to");
    return {from};
  }
  if (!(to > from)) fail_at(c, sec, "to", "must exceed 'from'");
  if (log && !(from > 0.0)) fail_at(c, sec, "from", "log spacing needs a positive start");
  // Space the points in the units the user wrote, so that e.g. 300 K on the
  // grid is the same number as 300 K elsewhere in the config.
  const auto* ef = c.find(sec, "from");
  const auto* et = c.find(sec, "to");
  const bool same_unit = q && ef->unit == et->unit;
  const double lo = same_unit ? std::stod(ef->value) : from, hi = same_unit ? std::stod(et->value) : to;
  std::vector<double> v(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    const double x = log ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
    v[static_cast<std::size_t>(i)] = same_unit ? parse_quantity(format_number(x) + " " + ef->unit, *q) : x;
  }
  v.front() = from;
  v.back() = to;
  return v;
}

void resolve_thermal(ScenarioConfig& c) {
  def(c, "thermal", "environment", "300", "K");
  def(c, "thermal", "body", "600", "K");
}

ThermalPair build_thermal(const ScenarioConfig& c) {
  return {c.quantity("thermal", "environment", 0.0), c.quantity("thermal", "body", 0.0)};
}

/// Evaluate f at every sweep point into per-index slots. Failures name the
/// point and carry the best estimate.
template <class R, class F>
std::vector<R> evaluate(const std::vector<double>& xs, unsigned threads, const std::string& label,
                        const std::function<std::string(double)>& show, F&& f) {
  std::vector<R> out(xs.size());
  parallel_for(xs.size(), threads, [&](std::size_t i) {
    try {
      out[i] = f(xs[i]);
    } catch (const ConvergenceError& e) {
      throw NumericalFailure(std::string(e.what()) + " at " + label + " = " + show(xs[i]) +
                             " (best estimate " + num(e.best_estimate()) + ", error " + num(e.error_estimate()) +
                             (e.location().empty() ? "" : ", " + e.location()) + ")");
    }
  });
  return out;
}

std::string show_kelvin(double t) { return num(kelvin(t)) + " K"; }
std::string show_plain(double x) { return num(x); }

ScalarCurve curve(Column x, Column y, bool with_error) {
  ScalarCurve c;
  c.abscissa = std::move(x);
  c.value = std::move(y);
  c.has_error = with_error;
  return c;
}

const DrudeMetal* drude_of(const Material& m) { return std::get_if<DrudeMetal>(&m); }
const Dielectric* dielectric_of(const Material& m) { return std::get_if<Dielectric>(&m); }

// ---------------------------------------------------------------------------
// Subcommands

struct Ctx {
  const ScenarioConfig& cfg;
  QuadratureSpec q;
  unsigned threads;
};

std::vector<NamedCurve> run_friction(const Ctx& x) {
  const auto& c = x.cfg;
  SurfaceScenario base;
  base.alpha0 = c.quantity("friction", "alpha0", 0.0);
  base.sigma_plate = c.quantity("friction", "sigma_plate", 0.0);
  if (c.has("friction", "sigma_particle")) base.sigma_particle = c.quantity("friction", "sigma_particle", 0.0);
  base.separation = c.quantity("friction", "separation", 0.0);

  const std::string which = c.text("friction", "mechanism", "all");
  std::vector<std::pair<std::string, Mechanism>> mechs;
  if (which == "all" || which == "image_lag") mechs.emplace_back("image_lag", Mechanism::ImageLag);
  if (which == "all" || which == "radiation_reaction") mechs.emplace_back("radiation_reaction", Mechanism::RadiationReaction);
  if (which == "intrinsic_dissipation" || (which == "all" && base.sigma_particle))
    mechs.emplace_back("intrinsic_dissipation", Mechanism::IntrinsicDissipation);

  const auto vs = sweep_values(c);
  const double crossover =
      U().to_si(Q::Velocity, image_radiation_crossover_speed(base.sigma_plate, base.separation));
  std::vector<NamedCurve> out;
  for (const auto& [name, mech] : mechs) {
    SurfaceScenario s = base;
    s.mechanism = mech;
    as_config(c, "friction", "mechanism", [&] {
      s.validate();
      return 0;
    });
    auto force = evaluate<double>(vs, x.threads, "v", show_plain, [&](double v) {
      SurfaceScenario p = s;
      p.velocity = v;
      return surface_friction(p);
    });
    auto cv = curve({"velocity", "m/s"}, {"force", "N"}, false);
    for (std::size_t i = 0; i < vs.size(); ++i) cv.push(U().to_si(Q::Velocity, vs[i]), U().force_to_n(force[i]));
    cv.metadata.emplace_back("mechanism", name);
    cv.metadata.emplace_back("image_radiation_crossover_m_per_s", num(crossover));
    out.push_back({"friction_" + name + ".csv", std::move(cv)});
  }
  return out;
}

std::vector<NamedCurve> run_eh(const Ctx& x) {
  const auto& c = x.cfg;
  const double alpha0 = c.quantity("eh", "alpha0", 0.0), mass = c.quantity("eh", "mass", 0.0);
  const double v = c.quantity("eh", "velocity", 0.0), ratio = c.real("eh", "velocity_ratio", 0.9);
  const double t_slow = c.quantity("eh", "temperature", 0.0);
  if (!(ratio > 0.0 && ratio < 1.0)) fail_at(c, "eh", "velocity_ratio", "must lie in (0, 1)");
  if (!(alpha0 > 0.0)) fail_at(c, "eh", "alpha0", "must be positive");
  if (!(mass > 0.0)) fail_at(c, "eh", "mass", "must be positive");
  if (!(v > 0.0 && v < 1.0)) fail_at(c, "eh", "velocity", "must lie between 0 and c");
  const auto ts = sweep_values(c);
  if (ts.front() <= 0.0) fail_at(c, "sweep", "from", "temperatures must be positive");

  const auto model = radiation_reaction_model(alpha0);
  const AdaptiveOptions opt{std::min(x.q.rel_tol, 1e-10), x.q.abs_tol, x.q.max_subdivisions};
  auto quad = evaluate<double>(ts, x.threads, "T", show_kelvin,
                               [&](double t) { return einstein_hopf_force(model, t, v, opt); });

  auto fq = curve({"temperature", "K"}, {"force", "N"}, false);
  auto fc = curve({"temperature", "K"}, {"force_closed_form", "N"}, false);
  auto t0 = curve({"temperature", "K"}, {"slowdown_scale", "s"}, false);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double tk = kelvin(ts[i]);
    fq.push(tk, U().force_to_n(quad[i]));
    fc.push(tk, U().force_to_n(einstein_hopf_radiation_reaction(alpha0, ts[i], v)));
    t0.push(tk, U().time_to_s(slowdown_scale(mass, alpha0, ts[i])));
  }
  const std::string vel = num(U().to_si(Q::Velocity, v)) + " m/s";
  fq.metadata.emplace_back("velocity", vel);
  fc.metadata.emplace_back("velocity", vel);
  const double dt = U().time_to_s(slowdown_time(mass, alpha0, t_slow, v, ratio * v));
  t0.metadata.emplace_back("slowdown_temperature_K", num(kelvin(t_slow)));
  t0.metadata.emplace_back("slowdown_velocity_ratio", num(ratio));
  t0.metadata.emplace_back("slowdown_time_s", num(dt));
  t0.metadata.emplace_back("slowdown_time_yr", num(dt / (365.25 * 86400.0)));
  return {{"eh_force.csv", std::move(fq)}, {"eh_force_closed.csv", std::move(fc)}, {"eh_slowdown_scale.csv", std::move(t0)}};
}

std::vector<NamedCurve> run_ness(const Ctx& x) {
  const auto& c = x.cfg;
  const auto exps = c.integer_list("ness", "exponents", {});
  const auto vs = sweep_values(c);
  if (vs.front() < 0.0 || vs.back() >= 1.0) fail_at(c, "sweep", "to", "speeds must lie in [0, c)");
  std::vector<NamedCurve> out;
  for (int n : exps) {
    as_config(c, "ness", "exponents", [&] {
      NessQuery{n, 0.0}.validate();
      return 0;
    });
    auto r = evaluate<double>(vs, x.threads, "v", show_plain, [&](double v) { return ness_ratio({n, v}); });
    auto cv = curve({"velocity", "c"}, {"temperature_ratio", "1"}, false);
    for (std::size_t i = 0; i < vs.size(); ++i) cv.push(vs[i], r[i]);
    cv.metadata.emplace_back("exponent", std::to_string(n));
    out.push_back({"ness_n" + std::to_string(n) + ".csv", std::move(cv)});
  }
  return out;
}

TwoPartBody build_body(const ScenarioConfig& c) {
  return {build_geometry(c), build_material(c, "material.A"), build_material(c, "material.B")};
}

std::vector<NamedCurve> run_propel(const Ctx& x) {
  const auto& c = x.cfg;
  const TwoPartBody body = build_body(c);
  const auto* janus = std::get_if<JanusBall>(&body.geometry);
  const ThermalPair th0 = build_thermal(c);
  const bool spectral = c.text("propel", "drive", "closed") == "spectral";
  const auto* metal = drude_of(body.material_b);
  const auto* diel = dielectric_of(body.material_a);
  if (!metal) fail_at(c, "material.B", "kind", "propulsion curves need a Drude metal as B");
  if (!spectral && (!janus || !diel))
    fail_at(c, "propel", "drive", "the closed form needs a janus ball with a dielectric A");
  as_config(c, "geometry", "kind", [&] {
    validate_geometry(body.geometry);
    return 0;
  });
  const auto ts = sweep_values(c);
  if (ts.front() < 0.0) fail_at(c, "sweep", "from", "temperatures must be non-negative");

  struct Point {
    double fhat, force, error;
  };
  auto pts = evaluate<Point>(ts, x.threads, "T'", show_kelvin, [&](double tb) {
    const ThermalPair th{th0.env, tb};
    const double fhat = dimensionless_drive(DriveKind::Force, th, metal->damping).value;
    if (!spectral) {
      const double sign = janus->a_on_top ? 1.0 : -1.0;
      const auto cf = janus_force_closed(diel->chi0, *metal, janus->radius, th);
      return Point{fhat, sign * cf.force, 0.0};
    }
    const auto e = propulsion_force(body, th, x.q);
    return Point{fhat, e.value, e.error};
  });

  auto fh = curve({"body_temperature", "K"}, {"F_hat", "1"}, false);
  auto fz = curve({"body_temperature", "K"}, {"force_z", "N"}, spectral);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double tk = kelvin(ts[i]);
    fh.push(tk, pts[i].fhat);
    fz.push(tk, U().force_to_n(pts[i].force), U().force_to_n(pts[i].error));
  }
  const std::string env = num(kelvin(th0.env)) + " K";
  fh.metadata.emplace_back("environment_temperature", env);
  fz.metadata.emplace_back("environment_temperature", env);
  fz.metadata.emplace_back("drive", spectral ? "spectral" : "closed");
  if (janus && diel) {
    const double pref = janus_force_closed(diel->chi0, *metal, janus->radius, th0).prefactor;
    fz.metadata.emplace_back("closed_form_prefactor_N", num(U().force_to_n(pref)));
  }
  const double peak = th0.hottest() > 0.0 ? th0.hottest() : th0.env;
  if (peak > 0.0) {
    const auto thin = body.thin_metal_check(peak);
    fz.metadata.emplace_back("skin_depth_nm", num(thin.skin_depth_nm));
    fz.metadata.emplace_back("thin_metal_valid", thin.valid ? "true" : "false");
  }
  return {{"propel_fhat.csv", std::move(fh)}, {"propel_force.csv", std::move(fz)}};
}

std::vector<NamedCurve> run_torque(const Ctx& x) {
  const auto& c = x.cfg;
  const ThermalPair th0 = build_thermal(c);
  const auto ts = sweep_values(c);
  if (ts.front() < 0.0) fail_at(c, "sweep", "from", "temperatures must be non-negative");
  const std::string env = num(kelvin(th0.env)) + " K";

  if (c.text("torque", "kind", "chiral") == "nonreciprocal") {
    const Material m = build_material(c, "material.A");
    const auto* g = std::get_if<GyrotropicSphere>(&m);
    if (!g) fail_at(c, "material.A", "kind", "the nonreciprocal torque needs a gyrotropic material");
    const auto model = c.text("torque", "model", "volume") == "clausius_mossotti" ? SphereModel::ClausiusMossotti
                                                                                 : SphereModel::Volume;
    const auto alpha = as_config(c, "material.A", "radius", [&] { return sphere_polarizability(*g, model); });
    auto tz = evaluate<Estimate>(ts, x.threads, "T'", show_kelvin, [&](double tb) {
      const auto e = nonreciprocal_torque(alpha, {th0.env, tb}, x.q);
      return Estimate{e.value.z(), e.error.z()};
    });
    auto cv = curve({"body_temperature", "K"}, {"torque_z", "N m"}, true);
    for (std::size_t i = 0; i < ts.size(); ++i)
      cv.push(kelvin(ts[i]), U().torque_to_nm(tz[i].value), U().torque_to_nm(tz[i].error));
    cv.metadata.emplace_back("environment_temperature", env);
    cv.metadata.emplace_back("model", c.text("torque", "model", "volume"));
    return {{"torque_nonreciprocal.csv", std::move(cv)}};
  }

  const TwoPartBody body = build_body(c);
  as_config(c, "geometry", "kind", [&] {
    validate_geometry(body.geometry);
    return 0;
  });
  const bool spectral = c.text("torque", "drive", "closed") == "spectral";
  const auto* w = std::get_if<DualWrench>(&body.geometry);
  const auto* metal = drude_of(body.material_a);
  const auto* diel = dielectric_of(body.material_b);
  if (!metal) fail_at(c, "material.A", "kind", "chiral torque curves need a Drude metal as A");
  if (!spectral && (!w || !diel))
    fail_at(c, "torque", "drive", "the closed form needs a wrench with dielectric tags B");
  if (spectral && !w && !x.q.allow_monte_carlo)
    fail_at(c, "quadrature", "monte_carlo", "must be true for a " + geometry_name(body.geometry));

  auto pts = evaluate<Estimate>(ts, x.threads, "T'", show_kelvin, [&](double tb) {
    const ThermalPair th{th0.env, tb};
    if (!spectral) return Estimate{small_wrench_torque(diel->chi0, *metal, w->half_length, w->tag_length, w->area_a,
                                                       w->area_b, th)
                                       .torque,
                                   0.0};
    const auto e = chiral_torque(body, th, x.q);
    return Estimate{e.value.z(), e.error.z()};
  });
  auto th_curve = curve({"body_temperature", "K"}, {"tau_hat", "1"}, false);
  auto tz = curve({"body_temperature", "K"}, {"torque_z", "N m"}, spectral);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double tk = kelvin(ts[i]);
    th_curve.push(tk, dimensionless_drive(DriveKind::Torque, {th0.env, ts[i]}, metal->damping).value);
    tz.push(tk, U().torque_to_nm(pts[i].value), U().torque_to_nm(pts[i].error));
  }
  th_curve.metadata.emplace_back("environment_temperature", env);
  tz.metadata.emplace_back("environment_temperature", env);
  tz.metadata.emplace_back("drive", spectral ? "spectral" : "closed");
  if (w && diel) {
    const auto cf = small_wrench_torque(diel->chi0, *metal, w->half_length, w->tag_length, w->area_a, w->area_b, th0);
    tz.metadata.emplace_back("closed_form_prefactor_N_m", num(U().torque_to_nm(cf.tau0)));
  }
  return {{"torque_tau_hat.csv", std::move(th_curve)}, {"torque_chiral.csv", std::move(tz)}};
}

double density_natural(const Material& m) {
  if (const auto* d = drude_of(m)) return U().to_natural(Q::MassDensity, d->mass_density);
  if (const auto* d = dielectric_of(m)) return U().to_natural(Q::MassDensity, d->mass_density);
  throw DomainError("no mass density for material " + material_name(m));
}

std::vector<NamedCurve> run_relax(const Ctx& x) {
  const auto& c = x.cfg;
  const TwoPartBody body = build_body(c);
  as_config(c, "geometry", "kind", [&] {
    validate_geometry(body.geometry);
    return 0;
  });
  const double T = c.quantity("thermal", "environment", 0.0);
  if (!(T > 0.0)) fail_at(c, "thermal", "environment", "must be positive");
  const bool spectral = c.text("relax", "drive", "closed") == "spectral";
  const bool janus = std::holds_alternative<JanusBall>(body.geometry);
  const auto* w = std::get_if<DualWrench>(&body.geometry);
  if (!janus && !w) fail_at(c, "geometry", "kind", "relaxation runs need a janus ball or a wrench");

  RelaxationProblem base{body, 0.0, 0.0, 1.0, T, spectral ? DriveModel::Spectral : DriveModel::ClosedForm};
  as_config(c, janus ? "material.B" : "material.A", "kind", [&] {
    if (janus) base.mass = body_mass(body);
    else base.moment_of_inertia = moment_of_inertia(*w, density_natural(body.material_a), density_natural(body.material_b));
    return 0;
  });
  const DrudeMetal* metal = drude_of(janus ? body.material_b : body.material_a);
  if (!metal) fail_at(c, janus ? "material.B" : "material.A", "kind", "relaxation needs a Drude metal here");

  std::vector<double> u0s;
  if (c.has_section("sweep")) u0s = sweep_values(c);
  else u0s = {c.real("relax", "u0", 2.0)};
  for (double u : u0s)
    if (!(u > 0.0)) fail_at(c, c.has_section("sweep") ? "sweep" : "relax", c.has_section("sweep") ? "from" : "u0",
                            "temperature ratios must be positive");

  auto res = evaluate<TerminalResult>(u0s, x.threads, "u0", show_plain, [&](double u0) {
    RelaxationProblem p = base;
    p.u0 = u0;
    return janus ? terminal_velocity(p, x.q) : terminal_angular_velocity(p, x.q);
  });
  const Q unit_q = janus ? Q::Velocity : Q::AngularFrequency;
  auto term = curve({"u0", "1"}, {janus ? "terminal_velocity" : "terminal_angular_velocity", janus ? "m/s" : "rad/s"},
                    true);
  for (std::size_t i = 0; i < u0s.size(); ++i)
    term.push(u0s[i], U().to_si(unit_q, res[i].value), U().to_si(unit_q, res[i].error));
  term.metadata.emplace_back("environment_temperature", num(kelvin(T)) + " K");
  term.metadata.emplace_back("drive", spectral ? "spectral" : "closed");
  const CoolingModel cm{*metal};
  term.metadata.emplace_back("cooling_time_scale_s", num(U().time_to_s(cooling_time_scale(cm, T))));
  if (u0s.size() == 1 && u0s[0] != 1.0) {
    term.metadata.emplace_back(janus ? "prefactor_m_per_s" : "prefactor_rad_per_s",
                               num(U().to_si(unit_q, res[0].prefactor)));
    term.metadata.emplace_back("drive_integral", num(res[0].integral));
  }
  if (!cm.valid_at(T)) term.metadata.emplace_back("warning", "environment not well above the Debye temperature");

  std::vector<NamedCurve> out{{"relax_terminal.csv", std::move(term)}};

  // u(t) from the first starting ratio toward 1.
  const double u0 = u0s.front();
  if (u0 != 1.0) {
    const long long n = c.integer("relax", "trajectory_points", 50);
    if (n < 2) fail_at(c, "relax", "trajectory_points", "must be at least 2");
    std::vector<double> us(static_cast<std::size_t>(n));
    for (long long k = 0; k < n; ++k)
      us[static_cast<std::size_t>(k)] = 1.0 + (u0 - 1.0) * (1.0 - static_cast<double>(k) / static_cast<double>(n));
    auto times = evaluate<double>(us, x.threads, "u", show_plain,
                                  [&](double u) { return u == u0 ? 0.0 : cooling_time(u0, u, T, cm); });
    auto traj = curve({"time", "s"}, {"temperature_ratio", "1"}, false);
    for (std::size_t i = 0; i < us.size(); ++i) traj.push(U().time_to_s(times[i]), us[i]);
    traj.metadata.emplace_back("u0", num(u0));
    out.push_back({"relax_trajectory.csv", std::move(traj)});
  }
  return out;
}

std::vector<NamedCurve> run_sweep(const Ctx& x) {
  const auto& c = x.cfg;
  const auto g = build_geometry(c);
  const auto ws = sweep_values(c);
  if (!(ws.front() > 0.0)) fail_at(c, "sweep", "from", "omega_a must be positive");
  std::vector<NamedCurve> out;
  if (const auto* j = std::get_if<JanusBall>(&g)) {
    auto v = evaluate<Estimate>(ws, x.threads, "omega_a", show_plain,
                                [&](double wa) { return janus_scaled_IAB(wa, j->a_on_top, x.q); });
    auto cv = curve({"omega_a", "1"}, {"8_pi_a_I_AB", "1"}, true);
    for (std::size_t i = 0; i < ws.size(); ++i) cv.push(ws[i], v[i].value, v[i].error);
    cv.metadata.emplace_back("a_on_top", j->a_on_top ? "true" : "false");
    cv.metadata.emplace_back("small_limit", "-8 pi (omega a)^8 / 108");
    out.push_back({"janus_profile.csv", std::move(cv)});
    if (x.q.allow_monte_carlo) {
      // The oracle's own stratum loop is thread-count invariant, so it gets the workers.
      QuadratureSpec q = x.q;
      q.threads = x.threads;
      auto mc = curve({"omega_a", "1"}, {"8_pi_a_I_AB_monte_carlo", "1"}, true);
      const JanusBall unit{1.0, j->a_on_top};
      for (double wa : ws) {
        const auto e = mc_pair_oracle(unit, wa, PairKind::IAB, q);
        mc.push(wa, 8.0 * kPi * e.value.z(), 8.0 * kPi * e.error.z());
      }
      mc.metadata.emplace_back("samples", std::to_string(q.mc_samples));
      out.push_back({"janus_profile_mc.csv", std::move(mc)});
    }
    return out;
  }
  if (!std::holds_alternative<DualWrench>(g)) fail_at(c, "geometry", "kind", "omega_a sweeps need a janus or wrench");
  for (const auto& [label, ratio] : std::vector<std::pair<std::string, double>>{{"0.5", 0.5}, {"1", 1.0}, {"2", 2.0}}) {
    auto v = evaluate<Estimate>(ws, x.threads, "omega_a", show_plain,
                                [&, r = ratio](double wa) { return wrench_jhat(wa, r * wa, x.q); });
    auto cv = curve({"omega_a", "1"}, {"J_hat", "1"}, true);
    for (std::size_t i = 0; i < ws.size(); ++i) cv.push(ws[i], v[i].value, v[i].error);
    cv.metadata.emplace_back("b_over_a", label);
    out.push_back({"wrench_jhat_b" + label + ".csv", std::move(cv)});
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

const std::vector<std::string_view>& subcommands() {
  static const std::vector<std::string_view> s{"friction", "eh", "ness", "propel", "torque", "relax", "sweep"};
  return s;
}

ScenarioConfig resolve_config(const ScenarioConfig& cfg, std::string_view sub, const RunOptions& opt) {
  ScenarioConfig c = cfg;
  resolve_quadrature(c, opt);
  if (sub == "friction") {
    def(c, "friction", "mechanism", "all");
    def(c, "friction", "alpha0", "36", "a0^3");
    def(c, "friction", "sigma_plate", num(dc_conductivity(gold())), "eV");
    def(c, "friction", "separation", "10", "nm");
    resolve_sweep(c, {"velocity", "1000", "1e8", "m/s", 26, "log"});
  } else if (sub == "eh") {
    def(c, "eh", "alpha0", "36", "a0^3");
    def(c, "eh", "mass", "196.96657", "u");
    def(c, "eh", "velocity", "1000", "m/s");
    def(c, "eh", "velocity_ratio", "0.9");
    def(c, "eh", "temperature", "30000", "K");
    resolve_sweep(c, {"environment_temperature", "10", "100000", "K", 41, "log"});
  } else if (sub == "ness") {
    def(c, "ness", "exponents", "-6, -3, 3");
    resolve_sweep(c, {"velocity", "0", "0.9", "c", 91, "linear"});
  } else if (sub == "propel") {
    const std::string kind = resolve_geometry(c, "janus");
    resolve_material(c, "material.A", kind == "janus" ? "dielectric:1" : "gold");
    resolve_material(c, "material.B", kind == "janus" ? "gold" : "dielectric:1");
    resolve_thermal(c);
    def(c, "propel", "drive", "closed");
    resolve_sweep(c, {"body_temperature", "0", "900", "K", 46, "linear"});
  } else if (sub == "torque") {
    def(c, "torque", "kind", "chiral");
    if (c.text("torque", "kind", "") == "nonreciprocal") {
      if (c.has("torque", "drive")) fail_at(c, "torque", "drive", "only applies to the chiral torque");
      if (c.has_section("geometry")) fail_at(c, "geometry", "kind", "the nonreciprocal torque uses a sphere from [material.A]");
      def(c, "torque", "model", "volume");
      if (!c.has("material.A", "preset") && !c.has("material.A", "kind")) c.set("material.A", "kind", "gyrotropic");
      resolve_material(c, "material.A", "gold");
    } else {
      if (c.has("torque", "model")) fail_at(c, "torque", "model", "only applies to the nonreciprocal torque");
      const std::string kind = resolve_geometry(c, "wrench");
      resolve_material(c, "material.A", "gold");
      resolve_material(c, "material.B", kind == "janus" ? "gold" : "dielectric:1");
      def(c, "torque", "drive", "closed");
    }
    resolve_thermal(c);
    resolve_sweep(c, {"body_temperature", "0", "900", "K", 46, "linear"});
  } else if (sub == "relax") {
    const std::string kind = resolve_geometry(c, "janus");
    resolve_material(c, "material.A", kind == "janus" ? "dielectric:1" : "gold");
    resolve_material(c, "material.B", kind == "janus" ? "gold" : "dielectric:1");
    def(c, "thermal", "environment", "300", "K");
    if (c.has("thermal", "body")) fail_at(c, "thermal", "body", "relax starts from [relax] u0 instead");
    if (c.has_section("sweep")) {
      if (c.has("relax", "u0")) fail_at(c, "relax", "u0", "conflicts with the u0 sweep");
      resolve_sweep(c, {"u0", "2", "2", "", 1, "linear"});
    } else {
      def(c, "relax", "u0", "2");
    }
    def(c, "relax", "drive", "closed");
    def(c, "relax", "trajectory_points", "50");
  } else if (sub == "sweep") {
    resolve_geometry(c, "janus");
    resolve_sweep(c, {"omega_a", "0.01", "1000", "", 41, "log"});
  } else {
    throw ConfigError("unknown subcommand '" + std::string(sub) + "'; did you mean '" +
                          nearest(sub, subcommands()) + "'?",
                      0, 0);
  }

  // Sections the subcommand never reads are almost certainly a mistake.
  static const std::vector<std::pair<std::string_view, std::vector<std::string_view>>> used{
      {"friction", {"friction", "sweep", "quadrature"}},
      {"eh", {"eh", "sweep", "quadrature"}},
      {"ness", {"ness", "sweep", "quadrature"}},
      {"propel", {"propel", "geometry", "material.A", "material.B", "thermal", "sweep", "quadrature"}},
      {"torque", {"torque", "geometry", "material.A", "material.B", "thermal", "sweep", "quadrature"}},
      {"relax", {"relax", "geometry", "material.A", "material.B", "thermal", "sweep", "quadrature"}},
      {"sweep", {"geometry", "sweep", "quadrature"}},
  };
  for (const auto& [name, secs] : used) {
    if (name != sub) continue;
    for (const auto& s : c.sections)
      if (std::find(secs.begin(), secs.end(), s.name) == secs.end())
        throw ConfigError("section [" + s.name + "] is not used by '" + std::string(sub) + "'", s.line, 1, s.name);
  }
  build_quadrature(c);
  return c;
}

std::vector<NamedCurve> compute_scenario(const ScenarioConfig& resolved, std::string_view sub, const RunOptions& opt) {
  const Ctx x{resolved, build_quadrature(resolved), std::max(1u, opt.threads)};
  if (sub == "friction") return run_friction(x);
  if (sub == "eh") return run_eh(x);
  if (sub == "ness") return run_ness(x);
  if (sub == "propel") return run_propel(x);
  if (sub == "torque") return run_torque(x);
  if (sub == "relax") return run_relax(x);
  if (sub == "sweep") return run_sweep(x);
  throw ConfigError("unknown subcommand '" + std::string(sub) + "'", 0, 0);
}

std::vector<std::string> run_scenario(const ScenarioConfig& cfg, std::string_view sub, const RunOptions& opt) {
  const ScenarioConfig resolved = resolve_config(cfg, sub, opt);
  auto curves = compute_scenario(resolved, sub, opt);
  CurveHeader h;
  h.tool_version = FLUCT_VERSION;
  h.config_hash = resolved.hash();
  h.seed = build_quadrature(resolved).rng_seed;
  h.timestamp = opt.timestamp.empty() ? utc_timestamp() : opt.timestamp;
  h.config_echo = "# subcommand: " + std::string(sub) + "\n" + resolved.serialize();
  std::filesystem::create_directories(opt.out_dir);
  std::vector<std::string> paths;
  for (const auto& nc : curves) {
    const std::string path = (std::filesystem::path(opt.out_dir) / nc.file).string();
    write_curve_file(path, nc.curve, h);
    paths.push_back(path);
  }
  return paths;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const std::invalid_argument*>(&e))
    return 2;
  if (dynamic_cast<const NumericalFailure*>(&e) || dynamic_cast<const ConvergenceError*>(&e)) return 3;
  return 1;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace fluct::cli
