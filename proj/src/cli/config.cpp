#include "fluct/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace fluct::cli {

namespace {

using VT = ValueType;
using Q = Quantity;

std::vector<KeySpec> material_keys() {
  return {
      {"preset", VT::Text},
      {"kind", VT::Text, Q::Length, {"drude", "dielectric", "monomial", "gyrotropic"}},
      {"plasma_freq", VT::Measured, Q::Energy},
      {"damping", VT::Measured, Q::Energy},
      {"atom_density", VT::Measured, Q::NumberDensity},
      {"mass_density", VT::Measured, Q::MassDensity},
      {"chi0", VT::Real},
      {"exponent", VT::Integer},
      {"amplitude", VT::Real},
      {"magnetic_field", VT::Measured, Q::MagneticField},
      {"radius", VT::Measured, Q::Length},
  };
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

const SectionSpec* find_section(std::string_view name) {
  for (const auto& s : config_schema())
    if (s.name == name) return &s;
  return nullptr;
}

const KeySpec* find_key(const SectionSpec& s, std::string_view key) {
  for (const auto& k : s.keys)
    if (k.key == key) return &k;
  return nullptr;
}

const KeySpec& spec_of(std::string_view section, std::string_view key) {
  const SectionSpec* s = find_section(section);
  const KeySpec* k = s ? find_key(*s, key) : nullptr;
  if (!k) throw std::logic_error("config: no schema entry for [" + std::string(section) + "] " + std::string(key));
  return *k;
}

bool parse_double(std::string_view s, double& out) {
  const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
  return r.ec == std::errc{} && r.ptr == s.data() + s.size();
}

bool parse_int(std::string_view s, long long& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
  return r.ec == std::errc{} && r.ptr == s.data() + s.size();
}

// Split "<number><unit>" at the end of the numeric prefix.
std::pair<std::string_view, std::string_view> split_number(std::string_view s) {
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{}) return {std::string_view{}, s};
  const auto n = static_cast<std::size_t>(r.ptr - s.data());
  return {s.substr(0, n), trim(s.substr(n))};
}

void check_unit(const ConfigEntry& e, const std::string& section, Quantity q) {
  try {
    parse_quantity(e.value + " " + e.unit, q);
  } catch (const std::invalid_argument&) {
    throw ConfigError("[" + section + "] " + e.key + ": unknown unit '" + e.unit + "' (expected one of: " +
                          accepted_units(q) + ")",
                      e.line, e.column, section, e.key);
  }
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0u : 1u)});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

const std::vector<SectionSpec>& config_schema() {
  static const std::vector<SectionSpec> schema{
      {"material.A", material_keys()},
      {"material.B", material_keys()},
      {"geometry",
       {
           {"preset", VT::Text},
           {"kind", VT::Text, Q::Length, {"janus", "wrench", "flags"}},
           {"radius", VT::Measured, Q::Length},
           {"a_on_top", VT::Boolean},
           {"half_length", VT::Measured, Q::Length},
           {"tag_length", VT::Measured, Q::Length},
           {"wire_radius", VT::Measured, Q::Length},
           {"tag_radius", VT::Measured, Q::Length},
           {"flag_width", VT::Measured, Q::Length},
           {"flag_height", VT::Measured, Q::Length},
           {"thickness", VT::Measured, Q::Length},
       }},
      {"thermal",
       {
           {"environment", VT::Measured, Q::Temperature},
           {"body", VT::Measured, Q::Temperature},
       }},
      {"quadrature",
       {
           {"rel_tol", VT::Real},
           {"abs_tol", VT::Real},
           {"max_subdivisions", VT::Integer},
           {"series_switch", VT::Real},
           {"series_terms", VT::Integer},
           {"precision_bits", VT::Integer},
           {"mc_samples", VT::Integer},
           {"seed", VT::Integer},
           {"monte_carlo", VT::Boolean},
           {"threads", VT::Integer},
       }},
      {"sweep",
       {
           {"variable", VT::Text, Q::Length, {"body_temperature", "environment_temperature", "velocity", "omega_a", "u0"}},
           {"from", VT::Swept},
           {"to", VT::Swept},
           {"points", VT::Integer},
           {"spacing", VT::Text, Q::Length, {"linear", "log"}},
       }},
      {"friction",
       {
           {"mechanism", VT::Text, Q::Length, {"image_lag", "radiation_reaction", "intrinsic_dissipation", "all"}},
           {"alpha0", VT::Measured, Q::Volume},
           {"sigma_plate", VT::Measured, Q::Conductivity},
           {"sigma_particle", VT::Measured, Q::Conductivity},
           {"separation", VT::Measured, Q::Length},
       }},
      {"eh",
       {
           {"alpha0", VT::Measured, Q::Volume},
           {"mass", VT::Measured, Q::Mass},
           {"velocity", VT::Measured, Q::Velocity},
           {"velocity_ratio", VT::Real},
           {"temperature", VT::Measured, Q::Temperature},
       }},
      {"ness", {{"exponents", VT::IntegerList}}},
      {"propel", {{"drive", VT::Text, Q::Length, {"closed", "spectral"}}}},
      {"torque",
       {
           {"kind", VT::Text, Q::Length, {"chiral", "nonreciprocal"}},
           {"drive", VT::Text, Q::Length, {"closed", "spectral"}},
           {"model", VT::Text, Q::Length, {"volume", "clausius_mossotti"}},
       }},
      {"relax",
       {
           {"u0", VT::Real},
           {"drive", VT::Text, Q::Length, {"closed", "spectral"}},
           {"trajectory_points", VT::Integer},
       }},
  };
  return schema;
}

std::optional<Quantity> sweep_variable_quantity(std::string_view v) {
  if (v == "body_temperature" || v == "environment_temperature") return Q::Temperature;
  if (v == "velocity") return Q::Velocity;
  if (v == "omega_a" || v == "u0") return std::nullopt;
  throw std::invalid_argument("unknown sweep variable '" + std::string(v) + "'");
}

std::string nearest(std::string_view word, const std::vector<std::string_view>& candidates) {
  std::string best;
  std::size_t best_d = std::string::npos;
  for (auto c : candidates) {
    const std::size_t d = edit_distance(word, c);
    if (d < best_d) {
      best_d = d;
      best = std::string(c);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------

const ConfigEntry* ScenarioConfig::find(std::string_view section, std::string_view key) const {
  for (const auto& s : sections)
    if (s.name == section)
      for (const auto& e : s.entries)
        if (e.key == key) return &e;
  return nullptr;
}

bool ScenarioConfig::has_section(std::string_view section) const {
  return std::any_of(sections.begin(), sections.end(), [&](const auto& s) { return s.name == section; });
}

std::string ScenarioConfig::text(std::string_view section, std::string_view key, std::string_view fallback) const {
  const auto* e = find(section, key);
  return e ? e->value : std::string(fallback);
}

long long ScenarioConfig::integer(std::string_view section, std::string_view key, long long fallback) const {
  const auto* e = find(section, key);
  long long v = fallback;
  if (e && !parse_int(e->value, v)) throw ConfigError("not an integer: " + e->value, e->line, e->column);
  return v;
}

double ScenarioConfig::real(std::string_view section, std::string_view key, double fallback) const {
  const auto* e = find(section, key);
  double v = fallback;
  if (e && !parse_double(e->value, v)) throw ConfigError("not a number: " + e->value, e->line, e->column);
  return v;
}

bool ScenarioConfig::boolean(std::string_view section, std::string_view key, bool fallback) const {
  const auto* e = find(section, key);
  return e ? e->value == "true" : fallback;
}

double ScenarioConfig::quantity(std::string_view section, std::string_view key, double fallback) const {
  const auto* e = find(section, key);
  if (!e) return fallback;
  return parse_quantity(e->value + " " + e->unit, spec_of(section, key).quantity);
}

double ScenarioConfig::swept(std::string_view section, std::string_view key, std::optional<Quantity> q,
                             double fallback) const {
  const auto* e = find(section, key);
  if (!e) return fallback;
  if (!q) return real(section, key, fallback);
  return parse_quantity(e->value + " " + e->unit, *q);
}

std::vector<int> ScenarioConfig::integer_list(std::string_view section, std::string_view key,
                                              std::vector<int> fallback) const {
  const auto* e = find(section, key);
  if (!e) return fallback;
  std::vector<int> out;
  std::stringstream ss(e->value);
  for (std::string item; std::getline(ss, item, ',');) {
    long long v = 0;
    if (!parse_int(trim(item), v)) throw ConfigError("not an integer list: " + e->value, e->line, e->column);
    out.push_back(static_cast<int>(v));
  }
  return out;
}

void ScenarioConfig::set(std::string_view section, std::string_view key, std::string value, std::string unit) {
  auto it = std::find_if(sections.begin(), sections.end(), [&](const auto& s) { return s.name == section; });
  if (it == sections.end()) {
    sections.push_back({std::string(section), {}, 0});
    it = std::prev(sections.end());
  }
  for (auto& e : it->entries)
    if (e.key == key) {
      e.value = std::move(value);
      e.unit = std::move(unit);
      return;
    }
  it->entries.push_back({std::string(key), std::move(value), std::move(unit), 0, 0});
}

std::string ScenarioConfig::serialize() const {
  std::string out;
  for (const auto& s : sections) {
    if (!out.empty()) out += '\n';
    out += "[" + s.name + "]\n";
    for (const auto& e : s.entries) {
      out += e.key + " = " + e.value;
      if (!e.unit.empty()) out += " " + e.unit;
      out += '\n';
    }
  }
  return out;
}

std::uint64_t ScenarioConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// ---------------------------------------------------------------------------

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  ConfigSection* current = nullptr;
  const SectionSpec* current_spec = nullptr;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    const int indent = static_cast<int>(raw.find_first_not_of(" \t")) + 1;
    if (line.empty()) {
      if (eol == text.size()) break;
      continue;
    }

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no, indent);
      const std::string name(trim(line.substr(1, line.size() - 2)));
      current_spec = find_section(name);
      if (!current_spec) {
        std::vector<std::string_view> names;
        for (const auto& s : config_schema()) names.push_back(s.name);
        throw ConfigError("unknown section [" + name + "]; did you mean [" + nearest(name, names) + "]?", line_no,
                          indent + 1, name);
      }
      if (cfg.has_section(name)) throw ConfigError("duplicate section [" + name + "]", line_no, indent, name);
      cfg.sections.push_back({name, {}, line_no});
      current = &cfg.sections.back();
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no, indent);
    if (!current) throw ConfigError("key outside of any section", line_no, indent);
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view rest = trim(line.substr(eq + 1));
    const int value_col = indent + static_cast<int>(line.size() - line.substr(eq + 1).size()) +
                          static_cast<int>(line.substr(eq + 1).find_first_not_of(" \t"));
    const KeySpec* spec = find_key(*current_spec, key);
    if (!spec) {
      std::vector<std::string_view> keys;
      for (const auto& k : current_spec->keys) keys.push_back(k.key);
      throw ConfigError("unknown key '" + key + "' in [" + current->name + "]; did you mean '" + nearest(key, keys) +
                            "'?",
                        line_no, indent, current->name, key);
    }
    if (std::any_of(current->entries.begin(), current->entries.end(), [&](const auto& e) { return e.key == key; }))
      throw ConfigError("duplicate key '" + key + "'", line_no, indent, current->name, key);
    if (rest.empty()) throw ConfigError("missing value for '" + key + "'", line_no, value_col, current->name, key);

    ConfigEntry e{key, std::string(rest), {}, line_no, value_col};
    auto fail = [&](const std::string& why) { throw ConfigError(why, line_no, value_col, current->name, key); };
    switch (spec->type) {
      case VT::Text:
        if (!spec->choices.empty() &&
            std::find(spec->choices.begin(), spec->choices.end(), rest) == spec->choices.end())
          fail("'" + std::string(rest) + "' is not a valid " + key + "; did you mean '" +
               nearest(rest, spec->choices) + "'?");
        break;
      case VT::Integer: {
        long long v = 0;
        if (!parse_int(rest, v)) fail(key + " expects an integer, got '" + std::string(rest) + "'");
        break;
      }
      case VT::Real: {
        double v = 0.0;
        if (!parse_double(rest, v)) fail(key + " expects a dimensionless number, got '" + std::string(rest) + "'");
        break;
      }
      case VT::Boolean:
        if (rest != "true" && rest != "false") fail(key + " expects true or false");
        break;
      case VT::Measured:
      case VT::Swept: {
        const auto [num, unit] = split_number(rest);
        if (num.empty()) fail(key + " expects a number, got '" + std::string(rest) + "'");
        e.value = std::string(num);
        e.unit = std::string(unit);
        if (spec->type == VT::Measured) {
          if (e.unit.empty())
            fail("unit required for " + key + " (one of: " + accepted_units(spec->quantity) + ")");
          check_unit(e, current->name, spec->quantity);
        }
        break;
      }
      case VT::IntegerList: {
        std::string compact;
        std::stringstream ss{std::string(rest)};
        for (std::string item; std::getline(ss, item, ',');) {
          long long v = 0;
          if (!parse_int(trim(item), v)) fail(key + " expects a comma separated list of integers");
          compact += (compact.empty() ? "" : ", ") + std::string(trim(item));
        }
        e.value = compact;
        break;
      }
    }
    current->entries.push_back(std::move(e));
  }

  // The sweep bounds take their unit from the variable.
  if (cfg.has_section("sweep")) {
    const std::string var = cfg.text("sweep", "variable", "");
    for (const char* k : {"from", "to"}) {
      const auto* e = cfg.find("sweep", k);
      if (!e) continue;
      if (var.empty()) throw ConfigError(std::string("sweep '") + k + "' needs a 'variable'", e->line, e->column, "sweep", k);
      const auto q = sweep_variable_quantity(var);
      if (!q && !e->unit.empty())
        throw ConfigError("sweep variable " + var + " is dimensionless; drop the unit '" + e->unit + "'", e->line,
                          e->column, "sweep", k);
      if (q) {
        if (e->unit.empty())
          throw ConfigError(std::string("unit required for ") + k + " (one of: " + accepted_units(*q) + ")", e->line,
                            e->column, "sweep", k);
        check_unit(*e, "sweep", *q);
      }
    }
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", 0, 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace fluct::cli
