#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fluct/units.hpp"

namespace fluct::cli {

/// Parse or validation failure, with the location of the offending text.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line, int column, std::string section = {}, std::string key = {})
      : std::runtime_error(what), line_(line), column_(column), section_(std::move(section)), key_(std::move(key)) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& section() const { return section_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  int column_;
  std::string section_;
  std::string key_;
};

enum class ValueType {
  Text,         // one of `choices`, or free text when choices is empty
  Integer,
  Real,         // dimensionless
  Boolean,      // true / false
  Measured,     // number with a unit for `quantity`
  Swept,        // number, unit checked against the [sweep] variable
  IntegerList,  // comma separated
};

struct KeySpec {
  std::string_view key;
  ValueType type;
  Quantity quantity = Quantity::Length;
  std::vector<std::string_view> choices = {};
};

struct SectionSpec {
  std::string_view name;
  std::vector<KeySpec> keys;
};

/// Grammar of every accepted section and key.
const std::vector<SectionSpec>& config_schema();

struct ConfigEntry {
  std::string key;
  std::string value;  // number or word, without the unit
  std::string unit;   // empty for unitless types
  int line = 0;
  int column = 0;
};

struct ConfigSection {
  std::string name;
  std::vector<ConfigEntry> entries;
  int line = 0;
};

class ScenarioConfig {
 public:
  std::vector<ConfigSection> sections;

  const ConfigEntry* find(std::string_view section, std::string_view key) const;
  bool has(std::string_view section, std::string_view key) const { return find(section, key) != nullptr; }
  bool has_section(std::string_view section) const;

  std::string text(std::string_view section, std::string_view key, std::string_view fallback) const;
  long long integer(std::string_view section, std::string_view key, long long fallback) const;
  double real(std::string_view section, std::string_view key, double fallback) const;
  bool boolean(std::string_view section, std::string_view key, bool fallback) const;
  /// Natural-units value of a Measured key.
  double quantity(std::string_view section, std::string_view key, double fallback) const;
  /// Natural-units value of a Swept key given the sweep quantity (nullopt for
  /// a dimensionless sweep variable).
  double swept(std::string_view section, std::string_view key, std::optional<Quantity> q, double fallback) const;
  std::vector<int> integer_list(std::string_view section, std::string_view key, std::vector<int> fallback) const;

  /// Insert or replace a value (used for command-line overrides).
  void set(std::string_view section, std::string_view key, std::string value, std::string unit = {});

  /// Canonical text: one `key = value unit` line per entry, sections in file
  /// order. parse_config(serialize()) reproduces the same config.
  std::string serialize() const;

  /// FNV-1a 64 of serialize().
  std::uint64_t hash() const;

  bool operator==(const ScenarioConfig& other) const { return serialize() == other.serialize(); }
};

/// Quantity of a sweep variable; nullopt for dimensionless ones. Throws
/// std::invalid_argument for unknown names.
std::optional<Quantity> sweep_variable_quantity(std::string_view variable);

/// Parse and validate. Unknown sections or keys, missing units, and type
/// mismatches raise ConfigError with line and column.
ScenarioConfig parse_config(std::string_view text);

/// Read a file and parse it.
ScenarioConfig load_config(const std::string& path);

/// Closest string by edit distance, for "did you mean" diagnostics.
std::string nearest(std::string_view word, const std::vector<std::string_view>& candidates);

}  // namespace fluct::cli
