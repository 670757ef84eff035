#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace fluct::cli {

struct Column {
  std::string name;
  std::string unit;  // "1" for dimensionless
};

/// Sampled result y(x) with optional absolute error, the unit of exchange for
/// every CSV the tool writes.
struct ScalarCurve {
  Column abscissa;
  Column value;
  bool has_error = false;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> err;
  /// Extra "# key: value" header lines, in order.
  std::vector<std::pair<std::string, std::string>> metadata;

  void push(double xi, double yi, double ei = 0.0);
  std::size_t size() const { return x.size(); }

  /// Throws std::invalid_argument unless x is strictly increasing and every
  /// number is finite.
  void validate() const;
};

struct CurveHeader {
  std::string tool_version;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string timestamp;
  std::string config_echo;  // serialized resolved config
};

/// Shortest round-trip decimal form.
std::string format_number(double v);

/// Header lines, column line, then the body.
void write_curve(std::ostream& out, const ScalarCurve& c, const CurveHeader& h);
void write_curve_file(const std::string& path, const ScalarCurve& c, const CurveHeader& h);

/// The body alone (column line and rows); this is the part that is
/// byte-identical across runs.
std::string curve_body(const ScalarCurve& c);

struct ParsedCurve {
  ScalarCurve curve;
  CurveHeader header;
};

/// Inverse of write_curve. Throws std::invalid_argument on malformed input.
ParsedCurve read_curve(std::istream& in);
ParsedCurve read_curve_file(const std::string& path);

}  // namespace fluct::cli
