#include "fluct/cli/curve.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fluct::cli {

namespace {

std::string column_label(const Column& c) { return c.name + "[" + c.unit + "]"; }

Column parse_label(const std::string& s) {
  const auto open = s.find('[');
  if (open == std::string::npos || s.back() != ']') throw std::invalid_argument("bad column label '" + s + "'");
  return {s.substr(0, open), s.substr(open + 1, s.size() - open - 2)};
}

double parse_number(const std::string& s) {
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

}  // namespace

void ScalarCurve::push(double xi, double yi, double ei) {
  x.push_back(xi);
  y.push_back(yi);
  err.push_back(ei);
}

void ScalarCurve::validate() const {
  if (y.size() != x.size() || (has_error && err.size() != x.size()))
    throw std::invalid_argument("curve " + value.name + ": column lengths differ");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i]) || (has_error && !std::isfinite(err[i])))
      throw std::invalid_argument("curve " + value.name + ": non-finite value at " + abscissa.name + " = " +
                                  format_number(x[i]));
    if (i > 0 && !(x[i] > x[i - 1]))
      throw std::invalid_argument("curve " + value.name + ": abscissa not strictly increasing at row " +
                                  std::to_string(i));
  }
}

std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string curve_body(const ScalarCurve& c) {
  std::string out = column_label(c.abscissa) + "," + column_label(c.value);
  if (c.has_error) out += ",error[" + c.value.unit + "]";
  out += '\n';
  for (std::size_t i = 0; i < c.x.size(); ++i) {
    out += format_number(c.x[i]) + "," + format_number(c.y[i]);
    if (c.has_error) out += "," + format_number(c.err[i]);
    out += '\n';
  }
  return out;
}

void write_curve(std::ostream& out, const ScalarCurve& c, const CurveHeader& h) {
  c.validate();
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(h.config_hash));
  out << "# tool: fluct " << h.tool_version << '\n'
      << "# config_hash: " << hash << '\n'
      << "# seed: " << h.seed << '\n'
      << "# timestamp: " << h.timestamp << '\n';
  for (const auto& [k, v] : c.metadata) out << "# " << k << ": " << v << '\n';
  out << "# config:\n";
  std::stringstream echo(h.config_echo);
  for (std::string line; std::getline(echo, line);) out << (line.empty() ? "#" : "#   " + line) << '\n';
  out << curve_body(c);
}

void write_curve_file(const std::string& path, const ScalarCurve& c, const CurveHeader& h) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_curve(out, c, h);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

ParsedCurve read_curve(std::istream& in) {
  ParsedCurve p;
  bool in_echo = false;
  bool have_columns = false;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (in_echo && line == "#") {
        p.header.config_echo += "\n";
        continue;
      }
      if (in_echo && line.rfind("#   ", 0) == 0) {
        p.header.config_echo += line.substr(4) + "\n";
        continue;
      }
      in_echo = false;
      const auto colon = line.find(": ");
      if (line == "# config:") {
        in_echo = true;
      } else if (colon != std::string::npos) {
        const std::string key = line.substr(2, colon - 2), val = line.substr(colon + 2);
        if (key == "tool") {
          p.header.tool_version = val.rfind("fluct ", 0) == 0 ? val.substr(6) : val;
        } else if (key == "config_hash") {
          p.header.config_hash = std::stoull(val, nullptr, 16);
        } else if (key == "seed") {
          p.header.seed = std::stoull(val);
        } else if (key == "timestamp") {
          p.header.timestamp = val;
        } else {
          p.curve.metadata.emplace_back(key, val);
        }
      }
      continue;
    }
    const auto cells = split(line, ',');
    if (!have_columns) {
      if (cells.size() < 2 || cells.size() > 3) throw std::invalid_argument("bad column line '" + line + "'");
      p.curve.abscissa = parse_label(cells[0]);
      p.curve.value = parse_label(cells[1]);
      p.curve.has_error = cells.size() == 3;
      have_columns = true;
      continue;
    }
    if (cells.size() != (p.curve.has_error ? 3u : 2u)) throw std::invalid_argument("bad row '" + line + "'");
    p.curve.push(parse_number(cells[0]), parse_number(cells[1]), p.curve.has_error ? parse_number(cells[2]) : 0.0);
  }
  if (!have_columns) throw std::invalid_argument("no column line");
  if (!p.curve.has_error) p.curve.err.clear();
  return p;
}

ParsedCurve read_curve_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return read_curve(in);
}

}  // namespace fluct::cli
