#include "qlga/textio.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qlga/state.hpp"

namespace qlga {

double parse_angle(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty angle");

  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string::npos) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad angle: " + text);
    return v;
  }

  double sign = 1.0;
  std::string coef = s.substr(0, pi_pos);
  if (!coef.empty() && (coef[0] == '+' || coef[0] == '-')) {
    if (coef[0] == '-') sign = -1.0;
    coef = coef.substr(1);
  }
  double numerator = coef.empty() ? 1.0 : std::stod(coef);
  std::string rest = s.substr(pi_pos + 2);
  double denominator = 1.0;
  if (!rest.empty()) {
    if (rest[0] != '/') throw std::invalid_argument("bad angle: " + text);
    denominator = std::stod(rest.substr(1));
    if (denominator == 0) throw std::invalid_argument("zero denominator: " + text);
  }
  return sign * numerator * kPi / denominator;
}

std::string format_shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {
std::string cell_csv(const Cell& cell) {
  if (std::holds_alternative<std::int64_t>(cell))
    return std::to_string(std::get<std::int64_t>(cell));
  if (std::holds_alternative<double>(cell))
    return format_g17(std::get<double>(cell));
  return std::get<std::string>(cell);
}
}  // namespace

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw std::logic_error("csv row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += cell_csv(row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace qlga
