#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace qlga {

// Parse an angle in radians.  Accepts plain decimals ("0.5", "-1e-3") and
// pi-literals ("pi", "2pi", "pi/6", "-3pi/4", "2pi/3").
double parse_angle(const std::string& text);

// Shortest representation of a double that round-trips; used for JSON.
std::string format_shortest(double v);
// Fixed 17-significant-digit representation; used for CSV.
std::string format_g17(double v);

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

// Comma-separated, header row first, %.17g floats, every line terminated
// with '\n'.  Deterministic bytes for identical input.
std::string to_csv(const Table& table);

}  // namespace qlga
