#ifndef LT_IO_HPP
#define LT_IO_HPP

#include <string>

#include <json.hpp>

#include "lt/potential.hpp"

namespace lt {

/// Shortest decimal form with 15 significant digits ("%.15g").
std::string format_number(double x);

/// x rounded to 15 significant digits, as a JSON number; infinities become
/// the strings "inf" / "-inf".
nlohmann::json json_number(double x);

/// {"family": ..., "params": {...}, "domain": "full_line" | "half_line" | [a, b]}.
/// Families: zero, square_well {depth, left, right}, poschl_teller {order,
/// center, scale}, gaussian {amplitude, center, width}, piecewise_constant
/// {breakpoints, values}, sampled {grid, values}, sum {terms}, scaled
/// {alpha, inner}, multiple {factor, inner}, mirror {inner}, even {inner},
/// positive_part {inner}, negative_part {inner}.
Potential potential_from_json(const nlohmann::json& doc);
nlohmann::json potential_to_json(const Potential& v);

/// Reads and parses a potential file; throws precondition_error with the
/// path on I/O or format problems.
Potential load_potential(const std::string& path);

}  // namespace lt

#endif  // LT_IO_HPP
