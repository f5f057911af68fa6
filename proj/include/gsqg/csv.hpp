#pragma once

#include "gsqg/diagnostics.hpp"
#include "gsqg/field.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace gsqg {

inline constexpr const char* kDiagHeader =
    "time,sup_theta,l2_theta,sup_grad,holder_seminorm,theta_at_origin,opening_angle,level_distance,"
    "holder_time_integral,sup_velocity";

// Shortest text that parses back to the same double.
std::string format_double(double v);
// Empty string for none.
std::string format_optional(const std::optional<double>& v);

void write_diag_row(std::ostream& out, const DiagRecord& r);

// Splits one CSV line on commas (no quoting).
std::vector<std::string> split_csv_line(const std::string& line);

// 8-byte header (n as little-endian u32, reserved u32 = 0), then n^2 little-endian f64, row-major.
void write_snapshot(const std::string& path, const ScalarField& f);
ScalarField read_snapshot(const std::string& path, double box_length);

}  // namespace gsqg
