#pragma once

#include "gsqg/field.hpp"

#include <istream>
#include <string>

namespace gsqg {

// key = value lines; '#' starts a comment. Keys are the SimConfig field names;
// level_values takes "c1, c2". beta, n, t_end and initial_data are required.
// Unknown, duplicate, missing or malformed keys throw ConfigError with key and line.
SimConfig parse_config(std::istream& in);
SimConfig parse_config_string(const std::string& text);
SimConfig load_config(const std::string& path);

// Sets one field from its text form; line is reported in errors.
void apply_override(SimConfig& cfg, const std::string& key, const std::string& value, int line = 0);

// Every key, one per line, with values printed to round-trip exactly.
std::string dump_config(const SimConfig& cfg);

}  // namespace gsqg
