#include "gsqg/config.hpp"

#include "gsqg/csv.hpp"
#include "gsqg/errors.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

namespace gsqg {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

double to_double(const std::string& key, const std::string& v, int line) {
    double x = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size() || v.empty())
        throw ConfigError(key + ": expected a number, got '" + v + "'", key, line);
    return x;
}

int to_int(const std::string& key, const std::string& v, int line) {
    int x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size() || v.empty())
        throw ConfigError(key + ": expected an integer, got '" + v + "'", key, line);
    return x;
}

struct Field {
    const char* key;
    std::function<void(SimConfig&, const std::string&, int)> set;
    std::function<std::string(const SimConfig&)> get;
};

#define GSQG_REAL(name)                                                                                  \
    Field {                                                                                              \
        #name, [](SimConfig& c, const std::string& v, int l) { c.name = to_double(#name, v, l); },       \
            [](const SimConfig& c) { return format_double(c.name); }                                     \
    }
#define GSQG_INT(name)                                                                                   \
    Field {                                                                                              \
        #name, [](SimConfig& c, const std::string& v, int l) { c.name = to_int(#name, v, l); },          \
            [](const SimConfig& c) { return std::to_string(c.name); }                                    \
    }

const std::vector<Field>& fields() {
    static const std::vector<Field> f{
        GSQG_REAL(beta),
        GSQG_INT(n),
        GSQG_REAL(box_length),
        GSQG_REAL(dt),
        GSQG_REAL(t_end),
        GSQG_REAL(dealias),
        GSQG_REAL(cfl_max),
        Field{"initial_data",
              [](SimConfig& c, const std::string& v, int l) {
                  try {
                      c.initial_data = parse_initial_kind(v);
                  } catch (const ConfigError& e) {
                      throw ConfigError(e.what(), e.key(), l);
                  }
              },
              [](const SimConfig& c) { return to_string(c.initial_data); }},
        GSQG_REAL(alpha0),
        GSQG_REAL(delta0),
        GSQG_REAL(a0),
        GSQG_REAL(b0),
        Field{"profile",
              [](SimConfig& c, const std::string& v, int l) {
                  try {
                      c.profile = parse_profile(v);
                  } catch (const ConfigError& e) {
                      throw ConfigError(e.what(), e.key(), l);
                  }
              },
              [](const SimConfig& c) { return to_string(c.profile); }},
        GSQG_REAL(amplitude),
        GSQG_REAL(width),
        GSQG_REAL(offset),
        GSQG_REAL(cutoff_radius),
        GSQG_INT(mode_k1),
        GSQG_INT(mode_k2),
        GSQG_REAL(sigma),
        Field{"level_values",
              [](SimConfig& c, const std::string& v, int l) {
                  const auto comma = v.find(',');
                  if (comma == std::string::npos)
                      throw ConfigError("level_values: expected 'c1, c2', got '" + v + "'", "level_values", l);
                  c.level_values = {to_double("level_values", trim(v.substr(0, comma)), l),
                                    to_double("level_values", trim(v.substr(comma + 1)), l)};
              },
              [](const SimConfig& c) {
                  return format_double(c.level_values.first) + ", " + format_double(c.level_values.second);
              }},
        GSQG_INT(diag_every),
        GSQG_REAL(contour_eps),
        GSQG_REAL(fit_radius),
    };
    return f;
}

#undef GSQG_REAL
#undef GSQG_INT

const Field* find_field(const std::string& key) {
    for (const auto& f : fields())
        if (key == f.key) return &f;
    return nullptr;
}

}  // namespace

void apply_override(SimConfig& cfg, const std::string& key, const std::string& value, int line) {
    const Field* f = find_field(key);
    if (!f) throw ConfigError("unknown key '" + key + "'", key, line);
    f->set(cfg, trim(value), line);
}

SimConfig parse_config(std::istream& in) {
    SimConfig cfg;
    std::set<std::string> seen;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw.substr(0, raw.find('#'));
        s = trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line) + ": expected key = value", "", line);
        const std::string key = trim(s.substr(0, eq));
        if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'", key, line);
        apply_override(cfg, key, s.substr(eq + 1), line);
    }
    for (const char* req : {"beta", "n", "t_end", "initial_data"})
        if (!seen.count(req)) throw ConfigError(std::string("missing required key '") + req + "'", req, 0);
    cfg.validate();
    return cfg;
}

SimConfig parse_config_string(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'", "config", 0);
    return parse_config(in);
}

std::string dump_config(const SimConfig& cfg) {
    std::string out;
    for (const auto& f : fields()) out += std::string(f.key) + " = " + f.get(cfg) + "\n";
    return out;
}

}  // namespace gsqg
