#include "fractel/config.hpp"

#include <cctype>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fractel/errors.hpp"

namespace fractel {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

Expression parse_expr_value(const Config& cfg, const std::string& key) {
    const std::string text = cfg.get_string(key);
    try {
        return parse(text);
    } catch (const ParseError& pe) {
        throw ConfigError(key, pe.what());
    }
}

}  // namespace

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

Config Config::from_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno),
                              "expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(lineno),
                              "empty key before '='");
        }
        cfg.kv_[key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

bool Config::has(const std::string& key) const {
    return kv_.find(key) != kv_.end();
}

std::string Config::get_string(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError(key, "missing");
    return it->second;
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
    const std::string v = get_string(key);
    char* end = nullptr;
    const double parsed = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(parsed)) {
        throw ConfigError(key, "expected a finite number, got '" + v + "'");
    }
    return parsed;
}

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) const {
    const std::string v = get_string(key);
    char* end = nullptr;
    const long parsed = std::strtol(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size()) {
        throw ConfigError(key, "expected an integer, got '" + v + "'");
    }
    if (parsed < INT_MIN || parsed > INT_MAX) {
        throw ConfigError(key, "integer out of range: '" + v + "'");
    }
    return static_cast<int>(parsed);
}

int Config::get_int(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

ProblemSpec problem_from_config(const Config& cfg) {
    ProblemSpec p;
    p.gamma = cfg.get_double("problem.gamma");
    p.gamma1 = cfg.get_double("problem.gamma1", 0.0);
    p.gamma2 = cfg.get_double("problem.gamma2", 0.0);
    p.gamma3 = cfg.get_double("problem.gamma3", 1.0);
    if (cfg.has("problem.phi1")) p.phi1 = parse_expr_value(cfg, "problem.phi1");
    if (cfg.has("problem.phi2")) p.phi2 = parse_expr_value(cfg, "problem.phi2");
    if (cfg.has("problem.psi1")) p.psi1 = parse_expr_value(cfg, "problem.psi1");
    if (cfg.has("problem.psi2")) p.psi2 = parse_expr_value(cfg, "problem.psi2");
    if (cfg.has("problem.f")) p.f = parse_expr_value(cfg, "problem.f");
    return p;
}

SpaceGrid grid_from_config(const Config& cfg) {
    const double a = cfg.get_double("grid.a", 0.0);
    const double b = cfg.get_double("grid.b");
    const int M = cfg.get_int("grid.M");
    try {
        return make_grid(a, b, M);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError("grid", e.what());
    }
}

TimeMesh mesh_from_config(const Config& cfg) {
    const double T = cfg.get_double("mesh.T", 1.0);
    const int N = cfg.get_int("mesh.N");
    try {
        return make_mesh(T, N);
    } catch (const Error& e) {
        throw ConfigError("mesh", e.what());
    }
}

}  // namespace fractel
