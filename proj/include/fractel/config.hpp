#pragma once

#include <map>
#include <string>

#include "fractel/basis.hpp"
#include "fractel/solver.hpp"

namespace fractel {

/// Flat key = value configuration. One pair per line, '#' starts a comment,
/// blank lines are skipped, later assignments win. Values stay strings until
/// a typed getter converts them.
class Config {
public:
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& key) const;

    /// Throw ConfigError naming the key when it is absent or, for the typed
    /// getters, when the value does not convert cleanly.
    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    int get_int(const std::string& key) const;

    /// Fallback flavors never throw for a missing key.
    std::string get_string(const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

/// Builders for the solver inputs. Expression values are parsed here, so a
/// syntax error surfaces as ConfigError naming the key that held the text.
/// Keys: problem.gamma, problem.gamma1..3, problem.phi1, problem.phi2,
/// problem.psi1, problem.psi2, problem.f; grid.a, grid.b, grid.M;
/// mesh.T, mesh.N. gamma1/gamma2 default to 0, gamma3 to 1, grid.a to 0.
ProblemSpec problem_from_config(const Config& cfg);
SpaceGrid grid_from_config(const Config& cfg);
TimeMesh mesh_from_config(const Config& cfg);

}  // namespace fractel
