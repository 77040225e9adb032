#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgns/mesh.hpp"

namespace dgns {

struct BcConfig {
    std::string kind;          // periodic | inflow_farfield | outflow | adiabatic_wall | symmetry_plane
    Vec2 shift{0, 0};          // periodic translation
    std::optional<double> p_back;
};

/// Flat key-value run configuration with one [boundary NAME] section per
/// tag. Unknown keys are rejected with line context.
struct RunConfig {
    std::string case_name;

    std::string mesh_path;          // empty: use mesh_level family / case default
    std::optional<int> mesh_level;  // built-in unit-square family
    int degree = 1;

    double cfl = 0.1;
    double dt_safety = 0.9;

    double gamma = 1.4;
    double prandtl = 0.72;
    std::optional<double> cv;
    std::string viscosity = "constant";  // constant | sutherland
    std::optional<double> mu;
    double mu_ref = 0, T_ref = 1, C_s = 0;

    std::optional<double> rho_inf, u_inf, v_inf, p_inf, p_back;

    std::string mode;  // final_time | steady (case default when empty)
    std::optional<double> final_time;
    std::optional<double> steady_tol;
    long max_steps = 100000000;
    long log_every = 1000;
    long record_every = 1;  // force-history sampling stride

    std::string output_dir = "out";
    int threads = 1;
    unsigned long seed = 0;

    std::string reference;       // stored reference to compare against
    std::string save_reference;  // store the final field as a reference
    std::string save_field;      // store the final field (restart container)
    std::string restart;         // initial condition from a stored field

    std::map<std::string, BcConfig> boundaries;

    std::string serialize() const;
};

RunConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");
RunConfig parse_config(const std::string& path);

/// Case defaults applied underneath the parsed file (paper protocol values).
void apply_case_defaults(RunConfig& cfg);

/// Post-defaults validation; throws on inconsistent setups, emits warnings
/// (returned as strings) for unusual but permitted ones.
std::vector<std::string> validate_config(const RunConfig& cfg);

TagTable tag_table_from_config(const RunConfig& cfg);

}  // namespace dgns
