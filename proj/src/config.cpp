#include "dgns/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace dgns {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& ctx) {
    try {
        size_t pos;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw SolverError("config: bad number '" + v + "' for " + ctx);
    }
}

long parse_long(const std::string& v, const std::string& ctx) {
    try {
        size_t pos;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw SolverError("config: bad integer '" + v + "' for " + ctx);
    }
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::string section;  // active boundary name, empty = global

    auto set_global = [&](const std::string& key, const std::string& val) {
        const std::string ctx = origin + ":" + std::to_string(lineno) + " key '" + key + "'";
        if (key == "case") cfg.case_name = val;
        else if (key == "mesh") cfg.mesh_path = val;
        else if (key == "mesh_level") cfg.mesh_level = static_cast<int>(parse_long(val, ctx));
        else if (key == "k" || key == "degree") cfg.degree = static_cast<int>(parse_long(val, ctx));
        else if (key == "cfl") cfg.cfl = parse_double(val, ctx);
        else if (key == "dt_safety") cfg.dt_safety = parse_double(val, ctx);
        else if (key == "gamma") cfg.gamma = parse_double(val, ctx);
        else if (key == "prandtl") cfg.prandtl = parse_double(val, ctx);
        else if (key == "cv") cfg.cv = parse_double(val, ctx);
        else if (key == "viscosity") cfg.viscosity = val;
        else if (key == "mu") cfg.mu = parse_double(val, ctx);
        else if (key == "mu_ref") cfg.mu_ref = parse_double(val, ctx);
        else if (key == "T_ref") cfg.T_ref = parse_double(val, ctx);
        else if (key == "C_s") cfg.C_s = parse_double(val, ctx);
        else if (key == "rho_inf") cfg.rho_inf = parse_double(val, ctx);
        else if (key == "u_inf") cfg.u_inf = parse_double(val, ctx);
        else if (key == "v_inf") cfg.v_inf = parse_double(val, ctx);
        else if (key == "p_inf") cfg.p_inf = parse_double(val, ctx);
        else if (key == "p_back") cfg.p_back = parse_double(val, ctx);
        else if (key == "mode") cfg.mode = val;
        else if (key == "final_time") cfg.final_time = parse_double(val, ctx);
        else if (key == "steady_tol") cfg.steady_tol = parse_double(val, ctx);
        else if (key == "max_steps") cfg.max_steps = parse_long(val, ctx);
        else if (key == "log_every") cfg.log_every = parse_long(val, ctx);
        else if (key == "record_every") cfg.record_every = parse_long(val, ctx);
        else if (key == "output_dir") cfg.output_dir = val;
        else if (key == "threads") cfg.threads = static_cast<int>(parse_long(val, ctx));
        else if (key == "seed") cfg.seed = static_cast<unsigned long>(parse_long(val, ctx));
        else if (key == "reference") cfg.reference = val;
        else if (key == "save_reference") cfg.save_reference = val;
        else if (key == "save_field") cfg.save_field = val;
        else if (key == "restart") cfg.restart = val;
        else throw SolverError("config: unknown key '" + key + "' at " + origin + ":" +
                               std::to_string(lineno));
    };

    auto set_boundary = [&](const std::string& key, const std::string& val) {
        BcConfig& bc = cfg.boundaries[section];
        const std::string ctx = origin + ":" + std::to_string(lineno) + " [boundary " + section + "]";
        if (key == "kind") bc.kind = val;
        else if (key == "shift") {
            std::istringstream vs(val);
            if (!(vs >> bc.shift.x >> bc.shift.y))
                throw SolverError("config: bad periodic shift at " + ctx);
        } else if (key == "p_back") bc.p_back = parse_double(val, ctx);
        else throw SolverError("config: unknown boundary key '" + key + "' at " + ctx);
    };

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw SolverError("config: malformed section at " + origin + ":" + std::to_string(lineno));
            std::istringstream hs(line.substr(1, line.size() - 2));
            std::string word, name;
            hs >> word >> name;
            if (word != "boundary" || name.empty())
                throw SolverError("config: expected [boundary NAME] at " + origin + ":" +
                                  std::to_string(lineno));
            section = name;
            cfg.boundaries[section];  // create
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw SolverError("config: expected key = value at " + origin + ":" + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw SolverError("config: empty key or value at " + origin + ":" + std::to_string(lineno));
        if (section.empty()) set_global(key, val);
        else set_boundary(key, val);
    }
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SolverError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    RunConfig cfg = parse_config_text(ss.str(), path);
    apply_case_defaults(cfg);
    return cfg;
}

std::string RunConfig::serialize() const {
    std::ostringstream out;
    out.precision(17);
    out << "case = " << case_name << '\n';
    if (!mesh_path.empty()) out << "mesh = " << mesh_path << '\n';
    if (mesh_level) out << "mesh_level = " << *mesh_level << '\n';
    out << "k = " << degree << '\n';
    out << "cfl = " << cfl << '\n';
    out << "dt_safety = " << dt_safety << '\n';
    out << "gamma = " << gamma << '\n';
    out << "prandtl = " << prandtl << '\n';
    if (cv) out << "cv = " << *cv << '\n';
    out << "viscosity = " << viscosity << '\n';
    if (mu) out << "mu = " << *mu << '\n';
    if (viscosity == "sutherland")
        out << "mu_ref = " << mu_ref << "\nT_ref = " << T_ref << "\nC_s = " << C_s << '\n';
    if (rho_inf) out << "rho_inf = " << *rho_inf << '\n';
    if (u_inf) out << "u_inf = " << *u_inf << '\n';
    if (v_inf) out << "v_inf = " << *v_inf << '\n';
    if (p_inf) out << "p_inf = " << *p_inf << '\n';
    if (p_back) out << "p_back = " << *p_back << '\n';
    if (!mode.empty()) out << "mode = " << mode << '\n';
    if (final_time) out << "final_time = " << *final_time << '\n';
    if (steady_tol) out << "steady_tol = " << *steady_tol << '\n';
    out << "max_steps = " << max_steps << '\n';
    out << "log_every = " << log_every << '\n';
    out << "record_every = " << record_every << '\n';
    out << "output_dir = " << output_dir << '\n';
    out << "threads = " << threads << '\n';
    out << "seed = " << seed << '\n';
    if (!reference.empty()) out << "reference = " << reference << '\n';
    if (!save_reference.empty()) out << "save_reference = " << save_reference << '\n';
    if (!save_field.empty()) out << "save_field = " << save_field << '\n';
    if (!restart.empty()) out << "restart = " << restart << '\n';
    for (const auto& [name, bc] : boundaries) {
        out << "[boundary " << name << "]\n";
        out << "kind = " << bc.kind << '\n';
        if (bc.kind == "periodic")
            out << "shift = " << bc.shift.x << ' ' << bc.shift.y << '\n';
        if (bc.p_back) out << "p_back = " << *bc.p_back << '\n';
    }
    return out.str();
}

TagTable tag_table_from_config(const RunConfig& cfg) {
    TagTable t;
    for (const auto& [name, bc] : cfg.boundaries) {
        BoundaryTag tag;
        tag.name = name;
        tag.kind = bc_kind_from_string(bc.kind);
        tag.periodic_shift = bc.shift;
        t[name] = tag;
    }
    return t;
}

std::vector<std::string> validate_config(const RunConfig& cfg) {
    std::vector<std::string> warnings;
    if (cfg.degree < 1) throw SolverError("config: k must be at least 1");
    if (cfg.degree > 4)
        warnings.push_back("k = " + std::to_string(cfg.degree) +
                           " is outside the verified range 1..4; proceeding");
    if (!(cfg.cfl > 0)) throw SolverError("config: cfl must be positive");
    if (!(cfg.dt_safety > 0) || cfg.dt_safety > 1.0)
        throw SolverError("config: dt_safety must lie in (0, 1]");
    if (cfg.viscosity != "constant" && cfg.viscosity != "sutherland")
        throw SolverError("config: viscosity must be 'constant' or 'sutherland'");
    if (cfg.viscosity == "constant" && cfg.mu && !(*cfg.mu >= 0))
        throw SolverError("config: mu must be non-negative");
    if (cfg.mode == "steady" && !cfg.steady_tol)
        throw SolverError("config: steady mode needs steady_tol");
    if (cfg.mode == "final_time" && !cfg.final_time)
        throw SolverError("config: final_time mode needs final_time");
    if (!cfg.mode.empty() && cfg.mode != "steady" && cfg.mode != "final_time")
        throw SolverError("config: mode must be 'steady' or 'final_time'");
    if (cfg.threads < 1) throw SolverError("config: threads must be at least 1");
    for (const auto& [name, bc] : cfg.boundaries) {
        bc_kind_from_string(bc.kind);  // throws on unknown kinds
        if (bc.kind == "periodic" && bc.shift.norm() == 0)
            throw SolverError("config: periodic boundary '" + name + "' needs a shift");
    }
    return warnings;
}

}  // namespace dgns
