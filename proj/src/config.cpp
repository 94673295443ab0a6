#include "fracdisp/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "fracdisp/errors.hpp"
#include "fracdisp/freq.hpp"

namespace fracdisp {

namespace {

template <class T>
void read(const Json& j, const char* key, T& dst) {
    if (!j.contains(key)) return;
    try {
        dst = j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("config: bad value for '") + key + "': " + e.what());
    }
}

void reject_unknown(const Json& j, const std::set<std::string>& known, const std::string& where) {
    if (!j.is_object()) throw DomainError("config: " + where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) throw DomainError("config: unknown key '" + it.key() + "' in " + where);
}

}  // namespace

RunConfig::RunConfig()
    : t_grid(log_uniform_grid(1e2, 1e4, 9)), j_grid{0, 1, 2, 3, 4}, x_grid(log_uniform_grid(1e-3, 1e2, 256)) {
    x_grid.insert(x_grid.begin(), 0.0);
}

void RunConfig::validate() const {
    spec.validate();
    if (t_grid.empty() || j_grid.empty() || x_grid.empty()) throw DomainError("config: grids must be nonempty");
    for (double t : t_grid)
        if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("config: t_grid entries must be finite and >= 0");
    for (double x : x_grid)
        if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("config: x_grid entries must be finite and >= 0");
    if (j_min > j_max) throw DomainError("config: j_min must be <= j_max");
    for (double v : {rel_tol, fit_tol, freq_tol, full_tol, identity_tol, ode_tol, sharpness_spread, dispersive_spread})
        if (!(v > 0.0)) throw DomainError("config: tolerances must be positive");
    if (threads < 0) throw DomainError("config: threads must be >= 0");
}

Json to_json(const RunConfig& c) {
    Json j = Json::object();
    j["spec"] = {{"n", c.spec.n},
                 {"alpha", c.spec.alpha},
                 {"beta", c.spec.beta},
                 {"normalization", to_string(c.spec.normalization)}};
    j["grids"] = {{"t", c.t_grid}, {"j", c.j_grid}, {"x", c.x_grid}, {"j_min", c.j_min}, {"j_max", c.j_max}};
    j["tolerances"] = {{"rel_tol", c.rel_tol},
                       {"fit_tol", c.fit_tol},
                       {"freq_tol", c.freq_tol},
                       {"full_tol", c.full_tol},
                       {"identity_tol", c.identity_tol},
                       {"ode_tol", c.ode_tol},
                       {"sharpness_spread", c.sharpness_spread},
                       {"dispersive_spread", c.dispersive_spread}};
    j["output"] = {{"dir", c.out_dir}, {"deterministic", c.deterministic}, {"threads", c.threads}};
    return j;
}

RunConfig config_from_json(const Json& j) {
    RunConfig c;
    reject_unknown(j, {"spec", "grids", "tolerances", "output"}, "document");
    if (j.contains("spec")) {
        const Json& s = j["spec"];
        reject_unknown(s, {"n", "alpha", "beta", "normalization"}, "spec");
        read(s, "n", c.spec.n);
        read(s, "alpha", c.spec.alpha);
        read(s, "beta", c.spec.beta);
        std::string norm = to_string(c.spec.normalization);
        read(s, "normalization", norm);
        c.spec.normalization = normalization_from_string(norm);
    }
    if (j.contains("grids")) {
        const Json& g = j["grids"];
        reject_unknown(g, {"t", "j", "x", "j_min", "j_max"}, "grids");
        read(g, "t", c.t_grid);
        read(g, "j", c.j_grid);
        read(g, "x", c.x_grid);
        read(g, "j_min", c.j_min);
        read(g, "j_max", c.j_max);
    }
    if (j.contains("tolerances")) {
        const Json& t = j["tolerances"];
        reject_unknown(t, {"rel_tol", "fit_tol", "freq_tol", "full_tol", "identity_tol", "ode_tol", "sharpness_spread",
                           "dispersive_spread"}, "tolerances");
        read(t, "rel_tol", c.rel_tol);
        read(t, "fit_tol", c.fit_tol);
        read(t, "freq_tol", c.freq_tol);
        read(t, "full_tol", c.full_tol);
        read(t, "identity_tol", c.identity_tol);
        read(t, "ode_tol", c.ode_tol);
        read(t, "sharpness_spread", c.sharpness_spread);
        read(t, "dispersive_spread", c.dispersive_spread);
    }
    if (j.contains("output")) {
        const Json& o = j["output"];
        reject_unknown(o, {"dir", "deterministic", "threads"}, "output");
        read(o, "dir", c.out_dir);
        read(o, "deterministic", c.deterministic);
        read(o, "threads", c.threads);
    }
    c.validate();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("config: cannot open '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("config: " + path + ": " + e.what());
    }
    return config_from_json(j);
}

void save_config(const std::string& path, const RunConfig& c) {
    std::ofstream out(path);
    if (!out) throw DomainError("config: cannot write '" + path + "'");
    out << to_json(c).dump(2) << '\n';
}

}  // namespace fracdisp
