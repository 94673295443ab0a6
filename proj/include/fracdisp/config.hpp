#pragma once

#include <string>
#include <vector>

#include "fracdisp/kernel.hpp"
#include "fracdisp/report.hpp"

namespace fracdisp {

/// Everything a run depends on.  Stored as a JSON document; keys absent from
/// the document keep their defaults, unknown keys are rejected.
struct RunConfig {
    KernelSpec spec{};
    std::vector<double> t_grid;  // sweep times
    std::vector<int> j_grid;     // dyadic indices N = 2^j
    std::vector<double> x_grid;  // radii for kernel profiles
    int j_min = -12;             // Besov range
    int j_max = 12;
    double rel_tol = 1e-8;          // band-kernel quadrature
    double fit_tol = 0.05;          // slope error, t-decay
    double freq_tol = 0.1;          // slope error, N-scaling
    double full_tol = 0.03;         // slope error, full kernel and L^p decay
    double identity_tol = 1e-8;     // scaling identity, relative
    double ode_tol = 1e-3;          // mode equation residual, alpha < 1
    double sharpness_spread = 10.0;
    double dispersive_spread = 100.0;
    std::string out_dir;  // empty: standard output
    bool deterministic = true;
    int threads = 0;  // 0: OpenMP default

    RunConfig();
    void validate() const;
    bool operator==(const RunConfig&) const = default;
};

Json to_json(const RunConfig& c);
RunConfig config_from_json(const Json& j);
RunConfig load_config(const std::string& path);
void save_config(const std::string& path, const RunConfig& c);

}  // namespace fracdisp
