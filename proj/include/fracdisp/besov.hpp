#pragma once

#include <iosfwd>
#include <vector>

#include "fracdisp/freq.hpp"
#include "fracdisp/parallel.hpp"

namespace fracdisp {

/// Homogeneous Besov index set over the finite dyadic range [j_min, j_max].
/// p and q may be infinite.
struct BesovSpec {
    double s = 0.0;
    double p = 2.0;
    double q = 2.0;
    int j_min = -12;
    int j_max = 12;

    void validate() const;
};

struct BesovBlock {
    int j = 0;
    double two_pow_js = 0.0;
    double block_lp = 0.0;  // ||P_j f||_{L^p}
    double weighted = 0.0;  // 2^{js} ||P_j f||_{L^p}
};

struct BesovResult {
    double value = 0.0;
    std::vector<BesovBlock> blocks;
    double leakage = 0.0;  // relative L^2 mass of f outside the covered frequencies
    bool leakage_warning = false;
};

struct BesovOptions {
    TransformOptions transform{};
    Exec exec = Exec::parallel;
    double leakage_warn = 1e-6;
};

/// l^q combination of the weighted blocks.
double combine_blocks(const std::vector<BesovBlock>& blocks, double q);

/// Norm of a sampled profile: every block is band_project followed by
/// lp_norm_radial on the profile grid.  The leakage is
/// ||f - sum_j P_j f||_2 / ||f||_2 on the same grid.
BesovResult besov_norm(const RadialProfile& f, const BesovSpec& spec, const BesovOptions& opt = {});

/// Norm of a function given by its (symmetric-convention) spectrum.  Each
/// block is synthesized from psi_j S and its L^p norm taken in space, or by
/// Plancherel for p = 2.
BesovResult besov_norm(const RadialSpectrum& spectrum, const BesovSpec& spec, const BesovOptions& opt = {});

/// ||P_j f||_{L^p} for f with spectrum S.  Computed on the unit band after
/// the substitution rho = 2^j rho'.
double block_lp_norm(const RadialSpectrum& spectrum, int j, double p);

/// Columns j,two_pow_js,block_lp,weighted.
void write_besov_csv(std::ostream& os, const BesovResult& r);

struct MonotonicityReport {
    double norm_q1 = 0.0;
    double norm_q2 = 0.0;
    bool pass = false;
};

/// ||f||_{B^s_{p,q2}} <= ||f||_{B^s_{p,q1}} (1 + 1e-10) for q1 <= q2.
MonotonicityReport lq_monotonicity_check(const RadialProfile& f, double s, double p, double q1, double q2,
                                         int j_min = -12, int j_max = 12, const BesovOptions& opt = {});
MonotonicityReport lq_monotonicity_check(const RadialSpectrum& f, double s, double p, double q1, double q2,
                                         int j_min = -12, int j_max = 12, const BesovOptions& opt = {});

}  // namespace fracdisp
