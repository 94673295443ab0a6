#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fracdisp/besov.hpp"
#include "fracdisp/freq.hpp"
#include "fracdisp/kernel.hpp"
#include "fracdisp/report.hpp"

namespace fracdisp {

// ------------------------------------------------------------------ fits

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t n_points = 0;
    double residual_max = 0.0;
};

/// Ordinary least squares of log(value) on log(parameter).
FitResult fit_exponent(const std::vector<std::pair<double, double>>& samples);

// ---------------------------------------------------------------- sweeps

struct SweepRecord {
    double t = 0.0;
    double N = 0.0;  // 0 for the full kernel
    double sup_K = 0.0;
    double x_star = 0.0;
    double t_alpha_N_beta = 0.0;
    double max_est_error = 0.0;
    bool ok = true;
    std::string error;
};

struct SweepOptions {
    std::size_t x_points = 512;
    BandOptions band{};
    FullOptions full{};
    Exec exec = Exec::parallel;
};

/// sup_x |K_t^N| for every (t, N = 2^j), ordered t-major.  A failing cell is
/// flagged and the sweep continues.
std::vector<SweepRecord> decay_sweep(const KernelSpec& spec, const std::vector<double>& t_grid,
                                     const std::vector<int>& j_grid, const SweepOptions& opt = {});

/// sup over x_grid of |K_t| (full kernel) for every t.
std::vector<SweepRecord> full_decay_sweep(const KernelSpec& spec, const std::vector<double>& t_grid,
                                          const std::vector<double>& x_grid, const SweepOptions& opt = {});

/// Columns t,N,sup_K,x_star,t_alpha_N_beta,max_est_error,status.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_sweep_csv(std::istream& is);

// ------------------------------------------------------ decay and sharpness

/// Slope of sup_K against t at fixed N; expected -alpha.
CheckReport verify_time_decay(const KernelSpec& spec, const std::vector<double>& t_grid, int j, double tol = 0.05,
                              const SweepOptions& opt = {});

/// Slope of sup_K against N at fixed t; expected n - beta.
CheckReport verify_frequency_scaling(const KernelSpec& spec, double t, const std::vector<int>& j_grid,
                                     double tol = 0.1, const SweepOptions& opt = {});

/// Slope of sup_x |K_t| against t for beta > n; expected -n alpha / beta.
CheckReport verify_full_decay(const KernelSpec& spec, const std::vector<double>& t_grid,
                              const std::vector<double>& x_grid, double tol = 0.03, const SweepOptions& opt = {});

/// c(t, N) = sup_K (1 + t^alpha N^beta) / N^n: min > 0 and max/min <= max_spread.
CheckReport verify_sharpness(const KernelSpec& spec, const std::vector<double>& t_grid,
                             const std::vector<int>& j_grid, double max_spread = 10.0, const SweepOptions& opt = {});

/// Relative gap between the direct and the rescaled evaluation of K_t(x).
CheckReport verify_scaling_identity(const KernelSpec& spec, const std::vector<std::pair<double, double>>& tx,
                                    double tol = 1e-8, const FullOptions& opt = {});

/// Residual of the small-|x| expansion over a grid of eta at fixed t: spread
/// <= max_spread and raw / residual >= min_gain at the smallest eta.
CheckReport verify_expansion(const KernelSpec& spec, double t, const std::vector<double>& eta_grid,
                             double max_spread = 10.0, double min_gain = 10.0, const FullOptions& opt = {});

/// W_1(eta) / ln(1/eta) at eta_a and eta_b differ by at most tol (relative).
CheckReport verify_log_behavior(int n, double eta_a, double eta_b, double tol = 0.05, const FullOptions& opt = {});

// ------------------------------------------------------------ test inputs

enum class TestShape { gaussian, band_limited };

const char* to_string(TestShape s) noexcept;
TestShape test_shape_from_string(const std::string& s);

/// phi(x) = g(|x| / dilation) with g = exp(-r^2/2) (gaussian) or the function
/// whose spectrum is psi_0 (band_limited).
struct TestFunction {
    TestShape shape = TestShape::gaussian;
    int n = 1;
    double dilation = 1.0;

    /// Spectrum under the symmetric convention.
    RadialSpectrum spectrum() const;
    /// Spectrum of T_t phi: E_alpha(-i t^alpha rho^beta) times spectrum().
    RadialSpectrum evolved(const KernelSpec& spec, double t) const;
    /// Frequency support [lo, hi] of spectrum().
    std::pair<double, double> support() const;
};

/// Quadrature extent for norms of T_t phi.
SpatialExtent spatial_extent(const TestFunction& f, const KernelSpec& spec, double t);

/// ||T_t phi||_{L^p}; Plancherel for p = 2.
double evolved_lp_norm(const TestFunction& f, const KernelSpec& spec, double t, double p, Exec exec = Exec::parallel);

// ------------------------------------------------------ dispersive checks

struct InequalityReport {
    double lhs = 0.0;
    std::vector<double> rhs_terms;
    double ratio = 0.0;  // lhs / sum(rhs_terms)
    Json params = Json::object();
};

Json to_json(const InequalityReport& r);

/// ||P_N T_t phi||_inf against t^{-alpha(1-2/r)} N^{n/r' - beta(1-2/r)} ||P_{~N} phi||_{r'}.
InequalityReport verify_band_linfty(const KernelSpec& spec, double t, DyadicBand band, const TestFunction& f, double r);

enum class BesovVariant { eq7, eq8, eq9 };

const char* to_string(BesovVariant v) noexcept;
BesovVariant besov_variant_from_string(const std::string& s);

struct DispersiveOptions {
    int j_min = -12;
    int j_max = 12;
    double s = 1.0;  // eq9 regularity
    double p = 2.0;  // eq9 summability
    Exec exec = Exec::parallel;
};

/// One report per t.  lhs: ||T_t phi|| in L^inf (eq7), L^r (eq8) or
/// B^s_{r,p} (eq9); rhs: (1 + t^alpha)^{-(1-2/r)} times the two Besov norms
/// of phi.
std::vector<InequalityReport> verify_dispersive_besov(const KernelSpec& spec, const std::vector<double>& t_grid,
                                                      const TestFunction& f, double r, BesovVariant variant,
                                                      const DispersiveOptions& opt = {});

/// max/min of the ratios <= max_spread.
CheckReport summarize_dispersive(const std::vector<InequalityReport>& reports, const std::string& check,
                                 double max_spread = 100.0);

/// t-exponent of ||T_t phi_t||_{L^p} / ||phi_t||_{L^{p'}} with phi_t the test
/// function dilated by t^{alpha/beta}; expected -(2 n alpha/beta)(1/2 - 1/p).
CheckReport verify_lp_interpolation(const KernelSpec& spec, double p, const std::vector<double>& t_grid,
                                    const TestFunction& f, double tol = 0.03, Exec exec = Exec::parallel);

// --------------------------------------------------------------- Caputo

struct CaputoOptions {
    double ratio = 0.7;          // geometric grading toward both ends
    double inner = 1e-12;        // innermost panel width relative to t
    double step = 0.02;          // difference step relative to the distance to an end
};

/// D^alpha f(t) = (1/Gamma(1-alpha)) int_0^t (t-s)^{-alpha} f'(s) ds, with
/// f' from finite differences.  f must be defined slightly beyond t.
/// alpha = 1 returns f'(t).
Evaluated<Complex> caputo_derivative(const std::function<Complex(double)>& f, double alpha, double t,
                                     const CaputoOptions& opt = {});

/// max over t_grid of |D^alpha u + i lambda u| / |u| with u = E_alpha(-i lambda t^alpha).
CheckReport verify_mode_ode(double alpha, double lambda, const std::vector<double>& t_grid, double tol = 1e-3,
                            const CaputoOptions& opt = {});

}  // namespace fracdisp
