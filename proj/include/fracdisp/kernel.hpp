#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fracdisp/freq.hpp"
#include "fracdisp/parallel.hpp"
#include "fracdisp/types.hpp"

namespace fracdisp {

enum class Normalization { unnormalized, symmetric };
enum class Regime { subcritical, critical_or_super, resonant };

const char* to_string(Normalization v) noexcept;
const char* to_string(Regime v) noexcept;
Normalization normalization_from_string(const std::string& s);

/// One equation instance: dimension n, Caputo order alpha, Laplacian order
/// beta.  The kernel is the inverse transform of E_alpha(-i t^alpha |xi|^beta)
/// taken as int e^{i x xi} d xi (unnormalized) or with the extra
/// (2 pi)^{-n/2} (symmetric).
struct KernelSpec {
    int n = 1;
    double alpha = 0.5;
    double beta = 1.0;
    Normalization normalization = Normalization::unnormalized;

    void validate() const;
    Regime regime() const;
    /// m when beta = n/m for an integer m >= 1, else 0.
    int resonance_order() const;
    /// Factor in front of int_0^inf m(r) r^{n-1} Omega_n(r |x|) dr.
    double prefactor() const;

    bool operator==(const KernelSpec&) const = default;
};

struct KernelSample {
    double t = 0.0;
    double N = 0.0;  // 0 for the full kernel
    double x_radius = 0.0;
    Complex value{};
    EvalDiagnostics diag{};
    std::size_t panels = 0;
    double tail_bound = 0.0;
    bool ok = true;  // false for a cell whose evaluation failed
};

// --------------------------------------------------------- band kernels

struct BandOptions {
    double rel_tol = 1e-8;  // against the L1 mass of the integrand
    int base_panels = 4;
    int max_level = 12;
    Exec exec = Exec::parallel;
};

/// K_t^N(x) = N^n c int_{1/2}^2 E(-i t^alpha N^beta r^beta) psi(r) r^{n-1} Omega_n(r N |x|) dr
/// for one (t, N); the multiplier is tabulated once and shared by all x.
class BandKernel {
   public:
    BandKernel(const KernelSpec& spec, double t, DyadicBand band, double x_max, const BandOptions& opt = {});

    KernelSample operator()(double x) const;
    /// c N^n max|Omega_n| int_{1/2}^2 |E| r^{n-1} dr.
    double triangle_bound() const noexcept { return triangle_; }
    double t_alpha_N_beta() const noexcept { return tanb_; }

   private:
    KernelSpec spec_;
    double t_, N_, tanb_, scale_, triangle_;
    std::shared_ptr<const RadialTransform> core_;
};

KernelSample kernel_band(const KernelSpec& spec, double t, DyadicBand band, double x_radius,
                         const BandOptions& opt = {});

/// Same kernel on a grid of radii; the parallel map runs over x.
std::vector<KernelSample> kernel_band_profile(const KernelSpec& spec, double t, DyadicBand band,
                                              const std::vector<double>& x_grid, Exec exec = Exec::parallel,
                                              const BandOptions& opt = {});

/// x = s / N with s log-uniform on [1e-3, 1e2] (512 points), plus x = 0.
std::vector<double> default_sup_grid(DyadicBand band, std::size_t points = 512);

struct SupResult {
    double x_star = 0.0;
    double value = 0.0;
    double max_est_error = 0.0;
    std::size_t evaluated = 0;
};

SupResult sup_search(const KernelSpec& spec, double t, DyadicBand band, const std::vector<double>& x_grid,
                     Exec exec = Exec::parallel, const BandOptions& opt = {});

/// Split of the band integral at x around the leading algebraic term
///   E(-i s) ~ -i / (Gamma(1 - alpha) s):
/// I = I1 + I2 with I2 the integral of the leading term.
struct LeadingSplit {
    Complex i1{};
    Complex i2{};
    double t_alpha_N_beta = 0.0;
};

LeadingSplit leading_term_split(const KernelSpec& spec, double t_alpha_N_beta, double Nx = 0.0);

// --------------------------------------------------------- full kernels

struct FullOptions {
    double rel_tol = 1e-11;
    double phase_tail = 40.0;  // minimum R |x| before the analytic tail
};

/// c int_0^inf E(-i T r^beta) r^{n-1} Omega_n(r x) dr with the Phi split at
/// r in [1, 2]: numerical panels up to R, then the algebraic expansion of
/// E_alpha integrated term by term against the Hankel expansion of Omega_n.
KernelSample full_integral(const KernelSpec& spec, double T, double x, const FullOptions& opt = {});

/// K_t(x) = t^{-n alpha/beta} K_1(x t^{-alpha/beta}).
KernelSample kernel_full(const KernelSpec& spec, double t, double x_radius, const FullOptions& opt = {});

/// K_t(x) from the unscaled integral with T = t^alpha.
KernelSample kernel_full_direct(const KernelSpec& spec, double t, double x_radius, const FullOptions& opt = {});

/// int_{R}^inf r^p Omega_n(r x) dr, as an oscillatory (Abel) integral when
/// it does not converge absolutely.  Needs R x >= 25 for x > 0, or p < -1
/// for x = 0.  *err receives the truncation estimate.
double power_tail(int n, double p, double x, double R, double* err = nullptr);

/// F^{-1}(|xi|^{-theta}) = C |x|^{-n+theta} for the transform int e^{i x xi} d xi:
///   C(n, theta) = 2^{n-theta} pi^{n/2} Gamma((n-theta)/2) / Gamma(theta/2).
double riesz_constant(int n, double theta);

struct ExpansionResidual {
    double residual = 0.0;  // |K_t - sum_k C_k |x|^{-n+beta k} t^{-alpha k}| t^{n alpha/beta}
    double raw = 0.0;       // |K_t| t^{n alpha/beta}
    double eta = 0.0;
    int terms = 0;
    int resonance = 0;
    double resonant_coefficient = 0.0;  // |C_m|-type factor 1/Gamma(1 - alpha m), 0 if none
};

/// Coefficient C_k of |x|^{-n+beta k} t^{-alpha k}.
Complex expansion_coefficient(const KernelSpec& spec, int k);

ExpansionResidual expansion_residual(const KernelSpec& spec, double t, double x_radius, const FullOptions& opt = {});

/// W_1(eta) = int |xi|^{-n} Phi(xi) e^{i eta xi} d xi with Phi = 1 - phi.
Evaluated<Complex> w1_eval(int n, double eta, const FullOptions& opt = {});

// ------------------------------------------------------------ CSV output

/// Columns t,N,x,re,im,abs,panels,tail_bound,status.
void write_kernel_csv(std::ostream& os, const std::vector<KernelSample>& samples);
std::vector<KernelSample> read_kernel_csv(std::istream& is);

}  // namespace fracdisp
