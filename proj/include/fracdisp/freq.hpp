#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fracdisp/parallel.hpp"
#include "fracdisp/types.hpp"

namespace fracdisp {

// ------------------------------------------------------------- cutoffs

/// Smooth radial cutoff: phi = 1 on [0, 1], 0 on [2, inf), and on (1, 2)
///   phi(r) = q(2 - r) / (q(2 - r) + q(r - 1)),   q(s) = exp(-sharpness / s).
/// phi(3 - r) = 1 - phi(r) on [1, 2].
class Cutoff {
   public:
    explicit Cutoff(double sharpness = 1.0);

    double sharpness() const noexcept { return sharpness_; }
    double phi(double r) const;
    /// 1 - phi: vanishes on [0, 1], equals 1 on [2, inf).
    double exterior(double r) const;
    /// psi_j(r) = phi(r / 2^j) - phi(r / 2^{j-1}); supported in (2^{j-1}, 2^{j+1}).
    double psi(int j, double r) const;
    /// psi_{j-1} + psi_j + psi_{j+1}; equal to 1 on the support of psi_j.
    double psi_around(int j, double r) const;

   private:
    double sharpness_;
};

Cutoff build_cutoff(double sharpness);

struct DyadicBand {
    int j = 0;
    double N() const;
    double lo() const;  // 2^{j-1}
    double hi() const;  // 2^{j+1}
};

/// Surface measure of the unit sphere in R^n.
double sphere_measure(int n);

// ------------------------------------------------------- radial profiles

enum class GridKind { uniform, log_uniform, composite };

const char* to_string(GridKind k) noexcept;
GridKind grid_kind_from_string(const std::string& s);

/// Sampled radial function on a strictly increasing radius grid.
struct RadialProfile {
    int n = 1;
    std::vector<double> radii;
    std::vector<Complex> values;
    GridKind grid_kind = GridKind::log_uniform;

    void validate() const;
};

std::vector<double> uniform_grid(double a, double b, std::size_t count);
std::vector<double> log_uniform_grid(double a, double b, std::size_t count);

RadialProfile sample_profile(int n, const std::vector<double>& radii, const std::function<Complex(double)>& f,
                             GridKind kind);

/// CSV with a "# n=<n> grid_kind=<kind>" line, then header r,re,im.
void write_profile_csv(std::ostream& os, const RadialProfile& f);
RadialProfile read_profile_csv(std::istream& is);

// ---------------------------------------------------- radial transforms

using RadialFn = std::function<Complex(double)>;

/// A radial function given analytically on [lo, hi]; zero outside.
/// kink_at_lo requests geometric grading toward lo, for functions that are
/// not smooth there (|xi|^beta at the origin).  breaks, when given, is the
/// base partition of [lo, hi] that the panel levels refine.
struct RadialSpectrum {
    int n = 1;
    RadialFn value;
    double lo = 0.0;
    double hi = 1.0;
    bool kink_at_lo = false;
    std::vector<double> breaks;
};

struct TransformOptions {
    double rel_tol = 1e-10;  // against the L1 mass of the integrand
    int base_panels = 8;
    int max_level = 14;      // at most base_panels * 2^max_level panels
    Exec exec = Exec::parallel;
};

/// g(x) = int_lo^hi S(rho) rho^{n-1} Omega_n(rho x) d rho.
///
/// The integrand values S(rho) rho^{n-1} are tabulated once on Gauss-Legendre
/// panels at successive doublings.  An evaluation at x starts from the
/// coarsest level whose panels resolve Omega_n(rho x) and doubles until two
/// levels agree.  The table is built in the constructor, after which the
/// object is immutable.
class RadialTransform {
   public:
    RadialTransform(const RadialSpectrum& s, double x_max, const TransformOptions& opt = {});

    Evaluated<Complex> operator()(double x) const;
    Complex value(double x) const { return (*this)(x).value; }

    int n() const noexcept { return n_; }
    double x_max() const noexcept { return x_max_; }
    double mass() const noexcept { return mass_; }
    double hi() const noexcept { return hi_; }
    std::size_t levels() const noexcept { return levels_.size(); }

   private:
    struct Level {
        std::vector<double> nodes;
        std::vector<Complex> weighted;  // w_i S(rho_i) rho_i^{n-1}
        double width = 0.0;             // widest panel
    };
    Complex apply(const Level& lv, double x) const;

    int n_;
    double lo_, hi_, x_max_;
    double mass_ = 0.0;
    double rel_tol_;
    std::vector<Level> levels_;
};

/// Forward transform of a sampled profile, interpolated with a modified
/// Akima spline; g(rho) = int f(r) r^{n-1} Omega_n(r rho) dr.  The same map
/// is its own inverse.  Throws ConvergenceError when the profile has not
/// decayed to tail_tol of its maximum at the last radius.
RadialProfile radial_fourier(const RadialProfile& f, const std::vector<double>& out_radii,
                             const TransformOptions& opt = {}, double tail_tol = 1e-6);

/// Forward transform, multiply by psi_j, inverse transform onto f's radii.
RadialProfile band_project(const RadialProfile& f, DyadicBand band, const Cutoff& cutoff = Cutoff{},
                           const TransformOptions& opt = {});

// --------------------------------------------------------------- norms

struct LpResult {
    double value = 0.0;
    double boundary_ratio = 0.0;  // |f(last radius)| / max |f|
    bool truncated = false;       // boundary_ratio above the warning level
};

/// (sigma_{n-1} int |f|^p r^{n-1} dr)^{1/p} by the trapezoid rule on the
/// profile grid, with f held at its first value on [0, r_0]; max |f| for
/// p = inf.
LpResult lp_norm_radial(const RadialProfile& f, double p, double truncation_warn = 1e-6);

/// Quadrature layout for norms of a synthesized function: panels of width at
/// most core_width on [0, x_core], geometric panels (ratio 1.25) on
/// [x_core, x_max] where the function no longer oscillates.
struct SpatialExtent {
    double x_core = 50.0;
    double x_max = 50.0;
    double core_width = 0.25;
};

struct SpatialNorm {
    double value = 0.0;
    double sup = 0.0;
    double quad_error = 0.0;  // max transform error estimate over the nodes
    std::size_t nodes = 0;
};

/// L^p(R^n) norm of a radial function given by u(|x|).
SpatialNorm lp_norm_spatial(const std::function<Evaluated<Complex>(double)>& u, int n, double p,
                            const SpatialExtent& ext, Exec exec = Exec::parallel);

/// (sigma_{n-1} int |S|^2 rho^{n-1})^{1/2}; equals the L^2 norm of the
/// synthesized function under the symmetric convention.
double l2_norm_spectrum(const RadialSpectrum& s);

}  // namespace fracdisp
