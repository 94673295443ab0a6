#pragma once

#include <memory>
#include <vector>

#include "fracdisp/types.hpp"

namespace fracdisp {

// ---------------------------------------------------------------- Gamma

/// Gamma(x) for real x.  Throws PoleError at x = 0, -1, -2, ... and
/// OverflowError when the result exceeds the double range (x > 171.6).
double gamma_real(double x);

/// 1 / Gamma(x).  Exactly zero at the poles of Gamma; never throws.
double recip_gamma(double x);

/// sin(pi x) with exact zeros at the integers.
double sin_pi(double x);

// -------------------------------------------------------- Mittag-Leffler

/// Order of E_alpha.  0 < alpha <= 1; alpha = 1 is the exponential.
class MLOrder {
   public:
    explicit MLOrder(double alpha);
    double alpha() const noexcept { return alpha_; }

   private:
    double alpha_;
};

// The series and the asymptotic expansion are both accurate on the annulus
// asymptotic_radius <= |z| <= series_radius.  The radii are fixed through
// w = |z|^{1/alpha}, which controls both the series cancellation (~e^w) and
// the optimally truncated asymptotic remainder (~e^{-w}).
inline constexpr double kAsymptoticW = 24.0;
inline constexpr double kSwitchW = 30.0;
inline constexpr double kSeriesW = 48.0;

double series_radius(MLOrder order);
double asymptotic_radius(MLOrder order);
double switch_radius(MLOrder order);

struct QuadSeriesTable;

/// Evaluator for one order.  Holds precomputed coefficient tables and is
/// immutable after construction, so one instance can be shared by threads.
class MittagLeffler {
   public:
    explicit MittagLeffler(MLOrder order);

    double alpha() const noexcept { return alpha_; }

    /// Power series, truncated once the terms fall below tol relative to
    /// the partial sum.  Summed in binary128 when |z|^{1/alpha} > 1.5 so the
    /// cancellation along the decay rays does not eat the result.
    Evaluated<Complex> series(Complex z, double tol = 1e-17) const;

    /// Asymptotic expansion with exactly k algebraic terms.
    Evaluated<Complex> asymptotic(Complex z, int k) const;

    /// Asymptotic expansion truncated at its smallest term.
    Evaluated<Complex> asymptotic_auto(Complex z) const;

    /// Dispatching evaluator: closed form for alpha = 1, otherwise series or
    /// asymptotic expansion split at switch_radius.
    Evaluated<Complex> operator()(Complex z) const;
    Complex value(Complex z) const { return (*this)(z).value; }

    /// Coefficient -1/Gamma(1 - alpha j) of z^{-j} in the algebraic expansion.
    double asymptotic_coefficient(int j) const;

   private:
    Complex exponential_term(Complex z) const;
    bool exponential_present(Complex z) const;
    double exponential_weight(Complex z) const;
    double excluded_exponential_bound(Complex z) const;

    double alpha_;
    std::vector<double> series_coef_;       // 1/Gamma(alpha k + 1), double
    std::shared_ptr<const QuadSeriesTable> series_q_;  // same in binary128
    std::vector<double> asym_coef_;         // 1/Gamma(1 - alpha j), j >= 0
};

/// Shared evaluator for an order, built on first use (guarded cache).
const MittagLeffler& ml_evaluator(MLOrder order);

Evaluated<Complex> ml_series(MLOrder order, Complex z, double tol = 1e-17);
Evaluated<Complex> ml_asymptotic(MLOrder order, Complex z, int k);
Evaluated<Complex> ml_eval(MLOrder order, Complex z);

// ---------------------------------------------------------------- Bessel

/// J_nu(x) for nu >= -1/2 and x >= 0.
///   nu = +-1/2          closed form
///   x <= 12             power series
///   12 < x <= X(nu)     Poisson representation, composite Gauss-Legendre
///   x > X(nu)           Hankel expansion truncated at its smallest term
/// with X(nu) = max(25, 4 nu^2).
Evaluated<double> bessel_j(double nu, double x);

/// Coefficients a_m(nu) of the Hankel expansion
///   J_nu(x) ~ sqrt(2/(pi x)) Re[ e^{i chi} sum_m i^m a_m x^{-m} ],
///   chi = x - nu pi/2 - pi/4.
std::vector<double> hankel_coefficients(double nu, int count);

/// Radial Fourier factor s^{(2-n)/2} J_{(n-2)/2}(s); the s = 0 limit is
/// 2^{(2-n)/2} / Gamma(n/2).
double omega_n(int n, double s);

/// sup_s |omega_n(s)|, attained at s = 0 for every n >= 1.
double omega_n_bound(int n);

}  // namespace fracdisp
