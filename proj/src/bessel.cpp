#include <cmath>
#include <limits>
#include <string>

#include "fracdisp/errors.hpp"
#include "fracdisp/quadrature.hpp"
#include "fracdisp/specfun.hpp"

namespace fracdisp {

namespace {

constexpr double kSeriesMaxX = 12.0;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double asymptotic_threshold(double nu) { return std::max(25.0, 4.0 * nu * nu); }

bool is_half(double nu) { return std::fabs(std::fabs(nu) - 0.5) == 0.0; }

// sum_k (-1)^k (x/2)^{2k} / (k! Gamma(k + nu + 1)), i.e. J_nu(x) (x/2)^{-nu}
Evaluated<double> reduced_series(double nu, double x) {
    const double q = 0.25 * x * x;
    double t = recip_gamma(nu + 1.0);
    double s = t, sabs = std::fabs(t);
    std::size_t k = 1;
    for (; k < 200; ++k) {
        t *= -q / (static_cast<double>(k) * (static_cast<double>(k) + nu));
        s += t;
        sabs += std::fabs(t);
        if (std::fabs(t) < 0.5 * kEps * std::fabs(s)) break;
    }
    return {s, {EvalMethod::series, k + 1, 2.0 * kEps * sabs}};
}

// Poisson representation with t = cos(theta):
//   J_nu(x) = 2 (x/2)^nu / (sqrt(pi) Gamma(nu + 1/2)) int_0^{pi/2} cos(x cos th) sin^{2nu} th dth
Evaluated<double> poisson(double nu, double x) {
    const GaussRule& rule = gauss_legendre(16);
    const double two_nu = 2.0 * nu;
    const bool smooth = two_nu == std::floor(two_nu);
    auto f = [&](double th) { return std::cos(x * std::cos(th)) * std::pow(std::sin(th), two_nu); };
    const int panels = static_cast<int>(std::ceil(x / 4.0)) + 1;
    double sum = 0.0;
    double lo = 0.0;
    const double top = 0.5 * kPi;
    std::size_t nodes = 0;
    if (!smooth) {
        // geometric grading toward the theta^{2nu} endpoint
        double edge = top / panels;
        for (int g = 0; g < 40; ++g) {
            const double a = edge * std::pow(0.5, 40 - g);
            const double b = edge * std::pow(0.5, 39 - g);
            sum += integrate_fixed(f, a, b, rule);
            nodes += rule.size();
        }
        lo = edge;
    }
    const double h = (top - lo) / (smooth ? panels : panels - 1);
    const int count = smooth ? panels : panels - 1;
    for (int p = 0; p < count; ++p) {
        sum += integrate_fixed(f, lo + p * h, lo + (p + 1) * h, rule);
        nodes += rule.size();
    }
    const double pref = 2.0 * std::pow(0.5 * x, nu) / (std::sqrt(kPi) * gamma_real(nu + 0.5));
    const double value = pref * sum;
    // cancellation: the integrand is O(1), the result O(x^{-nu-1/2})
    const double err = 64.0 * kEps * std::fabs(pref) * (smooth ? 1.0 : 1e3);
    return {value, {EvalMethod::poisson_quadrature, nodes, err}};
}

// Below the turning point (nu < x) the Poisson integral cancels badly for
// large nu, so start from the order in [-1/2, 1/2) and recur upward, which is
// stable there.
Evaluated<double> poisson_recurrence(double nu, double x) {
    const double k = std::floor(nu + 0.5);
    const double nu0 = nu - k;
    Evaluated<double> a = nu0 == -0.5 ? bessel_j(nu0, x) : poisson(nu0, x);
    Evaluated<double> b = poisson(nu0 + 1.0, x);
    double jm = a.value, j = b.value;
    for (double mu = nu0 + 1.0; mu < nu - 0.25; mu += 1.0) {
        const double jp = 2.0 * mu / x * j - jm;
        jm = j;
        j = jp;
    }
    const double err = (k + 1.0) * (a.diag.est_error + b.diag.est_error) + 4.0 * k * kEps * std::fabs(j);
    return {j, {EvalMethod::poisson_quadrature, a.diag.terms_or_nodes + b.diag.terms_or_nodes, err}};
}

Evaluated<double> hankel(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    double a = 1.0;
    double p = 1.0, q = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    double last = 0.0;
    int m = 1;
    const double inv8x = 1.0 / (8.0 * x);
    for (; m < 80; ++m) {
        const double odd = 2.0 * m - 1.0;
        a *= (mu - odd * odd) * inv8x / m;
        const double ta = std::fabs(a);
        if (m > 3 && ta > prev) break;
        // i^m: m = 1 -> +Q, 2 -> -P, 3 -> -Q, 4 -> +P
        switch (m & 3) {
            case 1: q += a; break;
            case 2: p -= a; break;
            case 3: q -= a; break;
            default: p += a; break;
        }
        last = ta;
        if (a == 0.0) break;
        prev = ta;
        if (ta < 0.25 * kEps) break;
    }
    // cos(x - c) and sin(x - c) without forming x - c
    const double c = 0.5 * nu * kPi + 0.25 * kPi;
    const double cx = std::cos(x), sx = std::sin(x);
    const double cc = std::cos(c), sc = std::sin(c);
    const double cos_chi = cx * cc + sx * sc;
    const double sin_chi = sx * cc - cx * sc;
    const double amp = std::sqrt(2.0 / (kPi * x));
    const double value = amp * (p * cos_chi - q * sin_chi);
    return {value, {EvalMethod::asymptotic, static_cast<std::size_t>(m), amp * (2.0 * last + 4.0 * kEps)}};
}

}  // namespace

std::vector<double> hankel_coefficients(double nu, int count) {
    std::vector<double> a(static_cast<std::size_t>(std::max(count, 1)));
    const double mu = 4.0 * nu * nu;
    a[0] = 1.0;
    for (int m = 1; m < count; ++m) {
        const double odd = 2.0 * m - 1.0;
        a[static_cast<std::size_t>(m)] = a[static_cast<std::size_t>(m - 1)] * (mu - odd * odd) / (8.0 * m);
    }
    return a;
}

Evaluated<double> bessel_j(double nu, double x) {
    if (!(nu >= -0.5)) throw DomainError("bessel_j: nu must be >= -1/2, got " + std::to_string(nu));
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("bessel_j: x must be finite and >= 0");
    if (is_half(nu)) {
        if (x == 0.0) return {nu > 0 ? 0.0 : std::numeric_limits<double>::infinity(), {EvalMethod::closed_form, 1, 0.0}};
        const double amp = std::sqrt(2.0 / (kPi * x));
        const double v = nu > 0 ? amp * std::sin(x) : amp * std::cos(x);
        return {v, {EvalMethod::closed_form, 1, 4.0 * kEps * amp}};
    }
    if (x == 0.0) return {nu == 0.0 ? 1.0 : 0.0, {EvalMethod::series, 1, 0.0}};
    if (x <= kSeriesMaxX) {
        Evaluated<double> r = reduced_series(nu, x);
        const double scale = std::pow(0.5 * x, nu);
        r.value *= scale;
        r.diag.est_error *= scale;
        return r;
    }
    if (x <= asymptotic_threshold(nu)) return nu > 1.5 && nu < x ? poisson_recurrence(nu, x) : poisson(nu, x);
    return hankel(nu, x);
}

double omega_n(int n, double s) {
    if (n < 1) throw DomainError("omega_n: dimension must be >= 1");
    if (!(s >= 0.0)) throw DomainError("omega_n: s must be >= 0");
    if (n == 1) return std::sqrt(2.0 / kPi) * std::cos(s);
    if (n == 3) {
        if (s < 1e-4) return std::sqrt(2.0 / kPi) * (1.0 - s * s / 6.0 + s * s * s * s / 120.0);
        return std::sqrt(2.0 / kPi) * std::sin(s) / s;
    }
    const double nu = 0.5 * (n - 2);
    if (s <= kSeriesMaxX) return std::pow(2.0, -nu) * reduced_series(nu, s).value;
    return std::pow(s, -nu) * bessel_j(nu, s).value;
}

double omega_n_bound(int n) {
    if (n < 1) throw DomainError("omega_n_bound: dimension must be >= 1");
    return omega_n(n, 0.0);
}

}  // namespace fracdisp
