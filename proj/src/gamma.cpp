#include <cmath>
#include <limits>
#include <string>

#include "fracdisp/errors.hpp"
#include "fracdisp/specfun.hpp"

namespace fracdisp {

namespace {

constexpr double kGammaOverflow = 171.62437695630272;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

}  // namespace

const char* to_string(EvalMethod m) noexcept {
    switch (m) {
        case EvalMethod::series: return "series";
        case EvalMethod::asymptotic: return "asymptotic";
        case EvalMethod::poisson_quadrature: return "poisson-quadrature";
        case EvalMethod::closed_form: return "closed-form";
    }
    return "unknown";
}

double sin_pi(double x) {
    if (x == std::floor(x)) return 0.0;
    // reduce to [-1, 1); fmod is exact
    double r = std::fmod(x, 2.0);
    if (r >= 1.0) r -= 2.0;
    if (r < -1.0) r += 2.0;
    if (r == 0.5) return 1.0;
    if (r == -0.5) return -1.0;
    return std::sin(kPi * r);
}

double gamma_real(double x) {
    if (std::isnan(x)) throw DomainError("gamma_real: NaN argument");
    if (is_nonpositive_integer(x)) throw PoleError("gamma_real: pole at x = " + std::to_string(x));
    if (x > kGammaOverflow) throw OverflowError("gamma_real: overflow for x = " + std::to_string(x));
    const double g = std::tgamma(x);
    if (!std::isfinite(g)) throw OverflowError("gamma_real: overflow for x = " + std::to_string(x));
    return g;
}

double recip_gamma(double x) {
    if (std::isnan(x)) return x;
    if (is_nonpositive_integer(x)) return 0.0;
    if (x > 170.0) return std::exp(-std::lgamma(x));
    if (x < -170.0) {
        // reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
        const double s = sin_pi(x);
        return std::copysign(std::exp(std::lgamma(1.0 - x) - std::log(kPi)), s) * std::fabs(s);
    }
    return 1.0 / std::tgamma(x);
}

}  // namespace fracdisp
