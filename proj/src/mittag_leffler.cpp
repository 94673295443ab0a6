#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>

#include "fracdisp/errors.hpp"
#include "fracdisp/specfun.hpp"

namespace fracdisp {

using quad = __float128;

struct QuadSeriesTable {
    std::vector<quad> coef;  // 1/Gamma(alpha k + 1)
};

namespace {

// Below this w the double-precision series loses at most a few ulps.
constexpr double kDoubleSeriesW = 1.5;
constexpr double kQuadEps = 1.0e-33;

std::size_t series_table_size(double alpha) {
    // enough terms to pass the peak at alpha k ~ w and decay by e^{-80}
    // for w up to kSeriesW
    return static_cast<std::size_t>(std::ceil(230.0 / alpha)) + 32;
}

std::size_t asymptotic_table_size(double alpha) {
    return static_cast<std::size_t>(std::ceil(70.0 / alpha)) + 16;
}

double w_of(double alpha, double zabs) { return std::pow(zabs, 1.0 / alpha); }

struct Accum {
    double sum_abs = 0.0;
    double last = 0.0;
    std::size_t terms = 0;
};

// Sums c_k z^k.  Real T is double or quad.  Purely real and purely imaginary
// z are handled in real arithmetic so the phases stay exact.
template <class T, class Coef>
Complex sum_series(const Coef& coef, Complex z, double alpha, double tol, Accum& acc) {
    const double zabs = std::abs(z);
    const double w = w_of(alpha, zabs);
    const std::size_t kmax = coef.size();
    T re = 0, im = 0;
    int small_run = 0;
    auto done = [&](std::size_t k, double term_abs, double sum_abs) {
        const bool past_peak = alpha * static_cast<double>(k) > w + 1.0;
        if (past_peak && term_abs <= tol * sum_abs) return ++small_run >= 2;
        small_run = 0;
        return false;
    };

    if (z.imag() == 0.0 || z.real() == 0.0) {
        const bool imaginary = z.real() == 0.0;
        const T y = imaginary ? T(z.imag()) : T(z.real());
        T pk = 1;
        for (std::size_t k = 0; k < kmax; ++k) {
            const T m = pk * coef[k];
            if (!imaginary) {
                re += m;
            } else {
                switch (k & 3U) {
                    case 0: re += m; break;
                    case 1: im += m; break;
                    case 2: re -= m; break;
                    default: im -= m; break;
                }
            }
            const double ma = std::fabs(static_cast<double>(m));
            acc.sum_abs += ma;
            acc.last = ma;
            acc.terms = k + 1;
            const double s = std::hypot(static_cast<double>(re), static_cast<double>(im));
            if (done(k, ma, s)) return {static_cast<double>(re), static_cast<double>(im)};
            pk *= y;
        }
    } else {
        const T zr = z.real(), zi = z.imag();
        T pr = 1, pi = 0;
        for (std::size_t k = 0; k < kmax; ++k) {
            const T tr = pr * coef[k], ti = pi * coef[k];
            re += tr;
            im += ti;
            const double ma = std::hypot(static_cast<double>(tr), static_cast<double>(ti));
            acc.sum_abs += ma;
            acc.last = ma;
            acc.terms = k + 1;
            const double s = std::hypot(static_cast<double>(re), static_cast<double>(im));
            if (done(k, ma, s)) return {static_cast<double>(re), static_cast<double>(im)};
            const T nr = pr * zr - pi * zi;
            pi = pr * zi + pi * zr;
            pr = nr;
        }
    }
    throw ConvergenceError("ml_series: term cap reached before tolerance (|z| = " +
                           std::to_string(zabs) + ")");
}

}  // namespace

MLOrder::MLOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("MLOrder: alpha must lie in (0, 1], got " + std::to_string(alpha));
}

double series_radius(MLOrder order) { return std::pow(kSeriesW, order.alpha()); }
double asymptotic_radius(MLOrder order) { return std::pow(kAsymptoticW, order.alpha()); }
double switch_radius(MLOrder order) { return std::pow(kSwitchW, order.alpha()); }

MittagLeffler::MittagLeffler(MLOrder order) : alpha_(order.alpha()) {
    const std::size_t ks = series_table_size(alpha_);
    series_coef_.resize(ks);
    auto table = std::make_shared<QuadSeriesTable>();
    table->coef.resize(ks);
    for (std::size_t k = 0; k < ks; ++k) {
        const quad a = static_cast<quad>(alpha_) * static_cast<quad>(k) + 1;
        const quad c = expq(-lgammaq(a));
        table->coef[k] = c;
        series_coef_[k] = static_cast<double>(c);
    }
    series_q_ = std::move(table);

    const std::size_t ka = asymptotic_table_size(alpha_);
    asym_coef_.resize(ka);
    for (std::size_t j = 0; j < ka; ++j) asym_coef_[j] = recip_gamma(1.0 - alpha_ * static_cast<double>(j));
}

double MittagLeffler::asymptotic_coefficient(int j) const {
    if (j < 0) throw DomainError("asymptotic_coefficient: negative index");
    const auto idx = static_cast<std::size_t>(j);
    const double c = idx < asym_coef_.size() ? asym_coef_[idx] : recip_gamma(1.0 - alpha_ * j);
    return -c;
}

Evaluated<Complex> MittagLeffler::series(Complex z, double tol) const {
    if (!(tol > 0.0)) throw DomainError("ml_series: tol must be positive");
    const double zabs = std::abs(z);
    if (zabs > series_radius(MLOrder(alpha_)) * (1.0 + 1e-12))
        throw DomainError("ml_series: |z| = " + std::to_string(zabs) + " beyond the series radius");
    Evaluated<Complex> out;
    out.diag.method = EvalMethod::series;
    if (zabs == 0.0) {
        out.value = 1.0;
        out.diag.terms_or_nodes = 1;
        return out;
    }
    Accum acc;
    const double w = w_of(alpha_, zabs);
    double eps;
    if (w <= kDoubleSeriesW) {
        out.value = sum_series<double>(series_coef_, z, alpha_, tol, acc);
        eps = std::numeric_limits<double>::epsilon();
    } else {
        out.value = sum_series<quad>(series_q_->coef, z, alpha_, tol, acc);
        eps = kQuadEps;
    }
    out.diag.terms_or_nodes = acc.terms;
    out.diag.est_error = 4.0 * eps * acc.sum_abs + 2.0 * acc.last +
                         std::numeric_limits<double>::epsilon() * std::abs(out.value);
    return out;
}

bool MittagLeffler::exponential_present(Complex z) const {
    return std::fabs(std::arg(z)) <= alpha_ * kPi;
}

double MittagLeffler::exponential_weight(Complex z) const {
    // the residue (1/alpha) exp(z^{1/alpha}) belongs to E_alpha inside
    // |arg z| < alpha pi and enters with weight 1/2 on the boundary ray
    return std::fabs(std::arg(z)) == alpha_ * kPi ? 0.5 : 1.0;
}

Complex MittagLeffler::exponential_term(Complex z) const {
    const double w = w_of(alpha_, std::abs(z));
    const double phase = std::arg(z) / alpha_;
    const double re = w * std::cos(phase);
    if (re > 709.0) throw OverflowError("Mittag-Leffler: exponential term overflows");
    return std::polar(std::exp(re) / alpha_, w * std::sin(phase));
}

double MittagLeffler::excluded_exponential_bound(Complex z) const {
    // beyond |arg z| = alpha pi the residue is gone; what remains near the
    // boundary ray is of size exp(w cos(pi)) at most
    const double w = w_of(alpha_, std::abs(z));
    const double phase = std::min(std::fabs(std::arg(z)) / alpha_, kPi);
    return std::exp(w * std::cos(phase)) / alpha_;
}

Evaluated<Complex> MittagLeffler::asymptotic(Complex z, int k) const {
    const double zabs = std::abs(z);
    if (k < 1) throw DomainError("ml_asymptotic: k must be >= 1");
    if (zabs < asymptotic_radius(MLOrder(alpha_)) * (1.0 - 1e-12))
        throw DomainError("ml_asymptotic: |z| = " + std::to_string(zabs) + " below the asymptotic radius");
    Evaluated<Complex> out;
    out.diag.method = EvalMethod::asymptotic;
    out.diag.terms_or_nodes = static_cast<std::size_t>(k);
    const Complex zinv = 1.0 / z;
    Complex p = 1.0, s = 0.0;
    for (int j = 1; j <= k; ++j) {
        p *= zinv;
        s += asymptotic_coefficient(j) * p;
    }
    double next = 0.0;
    Complex pn = p;
    for (int j = k + 1; j <= k + 2; ++j) {
        pn *= zinv;
        next = std::max(next, std::abs(asymptotic_coefficient(j) * pn));
    }
    out.diag.est_error = 2.0 * next;
    if (exponential_present(z)) {
        s += exponential_weight(z) * exponential_term(z);
    } else if (alpha_ < 1.0) {
        out.diag.est_error += excluded_exponential_bound(z);
    }
    out.value = s;
    return out;
}

Evaluated<Complex> MittagLeffler::asymptotic_auto(Complex z) const {
    const double zabs = std::abs(z);
    if (zabs < asymptotic_radius(MLOrder(alpha_)) * (1.0 - 1e-12))
        throw DomainError("ml_asymptotic: |z| = " + std::to_string(zabs) + " below the asymptotic radius");
    Evaluated<Complex> out;
    out.diag.method = EvalMethod::asymptotic;
    // |1/Gamma(1 - x)| <= Gamma(x)/pi for x > 0; the envelope Gamma(alpha j)/(pi |z|^j)
    // is smooth in j, so truncating at its minimum is not fooled by the zeros
    // of 1/Gamma near the poles
    const double lz = std::log(zabs);
    auto log_envelope = [&](int j) { return std::lgamma(alpha_ * j) - j * lz - std::log(kPi); };
    const Complex zinv = 1.0 / z;
    Complex p = 1.0, s = 0.0;
    const int jmax = static_cast<int>(asym_coef_.size()) - 1;
    int used = 0;
    double prev_env = std::numeric_limits<double>::infinity();
    double omitted = 0.0;
    bool stopped = false;
    for (int j = 1; j <= jmax; ++j) {
        const double env = std::exp(log_envelope(j));
        if (j > 1 && env > prev_env) {
            omitted = prev_env;
            stopped = true;
            break;
        }
        p *= zinv;
        s += asymptotic_coefficient(j) * p;
        used = j;
        prev_env = env;
        if (env <= 1e-17 * std::abs(s)) {
            omitted = env;
            stopped = true;
            break;
        }
    }
    if (!stopped) omitted = prev_env;
    out.diag.terms_or_nodes = static_cast<std::size_t>(used);
    out.diag.est_error = 2.0 * omitted;
    if (exponential_present(z)) {
        s += exponential_weight(z) * exponential_term(z);
    } else if (alpha_ < 1.0) {
        out.diag.est_error += excluded_exponential_bound(z);
    }
    out.value = s;
    return out;
}

Evaluated<Complex> MittagLeffler::operator()(Complex z) const {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("Mittag-Leffler: non-finite argument");
    Evaluated<Complex> out;
    if (alpha_ == 1.0) {
        out.diag.method = EvalMethod::closed_form;
        out.diag.terms_or_nodes = 1;
        if (z.real() > 709.0) throw OverflowError("Mittag-Leffler: exp overflows");
        out.value = std::exp(z);
        out.diag.est_error = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(out.value) * (1.0 + std::abs(z));
        return out;
    }
    const double zabs = std::abs(z);
    if (zabs <= switch_radius(MLOrder(alpha_))) return series(z);
    out = asymptotic_auto(z);
    if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()))
        throw OverflowError("Mittag-Leffler: result not finite");
    return out;
}

const MittagLeffler& ml_evaluator(MLOrder order) {
    static std::mutex mu;
    static std::map<double, std::unique_ptr<const MittagLeffler>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order.alpha());
    if (it == cache.end()) it = cache.emplace(order.alpha(), std::make_unique<const MittagLeffler>(order)).first;
    return *it->second;
}

Evaluated<Complex> ml_series(MLOrder order, Complex z, double tol) { return ml_evaluator(order).series(z, tol); }

Evaluated<Complex> ml_asymptotic(MLOrder order, Complex z, int k) { return ml_evaluator(order).asymptotic(z, k); }

Evaluated<Complex> ml_eval(MLOrder order, Complex z) { return ml_evaluator(order)(z); }

}  // namespace fracdisp
