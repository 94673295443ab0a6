#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace fracdisp {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::size_t size() const noexcept { return nodes.size(); }
};

/// Cached n-point rule; safe to call concurrently.
const GaussRule& gauss_legendre(int n);

/// Fixed rule on [a, b].
template <class F>
auto integrate_fixed(F&& f, double a, double b, const GaussRule& rule) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    decltype(f(mid)) sum{};
    for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return sum * half;
}

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
};

namespace detail {

template <class F, class T>
void adaptive_step(F& f, double a, double b, T whole, double abs_tol, int depth, const GaussRule& rule,
                   QuadResult<T>& out) {
    const double m = 0.5 * (a + b);
    const T left = integrate_fixed(f, a, m, rule);
    const T right = integrate_fixed(f, m, b, rule);
    out.evaluations += 2 * rule.size();
    const double err = std::abs(left + right - whole);
    if (err <= abs_tol || depth <= 0 || (b - a) < 1e-14 * (std::fabs(a) + std::fabs(b))) {
        if (err > abs_tol) out.converged = false;
        out.value += left + right;
        out.error += err;
        return;
    }
    adaptive_step(f, a, m, left, 0.5 * abs_tol, depth - 1, rule, out);
    adaptive_step(f, m, b, right, 0.5 * abs_tol, depth - 1, rule, out);
}

}  // namespace detail

/// Adaptive bisection with a 16-point Gauss-Legendre base rule.  The error
/// estimate is |I(panel) - I(left half) - I(right half)|, summed.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, double abs_tol, int max_depth = 30) {
    using T = decltype(f(a));
    const GaussRule& rule = gauss_legendre(16);
    QuadResult<T> out;
    const T whole = integrate_fixed(f, a, b, rule);
    out.evaluations = rule.size();
    detail::adaptive_step(f, a, b, whole, abs_tol, max_depth, rule, out);
    return out;
}

}  // namespace fracdisp
