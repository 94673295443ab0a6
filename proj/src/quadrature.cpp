#include "fracdisp/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "fracdisp/errors.hpp"
#include "fracdisp/types.hpp"

namespace fracdisp {

namespace {

// Newton iteration on P_n from the Chebyshev-like initial guesses.
GaussRule make_rule(int n) {
    GaussRule r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0, p1 = x;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        r.nodes[lo] = -x;
        r.nodes[hi] = x;
        r.weights[lo] = w;
        r.weights[hi] = w;
    }
    if (n % 2 == 1) r.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return r;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1 || n > 1024) throw DomainError("gauss_legendre: unsupported order");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<const GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<const GaussRule>(make_rule(n))).first;
    return *it->second;
}

}  // namespace fracdisp
