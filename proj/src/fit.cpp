#include <algorithm>
#include <cmath>

#include "fracdisp/errors.hpp"
#include "fracdisp/estimates.hpp"

namespace fracdisp {

FitResult fit_exponent(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 3) throw DomainError("fit_exponent: need at least 3 samples");
    const std::size_t m = samples.size();
    std::vector<double> x(m), y(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!(samples[i].first > 0.0) || !(samples[i].second > 0.0) || !std::isfinite(samples[i].first) ||
            !std::isfinite(samples[i].second))
            throw DomainError("fit_exponent: samples must be finite and positive");
        x[i] = std::log(samples[i].first);
        y[i] = std::log(samples[i].second);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 1e-300)) throw DomainError("fit_exponent: all parameters are equal");
    FitResult r;
    r.n_points = m;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double e = y[i] - (r.intercept + r.slope * x[i]);
        ss_res += e * e;
        r.residual_max = std::max(r.residual_max, std::fabs(e));
    }
    // a constant series (up to rounding of the logs) is fitted exactly
    const double flat = 1e-26 * static_cast<double>(m) * (1.0 + my * my);
    r.r_squared = syy > flat ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    return r;
}

}  // namespace fracdisp
