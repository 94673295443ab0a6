#include <boost/math/interpolators/makima.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "fracdisp/errors.hpp"
#include "fracdisp/freq.hpp"
#include "fracdisp/quadrature.hpp"
#include "fracdisp/specfun.hpp"

namespace fracdisp {

namespace {

constexpr int kGradeDepth = 40;
// Omega_n(rho x) is resolved by 16-point panels while width * x <= this
constexpr double kPhasePerPanel = 4.0;

using Makima = boost::math::interpolators::makima<std::vector<double>>;

// Complex-valued interpolant through (r_i, f_i), constant below r_0.
class ProfileInterp {
   public:
    ProfileInterp(const std::vector<double>& r, const std::vector<Complex>& f)
        : r0_(r.front()), r1_(r.back()), f0_(f.front()) {
        std::vector<double> xr(r), xi(r), re(f.size()), im(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
            re[i] = f[i].real();
            im[i] = f[i].imag();
        }
        re_ = std::make_shared<Makima>(std::move(xr), std::move(re));
        im_ = std::make_shared<Makima>(std::move(xi), std::move(im));
    }
    Complex operator()(double r) const {
        if (r <= r0_) return f0_;
        if (r >= r1_) r = r1_;
        return {(*re_)(r), (*im_)(r)};
    }

   private:
    double r0_, r1_;
    Complex f0_;
    std::shared_ptr<Makima> re_, im_;
};

std::vector<double> base_partition(const RadialSpectrum& s, int base_panels) {
    if (!s.breaks.empty()) return s.breaks;
    std::vector<double> b(static_cast<std::size_t>(base_panels) + 1);
    for (int i = 0; i <= base_panels; ++i) b[static_cast<std::size_t>(i)] = s.lo + (s.hi - s.lo) * i / base_panels;
    b.back() = s.hi;
    return b;
}

}  // namespace

// ------------------------------------------------------------ profiles

const char* to_string(GridKind k) noexcept {
    switch (k) {
        case GridKind::uniform: return "uniform";
        case GridKind::log_uniform: return "log-uniform";
        case GridKind::composite: return "composite";
    }
    return "composite";
}

GridKind grid_kind_from_string(const std::string& s) {
    if (s == "uniform") return GridKind::uniform;
    if (s == "log-uniform") return GridKind::log_uniform;
    if (s == "composite") return GridKind::composite;
    throw DomainError("unknown grid kind '" + s + "'");
}

void RadialProfile::validate() const {
    if (n < 1) throw DomainError("profile: dimension must be >= 1");
    if (radii.empty()) throw DomainError("profile: empty grid");
    if (radii.size() != values.size()) throw DomainError("profile: radii and values differ in length");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!std::isfinite(radii[i]) || radii[i] < 0.0) throw DomainError("profile: radii must be finite and >= 0");
        if (i > 0 && !(radii[i] > radii[i - 1])) throw DomainError("profile: radii must be strictly increasing");
        if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()))
            throw DomainError("profile: non-finite value");
    }
}

std::vector<double> uniform_grid(double a, double b, std::size_t count) {
    if (count < 2 || !(b > a)) throw DomainError("uniform_grid: need b > a and at least 2 points");
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i) g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
    g.back() = b;
    return g;
}

std::vector<double> log_uniform_grid(double a, double b, std::size_t count) {
    if (count < 2 || !(a > 0.0) || !(b > a)) throw DomainError("log_uniform_grid: need 0 < a < b and at least 2 points");
    std::vector<double> g(count);
    const double la = std::log(a), lb = std::log(b);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(count - 1));
    g.front() = a;
    g.back() = b;
    return g;
}

RadialProfile sample_profile(int n, const std::vector<double>& radii, const std::function<Complex(double)>& f,
                             GridKind kind) {
    RadialProfile p;
    p.n = n;
    p.radii = radii;
    p.grid_kind = kind;
    p.values.resize(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) p.values[i] = f(radii[i]);
    p.validate();
    return p;
}

void write_profile_csv(std::ostream& os, const RadialProfile& f) {
    f.validate();
    os << "# n=" << f.n << " grid_kind=" << to_string(f.grid_kind) << '\n';
    os << "r,re,im\n";
    os << std::setprecision(17);
    for (std::size_t i = 0; i < f.radii.size(); ++i)
        os << f.radii[i] << ',' << f.values[i].real() << ',' << f.values[i].imag() << '\n';
}

RadialProfile read_profile_csv(std::istream& is) {
    RadialProfile p;
    std::string line;
    if (!std::getline(is, line) || line.rfind("# ", 0) != 0) throw DomainError("profile csv: missing '# n=' line");
    {
        std::istringstream meta(line.substr(2));
        std::string tok;
        bool have_n = false;
        while (meta >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "n") {
                p.n = std::stoi(val);
                have_n = true;
            } else if (key == "grid_kind") {
                p.grid_kind = grid_kind_from_string(val);
            }
        }
        if (!have_n) throw DomainError("profile csv: no dimension in header");
    }
    if (!std::getline(is, line) || line != "r,re,im") throw DomainError("profile csv: expected header r,re,im");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string a, b, c;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c))
            throw DomainError("profile csv: malformed row '" + line + "'");
        p.radii.push_back(std::stod(a));
        p.values.emplace_back(std::stod(b), std::stod(c));
    }
    p.validate();
    return p;
}

// ---------------------------------------------------------- transforms

RadialTransform::RadialTransform(const RadialSpectrum& s, double x_max, const TransformOptions& opt)
    : n_(s.n), lo_(s.lo), hi_(s.hi), x_max_(x_max), rel_tol_(opt.rel_tol) {
    if (s.n < 1) throw DomainError("RadialTransform: dimension must be >= 1");
    if (!(s.hi > s.lo) || s.lo < 0.0) throw DomainError("RadialTransform: need 0 <= lo < hi");
    if (!(x_max >= 0.0) || !std::isfinite(x_max)) throw DomainError("RadialTransform: x_max must be finite, >= 0");
    if (!s.value) throw DomainError("RadialTransform: empty spectrum");
    const std::vector<double> base = base_partition(s, std::max(opt.base_panels, 1));
    double base_width = 0.0;
    for (std::size_t i = 1; i < base.size(); ++i) base_width = std::max(base_width, base[i] - base[i - 1]);
    const GaussRule& rule = gauss_legendre(16);
    const double nm1 = n_ - 1.0;

    auto build = [&](int level) {
        Level lv;
        const int split = 1 << level;
        std::vector<std::pair<double, double>> panels;
        for (std::size_t i = 1; i < base.size(); ++i) {
            const double a = base[i - 1], h = (base[i] - a) / split;
            for (int k = 0; k < split; ++k) {
                const double pa = a + k * h, pb = (k + 1 == split) ? base[i] : a + (k + 1) * h;
                if (i == 1 && k == 0 && s.kink_at_lo) {
                    for (int g = 0; g < kGradeDepth; ++g)
                        panels.emplace_back(pa + (pb - pa) * std::ldexp(1.0, -g - 1), pa + (pb - pa) * std::ldexp(1.0, -g));
                } else {
                    panels.emplace_back(pa, pb);
                }
            }
        }
        lv.width = base_width / split;
        lv.nodes.resize(panels.size() * rule.size());
        lv.weighted.resize(lv.nodes.size());
        std::vector<double> weights(lv.nodes.size());
        for (std::size_t p = 0; p < panels.size(); ++p) {
            const double half = 0.5 * (panels[p].second - panels[p].first);
            const double mid = 0.5 * (panels[p].second + panels[p].first);
            for (std::size_t q = 0; q < rule.size(); ++q) {
                lv.nodes[p * rule.size() + q] = mid + half * rule.nodes[q];
                weights[p * rule.size() + q] = half * rule.weights[q];
            }
        }
        parallel_for(
            lv.nodes.size(),
            [&](std::size_t i) {
                const double rho = lv.nodes[i];
                lv.weighted[i] = weights[i] * s.value(rho) * (nm1 == 0.0 ? 1.0 : std::pow(rho, nm1));
            },
            opt.exec);
        return lv;
    };

    // deepest level needed to resolve the oscillation at x_max, plus one
    int need = 0;
    while (need < opt.max_level && base_width / (1 << need) * x_max > kPhasePerPanel) ++need;
    for (int level = 0; level <= std::min(need + 1, opt.max_level); ++level) levels_.push_back(build(level));
    // refine further while the spectrum itself is unresolved at x = 0
    while (static_cast<int>(levels_.size()) <= opt.max_level) {
        const Complex a = apply(levels_[levels_.size() - 2], 0.0), b = apply(levels_.back(), 0.0);
        double m = 0.0;
        for (const Complex& w : levels_.back().weighted) m += std::abs(w);
        if (std::abs(a - b) <= rel_tol_ * m) break;
        levels_.push_back(build(static_cast<int>(levels_.size())));
    }
    for (const Complex& w : levels_.back().weighted) mass_ += std::abs(w);
    mass_ *= omega_n_bound(n_);
}

Complex RadialTransform::apply(const Level& lv, double x) const {
    Complex sum = 0.0;
    if (n_ == 1) {
        const double c = std::sqrt(2.0 / kPi);
        for (std::size_t i = 0; i < lv.nodes.size(); ++i) sum += lv.weighted[i] * std::cos(lv.nodes[i] * x);
        return c * sum;
    }
    for (std::size_t i = 0; i < lv.nodes.size(); ++i) sum += lv.weighted[i] * omega_n(n_, lv.nodes[i] * x);
    return sum;
}

Evaluated<Complex> RadialTransform::operator()(double x) const {
    if (!(x >= 0.0) || x > x_max_ * (1.0 + 1e-12))
        throw DomainError("RadialTransform: x = " + std::to_string(x) + " outside [0, x_max]");
    std::size_t level = 0;
    while (level + 2 < levels_.size() && levels_[level].width * x > kPhasePerPanel) ++level;
    Evaluated<Complex> out;
    out.diag.method = EvalMethod::poisson_quadrature;
    Complex prev = apply(levels_[level], x);
    double diff = std::numeric_limits<double>::infinity();
    for (std::size_t l = level + 1; l < levels_.size(); ++l) {
        const Complex cur = apply(levels_[l], x);
        diff = std::abs(cur - prev);
        prev = cur;
        out.diag.terms_or_nodes = levels_[l].nodes.size();
        if (diff <= rel_tol_ * mass_) break;
    }
    out.value = prev;
    out.diag.est_error = diff;
    return out;
}

RadialProfile radial_fourier(const RadialProfile& f, const std::vector<double>& out_radii, const TransformOptions& opt,
                             double tail_tol) {
    f.validate();
    if (out_radii.empty()) throw DomainError("radial_fourier: empty output grid");
    for (std::size_t i = 0; i < out_radii.size(); ++i)
        if (!(out_radii[i] >= 0.0) || (i > 0 && !(out_radii[i] > out_radii[i - 1])))
            throw DomainError("radial_fourier: output radii must be >= 0 and strictly increasing");
    RadialProfile out;
    out.n = f.n;
    out.radii = out_radii;
    out.grid_kind = GridKind::composite;
    out.values.assign(out_radii.size(), Complex(0.0));
    double peak = 0.0;
    for (const Complex& v : f.values) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return out;
    if (std::abs(f.values.back()) > tail_tol * peak)
        throw ConvergenceError("radial_fourier: profile has not decayed at the last radius (ratio " +
                               std::to_string(std::abs(f.values.back()) / peak) + ")");
    if (f.radii.size() < 4) throw DomainError("radial_fourier: need at least 4 samples");
    // drop the numerically zero tail so panels are not spent on it
    std::size_t last = f.radii.size() - 1;
    while (last > 3 && std::abs(f.values[last - 1]) <= 1e-18 * peak) --last;
    std::vector<double> r(f.radii.begin(), f.radii.begin() + static_cast<long>(last) + 1);
    std::vector<Complex> v(f.values.begin(), f.values.begin() + static_cast<long>(last) + 1);
    ProfileInterp interp(r, v);
    RadialSpectrum s;
    s.n = f.n;
    s.value = [interp](double rr) { return interp(rr); };
    s.lo = 0.0;
    s.hi = r.back();
    s.breaks.reserve(r.size() + 1);
    if (r.front() > 0.0) s.breaks.push_back(0.0);
    s.breaks.insert(s.breaks.end(), r.begin(), r.end());
    RadialTransform tr(s, out_radii.back(), opt);
    parallel_for(
        out_radii.size(), [&](std::size_t i) { out.values[i] = tr.value(out_radii[i]); }, opt.exec);
    return out;
}

RadialProfile band_project(const RadialProfile& f, DyadicBand band, const Cutoff& cutoff, const TransformOptions& opt) {
    const std::vector<double> rho = uniform_grid(band.lo(), band.hi(), 1025);
    RadialProfile spec = radial_fourier(f, rho, opt);
    for (std::size_t i = 0; i < rho.size(); ++i) spec.values[i] *= cutoff.psi(band.j, rho[i]);
    ProfileInterp interp(spec.radii, spec.values);
    RadialSpectrum s;
    s.n = f.n;
    s.value = [interp](double rr) { return interp(rr); };
    s.lo = band.lo();
    s.hi = band.hi();
    s.breaks = uniform_grid(band.lo(), band.hi(), 65);
    RadialTransform tr(s, f.radii.back(), opt);
    RadialProfile out;
    out.n = f.n;
    out.radii = f.radii;
    out.grid_kind = f.grid_kind;
    out.values.resize(f.radii.size());
    parallel_for(
        f.radii.size(), [&](std::size_t i) { out.values[i] = tr.value(f.radii[i]); }, opt.exec);
    return out;
}

// --------------------------------------------------------------- norms

LpResult lp_norm_radial(const RadialProfile& f, double p, double truncation_warn) {
    f.validate();
    if (!(p >= 1.0)) throw DomainError("lp_norm_radial: p must be >= 1");
    LpResult out;
    double peak = 0.0;
    for (const Complex& v : f.values) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return out;
    out.boundary_ratio = std::abs(f.values.back()) / peak;
    out.truncated = out.boundary_ratio > truncation_warn;
    if (std::isinf(p)) {
        out.value = peak;
        return out;
    }
    const double nm1 = f.n - 1.0;
    auto g = [&](std::size_t i) {
        return std::pow(std::abs(f.values[i]) / peak, p) * (nm1 == 0.0 ? 1.0 : std::pow(f.radii[i], nm1));
    };
    // [0, r_0] with the first value held constant
    double sum = std::pow(std::abs(f.values.front()) / peak, p) * std::pow(f.radii.front(), f.n) / f.n;
    for (std::size_t i = 1; i < f.radii.size(); ++i) sum += 0.5 * (f.radii[i] - f.radii[i - 1]) * (g(i) + g(i - 1));
    out.value = peak * std::pow(sphere_measure(f.n) * sum, 1.0 / p);
    return out;
}

SpatialNorm lp_norm_spatial(const std::function<Evaluated<Complex>(double)>& u, int n, double p,
                            const SpatialExtent& ext, Exec exec) {
    if (!(p >= 1.0)) throw DomainError("lp_norm_spatial: p must be >= 1");
    if (!(ext.x_core > 0.0) || !(ext.x_max >= ext.x_core) || !(ext.core_width > 0.0))
        throw DomainError("lp_norm_spatial: invalid extent");
    std::vector<std::pair<double, double>> panels;
    const int core = static_cast<int>(std::ceil(ext.x_core / ext.core_width));
    for (int i = 0; i < core; ++i) panels.emplace_back(ext.x_core * i / core, ext.x_core * (i + 1) / core);
    for (double a = ext.x_core; a < ext.x_max * (1.0 - 1e-12);) {
        const double b = std::min(a * 1.25, ext.x_max);
        panels.emplace_back(a, b);
        a = b;
    }
    const GaussRule& rule = gauss_legendre(16);
    const std::size_t m = rule.size();
    std::vector<double> x(panels.size() * m + 1), w(x.size(), 0.0);
    for (std::size_t k = 0; k < panels.size(); ++k) {
        const double half = 0.5 * (panels[k].second - panels[k].first);
        const double mid = 0.5 * (panels[k].second + panels[k].first);
        for (std::size_t q = 0; q < m; ++q) {
            x[k * m + q] = mid + half * rule.nodes[q];
            w[k * m + q] = half * rule.weights[q];
        }
    }
    x.back() = 0.0;  // sup only
    std::vector<double> mag(x.size()), err(x.size());
    parallel_for(
        x.size(),
        [&](std::size_t i) {
            const Evaluated<Complex> v = u(x[i]);
            mag[i] = std::abs(v.value);
            err[i] = v.diag.est_error;
        },
        exec);
    SpatialNorm out;
    out.nodes = x.size();
    for (std::size_t i = 0; i < x.size(); ++i) {
        out.sup = std::max(out.sup, mag[i]);
        out.quad_error = std::max(out.quad_error, err[i]);
    }
    if (std::isinf(p)) {
        out.value = out.sup;
        return out;
    }
    if (out.sup == 0.0) return out;
    const double nm1 = n - 1.0;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        sum += w[i] * std::pow(mag[i] / out.sup, p) * (nm1 == 0.0 ? 1.0 : std::pow(x[i], nm1));
    out.value = out.sup * std::pow(sphere_measure(n) * sum, 1.0 / p);
    return out;
}

double l2_norm_spectrum(const RadialSpectrum& s) {
    if (!s.value) throw DomainError("l2_norm_spectrum: empty spectrum");
    const double nm1 = s.n - 1.0;
    auto f = [&](double rho) { return std::norm(s.value(rho)) * (nm1 == 0.0 ? 1.0 : std::pow(rho, nm1)); };
    const std::vector<double> base = base_partition(s, 64);
    const GaussRule& rule = gauss_legendre(16);
    double scale = 0.0;
    for (std::size_t i = 1; i < base.size(); ++i) scale += std::fabs(integrate_fixed(f, base[i - 1], base[i], rule));
    if (scale == 0.0) return 0.0;
    std::vector<std::pair<double, double>> pieces;
    for (std::size_t i = 1; i < base.size(); ++i) {
        if (i == 1 && s.kink_at_lo) {
            const double a = base[0], w = base[1] - base[0];
            for (int g = kGradeDepth - 1; g >= 0; --g)
                pieces.emplace_back(a + w * std::ldexp(1.0, -g - 1), a + w * std::ldexp(1.0, -g));
        } else {
            pieces.emplace_back(base[i - 1], base[i]);
        }
    }
    const double tol = 1e-14 * scale / static_cast<double>(pieces.size());
    double sum = 0.0;
    for (const auto& pc : pieces) sum += integrate_adaptive(f, pc.first, pc.second, tol, 12).value;
    return std::sqrt(sphere_measure(s.n) * sum);
}

}  // namespace fracdisp
