#include "fracdisp/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "fracdisp/errors.hpp"
#include "fracdisp/specfun.hpp"

namespace fracdisp {

namespace {

// Band-limited functions on the unit band have decayed below 1e-6 here.
constexpr double kBandExtent = 160.0;

double conjugate(double r) {
    if (std::isinf(r)) return 1.0;
    return r / (r - 1.0);
}

std::vector<std::pair<double, double>> ok_samples(const std::vector<SweepRecord>& recs, bool by_t,
                                                  std::size_t& excluded) {
    std::vector<std::pair<double, double>> s;
    excluded = 0;
    for (const SweepRecord& r : recs) {
        if (!r.ok || !(r.sup_K > 0.0)) {
            ++excluded;
            continue;
        }
        s.emplace_back(by_t ? r.t : r.N, r.sup_K);
    }
    return s;
}

Json sweep_json(const std::vector<SweepRecord>& recs) {
    Json a = Json::array();
    for (const SweepRecord& r : recs) {
        Json row = {{"t", r.t}, {"N", r.N}, {"sup_K", r.sup_K}, {"x_star", r.x_star}, {"ok", r.ok}};
        if (!r.ok) row["error"] = r.error;
        a.push_back(row);
    }
    return a;
}

void apply_fit(CheckReport& rep, const std::vector<std::pair<double, double>>& samples, double expected, double tol,
               double r2_min) {
    rep.metrics.expected = expected;
    rep.metrics.tolerance = tol;
    if (samples.size() < 3) {
        rep.pass = false;
        rep.details["error"] = "fewer than 3 usable cells";
        return;
    }
    const FitResult f = fit_exponent(samples);
    rep.metrics.slope = f.slope;
    rep.metrics.r_squared = f.r_squared;
    rep.details["intercept"] = f.intercept;
    rep.details["residual_max"] = f.residual_max;
    rep.pass = std::fabs(f.slope - expected) <= tol && f.r_squared >= r2_min;
}

Json spec_json(const KernelSpec& s) {
    return {{"n", s.n}, {"alpha", s.alpha}, {"beta", s.beta}, {"normalization", to_string(s.normalization)}};
}

// L^p norm of the function with spectrum window(rho / N) S(rho), computed on
// the unit scale: f(x) = N^n h(N x).
double windowed_lp_norm(const RadialSpectrum& S, double N, double p, const std::function<double(double)>& window,
                        double w_lo, double w_hi) {
    RadialSpectrum h;
    h.n = S.n;
    h.lo = w_lo;
    h.hi = w_hi;
    const RadialFn& v = S.value;
    const double lo = S.lo, hi = S.hi;
    h.value = [&v, &window, N, lo, hi](double r) {
        const double rho = N * r;
        if (rho < lo || rho > hi) return Complex(0.0);
        return v(rho) * window(r);
    };
    const double n = S.n;
    const double scale = std::isinf(p) ? std::pow(N, n) : std::pow(N, n * (1.0 - 1.0 / p));
    if (p == 2.0) return scale * l2_norm_spectrum(h);
    TransformOptions topt;
    topt.exec = Exec::serial;
    topt.max_level = 8;
    const RadialTransform tr(h, kBandExtent, topt);
    SpatialExtent ext;
    ext.x_core = kBandExtent;
    ext.x_max = kBandExtent;
    return scale * lp_norm_spatial([&tr](double x) { return tr(x); }, S.n, p, ext, Exec::serial).value;
}

}  // namespace

// ---------------------------------------------------------------- sweeps

std::vector<SweepRecord> decay_sweep(const KernelSpec& spec, const std::vector<double>& t_grid,
                                     const std::vector<int>& j_grid, const SweepOptions& opt) {
    spec.validate();
    if (t_grid.empty() || j_grid.empty()) throw DomainError("decay_sweep: empty grid");
    const std::size_t J = j_grid.size();
    std::vector<SweepRecord> out(t_grid.size() * J);
    parallel_for(
        out.size(),
        [&](std::size_t c) {
            SweepRecord& r = out[c];
            const DyadicBand band{j_grid[c % J]};
            r.t = t_grid[c / J];
            r.N = band.N();
            r.t_alpha_N_beta = std::pow(r.t, spec.alpha) * std::pow(r.N, spec.beta);
            try {
                const SupResult s =
                    sup_search(spec, r.t, band, default_sup_grid(band, opt.x_points), Exec::serial, opt.band);
                r.sup_K = s.value;
                r.x_star = s.x_star;
                r.max_est_error = s.max_est_error;
            } catch (const Error& e) {
                r.ok = false;
                r.error = e.what();
            }
        },
        opt.exec);
    return out;
}

std::vector<SweepRecord> full_decay_sweep(const KernelSpec& spec, const std::vector<double>& t_grid,
                                          const std::vector<double>& x_grid, const SweepOptions& opt) {
    spec.validate();
    if (t_grid.empty() || x_grid.empty()) throw DomainError("full_decay_sweep: empty grid");
    const std::size_t X = x_grid.size();
    std::vector<KernelSample> cells(t_grid.size() * X);
    std::vector<std::string> errors(cells.size());
    parallel_for(
        cells.size(),
        [&](std::size_t c) {
            try {
                cells[c] = kernel_full(spec, t_grid[c / X], x_grid[c % X], opt.full);
            } catch (const Error& e) {
                errors[c] = e.what();
            }
        },
        opt.exec);
    std::vector<SweepRecord> out(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        SweepRecord& r = out[i];
        r.t = t_grid[i];
        r.t_alpha_N_beta = std::pow(r.t, spec.alpha);
        for (std::size_t k = 0; k < X; ++k) {
            const std::size_t c = i * X + k;
            if (!errors[c].empty()) {
                r.ok = false;
                r.error = errors[c];
                continue;
            }
            const double a = std::abs(cells[c].value);
            if (a > r.sup_K) {
                r.sup_K = a;
                r.x_star = x_grid[k];
            }
            r.max_est_error = std::max(r.max_est_error, cells[c].diag.est_error);
        }
    }
    return out;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
    os << "t,N,sup_K,x_star,t_alpha_N_beta,max_est_error,status\n" << std::setprecision(17);
    for (const SweepRecord& r : records)
        os << r.t << ',' << r.N << ',' << r.sup_K << ',' << r.x_star << ',' << r.t_alpha_N_beta << ','
           << r.max_est_error << ',' << (r.ok ? "ok" : "failed") << '\n';
}

std::vector<SweepRecord> read_sweep_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("t,N,sup_K", 0) != 0) throw DomainError("sweep CSV: missing header");
    std::vector<SweepRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell[7];
        for (auto& c : cell) std::getline(ss, c, ',');
        try {
            SweepRecord r;
            r.t = std::stod(cell[0]);
            r.N = std::stod(cell[1]);
            r.sup_K = std::stod(cell[2]);
            r.x_star = std::stod(cell[3]);
            r.t_alpha_N_beta = std::stod(cell[4]);
            r.max_est_error = std::stod(cell[5]);
            r.ok = cell[6] == "ok";
            out.push_back(r);
        } catch (const std::exception&) {
            throw DomainError("sweep CSV: malformed row '" + line + "'");
        }
    }
    return out;
}

// ------------------------------------------------------ decay and sharpness

CheckReport verify_time_decay(const KernelSpec& spec, const std::vector<double>& t_grid, int j, double tol,
                              const SweepOptions& opt) {
    const std::vector<SweepRecord> recs = decay_sweep(spec, t_grid, {j}, opt);
    CheckReport rep;
    rep.check = "thm12-time";
    rep.params = {{"spec", spec_json(spec)}, {"j", j}, {"t_grid", t_grid}};
    const auto samples = ok_samples(recs, true, rep.cells_excluded);
    apply_fit(rep, samples, -spec.alpha, tol, 0.99);
    double tmin = std::numeric_limits<double>::infinity();
    for (const SweepRecord& r : recs) tmin = std::min(tmin, r.t_alpha_N_beta);
    rep.details["min_t_alpha_N_beta"] = tmin;
    rep.details["cells"] = sweep_json(recs);
    return rep;
}

CheckReport verify_frequency_scaling(const KernelSpec& spec, double t, const std::vector<int>& j_grid, double tol,
                                     const SweepOptions& opt) {
    const std::vector<SweepRecord> recs = decay_sweep(spec, {t}, j_grid, opt);
    CheckReport rep;
    rep.check = "thm12-frequency";
    rep.params = {{"spec", spec_json(spec)}, {"t", t}, {"j_grid", j_grid}};
    const auto samples = ok_samples(recs, false, rep.cells_excluded);
    apply_fit(rep, samples, spec.n - spec.beta, tol, 0.0);
    double tmin = std::numeric_limits<double>::infinity();
    for (const SweepRecord& r : recs) tmin = std::min(tmin, r.t_alpha_N_beta);
    rep.details["min_t_alpha_N_beta"] = tmin;
    rep.details["cells"] = sweep_json(recs);
    return rep;
}

CheckReport verify_full_decay(const KernelSpec& spec, const std::vector<double>& t_grid,
                              const std::vector<double>& x_grid, double tol, const SweepOptions& opt) {
    if (!(spec.beta > spec.n)) throw DomainError("verify_full_decay: needs beta > n");
    const std::vector<SweepRecord> recs = full_decay_sweep(spec, t_grid, x_grid, opt);
    CheckReport rep;
    rep.check = "thm12-full";
    rep.params = {{"spec", spec_json(spec)}, {"t_grid", t_grid}, {"x_points", x_grid.size()}};
    const auto samples = ok_samples(recs, true, rep.cells_excluded);
    apply_fit(rep, samples, -spec.n * spec.alpha / spec.beta, tol, 0.0);
    rep.details["cells"] = sweep_json(recs);
    return rep;
}

CheckReport verify_sharpness(const KernelSpec& spec, const std::vector<double>& t_grid,
                             const std::vector<int>& j_grid, double max_spread, const SweepOptions& opt) {
    const std::vector<SweepRecord> recs = decay_sweep(spec, t_grid, j_grid, opt);
    CheckReport rep;
    rep.check = "sharpness";
    rep.params = {{"spec", spec_json(spec)}, {"t_grid", t_grid}, {"j_grid", j_grid}, {"max_spread", max_spread}};
    double cmin = std::numeric_limits<double>::infinity(), cmax = 0.0;
    Json cells = Json::array();
    for (const SweepRecord& r : recs) {
        if (!r.ok) {
            ++rep.cells_excluded;
            continue;
        }
        const double c = r.sup_K * (1.0 + r.t_alpha_N_beta) / std::pow(r.N, spec.n);
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
        cells.push_back({{"t", r.t}, {"N", r.N}, {"c", c}, {"x_star", r.x_star}});
    }
    rep.details["c_min"] = cmin;
    rep.details["c_max"] = cmax;
    rep.details["cells"] = cells;
    rep.metrics.tolerance = max_spread;
    if (cells.empty()) return rep;
    rep.metrics.ratio_spread = cmin > 0.0 ? cmax / cmin : std::numeric_limits<double>::infinity();
    rep.pass = cmin > 0.0 && rep.metrics.ratio_spread <= max_spread;
    return rep;
}

CheckReport verify_scaling_identity(const KernelSpec& spec, const std::vector<std::pair<double, double>>& tx,
                                    double tol, const FullOptions& opt) {
    CheckReport rep;
    rep.check = "lemma31-scaling";
    rep.params = {{"spec", spec_json(spec)}, {"pairs", tx.size()}};
    rep.metrics.tolerance = tol;
    double worst = 0.0;
    Json rows = Json::array();
    for (const auto& [t, x] : tx) {
        const KernelSample direct = kernel_full_direct(spec, t, x, opt);
        const KernelSample scaled = kernel_full(spec, t, x, opt);
        const double rel = std::abs(direct.value - scaled.value) / std::abs(direct.value);
        worst = std::max(worst, rel);
        rows.push_back({{"t", t}, {"x", x}, {"rel", rel}});
    }
    rep.details["max_rel"] = worst;
    rep.details["pairs"] = rows;
    rep.pass = !tx.empty() && worst <= tol;
    return rep;
}

CheckReport verify_expansion(const KernelSpec& spec, double t, const std::vector<double>& eta_grid, double max_spread,
                             double min_gain, const FullOptions& opt) {
    if (eta_grid.empty()) throw DomainError("verify_expansion: empty eta grid");
    CheckReport rep;
    rep.check = "lemma31-expansion";
    rep.params = {{"spec", spec_json(spec)}, {"t", t}, {"eta_grid", eta_grid}};
    rep.metrics.tolerance = max_spread;
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    double eta_small = std::numeric_limits<double>::infinity(), gain = 0.0;
    Json rows = Json::array();
    for (double eta : eta_grid) {
        const double x = eta * std::pow(t, spec.alpha / spec.beta);
        const ExpansionResidual e = expansion_residual(spec, t, x, opt);
        rmin = std::min(rmin, e.residual);
        rmax = std::max(rmax, e.residual);
        if (eta < eta_small) {
            eta_small = eta;
            gain = e.raw / e.residual;
        }
        rows.push_back({{"eta", eta}, {"residual", e.residual}, {"raw", e.raw}, {"terms", e.terms}});
    }
    rep.metrics.ratio_spread = rmin > 0.0 ? rmax / rmin : std::numeric_limits<double>::infinity();
    rep.details["gain_at_smallest_eta"] = gain;
    rep.details["min_gain"] = min_gain;
    rep.details["points"] = rows;
    rep.pass = rep.metrics.ratio_spread <= max_spread && gain >= min_gain;
    return rep;
}

CheckReport verify_log_behavior(int n, double eta_a, double eta_b, double tol, const FullOptions& opt) {
    CheckReport rep;
    rep.check = "lemma31-log";
    rep.params = {{"n", n}, {"eta_a", eta_a}, {"eta_b", eta_b}};
    rep.metrics.tolerance = tol;
    const Evaluated<Complex> wa = w1_eval(n, eta_a, opt), wb = w1_eval(n, eta_b, opt);
    const double ra = wa.value.real() / std::log(1.0 / eta_a);
    const double rb = wb.value.real() / std::log(1.0 / eta_b);
    const double variation = std::fabs(ra - rb) / std::max(std::fabs(ra), std::fabs(rb));
    rep.metrics.ratio_spread = variation;
    rep.details["ratio_a"] = ra;
    rep.details["ratio_b"] = rb;
    rep.details["w_a"] = wa.value.real();
    rep.details["w_b"] = wb.value.real();
    rep.pass = ra > 0.0 && rb > 0.0 && variation <= tol;
    return rep;
}

// ------------------------------------------------------------ test inputs

const char* to_string(TestShape s) noexcept { return s == TestShape::gaussian ? "gaussian" : "band-limited"; }

TestShape test_shape_from_string(const std::string& s) {
    if (s == "gaussian") return TestShape::gaussian;
    if (s == "band-limited") return TestShape::band_limited;
    throw DomainError("unknown test function '" + s + "'");
}

std::pair<double, double> TestFunction::support() const {
    if (shape == TestShape::gaussian) return {0.0, 9.0 / dilation};  // exp(-40.5) beyond
    return {0.5 / dilation, 2.0 / dilation};
}

RadialSpectrum TestFunction::spectrum() const {
    if (n < 1) throw DomainError("TestFunction: dimension must be >= 1");
    if (!(dilation > 0.0)) throw DomainError("TestFunction: dilation must be positive");
    RadialSpectrum s;
    s.n = n;
    std::tie(s.lo, s.hi) = support();
    const double d = dilation, amp = std::pow(dilation, n);
    if (shape == TestShape::gaussian) {
        s.value = [d, amp](double rho) { return Complex(amp * std::exp(-0.5 * d * d * rho * rho)); };
    } else {
        const Cutoff c;
        s.value = [c, d, amp](double rho) { return Complex(amp * c.psi(0, d * rho)); };
    }
    return s;
}

RadialSpectrum TestFunction::evolved(const KernelSpec& spec, double t) const {
    spec.validate();
    if (!(t >= 0.0)) throw DomainError("TestFunction: t must be >= 0");
    RadialSpectrum s = spectrum();
    if (t == 0.0) return s;
    const MittagLeffler* ml = &ml_evaluator(MLOrder(spec.alpha));
    const double T = std::pow(t, spec.alpha), beta = spec.beta;
    const RadialFn base = s.value;
    s.value = [ml, T, beta, base](double rho) {
        return ml->value(Complex(0.0, -T * std::pow(rho, beta))) * base(rho);
    };
    s.kink_at_lo = s.lo == 0.0;
    return s;
}

SpatialExtent spatial_extent(const TestFunction& f, const KernelSpec& spec, double t) {
    const double s = f.dilation;
    const double spread = t > 0.0 ? std::pow(t, spec.alpha / spec.beta) : 0.0;
    SpatialExtent e;
    e.core_width = 0.25 * s;
    e.x_core = (f.shape == TestShape::gaussian ? 40.0 : kBandExtent) * s;
    e.x_max = std::max(e.x_core, 40.0 * (s + spread));
    return e;
}

double evolved_lp_norm(const TestFunction& f, const KernelSpec& spec, double t, double p, Exec exec) {
    const RadialSpectrum s = f.evolved(spec, t);
    if (p == 2.0) return l2_norm_spectrum(s);
    const SpatialExtent ext = spatial_extent(f, spec, t);
    TransformOptions topt;
    topt.exec = exec;
    const RadialTransform tr(s, ext.x_max, topt);
    return lp_norm_spatial([&tr](double x) { return tr(x); }, s.n, p, ext, exec).value;
}

// ------------------------------------------------------ dispersive checks

Json to_json(const InequalityReport& r) {
    Json rhs = Json::array();
    for (double v : r.rhs_terms) rhs.push_back(v);
    return {{"lhs", r.lhs}, {"rhs_terms", rhs}, {"ratio", r.ratio}, {"params", r.params}};
}

InequalityReport verify_band_linfty(const KernelSpec& spec, double t, DyadicBand band, const TestFunction& f,
                                    double r) {
    if (!(r >= 2.0)) throw DomainError("verify_band_linfty: r must be >= 2");
    const Cutoff c;
    const double N = band.N(), rp = conjugate(r), theta = std::isinf(r) ? 1.0 : 1.0 - 2.0 / r;
    const RadialSpectrum ev = f.evolved(spec, t);
    const RadialSpectrum phi = f.spectrum();
    InequalityReport out;
    out.lhs = windowed_lp_norm(ev, N, std::numeric_limits<double>::infinity(),
                               [c](double x) { return c.psi(0, x); }, 0.5, 2.0);
    const double around = windowed_lp_norm(phi, N, rp, [c](double x) { return c.psi_around(0, x); }, 0.25, 4.0);
    const double n = spec.n;
    if (t == 0.0) {
        out.rhs_terms = {std::pow(N, n / rp) * around};
        out.params["form"] = "bernstein";
    } else {
        out.rhs_terms = {std::pow(t, -spec.alpha * theta) * std::pow(N, n / rp - spec.beta * theta) * around};
        out.params["form"] = "interpolated";
    }
    out.ratio = out.lhs / out.rhs_terms.front();
    out.params["t"] = t;
    out.params["j"] = band.j;
    out.params["r"] = std::isinf(r) ? Json("inf") : Json(r);
    return out;
}

const char* to_string(BesovVariant v) noexcept {
    switch (v) {
        case BesovVariant::eq7: return "eq7";
        case BesovVariant::eq8: return "eq8";
        case BesovVariant::eq9: return "eq9";
    }
    return "eq9";
}

BesovVariant besov_variant_from_string(const std::string& s) {
    if (s == "eq7" || s == "besov7") return BesovVariant::eq7;
    if (s == "eq8" || s == "besov8") return BesovVariant::eq8;
    if (s == "eq9" || s == "besov9") return BesovVariant::eq9;
    throw DomainError("unknown Besov variant '" + s + "'");
}

std::vector<InequalityReport> verify_dispersive_besov(const KernelSpec& spec, const std::vector<double>& t_grid,
                                                      const TestFunction& f, double r, BesovVariant variant,
                                                      const DispersiveOptions& opt) {
    spec.validate();
    if (!(r >= 2.0)) throw DomainError("verify_dispersive_besov: r must be >= 2");
    if (t_grid.empty()) throw DomainError("verify_dispersive_besov: empty t grid");
    const double rp = conjugate(r), theta = std::isinf(r) ? 1.0 : 1.0 - 2.0 / r;
    const double n = spec.n, beta = spec.beta;
    double s1 = 0.0, s2 = 0.0, q = 1.0;
    switch (variant) {
        case BesovVariant::eq7:
            s1 = n / rp;
            s2 = n / rp - beta * theta;
            q = 1.0;
            break;
        case BesovVariant::eq8:
            s1 = n * theta;
            s2 = (n - beta) * theta;
            q = 2.0;
            break;
        case BesovVariant::eq9:
            s1 = n * theta + opt.s;
            s2 = (n - beta) * theta + opt.s;
            q = opt.p;
            break;
    }
    // blocks of phi in L^{r'}; reused for both regularity indices
    BesovOptions bopt;
    bopt.exec = opt.exec;
    const BesovResult phi = besov_norm(f.spectrum(), BesovSpec{0.0, rp, q, opt.j_min, opt.j_max}, bopt);
    auto reweight = [&](double s) {
        std::vector<BesovBlock> b = phi.blocks;
        for (BesovBlock& x : b) {
            x.two_pow_js = std::exp2(s * x.j);
            x.weighted = x.two_pow_js * x.block_lp;
        }
        return combine_blocks(b, q);
    };
    const double b1 = reweight(s1), b2 = reweight(s2);

    std::vector<InequalityReport> out;
    for (double t : t_grid) {
        InequalityReport rep;
        const double decay = std::pow(1.0 + std::pow(t, spec.alpha), -theta);
        switch (variant) {
            case BesovVariant::eq7:
                rep.lhs = evolved_lp_norm(f, spec, t, std::numeric_limits<double>::infinity(), opt.exec);
                break;
            case BesovVariant::eq8:
                rep.lhs = evolved_lp_norm(f, spec, t, r, opt.exec);
                break;
            case BesovVariant::eq9:
                rep.lhs = besov_norm(f.evolved(spec, t), BesovSpec{opt.s, r, opt.p, opt.j_min, opt.j_max}, bopt).value;
                break;
        }
        rep.rhs_terms = {decay * b1, decay * b2};
        rep.ratio = rep.lhs / (rep.rhs_terms[0] + rep.rhs_terms[1]);
        rep.params = {{"t", t},
                      {"variant", to_string(variant)},
                      {"r", std::isinf(r) ? Json("inf") : Json(r)},
                      {"test", to_string(f.shape)},
                      {"leakage", phi.leakage}};
        out.push_back(std::move(rep));
    }
    return out;
}

CheckReport summarize_dispersive(const std::vector<InequalityReport>& reports, const std::string& check,
                                 double max_spread) {
    CheckReport rep;
    rep.check = check;
    rep.metrics.tolerance = max_spread;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    bool finite = !reports.empty();
    Json rows = Json::array();
    for (const InequalityReport& r : reports) {
        if (!(r.ratio > 0.0) || !std::isfinite(r.ratio)) finite = false;
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
        rows.push_back(to_json(r));
    }
    if (!reports.empty()) rep.params = reports.front().params;
    if (rep.params.contains("t")) rep.params.erase("t");
    rep.details["reports"] = rows;
    rep.metrics.ratio_spread = finite ? hi / lo : std::numeric_limits<double>::infinity();
    rep.pass = finite && rep.metrics.ratio_spread <= max_spread;
    return rep;
}

CheckReport verify_lp_interpolation(const KernelSpec& spec, double p, const std::vector<double>& t_grid,
                                    const TestFunction& f, double tol, Exec exec) {
    spec.validate();
    if (!(spec.beta > spec.n)) throw DomainError("verify_lp_interpolation: needs beta > n");
    if (!(p >= 2.0)) throw DomainError("verify_lp_interpolation: p must be >= 2");
    const double pp = conjugate(p);
    CheckReport rep;
    rep.check = "cor33";
    rep.params = {{"spec", spec_json(spec)},
                  {"p", std::isinf(p) ? Json("inf") : Json(p)},
                  {"t_grid", t_grid},
                  {"test", to_string(f.shape)}};
    std::vector<std::pair<double, double>> samples;
    Json rows = Json::array();
    for (double t : t_grid) {
        TestFunction ft = f;
        ft.dilation = f.dilation * std::pow(t, spec.alpha / spec.beta);
        const double num = evolved_lp_norm(ft, spec, t, p, exec);
        const double den = evolved_lp_norm(ft, spec, 0.0, pp, exec);
        samples.emplace_back(t, num / den);
        rows.push_back({{"t", t}, {"lp_evolved", num}, {"lp_conjugate_input", den}});
    }
    const double expected = -(2.0 * spec.n * spec.alpha / spec.beta) * (0.5 - (std::isinf(p) ? 0.0 : 1.0 / p));
    apply_fit(rep, samples, expected, tol, 0.0);
    rep.details["points"] = rows;
    return rep;
}

}  // namespace fracdisp
