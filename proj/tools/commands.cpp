#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "fracdisp/besov.hpp"
#include "fracdisp/errors.hpp"
#include "fracdisp/estimates.hpp"
#include "fracdisp/specfun.hpp"

namespace fracdisp::cli {

namespace {

// Result goes to <out_dir>/<name>, or to stdout when no directory is set.
void emit(const RunConfig& cfg, const std::string& name, const std::function<void(std::ostream&)>& write) {
    if (cfg.out_dir.empty()) {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::filesystem::create_directories(cfg.out_dir);
    const std::filesystem::path path = std::filesystem::path(cfg.out_dir) / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DomainError("cannot write '" + path.string() + "'");
    write(os);
}

Complex parse_complex(const std::string& s) {
    const auto comma = s.find(',');
    try {
        if (comma == std::string::npos) return {std::stod(s), 0.0};
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw DomainError("expected RE,IM but got '" + s + "'");
    }
}

SweepOptions sweep_options(const RunConfig& cfg) {
    SweepOptions o;
    o.band.rel_tol = cfg.rel_tol;
    return o;
}

std::vector<SweepRecord> load_sweep(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    return read_sweep_csv(in);
}

// (parameter, sup_K) pairs of the usable rows, by t or by N.
std::vector<std::pair<double, double>> sweep_series(const std::vector<SweepRecord>& recs, const std::string& by,
                                                    std::optional<int> j) {
    if (by != "t" && by != "N") throw DomainError("--by must be t or N");
    std::vector<std::pair<double, double>> s;
    for (const SweepRecord& r : recs) {
        if (!r.ok || !(r.sup_K > 0.0)) continue;
        if (j && r.N != std::ldexp(1.0, *j)) continue;
        s.emplace_back(by == "t" ? r.t : r.N, r.sup_K);
    }
    if (s.empty()) throw DomainError("sweep has no usable rows");
    return s;
}

Json fit_json(const FitResult& f) {
    return {{"slope", f.slope},
            {"intercept", f.intercept},
            {"r_squared", f.r_squared},
            {"n_points", f.n_points},
            {"residual_max", f.residual_max}};
}

// Two-dimensional Kronecker sequence on the unit square.
std::vector<std::pair<double, double>> scaling_pairs(std::size_t count) {
    const double a1 = 0.7548776662466927, a2 = 0.5698402909980532;
    std::vector<std::pair<double, double>> tx;
    for (std::size_t k = 1; k <= count; ++k) {
        const double u = std::fmod(0.5 + a1 * static_cast<double>(k), 1.0);
        const double v = std::fmod(0.5 + a2 * static_cast<double>(k), 1.0);
        tx.emplace_back(std::pow(10.0, -1.0 + 3.0 * u), std::pow(10.0, -2.0 + 3.0 * v));
    }
    return tx;
}

CheckReport combine(const std::string& check, std::vector<CheckReport> parts) {
    CheckReport rep;
    rep.check = check;
    rep.pass = !parts.empty();
    Json arr = Json::array();
    for (const CheckReport& p : parts) {
        rep.pass = rep.pass && p.pass;
        rep.cells_excluded += p.cells_excluded;
        arr.push_back(to_json(p));
    }
    if (parts.size() == 1) return parts.front();
    rep.details["parts"] = arr;
    return rep;
}

}  // namespace

void print_error(const char* kind, const std::string& message) {
    std::cerr << Json{{"error", kind}, {"message", message}}.dump() << '\n';
}

RunConfig resolve(const Common& c) {
    RunConfig cfg = c.config.empty() ? RunConfig{} : load_config(c.config);
    if (!c.out.empty()) cfg.out_dir = c.out;
    if (c.threads) cfg.threads = *c.threads;
    if (c.tol) cfg.rel_tol = *c.tol;
    if (c.n) cfg.spec.n = *c.n;
    if (c.alpha) cfg.spec.alpha = *c.alpha;
    if (c.beta) cfg.spec.beta = *c.beta;
    cfg.validate();
    if (cfg.threads > 0) set_threads(cfg.threads);
    return cfg;
}

int cmd_ml(const Common& c, const MlArgs& a) {
    const RunConfig cfg = resolve(c);
    const Complex z = parse_complex(a.z);
    const Evaluated<Complex> e = ml_eval(MLOrder(a.alpha), z);
    emit(cfg, "ml.csv", [&](std::ostream& os) {
        os << "re,im,method,terms,est_error\n" << std::setprecision(17) << e.value.real() << ',' << e.value.imag()
           << ',' << to_string(e.diag.method) << ',' << e.diag.terms_or_nodes << ',' << e.diag.est_error << '\n';
    });
    return 0;
}

int cmd_bessel(const Common& c, const BesselArgs& a) {
    const RunConfig cfg = resolve(c);
    const Evaluated<double> e = bessel_j(a.nu, a.x);
    emit(cfg, "bessel.csv", [&](std::ostream& os) {
        os << "value,method,terms,est_error\n" << std::setprecision(17) << e.value << ',' << to_string(e.diag.method)
           << ',' << e.diag.terms_or_nodes << ',' << e.diag.est_error << '\n';
    });
    return 0;
}

int cmd_kernel(const Common& c, const KernelArgs& a) {
    const RunConfig cfg = resolve(c);
    std::vector<double> xs = cfg.x_grid;
    if (a.x_min || a.x_max) {
        const double N = a.j ? std::ldexp(1.0, *a.j) : 1.0;
        const double lo = a.x_min.value_or(a.log_grid ? 1e-3 / N : 0.0);
        const double hi = a.x_max.value_or(20.0 / N);
        if (a.points < 2) throw DomainError("--points must be >= 2");
        xs = a.log_grid ? log_uniform_grid(lo, hi, a.points) : uniform_grid(lo, hi, a.points);
    }
    std::vector<KernelSample> cells(xs.size());
    std::function<KernelSample(double)> eval;
    std::unique_ptr<BandKernel> band;
    if (a.j) {
        double x_max = 0.0;
        for (double x : xs) x_max = std::max(x_max, x);
        BandOptions bo;
        bo.rel_tol = cfg.rel_tol;
        band = std::make_unique<BandKernel>(cfg.spec, a.t, DyadicBand{*a.j}, x_max, bo);
        eval = [&](double x) { return (*band)(x); };
    } else {
        eval = [&](double x) { return kernel_full(cfg.spec, a.t, x); };
    }
    std::size_t failed = 0;
    parallel_for(
        xs.size(),
        [&](std::size_t i) {
            try {
                cells[i] = eval(xs[i]);
            } catch (const Error&) {
                KernelSample k;
                k.t = a.t;
                k.N = a.j ? std::ldexp(1.0, *a.j) : 0.0;
                k.x_radius = xs[i];
                k.value = Complex(std::nan(""), std::nan(""));
                k.tail_bound = std::nan("");
                k.ok = false;
                cells[i] = k;
            }
        },
        Exec::parallel);
    for (const KernelSample& k : cells) failed += k.ok ? 0 : 1;
    emit(cfg, "kernel.csv", [&](std::ostream& os) { write_kernel_csv(os, cells); });
    if (failed == cells.size()) {
        print_error("convergence", "every kernel cell failed");
        return 2;
    }
    return 0;
}

int cmd_sweep(const Common& c, const SweepArgs& a) {
    const RunConfig cfg = resolve(c);
    const SweepOptions opt = sweep_options(cfg);
    const std::vector<SweepRecord> recs = a.full ? full_decay_sweep(cfg.spec, cfg.t_grid, cfg.x_grid, opt)
                                                 : decay_sweep(cfg.spec, cfg.t_grid, cfg.j_grid, opt);
    emit(cfg, "sweep.csv", [&](std::ostream& os) { write_sweep_csv(os, recs); });
    for (const SweepRecord& r : recs)
        if (r.ok) return 0;
    print_error("convergence", "every sweep cell failed");
    return 2;
}

int cmd_fit(const Common& c, const FitArgs& a) {
    const RunConfig cfg = resolve(c);
    const FitResult f = fit_exponent(sweep_series(load_sweep(a.in), a.by, a.j));
    Json doc = fit_json(f);
    doc["by"] = a.by;
    emit(cfg, "fit.json", [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
    return 0;
}

int cmd_besov(const Common& c, const BesovArgs& a) {
    const RunConfig cfg = resolve(c);
    const BesovSpec spec{a.s, a.p, a.q, cfg.j_min, cfg.j_max};
    BesovResult res;
    if (!a.profile.empty()) {
        std::ifstream in(a.profile);
        if (!in) throw DomainError("cannot open '" + a.profile + "'");
        res = besov_norm(read_profile_csv(in), spec);
    } else {
        const TestFunction f{test_shape_from_string(a.test), cfg.spec.n, a.dilation};
        res = besov_norm(f.spectrum(), spec);
    }
    Json doc = {{"s", a.s},
                {"p", a.p},
                {"q", a.q},
                {"j_min", cfg.j_min},
                {"j_max", cfg.j_max},
                {"norm", res.value},
                {"leakage", res.leakage},
                {"leakage_warning", res.leakage_warning}};
    emit(cfg, "besov.json", [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
    if (!cfg.out_dir.empty()) emit(cfg, "besov_blocks.csv", [&](std::ostream& os) { write_besov_csv(os, res); });
    if (res.leakage_warning) print_error("warning", "spectrum has mass outside the dyadic range");
    return 0;
}

int cmd_verify(const Common& c, const VerifyArgs& a) {
    RunConfig cfg = resolve(c);
    if (!a.t.empty()) cfg.t_grid = a.t;
    const KernelSpec& spec = cfg.spec;
    const SweepOptions opt = sweep_options(cfg);
    CheckReport rep;
    const std::string& check = a.check;
    if (check == "thm12") {
        if (spec.beta > spec.n) {
            rep = verify_full_decay(spec, cfg.t_grid, cfg.x_grid, cfg.full_tol, opt);
        } else {
            rep = combine("thm12", {verify_time_decay(spec, cfg.t_grid, cfg.j_grid.front(), cfg.fit_tol, opt),
                                    verify_frequency_scaling(spec, cfg.t_grid.back(), cfg.j_grid, cfg.freq_tol, opt)});
        }
    } else if (check == "sharpness") {
        rep = verify_sharpness(spec, cfg.t_grid, cfg.j_grid, cfg.sharpness_spread, opt);
    } else if (check == "besov7" || check == "besov8" || check == "besov9") {
        const TestFunction f{test_shape_from_string(a.test), spec.n, 1.0};
        DispersiveOptions d;
        d.j_min = cfg.j_min;
        d.j_max = cfg.j_max;
        d.s = a.s;
        d.p = a.p.value_or(2.0);
        const auto reports = verify_dispersive_besov(spec, cfg.t_grid, f, a.r, besov_variant_from_string(check), d);
        rep = summarize_dispersive(reports, check, cfg.dispersive_spread);
        rep.params["test"] = a.test;
        rep.params["r"] = a.r;
    } else if (check == "cor33") {
        const TestFunction f{test_shape_from_string(a.test), spec.n, 1.0};
        rep = verify_lp_interpolation(spec, a.p.value_or(INFINITY), cfg.t_grid, f, cfg.full_tol);
    } else if (check == "ode") {
        const std::vector<double> ts = a.t.empty() ? std::vector<double>{0.5, 1.0, 2.0} : a.t;
        const double tol = spec.alpha == 1.0 ? std::min(cfg.ode_tol, 1e-10) : cfg.ode_tol;
        rep = verify_mode_ode(spec.alpha, a.lambda, ts, tol);
    } else if (check == "lemma31") {
        std::vector<CheckReport> parts;
        parts.push_back(verify_scaling_identity(spec, scaling_pairs(20), cfg.identity_tol));
        if (spec.beta < spec.n)
            parts.push_back(verify_expansion(spec, 1.0, log_uniform_grid(1e-3, 1e-1, 9), cfg.sharpness_spread, 10.0));
        parts.push_back(verify_log_behavior(spec.n, 1e-3, 1e-5, 0.05));
        rep = combine("lemma31", std::move(parts));
    } else {
        throw DomainError("unknown check '" + check + "'");
    }
    emit(cfg, "verify_" + check + ".json", [&](std::ostream& os) { write_report(os, rep); });
    return rep.pass ? 0 : 1;
}

int cmd_plotdata(const Common& c, const PlotArgs& a) {
    RunConfig cfg = resolve(c);
    if (cfg.out_dir.empty()) cfg.out_dir = ".";
    const auto series = sweep_series(load_sweep(a.in), a.by, a.j);
    const FitResult f = fit_exponent(series);
    const std::string col = a.by == "t" ? "log_t" : "log_N";
    emit(cfg, "plot_points.csv", [&](std::ostream& os) {
        os << col << ",log_sup_K\n" << std::setprecision(17);
        for (const auto& [x, y] : series) os << std::log(x) << ',' << std::log(y) << '\n';
    });
    emit(cfg, "plot_fit.csv", [&](std::ostream& os) {
        os << col << ",log_fit\n" << std::setprecision(17);
        for (const auto& [x, y] : series) os << std::log(x) << ',' << f.intercept + f.slope * std::log(x) << '\n';
    });
    return 0;
}

}  // namespace fracdisp::cli
