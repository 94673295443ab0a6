// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run all criteria
//   acceptance 3 10       run the listed ones

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "fracdisp/estimates.hpp"
#include "fracdisp/specfun.hpp"

using namespace fracdisp;

namespace {

struct Outcome {
    bool pass = false;
    std::string summary;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

const std::vector<std::pair<double, double>> kTriples = {{0.5, 0.3}, {0.5, 0.5}, {0.5, 0.8},
                                                         {1.0, 0.3}, {1.0, 0.5}, {1.0, 0.8}};  // (beta, alpha)

// t-range start so that t^alpha >= 10
double t_start(double alpha) { return std::max(1e2, std::pow(10.0, 1.0 / alpha)); }

Outcome classical_limit() {
    double worst = 0.0;
    const MLOrder one(1.0);
    for (int k = 0; k < 200; ++k) {
        const double r = 30.0 * std::sqrt((k + 0.5) / 200.0);
        const double th = 2.0 * kPi * std::fmod(0.6180339887498949 * k, 1.0) - kPi;
        const Complex z = std::polar(r, th);
        const Complex e = ml_eval(one, z).value;
        worst = std::max(worst, std::abs(e - std::exp(z)) / std::abs(std::exp(z)));
    }
    return {worst <= 1e-12, fmt("200 points |z| <= 30, max rel err %.2e (tol 1e-12)", worst)};
}

Outcome overlap() {
    const auto fx = load_ml_fixtures();
    double branch = 0.0, vs_oracle = 0.0;
    int used = 0;
    for (const MlFixture& f : fx) {
        if (f.alpha != 0.25 && f.alpha != 0.5 && f.alpha != 0.75) continue;
        const double arg = std::abs(std::arg(f.z));
        if (std::abs(arg - 0.5 * kPi) > 1e-12 && std::abs(arg - kPi) > 1e-12) continue;
        const MLOrder ord(f.alpha);
        const double w = std::pow(std::abs(f.z), 1.0 / f.alpha);
        if (std::abs(f.z) < asymptotic_radius(ord) * (1 - 1e-12) || std::abs(f.z) > series_radius(ord) * (1 + 1e-12))
            continue;
        (void)w;
        const MittagLeffler& ml = ml_evaluator(ord);
        const Complex s = ml.series(f.z).value, a = ml.asymptotic_auto(f.z).value;
        const double scale = std::abs(f.value);
        branch = std::max(branch, std::abs(s - a) / std::abs(s));
        vs_oracle = std::max({vs_oracle, std::abs(s - f.value) / scale, std::abs(a - f.value) / scale});
        ++used;
    }
    const bool pass = used >= 30 && branch <= 1e-6 && vs_oracle <= 1e-8;
    return {pass, std::to_string(used) + " annulus points, branch gap " + fmt("%.2e (tol 1e-6), vs oracle %.2e (tol 1e-8)", branch, vs_oracle)};
}

Outcome time_decay() {
    bool pass = true;
    std::string s;
    for (auto [beta, alpha] : kTriples) {
        const KernelSpec spec{1, alpha, beta};
        const CheckReport r = verify_time_decay(spec, log_uniform_grid(t_start(alpha), 1e4, 8), 0, 0.05);
        const double tmin = r.details.at("min_t_alpha_N_beta").get<double>();
        const bool ok = r.pass && r.metrics.r_squared >= 0.99 && tmin >= 10.0 * (1 - 1e-12);
        pass = pass && ok;
        s += fmt(" b=%g a=%g:", beta, alpha) + fmt("%.4f", r.metrics.slope);
    }
    return {pass, "slope = -alpha +- 0.05, R^2 >= 0.99;" + s};
}

Outcome frequency_scaling() {
    bool pass = true;
    std::string s;
    for (auto [beta, alpha] : kTriples) {
        const KernelSpec spec{1, alpha, beta};
        const CheckReport r = verify_frequency_scaling(spec, t_start(alpha), {0, 1, 2, 3, 4, 5}, 0.1);
        const double tmin = r.details.at("min_t_alpha_N_beta").get<double>();
        pass = pass && r.pass && tmin >= 10.0 * (1 - 1e-12);
        s += fmt(" b=%g a=%g:", beta, alpha) + fmt("%.4f", r.metrics.slope);
    }
    return {pass, "slope = n - beta +- 0.1;" + s};
}

Outcome full_decay() {
    const KernelSpec spec{1, 0.5, 2.0};
    auto xs = log_uniform_grid(1e-2, 1e2, 64);
    xs.insert(xs.begin(), 0.0);
    const CheckReport r = verify_full_decay(spec, log_uniform_grid(1e2, 1e4, 9), xs, 0.03);
    return {r.pass, fmt("(n, beta, alpha) = (1, 2, 0.5): slope %.5f (expected -0.25 +- 0.03), R^2 %.6f", r.metrics.slope,
                        r.metrics.r_squared)};
}

Outcome sharpness() {
    const KernelSpec spec{1, 0.5, 1.0};
    const CheckReport r = verify_sharpness(spec, log_uniform_grid(1e2, 1e4, 5), {0, 1, 2, 3, 4}, 10.0);
    const double cmin = r.details.at("c_min").get<double>();
    return {r.pass && cmin > 0.0, fmt("(1, 1, 0.5): c_min %.4g, max/min %.3f (tol 10)", cmin, r.metrics.ratio_spread)};
}

Outcome scaling_identity() {
    std::vector<std::pair<double, double>> tx;
    const double a1 = 0.7548776662466927, a2 = 0.5698402909980532;
    for (int k = 1; k <= 20; ++k) {
        const double u = std::fmod(0.5 + a1 * k, 1.0), v = std::fmod(0.5 + a2 * k, 1.0);
        tx.emplace_back(std::pow(10.0, -1.0 + 3.0 * u), std::pow(10.0, -2.0 + 3.0 * v));
    }
    bool pass = true;
    double worst = 0.0;
    for (const KernelSpec& spec : {KernelSpec{1, 0.5, 0.5}, KernelSpec{1, 0.5, 2.0}, KernelSpec{2, 0.3, 1.0},
                                   KernelSpec{3, 0.8, 1.5}}) {
        const CheckReport r = verify_scaling_identity(spec, tx, 1e-8);
        pass = pass && r.pass;
        worst = std::max(worst, r.details.at("max_rel").get<double>());
    }
    return {pass, fmt("20 pairs x 4 specs, worst relative gap %.2e (tol 1e-8)", worst)};
}

Outcome expansion() {
    const KernelSpec spec{1, 0.5, 0.5};
    const CheckReport r = verify_expansion(spec, 1.0, log_uniform_grid(1e-3, 1e-1, 9), 10.0, 10.0);
    return {r.pass, fmt("(1, 0.5, 0.5): residual spread %.3f (tol 10), raw/residual at 1e-3 %.1f (min 10)",
                        r.metrics.ratio_spread, r.details.at("gain_at_smallest_eta").get<double>())};
}

Outcome log_behavior() {
    const CheckReport r = verify_log_behavior(2, 1e-3, 1e-5, 0.05);
    return {r.pass, fmt("n = 2: W_1/ln(1/eta) ratio change %.4f (tol 0.05)", r.metrics.ratio_spread)};
}

Outcome dispersive() {
    const KernelSpec spec{1, 0.3, 1.0};
    const auto ts = log_uniform_grid(1e-1, 1e4, 11);
    bool pass = true;
    double worst = 0.0;
    std::string worst_case;
    for (auto shape : {TestShape::gaussian, TestShape::band_limited})
        for (double r : {2.0, 4.0, static_cast<double>(INFINITY)})
            for (auto v : {BesovVariant::eq7, BesovVariant::eq8, BesovVariant::eq9}) {
                DispersiveOptions opt;
                opt.s = 1.0;
                opt.p = 2.0;
                const auto reps = verify_dispersive_besov(spec, ts, TestFunction{shape, 1, 1.0}, r, v, opt);
                const CheckReport c = summarize_dispersive(reps, to_string(v), 100.0);
                pass = pass && c.pass;
                if (!(c.metrics.ratio_spread <= worst)) {
                    worst = c.metrics.ratio_spread;
                    worst_case = std::string(to_string(shape)) + " r=" + fmt("%g", r) + " " + to_string(v);
                }
            }
    return {pass, "(1, 1, 0.3), 18 cases: worst spread " + fmt("%.2f", worst) + " at " + worst_case + " (tol 100)"};
}

Outcome lp_decay() {
    const KernelSpec spec{1, 0.5, 2.0};
    bool pass = true;
    std::string s;
    for (double p : {2.0, 4.0, static_cast<double>(INFINITY)}) {
        const CheckReport r = verify_lp_interpolation(spec, p, log_uniform_grid(1e2, 1e4, 5),
                                                      TestFunction{TestShape::gaussian, 1, 1.0}, 0.03);
        pass = pass && r.pass;
        s += fmt(" p=%g:", p) + fmt("%.4f", r.metrics.slope) + fmt("(%.3f)", r.metrics.expected + 0.0);
    }
    return {pass, "(1, 2, 0.5) slopes +- 0.03:" + s};
}

Outcome mode_ode() {
    bool pass = true;
    double worst = 0.0, worst1 = 0.0;
    for (double a : {0.5, 0.8})
        for (double lam : {1.0, 4.0}) {
            const CheckReport r = verify_mode_ode(a, lam, {0.5, 1.0, 2.0}, 1e-3);
            pass = pass && r.pass;
            worst = std::max(worst, r.details.at("max_residual").get<double>());
        }
    for (double lam : {1.0, 4.0}) {
        const CheckReport r = verify_mode_ode(1.0, lam, {0.5, 1.0, 2.0}, 1e-10);
        pass = pass && r.pass;
        worst1 = std::max(worst1, r.details.at("max_residual").get<double>());
    }
    return {pass, fmt("max residual %.2e (tol 1e-3), alpha = 1: %.2e (tol 1e-10)", worst, worst1)};
}

Outcome invariants() {
    const Cutoff c;
    double pu = 0.0;
    for (double r = std::ldexp(1.0, -30); r < std::ldexp(1.0, 30); r *= 1.0137) {
        double s = 0.0;
        for (int j = -40; j <= 40; ++j) s += c.psi(j, r);
        pu = std::max(pu, std::abs(s - 1.0));
    }

    const auto radii = uniform_grid(0.0, 12.0, 961);
    const RadialProfile f =
        sample_profile(1, radii, [](double r) { return Complex(std::exp(-0.5 * r * r)); }, GridKind::uniform);
    const RadialProfile back = radial_fourier(radial_fourier(f, radii), radii);
    double rt = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) rt = std::max(rt, std::abs(back.values[i] - f.values[i]));

    const KernelSpec spec{1, 0.5, 1.0};
    SweepOptions par, ser;
    ser.exec = Exec::serial;
    par.x_points = ser.x_points = 256;
    std::string out[3];
    for (int k = 0; k < 3; ++k) {
        std::ostringstream os;
        write_sweep_csv(os, decay_sweep(spec, {10.0, 100.0, 1000.0}, {0, 1, 2}, k == 2 ? ser : par));
        out[k] = os.str();
    }
    const bool same = out[0] == out[1] && out[1] == out[2];

    double fit_err = 0.0;
    for (double k : {-0.25, -0.5, 0.75, 2.0}) {
        std::vector<std::pair<double, double>> s;
        for (double x : log_uniform_grid(1e-2, 1e4, 9)) s.emplace_back(x, 3.0 * std::pow(x, k));
        fit_err = std::max(fit_err, std::abs(fit_exponent(s).slope - k));
    }
    const bool pass = pu <= 1e-14 && rt <= 1e-6 && same && fit_err <= 1e-12;
    return {pass, fmt("partition %.1e (tol 1e-14), round trip %.1e (tol 1e-6), ", pu, rt) +
                      (same ? "reruns identical" : "reruns DIFFER") + fmt(", fit slope err %.1e", fit_err)};
}

}  // namespace

int main(int argc, char** argv) {
    std::setvbuf(stdout, nullptr, _IOLBF, 0);
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"E_1 equals exp", classical_limit},
        {"series/asymptotic overlap", overlap},
        {"t-decay of dyadic kernels", time_decay},
        {"N-scaling of dyadic kernels", frequency_scaling},
        {"t-decay of the full kernel", full_decay},
        {"sharpness constant", sharpness},
        {"scaling identity", scaling_identity},
        {"small-|x| expansion", expansion},
        {"logarithmic behavior", log_behavior},
        {"dispersive ratio uniformity", dispersive},
        {"L^p decay exponents", lp_decay},
        {"mode equation residual", mode_ode},
        {"harness invariants", invariants},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %2d  %-28s %s  [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.summary.c_str(), sec);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d failed\n", failed);
    return failed == 0 ? 0 : 1;
}
