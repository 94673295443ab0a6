#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fracdisp/errors.hpp"
#include "fracdisp/estimates.hpp"
#include "fracdisp/specfun.hpp"

using namespace fracdisp;

TEST_CASE("fit_exponent is exact on power laws") {
    for (double k : {-0.5, 1.25, 0.0, -3.0}) {
        std::vector<std::pair<double, double>> s;
        for (double x : log_uniform_grid(1e-2, 1e4, 13)) s.emplace_back(x, 7.5 * std::pow(x, k));
        const FitResult f = fit_exponent(s);
        CHECK(f.slope == doctest::Approx(k).epsilon(1e-12).scale(1.0));
        CHECK(std::exp(f.intercept) == doctest::Approx(7.5).epsilon(1e-12));
        CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(f.residual_max <= 1e-12);
        CHECK(f.n_points == 13);
    }
}

TEST_CASE("fit_exponent on scattered data") {
    std::vector<std::pair<double, double>> s;
    int i = 0;
    for (double x : log_uniform_grid(1.0, 1e3, 10)) s.emplace_back(x, std::pow(x, -1.0) * (i++ % 2 ? 1.5 : 0.7));
    const FitResult f = fit_exponent(s);
    CHECK(f.r_squared < 1.0);
    CHECK(f.r_squared > 0.5);
    CHECK(f.residual_max > 0.1);
}

TEST_CASE("fit_exponent rejects degenerate input") {
    CHECK_THROWS_AS(fit_exponent({{1.0, 1.0}}), DomainError);
    CHECK_THROWS_AS(fit_exponent({{2.0, 1.0}, {2.0, 3.0}}), DomainError);
    CHECK_THROWS_AS(fit_exponent({{1.0, 1.0}, {2.0, -1.0}}), DomainError);
}

TEST_CASE("sweep CSV round trip is exact") {
    std::vector<SweepRecord> recs(3);
    recs[0] = {1.0 / 3.0, 2.0, 0.123456789012345678, 0.7, 12.5, 1e-13, true, ""};
    recs[1] = {100.0, 4.0, 1e-300, 0.0, 40.0, 0.0, true, ""};
    recs[2] = {7.0, 1.0, 0.0, 0.0, 0.0, 0.0, false, "failed"};
    std::stringstream ss;
    write_sweep_csv(ss, recs);
    const auto back = read_sweep_csv(ss);
    REQUIRE(back.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back[i].t == recs[i].t);
        CHECK(back[i].N == recs[i].N);
        CHECK(back[i].sup_K == recs[i].sup_K);
        CHECK(back[i].x_star == recs[i].x_star);
        CHECK(back[i].t_alpha_N_beta == recs[i].t_alpha_N_beta);
        CHECK(back[i].ok == recs[i].ok);
    }
    std::stringstream bad("x,y\n1,2\n");
    CHECK_THROWS_AS(read_sweep_csv(bad), DomainError);
}

TEST_CASE("sweeps are independent of the schedule") {
    const KernelSpec spec{1, 0.5, 1.0};
    const std::vector<double> ts = {10.0, 100.0, 1000.0};
    SweepOptions serial, parallel;
    serial.exec = Exec::serial;
    serial.x_points = parallel.x_points = 128;
    const auto a = decay_sweep(spec, ts, {0, 2}, serial);
    const auto b = decay_sweep(spec, ts, {0, 2}, parallel);
    const auto c = decay_sweep(spec, ts, {0, 2}, parallel);
    std::stringstream sa, sb, sc;
    write_sweep_csv(sa, a);
    write_sweep_csv(sb, b);
    write_sweep_csv(sc, c);
    CHECK(sa.str() == sb.str());
    CHECK(sb.str() == sc.str());
    REQUIRE(a.size() == 6);
    CHECK(a[0].t == 10.0);
    CHECK(a[1].t == 10.0);
    CHECK(a[1].N == 4.0);
}

TEST_CASE("sup over dyadic kernels decays like t^-alpha") {
    const KernelSpec spec{1, 0.5, 1.0};
    const CheckReport r = verify_time_decay(spec, log_uniform_grid(1e2, 1e4, 5), 0);
    CHECK(r.pass);
    CHECK(r.metrics.slope == doctest::Approx(-0.5).epsilon(0.05));
    CHECK(r.cells_excluded == 0);
}

TEST_CASE("sharpness constant stays bounded") {
    const KernelSpec spec{1, 0.5, 1.0};
    const CheckReport r = verify_sharpness(spec, {1e2, 1e3}, {0, 2});
    CHECK(r.pass);
    CHECK(r.metrics.ratio_spread >= 1.0);
}

TEST_CASE("scaling identity for the full kernel") {
    const KernelSpec spec{1, 0.5, 0.5};
    const CheckReport r = verify_scaling_identity(spec, {{0.5, 0.2}, {3.0, 2.0}, {40.0, 10.0}});
    CHECK(r.pass);
}

TEST_CASE("Caputo derivative of monomials") {
    auto lin = [](double t) { return Complex(t); };
    auto quad = [](double t) { return Complex(t * t); };
    for (double a : {0.3, 0.5, 0.8}) {
        for (double t : {0.5, 1.0, 2.0}) {
            const double d1 = std::pow(t, 1 - a) / std::tgamma(2 - a);
            const double d2 = 2.0 * std::pow(t, 2 - a) / std::tgamma(3 - a);
            INFO("alpha=" << a << " t=" << t);
            CHECK(std::abs(caputo_derivative(lin, a, t).value - d1) <= 1e-8 * d1);
            CHECK(std::abs(caputo_derivative(quad, a, t).value - d2) <= 1e-8 * d2);
        }
        CHECK(std::abs(caputo_derivative([](double) { return Complex(4.0); }, a, 1.0).value) <= 1e-12);
    }
    CHECK(std::abs(caputo_derivative(quad, 1.0, 1.5).value - 3.0) <= 1e-9);
    CHECK_THROWS_AS(caputo_derivative(lin, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(caputo_derivative(lin, 0.5, -1.0), DomainError);
}

TEST_CASE("Mittag-Leffler modes solve the fractional equation") {
    for (double a : {0.5, 0.8})
        for (double lam : {1.0, 4.0}) CHECK(verify_mode_ode(a, lam, {0.5, 1.0, 2.0}).pass);
    CHECK(verify_mode_ode(1.0, 4.0, {0.5, 1.0, 2.0}, 1e-10).pass);
}

TEST_CASE("dispersive ratio summary") {
    std::vector<InequalityReport> reps(3);
    reps[0].ratio = 1.0;
    reps[1].ratio = 2.0;
    reps[2].ratio = 4.0;
    CHECK(summarize_dispersive(reps, "x", 10.0).pass);
    const CheckReport r = summarize_dispersive(reps, "x", 3.0);
    CHECK_FALSE(r.pass);
    CHECK(r.metrics.ratio_spread == doctest::Approx(4.0));
    reps[1].ratio = 0.0;
    CHECK_FALSE(summarize_dispersive(reps, "x", 10.0).pass);
}

TEST_CASE("test functions") {
    const TestFunction g{TestShape::gaussian, 2, 1.5};
    const RadialSpectrum s = g.spectrum();
    CHECK(s.value(0.0).real() == doctest::Approx(std::pow(1.5, 2)));
    CHECK(s.value(1.0).real() == doctest::Approx(std::pow(1.5, 2) * std::exp(-0.5 * 1.5 * 1.5)));
    const TestFunction b{TestShape::band_limited, 1, 2.0};
    const auto [lo, hi] = b.support();
    CHECK(lo == doctest::Approx(0.25));
    CHECK(hi == doctest::Approx(1.0));
    const KernelSpec spec{2, 0.5, 1.0};
    const RadialSpectrum e0 = g.evolved(spec, 0.0);
    for (double r : {0.1, 1.0, 3.0}) CHECK(e0.value(r) == s.value(r));
    CHECK(test_shape_from_string(to_string(TestShape::band_limited)) == TestShape::band_limited);
    CHECK_THROWS_AS(test_shape_from_string("box"), DomainError);
}

TEST_CASE("L^2 norm of the evolution") {
    const TestFunction g{TestShape::gaussian, 1, 1.0};
    const double l2 = l2_norm_spectrum(g.spectrum());
    for (double t : {0.5, 10.0, 300.0})
        CHECK(evolved_lp_norm(g, KernelSpec{1, 1.0, 2.0}, t, 2.0) == doctest::Approx(l2).epsilon(1e-10));
    double prev = l2 * (1 + 1e-12);
    for (double t : {0.1, 1.0, 10.0, 100.0}) {
        const double v = evolved_lp_norm(g, KernelSpec{1, 0.5, 1.0}, t, 2.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("band L^inf inequality") {
    const TestFunction g{TestShape::gaussian, 1, 1.0};
    const InequalityReport r = verify_band_linfty(KernelSpec{1, 0.5, 1.0}, 100.0, DyadicBand{0}, g, 4.0);
    CHECK(r.lhs > 0.0);
    CHECK(r.ratio > 0.0);
    CHECK(std::isfinite(r.ratio));
    CHECK_THROWS_AS(verify_band_linfty(KernelSpec{1, 0.5, 1.0}, 100.0, DyadicBand{0}, g, 1.5), DomainError);
}

TEST_CASE("L^2 decay exponent vanishes") {
    const TestFunction g{TestShape::gaussian, 1, 1.0};
    const CheckReport r = verify_lp_interpolation(KernelSpec{1, 0.5, 2.0}, 2.0, {1e2, 1e3, 1e4}, g);
    CHECK(r.pass);
    CHECK(std::abs(r.metrics.slope) <= 1e-6);
    CHECK_THROWS_AS(verify_lp_interpolation(KernelSpec{1, 0.5, 1.0}, 2.0, {1.0, 2.0}, g), DomainError);
}

TEST_CASE("report serialization") {
    CheckReport r;
    r.check = "demo";
    r.pass = true;
    r.metrics.slope = -0.5;
    const Json j = to_json(r);
    CHECK(j["check"] == "demo");
    CHECK(j["metrics"]["slope"] == -0.5);
    CHECK(j["metrics"]["expected"].is_null());
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(INFINITY) == "inf");
}
