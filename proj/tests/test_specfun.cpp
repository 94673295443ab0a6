#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "fracdisp/errors.hpp"
#include "fracdisp/specfun.hpp"

using namespace fracdisp;

TEST_CASE("gamma_real matches tgamma away from the poles") {
    for (double x = -7.75; x < 40.0; x += 0.37) {
        if (std::abs(x - std::round(x)) < 1e-9 && x <= 0) continue;
        CHECK(gamma_real(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-13));
    }
    CHECK(gamma_real(5.0) == 24.0);
    CHECK(gamma_real(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-15));
}

TEST_CASE("gamma_real rejects poles and overflow") {
    CHECK_THROWS_AS(gamma_real(0.0), PoleError);
    CHECK_THROWS_AS(gamma_real(-3.0), PoleError);
    CHECK_THROWS_AS(gamma_real(172.0), OverflowError);
}

TEST_CASE("recip_gamma vanishes at the poles") {
    for (int k = 0; k <= 10; ++k) CHECK(recip_gamma(-k) == 0.0);
    CHECK(recip_gamma(3.5) == doctest::Approx(1.0 / std::tgamma(3.5)).epsilon(1e-14));
    CHECK(recip_gamma(200.0) == 0.0);
}

TEST_CASE("sin_pi is exact at integers") {
    for (int k = -5; k <= 5; ++k) CHECK(sin_pi(k) == 0.0);
    CHECK(sin_pi(0.5) == 1.0);
    CHECK(sin_pi(1.25) == doctest::Approx(std::sin(1.25 * kPi)).epsilon(1e-15));
}

TEST_CASE("E_1 is the exponential") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    for (int i = 0; i < 100; ++i) {
        const Complex z(u(rng), u(rng));
        if (std::abs(z) > 30.0) continue;
        const Complex e = ml_eval(MLOrder(1.0), z).value;
        CHECK(std::abs(e - std::exp(z)) <= 1e-13 * std::abs(std::exp(z)));
    }
}

TEST_CASE("E_alpha at the origin is 1") {
    for (double a : {0.1, 0.3, 0.5, 0.9, 1.0}) CHECK(ml_eval(MLOrder(a), 0.0).value == Complex(1.0, 0.0));
}

TEST_CASE("E_1/2 on the negative axis") {
    for (double x : {0.25, 1.0, 4.0, 9.0, 25.0}) {
        const double ref = std::exp(x * x) * std::erfc(x);
        CHECK(std::abs(ml_eval(MLOrder(0.5), -x).value - ref) <= 1e-12 * ref);
    }
}

TEST_CASE("E_alpha is conjugate symmetric") {
    for (double a : {0.25, 0.6, 0.85})
        for (double w : {0.5, 3.0, 12.0, 40.0, 200.0})
            for (double th : {0.3, 1.2, 2.0, 3.0}) {
                const Complex z = std::polar(std::pow(w, a), th);
                const Complex e1 = ml_eval(MLOrder(a), z).value, e2 = ml_eval(MLOrder(a), std::conj(z)).value;
                CHECK(std::abs(e1 - std::conj(e2)) <= 1e-14 * std::max(1.0, std::abs(e1)));
            }
}

TEST_CASE("MLOrder validates alpha") {
    CHECK_THROWS_AS(MLOrder(0.0), DomainError);
    CHECK_THROWS_AS(MLOrder(1.5), DomainError);
    CHECK_THROWS_AS(MLOrder(std::nan("")), DomainError);
}

TEST_CASE("E_alpha matches the extended-precision oracle") {
    const auto fx = load_ml_fixtures();
    REQUIRE(fx.size() > 100);
    for (const MlFixture& f : fx) {
        const Evaluated<Complex> e = ml_eval(MLOrder(f.alpha), f.z);
        const double scale = std::abs(f.value);
        INFO("alpha=" << f.alpha << " z=" << f.z);
        CHECK(std::abs(e.value - f.value) <= 1e-10 * scale + 1e-300);
        CHECK(std::abs(e.value - f.value) <= std::max(10.0 * e.diag.est_error, 1e-12 * scale));
    }
}

TEST_CASE("series and asymptotic branches agree on the overlap annulus for many orders") {
    for (double a = 0.15; a < 0.99; a += 0.05) {
        const MLOrder ord(a);
        const MittagLeffler& ml = ml_evaluator(ord);
        for (double w : {24.0, 30.0, 36.0, 42.0, 48.0}) {
            const double r = std::pow(w, a);
            for (double th : {kPi / 2, -kPi / 2, 0.75 * kPi, kPi}) {
                const Complex z = std::polar(r, th);
                const Complex s = ml.series(z).value;
                const Complex as = ml.asymptotic_auto(z).value;
                INFO("alpha=" << a << " w=" << w << " arg=" << th);
                CHECK(std::abs(s - as) <= 1e-8 * std::abs(s));
            }
        }
    }
}

TEST_CASE("switch radius lies inside the overlap annulus") {
    for (double a : {0.2, 0.5, 0.8}) {
        const MLOrder o(a);
        CHECK(asymptotic_radius(o) < switch_radius(o));
        CHECK(switch_radius(o) < series_radius(o));
    }
}

TEST_CASE("bessel_j matches the standard library") {
    for (double nu : {-0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.5, 7.0})
        for (double x : {0.0, 0.01, 0.7, 3.0, 11.9, 12.1, 18.0, 24.9, 25.1, 60.0, 250.0, 3000.0}) {
            if (nu < 0 && x == 0.0) continue;
            const Evaluated<double> e = bessel_j(nu, x);
            const double ref = nu < 0 ? std::sqrt(2.0 / (kPi * x)) * std::cos(x) : std::cyl_bessel_j(nu, x);
            INFO("nu=" << nu << " x=" << x);
            CHECK(std::abs(e.value - ref) <= 1e-12 * std::max(1.0, 1.0 / std::sqrt(std::max(x, 1.0))) + 1e-13);
        }
}

TEST_CASE("bessel_j satisfies the three-term recurrence") {
    for (double nu : {0.5, 1.0, 1.5})
        for (double x = 0.1; x <= 50.0; x *= 1.37) {
            const double lhs = bessel_j(nu - 1.0, x).value + bessel_j(nu + 1.0, x).value;
            const double rhs = 2.0 * nu / x * bessel_j(nu, x).value;
            INFO("nu=" << nu << " x=" << x);
            CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(std::abs(rhs), 1e-3));
        }
}

TEST_CASE("bessel_j rejects invalid input") {
    CHECK_THROWS_AS(bessel_j(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_j(0.0, -1.0), DomainError);
}

TEST_CASE("hankel coefficients start 1, (4nu^2-1)/8") {
    const auto a = hankel_coefficients(2.0, 3);
    REQUIRE(a.size() == 3);
    CHECK(a[0] == 1.0);
    CHECK(a[1] == doctest::Approx(15.0 / 8.0));
    CHECK(a[2] == doctest::Approx(15.0 * 7.0 / 128.0));
}

TEST_CASE("omega_n closed forms and bound") {
    for (double s : {0.1, 1.0, 5.0, 40.0}) {
        CHECK(omega_n(1, s) == doctest::Approx(std::sqrt(2.0 / kPi) * std::cos(s)).epsilon(1e-12));
        CHECK(omega_n(3, s) == doctest::Approx(std::sqrt(2.0 / kPi) * std::sin(s) / s).epsilon(1e-12));
        CHECK(omega_n(2, s) == doctest::Approx(std::cyl_bessel_j(0.0, s)).epsilon(1e-12));
    }
    for (int n = 1; n <= 4; ++n) {
        CHECK(omega_n(n, 0.0) == doctest::Approx(omega_n_bound(n)).epsilon(1e-14));
        for (double s = 0.05; s < 30.0; s += 0.37) CHECK(std::abs(omega_n(n, s)) <= omega_n_bound(n) * (1 + 1e-14));
    }
}
