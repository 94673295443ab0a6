#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fracdisp/errors.hpp"
#include "fracdisp/kernel.hpp"
#include "fracdisp/specfun.hpp"

using namespace fracdisp;

namespace {

// Composite Simpson on [1/2, 2] of psi_0(r) m(r) cos(r N x), n = 1, unnormalized.
template <class M>
Complex band_reference_1d(M m, double N, double x) {
    const Cutoff c;
    const int steps = 20000;
    const double a = 0.5, b = 2.0, h = (b - a) / steps;
    Complex s = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double r = a + i * h;
        const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        s += w * c.psi(0, r) * m(r) * std::cos(r * N * x);
    }
    return 2.0 * N * s * h / 3.0;
}

}  // namespace

TEST_CASE("kernel spec validation and regimes") {
    CHECK_THROWS_AS((KernelSpec{0, 0.5, 1.0}).validate(), DomainError);
    CHECK_THROWS_AS((KernelSpec{1, 0.0, 1.0}).validate(), DomainError);
    CHECK_THROWS_AS((KernelSpec{1, 1.2, 1.0}).validate(), DomainError);
    CHECK_THROWS_AS((KernelSpec{1, 0.5, -1.0}).validate(), DomainError);
    CHECK((KernelSpec{1, 0.5, 2.0}).regime() == Regime::subcritical);
    CHECK((KernelSpec{2, 0.5, 1.0}).regime() == Regime::resonant);
    CHECK((KernelSpec{2, 0.5, 1.0}).resonance_order() == 2);
    CHECK((KernelSpec{1, 0.5, 0.7}).regime() == Regime::critical_or_super);
    CHECK((KernelSpec{1, 0.5, 0.7}).resonance_order() == 0);
    CHECK(normalization_from_string(to_string(Normalization::symmetric)) == Normalization::symmetric);
    CHECK(normalization_from_string(to_string(Normalization::unnormalized)) == Normalization::unnormalized);
    CHECK_THROWS_AS(normalization_from_string("other"), DomainError);
}

TEST_CASE("band kernel at t = 0 is the transform of the cutoff") {
    const KernelSpec spec{1, 0.5, 1.0};
    for (int j : {0, 2}) {
        const double N = std::ldexp(1.0, j);
        for (double x : {0.0, 0.4, 1.7, 6.0}) {
            const Complex ref = band_reference_1d([](double) { return 1.0; }, N, x);
            const KernelSample k = kernel_band(spec, 0.0, DyadicBand{j}, x);
            INFO("j=" << j << " x=" << x);
            CHECK(std::abs(k.value - ref) <= 1e-9 * N);
        }
    }
}

TEST_CASE("band kernel for alpha = 1 against direct quadrature") {
    const KernelSpec spec{1, 1.0, 2.0};
    const double t = 3.0;
    for (int j : {0, 1}) {
        const double N = std::ldexp(1.0, j);
        const double T = t * N * N;
        for (double x : {0.0, 0.9, 4.0}) {
            const Complex ref =
                band_reference_1d([T](double r) { return std::exp(Complex(0.0, -T * r * r)); }, N, x);
            CHECK(std::abs(kernel_band(spec, t, DyadicBand{j}, x).value - ref) <= 1e-9 * N);
        }
    }
}

TEST_CASE("band kernel for fractional order against direct quadrature") {
    const KernelSpec spec{1, 0.5, 1.0};
    const MittagLeffler& ml = ml_evaluator(MLOrder(0.5));
    const double t = 50.0, N = 2.0;
    const double T = std::sqrt(t) * N;
    for (double x : {0.0, 0.3, 2.0}) {
        const Complex ref = band_reference_1d([&](double r) { return ml.value(Complex(0.0, -T * r)); }, N, x);
        CHECK(std::abs(kernel_band(spec, t, DyadicBand{1}, x).value - ref) <= 1e-9);
    }
}

TEST_CASE("band kernel is bounded by the triangle bound") {
    const KernelSpec spec{2, 0.7, 1.5};
    const BandKernel k(spec, 10.0, DyadicBand{1}, 20.0);
    for (double x = 0.0; x <= 20.0; x += 0.173) CHECK(std::abs(k(x).value) <= k.triangle_bound() * (1 + 1e-12));
}

TEST_CASE("normalizations differ by (2 pi)^{n/2}") {
    KernelSpec a{2, 0.5, 1.0};
    KernelSpec b = a;
    b.normalization = Normalization::symmetric;
    const Complex ka = kernel_band(a, 4.0, DyadicBand{0}, 0.7).value;
    const Complex kb = kernel_band(b, 4.0, DyadicBand{0}, 0.7).value;
    CHECK(std::abs(ka - 2.0 * kPi * kb) <= 1e-13 * std::abs(ka));
}

TEST_CASE("serial and parallel profiles are identical") {
    const KernelSpec spec{1, 0.5, 1.0};
    const auto xs = default_sup_grid(DyadicBand{1}, 64);
    const auto a = kernel_band_profile(spec, 7.0, DyadicBand{1}, xs, Exec::serial);
    const auto b = kernel_band_profile(spec, 7.0, DyadicBand{1}, xs, Exec::parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].value == b[i].value);
}

TEST_CASE("sup_search returns the largest sample") {
    const KernelSpec spec{1, 0.5, 1.0};
    const auto xs = default_sup_grid(DyadicBand{0}, 128);
    const SupResult s = sup_search(spec, 100.0, DyadicBand{0}, xs);
    const auto prof = kernel_band_profile(spec, 100.0, DyadicBand{0}, xs);
    double m = 0.0;
    for (const auto& k : prof) m = std::max(m, std::abs(k.value));
    CHECK(s.value == m);
    CHECK(s.evaluated == xs.size());
}

TEST_CASE("full kernel at the origin has a closed form") {
    // int_0^inf E_a(-i T r^b) r^{n-1} dr = (i T)^{-u} Gamma(u) Gamma(1-u) / (b Gamma(1 - a u)),  u = n/b
    for (auto [n, alpha, beta] : {std::tuple{1, 0.5, 2.0}, {1, 0.3, 3.0}, {2, 0.8, 3.0}}) {
        const KernelSpec spec{n, alpha, beta};
        for (double t : {0.5, 2.0, 30.0}) {
            const double T = std::pow(t, alpha), u = n / beta;
            const Complex mellin = std::pow(Complex(0.0, T), -u) * kPi / (std::sin(kPi * u) * std::tgamma(1 - alpha * u)) / beta;
            const Complex ref = spec.prefactor() * omega_n(n, 0.0) * mellin;
            const KernelSample k = kernel_full(spec, t, 0.0);
            INFO("n=" << n << " alpha=" << alpha << " beta=" << beta << " t=" << t);
            CHECK(std::abs(k.value - ref) <= 1e-9 * std::abs(ref));
        }
    }
}

TEST_CASE("rescaled and direct full kernels agree") {
    const KernelSpec spec{1, 0.5, 0.5};
    for (auto [t, x] : {std::pair{0.3, 0.05}, {2.0, 1.3}, {20.0, 7.0}}) {
        const Complex a = kernel_full(spec, t, x).value;
        const Complex b = kernel_full_direct(spec, t, x).value;
        CHECK(std::abs(a - b) <= 1e-8 * std::abs(a));
    }
}

TEST_CASE("full kernel rejects unsupported input") {
    CHECK_THROWS_AS(kernel_full(KernelSpec{1, 1.0, 2.0}, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(kernel_full(KernelSpec{1, 0.5, 0.5}, 1.0, 0.0), DomainError);
}

TEST_CASE("power tails") {
    // x = 0: int_R^inf r^p dr
    CHECK(power_tail(1, -2.5, 0.0, 3.0) == doctest::Approx(omega_n(1, 0.0) * std::pow(3.0, -1.5) / 1.5).epsilon(1e-13));
    // n = 1, p = 0: Abel limit of int_R^inf cos(r x) dr
    for (double x : {1.0, 2.5}) {
        const double R = 40.0 / x;
        CHECK(power_tail(1, 0.0, x, R) == doctest::Approx(-std::sqrt(2.0 / kPi) * std::sin(R * x) / x).epsilon(1e-10));
    }
    // n = 3, p = 1: int_R^inf sin(r x) / x dr = cos(R x) / x^2
    CHECK(power_tail(3, 1.0, 2.0, 20.0) == doctest::Approx(std::sqrt(2.0 / kPi) * std::cos(40.0) / 4.0).epsilon(1e-10));
}

TEST_CASE("Riesz constants") {
    CHECK(riesz_constant(1, 0.5) == doctest::Approx(std::sqrt(2.0 * kPi)).epsilon(1e-14));
    CHECK(riesz_constant(3, 2.0) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
    CHECK_THROWS_AS(riesz_constant(2, 2.0), DomainError);
}

TEST_CASE("expansion coefficients carry i^k / Gamma(1 - alpha k)") {
    const KernelSpec spec{1, 0.5, 0.5};
    const Complex c1 = expansion_coefficient(spec, 1);
    const double mag = riesz_constant(1, 0.5) / std::tgamma(0.5);
    CHECK(std::abs(std::abs(c1) - mag) <= 1e-13 * mag);
    CHECK(std::abs(c1.real()) <= 1e-13 * mag);
    // 1 / Gamma(1 - alpha k) vanishes when alpha k is a positive integer
    CHECK(expansion_coefficient(KernelSpec{3, 0.5, 1.0}, 2) == Complex(0.0));
}

TEST_CASE("kernel CSV round trip is exact") {
    const KernelSpec spec{1, 0.5, 1.0};
    auto xs = default_sup_grid(DyadicBand{0}, 16);
    auto cells = kernel_band_profile(spec, 3.0, DyadicBand{0}, xs);
    cells[3].ok = false;
    cells[3].value = Complex(std::nan(""), std::nan(""));
    std::stringstream ss;
    write_kernel_csv(ss, cells);
    const auto back = read_kernel_csv(ss);
    REQUIRE(back.size() == cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        CHECK(back[i].x_radius == cells[i].x_radius);
        CHECK(back[i].ok == cells[i].ok);
        if (cells[i].ok) CHECK(back[i].value == cells[i].value);
    }
    CHECK(std::isnan(back[3].value.real()));
}
