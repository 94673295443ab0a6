#include "fracdisp/besov.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "fracdisp/errors.hpp"

namespace fracdisp {

namespace {

// Unit-band blocks are negligible (< 1e-6 of the peak) beyond this radius.
constexpr double kBlockExtent = 160.0;

BesovBlock make_block(int j, double s, double lp) {
    BesovBlock b;
    b.j = j;
    b.two_pow_js = std::exp2(s * j);
    b.block_lp = lp;
    b.weighted = b.two_pow_js * lp;
    return b;
}

// sum_{j_min}^{j_max} psi_j, by telescoping
double covered(const Cutoff& c, int j_min, int j_max, double rho) {
    return c.phi(std::ldexp(rho, -j_max)) - c.phi(std::ldexp(rho, -(j_min - 1)));
}

}  // namespace

void BesovSpec::validate() const {
    if (!(p >= 1.0)) throw DomainError("BesovSpec: p must be >= 1");
    if (!(q >= 1.0)) throw DomainError("BesovSpec: q must be >= 1");
    if (!std::isfinite(s)) throw DomainError("BesovSpec: s must be finite");
    if (j_min > j_max) throw DomainError("BesovSpec: j_min must be <= j_max");
}

double combine_blocks(const std::vector<BesovBlock>& blocks, double q) {
    if (!(q >= 1.0)) throw DomainError("combine_blocks: q must be >= 1");
    double m = 0.0;
    for (const BesovBlock& b : blocks) m = std::max(m, b.weighted);
    if (std::isinf(q) || m == 0.0) return m;
    double sum = 0.0;
    for (const BesovBlock& b : blocks) sum += std::pow(b.weighted / m, q);
    return m * std::pow(sum, 1.0 / q);
}

double block_lp_norm(const RadialSpectrum& spectrum, int j, double p) {
    if (!spectrum.value) throw DomainError("block_lp_norm: empty spectrum");
    if (!(p >= 1.0)) throw DomainError("block_lp_norm: p must be >= 1");
    const double N = std::ldexp(1.0, j);
    if (N * 2.0 <= spectrum.lo || N * 0.5 >= spectrum.hi) return 0.0;
    const Cutoff c;
    const RadialFn& S = spectrum.value;
    const double lo = spectrum.lo, hi = spectrum.hi;
    RadialSpectrum h;
    h.n = spectrum.n;
    h.lo = 0.5;
    h.hi = 2.0;
    h.value = [&S, &c, N, lo, hi](double r) {
        const double rho = N * r;
        if (rho < lo || rho > hi) return Complex(0.0);
        return S(rho) * c.psi(0, r);
    };
    // P_j f(x) = N^n h(N x)
    const double n = spectrum.n;
    const double scale = std::isinf(p) ? std::pow(N, n) : std::pow(N, n * (1.0 - 1.0 / p));
    if (p == 2.0) return scale * l2_norm_spectrum(h);
    TransformOptions topt;
    topt.exec = Exec::serial;
    topt.max_level = 8;
    const RadialTransform tr(h, kBlockExtent, topt);
    SpatialExtent ext;
    ext.x_core = kBlockExtent;
    ext.x_max = kBlockExtent;
    const SpatialNorm sn = lp_norm_spatial([&tr](double x) { return tr(x); }, spectrum.n, p, ext, Exec::serial);
    return scale * sn.value;
}

BesovResult besov_norm(const RadialSpectrum& spectrum, const BesovSpec& spec, const BesovOptions& opt) {
    spec.validate();
    const std::size_t count = static_cast<std::size_t>(spec.j_max - spec.j_min + 1);
    // blocks where |S| stays below 1e-12 of its peak are set to zero
    std::vector<double> block_peak(count, 0.0);
    double peak = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double N = std::ldexp(1.0, spec.j_min + static_cast<int>(i));
        const double a = std::max(0.5 * N, spectrum.lo), b = std::min(2.0 * N, spectrum.hi);
        for (int k = 0; a < b && k <= 256; ++k) block_peak[i] = std::max(block_peak[i], std::abs(spectrum.value(a + (b - a) * k / 256)));
        peak = std::max(peak, block_peak[i]);
    }
    BesovResult out;
    out.blocks.resize(count);
    parallel_for(
        count,
        [&](std::size_t i) {
            const int j = spec.j_min + static_cast<int>(i);
            const double lp = block_peak[i] > 1e-12 * peak ? block_lp_norm(spectrum, j, spec.p) : 0.0;
            out.blocks[i] = make_block(j, spec.s, lp);
        },
        opt.exec);
    out.value = combine_blocks(out.blocks, spec.q);

    const Cutoff c;
    const double total = l2_norm_spectrum(spectrum);
    if (total > 0.0) {
        RadialSpectrum rest = spectrum;
        const RadialFn S = spectrum.value;
        const int a = spec.j_min, b = spec.j_max;
        rest.value = [S, c, a, b](double rho) { return S(rho) * (1.0 - covered(c, a, b, rho)); };
        out.leakage = l2_norm_spectrum(rest) / total;
    }
    out.leakage_warning = out.leakage > opt.leakage_warn;
    return out;
}

BesovResult besov_norm(const RadialProfile& f, const BesovSpec& spec, const BesovOptions& opt) {
    spec.validate();
    f.validate();
    const std::size_t count = static_cast<std::size_t>(spec.j_max - spec.j_min + 1);
    std::vector<RadialProfile> parts(count);
    TransformOptions topt = opt.transform;
    topt.exec = Exec::serial;
    const Cutoff c;
    parallel_for(
        count, [&](std::size_t i) { parts[i] = band_project(f, DyadicBand{spec.j_min + static_cast<int>(i)}, c, topt); },
        opt.exec);
    BesovResult out;
    for (std::size_t i = 0; i < count; ++i)
        out.blocks.push_back(
            make_block(spec.j_min + static_cast<int>(i), spec.s, lp_norm_radial(parts[i], spec.p, 1.0).value));
    out.value = combine_blocks(out.blocks, spec.q);

    // f - sum_j P_j f, measured in L^2 on the profile grid
    RadialProfile rest = f;
    for (const RadialProfile& p : parts)
        for (std::size_t k = 0; k < rest.values.size(); ++k) rest.values[k] -= p.values[k];
    const double total = lp_norm_radial(f, 2.0, 1.0).value;
    if (total > 0.0) out.leakage = lp_norm_radial(rest, 2.0, 1.0).value / total;
    out.leakage_warning = out.leakage > opt.leakage_warn;
    return out;
}

void write_besov_csv(std::ostream& os, const BesovResult& r) {
    os << "j,two_pow_js,block_lp,weighted\n" << std::setprecision(17);
    for (const BesovBlock& b : r.blocks) os << b.j << ',' << b.two_pow_js << ',' << b.block_lp << ',' << b.weighted << '\n';
}

namespace {

MonotonicityReport monotone(const std::vector<BesovBlock>& blocks, double q1, double q2) {
    if (!(q1 >= 1.0) || !(q2 >= q1)) throw DomainError("lq_monotonicity_check: need 1 <= q1 <= q2");
    MonotonicityReport r;
    r.norm_q1 = combine_blocks(blocks, q1);
    r.norm_q2 = combine_blocks(blocks, q2);
    r.pass = r.norm_q2 <= r.norm_q1 * (1.0 + 1e-10);
    return r;
}

}  // namespace

MonotonicityReport lq_monotonicity_check(const RadialProfile& f, double s, double p, double q1, double q2, int j_min,
                                         int j_max, const BesovOptions& opt) {
    const BesovResult b = besov_norm(f, BesovSpec{s, p, q1, j_min, j_max}, opt);
    return monotone(b.blocks, q1, q2);
}

MonotonicityReport lq_monotonicity_check(const RadialSpectrum& f, double s, double p, double q1, double q2, int j_min,
                                         int j_max, const BesovOptions& opt) {
    const BesovResult b = besov_norm(f, BesovSpec{s, p, q1, j_min, j_max}, opt);
    return monotone(b.blocks, q1, q2);
}

}  // namespace fracdisp
