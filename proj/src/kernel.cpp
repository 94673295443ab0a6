#include "fracdisp/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "fracdisp/errors.hpp"
#include "fracdisp/quadrature.hpp"
#include "fracdisp/specfun.hpp"

namespace fracdisp {

namespace {

Complex i_pow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

// E_alpha(-i s) for s >= 0
Complex ml_decay_ray(const MittagLeffler& ml, double s) { return ml.value(Complex(0.0, -s)); }

// Cut [a, b] geometrically (ratio 2, first cut at 1 when a = 0) and then
// uniformly so that no piece spans more than pi/x.
std::vector<std::pair<double, double>> oscillatory_pieces(double a, double b, double x) {
    std::vector<std::pair<double, double>> out;
    double c = a;
    while (c < b) {
        const double next = std::min(b, c <= 0.0 ? std::max(1.0, a) : 2.0 * c);
        const int k = x > 0.0 ? std::max(1, static_cast<int>(std::ceil((next - c) * x / kPi))) : 1;
        for (int i = 0; i < k; ++i) out.emplace_back(c + (next - c) * i / k, i + 1 == k ? next : c + (next - c) * (i + 1) / k);
        c = next;
    }
    return out;
}

struct PieceSum {
    Complex value{};
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
};

template <class F>
PieceSum integrate_pieces(F&& f, const std::vector<std::pair<double, double>>& pieces, double rel_tol) {
    const GaussRule& rule = gauss_legendre(16);
    double scale = 0.0;
    for (const auto& pc : pieces) {
        auto g = [&](double r) { return std::abs(f(r)); };
        scale += integrate_fixed(g, pc.first, pc.second, rule);
    }
    PieceSum out;
    out.evaluations = pieces.size() * rule.size();
    if (scale == 0.0) return out;
    const double tol = rel_tol * scale / static_cast<double>(pieces.size());
    for (const auto& pc : pieces) {
        const QuadResult<Complex> q = integrate_adaptive(f, pc.first, pc.second, tol);
        out.value += q.value;
        out.error += q.error;
        out.evaluations += q.evaluations;
        out.converged = out.converged && q.converged;
    }
    return out;
}

// int_R^inf r^{-s} e^{i x r} dr by repeated integration by parts,
//   -(e^{i x R} R^{-s} / (i x)) sum_k (s)_k / (i x R)^k,
// truncated at the smallest term.
Complex oscillatory_power_tail(double s, double x, double R, double* err) {
    const Complex ixR(0.0, x * R);
    Complex term = 1.0, sum = 0.0;
    double last = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 400; ++k) {
        const double ta = std::abs(term);
        if (ta > prev) break;
        sum += term;
        last = ta;
        prev = ta;
        if (ta == 0.0 || ta < 1e-18 * std::abs(sum)) break;
        term *= (s + k) / ixR;
    }
    const Complex front = -std::polar(std::pow(R, -s), x * R) / Complex(0.0, x);
    if (err) *err = std::abs(front) * last;
    return front * sum;
}

double tail_w(double alpha) {
    // E's algebraic expansion is used where both the truncation remainder
    // (~e^{-w}) and any exponential piece are below 1e-16
    if (alpha <= 0.5) return 36.0;
    return std::max(36.0, 37.0 / std::fabs(std::cos(kPi / (2.0 * alpha))));
}

}  // namespace

// ----------------------------------------------------------------- spec

const char* to_string(Normalization v) noexcept {
    return v == Normalization::symmetric ? "symmetric" : "unnormalized";
}

const char* to_string(Regime v) noexcept {
    switch (v) {
        case Regime::subcritical: return "subcritical";
        case Regime::critical_or_super: return "critical-or-super";
        case Regime::resonant: return "resonant";
    }
    return "resonant";
}

Normalization normalization_from_string(const std::string& s) {
    if (s == "symmetric") return Normalization::symmetric;
    if (s == "unnormalized") return Normalization::unnormalized;
    throw DomainError("unknown normalization '" + s + "'");
}

void KernelSpec::validate() const {
    if (n < 1) throw DomainError("KernelSpec: n must be >= 1");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("KernelSpec: alpha must lie in (0, 1]");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("KernelSpec: beta must be positive");
}

int KernelSpec::resonance_order() const {
    const double m = std::round(n / beta);
    if (m >= 1.0 && std::fabs(m * beta - n) <= 1e-12 * n) return static_cast<int>(m);
    return 0;
}

Regime KernelSpec::regime() const {
    if (beta > n) return Regime::subcritical;
    if (resonance_order() > 0) return Regime::resonant;
    return Regime::critical_or_super;
}

double KernelSpec::prefactor() const {
    return normalization == Normalization::symmetric ? 1.0 : std::pow(2.0 * kPi, 0.5 * n);
}

// --------------------------------------------------------- band kernels

BandKernel::BandKernel(const KernelSpec& spec, double t, DyadicBand band, double x_max, const BandOptions& opt)
    : spec_(spec), t_(t), N_(band.N()) {
    spec.validate();
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("kernel_band: t must be finite and >= 0");
    if (!(x_max >= 0.0)) throw DomainError("kernel_band: x_max must be >= 0");
    tanb_ = t == 0.0 ? 0.0 : std::pow(t, spec.alpha) * std::pow(N_, spec.beta);
    scale_ = spec.prefactor() * std::pow(N_, spec.n);
    const MittagLeffler& ml = ml_evaluator(MLOrder(spec.alpha));
    const double T = tanb_, beta = spec.beta;
    const Cutoff cutoff;
    RadialSpectrum s;
    s.n = spec.n;
    s.lo = 0.5;
    s.hi = 2.0;
    s.value = [&ml, T, beta, cutoff](double r) { return ml_decay_ray(ml, T * std::pow(r, beta)) * cutoff.psi(0, r); };
    TransformOptions topt;
    topt.rel_tol = opt.rel_tol;
    topt.base_panels = opt.base_panels;
    topt.max_level = opt.max_level;
    topt.exec = opt.exec;
    core_ = std::make_shared<const RadialTransform>(s, x_max * N_, topt);

    const double nm1 = spec.n - 1.0;
    auto absE = [&](double r) { return std::abs(ml_decay_ray(ml, T * std::pow(r, beta))) * std::pow(r, nm1); };
    const double coarse = integrate_fixed(absE, 0.5, 2.0, gauss_legendre(64));
    const double mass = integrate_adaptive(absE, 0.5, 2.0, 1e-13 * std::max(coarse, 1e-300)).value;
    triangle_ = scale_ * omega_n_bound(spec.n) * mass;
}

KernelSample BandKernel::operator()(double x) const {
    if (!(x >= 0.0)) throw DomainError("kernel_band: x must be >= 0");
    const Evaluated<Complex> c = (*core_)(N_ * x);
    KernelSample out;
    out.t = t_;
    out.N = N_;
    out.x_radius = x;
    out.value = scale_ * c.value;
    out.diag = c.diag;
    out.diag.est_error = scale_ * c.diag.est_error;
    out.panels = c.diag.terms_or_nodes / 16;
    out.tail_bound = 0.0;
    return out;
}

KernelSample kernel_band(const KernelSpec& spec, double t, DyadicBand band, double x_radius, const BandOptions& opt) {
    BandOptions o = opt;
    o.exec = Exec::serial;
    return BandKernel(spec, t, band, x_radius, o)(x_radius);
}

std::vector<KernelSample> kernel_band_profile(const KernelSpec& spec, double t, DyadicBand band,
                                              const std::vector<double>& x_grid, Exec exec, const BandOptions& opt) {
    if (x_grid.empty()) return {};
    double x_max = 0.0;
    for (double x : x_grid) x_max = std::max(x_max, x);
    BandOptions o = opt;
    o.exec = exec;
    const BandKernel k(spec, t, band, x_max, o);
    std::vector<KernelSample> out(x_grid.size());
    parallel_for(
        x_grid.size(), [&](std::size_t i) { out[i] = k(x_grid[i]); }, exec);
    return out;
}

std::vector<double> default_sup_grid(DyadicBand band, std::size_t points) {
    std::vector<double> g = log_uniform_grid(1e-3, 1e2, points);
    for (double& x : g) x /= band.N();
    g.insert(g.begin(), 0.0);
    return g;
}

SupResult sup_search(const KernelSpec& spec, double t, DyadicBand band, const std::vector<double>& x_grid, Exec exec,
                     const BandOptions& opt) {
    const std::vector<KernelSample> ks = kernel_band_profile(spec, t, band, x_grid, exec, opt);
    SupResult out;
    out.evaluated = ks.size();
    for (const KernelSample& k : ks) {
        const double a = std::abs(k.value);
        if (a > out.value) {
            out.value = a;
            out.x_star = k.x_radius;
        }
        out.max_est_error = std::max(out.max_est_error, k.diag.est_error);
    }
    return out;
}

LeadingSplit leading_term_split(const KernelSpec& spec, double T, double Nx) {
    spec.validate();
    if (!(T > 0.0)) throw DomainError("leading_term_split: t^alpha N^beta must be positive");
    const MittagLeffler& ml = ml_evaluator(MLOrder(spec.alpha));
    const Cutoff cutoff;
    const double g = recip_gamma(1.0 - spec.alpha);
    const double nm1 = spec.n - 1.0;
    auto lead = [&](double r) { return Complex(0.0, -g / (T * std::pow(r, spec.beta))); };
    auto weight = [&](double r) { return cutoff.psi(0, r) * std::pow(r, nm1) * omega_n(spec.n, r * Nx); };
    auto f1 = [&](double r) { return (ml_decay_ray(ml, T * std::pow(r, spec.beta)) - lead(r)) * weight(r); };
    auto f2 = [&](double r) { return lead(r) * weight(r); };
    const auto pieces = oscillatory_pieces(0.5, 2.0, Nx);
    LeadingSplit out;
    out.t_alpha_N_beta = T;
    out.i1 = integrate_pieces(f1, pieces, 1e-13).value;
    out.i2 = integrate_pieces(f2, pieces, 1e-13).value;
    return out;
}

// --------------------------------------------------------- full kernels

double power_tail(int n, double p, double x, double R, double* err) {
    if (n < 1) throw DomainError("power_tail: dimension must be >= 1");
    if (!(R > 0.0)) throw DomainError("power_tail: R must be positive");
    if (x == 0.0) {
        if (!(p < -1.0)) throw DomainError("power_tail: divergent at x = 0");
        if (err) *err = 0.0;
        return omega_n_bound(n) * std::pow(R, p + 1.0) / (-p - 1.0);
    }
    if (x * R < 25.0) throw DomainError("power_tail: R x must be >= 25");
    const double nu = 0.5 * (n - 2);
    const std::vector<double> h = hankel_coefficients(nu, 60);
    const Complex phase = std::polar(1.0, -(0.5 * nu * kPi + 0.25 * kPi));
    double sum = 0.0, total_err = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int m = 0; m < static_cast<int>(h.size()); ++m) {
        const double size = std::fabs(h[static_cast<std::size_t>(m)]) * std::pow(x * R, -m);
        if (m > 0 && size > prev) break;
        if (h[static_cast<std::size_t>(m)] == 0.0) break;  // half-integer order: exact
        double e = 0.0;
        const Complex I = oscillatory_power_tail(nu + 0.5 + m - p, x, R, &e);
        const double c = h[static_cast<std::size_t>(m)] * std::pow(x, -nu - 0.5 - m);
        sum += (phase * i_pow(m) * c * I).real();
        total_err += std::fabs(c) * e;
        prev = size;
        if (size < 1e-18) break;
    }
    const double k = std::sqrt(2.0 / kPi);
    if (err) *err = k * total_err;
    return k * sum;
}

KernelSample full_integral(const KernelSpec& spec, double T, double x, const FullOptions& opt) {
    spec.validate();
    if (spec.alpha == 1.0) throw DomainError("kernel_full: alpha = 1 is not supported");
    if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("kernel_full: t must be positive");
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("kernel_full: x must be finite and >= 0");
    if (x == 0.0 && spec.beta <= spec.n)
        throw DomainError("kernel_full: the kernel is unbounded at x = 0 when beta <= n");
    const MittagLeffler& ml = ml_evaluator(MLOrder(spec.alpha));
    const int n = spec.n;
    const double beta = spec.beta, nm1 = n - 1.0;
    const double R_E = std::pow(std::pow(tail_w(spec.alpha), spec.alpha) / T, 1.0 / beta);
    const double R = std::max({R_E, 2.0, x > 0.0 ? opt.phase_tail / x : 0.0});
    const Cutoff cutoff;

    auto f = [&](double r) {
        return ml_decay_ray(ml, T * std::pow(r, beta)) * (nm1 == 0.0 ? 1.0 : std::pow(r, nm1)) * omega_n(n, r * x);
    };
    // ball part: f phi on [0, 2]
    auto inner = [&](double r) { return f(r) * cutoff.phi(r); };
    // exterior part: f Phi on [1, R]
    auto outer = [&](double r) { return f(r) * cutoff.exterior(r); };
    const PieceSum k2 = integrate_pieces(inner, oscillatory_pieces(0.0, 2.0, x), opt.rel_tol);
    const PieceSum k1 = integrate_pieces(outer, oscillatory_pieces(1.0, R, x), opt.rel_tol);

    // tail: E(-i T r^beta) ~ sum_j c_j i^j T^{-j} r^{-beta j}
    Complex tail = 0.0;
    double tail_err = 0.0;
    const double lTR = std::log(T) + beta * std::log(R);
    double first = 0.0, prev = std::numeric_limits<double>::infinity();
    for (int j = 1; j < 4000; ++j) {
        const double c = ml.asymptotic_coefficient(j);
        const double env = std::exp(std::lgamma(spec.alpha * j) - j * lTR) / kPi;
        if (j > 1 && env > prev) break;
        if (j == 1) first = env;
        prev = env;
        if (c != 0.0) {
            double e = 0.0;
            const double pt = power_tail(n, nm1 - beta * j, x, R, &e);
            const Complex a = c * i_pow(j) * std::pow(T, -j);
            tail += a * pt;
            tail_err += std::abs(a) * e;
        }
        if (env < 1e-17 * first) break;
    }
    // remainder of the expansion of E beyond the last term
    tail_err += prev * std::pow(R, n) * omega_n_bound(n);

    const double pref = spec.prefactor();
    KernelSample out;
    out.x_radius = x;
    out.value = pref * (k2.value + k1.value + tail);
    out.diag.method = EvalMethod::poisson_quadrature;
    out.diag.terms_or_nodes = k1.evaluations + k2.evaluations;
    out.diag.est_error = pref * (k1.error + k2.error + tail_err);
    out.panels = out.diag.terms_or_nodes / 16;
    out.tail_bound = pref * tail_err;
    if (!k1.converged || !k2.converged) out.diag.est_error = std::max(out.diag.est_error, 1e-6 * std::abs(out.value));
    return out;
}

KernelSample kernel_full(const KernelSpec& spec, double t, double x_radius, const FullOptions& opt) {
    if (!(t > 0.0)) throw DomainError("kernel_full: t must be positive");
    const double eta = x_radius * std::pow(t, -spec.alpha / spec.beta);
    const double s = std::pow(t, -spec.n * spec.alpha / spec.beta);
    KernelSample k = full_integral(spec, 1.0, eta, opt);
    k.t = t;
    k.x_radius = x_radius;
    k.value *= s;
    k.diag.est_error *= s;
    k.tail_bound *= s;
    return k;
}

KernelSample kernel_full_direct(const KernelSpec& spec, double t, double x_radius, const FullOptions& opt) {
    if (!(t > 0.0)) throw DomainError("kernel_full: t must be positive");
    KernelSample k = full_integral(spec, std::pow(t, spec.alpha), x_radius, opt);
    k.t = t;
    return k;
}

double riesz_constant(int n, double theta) {
    if (n < 1) throw DomainError("riesz_constant: dimension must be >= 1");
    if (!(theta > 0.0 && theta < n)) throw DomainError("riesz_constant: theta must lie in (0, n)");
    return std::pow(2.0, n - theta) * std::pow(kPi, 0.5 * n) * gamma_real(0.5 * (n - theta)) / gamma_real(0.5 * theta);
}

Complex expansion_coefficient(const KernelSpec& spec, int k) {
    spec.validate();
    const MittagLeffler& ml = ml_evaluator(MLOrder(spec.alpha));
    const double c = ml.asymptotic_coefficient(k);
    if (c == 0.0) return 0.0;
    const double sym = spec.normalization == Normalization::symmetric ? std::pow(2.0 * kPi, -0.5 * spec.n) : 1.0;
    return riesz_constant(spec.n, spec.beta * k) * sym * c * i_pow(k);
}

ExpansionResidual expansion_residual(const KernelSpec& spec, double t, double x_radius, const FullOptions& opt) {
    spec.validate();
    if (!(x_radius > 0.0)) throw DomainError("expansion_residual: x must be positive");
    ExpansionResidual out;
    out.resonance = spec.resonance_order();
    int kmax = 0;
    while (spec.beta * (kmax + 1) < spec.n * (1.0 - 1e-12)) ++kmax;
    out.terms = kmax;
    const KernelSample K = kernel_full(spec, t, x_radius, opt);
    Complex sum = 0.0;
    for (int k = 1; k <= kmax; ++k)
        sum += expansion_coefficient(spec, k) * std::pow(x_radius, -spec.n + spec.beta * k) * std::pow(t, -spec.alpha * k);
    const double s = std::pow(t, spec.n * spec.alpha / spec.beta);
    out.residual = std::abs(K.value - sum) * s;
    out.raw = std::abs(K.value) * s;
    out.eta = x_radius * std::pow(t, -spec.alpha / spec.beta);
    if (out.resonance > 0) out.resonant_coefficient = std::fabs(recip_gamma(1.0 - spec.alpha * out.resonance));
    return out;
}

Evaluated<Complex> w1_eval(int n, double eta, const FullOptions& opt) {
    if (n < 1) throw DomainError("w1_eval: dimension must be >= 1");
    if (!(eta > 0.0 && eta <= 0.5)) throw DomainError("w1_eval: eta must lie in (0, 1/2]");
    const Cutoff cutoff;
    const double R = std::max(2.0, opt.phase_tail / eta);
    auto f = [&](double r) { return Complex(cutoff.exterior(r) * omega_n(n, r * eta) / r); };
    const PieceSum body = integrate_pieces(f, oscillatory_pieces(1.0, R, eta), opt.rel_tol);
    double terr = 0.0;
    const double tail = power_tail(n, -1.0, eta, R, &terr);
    const double pref = std::pow(2.0 * kPi, 0.5 * n);
    Evaluated<Complex> out;
    out.value = pref * (body.value + tail);
    out.diag.method = EvalMethod::poisson_quadrature;
    out.diag.terms_or_nodes = body.evaluations;
    out.diag.est_error = pref * (body.error + terr);
    return out;
}

void write_kernel_csv(std::ostream& os, const std::vector<KernelSample>& samples) {
    os << "t,N,x,re,im,abs,panels,tail_bound,status\n" << std::setprecision(17);
    for (const KernelSample& k : samples)
        os << k.t << ',' << k.N << ',' << k.x_radius << ',' << k.value.real() << ',' << k.value.imag() << ','
           << std::abs(k.value) << ',' << k.panels << ',' << k.tail_bound << ',' << (k.ok ? "ok" : "failed") << '\n';
}

std::vector<KernelSample> read_kernel_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("t,N,x,re,im", 0) != 0) throw DomainError("kernel CSV: missing header");
    std::vector<KernelSample> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell[9];
        for (auto& c : cell) std::getline(ss, c, ',');
        try {
            KernelSample k;
            k.t = std::stod(cell[0]);
            k.N = std::stod(cell[1]);
            k.x_radius = std::stod(cell[2]);
            k.value = Complex(std::stod(cell[3]), std::stod(cell[4]));
            k.panels = std::stoul(cell[6]);
            k.tail_bound = std::stod(cell[7]);
            k.ok = cell[8] == "ok";
            out.push_back(k);
        } catch (const std::exception&) {
            throw DomainError("kernel CSV: malformed row '" + line + "'");
        }
    }
    return out;
}

}  // namespace fracdisp
