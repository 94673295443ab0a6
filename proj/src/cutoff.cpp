#include <omp.h>

#include <cmath>
#include <string>

#include "fracdisp/errors.hpp"
#include "fracdisp/freq.hpp"
#include "fracdisp/parallel.hpp"
#include "fracdisp/specfun.hpp"

namespace fracdisp {

int max_threads() { return omp_get_max_threads(); }

void set_threads(int k) {
    if (k < 1) throw DomainError("threads must be >= 1");
    omp_set_num_threads(k);
}

Cutoff::Cutoff(double sharpness) : sharpness_(sharpness) {
    if (!(sharpness > 0.0) || !std::isfinite(sharpness))
        throw DomainError("cutoff sharpness must be positive, got " + std::to_string(sharpness));
}

Cutoff build_cutoff(double sharpness) { return Cutoff(sharpness); }

double Cutoff::phi(double r) const {
    r = std::fabs(r);
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double a = std::exp(-sharpness_ / (2.0 - r));
    const double b = std::exp(-sharpness_ / (r - 1.0));
    return a / (a + b);
}

double Cutoff::exterior(double r) const {
    r = std::fabs(r);
    if (r <= 1.0) return 0.0;
    if (r >= 2.0) return 1.0;
    const double a = std::exp(-sharpness_ / (2.0 - r));
    const double b = std::exp(-sharpness_ / (r - 1.0));
    return b / (a + b);
}

double Cutoff::psi(int j, double r) const {
    const double s = std::ldexp(std::fabs(r), -j);
    if (s <= 0.5 || s >= 2.0) return 0.0;
    return phi(s) - phi(2.0 * s);
}

double Cutoff::psi_around(int j, double r) const { return psi(j - 1, r) + psi(j, r) + psi(j + 1, r); }

double DyadicBand::N() const { return std::ldexp(1.0, j); }
double DyadicBand::lo() const { return std::ldexp(1.0, j - 1); }
double DyadicBand::hi() const { return std::ldexp(1.0, j + 1); }

double sphere_measure(int n) {
    if (n < 1) throw DomainError("sphere_measure: dimension must be >= 1");
    return 2.0 * std::pow(kPi, 0.5 * n) / gamma_real(0.5 * n);
}

}  // namespace fracdisp
