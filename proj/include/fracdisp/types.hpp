#pragma once

#include <complex>
#include <cstddef>
#include <numbers>

namespace fracdisp {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

enum class EvalMethod { series, asymptotic, poisson_quadrature, closed_form };

const char* to_string(EvalMethod m) noexcept;

// est_error is an absolute error bound the evaluator commits to.
struct EvalDiagnostics {
    EvalMethod method = EvalMethod::closed_form;
    std::size_t terms_or_nodes = 0;
    double est_error = 0.0;
};

template <class T>
struct Evaluated {
    T value{};
    EvalDiagnostics diag{};
};

}  // namespace fracdisp
