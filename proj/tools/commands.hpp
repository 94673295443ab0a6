#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracdisp/config.hpp"

namespace fracdisp::cli {

// Flags shared by every subcommand; set values win over the config file.
struct Common {
    std::string config;
    std::string out;
    std::optional<int> threads;
    std::optional<double> tol;
    std::optional<int> n;
    std::optional<double> alpha;
    std::optional<double> beta;
};

struct MlArgs {
    double alpha = 0.5;
    std::string z;  // "re,im"
};

struct BesselArgs {
    double nu = 0.0;
    double x = 0.0;
};

struct KernelArgs {
    double t = 1.0;
    std::optional<int> j;  // absent: full kernel
    std::optional<double> x_min, x_max;
    std::size_t points = 257;
    bool log_grid = false;
};

struct SweepArgs {
    bool full = false;
};

struct FitArgs {
    std::string in;
    std::string by = "t";
    std::optional<int> j;
};

struct BesovArgs {
    std::string profile;
    std::string test = "gaussian";
    double dilation = 1.0;
    double s = 0.0, p = 2.0, q = 2.0;
};

struct VerifyArgs {
    std::string check;
    double lambda = 1.0;
    double r = 2.0;
    std::string test = "gaussian";
    std::optional<double> p;
    double s = 1.0;
    std::vector<double> t;
};

struct PlotArgs {
    std::string in;
    std::string by = "t";
    std::optional<int> j;
};

/// Config file (if any) with the common overrides applied.
RunConfig resolve(const Common& c);

int cmd_ml(const Common& c, const MlArgs& a);
int cmd_bessel(const Common& c, const BesselArgs& a);
int cmd_kernel(const Common& c, const KernelArgs& a);
int cmd_sweep(const Common& c, const SweepArgs& a);
int cmd_fit(const Common& c, const FitArgs& a);
int cmd_besov(const Common& c, const BesovArgs& a);
int cmd_verify(const Common& c, const VerifyArgs& a);
int cmd_plotdata(const Common& c, const PlotArgs& a);

/// {"error": kind, "message": ...} on stderr.
void print_error(const char* kind, const std::string& message);

}  // namespace fracdisp::cli
