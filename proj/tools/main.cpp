#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "fracdisp/errors.hpp"

using namespace fracdisp::cli;

int main(int argc, char** argv) {
    CLI::App app{"Dispersive kernels of the time-fractional Schroedinger equation"};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.add_option("--config", common.config, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", common.out, "output directory (default: stdout)");
    app.add_option("--threads", common.threads, "OpenMP threads")->check(CLI::PositiveNumber);
    app.add_option("--tol", common.tol, "quadrature relative tolerance")->check(CLI::PositiveNumber);
    app.add_option("--n", common.n, "dimension")->check(CLI::PositiveNumber);
    app.add_option("--alpha", common.alpha, "Caputo order in (0, 1]");
    app.add_option("--beta", common.beta, "order of the Laplacian power");

    int rc = 0;

    MlArgs ml;
    auto* c_ml = app.add_subcommand("ml", "Mittag-Leffler function E_alpha(z)");
    c_ml->add_option("--z", ml.z, "argument as RE,IM")->required();
    c_ml->callback([&] {
        ml.alpha = common.alpha.value_or(0.5);
        rc = cmd_ml(common, ml);
    });

    BesselArgs bessel;
    auto* c_bessel = app.add_subcommand("bessel", "Bessel function J_nu(x)");
    c_bessel->add_option("--nu", bessel.nu, "order")->required();
    c_bessel->add_option("--x", bessel.x, "argument")->required();
    c_bessel->callback([&] { rc = cmd_bessel(common, bessel); });

    KernelArgs kernel;
    auto* c_kernel = app.add_subcommand("kernel", "kernel profile K_t(x) or K_t^N(x) as CSV");
    c_kernel->add_option("--t", kernel.t, "time")->required();
    c_kernel->add_option("--j", kernel.j, "dyadic band N = 2^j; omit for the full kernel");
    c_kernel->add_option("--x-min", kernel.x_min, "first radius");
    c_kernel->add_option("--x-max", kernel.x_max, "last radius");
    c_kernel->add_option("--points", kernel.points, "number of radii");
    c_kernel->add_flag("--log", kernel.log_grid, "log-uniform radii");
    c_kernel->callback([&] { rc = cmd_kernel(common, kernel); });

    SweepArgs sweep;
    auto* c_sweep = app.add_subcommand("sweep", "sup_x |K| over the configured t and N grids");
    c_sweep->add_flag("--full", sweep.full, "full kernel over the x grid instead of dyadic bands");
    c_sweep->callback([&] { rc = cmd_sweep(common, sweep); });

    FitArgs fit;
    auto* c_fit = app.add_subcommand("fit", "power-law fit of a sweep CSV");
    c_fit->add_option("--in", fit.in, "sweep CSV")->required();
    c_fit->add_option("--by", fit.by, "t or N")->check(CLI::IsMember({"t", "N"}));
    c_fit->add_option("--j", fit.j, "keep only rows with N = 2^j");
    c_fit->callback([&] { rc = cmd_fit(common, fit); });

    BesovArgs besov;
    auto* c_besov = app.add_subcommand("besov", "homogeneous Besov norm");
    c_besov->add_option("--profile", besov.profile, "radial profile CSV");
    c_besov->add_option("--test", besov.test, "gaussian or band-limited (without --profile)");
    c_besov->add_option("--dilation", besov.dilation, "test function dilation");
    c_besov->add_option("--s", besov.s, "regularity");
    c_besov->add_option("--p", besov.p, "integrability (inf allowed)");
    c_besov->add_option("--q", besov.q, "summability (inf allowed)");
    c_besov->callback([&] { rc = cmd_besov(common, besov); });

    VerifyArgs verify;
    auto* c_verify = app.add_subcommand("verify", "run one verification and write its JSON report");
    c_verify->add_option("--check", verify.check, "check name")
        ->required()
        ->check(CLI::IsMember({"thm12", "sharpness", "besov7", "besov8", "besov9", "cor33", "ode", "lemma31"}));
    c_verify->add_option("--lambda", verify.lambda, "mode frequency (ode)");
    c_verify->add_option("--r", verify.r, "dispersive exponent r >= 2 (besov*)");
    c_verify->add_option("--test", verify.test, "gaussian or band-limited");
    c_verify->add_option("--p", verify.p, "Lebesgue exponent (cor33) or summability (besov9)");
    c_verify->add_option("--s", verify.s, "regularity (besov9)");
    c_verify->add_option("--t", verify.t, "time grid override")->delimiter(',');
    c_verify->callback([&] { rc = cmd_verify(common, verify); });

    PlotArgs plot;
    auto* c_plot = app.add_subcommand("plotdata", "log-log columns and fitted line from a sweep CSV");
    c_plot->add_option("--in", plot.in, "sweep CSV")->required();
    c_plot->add_option("--by", plot.by, "t or N")->check(CLI::IsMember({"t", "N"}));
    c_plot->add_option("--j", plot.j, "keep only rows with N = 2^j");
    c_plot->callback([&] { rc = cmd_plotdata(common, plot); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        print_error("usage", e.what());
        return 64;
    } catch (const fracdisp::Error& e) {
        print_error(e.kind(), e.what());
        return 2;
    } catch (const std::exception& e) {
        print_error("internal", e.what());
        return 3;
    }
    return rc;
}
