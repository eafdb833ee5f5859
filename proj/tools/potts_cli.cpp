// Command-line front end: signal generation, Potts denoising, known-kernel
// deconvolution, blind-deconvolution parameter bounds, benchmarks and noise
// comparisons. Exit codes: 0 ok, 1 usage, 2 bad data, 3 non-convergence.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "potts/experiments.hpp"
#include "potts/io.hpp"
#include "potts/oracle.hpp"
#include "potts/rng.hpp"
#include "potts/signals.hpp"
#include "potts/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNoConvergence = 3;

std::uint64_t effective_seed(std::uint64_t flag_seed) {
    if (const char* env = std::getenv("POTTS_SEED")) return std::strtoull(env, nullptr, 10);
    return flag_seed;
}

potts::Kernel kernel_from_arg(const std::string& arg) {
    if (arg.rfind("file:", 0) == 0) return potts::read_kernel_csv(arg.substr(5));
    return potts::make_kernel(arg);
}

potts::NoiseSpec noise_from_args(const std::string& kind, double sigma, double frac,
                                 std::uint64_t seed) {
    potts::NoiseSpec spec;
    spec.seed = seed;
    spec.sigma = sigma;
    spec.frac = frac;
    if (kind == "gauss") spec.kind = potts::NoiseKind::gaussian;
    else if (kind == "laplace") spec.kind = potts::NoiseKind::laplacian;
    else if (kind == "saltpepper") spec.kind = potts::NoiseKind::salt_pepper;
    else if (kind == "none") spec.kind = potts::NoiseKind::none;
    else throw CLI::ValidationError("--noise", "unknown noise kind '" + kind + "'");
    return spec;
}

potts::WeightedSignal signal_from_columns(const potts::SignalColumns& cols) {
    if (cols.w) return potts::WeightedSignal(cols.f, *cols.w);
    return potts::WeightedSignal::uniform(cols.f);
}

int cmd_generate(const std::string& kind, int n, std::uint64_t seed, const std::string& noise,
                 double sigma, double frac, const std::string& blur, const std::string& out) {
    if (kind != "steps") {
        std::cerr << "error: unknown --kind '" << kind << "'\n";
        return kExitUsage;
    }
    const potts::StepSignal truth = potts::canonical_step_signal(n);
    std::vector<double> observed = truth.expand();
    if (!blur.empty()) observed = potts::convolve_same(observed, kernel_from_arg(blur));
    observed = potts::add_noise(observed, noise_from_args(noise, sigma, frac, seed));

    potts::SignalColumns truth_cols;
    potts::SignalColumns obs_cols;
    const auto truth_samples = truth.expand();
    for (int i = 0; i < n; ++i) {
        truth_cols.x.push_back(i);
        obs_cols.x.push_back(i);
        truth_cols.f.push_back(truth_samples[static_cast<std::size_t>(i)]);
        obs_cols.f.push_back(observed[static_cast<std::size_t>(i)]);
    }
    potts::write_signal_csv(out + ".truth.csv", truth_cols);
    potts::write_signal_csv(out, obs_cols);
    return kExitOk;
}

int cmd_denoise(const std::string& method, double gamma, const std::string& in,
                const std::string& out) {
    const auto cols = potts::read_signal_csv(in);
    const auto f = signal_from_columns(cols);
    const potts::StepSignal u =
        method == "l1potts" ? potts::min_l1_potts(f, gamma) : potts::min_l2_potts(f, gamma);
    const double energy = method == "l1potts"
                              ? potts::potts_energy_l1(u, f, potts::PottsParams(gamma))
                              : potts::potts_energy_l2(u, f, potts::PottsParams(gamma));

    potts::SignalColumns result;
    result.x = cols.x;
    result.f = u.expand();
    potts::write_signal_csv(out, result, "u");
    std::cout << "energy=" << energy << " jumps=" << u.jump_count() << "\n";
    return kExitOk;
}

int cmd_deconvolve(const std::string& kernel_arg, double gamma, double mu0, int max_outer,
                   const std::string& in, const std::string& out) {
    const auto cols = potts::read_signal_csv(in);
    if (cols.w) {
        std::cerr << "error: deconvolve expects an unweighted signal (x,f)\n";
        return kExitData;
    }
    const potts::Kernel kernel = kernel_from_arg(kernel_arg);
    potts::SplitParams params(gamma, mu0);
    params.max_outer = max_outer;
    const auto result = potts::min_kl1potts_split(cols.f, kernel, params);

    potts::SignalColumns out_cols;
    out_cols.x = cols.x;
    out_cols.f = result.u.expand();
    potts::write_signal_csv(out, out_cols, "u");
    std::cout << "outer_iterations=" << result.outer_iterations
              << " objective=" << result.objective << " jumps=" << result.u.jump_count() << "\n";
    if (!result.stalled) {
        std::cerr << "error: splitting did not stall within --max-outer iterations\n";
        return kExitNoConvergence;
    }
    return kExitOk;
}

int cmd_bounds(double hmin, double hmax, double lmin, double kappa, double eta) {
    const potts::GammaRange r =
        potts::deconv_gamma_range(potts::DeconvBounds{hmin, hmax, lmin, kappa, eta});
    std::cout.precision(12);
    if (!r.feasible) {
        std::cout << "infeasible max_kappa_eta=" << r.max_kappa_eta << "\n";
        return kExitOk;
    }
    std::cout << "gamma_lo=" << r.lo << " gamma_hi=" << r.hi << "\n";
    return kExitOk;
}

int cmd_bench(const std::vector<int>& sizes, int reps, std::uint64_t seed,
              const std::string& out) {
    const auto records = potts::runtime_scaling(sizes, reps, seed);
    if (out.empty()) {
        potts::write_bench_csv(std::cout, records);
    } else {
        std::ofstream os(out);
        potts::write_bench_csv(os, records);
    }
    return kExitOk;
}

int cmd_compare(const std::vector<std::string>& noise_args, const std::vector<double>& gammas,
                int seeds, int n, const std::string& out) {
    std::vector<potts::NoiseSpec> suite;
    for (const auto& arg : noise_args) {
        const auto colon = arg.find(':');
        const std::string kind = arg.substr(0, colon);
        const double param = colon == std::string::npos ? 0.0 : std::stod(arg.substr(colon + 1));
        suite.push_back(noise_from_args(kind, kind == "saltpepper" ? 0.0 : param,
                                        kind == "saltpepper" ? param : 0.0, 0));
    }
    const auto rows = potts::method_comparison(suite, gammas, seeds, n);
    if (out.empty()) {
        potts::write_comparison_csv(std::cout, rows);
    } else {
        std::ofstream os(out);
        potts::write_comparison_csv(os, rows);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact 1D Potts solvers: denoising and deconvolution of piecewise constant signals"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "write a ground-truth/observation CSV pair");
    std::string gen_kind = "steps";
    int gen_n = 256;
    std::uint64_t gen_seed = 1;
    std::string gen_noise = "none";
    double gen_sigma = 0.1;
    double gen_frac = 0.25;
    std::string gen_blur;
    std::string gen_out;
    gen->add_option("--kind", gen_kind, "signal kind (steps)");
    gen->add_option("--n", gen_n, "number of samples");
    gen->add_option("--seed", gen_seed, "noise seed");
    gen->add_option("--noise", gen_noise, "none|gauss|laplace|saltpepper");
    gen->add_option("--sigma", gen_sigma, "noise standard deviation");
    gen->add_option("--frac", gen_frac, "salt-and-pepper replacement probability");
    gen->add_option("--blur", gen_blur, "box:M or gauss:A:M, applied before noise");
    gen->add_option("--out", gen_out, "observation file path")->required();

    // denoise
    auto* den = app.add_subcommand("denoise", "minimize the L1- or L2-Potts functional");
    std::string den_method = "l1potts";
    double den_gamma = 0.0;
    std::string den_in, den_out;
    den->add_option("--method", den_method, "l1potts|l2potts")
        ->check(CLI::IsMember({"l1potts", "l2potts"}));
    den->add_option("--gamma", den_gamma, "jump penalty")->required()
        ->check(CLI::PositiveNumber);
    den->add_option("--in", den_in, "input CSV (x,f or x,f,w)")->required();
    den->add_option("--out", den_out, "output CSV (x,u)")->required();

    // deconvolve
    auto* dec = app.add_subcommand("deconvolve", "known-kernel K-L1-Potts splitting");
    std::string dec_kernel;
    double dec_gamma = 0.0;
    double dec_mu0 = -1.0;
    int dec_max_outer = 50;
    std::string dec_in, dec_out;
    dec->add_option("--kernel", dec_kernel, "box:M | gauss:A:M | file:PATH")->required();
    dec->add_option("--gamma", dec_gamma, "jump penalty")->required()->check(CLI::PositiveNumber);
    dec->add_option("--mu0", dec_mu0, "initial coupling (default 0.01*gamma)");
    dec->add_option("--max-outer", dec_max_outer, "outer iteration limit");
    dec->add_option("--in", dec_in, "input CSV (x,f)")->required();
    dec->add_option("--out", dec_out, "output CSV (x,u)")->required();

    // bounds
    auto* bnd = app.add_subcommand("bounds", "admissible gamma range for blind deconvolution");
    double b_hmin = 0.0, b_hmax = 0.0, b_lmin = 0.0, b_kappa = 0.0, b_eta = 0.0;
    bnd->add_option("--hmin", b_hmin)->required()->check(CLI::PositiveNumber);
    bnd->add_option("--hmax", b_hmax)->required()->check(CLI::PositiveNumber);
    bnd->add_option("--lmin", b_lmin)->required()->check(CLI::PositiveNumber);
    bnd->add_option("--kappa", b_kappa)->required()->check(CLI::NonNegativeNumber);
    bnd->add_option("--eta", b_eta)->required()->check(CLI::NonNegativeNumber);

    // bench
    auto* ben = app.add_subcommand("bench", "runtime scaling of the two solvers");
    std::vector<int> ben_sizes{1024, 2048, 4096};
    int ben_reps = 5;
    std::uint64_t ben_seed = 1;
    std::string ben_out;
    ben->add_option("--sizes", ben_sizes, "ascending signal lengths")->delimiter(',');
    ben->add_option("--reps", ben_reps, "repetitions per size");
    ben->add_option("--seed", ben_seed, "instance seed");
    ben->add_option("--out", ben_out, "output CSV (default stdout)");

    // compare
    auto* cmp = app.add_subcommand("compare", "noise robustness comparison");
    std::vector<std::string> cmp_noise{"laplace:0.1"};
    std::vector<double> cmp_gammas{1.0};
    int cmp_seeds = 1;
    int cmp_n = 256;
    std::string cmp_out;
    cmp->add_option("--noise", cmp_noise, "kind:param list, e.g. laplace:0.1,saltpepper:0.25")
        ->delimiter(',');
    cmp->add_option("--gammas", cmp_gammas, "jump penalties")->delimiter(',');
    cmp->add_option("--seeds", cmp_seeds, "number of seeds");
    cmp->add_option("--n", cmp_n, "signal length");
    cmp->add_option("--out", cmp_out, "output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_generate(gen_kind, gen_n, effective_seed(gen_seed), gen_noise, gen_sigma,
                                gen_frac, gen_blur, gen_out);
        if (den->parsed()) return cmd_denoise(den_method, den_gamma, den_in, den_out);
        if (dec->parsed())
            return cmd_deconvolve(dec_kernel, dec_gamma, dec_mu0, dec_max_outer, dec_in, dec_out);
        if (bnd->parsed()) return cmd_bounds(b_hmin, b_hmax, b_lmin, b_kappa, b_eta);
        if (ben->parsed()) return cmd_bench(ben_sizes, ben_reps, effective_seed(ben_seed), ben_out);
        if (cmp->parsed()) return cmd_compare(cmp_noise, cmp_gammas, cmp_seeds, cmp_n, cmp_out);
    } catch (const potts::SignalFormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
