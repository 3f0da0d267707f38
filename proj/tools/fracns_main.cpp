#include "fracns/analysis.hpp"
#include "fracns/config_file.hpp"
#include "fracns/orchestration.hpp"
#include "fracns/verify_suites.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

int do_solve(const std::string& config_path, const std::string& output_dir, long long seed,
             int threads) {
    fracns::cli::RunConfig cfg;
    try {
        cfg = fracns::cli::RunConfig::from_keyvalues(fracns::cli::load_config(config_path));
        if (!output_dir.empty()) cfg.output_dir = output_dir;
        if (seed >= 0) cfg.seed = static_cast<unsigned long long>(seed);
        if (threads > 0) cfg.threads = threads;
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    try {
        auto art = fracns::cli::run_solve(cfg);
        for (const auto& w : art.warnings) std::cerr << "warning: " << w << "\n";
        std::cout << "verdict: "
                  << (art.exit_code == 2 ? "halted_blowup" : "completed") << "\n"
                  << "trajectory: " << art.trajectory_csv << "\n"
                  << "manifest: " << art.manifest_path << "\n";
        if (art.exit_code == 2) {
            std::cout << "t_max_estimate: " << art.state.t_max_estimate << "\n";
        }
        return art.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "solve failed: " << e.what() << "\n";
        return 1;
    }
}

int do_verify(const std::string& suite, const std::string& output_dir, long long seed) {
    try {
        auto results = fracns::cli::run_suites(
            suite, output_dir, seed >= 0 ? static_cast<unsigned long long>(seed) : 4242ull);
        int checks = 0, failures = 0;
        for (const auto& r : results) {
            checks += r.checks;
            failures += static_cast<int>(r.failures.size());
            std::cout << "suite " << r.name << ": " << (r.passed() ? "PASS" : "FAIL") << " ("
                      << r.checks << " checks)\n";
            for (const auto& f : r.failures) std::cout << "  failed: " << f << "\n";
        }
        std::cout << "total: " << checks - failures << "/" << checks << " checks passed\n";
        return failures == 0 ? 0 : 3;
    } catch (const std::exception& e) {
        std::cerr << "verify failed to run: " << e.what() << "\n";
        return 1;
    }
}

int do_convergence(const std::string& config_path, const std::string& ladder_arg,
                   const std::string& output_dir) {
    try {
        auto cfg = fracns::cli::RunConfig::from_keyvalues(fracns::cli::load_config(config_path));
        if (!output_dir.empty()) cfg.output_dir = output_dir;

        std::vector<int> ladder;
        std::stringstream ss(ladder_arg);
        std::string item;
        while (std::getline(ss, item, ',')) ladder.push_back(std::stoi(item));
        if (ladder.size() < 3) {
            std::cerr << "convergence: ladder needs >= 3 comma-separated levels\n";
            return 1;
        }

        auto op = fracns::cli::build_operator(cfg);
        auto force = fracns::cli::build_force(cfg);
        auto phi = fracns::cli::build_datum(cfg, op);
        fracns::solops::OperatorFamily fam(cfg.alpha, op);

        fracns::solver::SolverConfig scfg;
        scfg.alpha = cfg.alpha;
        scfg.t_end = cfg.t_end;
        scfg.mesh_gamma = cfg.mesh_gamma;
        scfg.picard_tol = cfg.picard_tol;
        scfg.picard_max_iters = cfg.picard_max_iters;
        scfg.blowup_threshold = cfg.blowup_threshold;
        scfg.half_norm_beta = cfg.half_norm_beta;
        scfg.nonlinear = cfg.nonlinear;

        auto rep = fracns::analysis::run_convergence_study(fam, scfg, force, phi, ladder);
        std::filesystem::create_directories(cfg.output_dir);
        const auto path = std::filesystem::path(cfg.output_dir) / "convergence.csv";
        std::ofstream os(path);
        rep.write_csv(os);
        std::cout << "levels:";
        for (std::size_t i = 0; i < rep.steps.size(); ++i) {
            std::cout << " " << rep.steps[i] << ":" << rep.errors[i];
        }
        std::cout << "\n";
        if (rep.exact) {
            std::cout << "order: exact (errors at reference precision)\n";
        } else {
            std::cout << "order: " << rep.order << "\n";
        }
        std::cout << "report: " << path.string() << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "convergence failed: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracns: time-fractional spectral Navier-Stokes with delayed forcing"};
    app.require_subcommand(1);

    std::string config_path, output_dir, suite = "all", ladder_arg = "16,32,64";
    long long seed = -1;
    int threads = 0;

    auto* solve = app.add_subcommand("solve", "run the mild-solution solver from a config file");
    solve->add_option("--config", config_path, "configuration file")->required();
    solve->add_option("--output", output_dir, "output directory (overrides config)");
    solve->add_option("--seed", seed, "random seed (overrides config)");
    solve->add_option("--threads", threads, "thread count (recorded; current build is serial)");

    auto* verify = app.add_subcommand("verify", "run numerical audit suites");
    verify->add_option("--suite", suite, "specfun|operators|bilinear|regularity|all");
    verify->add_option("--output", output_dir, "report directory")->required();
    verify->add_option("--seed", seed, "random seed for sampled audits");

    auto* conv = app.add_subcommand("convergence", "mesh-refinement study from a config file");
    conv->add_option("--config", config_path, "configuration file")->required();
    conv->add_option("--ladder", ladder_arg, "comma-separated step counts, each 2x the last");
    conv->add_option("--output", output_dir, "output directory (overrides config)");

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed()) return do_solve(config_path, output_dir, seed, threads);
    if (verify->parsed()) return do_verify(suite, output_dir, seed);
    if (conv->parsed()) return do_convergence(config_path, ladder_arg, output_dir);
    return 1;
}
