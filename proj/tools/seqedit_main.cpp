#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "seqedit/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sequential associative-memory editing, perturbation-bound "
                 "verification, and singular-value restraint experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::string run_out;
    CLI::App* run = app.add_subcommand(
        "run", "Run a seeded sequential-editing experiment");
    run->add_option("--config", config_path, "experiment config JSON")
        ->required();
    run->add_option("--out", run_out, "output directory")->required();

    int trials = 100;
    int p_max = 32;
    int q_max = 64;
    std::uint64_t seed = 1;
    std::string bound_out;
    CLI::App* bound = app.add_subcommand(
        "bound-check", "Verify the key-drift and pseudo-inverse bounds on "
                       "random acute perturbations");
    bound->add_option("--trials", trials, "number of trials")->required();
    bound->add_option("--p", p_max, "largest row count (rows drawn in [6, p])")
        ->required();
    bound->add_option("--q", q_max,
                      "largest column count (cols drawn in [rows+4, q])")
        ->required();
    bound->add_option("--seed", seed, "campaign seed")->required();
    bound->add_option("--out", bound_out, "output CSV path")->required();

    std::string trace_dir;
    std::string analyze_out;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "Recompute metrics and value drift from a run directory");
    analyze->add_option("--trace", trace_dir, "run directory")->required();
    analyze->add_option("--out", analyze_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*run) {
            const seqedit::ExperimentConfig cfg =
                seqedit::load_config(config_path);
            seqedit::cmd_run(cfg, run_out);
        } else if (*bound) {
            seqedit::cmd_bound_check(trials, p_max, q_max, seed, bound_out,
                                     seqedit::configured_threads());
        } else if (*analyze) {
            seqedit::cmd_analyze(trace_dir, analyze_out);
        }
    } catch (const seqedit::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const seqedit::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const seqedit::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const seqedit::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "unexpected failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}
