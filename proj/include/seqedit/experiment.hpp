#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "seqedit/editor.hpp"
#include "seqedit/metrics.hpp"
#include "seqedit/perturbation.hpp"

namespace seqedit {

struct ExperimentConfig {
    int p = 0;
    int q = 0;
    int num_pairs = 0;
    int num_edits = 0;
    EditRule edit_rule = EditRule::kRankOne;
    double ridge = 1e-3;
    std::optional<RestraintConfig> restraint;
    double noise = 0.05;
    int gen_samples = 8;
    double tol = 0.1;
    int checkpoint_every = 10;
    std::uint64_t seed = 0;
    int first_m = 0;  // 0 = num_edits / 2

    void validate() const;
    int effective_first_m() const {
        return first_m > 0 ? first_m : std::max(1, num_edits / 2);
    }
};

// Strict JSON parsing: unknown keys anywhere are a ConfigError.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string dump_config(const ExperimentConfig& cfg);

struct RunArtifacts {
    std::filesystem::path dir;
    EditTrace trace;
    DiagnosticsRecord final_record;
};

// Synthesizes the memory, generates the edit stream, runs the sequential
// editor, and writes base/, sum.mat, edit_keys.mat, edit_values.mat,
// checkpoints.csv, config.json, summary.json (and sum_unrestrained.mat
// for restrained runs) under out_dir.
RunArtifacts cmd_run(const ExperimentConfig& cfg,
                     const std::filesystem::path& out_dir);

EditTrace load_trace(const std::filesystem::path& dir);

// One row of the bound-verification campaign.
struct BoundTrial {
    int trial = 0;
    int p = 0;
    int q = 0;
    double kappa = 0.0;
    std::optional<PerturbationBound> bound;  // absent when gamma <= 0
    double gamma = 0.0;
    double actual_drift = 0.0;
    bool acute = false;
    std::optional<bool> bound_holds;
    // Theorem-level cross-checks, not serialized to CSV.
    double pinv_norm_tilde = 0.0;
    double pinv_norm_bound = 0.0;  // ||W^+|| / gamma, 0 when gamma <= 0
};

// Runs `trials` independent perturbation trials. Sizes vary per trial:
// rows in [6, p_max], cols in [rows + 4, q_max]; W is full-rank gaussian
// and the perturbation is assembled in the reduced frame (so it is acute
// by construction) with block norms drawn below sigma_min(W).
std::vector<BoundTrial> run_bound_campaign(int trials, int p_max, int q_max,
                                           std::uint64_t seed, int threads);

void cmd_bound_check(int trials, int p_max, int q_max, std::uint64_t seed,
                     const std::filesystem::path& out_path, int threads);

// Reloads a run directory, recomputes the final diagnostics from the
// serialized matrices, and writes metrics.csv plus drift.csv.
void cmd_analyze(const std::filesystem::path& trace_dir,
                 const std::filesystem::path& out_dir);

// SEQEDIT_THREADS, falling back to hardware concurrency.
int configured_threads();

}  // namespace seqedit
