#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "seqedit/matrix.hpp"
#include "seqedit/memory.hpp"
#include "seqedit/prune.hpp"

namespace seqedit {

// One requested rewrite: make the memory return new_value for key.
struct EditRequest {
    Vector key;        // unit-norm q-vector
    Vector new_value;  // unit-norm p-vector
};

enum class EditRule { kRankOne, kCovariance };

// Per-checkpoint diagnostics of the edited matrix.
struct DiagnosticsRecord {
    int edit_index = 0;
    double cond = 0.0;
    double sigma_max_w = 0.0;
    double sigma_min_w = 0.0;
    double sigma_max_sum = 0.0;
    double efficacy = 0.0;
    double generalization = 0.0;
    double locality = 0.0;
    double mean_recall_err = 0.0;
};

struct RestraintEvent {
    int event_index = 0;  // 1-based firing order
    int edit_index = 0;   // edit after which the restraint fired
    RestraintReport report;
};

struct EditTrace {
    AssociativeMemory base;
    Matrix update_sum;  // final_w() - base.w, maintained incrementally
    // Update sum as it stood just before the last restraint firing;
    // only present for restrained runs.
    std::optional<Matrix> pre_restraint_sum;
    std::vector<EditRequest> edits;
    std::vector<DiagnosticsRecord> checkpoints;
    std::vector<RestraintEvent> restraints;

    Matrix final_w() const { return base.w + update_sum; }
};

// dW = (v* - W k*) k*^T / (k*^T k*); exact on k*, rank at most one.
Matrix rank_one_edit(const Matrix& w_current, const EditRequest& req);

// dW = (v* - W k*) (C^{-1} k*)^T / (k*^T C^{-1} k*) with
// C = key_covariance + ridge I. Spends less of the update in directions
// where the stored keys are dense. key_covariance is K K^T / m.
Matrix covariance_weighted_edit(const Matrix& w_current,
                                const EditRequest& req,
                                const Matrix& key_covariance, double ridge);

// Second-moment matrix K K^T / m of the stored keys (q-by-q).
Matrix key_covariance(const AssociativeMemory& mem);

struct SequentialEditOptions {
    EditRule rule = EditRule::kRankOne;
    std::optional<RestraintConfig> restraint;
    int checkpoint_every = 10;
    double ridge = 1e-3;       // covariance rule only
    double metric_tol = 0.1;   // efficacy/locality threshold
    double gen_noise = 0.05;   // key noise for generalization
    int gen_samples = 8;
    std::uint64_t seed = 0;    // master seed for generalization noise streams
};

// Runs edits in order, each update computed from the current matrix.
// Checkpoints land at edit 0, every checkpoint_every edits, and at the
// final edit. Restraint firings (per the configured schedule) happen
// before the checkpoint of the same edit index and always threshold
// against sigma_max of the original unedited matrix.
EditTrace sequential_edit(const AssociativeMemory& mem,
                          const std::vector<EditRequest>& edits,
                          const SequentialEditOptions& options);

// Deterministic edit stream: even-indexed requests perturb a stored key
// (0.1 gaussian noise, renormalized), odd-indexed ones use fresh random
// keys; every target value is a fresh unit-norm draw.
std::vector<EditRequest> generate_edit_stream(const AssociativeMemory& mem,
                                              int num_edits,
                                              std::uint64_t seed);

// Diagnostics of w_current after the first `edits_applied` edits; also
// used by `analyze` to recompute the final record from serialized state.
DiagnosticsRecord compute_diagnostics(int edit_index, const Matrix& w_current,
                                      const Matrix& update_sum,
                                      const AssociativeMemory& mem,
                                      const std::vector<EditRequest>& edits,
                                      int edits_applied,
                                      const SequentialEditOptions& options);

}  // namespace seqedit
