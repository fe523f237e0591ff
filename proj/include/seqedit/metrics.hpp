#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "seqedit/editor.hpp"
#include "seqedit/matrix.hpp"
#include "seqedit/memory.hpp"

namespace seqedit {

// Fraction of edits whose target is recalled within relative tolerance.
double efficacy(const Matrix& w_final, const std::vector<EditRequest>& edits,
                double tol = 0.1);

// Efficacy under noisy keys: each edit key is re-drawn `samples` times as
// normalize(k* + noise * gaussian). Noise streams are keyed on
// (seed, edit index, sample index) so evaluation order is irrelevant.
double generalization(const Matrix& w_final,
                      const std::vector<EditRequest>& edits, double noise,
                      int samples, double tol, std::uint64_t seed);

// Fraction of original stored pairs still recalled within tolerance,
// skipping pairs whose key was itself edited.
double locality(const Matrix& w_final, const AssociativeMemory& mem,
                const std::vector<Vector>& edited_keys, double tol = 0.1);

struct UpdateSpectrum {
    double sigma_max = 0.0;
    Vector all_sigmas;
};

UpdateSpectrum update_sum_spectrum(const Matrix& dw_sum);

// Top-2 principal axes of mean-centered vectors. All vectors identical
// yields the first two standard directions and zero coordinates.
struct Pca2d {
    Matrix basis;  // 2-by-p, orthonormal rows
    std::vector<Eigen::Vector2d> coords;
    std::array<double, 2> explained_variance = {0.0, 0.0};
};

Pca2d pca_project_2d(const std::vector<Vector>& vectors);

// PCA-plane view of edit-target preservation over the first first_m edits.
// "current" holds the edit targets, "editing" what the final matrix
// returns for the edit keys, "prune" the same under the restrained matrix.
// For a restrained trace the editing label uses the matrix as it stood
// before the last restraint firing. Discrepancies are mean 2D distances
// to the current label.
struct ValueDriftReport {
    std::vector<Eigen::Vector2d> current;
    std::vector<Eigen::Vector2d> editing;
    std::vector<Eigen::Vector2d> prune;  // empty when no restrained matrix
    double discrepancy_current = 0.0;
    double discrepancy_editing = 0.0;
    std::optional<double> discrepancy_prune;
};

ValueDriftReport value_drift(const EditTrace& trace,
                             const std::optional<Matrix>& restrained_w,
                             int first_m);

}  // namespace seqedit
