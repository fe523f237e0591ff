#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "seqedit/matrix.hpp"

namespace seqedit {

// Linear associative memory: W k_i = v_i for every stored pair. Keys and
// values are unit-norm; keys sit in the rows of `keys` (m-by-q) and values
// in the rows of `values` (m-by-p). Immutable after construction.
struct AssociativeMemory {
    Matrix w;       // p-by-q, p < q
    Matrix keys;    // m-by-q
    Matrix values;  // m-by-p
    std::uint64_t seed = 0;

    int p() const { return static_cast<int>(w.rows()); }
    int q() const { return static_cast<int>(w.cols()); }
    int m() const { return static_cast<int>(keys.rows()); }

    Vector key(int i) const { return keys.row(i).transpose(); }
    Vector value(int i) const { return values.row(i).transpose(); }
};

// Draws m unit-norm keys and values from the seeded gaussian stream and
// interpolates them exactly with the minimum-Frobenius-norm W = V K^+.
// A rank-deficient key sample is retried with an incremented sub-seed,
// at most 3 attempts.
AssociativeMemory synthesize_memory(int p, int q, int m, std::uint64_t seed);

// W k.
Vector recall(const AssociativeMemory& mem, const Vector& k);

// Per-pair relative recall residual ||w_current k_i - v_i|| / ||v_i||.
std::vector<double> recall_error(const AssociativeMemory& mem,
                                 const Matrix& w_current);

// Directory layout: w.mat, keys.mat, values.mat, meta.json {p, q, m, seed}.
void save_memory(const std::filesystem::path& dir,
                 const AssociativeMemory& mem);
AssociativeMemory load_memory(const std::filesystem::path& dir);

}  // namespace seqedit
