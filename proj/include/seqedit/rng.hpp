#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

#include "seqedit/matrix.hpp"

namespace seqedit {

// All randomness flows from a single master seed. Sub-streams (memory
// synthesis, edit stream, generalization noise, bound-check trials) are
// keyed with distinct tags so that changing one consumer never perturbs
// another. Streams are mt19937_64 with a custom Box-Muller transform;
// std::normal_distribution is implementation-defined and would not
// reproduce across standard libraries.

namespace stream_tag {
inline constexpr std::uint64_t memory = 0x6d656d6f72790001ULL;
inline constexpr std::uint64_t edits = 0x6564697473000002ULL;
inline constexpr std::uint64_t gen_noise = 0x67656e6e6f690003ULL;
inline constexpr std::uint64_t bound_trial = 0x747269616c000004ULL;
}  // namespace stream_tag

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Hash-chains the master seed with any number of stream words.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> words) {
    std::uint64_t h = splitmix64(master);
    for (std::uint64_t w : words) {
        h = splitmix64(h ^ w);
    }
    return h;
}

class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [lo, hi] inclusive.
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
        const std::uint64_t span = hi - lo + 1;
        return lo + engine_() % span;
    }

    // Standard normal via Box-Muller; the paired draw is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 =
            (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    Vector normal_vector(int n) {
        Vector v(n);
        for (int i = 0; i < n; ++i) v(i) = normal();
        return v;
    }

    // Gaussian direction normalized to unit length.
    Vector unit_vector(int n) {
        for (;;) {
            Vector v = normal_vector(n);
            const double norm = v.norm();
            if (norm > 0.0) return v / norm;
        }
    }

    Matrix normal_matrix(long rows, long cols) {
        Matrix a(rows, cols);
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j) a(i, j) = normal();
        return a;
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace seqedit
