#include "seqedit/memory.hpp"

#include <fstream>

#include "json.hpp"
#include "seqedit/linalg.hpp"
#include "seqedit/rng.hpp"

namespace seqedit {

namespace {

constexpr double kConstructionTol = 1e-8;

double max_recall_error(const Matrix& w, const Matrix& keys,
                        const Matrix& values) {
    double worst = 0.0;
    for (long i = 0; i < keys.rows(); ++i) {
        const Vector residual =
            w * keys.row(i).transpose() - values.row(i).transpose();
        worst = std::max(worst, residual.norm() / values.row(i).norm());
    }
    return worst;
}

}  // namespace

AssociativeMemory synthesize_memory(int p, int q, int m, std::uint64_t seed) {
    if (p <= 0 || q <= 0 || m <= 0) {
        throw DomainError("synthesize_memory: dimensions must be positive");
    }
    if (p >= q) {
        throw DomainError("synthesize_memory: requires p < q");
    }
    if (m > q) {
        throw DomainError(
            "synthesize_memory: more pairs than key dimension, exact storage "
            "infeasible");
    }

    for (int attempt = 0; attempt < 3; ++attempt) {
        GaussianStream rng(
            derive_seed(seed, {stream_tag::memory, static_cast<std::uint64_t>(attempt)}));
        Matrix keys(m, q);
        Matrix values(m, p);
        for (int i = 0; i < m; ++i) {
            keys.row(i) = rng.unit_vector(q).transpose();
            values.row(i) = rng.unit_vector(p).transpose();
        }
        // K holds the keys as columns; W = V K^+ interpolates exactly
        // whenever K has full column rank.
        const Matrix k_cols = keys.transpose();
        const Matrix w = values.transpose() * pseudo_inverse(k_cols);
        if (max_recall_error(w, keys, values) <= kConstructionTol) {
            AssociativeMemory mem;
            mem.w = w;
            mem.keys = std::move(keys);
            mem.values = std::move(values);
            mem.seed = seed;
            return mem;
        }
    }
    throw SingularityError(
        "synthesize_memory: sampled keys rank-deficient after 3 attempts", 0.0);
}

Vector recall(const AssociativeMemory& mem, const Vector& k) {
    if (k.size() != mem.w.cols()) {
        throw DimensionError("recall: key length does not match memory");
    }
    return mem.w * k;
}

std::vector<double> recall_error(const AssociativeMemory& mem,
                                 const Matrix& w_current) {
    if (w_current.rows() != mem.w.rows() || w_current.cols() != mem.w.cols()) {
        throw DimensionError("recall_error: matrix shape does not match memory");
    }
    std::vector<double> errors(static_cast<std::size_t>(mem.m()));
    for (int i = 0; i < mem.m(); ++i) {
        const Vector residual =
            w_current * mem.key(i) - mem.value(i);
        errors[static_cast<std::size_t>(i)] =
            residual.norm() / mem.value(i).norm();
    }
    return errors;
}

void save_memory(const std::filesystem::path& dir,
                 const AssociativeMemory& mem) {
    std::filesystem::create_directories(dir);
    save_matrix(dir / "w.mat", mem.w);
    save_matrix(dir / "keys.mat", mem.keys);
    save_matrix(dir / "values.mat", mem.values);
    nlohmann::json meta = {{"p", mem.p()},
                           {"q", mem.q()},
                           {"m", mem.m()},
                           {"seed", mem.seed}};
    std::ofstream out(dir / "meta.json");
    if (!out) {
        throw IoError("cannot write " + (dir / "meta.json").string());
    }
    out << meta.dump(2) << '\n';
}

AssociativeMemory load_memory(const std::filesystem::path& dir) {
    std::ifstream in(dir / "meta.json");
    if (!in) {
        throw IoError("cannot open " + (dir / "meta.json").string());
    }
    nlohmann::json meta;
    try {
        in >> meta;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad meta.json in " + dir.string() + ": " + e.what());
    }
    AssociativeMemory mem;
    mem.w = load_matrix(dir / "w.mat");
    mem.keys = load_matrix(dir / "keys.mat");
    mem.values = load_matrix(dir / "values.mat");
    mem.seed = meta.at("seed").get<std::uint64_t>();
    const int p = meta.at("p").get<int>();
    const int q = meta.at("q").get<int>();
    const int m = meta.at("m").get<int>();
    if (mem.w.rows() != p || mem.w.cols() != q || mem.keys.rows() != m ||
        mem.keys.cols() != q || mem.values.rows() != m || mem.values.cols() != p) {
        throw IoError("memory files in " + dir.string() +
                      " disagree with meta.json");
    }
    return mem;
}

}  // namespace seqedit
