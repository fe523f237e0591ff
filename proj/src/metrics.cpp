#include "seqedit/metrics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

#include "seqedit/linalg.hpp"
#include "seqedit/rng.hpp"

namespace seqedit {

double efficacy(const Matrix& w_final, const std::vector<EditRequest>& edits,
                double tol) {
    if (edits.empty()) {
        throw UndefinedMetricError("efficacy: no edits to score");
    }
    if (!(tol > 0.0)) {
        throw DomainError("efficacy: tol must be positive");
    }
    int hits = 0;
    for (const auto& e : edits) {
        const double err =
            (w_final * e.key - e.new_value).norm() / e.new_value.norm();
        if (err <= tol) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(edits.size());
}

double generalization(const Matrix& w_final,
                      const std::vector<EditRequest>& edits, double noise,
                      int samples, double tol, std::uint64_t seed) {
    if (edits.empty()) {
        throw UndefinedMetricError("generalization: no edits to score");
    }
    if (noise < 0.0 || samples < 1) {
        throw DomainError("generalization: need noise >= 0 and samples >= 1");
    }
    if (noise == 0.0) {
        return efficacy(w_final, edits, tol);
    }
    long hits = 0;
    for (std::size_t j = 0; j < edits.size(); ++j) {
        const auto& e = edits[j];
        for (int s = 0; s < samples; ++s) {
            GaussianStream rng(derive_seed(
                seed, {stream_tag::gen_noise, static_cast<std::uint64_t>(j),
                       static_cast<std::uint64_t>(s)}));
            Vector k = e.key + noise * rng.normal_vector(
                                           static_cast<int>(e.key.size()));
            k /= k.norm();
            const double err =
                (w_final * k - e.new_value).norm() / e.new_value.norm();
            if (err <= tol) ++hits;
        }
    }
    return static_cast<double>(hits) /
           static_cast<double>(edits.size() * static_cast<std::size_t>(samples));
}

double locality(const Matrix& w_final, const AssociativeMemory& mem,
                const std::vector<Vector>& edited_keys, double tol) {
    if (!(tol > 0.0)) {
        throw DomainError("locality: tol must be positive");
    }
    int scored = 0;
    int hits = 0;
    for (int i = 0; i < mem.m(); ++i) {
        const Vector k = mem.key(i);
        const bool was_edited =
            std::any_of(edited_keys.begin(), edited_keys.end(),
                        [&](const Vector& ek) {
                            return ek.size() == k.size() &&
                                   (ek - k).norm() <= 1e-12;
                        });
        if (was_edited) continue;
        ++scored;
        const double err = (w_final * k - mem.value(i)).norm() /
                           mem.value(i).norm();
        if (err <= tol) ++hits;
    }
    if (scored == 0) {
        throw UndefinedMetricError("locality: every stored pair was edited");
    }
    return static_cast<double>(hits) / static_cast<double>(scored);
}

UpdateSpectrum update_sum_spectrum(const Matrix& dw_sum) {
    UpdateSpectrum spectrum;
    spectrum.all_sigmas = svd(dw_sum).singular_values;
    spectrum.sigma_max = spectrum.all_sigmas(0);
    return spectrum;
}

Pca2d pca_project_2d(const std::vector<Vector>& vectors) {
    if (vectors.size() < 2) {
        throw DomainError("pca_project_2d: need at least two vectors");
    }
    const long p = vectors.front().size();
    if (p < 2) {
        throw DimensionError("pca_project_2d: vectors must have dimension >= 2");
    }
    for (const auto& v : vectors) {
        if (v.size() != p) {
            throw DimensionError("pca_project_2d: mixed vector lengths");
        }
    }

    const long n = static_cast<long>(vectors.size());
    Vector mean = Vector::Zero(p);
    for (const auto& v : vectors) mean += v;
    mean /= static_cast<double>(n);

    Matrix centered(n, p);
    for (long i = 0; i < n; ++i) {
        centered.row(i) = (vectors[static_cast<std::size_t>(i)] - mean).transpose();
    }
    const Matrix cov =
        centered.transpose() * centered / static_cast<double>(n - 1);

    Pca2d result;
    result.basis = Matrix::Zero(2, p);

    if (cov.cwiseAbs().maxCoeff() == 0.0) {
        // All vectors identical: defined degenerate output.
        result.basis(0, 0) = 1.0;
        result.basis(1, 1) = 1.0;
        result.coords.assign(vectors.size(), Eigen::Vector2d::Zero());
        return result;
    }

    Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
    if (eig.info() != Eigen::Success) {
        throw ConvergenceError("pca_project_2d: eigen-decomposition failed");
    }
    // Eigen returns ascending eigenvalues; take the top two.
    for (int c = 0; c < 2; ++c) {
        Vector axis = eig.eigenvectors().col(p - 1 - c);
        for (long i = 0; i < p; ++i) {
            if (axis(i) != 0.0) {
                if (axis(i) < 0.0) axis = -axis;
                break;
            }
        }
        result.basis.row(c) = axis.transpose();
        result.explained_variance[static_cast<std::size_t>(c)] =
            std::max(eig.eigenvalues()(p - 1 - c), 0.0);
    }

    result.coords.reserve(vectors.size());
    for (const auto& v : vectors) {
        result.coords.push_back(result.basis * (v - mean));
    }
    return result;
}

ValueDriftReport value_drift(const EditTrace& trace,
                             const std::optional<Matrix>& restrained_w,
                             int first_m) {
    if (first_m < 1 ||
        first_m > static_cast<int>(trace.edits.size())) {
        throw DomainError("value_drift: first_m out of range");
    }

    // For restrained traces the final matrix already carries the restraint;
    // the pre-restraint snapshot supplies the unrestrained comparison.
    const Matrix editing_w = trace.pre_restraint_sum
                                 ? trace.base.w + *trace.pre_restraint_sum
                                 : trace.final_w();
    std::optional<Matrix> prune_w = restrained_w;
    if (!prune_w && trace.pre_restraint_sum) {
        prune_w = trace.final_w();
    }

    std::vector<Vector> pooled;
    pooled.reserve(static_cast<std::size_t>(first_m) * (prune_w ? 3 : 2));
    for (int j = 0; j < first_m; ++j) {
        pooled.push_back(trace.edits[static_cast<std::size_t>(j)].new_value);
    }
    for (int j = 0; j < first_m; ++j) {
        pooled.push_back(editing_w * trace.edits[static_cast<std::size_t>(j)].key);
    }
    if (prune_w) {
        for (int j = 0; j < first_m; ++j) {
            pooled.push_back(*prune_w * trace.edits[static_cast<std::size_t>(j)].key);
        }
    }

    const Pca2d pca = pca_project_2d(pooled);

    ValueDriftReport report;
    const std::size_t m = static_cast<std::size_t>(first_m);
    report.current.assign(pca.coords.begin(), pca.coords.begin() + m);
    report.editing.assign(pca.coords.begin() + m, pca.coords.begin() + 2 * m);
    if (prune_w) {
        report.prune.assign(pca.coords.begin() + 2 * m,
                            pca.coords.begin() + 3 * m);
    }

    auto mean_distance = [&](const std::vector<Eigen::Vector2d>& label) {
        double total = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            total += (label[j] - report.current[j]).norm();
        }
        return total / static_cast<double>(m);
    };
    report.discrepancy_current = 0.0;
    report.discrepancy_editing = mean_distance(report.editing);
    if (prune_w) {
        report.discrepancy_prune = mean_distance(report.prune);
    }
    return report;
}

}  // namespace seqedit
