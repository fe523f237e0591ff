#include "seqedit/editor.hpp"

#include <Eigen/Cholesky>

#include "seqedit/linalg.hpp"
#include "seqedit/metrics.hpp"
#include "seqedit/rng.hpp"

namespace seqedit {

Matrix rank_one_edit(const Matrix& w_current, const EditRequest& req) {
    if (req.key.size() != w_current.cols() ||
        req.new_value.size() != w_current.rows()) {
        throw DimensionError("rank_one_edit: request does not match matrix");
    }
    const double kk = req.key.squaredNorm();
    if (kk == 0.0) {
        throw DomainError("rank_one_edit: zero edit key");
    }
    const Vector residual = req.new_value - w_current * req.key;
    return residual * (req.key.transpose() / kk);
}

Matrix covariance_weighted_edit(const Matrix& w_current,
                                const EditRequest& req,
                                const Matrix& key_covariance, double ridge) {
    if (req.key.size() != w_current.cols() ||
        req.new_value.size() != w_current.rows()) {
        throw DimensionError(
            "covariance_weighted_edit: request does not match matrix");
    }
    if (key_covariance.rows() != w_current.cols() ||
        key_covariance.cols() != w_current.cols()) {
        throw DimensionError("covariance_weighted_edit: covariance is not q-by-q");
    }
    if (!(ridge > 0.0)) {
        throw DomainError("covariance_weighted_edit: ridge must be positive");
    }
    if (req.key.squaredNorm() == 0.0) {
        throw DomainError("covariance_weighted_edit: zero edit key");
    }

    Matrix c = key_covariance;
    c.diagonal().array() += ridge;
    Eigen::LDLT<Matrix> ldlt(c);
    if (ldlt.info() != Eigen::Success) {
        throw SingularityError(
            "covariance_weighted_edit: ridged covariance not factorizable", 0.0);
    }
    const Vector weighted_key = ldlt.solve(req.key);
    const double denom = req.key.dot(weighted_key);
    if (!(denom > 0.0) || !std::isfinite(denom)) {
        throw SingularityError(
            "covariance_weighted_edit: covariance numerically singular", denom);
    }
    const Vector residual = req.new_value - w_current * req.key;
    return residual * (weighted_key.transpose() / denom);
}

Matrix key_covariance(const AssociativeMemory& mem) {
    return mem.keys.transpose() * mem.keys / static_cast<double>(mem.m());
}

DiagnosticsRecord compute_diagnostics(int edit_index, const Matrix& w_current,
                                      const Matrix& update_sum,
                                      const AssociativeMemory& mem,
                                      const std::vector<EditRequest>& edits,
                                      int edits_applied,
                                      const SequentialEditOptions& options) {
    DiagnosticsRecord rec;
    rec.edit_index = edit_index;

    const SvdFactorization f = svd(w_current);
    rec.sigma_max_w = f.sigma_max();
    rec.sigma_min_w = f.sigma_min();
    if (rec.sigma_min_w <= 0.0) {
        throw SingularityError("sequential_edit: edited matrix lost full rank",
                               rec.sigma_min_w);
    }
    rec.cond = rec.sigma_max_w / rec.sigma_min_w;
    rec.sigma_max_sum = spectral_norm(update_sum);

    const std::vector<EditRequest> applied(edits.begin(),
                                           edits.begin() + edits_applied);
    std::vector<Vector> edited_keys;
    edited_keys.reserve(applied.size());
    for (const auto& e : applied) edited_keys.push_back(e.key);

    // An empty edit set recalls everything it was asked to, vacuously.
    rec.efficacy = applied.empty()
                       ? 1.0
                       : efficacy(w_current, applied, options.metric_tol);
    rec.generalization =
        applied.empty()
            ? 1.0
            : generalization(w_current, applied, options.gen_noise,
                             options.gen_samples, options.metric_tol,
                             options.seed);
    rec.locality = locality(w_current, mem, edited_keys, options.metric_tol);

    const std::vector<double> errors = recall_error(mem, w_current);
    double sum = 0.0;
    for (double e : errors) sum += e;
    rec.mean_recall_err = sum / static_cast<double>(errors.size());
    return rec;
}

EditTrace sequential_edit(const AssociativeMemory& mem,
                          const std::vector<EditRequest>& edits,
                          const SequentialEditOptions& options) {
    if (edits.empty()) {
        throw DomainError("sequential_edit: edit sequence is empty");
    }
    if (options.checkpoint_every < 1) {
        throw DomainError("sequential_edit: checkpoint_every must be >= 1");
    }
    if (options.restraint) options.restraint->validate();

    const int n = static_cast<int>(edits.size());
    const double sigma_threshold = spectral_norm(mem.w);

    EditTrace trace;
    trace.base = mem;
    trace.edits = edits;
    trace.update_sum = Matrix::Zero(mem.p(), mem.q());

    Matrix w_current = mem.w;
    // Restraint operates on what accumulated since the previous firing.
    Matrix restraint_baseline = mem.w;
    Matrix accum = Matrix::Zero(mem.p(), mem.q());

    std::optional<Matrix> cov;
    if (options.rule == EditRule::kCovariance) cov = key_covariance(mem);

    trace.checkpoints.push_back(compute_diagnostics(
        0, w_current, trace.update_sum, mem, edits, 0, options));

    for (int j = 1; j <= n; ++j) {
        const EditRequest& req = edits[static_cast<std::size_t>(j - 1)];
        const Matrix dw =
            options.rule == EditRule::kRankOne
                ? rank_one_edit(w_current, req)
                : covariance_weighted_edit(w_current, req, *cov, options.ridge);
        w_current += dw;
        trace.update_sum += dw;
        accum += dw;

        const bool restrain_now =
            options.restraint &&
            (options.restraint->schedule == RestraintSchedule::kOnceAtEnd
                 ? j == n
                 : j % options.restraint->every_k == 0);
        if (restrain_now) {
            trace.pre_restraint_sum = trace.update_sum;
            auto [restrained_w, report] = restrain_update_sum(
                restraint_baseline, accum, *options.restraint, sigma_threshold);
            trace.restraints.push_back(RestraintEvent{
                static_cast<int>(trace.restraints.size()) + 1, j, report});
            trace.update_sum += restrained_w - w_current;
            w_current = std::move(restrained_w);
            restraint_baseline = w_current;
            accum.setZero();
        }

        if (j % options.checkpoint_every == 0 || j == n) {
            trace.checkpoints.push_back(compute_diagnostics(
                j, w_current, trace.update_sum, mem, edits, j, options));
        }
    }
    return trace;
}

std::vector<EditRequest> generate_edit_stream(const AssociativeMemory& mem,
                                              int num_edits,
                                              std::uint64_t seed) {
    if (num_edits < 1) {
        throw DomainError("generate_edit_stream: need at least one edit");
    }
    GaussianStream rng(derive_seed(seed, {stream_tag::edits}));
    std::vector<EditRequest> edits;
    edits.reserve(static_cast<std::size_t>(num_edits));
    for (int j = 0; j < num_edits; ++j) {
        EditRequest req;
        if (j % 2 == 0) {
            const int idx = static_cast<int>(rng.uniform_int(
                0, static_cast<std::uint64_t>(mem.m()) - 1));
            Vector k = mem.key(idx) + 0.1 * rng.normal_vector(mem.q());
            req.key = k / k.norm();
        } else {
            req.key = rng.unit_vector(mem.q());
        }
        req.new_value = rng.unit_vector(mem.p());
        edits.push_back(std::move(req));
    }
    return edits;
}

}  // namespace seqedit
