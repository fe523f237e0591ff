#include "seqedit/prune.hpp"

#include <cmath>

#include "seqedit/linalg.hpp"

namespace seqedit {

void RestraintConfig::validate() const {
    if (function == RestraintFunction::kLog && !(alpha > 1.0)) {
        throw DomainError("restraint: alpha must exceed 1");
    }
    if (function == RestraintFunction::kLinear && !(beta > 1.0)) {
        throw DomainError("restraint: beta must exceed 1");
    }
    if (schedule == RestraintSchedule::kEveryK && every_k < 1) {
        throw DomainError("restraint: every_k must be at least 1");
    }
}

double restraint_f(double sigma_hat, double sigma_max_w,
                   const RestraintConfig& cfg) {
    if (!(sigma_max_w > 0.0)) {
        throw DomainError("restraint_f: threshold must be positive");
    }
    if (sigma_hat < 0.0) {
        throw DomainError("restraint_f: singular values are non-negative");
    }
    cfg.validate();
    if (sigma_hat <= sigma_max_w) {
        return sigma_hat;
    }
    if (cfg.function == RestraintFunction::kLog) {
        return std::log(sigma_hat / sigma_max_w) / std::log(cfg.alpha) +
               sigma_max_w;
    }
    return sigma_hat / cfg.beta + (cfg.beta - 1.0) / cfg.beta * sigma_max_w;
}

std::pair<Matrix, RestraintReport> restrain_update_sum(
    const Matrix& w, const Matrix& dw_sum, const RestraintConfig& cfg) {
    const double threshold = spectral_norm(w);
    if (!(threshold > 0.0)) {
        throw DomainError("restrain_update_sum: zero W leaves the threshold undefined");
    }
    return restrain_update_sum(w, dw_sum, cfg, threshold);
}

std::pair<Matrix, RestraintReport> restrain_update_sum(
    const Matrix& w, const Matrix& dw_sum, const RestraintConfig& cfg,
    double sigma_threshold) {
    if (w.rows() != dw_sum.rows() || w.cols() != dw_sum.cols()) {
        throw DimensionError("restrain_update_sum: shapes differ");
    }
    if (!(sigma_threshold > 0.0)) {
        throw DomainError("restrain_update_sum: threshold must be positive");
    }
    cfg.validate();

    const SvdFactorization f = svd(dw_sum);
    const long k = f.singular_values.size();

    RestraintReport report;
    report.sigma_max_before = f.sigma_max();

    Matrix restrained_sum = Matrix::Zero(w.rows(), w.cols());
    for (long i = 0; i < k; ++i) {
        const double sigma = f.singular_values(i);
        const double mapped = restraint_f(sigma, sigma_threshold, cfg);
        if (sigma > sigma_threshold) ++report.restrained_count;
        if (mapped != 0.0) {
            restrained_sum.noalias() +=
                mapped * f.u.col(i) * f.v.col(i).transpose();
        }
    }
    report.sigma_max_after = restraint_f(report.sigma_max_before,
                                         sigma_threshold, cfg);

    Matrix restrained_w = w + restrained_sum;
    report.cond_before = condition_number(w + dw_sum);
    report.cond_after = condition_number(restrained_w);
    return {std::move(restrained_w), report};
}

}  // namespace seqedit
