#pragma once

#include <utility>

#include "seqedit/matrix.hpp"

namespace seqedit {

// Restraint function family applied to singular values of the update sum
// that exceed the largest singular value of the original matrix.
enum class RestraintFunction { kLog, kLinear };

enum class RestraintSchedule { kOnceAtEnd, kEveryK };

struct RestraintConfig {
    RestraintFunction function = RestraintFunction::kLog;
    double alpha = 2.718281828459045;  // log base, > 1
    double beta = 2.0;                 // linear slope divisor, > 1
    RestraintSchedule schedule = RestraintSchedule::kOnceAtEnd;
    int every_k = 1;

    void validate() const;
};

struct RestraintReport {
    int restrained_count = 0;
    double sigma_max_before = 0.0;
    double sigma_max_after = 0.0;
    double cond_before = 0.0;
    double cond_after = 0.0;
};

// Identity below the threshold; above it,
//   log:    log_alpha(sigma_hat) - log_alpha(sigma_max_w) + sigma_max_w
//   linear: sigma_hat / beta + (beta - 1) / beta * sigma_max_w
// Continuous at the threshold and strictly increasing on [0, inf).
double restraint_f(double sigma_hat, double sigma_max_w,
                   const RestraintConfig& cfg);

// Maps every singular value of dw_sum through restraint_f against the
// threshold sigma_max(w), rebuilds the sum with the original singular
// vectors, and returns w + restrained sum together with the report.
std::pair<Matrix, RestraintReport> restrain_update_sum(
    const Matrix& w, const Matrix& dw_sum, const RestraintConfig& cfg);

// Same, but with an explicit threshold. Multi-shot schedules keep the
// threshold pinned to the original unedited matrix across all firings.
std::pair<Matrix, RestraintReport> restrain_update_sum(
    const Matrix& w, const Matrix& dw_sum, const RestraintConfig& cfg,
    double sigma_threshold);

}  // namespace seqedit
