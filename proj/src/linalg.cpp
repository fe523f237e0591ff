#include "seqedit/linalg.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace seqedit {

namespace {

// Flip the sign of column j in m; no-op when the column's first nonzero
// entry is already non-negative. Returns whether a flip happened.
bool canonical_sign_flip(Matrix& m, long j) {
    for (long i = 0; i < m.rows(); ++i) {
        const double x = m(i, j);
        if (x != 0.0) {
            if (x < 0.0) {
                m.col(j) = -m.col(j);
                return true;
            }
            return false;
        }
    }
    return false;
}

}  // namespace

SvdFactorization svd(const Matrix& a) {
    require_nonempty(a, "svd");
    require_finite(a, "svd");

    Eigen::JacobiSVD<Matrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("svd: Jacobi iteration failed to converge");
    }

    SvdFactorization f;
    f.u = solver.matrixU();
    f.v = solver.matrixV();
    f.singular_values = solver.singularValues();

    const long k = f.singular_values.size();
    // Paired columns share one sign choice; null-space columns get their own.
    for (long j = 0; j < k; ++j) {
        if (canonical_sign_flip(f.u, j)) {
            f.v.col(j) = -f.v.col(j);
        }
    }
    for (long j = k; j < f.u.cols(); ++j) canonical_sign_flip(f.u, j);
    for (long j = k; j < f.v.cols(); ++j) canonical_sign_flip(f.v, j);
    return f;
}

int numerical_rank(const SvdFactorization& f, double rank_tol) {
    const double cutoff = rank_tol * f.sigma_max();
    int r = 0;
    for (long i = 0; i < f.singular_values.size(); ++i) {
        if (f.singular_values(i) > cutoff && f.singular_values(i) > 0.0) ++r;
    }
    return r;
}

Matrix pseudo_inverse(const Matrix& a, double rank_tol) {
    if (rank_tol < 0.0) {
        throw DomainError("pseudo_inverse: rank_tol must be non-negative");
    }
    const SvdFactorization f = svd(a);
    const double cutoff = rank_tol * f.sigma_max();
    Matrix pinv = Matrix::Zero(a.cols(), a.rows());
    for (long i = 0; i < f.singular_values.size(); ++i) {
        const double s = f.singular_values(i);
        if (s > cutoff && s > 0.0) {
            pinv.noalias() += (1.0 / s) * f.v.col(i) * f.u.col(i).transpose();
        }
    }
    return pinv;
}

double spectral_norm(const Matrix& a) {
    require_nonempty(a, "spectral_norm");
    require_finite(a, "spectral_norm");
    Eigen::JacobiSVD<Matrix> solver(a);
    return solver.singularValues()(0);
}

double condition_number(const Matrix& a, double rank_tol) {
    const SvdFactorization f = svd(a);
    const double s_max = f.sigma_max();
    const double s_min = f.sigma_min();
    if (s_min <= rank_tol * s_max || s_min == 0.0) {
        throw SingularityError("condition_number: rank-deficient input", s_min);
    }
    return s_max / s_min;
}

Vector min_norm_solve(const Matrix& a, const Vector& b) {
    if (b.size() != a.rows()) {
        throw DimensionError("min_norm_solve: rhs length does not match rows");
    }
    return pseudo_inverse(a) * b;
}

double psi2(double norm_f) {
    if (norm_f < 0.0) {
        throw DomainError("psi2: norm must be non-negative");
    }
    // hypot keeps the ratio stable when norm_f^2 would overflow
    return norm_f == 0.0 ? 0.0 : norm_f / std::hypot(1.0, norm_f);
}

}  // namespace seqedit
