#pragma once

#include "seqedit/matrix.hpp"

namespace seqedit {

// Singular values at or below rank_tol * sigma_max count as zero.
inline constexpr double kDefaultRankTol = 1e-12;

// Full factorization A = U diag(s) V^T with U p-by-p and V q-by-q.
// Signs are canonical: the first nonzero entry of each left singular
// vector is non-negative (paired right vector flipped along with it).
struct SvdFactorization {
    Matrix u;
    Vector singular_values;  // descending, length min(p, q)
    Matrix v;

    double sigma_max() const { return singular_values(0); }
    double sigma_min() const {
        return singular_values(singular_values.size() - 1);
    }
};

SvdFactorization svd(const Matrix& a);

// Count of singular values above rank_tol * sigma_max.
int numerical_rank(const SvdFactorization& f, double rank_tol = kDefaultRankTol);

// Moore-Penrose inverse, cols-by-rows.
Matrix pseudo_inverse(const Matrix& a, double rank_tol = kDefaultRankTol);

// Largest singular value; 0 for the zero matrix.
double spectral_norm(const Matrix& a);

// sigma_max / sigma_min over the min(p, q) singular values.
// Throws SingularityError when sigma_min <= rank_tol * sigma_max.
double condition_number(const Matrix& a, double rank_tol = kDefaultRankTol);

// Minimum-norm least-squares solution A^+ b.
Vector min_norm_solve(const Matrix& a, const Vector& b);

// x / sqrt(1 + x^2); strictly increasing on [0, inf), range [0, 1).
double psi2(double norm_f);

}  // namespace seqedit
