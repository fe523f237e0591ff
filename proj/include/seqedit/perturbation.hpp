#pragma once

#include "seqedit/linalg.hpp"
#include "seqedit/matrix.hpp"

namespace seqedit {

// Block structure of (W, dW) after rotating with the singular vectors of W:
// U^T W V = [[A11, 0], [0, 0]] with A11 = diag of the r leading singular
// values, and U^T dW V partitioned into the four E blocks of matching shape.
// Blocks with a zero dimension are kept as empty matrices whose spectral
// norm is defined as 0.
struct ReducedForm {
    Matrix a11;  // r-by-r diagonal
    Matrix e11, e12, e21, e22;
    Matrix u1, u2, v1, v2;
    int rank_r = 0;
    double w_norm = 0.0;      // sigma_max of W
    double w_sigma_min = 0.0; // smallest of the r retained singular values
};

ReducedForm reduced_form(const Matrix& w, const Matrix& dw,
                         double rank_tol = kDefaultRankTol);

// Acuteness test: E22 == E21 (A11+E11)^{-1} E12 up to tol * max(||W||, 1).
// A numerically singular A11+E11 yields a not-acute result with the
// diagnostic flag set instead of an exception.
struct AcutenessCheck {
    bool acute = false;
    double residual = 0.0;
    bool a11_tilde_singular = false;
    explicit operator bool() const { return acute; }
};

inline constexpr double kDefaultAcuteTol = 1e-8;

AcutenessCheck check_acute(const ReducedForm& rf, double tol = kDefaultAcuteTol);

// ||W|| * ||(A11+E11)^{-1}||. Throws SingularityError when A11+E11 is
// numerically singular.
double kappa_hat(const ReducedForm& rf, double w_norm);

// gamma = 1 - cond(W) ||E11|| / ||W||; bound = ||W^+|| / gamma.
// Throws BoundInapplicableError carrying gamma when gamma <= 0.
struct GammaBound {
    double gamma = 0.0;
    double bound = 0.0;
};

GammaBound kappa_hat_bound(const Matrix& w, const Matrix& dw);

// Everything the key-drift bound produces. rhs_total = term1+term2+term3:
//   term1 = kappa_hat ||E11|| / ||W||
//   term2 = psi2(kappa_hat ||E12|| / ||W||)
//   term3 = kappa_hat^2 (||E12||/||W||) (eta^{-1} ||b2||/||b1|| + ||E21||/||W||)
// with b = U^T v split at rank r and eta = ||W|| ||W^+ v|| / ||v||.
struct PerturbationBound {
    double kappa_hat = 0.0;
    double gamma = 0.0;
    double eta = 0.0;
    double e11_norm = 0.0;
    double e12_norm = 0.0;
    double e21_norm = 0.0;
    double term1 = 0.0;
    double term2 = 0.0;
    double term3 = 0.0;
    double rhs_total = 0.0;
    double b1_norm = 0.0;
    double b2_norm = 0.0;
};

PerturbationBound key_drift_bound(const Matrix& w, const Matrix& dw,
                                  const Vector& v,
                                  double acute_tol = kDefaultAcuteTol);

// ||W^+ v - (W+dW)^+ v|| / ||W^+ v||, both solves via the pseudo-inverse.
double actual_key_drift(const Matrix& w, const Matrix& dw, const Vector& v);

}  // namespace seqedit
