#include "seqedit/perturbation.hpp"

#include <algorithm>
#include <cmath>

namespace seqedit {

namespace {

double block_norm(const Matrix& block) {
    if (block.rows() == 0 || block.cols() == 0) return 0.0;
    return spectral_norm(block);
}

// Smallest singular value of a nonempty square block.
double smallest_singular_value(const Matrix& square) {
    Eigen::JacobiSVD<Matrix> solver(square);
    const auto& s = solver.singularValues();
    return s(s.size() - 1);
}

}  // namespace

ReducedForm reduced_form(const Matrix& w, const Matrix& dw, double rank_tol) {
    require_nonempty(w, "reduced_form");
    if (dw.rows() != w.rows() || dw.cols() != w.cols()) {
        throw DimensionError("reduced_form: W and dW shapes differ");
    }
    require_finite(dw, "reduced_form dW");

    const SvdFactorization f = svd(w);
    const int r = numerical_rank(f, rank_tol);
    if (r == 0) {
        throw DomainError("reduced_form: W has numerical rank zero");
    }

    const long p = w.rows();
    const long q = w.cols();

    ReducedForm rf;
    rf.rank_r = r;
    rf.w_norm = f.sigma_max();
    rf.w_sigma_min = f.singular_values(r - 1);
    rf.u1 = f.u.leftCols(r);
    rf.u2 = f.u.rightCols(p - r);
    rf.v1 = f.v.leftCols(r);
    rf.v2 = f.v.rightCols(q - r);
    rf.a11 = f.singular_values.head(r).asDiagonal();

    rf.e11 = rf.u1.transpose() * dw * rf.v1;
    rf.e12 = rf.u1.transpose() * dw * rf.v2;
    rf.e21 = rf.u2.transpose() * dw * rf.v1;
    rf.e22 = rf.u2.transpose() * dw * rf.v2;
    return rf;
}

AcutenessCheck check_acute(const ReducedForm& rf, double tol) {
    AcutenessCheck result;
    const Matrix a11_tilde = rf.a11 + rf.e11;
    const double s_min = smallest_singular_value(a11_tilde);
    const double s_max = spectral_norm(a11_tilde);
    if (s_min <= kDefaultRankTol * s_max || s_min == 0.0) {
        result.a11_tilde_singular = true;
        return result;
    }
    if (rf.e22.rows() == 0 || rf.e22.cols() == 0) {
        result.acute = true;
        return result;
    }
    const Matrix residual =
        rf.e22 - rf.e21 * a11_tilde.inverse() * rf.e12;
    result.residual = block_norm(residual);
    result.acute = result.residual <= tol * std::max(rf.w_norm, 1.0);
    return result;
}

double kappa_hat(const ReducedForm& rf, double w_norm) {
    const Matrix a11_tilde = rf.a11 + rf.e11;
    const double s_min = smallest_singular_value(a11_tilde);
    const double s_max = spectral_norm(a11_tilde);
    if (s_min <= kDefaultRankTol * s_max || s_min == 0.0) {
        throw SingularityError("kappa_hat: A11 + E11 numerically singular",
                               s_min);
    }
    return w_norm / s_min;
}

GammaBound kappa_hat_bound(const Matrix& w, const Matrix& dw) {
    const ReducedForm rf = reduced_form(w, dw);
    // Generalized condition number sigma_1 / sigma_r; equals the plain one
    // for full-rank W.
    const double kappa = rf.w_norm / rf.w_sigma_min;
    const double gamma = 1.0 - kappa * block_norm(rf.e11) / rf.w_norm;
    if (gamma <= 0.0) {
        throw BoundInapplicableError(
            "kappa_hat_bound: gamma <= 0, pseudo-inverse bound inapplicable",
            gamma);
    }
    GammaBound gb;
    gb.gamma = gamma;
    gb.bound = (1.0 / rf.w_sigma_min) / gamma;
    return gb;
}

PerturbationBound key_drift_bound(const Matrix& w, const Matrix& dw,
                                  const Vector& v, double acute_tol) {
    if (v.size() != w.rows()) {
        throw DimensionError("key_drift_bound: v length does not match rows");
    }
    if (v.norm() == 0.0) {
        throw DomainError("key_drift_bound: v must be nonzero");
    }
    const ReducedForm rf = reduced_form(w, dw);
    const AcutenessCheck acute = check_acute(rf, acute_tol);
    if (!acute) {
        throw PreconditionError(
            "key_drift_bound: dW is not an acute perturbation of W");
    }

    PerturbationBound pb;
    pb.e11_norm = block_norm(rf.e11);
    pb.e12_norm = block_norm(rf.e12);
    pb.e21_norm = block_norm(rf.e21);
    pb.b1_norm = (rf.u1.transpose() * v).norm();
    pb.b2_norm = rf.u2.cols() > 0 ? (rf.u2.transpose() * v).norm() : 0.0;
    if (pb.b1_norm == 0.0) {
        throw DomainError("key_drift_bound: v orthogonal to range(W), b1 = 0");
    }

    const double w_norm = rf.w_norm;
    pb.kappa_hat = kappa_hat(rf, w_norm);
    const double kappa = rf.w_norm / rf.w_sigma_min;
    pb.gamma = 1.0 - kappa * pb.e11_norm / w_norm;

    // x = W^+ v has reduced coordinates (A11^{-1} b1, 0).
    const Vector b1 = rf.u1.transpose() * v;
    const Vector x1 = rf.a11.diagonal().cwiseInverse().asDiagonal() * b1;
    pb.eta = w_norm * x1.norm() / v.norm();

    pb.term1 = pb.kappa_hat * pb.e11_norm / w_norm;
    pb.term2 = psi2(pb.kappa_hat * pb.e12_norm / w_norm);
    pb.term3 = pb.kappa_hat * pb.kappa_hat * (pb.e12_norm / w_norm) *
               ((1.0 / pb.eta) * (pb.b2_norm / pb.b1_norm) +
                pb.e21_norm / w_norm);
    pb.rhs_total = pb.term1 + pb.term2 + pb.term3;
    return pb;
}

double actual_key_drift(const Matrix& w, const Matrix& dw, const Vector& v) {
    if (v.size() != w.rows()) {
        throw DimensionError("actual_key_drift: v length does not match rows");
    }
    if (v.norm() == 0.0) {
        throw DomainError("actual_key_drift: v must be nonzero");
    }
    const Vector k = min_norm_solve(w, v);
    const double k_norm = k.norm();
    if (k_norm == 0.0) {
        throw DomainError("actual_key_drift: W^+ v is zero, drift undefined");
    }
    const Vector k_tilde = min_norm_solve(w + dw, v);
    return (k - k_tilde).norm() / k_norm;
}

}  // namespace seqedit
