#include "sindex/effect_size.hpp"

#include <cmath>
#include <stdexcept>

#include "sindex/errors.hpp"

namespace sindex {

EffectSizeEstimate estimate_effect_size(double t_squared, long n, int m, int m1) {
    if (!(m1 >= 1 && m >= m1)) {
        throw std::invalid_argument("estimate_effect_size: require m >= m1 >= 1");
    }
    if (n <= m) {
        throw std::invalid_argument("estimate_effect_size: require n > m");
    }
    if (!std::isfinite(t_squared) || t_squared < 0.0) {
        throw std::domain_error("estimate_effect_size: T^2 must be non-negative");
    }
    EffectSizeEstimate est;
    est.t_squared = t_squared;
    est.n = n;
    est.m = m;
    est.m1 = m1;
    est.s_sq_untruncated = (t_squared - m) / static_cast<double>(n - m);
    est.truncated = t_squared < static_cast<double>(m);
    est.s_hat = std::sqrt(std::max(0.0, est.s_sq_untruncated));
    return est;
}

double closed_form_two_means(double mu1, double mu0, double var1, double var0,
                             double pi1) {
    if (!(var1 > 0.0 && var0 > 0.0)) {
        throw std::domain_error("closed_form_two_means: variances must be positive");
    }
    if (!(pi1 > 0.0 && pi1 < 1.0)) {
        throw std::domain_error("closed_form_two_means: pi1 must be in (0,1)");
    }
    double diff = mu1 - mu0;
    return std::sqrt(diff * diff / (var1 / pi1 + var0 / (1.0 - pi1)));
}

double closed_form_slr(double beta, double sigma_x_sq, double sigma_xy_sq) {
    if (!(sigma_x_sq > 0.0 && sigma_xy_sq > 0.0)) {
        throw std::domain_error("closed_form_slr: variance inputs must be positive");
    }
    return std::sqrt(sigma_x_sq * sigma_x_sq * beta * beta / sigma_xy_sq);
}

double logistic_model_based_s(const Eigen::VectorXd& beta,
                              const Eigen::MatrixXd& i_beta) {
    if (i_beta.rows() != beta.size() || i_beta.cols() != beta.size()) {
        throw std::invalid_argument("logistic_model_based_s: dimension mismatch");
    }
    Eigen::MatrixXd sym = 0.5 * (i_beta + i_beta.transpose());
    Eigen::LLT<Eigen::MatrixXd> llt(sym);
    if (llt.info() != Eigen::Success) {
        throw singular_error("logistic_model_based_s: i_beta is not positive definite");
    }
    return std::sqrt(std::max(0.0, beta.dot(sym * beta)));
}

}  // namespace sindex
