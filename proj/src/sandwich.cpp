#include "sindex/sandwich.hpp"

#include <stdexcept>

#include "sindex/errors.hpp"

namespace sindex {

namespace {

constexpr double kRcondTol = 1e-12;

void check_spd(const Eigen::MatrixXd& a, const char* what) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    const auto& ev = es.eigenvalues();
    double emax = ev(ev.size() - 1);
    if (emax <= 0.0 || ev(0) / emax < kRcondTol) {
        throw singular_error(std::string(what) + " is singular or not positive definite");
    }
}

}  // namespace

SandwichCovariance sandwich_covariance(const FittedModel& model) {
    const int m = model.m();
    const double n = static_cast<double>(model.n);

    SandwichCovariance cov;
    cov.J_hat = 0.5 * (model.hessian_contrib + model.hessian_contrib.transpose());
    cov.K_hat = model.score_contrib.transpose() * model.score_contrib / n;
    cov.K_hat = 0.5 * (cov.K_hat + cov.K_hat.transpose()).eval();

    check_spd(cov.J_hat, "sandwich_covariance: J_hat");
    Eigen::LDLT<Eigen::MatrixXd> ldlt(cov.J_hat);
    Eigen::MatrixXd jinv_k = ldlt.solve(cov.K_hat);
    cov.sigma_theta = ldlt.solve(jinv_k.transpose()).transpose();
    cov.sigma_theta = 0.5 * (cov.sigma_theta + cov.sigma_theta.transpose()).eval();

    cov.sigma_beta = cov.sigma_theta.bottomRightCorner(model.m1, model.m1);
    Eigen::MatrixXd j_inv = ldlt.solve(Eigen::MatrixXd::Identity(m, m));
    cov.model_based_beta_cov = j_inv.bottomRightCorner(model.m1, model.m1);

    check_spd(cov.sigma_beta, "sandwich_covariance: sigma_beta");
    return cov;
}

WaldResult wald_statistic(const FittedModel& model, const SandwichCovariance& cov,
                          const Eigen::VectorXd& beta0) {
    if (beta0.size() != model.m1) {
        throw std::invalid_argument("wald_statistic: beta0 length must equal m1");
    }
    check_spd(cov.sigma_beta, "wald_statistic: sigma_beta");
    Eigen::VectorXd diff = model.beta_hat() - beta0;
    WaldResult result;
    result.t_squared =
        static_cast<double>(model.n) * diff.dot(cov.sigma_beta.ldlt().solve(diff));
    if (result.t_squared < 0.0) result.t_squared = 0.0;
    result.df = model.m1;
    result.beta0 = beta0;
    return result;
}

}  // namespace sindex
