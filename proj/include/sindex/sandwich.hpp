#pragma once

#include <Eigen/Dense>

#include "sindex/models.hpp"

namespace sindex {

// Robust covariance pieces for a fitted model. Conventions: psi is
// per-observation, J and K are means over observations, and the Wald
// statistic carries the explicit factor n, so Var(theta_hat) ~ sigma_theta/n.
struct SandwichCovariance {
    Eigen::MatrixXd J_hat;        // mean negative Hessian ("bread")
    Eigen::MatrixXd K_hat;        // mean outer product of scores ("meat")
    Eigen::MatrixXd sigma_theta;  // J^-1 K J^-1
    Eigen::MatrixXd sigma_beta;   // target block of sigma_theta
    // Target block of J_hat^-1; the model-based covariance for logistic
    // (the I_beta^-1 comparison). For linear it lacks the residual-variance
    // factor, which the caller supplies when comparing.
    Eigen::MatrixXd model_based_beta_cov;
};

SandwichCovariance sandwich_covariance(const FittedModel& model);

struct WaldResult {
    double t_squared = 0.0;
    int df = 0;
    Eigen::VectorXd beta0;
};

// T^2 = n (beta_hat - beta0)' sigma_beta^-1 (beta_hat - beta0)
WaldResult wald_statistic(const FittedModel& model, const SandwichCovariance& cov,
                          const Eigen::VectorXd& beta0);

}  // namespace sindex
