#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace sindex {

enum class Family { two_means, linear, logistic };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

struct Dataset {
    Eigen::VectorXd y;
    Eigen::MatrixXd x_nuisance;  // n x m0 (may have 0 columns)
    Eigen::MatrixXd x_target;    // n x m1
    std::vector<std::string> nuisance_names;
    std::vector<std::string> target_names;

    void validate() const;
    long n() const { return y.size(); }
};

// M-estimator fit with per-observation score contributions and the mean
// negative Hessian. theta_hat is ordered (alpha, beta): nuisance block
// first (intercept included for linear/logistic), target block last.
struct FittedModel {
    Family family;
    Eigen::VectorXd theta_hat;
    Eigen::MatrixXd score_contrib;    // n x m, row i = psi'(theta_hat; W_i)
    Eigen::MatrixXd hessian_contrib;  // m x m, mean of -d2 psi
    long n = 0;
    int m0 = 0;  // nuisance dimension (intercept counted here)
    int m1 = 0;  // target dimension
    double pi1 = 0.0;  // two-means only
    double pi0 = 0.0;

    int m() const { return m0 + m1; }
    Eigen::VectorXd beta_hat() const { return theta_hat.tail(m1); }
};

// Difference-of-means estimand. x_target must be a single {0,1} column and
// x_nuisance empty. With pi estimated the estimate is exactly the difference
// of group means; score contributions are group-centered so K estimates
// n^-1 sum pi_x^-2 Var(Y|X).
FittedModel fit_two_means(const Dataset& data,
                          std::optional<double> pi1_known = std::nullopt);

// Least squares on [1 | x_nuisance | x_target]; intercept counted in m0.
// Pass intercept = false to fit through the origin (m0 = nuisance columns).
FittedModel fit_linear(const Dataset& data, bool intercept = true);

// Bernoulli MLE via damped Newton; errors on separation or non-convergence.
FittedModel fit_logistic(const Dataset& data);

FittedModel fit_model(Family family, const Dataset& data,
                      std::optional<double> pi1_known = std::nullopt);

}  // namespace sindex
