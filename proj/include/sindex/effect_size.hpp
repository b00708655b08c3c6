#pragma once

#include <Eigen/Dense>

namespace sindex {

struct EffectSizeEstimate {
    double s_hat = 0.0;              // {max[0, (T^2 - m)/(n - m)]}^(1/2)
    double s_sq_untruncated = 0.0;   // (T^2 - m)/(n - m), may be negative
    double t_squared = 0.0;
    long n = 0;
    int m = 0;
    int m1 = 0;
    bool truncated = false;          // T^2 < m
};

EffectSizeEstimate estimate_effect_size(double t_squared, long n, int m, int m1);

// Population index for the two-group difference of means:
// sqrt((mu1-mu0)^2 / (pi1^-1 var1 + pi0^-1 var0))
double closed_form_two_means(double mu1, double mu0, double var1, double var0,
                             double pi1);

// Population index for simple linear regression:
// sqrt(sigma_x^4 beta^2 / sigma_xy_sq); under homoskedasticity
// sigma_xy_sq = sigma_x_sq * sigma_sq.
double closed_form_slr(double beta, double sigma_x_sq, double sigma_xy_sq);

// Correctly-specified logistic index sqrt(beta' I_beta beta).
double logistic_model_based_s(const Eigen::VectorXd& beta,
                              const Eigen::MatrixXd& i_beta);

}  // namespace sindex
