#pragma once

namespace sindex {

struct ChiSqParams {
    double df;      // degrees of freedom, > 0
    double lambda;  // noncentrality, >= 0

    void validate() const;
};

// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);

// Central chi-squared CDF/quantile (df any positive real).
double chisq_cdf(double x, double df);
double chisq_quantile(double p, double df);

// Noncentral chi-squared CDF via the Poisson mixture
//   sum_k pois(k; lambda/2) * F_central(x; df + 2k)
// summed bidirectionally from the Poisson mode. Absolute error <= 1e-10;
// the series is truncated when the unaccounted Poisson mass drops below
// 1e-13 (each central CDF term is <= 1, so that mass bounds the remainder).
double noncentral_chisq_cdf(double x, const ChiSqParams& params);

// Inverse of noncentral_chisq_cdf in x; bracketing from the mean df+lambda
// followed by bisection.
double noncentral_chisq_quantile(double p, const ChiSqParams& params);

// Smallest lambda with 1 - CDF_df(chisq_quantile(1-alpha, df); lambda) =
// target_power, found by bisection (power is monotone in lambda).
double solve_noncentrality(double target_power, double df, double alpha);

}  // namespace sindex
