#pragma once

#include <vector>

namespace sindex {

// 1 - CDF_df(quantile_df(1-alpha; 0); n * s^2)
double power_from(long n, double s, double df, double alpha);

// Smallest integer n achieving the target power.
long solve_sample_size(double power, double s, double df, double alpha);

// s = sqrt(lambda* / n)
double solve_effect_size(double power, long n, double df, double alpha);

// Root-find alpha in (0,1) for fixed (n, s, df, power); power is strictly
// increasing in alpha.
double solve_alpha(double power, long n, double s, double df);

struct PowerCurvePoint {
    long n;
    double s;
    double df;
    double alpha;
    double power;
};

// Grid rows (n, s, df, alpha, power); curves are model-free.
std::vector<PowerCurvePoint> power_curve(const std::vector<double>& s_values,
                                         const std::vector<double>& df_values,
                                         double alpha, long n_min, long n_max,
                                         long n_step = 1);

}  // namespace sindex
