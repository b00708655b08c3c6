#pragma once

// Test-only oracles, independent of the library's code paths:
// - long-double forward-summed incomplete gamma series (all-positive terms)
// - noncentral chi-squared CDF by forward Poisson mixture from k = 0
// - Monte Carlo draws of (non)central chi-squared variables

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

inline long double gamma_p_forward(long double a, long double x) {
    if (x <= 0.0L) return 0.0L;
    long double term = 1.0L / a;
    long double sum = term;
    for (int k = 1; k < 100000; ++k) {
        term *= x / (a + k);
        sum += term;
        if (term < sum * 1e-20L) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline long double central_chisq_cdf(long double x, long double df) {
    return gamma_p_forward(0.5L * df, 0.5L * x);
}

inline long double noncentral_chisq_cdf(long double x, long double df,
                                        long double lambda) {
    if (x <= 0.0L) return 0.0L;
    const long double mu = 0.5L * lambda;
    long double w = std::exp(-mu);
    long double mass = w;
    long double sum = w * central_chisq_cdf(x, df);
    for (int k = 1; k < 100000; ++k) {
        w *= mu / k;
        mass += w;
        sum += w * central_chisq_cdf(x, df + 2.0L * k);
        if (1.0L - mass < 1e-18L) break;
    }
    return sum;
}

inline long double central_chisq_quantile(long double p, long double df) {
    long double lo = 0.0L, hi = df + 1.0L;
    while (central_chisq_cdf(hi, df) < p) hi *= 2.0L;
    for (int i = 0; i < 200; ++i) {
        long double mid = 0.5L * (lo + hi);
        (central_chisq_cdf(mid, df) < p ? lo : hi) = mid;
    }
    return 0.5L * (lo + hi);
}

// Draws of a noncentral chi-squared with integer df: sum of df squared
// shifted normals with total shift sqrt(lambda) on the first coordinate.
inline std::vector<double> noncentral_chisq_draws(int df, double lambda,
                                                  std::size_t count,
                                                  std::uint64_t seed) {
    if (df < 1) throw std::invalid_argument("df must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double shift = std::sqrt(lambda);
    std::vector<double> draws(count);
    for (std::size_t i = 0; i < count; ++i) {
        double z0 = normal(rng) + shift;
        double total = z0 * z0;
        for (int j = 1; j < df; ++j) {
            double z = normal(rng);
            total += z * z;
        }
        draws[i] = total;
    }
    return draws;
}

}  // namespace oracle
