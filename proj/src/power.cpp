#include "sindex/power.hpp"

#include <cmath>
#include <stdexcept>

#include "sindex/distributions.hpp"

namespace sindex {

double power_from(long n, double s, double df, double alpha) {
    if (n < 1) throw std::domain_error("power_from: n must be >= 1");
    if (!(s >= 0.0) || !std::isfinite(s)) {
        throw std::domain_error("power_from: s must be non-negative");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("power_from: alpha must be in (0,1)");
    }
    double crit = chisq_quantile(1.0 - alpha, df);
    return 1.0 - noncentral_chisq_cdf(crit, ChiSqParams{df, static_cast<double>(n) * s * s});
}

long solve_sample_size(double power, double s, double df, double alpha) {
    if (!(s > 0.0)) throw std::domain_error("solve_sample_size: s must be positive");
    double lambda = solve_noncentrality(power, df, alpha);
    long n = static_cast<long>(std::ceil(lambda / (s * s)));
    if (n < 1) n = 1;
    // Local adjustment so the result is the minimal integer.
    while (n > 1 && power_from(n - 1, s, df, alpha) >= power) --n;
    while (power_from(n, s, df, alpha) < power) ++n;
    return n;
}

double solve_effect_size(double power, long n, double df, double alpha) {
    if (n < 1) throw std::domain_error("solve_effect_size: n must be >= 1");
    return std::sqrt(solve_noncentrality(power, df, alpha) / static_cast<double>(n));
}

double solve_alpha(double power, long n, double s, double df) {
    if (!(power > 0.0 && power < 1.0)) {
        throw std::domain_error("solve_alpha: power must be in (0,1)");
    }
    // power_from(..., alpha) -> alpha as s -> 0, and is increasing in alpha;
    // feasible iff power_from at alpha ~ power-level brackets the target.
    double lo = 1e-12, hi = 1.0 - 1e-12;
    if (power_from(n, s, df, hi) < power || power_from(n, s, df, lo) > power) {
        throw std::domain_error("solve_alpha: target power not attainable for these inputs");
    }
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (power_from(n, s, df, mid) < power) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-12) break;
    }
    return 0.5 * (lo + hi);
}

std::vector<PowerCurvePoint> power_curve(const std::vector<double>& s_values,
                                         const std::vector<double>& df_values,
                                         double alpha, long n_min, long n_max,
                                         long n_step) {
    if (n_min < 1 || n_max < n_min || n_step < 1) {
        throw std::domain_error("power_curve: invalid n range");
    }
    std::vector<PowerCurvePoint> rows;
    for (double df : df_values) {
        for (double s : s_values) {
            for (long n = n_min; n <= n_max; n += n_step) {
                rows.push_back({n, s, df, alpha, power_from(n, s, df, alpha)});
            }
        }
    }
    return rows;
}

}  // namespace sindex
