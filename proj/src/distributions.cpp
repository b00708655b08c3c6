#include "sindex/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sindex {

namespace {

constexpr int kMaxGammaIter = 500;
constexpr double kGammaEps = 1e-15;
constexpr double kSeriesMassTol = 1e-13;

double gamma_p_series(double a, double x) {
    // Lower series: P(a,x) = x^a e^-x / Gamma(a+1) * sum x^k / ((a+1)...(a+k))
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int i = 0; i < kMaxGammaIter; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kGammaEps) {
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw std::runtime_error("regularized_gamma_p: series did not converge");
}

double gamma_q_contfrac(double a, double x) {
    // Upper continued fraction (modified Lentz) for Q(a,x), x >= a+1.
    const double tiny = std::numeric_limits<double>::min() / kGammaEps;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxGammaIter; ++i) {
        double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kGammaEps) {
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw std::runtime_error("regularized_gamma_p: continued fraction did not converge");
}

double poisson_log_pmf(int k, double mu) {
    return -mu + k * std::log(mu) - std::lgamma(k + 1.0);
}

}  // namespace

void ChiSqParams::validate() const {
    if (!std::isfinite(df) || df <= 0.0) {
        throw std::domain_error("ChiSqParams: df must be positive and finite");
    }
    if (!std::isfinite(lambda) || lambda < 0.0) {
        throw std::domain_error("ChiSqParams: lambda must be non-negative and finite");
    }
}

double regularized_gamma_p(double a, double x) {
    if (!std::isfinite(a) || !std::isfinite(x) || a <= 0.0 || x < 0.0) {
        throw std::domain_error("regularized_gamma_p: require a > 0, x >= 0");
    }
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_contfrac(a, x);
}

double chisq_cdf(double x, double df) {
    if (!std::isfinite(x) || x < 0.0) {
        throw std::domain_error("chisq_cdf: x must be non-negative and finite");
    }
    if (!std::isfinite(df) || df <= 0.0) {
        throw std::domain_error("chisq_cdf: df must be positive");
    }
    return regularized_gamma_p(0.5 * df, 0.5 * x);
}

double chisq_quantile(double p, double df) {
    return noncentral_chisq_quantile(p, ChiSqParams{df, 0.0});
}

double noncentral_chisq_cdf(double x, const ChiSqParams& params) {
    params.validate();
    if (!std::isfinite(x) || x < 0.0) {
        throw std::domain_error("noncentral_chisq_cdf: x must be non-negative and finite");
    }
    if (x == 0.0) return 0.0;
    if (params.lambda == 0.0) return chisq_cdf(x, params.df);

    const double mu = 0.5 * params.lambda;
    const double half_x = 0.5 * x;
    const int mode = static_cast<int>(mu);

    // Bidirectional sum from the Poisson mode; the central CDF terms are
    // decreasing in k, so the remainder is bounded by the uncovered mass.
    double w_mode = std::exp(poisson_log_pmf(mode, mu));
    double sum = w_mode * regularized_gamma_p(0.5 * params.df + mode, half_x);
    double mass = w_mode;

    double w_up = w_mode;
    double w_down = w_mode;
    int k_up = mode;
    int k_down = mode;
    const int max_terms = 100000;
    for (int i = 0; i < max_terms && mass < 1.0 - kSeriesMassTol; ++i) {
        bool progressed = false;
        if (w_up > 0.0) {
            ++k_up;
            w_up *= mu / k_up;
            double term = w_up * regularized_gamma_p(0.5 * params.df + k_up, half_x);
            sum += term;
            mass += w_up;
            progressed = true;
            // Upward terms shrink with both weights and CDF values.
            if (term < kSeriesMassTol * 0.5 && w_up < kSeriesMassTol) w_up = 0.0;
        }
        if (k_down > 0) {
            w_down *= k_down / mu;
            --k_down;
            sum += w_down * regularized_gamma_p(0.5 * params.df + k_down, half_x);
            mass += w_down;
            progressed = true;
        }
        if (!progressed) break;
    }
    if (sum < 0.0) sum = 0.0;
    if (sum > 1.0) sum = 1.0;
    return sum;
}

double noncentral_chisq_quantile(double p, const ChiSqParams& params) {
    params.validate();
    if (!std::isfinite(p) || p <= 0.0 || p >= 1.0) {
        throw std::domain_error("noncentral_chisq_quantile: p must be in (0,1)");
    }
    // Bracket around the mean, expanding geometrically.
    double lo = 0.0;
    double hi = params.df + params.lambda + 1.0;
    for (int i = 0; i < 200 && noncentral_chisq_cdf(hi, params) < p; ++i) {
        lo = hi;
        hi *= 2.0;
    }
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (noncentral_chisq_cdf(mid, params) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-13 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

double solve_noncentrality(double target_power, double df, double alpha) {
    if (!std::isfinite(target_power) || !std::isfinite(alpha) ||
        alpha <= 0.0 || alpha >= 1.0 || target_power >= 1.0) {
        throw std::domain_error("solve_noncentrality: require 0 < alpha < target_power < 1");
    }
    if (target_power <= alpha) {
        throw std::domain_error("solve_noncentrality: target power must exceed alpha");
    }
    const double crit = chisq_quantile(1.0 - alpha, df);
    auto power_at = [&](double lambda) {
        return 1.0 - noncentral_chisq_cdf(crit, ChiSqParams{df, lambda});
    };
    double hi = 1.0;
    for (int i = 0; i < 200 && power_at(hi) < target_power; ++i) hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (power_at(mid) < target_power) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-10 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace sindex
