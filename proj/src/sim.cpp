#include "sindex/sim.hpp"

#include <atomic>
#include <cmath>
#include <cstring>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sindex/effect_size.hpp"
#include "sindex/errors.hpp"
#include "sindex/models.hpp"
#include "sindex/sandwich.hpp"

namespace sindex {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Eigen::MatrixXd covariate_cholesky(const SimConfig& config) {
    const int m = config.m0 + config.m1;
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(m, m);
    const double c = config.rho_sq / (config.m0 * config.m1);
    sigma.topRightCorner(config.m0, config.m1).setConstant(c);
    sigma.bottomLeftCorner(config.m1, config.m0).setConstant(c);
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("SimConfig: covariate covariance is not positive definite");
    }
    return llt.matrixL();
}

Dataset make_dataset(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                     const SimConfig& config) {
    Dataset data;
    data.y = y;
    data.x_nuisance = x.leftCols(config.m0);
    data.x_target = x.rightCols(config.m1);
    return data;
}

}  // namespace

void SimConfig::validate() const {
    if (m0 < 1 || m1 < 1) throw std::invalid_argument("SimConfig: m0, m1 must be >= 1");
    if (n <= m0 + m1 + 1) throw std::invalid_argument("SimConfig: need n > m0 + m1 + 1");
    if (!(rho_sq >= 0.0)) throw std::invalid_argument("SimConfig: rho_sq must be >= 0");
    if (!(s_target >= 0.0)) throw std::invalid_argument("SimConfig: s_target must be >= 0");
    if (!(gamma_shape > 0.0)) throw std::invalid_argument("SimConfig: gamma shape must be > 0");
    if (n_replicates < 1) throw std::invalid_argument("SimConfig: n_replicates must be >= 1");
    covariate_cholesky(*this);
}

std::uint64_t SimConfig::config_id() const {
    std::uint64_t h = splitmix64(static_cast<std::uint64_t>(n));
    auto mix_double = [&](double v) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(v));
        std::memcpy(&bits, &v, sizeof(bits));
        h = splitmix64(h ^ bits);
    };
    mix_double(s_target);
    mix_double(rho_sq);
    mix_double(gamma_shape);
    h = splitmix64(h ^ static_cast<std::uint64_t>(m0));
    h = splitmix64(h ^ static_cast<std::uint64_t>(m1));
    return h;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return splitmix64(splitmix64(splitmix64(a) ^ b) ^ c);
}

Eigen::MatrixXd generate_covariates(const SimConfig& config, std::uint64_t seed) {
    config.validate();
    const int m = config.m0 + config.m1;
    const Eigen::MatrixXd chol_l = covariate_cholesky(config);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd x(config.n, m);
    Eigen::VectorXd z(m);
    for (int i = 0; i < config.n; ++i) {
        do {
            for (int j = 0; j < m; ++j) z(j) = normal(rng);
            x.row(i) = (chol_l * z).transpose();
        } while (x(i, config.m0) == 0.0);  // probability-zero guard
    }
    return x;
}

Eigen::VectorXd generate_outcome(const Eigen::MatrixXd& x, double beta,
                                 const SimConfig& config, std::uint64_t seed) {
    if (x.cols() != config.m0 + config.m1) {
        throw std::invalid_argument("generate_outcome: covariate width mismatch");
    }
    const double a = config.gamma_shape;
    std::mt19937_64 rng(seed);
    Eigen::VectorXd y(x.rows());
    for (long i = 0; i < x.rows(); ++i) {
        double xv = x(i, config.m0);  // first target covariate drives the variance
        if (xv == 0.0) {
            throw std::invalid_argument("generate_outcome: zero variance covariate");
        }
        double scale = std::fabs(xv) / std::sqrt(a);
        std::gamma_distribution<double> gamma(a, scale);
        double eps = gamma(rng) - std::sqrt(a) * std::fabs(xv);  // centered: E(eps|X)=0
        y(i) = beta * x.row(i).tail(config.m1).sum() + eps;
    }
    return y;
}

double calibrate_beta(const SimConfig& config, int n_cal) {
    config.validate();
    if (config.s_target == 0.0) return 0.0;

    SimConfig cal = config;
    cal.n = n_cal;
    const std::uint64_t seed =
        mix_seed(config.base_seed, config.config_id(), 0x5eedca1ULL);
    Eigen::MatrixXd x = generate_covariates(cal, seed);
    Eigen::VectorXd y = generate_outcome(x, 1.0, cal, splitmix64(seed));

    FittedModel model = fit_linear(make_dataset(x, y, config), /*intercept=*/false);
    SandwichCovariance cov = sandwich_covariance(model);
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(config.m1);
    double quad = ones.dot(cov.sigma_beta.ldlt().solve(ones));
    if (!(quad > 0.0)) {
        throw singular_error("calibrate_beta: degenerate calibration covariance");
    }
    // beta vector is beta * 1_{m1}, so S = beta * sqrt(1' Sigma_beta^-1 1).
    return config.s_target / std::sqrt(quad);
}

SimResult run_simulation(const SimConfig& config, int n_threads) {
    config.validate();
    if (n_threads < 1) n_threads = 1;

    SimResult result;
    result.config = config;
    result.beta = calibrate_beta(config);
    const int reps = config.n_replicates;
    std::vector<double> s_hat(reps, std::nan(""));
    std::vector<std::uint64_t> seeds(reps);
    std::vector<char> ok(reps, 0);
    const std::uint64_t cid = config.config_id();

    auto run_replicate = [&](int r) {
        const std::uint64_t seed =
            mix_seed(config.base_seed, cid, static_cast<std::uint64_t>(r) + 1);
        seeds[r] = seed;
        try {
            Eigen::MatrixXd x = generate_covariates(config, mix_seed(seed, 1, 0));
            Eigen::VectorXd y =
                generate_outcome(x, result.beta, config, mix_seed(seed, 2, 0));
            FittedModel model = fit_linear(make_dataset(x, y, config), /*intercept=*/false);
            SandwichCovariance cov = sandwich_covariance(model);
            WaldResult wald =
                wald_statistic(model, cov, Eigen::VectorXd::Zero(config.m1));
            EffectSizeEstimate est = estimate_effect_size(
                wald.t_squared, model.n, model.m(), model.m1);
            s_hat[r] = est.s_hat;
            ok[r] = 1;
        } catch (const std::exception&) {
            ok[r] = 0;
        }
    };

    if (n_threads == 1) {
        for (int r = 0; r < reps; ++r) run_replicate(r);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> workers;
        workers.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) {
            workers.emplace_back([&] {
                for (int r = next.fetch_add(1); r < reps; r = next.fetch_add(1)) {
                    run_replicate(r);
                }
            });
        }
        for (auto& w : workers) w.join();
    }

    // Aggregate in replicate order so output is independent of scheduling.
    result.seeds = std::move(seeds);
    result.s_hat = std::move(s_hat);
    for (int r = 0; r < reps; ++r) {
        if (!ok[r]) ++result.n_failures;
    }
    return result;
}

double SimResult::mean_s() const {
    double sum = 0.0;
    long count = 0;
    for (double v : s_hat) {
        if (std::isnan(v)) continue;
        sum += v;
        ++count;
    }
    return count > 0 ? sum / static_cast<double>(count) : std::nan("");
}

double SimResult::bias() const { return mean_s() - config.s_target; }

double SimResult::se() const {
    double mean = mean_s();
    double ss = 0.0;
    long count = 0;
    for (double v : s_hat) {
        if (std::isnan(v)) continue;
        ss += (v - mean) * (v - mean);
        ++count;
    }
    return count > 1 ? std::sqrt(ss / static_cast<double>(count - 1)) : std::nan("");
}

std::string SimResult::replicates_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "replicate,seed,s_hat\n";
    for (std::size_t r = 0; r < seeds.size(); ++r) {
        out << r << ',' << seeds[r] << ',';
        if (r < s_hat.size() && !std::isnan(s_hat[r])) out << s_hat[r];
        out << '\n';
    }
    return out.str();
}

std::string SimResult::summary_json() const {
    std::ostringstream out;
    out.precision(17);
    out << "{\"schema_version\":1,"
        << "\"n\":" << config.n << ","
        << "\"s_target\":" << config.s_target << ","
        << "\"rho_sq\":" << config.rho_sq << ","
        << "\"m0\":" << config.m0 << ","
        << "\"m1\":" << config.m1 << ","
        << "\"gamma_shape\":" << config.gamma_shape << ","
        << "\"n_replicates\":" << config.n_replicates << ","
        << "\"base_seed\":" << config.base_seed << ","
        << "\"intercept_fitted\":false,"
        << "\"beta\":" << beta << ","
        << "\"n_failures\":" << n_failures << ","
        << "\"mean_s_hat\":" << mean_s() << ","
        << "\"bias\":" << bias() << ","
        << "\"se\":" << se() << "}";
    return out.str();
}

}  // namespace sindex
