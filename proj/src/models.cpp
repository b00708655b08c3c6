#include "sindex/models.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sindex/errors.hpp"

namespace sindex {

namespace {

constexpr double kRcondTol = 1e-12;
constexpr int kLogisticMaxIter = 100;
constexpr double kLogisticGradTol = 1e-10;
constexpr double kLogisticEtaCap = 30.0;

double expit(double eta) { return 1.0 / (1.0 + std::exp(-eta)); }

// Design with optional leading intercept column.
Eigen::MatrixXd build_design(const Dataset& data, bool intercept = true) {
    const long n = data.n();
    const long lead = intercept ? 1 : 0;
    Eigen::MatrixXd design(n, lead + data.x_nuisance.cols() + data.x_target.cols());
    if (intercept) design.col(0).setOnes();
    if (data.x_nuisance.cols() > 0) {
        design.middleCols(lead, data.x_nuisance.cols()) = data.x_nuisance;
    }
    design.rightCols(data.x_target.cols()) = data.x_target;
    return design;
}

void check_conditioning(const Eigen::MatrixXd& gram, const char* what) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    const auto& ev = es.eigenvalues();
    double emax = ev(ev.size() - 1);
    if (emax <= 0.0 || ev(0) / emax < kRcondTol) {
        throw singular_error(std::string(what) + ": design is singular or ill-conditioned");
    }
}

double bernoulli_loglik(const Eigen::VectorXd& y, const Eigen::VectorXd& eta) {
    // log L = sum y*eta - log(1+exp(eta)), stable via log1p.
    double ll = 0.0;
    for (long i = 0; i < y.size(); ++i) {
        double e = eta(i);
        double log1pexp = e > 0.0 ? e + std::log1p(std::exp(-e)) : std::log1p(std::exp(e));
        ll += y(i) * e - log1pexp;
    }
    return ll;
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::two_means: return "two_means";
        case Family::linear: return "linear";
        case Family::logistic: return "logistic";
    }
    return "unknown";
}

Family family_from_name(const std::string& name) {
    if (name == "two_means") return Family::two_means;
    if (name == "linear") return Family::linear;
    if (name == "logistic") return Family::logistic;
    throw std::invalid_argument("unknown model family: " + name);
}

void Dataset::validate() const {
    const long nn = y.size();
    if (nn == 0) throw std::invalid_argument("Dataset: empty outcome");
    if (x_target.cols() == 0) throw std::invalid_argument("Dataset: no target covariates");
    if (x_nuisance.cols() > 0 && x_nuisance.rows() != nn) {
        throw std::invalid_argument("Dataset: nuisance row count mismatch");
    }
    if (x_target.rows() != nn) {
        throw std::invalid_argument("Dataset: target row count mismatch");
    }
    if (!y.allFinite() || !x_target.allFinite() ||
        (x_nuisance.size() > 0 && !x_nuisance.allFinite())) {
        throw std::invalid_argument("Dataset: non-finite entries");
    }
    if (nn <= x_nuisance.cols() + x_target.cols()) {
        throw std::invalid_argument("Dataset: need n > m0 + m1");
    }
}

FittedModel fit_two_means(const Dataset& data, std::optional<double> pi1_known) {
    data.validate();
    if (data.x_target.cols() != 1 || data.x_nuisance.cols() != 0) {
        throw std::invalid_argument("fit_two_means: expects a single target column and no nuisance");
    }
    const long n = data.n();
    long n1 = 0;
    for (long i = 0; i < n; ++i) {
        double x = data.x_target(i, 0);
        if (x != 0.0 && x != 1.0) {
            throw std::invalid_argument("fit_two_means: group indicator must be 0/1");
        }
        if (x == 1.0) ++n1;
    }
    const long n0 = n - n1;
    if (n0 == 0 || n1 == 0) {
        throw std::invalid_argument("fit_two_means: a group has zero observations");
    }

    double pi1 = pi1_known ? *pi1_known : static_cast<double>(n1) / n;
    if (pi1 <= 0.0 || pi1 >= 1.0) {
        throw std::invalid_argument("fit_two_means: pi1 must be in (0,1)");
    }
    const double pi0 = 1.0 - pi1;

    double sum0 = 0.0, sum1 = 0.0;
    for (long i = 0; i < n; ++i) {
        (data.x_target(i, 0) == 1.0 ? sum1 : sum0) += data.y(i);
    }
    const double mu1 = sum1 / n1;
    const double mu0 = sum0 / n0;

    FittedModel model;
    model.family = Family::two_means;
    model.n = n;
    model.m0 = 0;
    model.m1 = 1;
    model.pi1 = pi1;
    model.pi0 = pi0;
    model.theta_hat = Eigen::VectorXd::Constant(
        1, (static_cast<double>(n1) / n) / pi1 * mu1 -
               (static_cast<double>(n0) / n) / pi0 * mu0);
    // Group-centered scores: the double-sum form of K for this estimand
    // reduces to n^-1 sum pi_x^-2 Var(Y_i|X_i) under independence, estimated
    // by the within-group squared deviations.
    model.score_contrib.resize(n, 1);
    for (long i = 0; i < n; ++i) {
        bool g1 = data.x_target(i, 0) == 1.0;
        double sign = g1 ? 1.0 : -1.0;
        double pix = g1 ? pi1 : pi0;
        double mux = g1 ? mu1 : mu0;
        model.score_contrib(i, 0) = sign / pix * (data.y(i) - mux);
    }
    model.hessian_contrib = Eigen::MatrixXd::Identity(1, 1);
    return model;
}

FittedModel fit_linear(const Dataset& data, bool intercept) {
    data.validate();
    const Eigen::MatrixXd design = build_design(data, intercept);
    const long n = design.rows();
    const Eigen::MatrixXd gram = design.transpose() * design / static_cast<double>(n);
    check_conditioning(gram, "fit_linear");

    Eigen::VectorXd theta =
        gram.ldlt().solve(design.transpose() * data.y / static_cast<double>(n));
    Eigen::VectorXd resid = data.y - design * theta;

    FittedModel model;
    model.family = Family::linear;
    model.n = n;
    model.m0 = static_cast<int>((intercept ? 1 : 0) + data.x_nuisance.cols());
    model.m1 = static_cast<int>(data.x_target.cols());
    model.theta_hat = theta;
    model.score_contrib = design.array().colwise() * resid.array();
    model.hessian_contrib = gram;
    return model;
}

FittedModel fit_logistic(const Dataset& data) {
    data.validate();
    for (long i = 0; i < data.n(); ++i) {
        if (data.y(i) != 0.0 && data.y(i) != 1.0) {
            throw std::invalid_argument("fit_logistic: outcome must be 0/1");
        }
    }
    const Eigen::MatrixXd design = build_design(data);
    const long n = design.rows();
    const long m = design.cols();
    check_conditioning(design.transpose() * design / static_cast<double>(n), "fit_logistic");

    Eigen::VectorXd theta = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd eta = Eigen::VectorXd::Zero(n);
    double ll = bernoulli_loglik(data.y, eta);
    bool converged = false;

    for (int iter = 0; iter < kLogisticMaxIter; ++iter) {
        Eigen::VectorXd p = eta.unaryExpr([](double e) { return expit(e); });
        Eigen::VectorXd grad = design.transpose() * (data.y - p) / static_cast<double>(n);
        if (grad.lpNorm<Eigen::Infinity>() < kLogisticGradTol) {
            converged = true;
            break;
        }
        Eigen::VectorXd w = p.array() * (1.0 - p.array());
        Eigen::MatrixXd hess =
            design.transpose() * (design.array().colwise() * w.array()).matrix() /
            static_cast<double>(n);
        Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
        if (ldlt.info() != Eigen::Success) {
            throw singular_error("fit_logistic: singular Hessian");
        }
        Eigen::VectorXd step = ldlt.solve(grad);

        // Step-halving whenever the log-likelihood would decrease.
        double scale = 1.0;
        Eigen::VectorXd theta_new;
        Eigen::VectorXd eta_new;
        double ll_new = -std::numeric_limits<double>::infinity();
        for (int h = 0; h <= 20; ++h) {
            theta_new = theta + scale * step;
            eta_new = design * theta_new;
            ll_new = bernoulli_loglik(data.y, eta_new);
            if (ll_new >= ll) break;
            scale *= 0.5;
        }
        theta = theta_new;
        eta = eta_new;
        ll = ll_new;
        if (eta.lpNorm<Eigen::Infinity>() > kLogisticEtaCap) {
            throw separation_error("fit_logistic: linear predictor diverged (separated data?)");
        }
    }
    if (!converged) {
        // Final gradient check in case the last step landed on the solution.
        Eigen::VectorXd p = eta.unaryExpr([](double e) { return expit(e); });
        Eigen::VectorXd grad = design.transpose() * (data.y - p) / static_cast<double>(n);
        if (grad.lpNorm<Eigen::Infinity>() >= kLogisticGradTol) {
            throw convergence_error("fit_logistic: Newton did not converge in 100 iterations");
        }
    }

    Eigen::VectorXd p = eta.unaryExpr([](double e) { return expit(e); });
    // A gradient that vanishes with every fitted probability at its label
    // means the likelihood is maximized at infinity: separated data.
    if ((data.y - p).lpNorm<Eigen::Infinity>() < 1e-6) {
        throw separation_error("fit_logistic: data are perfectly separated");
    }
    Eigen::VectorXd w = p.array() * (1.0 - p.array());

    FittedModel model;
    model.family = Family::logistic;
    model.n = n;
    model.m0 = static_cast<int>(1 + data.x_nuisance.cols());
    model.m1 = static_cast<int>(data.x_target.cols());
    model.theta_hat = theta;
    model.score_contrib = design.array().colwise() * (data.y - p).array();
    model.hessian_contrib =
        design.transpose() * (design.array().colwise() * w.array()).matrix() /
        static_cast<double>(n);
    return model;
}

FittedModel fit_model(Family family, const Dataset& data,
                      std::optional<double> pi1_known) {
    switch (family) {
        case Family::two_means: return fit_two_means(data, pi1_known);
        case Family::linear: return fit_linear(data);
        case Family::logistic: return fit_logistic(data);
    }
    throw std::invalid_argument("fit_model: unknown family");
}

}  // namespace sindex
