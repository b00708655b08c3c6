#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "sindex/convert.hpp"
#include "sindex/distributions.hpp"
#include "sindex/effect_size.hpp"
#include "sindex/models.hpp"
#include "sindex/power.hpp"
#include "sindex/sandwich.hpp"
#include "sindex/sim.hpp"

namespace py = pybind11;

namespace {

py::dict estimate(const Eigen::VectorXd& y, const Eigen::MatrixXd& x_target,
                  const Eigen::MatrixXd& x_nuisance, const std::string& family,
                  std::optional<Eigen::VectorXd> beta0,
                  std::optional<double> pi1) {
    sindex::Dataset data;
    data.y = y;
    data.x_target = x_target;
    data.x_nuisance = x_nuisance;
    sindex::FittedModel model =
        sindex::fit_model(sindex::family_from_name(family), data, pi1);
    sindex::SandwichCovariance cov = sindex::sandwich_covariance(model);
    Eigen::VectorXd b0 = beta0 ? *beta0 : Eigen::VectorXd::Zero(model.m1);
    sindex::WaldResult wald = sindex::wald_statistic(model, cov, b0);
    sindex::EffectSizeEstimate est =
        sindex::estimate_effect_size(wald.t_squared, model.n, model.m(), model.m1);

    py::dict out;
    out["family"] = family;
    out["n"] = model.n;
    out["m"] = model.m();
    out["m0"] = model.m0;
    out["m1"] = model.m1;
    out["theta_hat"] = model.theta_hat;
    out["t_squared"] = wald.t_squared;
    out["df"] = wald.df;
    out["s_hat"] = est.s_hat;
    out["s_sq_untruncated"] = est.s_sq_untruncated;
    out["truncated"] = est.truncated;
    out["sigma_beta"] = cov.sigma_beta;
    out["classification"] =
        sindex::effect_category_name(sindex::classify_effect(est.s_hat));
    return out;
}

py::dict simulate(int n, double s_target, double rho_sq, int m0, int m1,
                  double gamma_shape, int n_replicates, std::uint64_t base_seed,
                  int n_threads) {
    sindex::SimConfig config;
    config.n = n;
    config.s_target = s_target;
    config.rho_sq = rho_sq;
    config.m0 = m0;
    config.m1 = m1;
    config.gamma_shape = gamma_shape;
    config.n_replicates = n_replicates;
    config.base_seed = base_seed;
    sindex::SimResult result = sindex::run_simulation(config, n_threads);

    py::dict out;
    out["beta"] = result.beta;
    out["s_hat"] = result.s_hat;
    out["seeds"] = result.seeds;
    out["n_failures"] = result.n_failures;
    out["mean_s_hat"] = result.mean_s();
    out["bias"] = result.bias();
    out["se"] = result.se();
    return out;
}

}  // namespace

PYBIND11_MODULE(_sindex, m) {
    m.doc() = "Robust effect size index core";

    m.def(
        "noncentral_chisq_cdf",
        [](double x, double df, double lambda) {
            return sindex::noncentral_chisq_cdf(x, {df, lambda});
        },
        py::arg("x"), py::arg("df"), py::arg("lambda_") = 0.0);
    m.def(
        "noncentral_chisq_quantile",
        [](double p, double df, double lambda) {
            return sindex::noncentral_chisq_quantile(p, {df, lambda});
        },
        py::arg("p"), py::arg("df"), py::arg("lambda_") = 0.0);
    m.def("solve_noncentrality", &sindex::solve_noncentrality,
          py::arg("target_power"), py::arg("df"), py::arg("alpha"));

    m.def("power_from", &sindex::power_from, py::arg("n"), py::arg("s"),
          py::arg("df"), py::arg("alpha") = 0.05);
    m.def("solve_sample_size", &sindex::solve_sample_size, py::arg("power"),
          py::arg("s"), py::arg("df"), py::arg("alpha") = 0.05);
    m.def("solve_effect_size", &sindex::solve_effect_size, py::arg("power"),
          py::arg("n"), py::arg("df"), py::arg("alpha") = 0.05);
    m.def("solve_alpha", &sindex::solve_alpha, py::arg("power"), py::arg("n"),
          py::arg("s"), py::arg("df"));

    m.def(
        "convert",
        [](double value, const std::string& from, const std::string& to,
           double pi1, std::optional<double> whole_r2) {
            return sindex::convert_effect_size(
                value, sindex::index_kind_from_name(from),
                sindex::index_kind_from_name(to), {pi1}, whole_r2);
        },
        py::arg("value"), py::arg("from_"), py::arg("to"), py::arg("pi1") = 0.5,
        py::arg("whole_r2") = std::nullopt);
    m.def(
        "classify_effect",
        [](double s) {
            return sindex::effect_category_name(sindex::classify_effect(s));
        },
        py::arg("s"));
    m.def("cohens_d_bias_ratio", &sindex::cohens_d_bias_ratio, py::arg("var1"),
          py::arg("var0"), py::arg("pi1"));
    m.def("r2_bias_ratio", &sindex::r2_bias_ratio, py::arg("beta"),
          py::arg("sigma_x_sq"), py::arg("sigma_y_sq"), py::arg("sigma_xy_sq"));

    m.def(
        "estimate_effect_size",
        [](double t_squared, long n, int m, int m1) {
            auto est = sindex::estimate_effect_size(t_squared, n, m, m1);
            py::dict out;
            out["s_hat"] = est.s_hat;
            out["s_sq_untruncated"] = est.s_sq_untruncated;
            out["truncated"] = est.truncated;
            return out;
        },
        py::arg("t_squared"), py::arg("n"), py::arg("m"), py::arg("m1"));
    m.def("closed_form_two_means", &sindex::closed_form_two_means, py::arg("mu1"),
          py::arg("mu0"), py::arg("var1"), py::arg("var0"), py::arg("pi1"));
    m.def("closed_form_slr", &sindex::closed_form_slr, py::arg("beta"),
          py::arg("sigma_x_sq"), py::arg("sigma_xy_sq"));

    m.def("estimate", &estimate, py::arg("y"), py::arg("x_target"),
          py::arg("x_nuisance") = Eigen::MatrixXd(0, 0), py::arg("family") = "linear",
          py::arg("beta0") = std::nullopt, py::arg("pi1") = std::nullopt);
    m.def("simulate", &simulate, py::arg("n"), py::arg("s_target"),
          py::arg("rho_sq") = 0.0, py::arg("m0") = 2, py::arg("m1") = 1,
          py::arg("gamma_shape") = 10.0, py::arg("n_replicates") = 200,
          py::arg("base_seed") = 20260826, py::arg("n_threads") = 1);
}
