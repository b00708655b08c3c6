#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sindex/convert.hpp"
#include "sindex/csv.hpp"
#include "sindex/distributions.hpp"
#include "sindex/effect_size.hpp"
#include "sindex/errors.hpp"
#include "sindex/models.hpp"
#include "sindex/power.hpp"
#include "sindex/sandwich.hpp"
#include "sindex/sim.hpp"

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

void emit(const json& report, const std::string& format, std::ostream& out) {
    if (format == "json") {
        out << report.dump(2) << "\n";
        return;
    }
    // Flat key,value CSV carrying the same numbers as the JSON report.
    out << "key,value\n";
    out.precision(17);
    std::function<void(const std::string&, const json&)> walk =
        [&](const std::string& prefix, const json& node) {
            if (node.is_object()) {
                for (auto it = node.begin(); it != node.end(); ++it) {
                    walk(prefix.empty() ? it.key() : prefix + "." + it.key(), it.value());
                }
            } else if (node.is_array()) {
                for (std::size_t i = 0; i < node.size(); ++i) {
                    walk(prefix + "[" + std::to_string(i) + "]", node[i]);
                }
            } else {
                out << prefix << ',' << node.dump() << '\n';
            }
        };
    walk("", report);
}

void write_or_print(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write to " + out_path);
    out << text;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (long i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (long i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (long j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

int run(int argc, char** argv) {
    CLI::App app{"Robust effect size index: estimation, conversion, power and simulation"};
    app.require_subcommand(1);

    // ---- estimate ----
    auto* est = app.add_subcommand("estimate", "Estimate S from a CSV dataset");
    std::string est_data, est_model, est_outcome = "y", est_format = "json", est_out;
    std::vector<std::string> est_target, est_nuisance;
    std::vector<double> est_beta0;
    std::optional<double> est_pi1;
    est->add_option("--data", est_data, "Input CSV path")->required();
    est->add_option("--model", est_model, "Model family: two_means|linear|logistic")->required();
    est->add_option("--outcome", est_outcome, "Outcome column (default y)");
    est->add_option("--target", est_target, "Target covariate columns")->required()->delimiter(',');
    est->add_option("--nuisance", est_nuisance, "Nuisance covariate columns")->delimiter(',');
    est->add_option("--beta0", est_beta0, "Reference value(s), default zero")->delimiter(',');
    est->add_option("--pi1", est_pi1, "Known group-1 proportion (two_means)");
    est->add_option("--format", est_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    est->add_option("--out", est_out, "Output path (default stdout)");

    // ---- convert ----
    auto* cnv = app.add_subcommand("convert", "Convert between effect size indices");
    std::string cnv_from, cnv_to, cnv_format = "json", cnv_out;
    double cnv_value = 0.0, cnv_pi1 = 0.5;
    std::optional<double> cnv_whole_r2;
    cnv->add_option("--from", cnv_from, "Input index: d|f2|r2|s")->required();
    cnv->add_option("--to", cnv_to, "Output index: d|f2|r2|s")->required();
    cnv->add_option("--value", cnv_value, "Input value")->required();
    cnv->add_option("--pi1", cnv_pi1, "Group-1 proportion (d conversions)");
    cnv->add_option("--whole-r2", cnv_whole_r2, "Whole-model R^2 when it differs from the partial");
    cnv->add_option("--format", cnv_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    cnv->add_option("--out", cnv_out, "Output path (default stdout)");

    // ---- power ----
    auto* pwr = app.add_subcommand("power", "Solve the power relation or emit power curves");
    std::string pwr_solve, pwr_format = "json", pwr_out;
    std::optional<double> pwr_s, pwr_power, pwr_alpha;
    std::optional<long> pwr_n;
    double pwr_df = 1.0;
    bool pwr_curve = false;
    std::vector<double> curve_s, curve_df;
    long curve_nmin = 10, curve_nmax = 1000, curve_nstep = 10;
    pwr->add_option("--solve", pwr_solve, "Unknown to solve for: power|n|s|alpha");
    pwr->add_option("--n", pwr_n, "Sample size");
    pwr->add_option("--s", pwr_s, "Effect size S");
    pwr->add_option("--df", pwr_df, "Degrees of freedom (m1)");
    pwr->add_option("--alpha", pwr_alpha, "Type 1 error rate");
    pwr->add_option("--power", pwr_power, "Target power");
    pwr->add_flag("--curve", pwr_curve, "Emit a power-curve CSV instead of solving");
    pwr->add_option("--curve-s", curve_s, "Curve S values")->delimiter(',');
    pwr->add_option("--curve-df", curve_df, "Curve df values")->delimiter(',');
    pwr->add_option("--n-min", curve_nmin, "Curve minimum n");
    pwr->add_option("--n-max", curve_nmax, "Curve maximum n");
    pwr->add_option("--n-step", curve_nstep, "Curve n step");
    pwr->add_option("--format", pwr_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    pwr->add_option("--out", pwr_out, "Output path (default stdout)");

    // ---- bias ----
    auto* bias = app.add_subcommand("bias", "Emit classical-estimator bias ratio grids");
    std::string bias_index = "d", bias_out;
    double bias_beta = 1.0, bias_sx = 1.0, bias_sy = 1.0;
    double bias_log2_min = -3.0, bias_log2_max = 3.0, bias_log2_step = 0.1;
    double bias_pi_min = 0.05, bias_pi_max = 0.95, bias_pi_step = 0.05;
    bias->add_option("--index", bias_index, "d|r2")->check(CLI::IsMember({"d", "r2"}));
    bias->add_option("--beta", bias_beta, "Slope (r2 grid)");
    bias->add_option("--sigma-x-sq", bias_sx, "Covariate variance (r2 grid)");
    bias->add_option("--sigma-y-sq", bias_sy, "Conditional outcome variance (r2 grid)");
    bias->add_option("--log2-min", bias_log2_min, "Grid minimum log2 variance ratio");
    bias->add_option("--log2-max", bias_log2_max, "Grid maximum log2 variance ratio");
    bias->add_option("--log2-step", bias_log2_step, "Grid step for the log2 ratio");
    bias->add_option("--pi1-min", bias_pi_min, "Grid minimum pi1 (d grid)");
    bias->add_option("--pi1-max", bias_pi_max, "Grid maximum pi1 (d grid)");
    bias->add_option("--pi1-step", bias_pi_step, "Grid step for pi1 (d grid)");
    bias->add_option("--out", bias_out, "Output path (default stdout)");

    // ---- simulate ----
    auto* sim = app.add_subcommand("simulate", "Run the finite-sample bias simulation");
    std::vector<int> sim_n{100};
    std::vector<double> sim_s{0.25};
    double sim_rho = 0.0, sim_shape = 10.0;
    int sim_m0 = 2, sim_m1 = 1, sim_reps = 200, sim_threads = 1;
    std::uint64_t sim_seed = 20260826;
    std::string sim_outdir, sim_summary_csv;
    sim->add_option("--n", sim_n, "Sample size(s)")->delimiter(',');
    sim->add_option("--s", sim_s, "Target S value(s)")->delimiter(',');
    sim->add_option("--rho-sq", sim_rho, "Cross-block squared correlation");
    sim->add_option("--m0", sim_m0, "Nuisance covariates");
    sim->add_option("--m1", sim_m1, "Target covariates");
    sim->add_option("--shape", sim_shape, "Gamma error shape a");
    sim->add_option("--replicates", sim_reps, "Replicates per config");
    sim->add_option("--seed", sim_seed, "Base seed");
    sim->add_option("--threads", sim_threads, "Worker threads");
    sim->add_option("--out-dir", sim_outdir, "Directory for per-config replicate CSVs");
    sim->add_option("--summary-csv", sim_summary_csv, "Path for the config x {bias,se} table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (est->parsed()) {
        sindex::Family family = sindex::family_from_name(est_model);
        sindex::CsvTable table = sindex::read_csv(est_data);
        sindex::Dataset data =
            sindex::dataset_from_csv(table, est_outcome, est_target, est_nuisance);
        sindex::FittedModel model = sindex::fit_model(family, data, est_pi1);
        sindex::SandwichCovariance cov = sindex::sandwich_covariance(model);

        Eigen::VectorXd beta0 = Eigen::VectorXd::Zero(model.m1);
        if (!est_beta0.empty()) {
            if (static_cast<int>(est_beta0.size()) != model.m1) {
                throw std::invalid_argument("--beta0 length must equal the number of target columns");
            }
            for (int i = 0; i < model.m1; ++i) beta0(i) = est_beta0[i];
        }
        sindex::WaldResult wald = sindex::wald_statistic(model, cov, beta0);
        sindex::EffectSizeEstimate es =
            sindex::estimate_effect_size(wald.t_squared, model.n, model.m(), model.m1);

        json report{
            {"schema_version", kSchemaVersion},
            {"config",
             {{"subcommand", "estimate"},
              {"data", est_data},
              {"model", est_model},
              {"outcome", est_outcome},
              {"target", est_target},
              {"nuisance", est_nuisance},
              {"beta0", vector_to_json(beta0)},
              {"pi1", est_pi1 ? json(*est_pi1) : json(nullptr)},
              {"format", est_format}}},
            {"n", model.n},
            {"m", model.m()},
            {"m0", model.m0},
            {"m1", model.m1},
            {"theta_hat", vector_to_json(model.theta_hat)},
            {"t_squared", wald.t_squared},
            {"df", wald.df},
            {"s_hat", es.s_hat},
            {"s_sq_untruncated", es.s_sq_untruncated},
            {"truncated", es.truncated},
            {"classification", sindex::effect_category_name(sindex::classify_effect(es.s_hat))},
            {"sigma_beta", matrix_to_json(cov.sigma_beta)},
        };
        if (family == sindex::Family::two_means) {
            report["pi1_used"] = model.pi1;
        }
        std::ostringstream out;
        emit(report, est_format, out);
        write_or_print(out.str(), est_out);
        return 0;
    }

    if (cnv->parsed()) {
        sindex::ConversionContext ctx{cnv_pi1};
        double result = sindex::convert_effect_size(
            cnv_value, sindex::index_kind_from_name(cnv_from),
            sindex::index_kind_from_name(cnv_to), ctx, cnv_whole_r2);
        json report{
            {"schema_version", kSchemaVersion},
            {"config",
             {{"subcommand", "convert"},
              {"from", cnv_from},
              {"to", cnv_to},
              {"value", cnv_value},
              {"pi1", cnv_pi1},
              {"whole_r2", cnv_whole_r2 ? json(*cnv_whole_r2) : json(nullptr)},
              {"format", cnv_format}}},
            {"result", result},
        };
        std::ostringstream out;
        emit(report, cnv_format, out);
        write_or_print(out.str(), cnv_out);
        return 0;
    }

    if (pwr->parsed()) {
        if (pwr_curve) {
            if (curve_s.empty() || curve_df.empty()) {
                throw std::invalid_argument("power --curve needs --curve-s and --curve-df");
            }
            double alpha = pwr_alpha.value_or(0.05);
            auto rows = sindex::power_curve(curve_s, curve_df, alpha, curve_nmin,
                                            curve_nmax, curve_nstep);
            std::ostringstream out;
            out.precision(17);
            out << "n,s,df,alpha,power\n";
            for (const auto& r : rows) {
                out << r.n << ',' << r.s << ',' << r.df << ',' << r.alpha << ','
                    << r.power << '\n';
            }
            write_or_print(out.str(), pwr_out);
            return 0;
        }
        if (pwr_solve.empty()) {
            throw std::invalid_argument("power: give --solve or --curve");
        }
        double alpha = pwr_alpha.value_or(0.05);
        json solution;
        if (pwr_solve == "power") {
            if (!pwr_n || !pwr_s) throw std::invalid_argument("power --solve power needs --n and --s");
            solution["power"] = sindex::power_from(*pwr_n, *pwr_s, pwr_df, alpha);
        } else if (pwr_solve == "n") {
            if (!pwr_s || !pwr_power) {
                throw std::invalid_argument("power --solve n needs --s and --power");
            }
            solution["n"] = sindex::solve_sample_size(*pwr_power, *pwr_s, pwr_df, alpha);
        } else if (pwr_solve == "s") {
            if (!pwr_n || !pwr_power) {
                throw std::invalid_argument("power --solve s needs --n and --power");
            }
            solution["s"] = sindex::solve_effect_size(*pwr_power, *pwr_n, pwr_df, alpha);
        } else if (pwr_solve == "alpha") {
            if (!pwr_n || !pwr_s || !pwr_power) {
                throw std::invalid_argument("power --solve alpha needs --n, --s and --power");
            }
            solution["alpha"] = sindex::solve_alpha(*pwr_power, *pwr_n, *pwr_s, pwr_df);
        } else {
            throw std::invalid_argument("power: unknown --solve target '" + pwr_solve + "'");
        }
        json report{
            {"schema_version", kSchemaVersion},
            {"config",
             {{"subcommand", "power"},
              {"solve", pwr_solve},
              {"n", pwr_n ? json(*pwr_n) : json(nullptr)},
              {"s", pwr_s ? json(*pwr_s) : json(nullptr)},
              {"df", pwr_df},
              {"alpha", alpha},
              {"power", pwr_power ? json(*pwr_power) : json(nullptr)},
              {"format", pwr_format}}},
            {"solution", solution},
        };
        std::ostringstream out;
        emit(report, pwr_format, out);
        write_or_print(out.str(), pwr_out);
        return 0;
    }

    if (bias->parsed()) {
        std::ostringstream out;
        out.precision(17);
        if (bias_index == "d") {
            out << "log2_var_ratio,pi1,d_ratio\n";
            for (double lr = bias_log2_min; lr <= bias_log2_max + 1e-9; lr += bias_log2_step) {
                double var1 = std::exp2(lr);
                for (double p = bias_pi_min; p <= bias_pi_max + 1e-9; p += bias_pi_step) {
                    out << lr << ',' << p << ','
                        << sindex::cohens_d_bias_ratio(var1, 1.0, p) << '\n';
                }
            }
        } else {
            out << "log2_hetero_ratio,r2_ratio\n";
            for (double lr = bias_log2_min; lr <= bias_log2_max + 1e-9; lr += bias_log2_step) {
                double sigma_xy_sq = std::exp2(lr) * bias_sx * bias_sy;
                out << lr << ','
                    << sindex::r2_bias_ratio(bias_beta, bias_sx, bias_sy, sigma_xy_sq)
                    << '\n';
            }
        }
        write_or_print(out.str(), bias_out);
        return 0;
    }

    if (sim->parsed()) {
        std::ostringstream summary_csv;
        summary_csv.precision(17);
        summary_csv << "n,s_target,rho_sq,m0,m1,gamma_shape,replicates,base_seed,"
                       "beta,n_failures,mean_s_hat,bias,se\n";
        for (int n : sim_n) {
            for (double s : sim_s) {
                sindex::SimConfig config;
                config.n = n;
                config.s_target = s;
                config.rho_sq = sim_rho;
                config.m0 = sim_m0;
                config.m1 = sim_m1;
                config.gamma_shape = sim_shape;
                config.n_replicates = sim_reps;
                config.base_seed = sim_seed;
                sindex::SimResult result = sindex::run_simulation(config, sim_threads);
                std::cout << result.summary_json() << "\n";
                summary_csv << n << ',' << s << ',' << sim_rho << ',' << sim_m0 << ','
                            << sim_m1 << ',' << sim_shape << ',' << sim_reps << ','
                            << sim_seed << ',' << result.beta << ','
                            << result.n_failures << ',' << result.mean_s() << ','
                            << result.bias() << ',' << result.se() << '\n';
                if (!sim_outdir.empty()) {
                    std::ostringstream name;
                    name << sim_outdir << "/replicates_n" << n << "_s" << s << ".csv";
                    std::ofstream repfile(name.str());
                    if (!repfile) {
                        throw std::invalid_argument("cannot write to " + name.str());
                    }
                    repfile << result.replicates_csv();
                }
            }
        }
        if (!sim_summary_csv.empty()) {
            std::ofstream out(sim_summary_csv);
            if (!out) throw std::invalid_argument("cannot write to " + sim_summary_csv);
            out << summary_csv.str();
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const sindex::numeric_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
