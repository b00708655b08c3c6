#pragma once

#include <optional>
#include <string>

namespace sindex {

enum class IndexKind { cohens_d, f_squared, r_squared, s };

std::string index_kind_name(IndexKind k);
IndexKind index_kind_from_name(const std::string& name);

struct ConversionContext {
    double pi1 = 0.5;  // group-1 proportion, needed when d is involved

    double pi0() const { return 1.0 - pi1; }
    void validate() const;
};

// Conversion among |d|, f^2, partial R^2 and S under homoskedasticity.
// All routes pass through S, which reproduces every table cell exactly.
// whole_model_r2 feeds the unsubscripted R^2 appearing in denominators of
// the R^2 rows/columns; it defaults to the partial value (single-target
// case, where the two coincide).
double convert_effect_size(double value, IndexKind from, IndexKind to,
                           const ConversionContext& ctx = {},
                           std::optional<double> whole_model_r2 = std::nullopt);

enum class EffectCategory { none_small, small_medium, medium_large, large };

std::string effect_category_name(EffectCategory c);

// Cohen-style thresholds on the S scale:
// [0,0.1] / (0.1,0.25] / (0.25,0.4] / (0.4,inf)
EffectCategory classify_effect(double s);

// Asymptotic ratio of the pooled-variance Cohen's d estimand to the
// S-implied d; equals 1 when pi1 = 1/2 or the variances are equal.
double cohens_d_bias_ratio(double var1, double var0, double pi1);

// Asymptotic ratio of the classical R^2 estimand to the S-implied R^2;
// equals 1 under homoskedasticity (sigma_xy_sq = sigma_x_sq * sigma_y_sq).
double r2_bias_ratio(double beta, double sigma_x_sq, double sigma_y_sq,
                     double sigma_xy_sq);

}  // namespace sindex
