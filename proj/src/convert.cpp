#include "sindex/convert.hpp"

#include <cmath>
#include <stdexcept>

namespace sindex {

namespace {

// (pi1^-1 + pi0^-1), the constant linking d and S.
double pi_factor(const ConversionContext& ctx) {
    ctx.validate();
    return 1.0 / ctx.pi1 + 1.0 / ctx.pi0();
}

double to_s(double value, IndexKind from, const ConversionContext& ctx,
            std::optional<double> whole_model_r2) {
    switch (from) {
        case IndexKind::s:
            if (!(value >= 0.0)) throw std::domain_error("convert: S must be >= 0");
            return value;
        case IndexKind::cohens_d:
            if (!std::isfinite(value)) throw std::domain_error("convert: d must be finite");
            return std::fabs(value) / std::sqrt(pi_factor(ctx));
        case IndexKind::f_squared:
            if (!(value >= 0.0)) throw std::domain_error("convert: f^2 must be >= 0");
            return std::sqrt(value);
        case IndexKind::r_squared: {
            if (!(value >= 0.0 && value <= 1.0)) {
                throw std::domain_error("convert: R^2 must be in [0,1)");
            }
            double whole = whole_model_r2.value_or(value);
            if (whole >= 1.0) throw std::domain_error("convert: R^2 = 1 gives an infinite effect");
            return std::sqrt(value / (1.0 - whole));
        }
    }
    throw std::invalid_argument("convert: unknown index kind");
}

double from_s(double s, IndexKind to, const ConversionContext& ctx,
              std::optional<double> whole_model_r2) {
    switch (to) {
        case IndexKind::s:
            return s;
        case IndexKind::cohens_d:
            return std::sqrt(pi_factor(ctx)) * s;
        case IndexKind::f_squared:
            return s * s;
        case IndexKind::r_squared: {
            // S^2 / (1 + S_whole^2); the whole-model S defaults to the
            // partial one (single-target case).
            double s_whole = s;
            if (whole_model_r2) {
                if (*whole_model_r2 >= 1.0) {
                    throw std::domain_error("convert: whole-model R^2 = 1 gives an infinite effect");
                }
                s_whole = std::sqrt(*whole_model_r2 / (1.0 - *whole_model_r2));
            }
            return s * s / (1.0 + s_whole * s_whole);
        }
    }
    throw std::invalid_argument("convert: unknown index kind");
}

}  // namespace

std::string index_kind_name(IndexKind k) {
    switch (k) {
        case IndexKind::cohens_d: return "d";
        case IndexKind::f_squared: return "f2";
        case IndexKind::r_squared: return "r2";
        case IndexKind::s: return "s";
    }
    return "unknown";
}

IndexKind index_kind_from_name(const std::string& name) {
    if (name == "d") return IndexKind::cohens_d;
    if (name == "f2") return IndexKind::f_squared;
    if (name == "r2") return IndexKind::r_squared;
    if (name == "s") return IndexKind::s;
    throw std::invalid_argument("unknown effect size index: " + name);
}

void ConversionContext::validate() const {
    if (!(pi1 > 0.0 && pi1 < 1.0)) {
        throw std::domain_error("ConversionContext: pi1 must be in (0,1)");
    }
}

double convert_effect_size(double value, IndexKind from, IndexKind to,
                           const ConversionContext& ctx,
                           std::optional<double> whole_model_r2) {
    if (!std::isfinite(value)) throw std::domain_error("convert: non-finite value");
    if (from == to) return value;
    return from_s(to_s(value, from, ctx, whole_model_r2), to, ctx, whole_model_r2);
}

std::string effect_category_name(EffectCategory c) {
    switch (c) {
        case EffectCategory::none_small: return "none-small";
        case EffectCategory::small_medium: return "small-medium";
        case EffectCategory::medium_large: return "medium-large";
        case EffectCategory::large: return "large";
    }
    return "unknown";
}

EffectCategory classify_effect(double s) {
    if (!(s >= 0.0)) throw std::domain_error("classify_effect: s must be >= 0");
    if (s <= 0.1) return EffectCategory::none_small;
    if (s <= 0.25) return EffectCategory::small_medium;
    if (s <= 0.4) return EffectCategory::medium_large;
    return EffectCategory::large;
}

double cohens_d_bias_ratio(double var1, double var0, double pi1) {
    if (!(var1 > 0.0 && var0 > 0.0)) {
        throw std::domain_error("cohens_d_bias_ratio: variances must be positive");
    }
    if (!(pi1 > 0.0 && pi1 < 1.0)) {
        throw std::domain_error("cohens_d_bias_ratio: pi1 must be in (0,1)");
    }
    double pi0 = 1.0 - pi1;
    double inv_sum = 1.0 / pi1 + 1.0 / pi0;
    double weighted = var1 / pi1 + var0 / pi0;
    double pooled = pi1 * var1 + pi0 * var0;
    return std::sqrt(weighted / pooled / inv_sum);
}

double r2_bias_ratio(double beta, double sigma_x_sq, double sigma_y_sq,
                     double sigma_xy_sq) {
    if (!(sigma_x_sq > 0.0 && sigma_y_sq > 0.0 && sigma_xy_sq > 0.0)) {
        throw std::domain_error("r2_bias_ratio: variance inputs must be positive");
    }
    double b2x4 = sigma_x_sq * sigma_x_sq * beta * beta;
    return (b2x4 + sigma_x_sq * sigma_y_sq) / (b2x4 + sigma_xy_sq);
}

}  // namespace sindex
