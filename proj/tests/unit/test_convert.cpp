#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sindex/convert.hpp"
#include "sindex/effect_size.hpp"

using sindex::ConversionContext;
using sindex::IndexKind;

namespace {
const std::vector<IndexKind> kKinds = {IndexKind::cohens_d, IndexKind::f_squared,
                                       IndexKind::r_squared, IndexKind::s};
}

TEST_CASE("anchor conversions") {
    ConversionContext half{0.5};
    CHECK(sindex::convert_effect_size(0.2, IndexKind::cohens_d, IndexKind::s, half) ==
          doctest::Approx(0.1).epsilon(1e-14));
    CHECK(sindex::convert_effect_size(0.8, IndexKind::cohens_d, IndexKind::s, half) ==
          doctest::Approx(0.4).epsilon(1e-14));
    CHECK(sindex::convert_effect_size(0.25, IndexKind::s, IndexKind::f_squared) ==
          doctest::Approx(0.0625).epsilon(1e-14));
    CHECK(sindex::convert_effect_size(0.5, IndexKind::r_squared, IndexKind::s) ==
          doctest::Approx(1.0).epsilon(1e-14));
    // identity
    CHECK(sindex::convert_effect_size(0.37, IndexKind::f_squared, IndexKind::f_squared) ==
          0.37);
}

TEST_CASE("round trips over a value grid") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pi_draw(0.05, 0.95);
    for (int rep = 0; rep < 50; ++rep) {
        ConversionContext ctx{pi_draw(rng)};
        for (double s : {0.01, 0.1, 0.25, 0.4, 0.8, 1.5, 3.0}) {
            for (auto from : kKinds) {
                double v = sindex::convert_effect_size(s, IndexKind::s, from, ctx);
                for (auto to : kKinds) {
                    double there = sindex::convert_effect_size(v, from, to, ctx);
                    double back = sindex::convert_effect_size(there, to, from, ctx);
                    CHECK(back == doctest::Approx(v).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("monotonicity of every conversion") {
    ConversionContext ctx{0.3};
    for (auto from : kKinds) {
        for (auto to : kKinds) {
            if (from == to) continue;
            double prev = -1.0;
            for (double s = 0.01; s < 2.0; s += 0.05) {
                double v = sindex::convert_effect_size(s, IndexKind::s, from, ctx);
                double conv = sindex::convert_effect_size(v, from, to, ctx);
                CHECK(conv > prev);
                prev = conv;
            }
        }
    }
}

TEST_CASE("d-row of the table is the two-means closed form with equal variances") {
    for (double d : {0.1, 0.4, 1.2}) {
        for (double sigma : {0.5, 1.0, 3.0}) {
            for (double pi1 : {0.2, 0.5, 0.8}) {
                double lhs = sindex::closed_form_two_means(d * sigma, 0.0, sigma * sigma,
                                                           sigma * sigma, pi1);
                double rhs = sindex::convert_effect_size(d, IndexKind::cohens_d,
                                                         IndexKind::s, {pi1});
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("classification thresholds") {
    using sindex::EffectCategory;
    CHECK(sindex::classify_effect(0.0) == EffectCategory::none_small);
    CHECK(sindex::classify_effect(0.1) == EffectCategory::none_small);
    CHECK(sindex::classify_effect(0.25) == EffectCategory::small_medium);
    CHECK(sindex::classify_effect(0.4) == EffectCategory::medium_large);
    CHECK(sindex::classify_effect(0.41) == EffectCategory::large);
    CHECK_THROWS_AS(sindex::classify_effect(-0.1), std::domain_error);
}

TEST_CASE("cohens d bias ratio") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> var_draw(0.1, 10.0);
    std::uniform_real_distribution<double> pi_draw(0.05, 0.95);
    for (int rep = 0; rep < 200; ++rep) {
        double v = var_draw(rng);
        double p = pi_draw(rng);
        // no-bias sets
        CHECK(sindex::cohens_d_bias_ratio(var_draw(rng), var_draw(rng), 0.5) ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(sindex::cohens_d_bias_ratio(v, v, p) == doctest::Approx(1.0).epsilon(1e-12));
        // reciprocal under variance swap at fixed pi1
        double v2 = var_draw(rng);
        CHECK(sindex::cohens_d_bias_ratio(v, v2, p) *
                  sindex::cohens_d_bias_ratio(v2, v, p) ==
              doctest::Approx(1.0).epsilon(1e-12));
        // point symmetry: swapping both variances and pi1 preserves the value
        CHECK(sindex::cohens_d_bias_ratio(v, v2, p) ==
              doctest::Approx(sindex::cohens_d_bias_ratio(v2, v, 1.0 - p)).epsilon(1e-12));
    }
    CHECK(sindex::cohens_d_bias_ratio(4.0, 1.0, 0.25) ==
          doctest::Approx(1.3628).epsilon(1e-4));
}

TEST_CASE("r2 bias ratio") {
    CHECK(sindex::r2_bias_ratio(0.7, 1.3, 2.1, 1.3 * 2.1) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sindex::r2_bias_ratio(0.0, 1.5, 2.0, 1.2) ==
          doctest::Approx(1.5 * 2.0 / 1.2).epsilon(1e-12));
    CHECK(sindex::r2_bias_ratio(1.0, 1.0, 1.0, 2.0) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(
        sindex::convert_effect_size(1.0, IndexKind::r_squared, IndexKind::s),
        std::domain_error);
    CHECK_THROWS_AS(
        sindex::convert_effect_size(-0.5, IndexKind::f_squared, IndexKind::s),
        std::domain_error);
    CHECK_THROWS_AS(sindex::convert_effect_size(0.5, IndexKind::cohens_d, IndexKind::s,
                                                {1.5}),
                    std::domain_error);
}
