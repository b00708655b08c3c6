#include <doctest.h>

#include <Eigen/Dense>

#include "sindex/effect_size.hpp"
#include "sindex/errors.hpp"

TEST_CASE("estimator formula") {
    auto a = sindex::estimate_effect_size(8.125, 100, 2, 1);
    CHECK(a.s_hat == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(a.s_sq_untruncated == doctest::Approx(0.0625).epsilon(1e-12));
    CHECK_FALSE(a.truncated);

    auto boundary = sindex::estimate_effect_size(2.0, 100, 2, 1);
    CHECK(boundary.s_hat == 0.0);
    CHECK_FALSE(boundary.truncated);  // T^2 == m is not strictly below

    auto zero = sindex::estimate_effect_size(0.0, 50, 3, 2);
    CHECK(zero.s_hat == 0.0);
    CHECK(zero.truncated);
    CHECK(zero.s_sq_untruncated < 0.0);

    CHECK_THROWS_AS(sindex::estimate_effect_size(1.0, 2, 2, 1), std::invalid_argument);
}

TEST_CASE("estimator monotone in T^2") {
    double prev = -1.0;
    for (double t2 = 0.0; t2 < 50.0; t2 += 0.5) {
        double s = sindex::estimate_effect_size(t2, 40, 3, 1).s_hat;
        CHECK(s >= prev);
        prev = s;
    }
}

TEST_CASE("closed form two means") {
    CHECK(sindex::closed_form_two_means(1.0, 1.0, 2.0, 3.0, 0.4) == 0.0);
    CHECK(sindex::closed_form_two_means(1.0, 0.0, 1.0, 1.0, 0.5) ==
          doctest::Approx(0.5).epsilon(1e-14));
    // d = 0.2 with equal unit variances and pi = 1/2 sits at S = 0.1
    CHECK(sindex::closed_form_two_means(0.2, 0.0, 1.0, 1.0, 0.5) ==
          doctest::Approx(0.1).epsilon(1e-14));
    CHECK_THROWS_AS(sindex::closed_form_two_means(1, 0, 0.0, 1.0, 0.5),
                    std::domain_error);
}

TEST_CASE("closed form simple linear regression") {
    CHECK(sindex::closed_form_slr(0.0, 1.0, 1.0) == 0.0);
    CHECK(sindex::closed_form_slr(0.3, 1.0, 1.0) == doctest::Approx(0.3).epsilon(1e-14));
    // homoskedastic: sigma_xy_sq = sigma_x_sq * sigma_sq
    CHECK(sindex::closed_form_slr(1.0, 1.0, 4.0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("logistic model-based index") {
    Eigen::VectorXd beta(1);
    beta << 0.0;
    Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(1, 1);
    CHECK(sindex::logistic_model_based_s(beta, eye) == 0.0);
    beta << 0.3;
    CHECK(sindex::logistic_model_based_s(beta, eye) ==
          doctest::Approx(0.3).epsilon(1e-14));

    Eigen::VectorXd b2(2);
    b2 << 1.0, 1.0;
    Eigen::MatrixXd i2 = 0.25 * Eigen::MatrixXd::Identity(2, 2);
    CHECK(sindex::logistic_model_based_s(b2, i2) ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

    Eigen::MatrixXd neg = -eye;
    CHECK_THROWS_AS(sindex::logistic_model_based_s(beta, neg), sindex::numeric_error);
}
