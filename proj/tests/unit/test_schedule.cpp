#include <doctest.h>

#include <cmath>

#include "hgu/schedule.hpp"

using namespace hgu;

TEST_CASE("linear schedule endpoints and derived sequences") {
    const auto s = make_linear_schedule(1000, 1e-4, 0.02);
    CHECK(s.beta[0] == doctest::Approx(1e-4));
    CHECK(s.beta[999] == doctest::Approx(0.02));
    for (int t = 1; t < s.T; ++t) {
        CHECK(s.beta[t] >= s.beta[t - 1]);
        CHECK(s.alpha_bar[t] < s.alpha_bar[t - 1]);
        CHECK(s.alpha_bar[t] > 0.0);
        CHECK(s.alpha_bar[t] < 1.0);
    }
    CHECK(s.alpha_bar[0] == s.alpha[0]);

    // alpha_bar against a direct product
    double prod = 1.0;
    for (int t = 0; t < s.T; ++t) {
        prod *= 1.0 - s.beta[t];
        CHECK(s.alpha_bar[t] == doctest::Approx(prod).epsilon(1e-14));
    }
}

TEST_CASE("two-step schedule by hand") {
    auto s = make_linear_schedule(2, 0.1, 0.2);
    CHECK(s.alpha_bar[0] == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(s.alpha_bar[1] == doctest::Approx(0.72).epsilon(1e-15));

    const auto c1 = ancestral_coeffs(s, 1);
    CHECK(c1.c_xt == doctest::Approx(std::sqrt(0.8) * 0.1 / 0.28).epsilon(1e-14));
    CHECK(c1.c_x0 == doctest::Approx(std::sqrt(0.9) * 0.2 / 0.28).epsilon(1e-14));
    CHECK(c1.sigma == doctest::Approx(std::sqrt(0.2 * 0.1 / 0.28)).epsilon(1e-14));
}

TEST_CASE("single-step schedule") {
    const auto s = make_linear_schedule(1, 0.1, 0.1);
    CHECK(s.alpha_bar[0] == doctest::Approx(0.9).epsilon(1e-15));
}

TEST_CASE("t=0 step is deterministic identity on z0") {
    const auto s = make_linear_schedule(10, 1e-3, 0.1);
    const auto c = ancestral_coeffs(s, 0);
    CHECK(c.c_xt == 0.0);
    CHECK(c.c_x0 == 1.0);
    CHECK(c.sigma == 0.0);
}

TEST_CASE("schedule invariants") {
    const auto s = make_linear_schedule(50, 1e-4, 0.05);
    for (int t = 1; t < s.T; ++t) {
        const auto c = ancestral_coeffs(s, t);
        // posterior mean maps a noiseless abar-scaled signal one step back
        CHECK(c.c_xt * std::sqrt(s.alpha_bar[t]) + c.c_x0 ==
              doctest::Approx(std::sqrt(s.alpha_bar[t - 1])).epsilon(1e-12));
        CHECK(c.sigma * c.sigma <= s.beta[t] + 1e-15);
        CHECK(c.c_xt >= 0.0);
        CHECK(c.c_x0 >= 0.0);
    }
}

TEST_CASE("schedule validation") {
    CHECK_THROWS_AS(make_linear_schedule(0, 1e-4, 0.02), std::invalid_argument);
    CHECK_THROWS_AS(make_linear_schedule(10, 0.0, 0.02), std::invalid_argument);
    CHECK_THROWS_AS(make_linear_schedule(10, 0.3, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(make_linear_schedule(10, 0.1, 1.0), std::invalid_argument);
    const auto s = make_linear_schedule(5, 0.01, 0.02);
    CHECK_THROWS_AS(ancestral_coeffs(s, -1), std::invalid_argument);
    CHECK_THROWS_AS(ancestral_coeffs(s, 5), std::invalid_argument);
}
