#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "micromarket/pricing.hpp"
#include "micromarket/rng.hpp"

using namespace micromarket;

namespace {

MicroParams random_valid_params(Rng& rng) {
    for (;;) {
        MicroParams p;
        p.rho = 0.2 + 4.0 * rng.uniform();
        p.k = 0.05 + 0.8 * rng.uniform();
        p.s_liquidity = 0.1 + 9.9 * rng.uniform();
        p.p1 = 0.5 * rng.uniform();
        p.p2 = 0.5 * rng.uniform();
        p.lambda = 0.2 + 2.0 * rng.uniform();
        p.gamma = 0.2 + 2.0 * rng.uniform();
        const double rk2 = (p.rho * p.k) * (p.rho * p.k);
        const double composite = rk2 * (p.p1 * p.p1 * p.lambda * p.lambda +
                                        p.p2 * p.p2 * p.gamma * p.gamma);
        if (composite < 0.98) return p;
    }
}

}  // namespace

TEST_CASE("balanced book splits S evenly") {
    MicroParams p;
    const auto v = order_volumes({0.0}, {0.0}, 0.0, p);
    CHECK(v.buy == 0.5 * p.s_liquidity);
    CHECK(v.sell == 0.5 * p.s_liquidity);
}

TEST_CASE("shock moves volume between the sides") {
    MicroParams p;
    p.s_liquidity = 1.0;
    p.k = 0.4;
    p.p1 = 0.0;
    p.p2 = 0.0;
    const auto v = order_volumes({0.0}, {0.0}, 1.0, p);
    CHECK(v.buy == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(v.sell == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("utility signal shifts the book") {
    MicroParams p;
    p.s_liquidity = 1.0;
    p.p1 = 0.2;
    p.p2 = 0.0;
    const auto v = order_volumes({1.0}, {0.0}, 0.0, p);
    CHECK(v.buy == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(v.sell == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("volume conservation holds to machine tolerance") {
    Rng rng(2024);
    for (int i = 0; i < 5000; ++i) {
        const MicroParams p = random_valid_params(rng);
        const UtilityValue uf{3.0 * rng.normal()};
        const UtilityValue ua{3.0 * rng.normal()};
        const double eps = rng.normal();
        const auto v = order_volumes(uf, ua, eps, p);
        CHECK(std::fabs(v.buy + v.sell - p.s_liquidity) <=
              1e-12 * std::max(1.0, p.s_liquidity));
    }
}

TEST_CASE("step return on the ratio form") {
    MicroParams p;
    p.rho = 4.0;
    CHECK(step_return({0.4, 0.4}, p) == 0.0);
    CHECK(step_return({0.7, 0.3}, p) == doctest::Approx(1.6).epsilon(1e-12));
    CHECK(step_return({0.3, 0.7}, p) == doctest::Approx(-1.6).epsilon(1e-12));
    CHECK_THROWS_AS((void)step_return({0.5, -0.5}, p), std::domain_error);
}

TEST_CASE("swapping buy and sell negates the return exactly") {
    Rng rng(5);
    MicroParams p;
    for (int i = 0; i < 2000; ++i) {
        const double buy = rng.normal();
        const double sell = rng.normal();
        if (buy + sell == 0.0) continue;
        CHECK(step_return({buy, sell}, p) == -step_return({sell, buy}, p));
    }
}

TEST_CASE("closed form matches hand-computed values") {
    MicroParams p;
    p.rho = 4.0;
    p.k = 0.4;
    p.p1 = 0.0;
    p.p2 = 0.0;
    CHECK(step_return_closed_form({0.0}, {0.0}, 0.0, p) == 0.0);
    CHECK(step_return_closed_form({0.0}, {0.0}, 1.0, p) ==
          doctest::Approx(1.6).epsilon(1e-12));

    p.p1 = 0.2;
    p.p2 = 0.4;
    CHECK(step_return_closed_form({0.093147}, {-0.5}, 0.0, p) ==
          doctest::Approx(-0.7254824).epsilon(1e-6));
}

TEST_CASE("conditional mean is the shock-free part of the closed form") {
    MicroParams p;
    p.p1 = 0.2;
    p.p2 = 0.4;
    CHECK(expected_step_return({0.0}, {0.0}, p) == 0.0);
    CHECK(step_return_closed_form({0.7}, {-0.3}, 0.0, p) ==
          expected_step_return({0.7}, {-0.3}, p));
}

TEST_CASE("ratio form and closed form agree on random inputs") {
    Rng rng(77);
    for (int i = 0; i < 5000; ++i) {
        const MicroParams p = random_valid_params(rng);
        const UtilityValue uf{2.0 * rng.normal()};
        const UtilityValue ua{2.0 * rng.normal()};
        const double eps = rng.normal();
        const double via_ratio = step_return(order_volumes(uf, ua, eps, p), p);
        const double closed = step_return_closed_form(uf, ua, eps, p);
        CHECK(std::fabs(via_ratio - closed) <= 1e-12 * std::max(1.0, std::fabs(closed)));
    }
}

TEST_CASE("return does not depend on the order scale S") {
    Rng rng(78);
    for (int i = 0; i < 5000; ++i) {
        MicroParams p = random_valid_params(rng);
        const UtilityValue uf{2.0 * rng.normal()};
        const UtilityValue ua{2.0 * rng.normal()};
        const double eps = rng.normal();
        const double r_s = step_return(order_volumes(uf, ua, eps, p), p);
        p.s_liquidity = 1.0;
        const double r_unit = step_return(order_volumes(uf, ua, eps, p), p);
        CHECK(std::fabs(r_s - r_unit) <= 1e-12 * std::max(1.0, std::fabs(r_unit)));
    }
}
