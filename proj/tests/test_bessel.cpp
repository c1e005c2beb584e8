#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "disclab/bessel.hpp"

using namespace disclab;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double runif(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Test-side oracle: the ascending series with terms stored and summed
// smallest-first in long double.  Independent of the library's accumulation.
double oracle_series_j(double nu, double x) {
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    std::vector<long double> terms;
    long double t = std::exp(static_cast<long double>(nu) * std::log(0.5L * x) -
                             static_cast<long double>(std::lgamma(nu + 1.0)));
    const long double q = 0.25L * x * x;
    for (int m = 0; m < 400; ++m) {
        terms.push_back(t);
        t *= -q / ((m + 1.0L) * (nu + m + 1.0L));
        if (std::abs(t) < 1e-22L * std::abs(terms.front())) break;
    }
    long double s = 0.0L;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) s += *it;
    return static_cast<double>(s);
}

double oracle_j_half(double x) { return std::sqrt(2.0 / (kPi * x)) * std::sin(x); }
double oracle_j_3half(double x) {
    return std::sqrt(2.0 / (kPi * x)) * (std::sin(x) / x - std::cos(x));
}
double oracle_j_5half(double x) {
    return std::sqrt(2.0 / (kPi * x)) *
           ((3.0 / (x * x) - 1.0) * std::sin(x) - 3.0 * std::cos(x) / x);
}

}  // namespace

TEST_SUITE("bessel") {

TEST_CASE("J_0(0) = 1 and small-order values") {
    CHECK(bessel_j({0.0, 0.0}).value == 1.0);
    CHECK(bessel_j({2.5, 0.0}).value == 0.0);
}

TEST_CASE("half-integer closed form at pi/2") {
    // J_{1/2}(pi/2) = 2/pi
    const auto v = bessel_j({0.5, kPi / 2.0});
    CHECK(v.method == BesselMethod::closed_form_half_integer);
    CHECK(std::abs(v.value - 2.0 / kPi) < 1e-10);
}

TEST_CASE("first zero of J_0 located by the series oracle") {
    // bisection of the independent oracle brackets the root
    double a = 2.0, b = 3.0;
    for (int i = 0; i < 80; ++i) {
        const double m = 0.5 * (a + b);
        if (oracle_series_j(0.0, a) * oracle_series_j(0.0, m) <= 0.0)
            b = m;
        else
            a = m;
    }
    const double root = 0.5 * (a + b);
    CHECK(std::abs(root - 2.404825557695773) < 1e-12);
    CHECK(std::abs(bessel_j({0.0, 2.404825557695773}).value) < 1e-9);
}

TEST_CASE("series vs oracle on the lattice x <= 20") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const double nu = 30.0 * runif(rng);
        const double x = 20.0 * runif(rng);
        const auto got = bessel_j({nu, x});
        CHECK(std::abs(got.value - oracle_series_j(nu, x)) < 1e-9);
    }
}

TEST_CASE("cross-method agreement series vs integral representation") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 50; ++trial) {
        const double nu = 12.0 * runif(rng);
        const double x = 0.2 + 19.8 * runif(rng);
        const auto s = bessel_j_series({nu, x});
        const auto i = bessel_j_integral({nu, x});
        CHECK(std::abs(s.value - i.value) <= s.abs_error_bound + i.abs_error_bound + 1e-12);
    }
}

TEST_CASE("half-integer identity against explicit closed forms") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const double x = 0.1 + 49.9 * runif(rng);
        CHECK(std::abs(bessel_j({0.5, x}).value - oracle_j_half(x)) <= 1e-10);
        CHECK(std::abs(bessel_j({1.5, x}).value - oracle_j_3half(x)) <= 1e-10);
        CHECK(std::abs(bessel_j({2.5, x}).value - oracle_j_5half(x)) <= 1e-10);
    }
}

TEST_CASE("derivative values") {
    CHECK(bessel_j_prime({0.0, 0.0}).value == 0.0);
    CHECK(bessel_j_prime({1.0, 0.0}).value == doctest::Approx(0.5));
    // J'_{1/2}(pi/2) = -2/pi^2
    CHECK(std::abs(bessel_j_prime({0.5, kPi / 2.0}).value + 2.0 / (kPi * kPi)) < 1e-9);
    // J_0' = -J_1
    for (double x : {0.7, 3.3, 14.0, 55.0})
        CHECK(bessel_j_prime({0.0, x}).value ==
              doctest::Approx(-bessel_j({1.0, x}).value).epsilon(1e-10));
}

TEST_CASE("recurrence (Wronskian-type) check") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 40; ++trial) {
        const double nu = 1.0 + 60.0 * runif(rng);
        const double x = 1.0 + 80.0 * runif(rng);
        const double lhs = bessel_j({nu + 1.0, x}).value + bessel_j({nu - 1.0, x}).value;
        const double rhs = 2.0 * nu / x * bessel_j({nu, x}).value;
        const double scale = std::abs(lhs) + std::abs(rhs) + 1e-3;
        CHECK(std::abs(lhs - rhs) <= 1e-8 * scale);
    }
}

TEST_CASE("integer vector evaluation matches scalar route") {
    for (double x : {0.5, 7.0, 43.0, 412.0}) {
        const auto all = bessel_j_integer_all(40, x);
        for (int k : {0, 1, 5, 17, 40}) {
            const double ref = bessel_j({static_cast<double>(k), x}).value;
            CHECK(std::abs(all[static_cast<std::size_t>(k)] - ref) < 1e-10);
        }
    }
}

TEST_CASE("regime classification") {
    CHECK(classify_regime({100.0, 200.0}).tag == Regime::oscillatory);
    CHECK(classify_regime({100.0, 150.0}).tag == Regime::oscillatory);  // boundary tie
    const auto t = classify_regime({100.0, 100.0 + 2.0 * std::cbrt(100.0)});
    CHECK(t.tag == Regime::transition_above);
    CHECK(t.rho == doctest::Approx(2.0));
    CHECK(classify_regime({100.0, 10.0}).tag == Regime::subcritical);
    CHECK(classify_regime({100.0, 80.0}).tag == Regime::transition_below);
    CHECK_THROWS_AS(classify_regime({0.5, 1.0}), std::invalid_argument);
}

TEST_CASE("envelope magnitudes") {
    RegimeTag osc{Regime::oscillatory, 0.0};
    auto b = vdc_bound(osc, {100.0, 400.0});
    CHECK(b.j_bound == doctest::Approx(0.05));
    CHECK(b.jprime_bound == doctest::Approx(0.05));

    RegimeTag sub{Regime::subcritical, 0.0};
    b = vdc_bound(sub, {99.0, 10.0});
    CHECK(b.j_bound == doctest::Approx(0.01));
    CHECK(b.jprime_bound == doctest::Approx(1e-4));

    RegimeTag ta{Regime::transition_above, 16.0};
    b = vdc_bound(ta, {1000.0, 1000.0 + 16.0 * 10.0});
    CHECK(b.j_bound == doctest::Approx(0.05));  // 16^{-1/4} * 1000^{-1/3}
}

TEST_CASE("vdc scan produces bounded ratios and is sampling-stable") {
    const std::vector<double> nus = {8.0, 16.0};
    const auto rep1 = vdc_scan(nus, 96);
    const auto rep2 = vdc_scan(nus, 192);
    for (std::size_t i = 0; i < rep1.per_regime.size(); ++i) {
        CHECK(rep1.per_regime[i].max_ratio_j > 0.0);
        CHECK(rep1.per_regime[i].max_ratio_j < 5.0);
        const double a = rep1.per_regime[i].max_ratio_j;
        const double b = rep2.per_regime[i].max_ratio_j;
        CHECK(std::abs(a - b) / b < 0.05);
    }
}

TEST_CASE("prodj integral behavior") {
    // finite positive at the degenerate smallest case
    CHECK(prodj_integral(2.0, 2.0) > 0.0);
    // p=2 values within factor 1.5 of each other
    const double a = prodj_integral(64.0, 2.0);
    const double b = prodj_integral(256.0, 2.0);
    CHECK(std::max(a, b) / std::min(a, b) < 1.5);
    // p=4 grows when nu doubles
    CHECK(prodj_integral(128.0, 4.0) > prodj_integral(64.0, 4.0));
}

TEST_CASE("parameter errors") {
    CHECK_THROWS_AS(bessel_j({-1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(bessel_j({1.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(prodj_integral(1.0, 2.0), std::invalid_argument);
}

TEST_CASE("log gamma agrees with libm") {
    for (double x : {0.1, 0.9, 1.0, 2.5, 10.0, 101.5, 600.0})
        CHECK(log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
}

}  // TEST_SUITE
