#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "disclab/bessel.hpp"
#include "disclab/restriction.hpp"

using namespace disclab;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_SUITE("restriction") {

TEST_CASE("extension of a single mode vanishes at the Bessel zero") {
    // n = 2, a0 = 1: G(r) = 2 pi |J_0(2 pi r)|; zero at r = j_{0,1}/(2 pi)
    HarmonicCoefficients a;
    a.n = 2;
    a.a = {cplx(1.0, 0.0)};
    const double r0 = 2.404825557695773 / (2.0 * kPi);
    RadialGrid g;
    g.nodes = {0.5 * r0, r0, 2.0 * r0};
    g.weights = {1.0, 1.0, 1.0};
    g.r_max = g.nodes.back();
    const auto prof = extension_profile(a, g);
    CHECK(std::abs(prof.values[1]) < 1e-8);
    CHECK(std::abs(prof.values[0]) > 0.1);

    // zero coefficients give the zero profile; scaling is 1-homogeneous
    HarmonicCoefficients z;
    z.n = 2;
    z.a = {cplx(0.0, 0.0), cplx(0.0, 0.0)};
    for (const auto& v : extension_profile(z, g).values) CHECK(std::abs(v) == 0.0);

    HarmonicCoefficients a3;
    a3.n = 2;
    a3.a = {cplx(0.0, 3.0)};
    const auto p3 = extension_profile(a3, g);
    CHECK(std::abs(p3.values[0]) ==
          doctest::Approx(3.0 * std::abs(prof.values[0])).epsilon(1e-12));
}

TEST_CASE("parseval-type ring identity at q = 2 surrogate") {
    // for one mode the integrand at exponent 2 is exactly
    // 4 pi^2 J_nu(2 pi r)^2 r^{2-n} r^{n-1}; compare against direct quadrature
    HarmonicCoefficients a;
    a.n = 2;
    a.a = {cplx(0.0, 0.0), cplx(1.0, 0.0)};  // single k = 1 mode
    const double M = 4.0;
    const std::size_t cnt = 4096;
    double direct = 0.0, prev = 0.0;
    for (std::size_t i = 0; i <= cnt; ++i) {
        const double r = M + M * static_cast<double>(i) / cnt;
        const double j = bessel_j({1.0, 2.0 * kPi * r}).value;
        const double f = 4.0 * kPi * kPi * j * j * r;
        if (i > 0) direct += 0.5 * (prev + f) * (M / cnt);
        prev = f;
    }
    // the q -> 2 limit of the norm integrand equals G(r)^2 r^{n-1}
    const std::size_t cnt2 = 4096;
    double viaG = 0.0, prevG = 0.0;
    RadialGrid g;
    g.nodes.resize(cnt2 + 1);
    g.weights.assign(cnt2 + 1, 0.0);
    for (std::size_t i = 0; i <= cnt2; ++i) g.nodes[i] = M + M * static_cast<double>(i) / cnt2;
    g.r_max = g.nodes.back();
    const auto prof = extension_profile(a, g);
    for (std::size_t i = 0; i <= cnt2; ++i) {
        const double f = std::norm(prof.values[i]) * g.nodes[i];
        if (i > 0) viaG += 0.5 * (prevG + f) * (M / cnt2);
        prevG = f;
    }
    CHECK(std::abs(direct - viaG) / direct < 1e-6);
}

TEST_CASE("extension mixed norm converges at q = 5 and flags q = 4") {
    HarmonicCoefficients a;
    a.n = 2;
    a.a = {cplx(1.0, 0.0)};
    const auto n5 = extension_mixed_norm(a, 5.0, 48.0);
    CHECK(!n5.divergence_flag);
    CHECK(n5.value > 0.0);
    const auto n5b = extension_mixed_norm(a, 5.0, 96.0);
    CHECK(std::abs(n5b.value - n5.value) / n5.value < 0.05);

    const auto n4 = extension_mixed_norm(a, 4.0, 48.0);
    CHECK(n4.divergence_flag);  // tail ~ r^{-1}
}

TEST_CASE("inside-range multi-mode norm is finite") {
    HarmonicCoefficients a = HarmonicCoefficients::flat(4, 2);
    const auto n8 = extension_mixed_norm(a, 8.0, 32.0);
    CHECK(n8.value > 0.0);
    CHECK(!n8.divergence_flag);
}

TEST_CASE("dyadic block decomposition is a partition of the integrand") {
    HarmonicCoefficients a = HarmonicCoefficients::flat(8, 2);
    const auto rep = dyadic_block_scan(a, 6.0, {32.0, 64.0, 128.0});
    for (const auto& row : rep.rows) {
        // with kmax = 8 < M/2 every degree lands in block 1
        CHECK(row.i2 == 0.0);
        CHECK(row.i3 == 0.0);
        CHECK(row.i_m == doctest::Approx(row.i1).epsilon(1e-10));
    }
}

TEST_CASE("flat low-degree coefficients give the oscillatory block slope") {
    HarmonicCoefficients a = HarmonicCoefficients::flat(8, 2);
    const auto rep = dyadic_block_scan(a, 6.0, {32.0, 64.0, 128.0, 256.0});
    CHECK(rep.fit1.ok);
    CHECK(std::abs(rep.fit1.slope - (4.0 - 6.0) / 2.0) < 0.15);
}

TEST_CASE("transition-bin diagnostic tracks the Airy-scale exponent") {
    const auto fit = transition_bin_scan(6.0, {32.0, 64.0, 128.0});
    CHECK(fit.ok);
    CHECK(std::abs(fit.slope - (4.0 - 6.0) / 3.0) < 0.2);
}

TEST_CASE("g_alpha bins partition the critical degrees") {
    HarmonicCoefficients a = HarmonicCoefficients::flat(300, 2);
    const auto bins = g_alpha_bins(a, 64.0);
    double total = 0.0;
    for (double b : bins) total += b;
    // degrees in [M/2, M/2 + nbins M^{1/3}) are covered
    CHECK(total > 0.0);
    CHECK(total <= 301.0);
}

TEST_CASE("general dimension block signs") {
    HarmonicCoefficients a3 = HarmonicCoefficients::flat(6, 3);
    const auto above = general_dimension_block(a3, 4.0, {24.0, 48.0, 96.0});
    CHECK(above.slope < 0.0);  // q = 4 > 2n/(n-1) = 3
    const auto below = general_dimension_block(a3, 2.9, {24.0, 48.0, 96.0});
    CHECK(below.slope > -0.05);  // at/below the threshold: no decay

    // n = 2 consistency with the dyadic scan totals
    HarmonicCoefficients a2 = HarmonicCoefficients::flat(8, 2);
    const auto g2 = general_dimension_block(a2, 6.0, {32.0, 64.0, 128.0});
    const auto d2 = dyadic_block_scan(a2, 6.0, {32.0, 64.0, 128.0});
    for (std::size_t i = 0; i < 3; ++i) {
        // same weight r^{(1-n/2)q+n-1} = r at n = 2, rescaled variable
        CHECK(g2.values[i] == doctest::Approx(d2.rows[i].i_m).epsilon(1e-9));
    }
}

TEST_CASE("parameter errors") {
    HarmonicCoefficients a = HarmonicCoefficients::flat(4, 2);
    CHECK_THROWS_AS(dyadic_block_scan(a, 3.0, {16.0, 32.0, 64.0}), std::invalid_argument);
    CHECK_THROWS_AS(dyadic_block_scan(a, 6.0, {16.0, 32.0}), std::invalid_argument);
    CHECK_THROWS_AS(extension_mixed_norm(a, 1.5, 10.0), std::invalid_argument);
}

}  // TEST_SUITE
