#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "disclab/grid.hpp"
#include "disclab/planar.hpp"

using namespace disclab;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

GridField2D lattice_mode(std::size_t N, double L, int mx, int my) {
    return GridField2D::sample(N, L, [&](double x, double y) {
        const double ph = 2.0 * kPi * (mx * x + my * y) / L;
        return cplx(std::cos(ph), std::sin(ph));
    });
}

double max_abs_diff(const GridField2D& a, const GridField2D& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

}  // namespace

TEST_SUITE("planar") {

TEST_CASE("transform pair preserves the planar l2 norm") {
    auto f = GridField2D::sample(64, 8.0, [](double x, double y) {
        return cplx(std::exp(-(x * x + y * y)), 0.1 * x);
    });
    auto g = f;
    fft2d(g.values, g.N, false);
    fft2d(g.values, g.N, true);
    CHECK(max_abs_diff(f, g) < 1e-12);

    double direct = 0.0, spectral = 0.0;
    auto hat = f;
    fft2d(hat.values, hat.N, false);
    for (const auto& v : f.values) direct += std::norm(v);
    for (const auto& v : hat.values) spectral += std::norm(v);
    spectral /= static_cast<double>(f.N) * static_cast<double>(f.N);
    CHECK(direct == doctest::Approx(spectral).epsilon(1e-10));
}

TEST_CASE("disc multiplier is idempotent when the ring misses the lattice") {
    auto f = GridField2D::sample(64, 8.0, [](double x, double y) {
        return cplx(std::exp(-(x * x + y * y) / 2.0), 0.0);
    });
    const auto sym = MultiplierSymbol::disc(0.9);  // 0.9*8 = 7.2: no lattice points on the ring
    const auto t1 = apply_multiplier(sym, f);
    const auto t2 = apply_multiplier(sym, t1);
    CHECK(max_abs_diff(t1, t2) < 1e-12);
}

TEST_CASE("disc beyond Nyquist is the identity") {
    auto f = GridField2D::sample(32, 4.0, [](double x, double y) {
        return cplx(std::sin(x + 0.3) * std::cos(y), std::cos(2 * x - y));
    });
    const auto out = apply_multiplier(MultiplierSymbol::disc(100.0), f);
    CHECK(max_abs_diff(f, out) < 1e-12);
}

TEST_CASE("directional Hilbert applied twice negates off-line modes") {
    const std::size_t N = 64;
    const double L = 8.0;
    auto f = lattice_mode(N, L, 3, 2);
    const auto sym = MultiplierSymbol::directional_hilbert(0.0, 1.0);
    const auto h2 = apply_multiplier(sym, apply_multiplier(sym, f));
    for (std::size_t i = 0; i < f.values.size(); ++i)
        CHECK(std::abs(h2.values[i] + f.values[i]) < 1e-12);

    // a mode on the null line is annihilated (sign(0) -> 0)
    auto g = lattice_mode(N, L, 5, 0);
    const auto hg = apply_multiplier(sym, g);
    for (const auto& v : hg.values) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("mixed norm of the unit-ball indicator approximates sqrt(pi)") {
    auto f = GridField2D::sample(512, 8.0, [](double x, double y) {
        return cplx(x * x + y * y <= 1.0 ? 1.0 : 0.0, 0.0);
    });
    const double v = mixed_norm_grid(f, 2.0);
    CHECK(std::abs(v - std::sqrt(kPi)) / std::sqrt(kPi) < 0.02);
    CHECK(mixed_norm_grid(GridField2D(64, 8.0), 2.0) == 0.0);
}

TEST_CASE("radial fields agree with the core mixed norm") {
    auto f = GridField2D::sample(256, 16.0, [](double x, double y) {
        const double r2 = x * x + y * y;
        return cplx(std::exp(-r2 / 2.0), 0.0);
    });
    const double planar = mixed_norm_grid(f, 3.0);

    auto g = make_grid(RadialGrid::Scheme::linear, 8.0, 2049);
    ModeFunction mf;
    mf.n = 2;
    // the k=0 mode profile against the normalized harmonic carries sqrt(2 pi)
    mf.insert({0, 1, 2}, RadialProfile::sample(g, [](double r) {
                  return cplx(std::sqrt(2.0 * kPi) * std::exp(-r * r / 2.0), 0.0);
              }));
    NormParams params;
    params.p = 3.0;
    params.n = 2;
    const double core = mixed_norm(mf, params);
    CHECK(std::abs(planar - core) / core < 0.02);
}

TEST_CASE("modulation covariance of the shifted ball") {
    const std::size_t N = 64;
    const double L = 8.0;
    auto f = GridField2D::sample(N, L, [](double x, double y) {
        return cplx(std::exp(-(x * x + y * y)), 0.2);
    });
    const double cx = 2.0 / L, cy = -5.0 / L;  // lattice frequency
    const auto direct = apply_multiplier(MultiplierSymbol::ball_shifted(1.3, cx, cy), f);
    auto conj = modulate(apply_multiplier(MultiplierSymbol::disc(1.3), modulate(f, -cx, -cy)),
                         cx, cy);
    CHECK(max_abs_diff(direct, conj) < 1e-10);
}

TEST_CASE("ball to half-plane limit") {
    const std::size_t N = 128;
    const double L = 8.0;
    // Gaussian: errors nonincreasing down to the quadrature floor
    auto f = GridField2D::sample(N, L, [](double x, double y) {
        return cplx(std::exp(-kPi * (x * x + y * y)), 0.0);
    });
    const auto errs = ball_to_halfplane_limit(f, 6, 0.0, 1.0);
    REQUIRE(errs.size() == 6);
    for (std::size_t k = 1; k < errs.size(); ++k) CHECK(errs[k] <= errs[k - 1] * 1.02 + 1e-12);

    // spectrum at xi.omega = -2 <= -1: exact agreement once R_k >= B^2
    auto g = lattice_mode(N, L, 3, -2 * static_cast<int>(L));
    const auto errs2 = ball_to_halfplane_limit(g, 4, 0.0, 1.0);
    const double B2 = (3.0 / L) * (3.0 / L) + 4.0;
    for (int k = 1; k <= 4; ++k)
        if (std::pow(2.0, k) >= B2) CHECK(errs2[static_cast<std::size_t>(k - 1)] < 1e-12);

    const auto zero = ball_to_halfplane_limit(GridField2D(64, 8.0), 3, 0.0, 1.0);
    for (double e : zero) CHECK(e == 0.0);
}

TEST_CASE("meyer vector test") {
    const std::size_t N = 128;
    const double L = 16.0;
    auto bump = GridField2D::sample(N, L, [](double x, double y) {
        return cplx(std::exp(-2.0 * (x * x + y * y)), 0.0);
    });
    DirectionSet one{{{0.0, 1.0}}};
    const auto res = meyer_vector_test(one, {bump}, 2.0);
    CHECK(!res.empty);
    CHECK(res.ratio <= 1.02);

    DirectionSet bad{{{0.0, 2.0}}};
    CHECK_THROWS_AS(meyer_vector_test(bad, {bump}, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(meyer_vector_test(DirectionSet{}, {}, 2.0), std::invalid_argument);

    const auto flagged = meyer_vector_test(one, {GridField2D(64, 8.0)}, 2.0);
    CHECK(flagged.empty);
}

TEST_CASE("riesz transform ratio is at most one on gaussians") {
    const std::size_t N = 128;
    const double L = 16.0;
    std::vector<GridField2D> trials;
    trials.push_back(GridField2D::sample(N, L, [](double x, double y) {
        return cplx(std::exp(-(x * x + y * y)), 0.0);
    }));
    trials.push_back(GridField2D::sample(N, L, [](double x, double y) {
        return cplx(std::exp(-2.0 * ((x - 1) * (x - 1) + y * y)), 0.0);
    }));
    // Omega = cos(theta): c_{1} = c_{-1} = 1/2
    std::vector<OmegaCoeff> riesz = {{1, cplx(0.5, 0.0)}, {-1, cplx(0.5, 0.0)}};
    const auto res = singular_integral_test(riesz, 2.0, trials);
    CHECK(!res.empty);
    CHECK(res.ratio <= 1.02);

    // zero mean enforced
    std::vector<OmegaCoeff> bad = {{0, cplx(1.0, 0.0)}};
    CHECK_THROWS_AS(singular_integral_test(bad, 2.0, trials), std::invalid_argument);

    // Omega = 0 gives T = 0
    const auto zero = singular_integral_test({}, 2.0, trials);
    CHECK(zero.ratio == 0.0);
}

TEST_CASE("riesz symbol is -i xi_1 / |xi|") {
    std::vector<OmegaCoeff> riesz = {{1, cplx(0.5, 0.0)}, {-1, cplx(0.5, 0.0)}};
    const auto sym = MultiplierSymbol::homogeneous(riesz);
    const cplx v = symbol_value(sym, 3.0, 4.0);
    CHECK(v.real() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(std::abs(v.imag() + 3.0 / 5.0) < 1e-12);
}

TEST_CASE("cube decay at reduced desk scale") {
    // short fit window keeps the torus-wrap bias on the kernel tail small
    const auto res = cube_decay_experiment(2.0, 3.0, 6.0, 512, 32.0);
    CHECK(res.fit_ok);
    CHECK(std::abs(res.slope + 1.5) < 0.25);
    CHECK(res.aliasing < 0.5);  // indicator reported
    CHECK_THROWS_AS(cube_decay_experiment(2.0, 4.0, 20.0, 256, 32.0), std::invalid_argument);
}

TEST_CASE("field validation") {
    GridField2D bad(48, 8.0);  // not a power of two
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

}  // TEST_SUITE
