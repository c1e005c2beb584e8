#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "disclab/weights.hpp"

using namespace disclab;

namespace {

double runif(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

WeightSamples power_weight(double alpha, std::size_t cells) {
    return WeightSamples::sample(1.0, cells,
                                 [&](double x) { return std::pow(std::abs(x), alpha); });
}

}  // namespace

TEST_SUITE("weights") {

TEST_CASE("constant weight has characteristic one") {
    auto w = WeightSamples::sample(1.0, 512, [](double) { return 1.0; });
    const auto res = ap_characteristic(w, 2.0);
    CHECK(res.characteristic == doctest::Approx(1.0).epsilon(1e-12));
    for (double v : res.refinement_trace) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    // Jensen: characteristic >= 1 always
    std::mt19937_64 rng(11);
    for (int t = 0; t < 5; ++t) {
        auto r = WeightSamples::sample(1.0, 128, [&](double) { return 0.1 + runif(rng); });
        CHECK(ap_characteristic(r, 1.7).characteristic >= 1.0 - 1e-12);
    }
}

TEST_CASE("one-sided odd-harmonic closed form bounds |x| at p = 2 from below") {
    // the interval [0, mh] of the right-half cells gives exactly
    // sum_{j<=m} 1/(2j-1); the exhaustive sup dominates it (the true
    // maximizer hangs slightly over the origin)
    const std::size_t cells = 4096;
    auto w = power_weight(1.0, cells);
    const auto res = ap_characteristic(w, 2.0);
    double closed = 0.0;
    for (std::size_t j = 1; j <= cells / 2; ++j)
        closed += 1.0 / (2.0 * static_cast<double>(j) - 1.0);
    CHECK(res.characteristic >= closed - 1e-9);
    CHECK(res.best_lo < cells / 2);
    CHECK(res.best_hi > cells / 2);
}

TEST_CASE("exhaustive sup matches a brute-force oracle on small grids") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 6; ++trial) {
        const double p = 1.5 + 2.0 * runif(rng);
        auto w = WeightSamples::sample(1.0, 48, [&](double) { return 0.05 + runif(rng); });
        const auto res = ap_characteristic(w, p);
        double oracle = 0.0;
        for (std::size_t a = 0; a < 48; ++a)
            for (std::size_t b = a + 1; b <= 48; ++b) {
                double sw = 0.0, ss = 0.0;
                for (std::size_t i = a; i < b; ++i) {
                    sw += w.values[i];
                    ss += std::pow(w.values[i], -1.0 / (p - 1.0));
                }
                const double len = static_cast<double>(b - a);
                oracle = std::max(oracle, (sw / len) * std::pow(ss / len, p - 1.0));
            }
        CHECK(res.characteristic == doctest::Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("|x|^{1/2} at p=2 is refinement-stable") {
    double prev = 0.0;
    for (std::size_t cells : {1024, 2048, 4096}) {
        const double c = ap_characteristic(power_weight(0.5, cells), 2.0).characteristic;
        if (prev > 0.0) CHECK(std::abs(c - prev) / prev < 0.05);
        prev = c;
    }
}

TEST_CASE("duality identity on random step weights") {
    std::mt19937_64 rng(77);
    const double p = 2.6, pc = p / (p - 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<double> steps(8);
        for (auto& s : steps) s = 0.2 + 2.0 * runif(rng);
        auto w = WeightSamples::sample(1.0, 256, [&](double x) {
            const std::size_t k =
                std::min<std::size_t>(7, static_cast<std::size_t>((x + 1.0) * 4.0));
            return steps[k];
        });
        WeightSamples dual = w;
        for (auto& v : dual.values) v = std::pow(v, 1.0 - pc);  // w^{-1/(p-1)}
        const double a = std::pow(ap_characteristic(w, p).characteristic, 1.0 / p);
        const double b = std::pow(ap_characteristic(dual, pc).characteristic, 1.0 / pc);
        CHECK(a == doctest::Approx(b).epsilon(1e-9));
    }
}

TEST_CASE("a1 construction basics") {
    auto one = WeightSamples::sample(1.0, 256, [](double) { return 1.0; });
    const auto w1 = a1_construct(one, 2.0);
    for (double v : w1.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a1_lemma_check(one, 2.0) == doctest::Approx(1.0).epsilon(1e-12));

    // chi_[0,1] on [-4,4]: at x = 2 the maximal average is 1/2
    auto chi = WeightSamples::sample(4.0, 1024, [](double x) {
        return (x >= 0.0 && x <= 1.0) ? 1.0 : 1e-300;
    });
    const auto W = a1_construct(chi, 2.0);
    const std::size_t i2 = static_cast<std::size_t>((2.0 + 4.0) / 8.0 * 1024.0);
    CHECK(std::abs(W.values[i2] - std::sqrt(0.5)) < 0.02);
    // M f >= f pointwise
    for (std::size_t i = 0; i < chi.cells(); ++i) CHECK(W.values[i] >= chi.values[i] - 1e-12);

    CHECK_THROWS_AS(a1_construct(one, 0.5), std::invalid_argument);
}

TEST_CASE("a1 construct is monotone and 1-homogeneous") {
    std::mt19937_64 rng(13);
    auto w = WeightSamples::sample(1.0, 256, [&](double) { return 0.1 + runif(rng); });
    WeightSamples larger = w, scaled = w;
    for (auto& v : larger.values) v += 0.3;
    for (auto& v : scaled.values) v *= 3.0;
    const auto a = a1_construct(w, 1.5);
    const auto b = a1_construct(larger, 1.5);
    const auto c = a1_construct(scaled, 1.5);
    for (std::size_t i = 0; i < w.cells(); ++i) {
        CHECK(b.values[i] >= a.values[i] - 1e-12);
        CHECK(c.values[i] == doctest::Approx(3.0 * a.values[i]).epsilon(1e-12));
    }
}

TEST_CASE("a1 lemma ratios are stable under refinement") {
    double prev = 0.0;
    for (std::size_t cells : {512, 1024, 2048}) {
        auto chi = WeightSamples::sample(4.0, cells, [](double x) {
            return (x >= 0.0 && x <= 1.0) ? 1.0 : 1e-300;
        });
        const double r = a1_lemma_check(chi, 2.0);
        if (prev > 0.0) CHECK(std::abs(r - prev) / prev < 0.10);
        prev = r;
    }
}

TEST_CASE("power weight scan classifies the A_p range") {
    const auto rows =
        power_weight_range_scan(2.0, {-0.5, 0.0, 0.5, -1.1, 1.5}, 256, 3, 1.5);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].cls == WeightClass::stable);   // alpha = -0.5
    CHECK(rows[1].cls == WeightClass::stable);   // alpha = 0
    CHECK(rows[2].cls == WeightClass::stable);   // alpha = 0.5
    CHECK(rows[3].cls == WeightClass::divergent);  // alpha = -1.1 (outside)
    CHECK(rows[4].cls == WeightClass::divergent);  // alpha = 1.5 (outside)
}

TEST_CASE("appendix sandwich inequality holds at sampled points") {
    const auto rows = power_weight_range_scan(2.0, {-0.5}, 256, 2, 1.5);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].sandwich_checked);
    CHECK(rows[0].sandwich_ok);
}

TEST_CASE("validation") {
    WeightSamples bad;
    bad.X = 1.0;
    bad.values = {1.0, -0.5, 2.0};
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    CHECK_THROWS_AS(ap_characteristic(bad, 2.0), std::invalid_argument);
}

}  // TEST_SUITE
