#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "disclab/tubes.hpp"

using namespace disclab;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double radius_of(const std::array<double, 3>& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

// distance between the axis line and the origin (2-D / 3-D via cross product)
double line_origin_distance(const Tube& t) {
    const double dx = t.q[0] - t.p[0], dy = t.q[1] - t.p[1], dz = t.q[2] - t.p[2];
    const double len = t.length();
    const double cx = t.p[1] * dz - t.p[2] * dy;
    const double cy = t.p[2] * dx - t.p[0] * dz;
    const double cz = t.p[0] * dy - t.p[1] * dx;
    return std::sqrt(cx * cx + cy * cy + cz * cz) / len;
}

}  // namespace

TEST_SUITE("tubes") {

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(validate(ShellSpec{2, 1.0, 1.0, 2.5, 1.0 / 64.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ShellSpec{2, 1.0, 1.0, 0.5, 0.5}), std::invalid_argument);
    CHECK_NOTHROW(validate(ShellSpec{2, 1.0, 1.0, 0.5, 1.0 / 64.0}));
    CHECK(ShellSpec{2, 8.0, 1.0, 7.0, 1.0 / 64.0}.thin());
    CHECK(!ShellSpec{2, 1.0, 1.0, 0.5, 1.0 / 64.0}.thin());
}

TEST_CASE("thick brush count is within a factor two of the packing count") {
    ShellSpec spec{2, 1.0, 1.0, 0.5, 1.0 / 64.0};
    const auto set = generate_brush(spec);
    const double packing = 2.0 * kPi * (spec.R + spec.Delta) / spec.eps;  // = 4 pi 64
    CHECK(static_cast<double>(set.tubes.size()) > packing / 2.0);
    CHECK(static_cast<double>(set.tubes.size()) < packing * 2.0);
}

TEST_CASE("generated tubes satisfy the geometric invariants") {
    for (ShellSpec spec : {ShellSpec{2, 1.0, 1.0, 0.5, 1.0 / 64.0},
                           ShellSpec{2, 8.0, 1.0, 7.0, 1.0 / 64.0},
                           ShellSpec{3, 1.0, 1.0, 0.5, 1.0 / 16.0}}) {
        const auto set = generate_brush(spec);
        REQUIRE(!set.tubes.empty());
        const double rho = spec.R + spec.Delta;
        for (const auto& t : set.tubes) {
            CHECK(std::abs(radius_of(t.p) - rho) < 1e-9);
            CHECK(std::abs(radius_of(t.q) - spec.R) < 1e-9);
            CHECK(std::abs(line_origin_distance(t) - spec.R0) < 1e-9);
            // points north
            const double north = spec.n == 2 ? t.q[1] - t.p[1] : t.q[2] - t.p[2];
            CHECK(north > 0.0);
            // crosses the shell
            CHECK(t.length() >= spec.Delta - 1e-12);
        }
    }
}

TEST_CASE("n=3 tube axes meet the NS axis") {
    ShellSpec spec{3, 1.0, 1.0, 0.5, 1.0 / 16.0};
    const auto set = generate_brush(spec);
    for (std::size_t i = 0; i < set.tubes.size(); i += 17) {
        const auto& t = set.tubes[i];
        // minimal distance between the axis line and the z-axis:
        // for lines in a meridian plane through the z-axis this vanishes
        const double dx = t.q[0] - t.p[0], dy = t.q[1] - t.p[1];
        const double cross = t.p[0] * dy - t.p[1] * dx;  // z-component of p x d
        CHECK(std::abs(cross) / t.length() < 1e-9);
    }
}

TEST_CASE("infeasible tangency radius fails") {
    // R0 = R + Delta exceeds the inner sphere: rejected at validation
    CHECK_THROWS_AS(generate_brush(ShellSpec{2, 1.0, 1.0, 2.0, 1.0 / 64.0}),
                    std::invalid_argument);
}

TEST_CASE("single tube histogram recovers the capsule area") {
    ShellSpec spec{2, 1.0, 1.0, 0.5, 1.0 / 32.0};
    auto set = generate_brush(spec);
    set.tubes.resize(1);
    const auto& t = set.tubes[0];
    const double w = 0.5 * t.eps;
    const double area = t.length() * 2.0 * w + kPi * w * w;
    const auto hist = overlap_histogram(set, t.eps / 4.0);
    REQUIRE(hist.levels() >= 1);
    CHECK(std::abs(hist.measure[0] - area) / area < 0.10);
    if (hist.levels() >= 2) CHECK(hist.measure[1] == 0.0);
}

TEST_CASE("two disjoint tubes give zero d=2 measure") {
    ShellSpec spec{2, 1.0, 1.0, 0.5, 1.0 / 32.0};
    auto set = generate_brush(spec);
    // pick a pair whose segments are provably farther apart than the width
    auto seg_dist = [](const Tube& a, const Tube& b) {
        double best = 1e300;
        for (int i = 0; i <= 32; ++i)
            for (int j = 0; j <= 32; ++j) {
                const double s = i / 32.0, t = j / 32.0;
                const double ax = a.p[0] + s * (a.q[0] - a.p[0]);
                const double ay = a.p[1] + s * (a.q[1] - a.p[1]);
                const double bx = b.p[0] + t * (b.q[0] - b.p[0]);
                const double by = b.p[1] + t * (b.q[1] - b.p[1]);
                best = std::min(best, std::hypot(ax - bx, ay - by));
            }
        return best;
    };
    TubeSet pair;
    pair.spec = spec;
    for (std::size_t j = 1; j < set.tubes.size(); ++j) {
        if (seg_dist(set.tubes.front(), set.tubes[j]) > 4.0 * spec.eps) {
            pair.tubes = {set.tubes.front(), set.tubes[j]};
            break;
        }
    }
    REQUIRE(pair.tubes.size() == 2);
    const auto hist = overlap_histogram(pair, spec.eps / 4.0);
    if (hist.levels() >= 2) CHECK(hist.measure[1] < 1e-12);
}

TEST_CASE("histogram is monotone and consistent with total tube area") {
    ShellSpec spec{2, 1.0, 1.0, 0.5, 1.0 / 64.0};
    const auto set = generate_brush(spec);
    const auto hist = overlap_histogram(set, spec.eps / 4.0);
    for (std::size_t d = 1; d < hist.levels(); ++d)
        CHECK(hist.measure[d] <= hist.measure[d - 1] + 1e-15);
    // sum over levels of measure(>= d) equals the rasterized integral of
    // sum chi_T, which is close to the total capsule area
    double integral = 0.0;
    for (std::size_t d = 1; d <= hist.levels(); ++d) integral += hist.measure[d - 1];
    double total_area = 0.0;
    const double w = 0.5 * spec.eps;
    for (const auto& t : set.tubes) total_area += t.length() * 2.0 * w + kPi * w * w;
    CHECK(std::abs(integral - total_area) / total_area < 0.10);
    // the brush overlaps several layers deep near the tangency circle
    CHECK(hist.levels() >= 3);
}

TEST_CASE("overlap exponent fit at coarse scale") {
    ShellSpec spec{2, 1.0, 1.0, 0.5, 1.0 / 64.0};
    const auto hist = overlap_histogram(generate_brush(spec), spec.eps / 4.0);
    const auto fit = fit_overlap_exponent(hist);
    CHECK(fit.ok);
    CHECK(fit.slope < -1.0);
    CHECK(fit.slope > -3.5);
}

TEST_CASE("fit needs at least four levels") {
    OverlapHistogram tiny;
    tiny.measure = {1.0, 0.5};
    CHECK_THROWS_AS(fit_overlap_exponent(tiny), std::domain_error);
}

TEST_CASE("thin shell ratio is finite and the d=1 sanity bound holds") {
    ShellSpec spec{2, 8.0, 1.0, 7.0, 1.0 / 32.0};
    const auto res = thin_shell_2d(spec, spec.eps / 4.0);
    CHECK(res.max_ratio > 0.0);
    CHECK(std::isfinite(res.max_ratio));
    // measure at d = 1 is at most the total area of the rectangles
    const auto set = generate_brush(spec);
    double total = 0.0;
    for (const auto& t : set.tubes)
        total += t.length() * spec.eps + kPi * spec.eps * spec.eps / 4.0;
    CHECK(res.hist.measure[0] <= total * 1.05);
}

TEST_CASE("raster guardrails") {
    ShellSpec spec{2, 1.0, 1.0, 0.5, 1.0 / 64.0};
    const auto set = generate_brush(spec);
    CHECK_THROWS_AS(overlap_histogram(set, spec.eps), std::invalid_argument);
}

}  // TEST_SUITE
