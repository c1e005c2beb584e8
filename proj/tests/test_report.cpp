#include "doctest.h"

#include <stdexcept>

#include "disclab/report.hpp"

using namespace disclab;

namespace {

// trimmed parameters keep the suite cheap enough for a unit test
ExperimentConfig cheap_config(const std::string& suite) {
    ExperimentConfig cfg;
    cfg.suite = suite;
    cfg.seed = 7;
    cfg.out_dir = "report_test_out";
    cfg.params["vdc_nu_max"] = 32.0;
    cfg.params["vdc_samples"] = 96.0;
    cfg.params["prodj_nu_max"] = 128.0;
    return cfg;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("unknown suite and unknown parameter are rejected") {
    ExperimentConfig cfg;
    cfg.suite = "foo";
    CHECK_THROWS_AS(run_suite(cfg), std::invalid_argument);
    ExperimentConfig cfg2;
    cfg2.suite = "bessel-check";
    cfg2.params["no_such_knob"] = 1.0;
    CHECK_THROWS_AS(run_suite(cfg2), std::invalid_argument);
}

TEST_CASE("fixed seed and config give byte-identical serializations") {
    const auto cfg = cheap_config("bessel-check");
    const auto r1 = run_suite(cfg);
    const auto r2 = run_suite(cfg);
    CHECK(report_to_json(r1, false).dump(2) == report_to_json(r2, false).dump(2));
    CHECK(r1.checks.size() >= 3);
}

TEST_CASE("identical reports show zero drift") {
    const auto rep = run_suite(cheap_config("bessel-check"));
    const auto j = report_to_json(rep, false);
    const auto drift = compare_reports(j, j);
    CHECK(!drift.any_flagged());
    for (const auto& row : drift.rows) CHECK(row.drift == 0.0);
}

TEST_CASE("perturbed values and missing checks are flagged") {
    const auto rep = run_suite(cheap_config("bessel-check"));
    auto base = report_to_json(rep, false);
    auto cur = base;
    // perturb one observed value beyond any tolerance
    cur["checks"][0]["observed"].begin().value()["value"] =
        cur["checks"][0]["observed"].begin().value()["value"].get<double>() + 100.0;
    const auto drift = compare_reports(base, cur);
    CHECK(drift.any_flagged());

    auto missing = base;
    missing["checks"].erase(0);
    const auto drift2 = compare_reports(base, missing);
    CHECK(drift2.structural_mismatch);

    auto other = base;
    other["config"]["seed"] = 8;
    CHECK_THROWS_AS(compare_reports(base, other), std::invalid_argument);
}

TEST_CASE("report json follows the documented schema") {
    const auto rep = run_suite(cheap_config("bessel-check"));
    const auto j = report_to_json(rep, false);
    CHECK(j.contains("suite"));
    CHECK(j.contains("config"));
    CHECK(j.contains("checks"));
    CHECK(j.contains("runtime_seconds"));
    CHECK(j["runtime_seconds"].get<double>() == 0.0);  // redacted by default
    for (const auto& c : j["checks"]) {
        CHECK(c.contains("id"));
        CHECK(c.contains("observed"));
        CHECK(c.contains("expected"));
        CHECK(c.contains("tolerance"));
        CHECK(c.contains("status"));
    }
}

}  // TEST_SUITE
