#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "disclab/report.hpp"

namespace {

int cmd_run(const std::string& suite, const std::string& config_path, std::uint64_t seed,
            const std::string& out_dir, const std::string& nu_range, bool timings) {
    disclab::ExperimentConfig cfg;
    cfg.suite = suite;
    cfg.seed = seed;
    cfg.out_dir = out_dir;
    cfg.timings = timings;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot read config file: " << config_path << "\n";
            return 2;
        }
        cfg.params = disclab::ordered_json::parse(in);
    }
    if (!nu_range.empty()) {
        const auto dots = nu_range.find("..");
        if (dots == std::string::npos) {
            std::cerr << "--nu expects the form a..b\n";
            return 2;
        }
        cfg.params["vdc_nu_min"] = std::stod(nu_range.substr(0, dots));
        cfg.params["vdc_nu_max"] = std::stod(nu_range.substr(dots + 2));
    }

    disclab::SuiteReport rep;
    try {
        rep = disclab::run_suite(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    const std::string path = out_dir + "/report_" + suite + ".json";
    disclab::write_report(rep, path, timings);

    for (const auto& c : rep.checks) {
        std::printf("%-28s %-13s %s\n", c.id.c_str(), status_name(c.status).c_str(),
                    c.expected.c_str());
    }
    std::printf("suite %s: %d failed, report written to %s (%.1fs)\n", rep.suite.c_str(),
                rep.failed_count(), path.c_str(), rep.runtime_seconds);
    return rep.all_passed() ? 0 : 1;
}

int cmd_compare(const std::string& a, const std::string& b) {
    std::ifstream fa(a), fb(b);
    if (!fa || !fb) {
        std::cerr << "cannot open report files\n";
        return 2;
    }
    try {
        const auto ja = disclab::ordered_json::parse(fa);
        const auto jb = disclab::ordered_json::parse(fb);
        const auto drift = disclab::compare_reports(ja, jb);
        for (const auto& row : drift.rows) {
            if (row.drift == 0.0 && !row.flagged) continue;
            std::printf("%-8s %-40s %.6g -> %.6g drift %.3g%s\n", row.id.c_str(),
                        row.field.c_str(), row.baseline, row.current, row.drift,
                        row.flagged ? "  FLAGGED" : "");
        }
        for (const auto& id : drift.missing_checks)
            std::printf("structural mismatch on check %s\n", id.c_str());
        if (!drift.any_flagged()) {
            std::printf("no drift beyond tolerances\n");
            return 0;
        }
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "comparison error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"disclab: numerical experiments around the disc multiplier in mixed norms"};
    app.require_subcommand(1);

    std::string suite, config_path, out_dir = ".", nu_range;
    std::uint64_t seed = 7;
    bool timings = false;
    auto* run = app.add_subcommand("run", "run a named experiment suite");
    run->add_option("suite", suite, "bessel-check | kernel-norms | disc-apply | planar-lab | "
                                    "kakeya | tubes | weights | restriction | all")
        ->required();
    run->add_option("--config", config_path, "flat JSON parameter overrides");
    run->add_option("--seed", seed, "seed for randomized trials");
    run->add_option("--out", out_dir, "output directory for reports and CSVs");
    run->add_option("--nu", nu_range, "envelope-scan order range, e.g. 8..512");
    run->add_flag("--timings", timings, "record wall time in the report JSON");

    std::string base_path, cur_path;
    auto* cmp = app.add_subcommand("compare", "drift between two suite reports");
    cmp->add_option("baseline", base_path)->required();
    cmp->add_option("current", cur_path)->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(suite, config_path, seed, out_dir, nu_range, timings);
    return cmd_compare(base_path, cur_path);
}
