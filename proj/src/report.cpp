#include "disclab/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

#include "disclab/bessel.hpp"
#include "disclab/grid.hpp"
#include "disclab/kernel.hpp"
#include "disclab/maximal.hpp"
#include "disclab/planar.hpp"
#include "disclab/restriction.hpp"
#include "disclab/tubes.hpp"
#include "disclab/weights.hpp"

namespace disclab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
};

double get_num(const ordered_json& params, const std::string& key, double dflt) {
    if (params.contains(key)) return params.at(key).get<double>();
    return dflt;
}

struct SubCheck {
    std::string name;
    double value = 0.0;
    std::string threshold;
    bool pass = true;
};

CheckRecord make_record(const std::string& id, const std::string& expected, double tolerance,
                        const std::vector<SubCheck>& subs,
                        CheckStatus forced = CheckStatus::pass, bool informational = false) {
    CheckRecord rec;
    rec.id = id;
    rec.expected = expected;
    rec.tolerance = tolerance;
    ordered_json obs = ordered_json::object();
    bool ok = true;
    for (const auto& s : subs) {
        ordered_json one;
        one["value"] = s.value;
        one["threshold"] = s.threshold;
        one["pass"] = s.pass;
        obs[s.name] = one;
        ok = ok && s.pass;
    }
    rec.observed = obs;
    if (informational)
        rec.status = CheckStatus::informational;
    else
        rec.status = ok ? CheckStatus::pass : CheckStatus::fail;
    if (forced == CheckStatus::fail) rec.status = CheckStatus::fail;
    return rec;
}

// ---------------------------------------------------------------- bessel ----

CheckRecord check_c01_bessel_accuracy(Rng& rng) {
    std::vector<SubCheck> subs;
    double worst_series = 0.0;
    for (int t = 0; t < 60; ++t) {
        const double nu = rng.uniform(0.0, 30.0);
        const double x = rng.uniform(0.0, 20.0);
        const double a = bessel_j({nu, x}).value;
        const double b = bessel_j_series({nu, x}).value;
        worst_series = std::max(worst_series, std::abs(a - b));
    }
    subs.push_back({"series_cross_check", worst_series, "<= 1e-9", worst_series <= 1e-9});

    auto j_half = [](double x) { return std::sqrt(2.0 / (kPi * x)) * std::sin(x); };
    auto j_3half = [](double x) {
        return std::sqrt(2.0 / (kPi * x)) * (std::sin(x) / x - std::cos(x));
    };
    auto j_5half = [](double x) {
        return std::sqrt(2.0 / (kPi * x)) *
               ((3.0 / (x * x) - 1.0) * std::sin(x) - 3.0 * std::cos(x) / x);
    };
    double worst_half = 0.0;
    for (int t = 0; t < 20; ++t) {
        const double x = rng.uniform(0.1, 50.0);
        worst_half = std::max(worst_half, std::abs(bessel_j({0.5, x}).value - j_half(x)));
        worst_half = std::max(worst_half, std::abs(bessel_j({1.5, x}).value - j_3half(x)));
        worst_half = std::max(worst_half, std::abs(bessel_j({2.5, x}).value - j_5half(x)));
    }
    subs.push_back({"half_integer_forms", worst_half, "<= 1e-9", worst_half <= 1e-9});

    const double at_zero = std::abs(bessel_j({0.0, 2.404825557695773}).value);
    subs.push_back({"j0_first_zero", at_zero, "<= 1e-9", at_zero <= 1e-9});

    return make_record("C01", "bessel_j within 1e-9 of the oracle set", 1e-9, subs);
}

CheckRecord check_c05_vdc_uniformity(const ordered_json& params) {
    const double nu_min = get_num(params, "vdc_nu_min", 8.0);
    const double nu_max = get_num(params, "vdc_nu_max", 512.0);
    const std::size_t samples =
        static_cast<std::size_t>(get_num(params, "vdc_samples", 512.0));
    std::vector<double> nus;
    for (double nu = nu_min; nu <= nu_max; nu *= 2.0) nus.push_back(nu);

    const auto rep1 = vdc_scan(nus, samples);
    const auto rep2 = vdc_scan(nus, 2 * samples);

    std::vector<SubCheck> subs;
    double worst_change = 0.0;
    for (std::size_t i = 0; i < rep1.per_regime.size(); ++i) {
        const double a = rep1.per_regime[i].max_ratio_j;
        const double b = rep2.per_regime[i].max_ratio_j;
        worst_change = std::max(worst_change, std::abs(a - b) / std::max(b, 1e-300));
        const double ap = rep1.per_regime[i].max_ratio_jprime;
        const double bp = rep2.per_regime[i].max_ratio_jprime;
        worst_change = std::max(worst_change, std::abs(ap - bp) / std::max(bp, 1e-300));
    }
    subs.push_back(
        {"sampling_stability", worst_change, "< 0.05 per density doubling", worst_change < 0.05});

    const double far = rep2.oscillatory_far_field_ratio;
    const double target = std::sqrt(2.0 / kPi);
    subs.push_back({"oscillatory_far_field", far, "sqrt(2/pi) +- 0.02",
                    std::abs(far - target) <= 0.02});
    return make_record("C05", "envelope ratios sampling-stable; far-field amplitude sqrt(2/pi)",
                       0.05, subs);
}

CheckRecord check_c06_prodj(const ordered_json& params) {
    const double nu_min = get_num(params, "prodj_nu_min", 32.0);
    const double nu_max = get_num(params, "prodj_nu_max", 512.0);
    std::vector<SubCheck> subs;
    double lo = 1e300, hi = 0.0;
    double prev4 = 0.0;
    bool increasing = true;
    for (double nu = nu_min; nu <= nu_max; nu *= 2.0) {
        const double v2 = prodj_integral(nu, 2.0);
        lo = std::min(lo, v2);
        hi = std::max(hi, v2);
        const double v4 = prodj_integral(nu, 4.0);
        if (prev4 > 0.0 && v4 <= prev4) increasing = false;
        prev4 = v4;
    }
    subs.push_back({"p2_spread", hi / lo, "max/min <= 1.5", hi / lo <= 1.5});
    subs.push_back({"p4_growth", increasing ? 1.0 : 0.0, "strictly increasing in nu",
                    increasing});
    return make_record("C06", "(1/nu) int |J_nu r^(1/2)|^p: bounded at p=2, growing at p=4",
                       1.5, subs);
}

// ---------------------------------------------------------------- kernel ----

CheckRecord check_c02_kernel_oracle(Rng& rng) {
    auto oracle = [](double t, double r) {
        const double d = t - r, s = t + r;
        const double sinc_d = d == 0.0 ? 1.0 : std::sin(d) / d;
        return (sinc_d - std::sin(s) / s) / kPi;
    };
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        double t = rng.uniform(0.1, 50.0);
        double r = rng.uniform(0.1, 50.0);
        if (trial % 5 == 0) r = std::max(0.1, t + 1e-5 * (rng.uniform() - 0.5));
        worst = std::max(worst, std::abs(kernel_k(0.5, t, r) - oracle(t, r)));
    }
    std::vector<SubCheck> subs = {
        {"max_abs_error", worst, "<= 1e-8 on 100 points incl. |t-r| < 1e-4", worst <= 1e-8}};
    return make_record("C02", "K_{1/2} matches the trigonometric closed form", 1e-8, subs);
}

CheckRecord check_c07_kj_uniformity(const ordered_json& params, const std::string& out_dir) {
    const double nu_min = get_num(params, "kj_nu_min", 16.0);
    const double nu_max = get_num(params, "kj_nu_max", 512.0);
    std::vector<double> nus;
    for (double nu = nu_min; nu <= nu_max; nu *= 2.0) nus.push_back(nu);
    const auto rows = kj_uniformity_scan(2.0, nus);
    write_kj_csv(rows, 2.0, out_dir + "/kj_scan.csv");

    const std::pair<Region, Region> blocks[3] = {
        {Region::critical, Region::critical},
        {Region::critical, Region::infinity},
        {Region::infinity, Region::critical},
    };
    const char* names[3] = {"block_cc", "block_cinf", "block_infc"};
    std::vector<SubCheck> subs;
    for (int b = 0; b < 3; ++b) {
        double lo = 1e300, hi = 0.0;
        for (const auto& r : rows) {
            if (r.block_t != blocks[b].first || r.block_r != blocks[b].second) continue;
            lo = std::min(lo, r.estimate.value);
            hi = std::max(hi, r.estimate.value);
        }
        subs.push_back({names[b], hi / lo, "max/min <= 2 across nu", hi / lo <= 2.0});
    }
    return make_record("C07", "K^1 block norm estimates nu-uniform at p = 2", 2.0, subs);
}

// ------------------------------------------------------------ disc apply ----

struct DiscCompare {
    double rel_err = 0.0;
};

// gaussian x e^{ik theta} input (harmonic-polynomial form, width a); the
// planar field's k-mode radial profile is extracted by angular averaging and
// compared against apply_tkn in relative L^2(r dr)
DiscCompare disc_cross_once(int k, std::size_t N, double L, std::size_t sigma_nodes,
                            double a) {
    auto f = GridField2D::sample(N, L, [&](double x, double y) {
        cplx z(x, y);
        cplx zk(1.0, 0.0);
        for (int i = 0; i < k; ++i) zk *= z;
        return zk * std::exp(-kPi * (x * x + y * y) / (a * a));
    });
    const auto planar = apply_multiplier(MultiplierSymbol::disc(1.0), f);

    // radial side in the scaled variable sigma = 2 pi r
    const double smax = 2.0 * kPi * (0.5 * L);
    auto grid = make_grid(RadialGrid::Scheme::linear, smax, sigma_nodes);
    auto prof = RadialProfile::sample(grid, [&](double s) {
        const double r = s / (2.0 * kPi);
        return cplx(std::pow(r, k) * std::exp(-kPi * r * r / (a * a)), 0.0);
    });
    const auto out = apply_tkn(2, k, prof, grid);

    const std::size_t ntheta = 512;
    const double scale = static_cast<double>(N) / L;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double r = grid.nodes[i] / (2.0 * kPi);
        if (r > 0.25 * L) break;
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < ntheta; ++j) {
            const double th = 2.0 * kPi * static_cast<double>(j) / ntheta;
            double gx = (r * std::cos(th) + 0.5 * L) * scale;
            double gy = (r * std::sin(th) + 0.5 * L) * scale;
            const std::size_t ix = static_cast<std::size_t>(gx) % N;
            const std::size_t iy = static_cast<std::size_t>(gy) % N;
            const double tx = gx - std::floor(gx), ty = gy - std::floor(gy);
            const std::size_t ix1 = (ix + 1) % N, iy1 = (iy + 1) % N;
            const cplx v = planar.at(ix, iy) * ((1 - tx) * (1 - ty)) +
                           planar.at(ix1, iy) * (tx * (1 - ty)) +
                           planar.at(ix, iy1) * ((1 - tx) * ty) +
                           planar.at(ix1, iy1) * (tx * ty);
            acc += v * cplx(std::cos(k * th), -std::sin(k * th));
        }
        acc /= static_cast<double>(ntheta);
        num += std::norm(acc - out.values[i]) * r;
        den += std::norm(out.values[i]) * r;
    }
    return {std::sqrt(num / den)};
}

CheckRecord check_c03_disc_cross(const ordered_json& params) {
    const std::size_t n_base = static_cast<std::size_t>(get_num(params, "disc_N_base", 512));
    const std::size_t n_fine = static_cast<std::size_t>(get_num(params, "disc_N_fine", 1024));
    const double L = get_num(params, "disc_L", 16.0);
    const std::size_t sigma_nodes =
        static_cast<std::size_t>(get_num(params, "disc_sigma_nodes", 1025));
    const double a = get_num(params, "disc_gauss_width", 1.5);
    std::vector<SubCheck> subs;
    for (int k : {0, 1, 4}) {
        const double base = disc_cross_once(k, n_base, L, sigma_nodes, a).rel_err;
        const double fine = disc_cross_once(k, n_fine, L, sigma_nodes, a).rel_err;
        subs.push_back({"rel_l2_k" + std::to_string(k), base, "<= 1e-2", base <= 1e-2});
        subs.push_back({"refined_k" + std::to_string(k), fine, "< base (error decreases)",
                        fine < base});
    }
    return make_record("C03", "apply_tkn reproduces the planar disc multiplier", 1e-2, subs);
}

CheckRecord check_c04_projection(const ordered_json& params) {
    // the deviation is truncation-plus-quadrature; a 2x radial refinement
    // doubles both the grid extent and the node density, measured on the
    // fixed window [0, smax/2]
    const double smax = get_num(params, "proj_sigma_max", 160.0);
    const std::size_t nodes = static_cast<std::size_t>(get_num(params, "proj_nodes", 161));
    std::vector<SubCheck> subs;
    const std::pair<int, int> cases[4] = {{2, 0}, {2, 1}, {2, 4}, {3, 0}};
    for (const auto& [n, k] : cases) {
        double dev[2];
        for (int lvl = 0; lvl < 2; ++lvl) {
            const double ext = lvl == 0 ? smax : 2.0 * smax;
            const std::size_t cnt = lvl == 0 ? nodes : 4 * (nodes - 1) + 1;
            auto grid = make_grid(RadialGrid::Scheme::linear, ext, cnt);
            auto prof = RadialProfile::sample(grid, [](double s) {
                const double u = (s - 6.0) / 4.0;
                return cplx(std::exp(-u * u), 0.0);
            });
            const auto t1 = apply_tkn(n, k, prof, grid);
            const auto t2 = apply_tkn(n, k, t1, grid);
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                if (grid.nodes[i] > 0.5 * smax) break;
                const double meas = std::pow(grid.nodes[i], n - 1.0) * grid.weights[i];
                num += std::norm(t2.values[i] - t1.values[i]) * meas;
                den += std::norm(t1.values[i]) * meas;
            }
            dev[lvl] = std::sqrt(num / den);
        }
        const std::string tag = "n" + std::to_string(n) + "k" + std::to_string(k);
        subs.push_back({"deviation_" + tag, dev[0], "<= 0.05", dev[0] <= 0.05});
        subs.push_back({"halving_" + tag, dev[1] / dev[0], "<= 0.5 under 2x refinement",
                        dev[1] <= 0.5 * dev[0]});
    }
    return make_record("C04", "T(Tf) ~ Tf with discretization-dominated deviation", 0.05,
                       subs);
}

// ---------------------------------------------------------------- planar ----

CheckRecord check_c08_cube_decay(const ordered_json& params) {
    const std::size_t N = static_cast<std::size_t>(get_num(params, "cube_N", 2048));
    const double L = get_num(params, "cube_L", 64.0);
    const double lo = get_num(params, "cube_fit_lo", 3.0);
    const double hi = get_num(params, "cube_fit_hi", 8.0);
    const auto res2 = cube_decay_experiment(2.0, lo, hi, N, L);
    const auto res43 = cube_decay_experiment(4.0 / 3.0, lo, hi, N, L);
    std::vector<SubCheck> subs;
    subs.push_back({"slope", res2.slope, "-1.5 +- 0.1",
                    res2.fit_ok && std::abs(res2.slope + 1.5) <= 0.1});
    subs.push_back({"tail_fraction_p2", res2.tail_fraction, "< 0.05 (converges)",
                    !res2.diverged});
    subs.push_back({"tail_fraction_p43", res43.tail_fraction, ">= 0.05 (diverges)",
                    res43.diverged});
    subs.push_back({"aliasing_indicator", res2.aliasing, "reported", true});
    return make_record("C08", "H_{e2} chi_Q angular decay r^{-3/2}; p-threshold at 2n/(n+1)",
                       0.1, subs);
}

std::vector<CheckRecord> planar_informational(Rng& rng, const ordered_json& params) {
    std::vector<CheckRecord> recs;
    const std::size_t N = static_cast<std::size_t>(get_num(params, "lab_N", 256));
    const double L = get_num(params, "lab_L", 16.0);

    // Meyer vector inequality across direction counts
    {
        std::vector<SubCheck> subs;
        for (std::size_t count : {1, 2, 4, 8, 16}) {
            DirectionSet dirs;
            std::vector<GridField2D> batch;
            for (std::size_t j = 0; j < count; ++j) {
                const double th = 2.0 * kPi * rng.uniform();
                dirs.dirs.push_back({std::cos(th), std::sin(th)});
                const double cx = rng.uniform(-2.0, 2.0), cy = rng.uniform(-2.0, 2.0);
                batch.push_back(GridField2D::sample(N, L, [&](double x, double y) {
                    const double d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
                    return cplx(std::exp(-2.0 * d2), 0.0);
                }));
            }
            const auto res = meyer_vector_test(dirs, batch, 2.0);
            subs.push_back({"ratio_dirs" + std::to_string(count), res.ratio,
                            "reported vs direction count", true});
        }
        recs.push_back(make_record("meyer_scan", "vector-valued ratio vs |dirs|", 0.0, subs,
                                   CheckStatus::pass, true));
    }

    // homogeneous singular integral at p in {2, 4}
    {
        std::vector<GridField2D> trials;
        for (int t = 0; t < 3; ++t) {
            const double cx = rng.uniform(-2.0, 2.0), cy = rng.uniform(-2.0, 2.0);
            trials.push_back(GridField2D::sample(N, L, [&](double x, double y) {
                const double d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
                return cplx(std::exp(-1.5 * d2), 0.0);
            }));
        }
        std::vector<OmegaCoeff> riesz = {{1, cplx(0.5, 0.0)}, {-1, cplx(0.5, 0.0)}};
        std::vector<SubCheck> subs;
        const auto r2 = singular_integral_test(riesz, 2.0, trials);
        subs.push_back({"riesz_p2", r2.ratio, "<= 1.02", r2.ratio <= 1.02});
        const auto r4 = singular_integral_test(riesz, 4.0, trials);
        subs.push_back({"riesz_p4", r4.ratio, "bounded (reported)", std::isfinite(r4.ratio)});
        recs.push_back(make_record("singular_integral", "homogeneous symbol ratios", 0.02,
                                   subs));
    }

    // half-plane limit on a band-limited gaussian
    {
        auto f = GridField2D::sample(N, L, [](double x, double y) {
            return cplx(std::exp(-kPi * (x * x + y * y) / 2.0), 0.0);
        });
        const auto errs = ball_to_halfplane_limit(f, 6, 0.0, 1.0);
        bool monotone = true;
        for (std::size_t k = 1; k < errs.size(); ++k)
            if (errs[k] > errs[k - 1] * 1.02 + 1e-12) monotone = false;
        std::vector<SubCheck> subs = {
            {"final_error", errs.back(), "reported", true},
            {"monotone", monotone ? 1.0 : 0.0, "nonincreasing to quadrature floor", monotone}};
        recs.push_back(make_record("halfplane_limit", "shifted balls approach the half-plane",
                                   0.0, subs));
    }
    return recs;
}

// ---------------------------------------------------------------- kakeya ----

CheckRecord check_c09_kakeya(const ordered_json& params, const std::string& out_dir) {
    const std::size_t nodes = static_cast<std::size_t>(get_num(params, "kakeya_nodes", 2049));
    const std::size_t n_u = static_cast<std::size_t>(get_num(params, "kakeya_n_u", 48));
    const std::size_t n_c = static_cast<std::size_t>(get_num(params, "kakeya_n_c", 128));
    std::vector<SubCheck> subs;

    // pinned value: U chi_[0,1] at rho = 2 on a 4-long grid
    {
        auto g = make_grid(RadialGrid::Scheme::linear, 4.0, 2049);
        auto f = RadialProfile::sample(
            g, [](double r) { return cplx(r <= 1.0 ? 1.0 : 0.0, 0.0); });
        const double v = universal_kakeya_radial({f, 2.0, 64, 512});
        subs.push_back({"indicator_value", v, "2/3 +- 1e-3", std::abs(v - 2.0 / 3.0) <= 1e-3});
    }

    auto grid = make_grid(RadialGrid::Scheme::linear, 2.0, nodes);
    const std::vector<double> deltas = {0.25, 1.0 / 16.0, 1.0 / 64.0};

    const std::size_t stride = static_cast<std::size_t>(get_num(params, "kakeya_rho_stride", 4));
    const auto rows3 = kakeya_lp_scan(deltas, 3.0, 2, grid, n_u, n_c, stride);
    write_kakeya_csv(rows3, nodes, out_dir + "/kakeya_p3.csv");
    double lo = 1e300, hi = 0.0;
    for (const auto& r : rows3) {
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
    }
    subs.push_back({"p3_spread", hi / lo, "max/min <= 2 across delta", hi / lo <= 2.0});

    const auto rows18 = kakeya_lp_scan(deltas, 1.8, 2, grid, n_u, n_c, stride);
    write_kakeya_csv(rows18, nodes, out_dir + "/kakeya_p18.csv");
    const bool increasing = rows18[0].ratio < rows18[1].ratio &&
                            rows18[1].ratio < rows18[2].ratio;
    const double growth = rows18[2].ratio / rows18[0].ratio;
    subs.push_back({"p18_monotone", increasing ? 1.0 : 0.0, "strictly increasing ratios",
                    increasing});
    subs.push_back({"p18_growth", growth, ">= 2 from delta=1/4 to 1/64", growth >= 2.0});
    return make_record("C09", "universal Kakeya on radial functions: p > n boundedness",
                       1e-3, subs);
}

// ----------------------------------------------------------------- tubes ----

CheckRecord check_c10_tubes(const ordered_json& params, const std::string& out_dir) {
    const double eps2 = get_num(params, "tube_eps2", 1.0 / 128.0);
    const double eps3 = get_num(params, "tube_eps3", 1.0 / 16.0);
    const double thin_eps = get_num(params, "thin_eps", 1.0 / 64.0);
    std::vector<SubCheck> subs;

    ShellSpec s2{2, 1.0, 1.0, 1.0, eps2};
    const auto set2 = generate_brush(s2);
    const auto hist2 = overlap_histogram(set2, eps2 / 4.0);
    write_histogram_csv(hist2, out_dir + "/overlap_n2.csv");
    const auto fit2 = fit_overlap_exponent(hist2, 0.95);
    subs.push_back({"slope_n2", fit2.slope, "-2 +- 0.3", std::abs(fit2.slope + 2.0) <= 0.3});

    ShellSpec s3{3, 1.0, 1.0, 1.0, eps3};
    const auto set3 = generate_brush(s3);
    const auto hist3 = overlap_histogram(set3, eps3 / 4.0);
    write_histogram_csv(hist3, out_dir + "/overlap_n3.csv");
    const auto fit3 = fit_overlap_exponent(hist3, 0.95);
    subs.push_back(
        {"slope_n3", fit3.slope, "-1.5 +- 0.3", std::abs(fit3.slope + 1.5) <= 0.3});

    // raster refinement stability of the n=2 slope
    const auto fit2h = fit_overlap_exponent(overlap_histogram(set2, eps2 / 8.0), 0.95);
    subs.push_back({"slope_n2_h_halved", fit2h.slope, "change < 0.1",
                    std::abs(fit2h.slope - fit2.slope) < 0.1});

    const auto rows = per_sphere_overlap(set2, eps2 / 4.0, {1.2, 1.4, 1.6, 1.8});
    double lo = 1e300, hi = 0.0;
    for (const auto& r : rows) {
        lo = std::min(lo, r.constant);
        hi = std::max(hi, r.constant);
    }
    subs.push_back({"per_sphere_spread", hi / lo, "max/min <= 2 across r", hi / lo <= 2.0});

    ShellSpec thin_a{2, 8.0, 1.0, 7.0, thin_eps};
    ShellSpec thin_b{2, 8.0, 1.0, 7.0, thin_eps / 2.0};
    const auto ra = thin_shell_2d(thin_a, thin_a.eps / 4.0);
    const auto rb = thin_shell_2d(thin_b, thin_b.eps / 4.0);
    const double change = std::abs(rb.max_ratio - ra.max_ratio) / ra.max_ratio;
    subs.push_back({"thin_ratio", ra.max_ratio, "reported", true});
    subs.push_back({"thin_eps_halving", change, "< 0.30", change < 0.30});
    return make_record("C10", "brush overlap distribution and thin-shell bound", 0.3, subs);
}

// --------------------------------------------------------------- weights ----

CheckRecord check_c11_weights(Rng& rng, const ordered_json& params,
                              const std::string& out_dir) {
    std::vector<SubCheck> subs;
    const std::size_t base = static_cast<std::size_t>(get_num(params, "weights_base", 1024));

    {
        auto one = WeightSamples::sample(1.0, 512, [](double) { return 1.0; });
        const double c = ap_characteristic(one, 2.0).characteristic;
        subs.push_back({"constant_weight", c, "== 1 exactly", c == 1.0});
    }
    {
        double prev = 0.0;
        bool stable = true;
        double last = 0.0;
        for (std::size_t cells : {base, 2 * base, 4 * base}) {
            auto w = WeightSamples::sample(
                1.0, cells, [](double x) { return std::sqrt(std::abs(x)); });
            const double c = ap_characteristic(w, 2.0).characteristic;
            if (prev > 0.0 && std::abs(c - prev) / prev >= 0.05) stable = false;
            last = std::abs(c - prev) / std::max(prev, 1e-300);
            prev = c;
        }
        subs.push_back({"sqrt_weight_stability", last, "< 0.05 per doubling", stable});
    }
    {
        // boundary case alpha = p - 1: the characteristic grows like
        // sum 1/(2j-1) ~ (1/2) log N, so the stated 2x-per-4x never happens;
        // the check is kept as written and reports the measured ratios
        std::vector<double> cs;
        for (std::size_t cells : {base, 4 * base, 16 * base}) {
            auto w =
                WeightSamples::sample(1.0, cells, [](double x) { return std::abs(x); });
            cs.push_back(ap_characteristic(w, 2.0).characteristic);
        }
        const double r1 = cs[1] / cs[0], r2 = cs[2] / cs[1];
        subs.push_back({"abs_weight_growth_step1", r1, ">= 2 per 4x refinement", r1 >= 2.0});
        subs.push_back({"abs_weight_growth_step2", r2, ">= 2 per 4x refinement", r2 >= 2.0});
    }
    {
        bool stable = true;
        double worst = 0.0;
        std::vector<std::function<double(double)>> trial_set;
        trial_set.push_back(
            [](double x) { return (x >= 0.0 && x <= 1.0) ? 1.0 : 1e-300; });
        std::vector<double> steps(8);
        for (auto& s : steps) s = 0.2 + 2.0 * rng.uniform();
        trial_set.push_back([steps](double x) {
            const std::size_t k =
                std::min<std::size_t>(7, static_cast<std::size_t>((x + 4.0)));
            return steps[k];
        });
        for (const auto& fn : trial_set) {
            for (double s : {2.0, 4.0 / 3.0}) {
                double prev = 0.0;
                for (std::size_t cells : {512, 1024, 2048}) {
                    const double r = a1_lemma_check(WeightSamples::sample(4.0, cells, fn), s);
                    if (prev > 0.0) {
                        const double change = std::abs(r - prev) / prev;
                        worst = std::max(worst, change);
                        if (change >= 0.10) stable = false;
                    }
                    prev = r;
                }
            }
        }
        subs.push_back({"a1_lemma_stability", worst, "< 0.10 per doubling", stable});
    }
    {
        const auto rows = power_weight_range_scan(2.0, {-0.5, -0.25}, 512, 2, 1.5);
        bool ok = true;
        for (const auto& r : rows) ok = ok && r.sandwich_checked && r.sandwich_ok;
        subs.push_back({"appendix_sandwich", ok ? 1.0 : 0.0,
                        "pointwise bounds hold at sampled x", ok});
    }
    {
        const auto rows = power_weight_range_scan(2.0, {-1.1, -0.5, 0.0, 0.5, 1.0, 1.5},
                                                  256, 3, 1.5);
        write_weights_csv(rows, out_dir + "/power_weights.csv");
        const bool inside = rows[1].cls == WeightClass::stable &&
                            rows[2].cls == WeightClass::stable &&
                            rows[3].cls == WeightClass::stable;
        const bool outside = rows[0].cls == WeightClass::divergent &&
                             rows[4].cls == WeightClass::divergent &&
                             rows[5].cls == WeightClass::divergent;
        subs.push_back({"range_classification", inside && outside ? 1.0 : 0.0,
                        "stable iff -1 < alpha < p-1", inside && outside});
    }
    return make_record("C11", "A_p machinery: characteristics, A_1 lemma, power range", 0.05,
                       subs);
}

// ----------------------------------------------------------- restriction ----

CheckRecord check_c12_restriction(const ordered_json& params, const std::string& out_dir) {
    std::vector<SubCheck> subs;
    const int kmax = static_cast<int>(get_num(params, "restr_kmax", 8));
    const double rmax = get_num(params, "restr_ext_rmax", 48.0);

    auto flat = HarmonicCoefficients::flat(kmax, 2);
    const auto rep = dyadic_block_scan(flat, 6.0, {32.0, 64.0, 128.0, 256.0});
    write_blocks_csv(rep, 2, out_dir + "/dyadic_blocks.csv");
    {
        ordered_json fits = ordered_json::object();
        const std::pair<const char*, const BlockFit*> items[3] = {
            {"I1", &rep.fit1}, {"I2", &rep.fit2}, {"I3", &rep.fit3}};
        for (const auto& [name, fit] : items) {
            ordered_json one;
            one["slope"] = fit->slope;
            one["ci95_halfwidth"] = 1.96 * fit->stderr_slope;
            one["ok"] = fit->ok;
            fits[name] = one;
        }
        std::ofstream out(out_dir + "/dyadic_blocks_fit.json");
        out << fits.dump(2) << "\n";
    }
    subs.push_back({"i1_slope", rep.fit1.ok ? rep.fit1.slope : 0.0, "-1 +- 0.15",
                    rep.fit1.ok && std::abs(rep.fit1.slope + 1.0) <= 0.15});
    // the flat family cannot populate the mid and high blocks (true Bessel
    // decay is exponential past the turning point); the stated slopes are
    // reported against the empty data honestly
    subs.push_back({"i2_slope", rep.fit2.ok ? rep.fit2.slope : 0.0, "-2/3 +- 0.2",
                    rep.fit2.ok && std::abs(rep.fit2.slope + 2.0 / 3.0) <= 0.2});
    subs.push_back({"i3_slope", rep.fit3.ok ? rep.fit3.slope : 0.0, "-4 +- 0.3",
                    rep.fit3.ok && std::abs(rep.fit3.slope + 4.0) <= 0.3});

    HarmonicCoefficients a0;
    a0.n = 2;
    a0.a = {cplx(1.0, 0.0)};
    const auto n5a = extension_mixed_norm(a0, 5.0, rmax);
    const auto n5b = extension_mixed_norm(a0, 5.0, 2.0 * rmax);
    const double change = std::abs(n5b.value - n5a.value) / n5a.value;
    subs.push_back({"ext_q5_stable", change, "< 0.05 under r_max doubling",
                    !n5a.divergence_flag && change < 0.05});
    const auto n4 = extension_mixed_norm(a0, 4.0, rmax);
    subs.push_back({"ext_q4_flagged", n4.tail_slope, "divergence flag set (tail ~ r^-1)",
                    n4.divergence_flag});
    return make_record("C12", "extension blocks and mixed-norm range", 0.15, subs);
}

CheckRecord restriction_informational() {
    const auto fit = transition_bin_scan(6.0, {32.0, 64.0, 128.0, 256.0});
    std::vector<SubCheck> subs = {
        {"single_bin_slope", fit.slope, "(4-q)/3 = -2/3 when one G_alpha bin is isolated",
         fit.ok && std::abs(fit.slope + 2.0 / 3.0) <= 0.2}};
    return make_record("transition_bin_diagnostic",
                       "Airy-bin normalization recovers the I_M^2 exponent", 0.2, subs,
                       CheckStatus::pass, true);
}

// ---------------------------------------------------------------- suites ----

std::vector<CheckRecord> run_bessel_suite(Rng& rng, const ordered_json& params,
                                          const std::string& out_dir) {
    std::vector<CheckRecord> recs;
    recs.push_back(check_c01_bessel_accuracy(rng));
    recs.push_back(check_c05_vdc_uniformity(params));
    recs.push_back(check_c06_prodj(params));
    const double nu_min = get_num(params, "vdc_nu_min", 8.0);
    const double nu_max = get_num(params, "vdc_nu_max", 512.0);
    std::vector<double> nus;
    for (double nu = nu_min; nu <= nu_max; nu *= 2.0) nus.push_back(nu);
    write_vdc_csv(vdc_scan(nus, static_cast<std::size_t>(get_num(params, "vdc_samples", 512))),
                  out_dir + "/vdc_scan.csv");
    return recs;
}

std::vector<CheckRecord> run_kernel_suite(Rng& rng, const ordered_json& params,
                                          const std::string& out_dir) {
    std::vector<CheckRecord> recs;
    recs.push_back(check_c02_kernel_oracle(rng));
    recs.push_back(check_c07_kj_uniformity(params, out_dir));
    // weighted vector inequality: refinement-stable ratio (regression style)
    {
        auto mk = [](std::size_t nodes) {
            auto g = make_grid(RadialGrid::Scheme::linear, 16.0, nodes);
            auto bump = RadialProfile::sample(g, [](double r) {
                if (r <= 2.0 || r >= 8.0) return cplx(0.0, 0.0);
                const double u = (r - 5.0) / 3.0;
                return cplx(std::exp(-1.0 / (1.0 - u * u)), 0.0);
            });
            return weighted_mixed_test(1.5, 2, {4.0}, {bump}).ratio;
        };
        const double a = mk(257), b = mk(513);
        const double change = std::abs(b - a) / a;
        std::vector<SubCheck> subs = {
            {"ratio", b, "finite baseline", std::isfinite(b) && b > 0.0},
            {"refinement_change", change, "< 0.20 under 2x grid refinement", change < 0.20}};
        recs.push_back(make_record("weighted_mixed", "weighted vector inequality ratio",
                                   0.2, subs));
    }
    (void)rng;
    return recs;
}

std::vector<CheckRecord> run_disc_suite(const ordered_json& params) {
    return {check_c03_disc_cross(params), check_c04_projection(params)};
}

std::vector<CheckRecord> run_planar_suite(Rng& rng, const ordered_json& params,
                                          const std::string& out_dir) {
    std::vector<CheckRecord> recs;
    recs.push_back(check_c08_cube_decay(params));
    auto infos = planar_informational(rng, params);
    recs.insert(recs.end(), infos.begin(), infos.end());

    // one JSON record per experiment for downstream plotting
    ordered_json records = ordered_json::array();
    for (const auto& rec : recs) {
        ordered_json one;
        one["experiment"] = rec.id;
        ordered_json ps = ordered_json::object();
        ps["N"] = rec.id == "C08" ? get_num(params, "cube_N", 2048)
                                  : get_num(params, "lab_N", 256);
        ps["L"] = rec.id == "C08" ? get_num(params, "cube_L", 64.0)
                                  : get_num(params, "lab_L", 16.0);
        one["params"] = ps;
        one["N"] = ps["N"];
        one["L"] = ps["L"];
        one["result"] = rec.observed;
        one["refinement_check"] = status_name(rec.status);
        records.push_back(one);
    }
    std::ofstream out(out_dir + "/planar_experiments.json");
    out << records.dump(2) << "\n";
    return recs;
}

std::vector<CheckRecord> run_kakeya_suite(const ordered_json& params,
                                          const std::string& out_dir) {
    return {check_c09_kakeya(params, out_dir)};
}

std::vector<CheckRecord> run_tubes_suite(const ordered_json& params,
                                         const std::string& out_dir) {
    return {check_c10_tubes(params, out_dir)};
}

std::vector<CheckRecord> run_weights_suite(Rng& rng, const ordered_json& params,
                                           const std::string& out_dir) {
    return {check_c11_weights(rng, params, out_dir)};
}

std::vector<CheckRecord> run_restriction_suite(const ordered_json& params,
                                               const std::string& out_dir) {
    return {check_c12_restriction(params, out_dir), restriction_informational()};
}

ordered_json default_params() {
    ordered_json p = ordered_json::object();
    p["vdc_nu_min"] = 8.0;
    p["vdc_nu_max"] = 512.0;
    p["vdc_samples"] = 512.0;
    p["prodj_nu_min"] = 32.0;
    p["prodj_nu_max"] = 512.0;
    p["kj_nu_min"] = 16.0;
    p["kj_nu_max"] = 512.0;
    p["disc_N_base"] = 512.0;
    p["disc_N_fine"] = 1024.0;
    p["disc_L"] = 16.0;
    p["disc_sigma_nodes"] = 1025.0;
    p["proj_sigma_max"] = 160.0;
    p["proj_nodes"] = 161.0;
    p["disc_gauss_width"] = 1.5;
    p["cube_N"] = 2048.0;
    p["cube_L"] = 64.0;
    p["cube_fit_lo"] = 3.0;
    p["cube_fit_hi"] = 8.0;
    p["lab_N"] = 256.0;
    p["lab_L"] = 16.0;
    p["kakeya_nodes"] = 2049.0;
    p["kakeya_n_u"] = 48.0;
    p["kakeya_n_c"] = 128.0;
    p["kakeya_rho_stride"] = 4.0;
    p["tube_eps2"] = 1.0 / 128.0;
    p["tube_eps3"] = 1.0 / 16.0;
    p["thin_eps"] = 1.0 / 64.0;
    p["weights_base"] = 1024.0;
    p["restr_kmax"] = 8.0;
    p["restr_ext_rmax"] = 48.0;
    return p;
}

}  // namespace

std::string status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::informational: return "informational";
    }
    return "?";
}

bool SuiteReport::all_passed() const { return failed_count() == 0; }

int SuiteReport::failed_count() const {
    int n = 0;
    for (const auto& c : checks)
        if (c.status == CheckStatus::fail) ++n;
    return n;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "bessel-check", "kernel-norms", "disc-apply", "planar-lab",
        "kakeya",       "tubes",        "weights",    "restriction"};
    return names;
}

SuiteReport run_suite(const ExperimentConfig& cfg) {
    const auto known = suite_names();
    const bool is_all = cfg.suite == "all";
    if (!is_all && std::find(known.begin(), known.end(), cfg.suite) == known.end())
        throw std::invalid_argument("unknown suite: " + cfg.suite);

    ordered_json params = default_params();
    for (auto it = cfg.params.begin(); it != cfg.params.end(); ++it) {
        if (!params.contains(it.key()))
            throw std::invalid_argument("unknown config parameter: " + it.key());
        params[it.key()] = it.value();
    }

    std::filesystem::create_directories(cfg.out_dir);

    SuiteReport rep;
    rep.suite = cfg.suite;
    rep.config = ordered_json::object();
    rep.config["suite"] = cfg.suite;
    rep.config["seed"] = cfg.seed;
    rep.config["params"] = params;

    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(cfg.seed);

    auto want = [&](const std::string& name) { return is_all || cfg.suite == name; };
    if (want("bessel-check")) {
        auto r = run_bessel_suite(rng, params, cfg.out_dir);
        rep.checks.insert(rep.checks.end(), r.begin(), r.end());
    }
    if (want("kernel-norms")) {
        auto r = run_kernel_suite(rng, params, cfg.out_dir);
        rep.checks.insert(rep.checks.end(), r.begin(), r.end());
    }
    if (want("disc-apply")) {
        auto r = run_disc_suite(params);
        rep.checks.insert(rep.checks.end(), r.begin(), r.end());
    }
    if (want("planar-lab")) {
        auto r = run_planar_suite(rng, params, cfg.out_dir);
        rep.checks.insert(rep.checks.end(), r.begin(), r.end());
    }
    if (want("kakeya")) {
        auto r = run_kakeya_suite(params, cfg.out_dir);
        rep.checks.insert(rep.checks.end(), r.begin(), r.end());
    }
    if (want("tubes")) {
        auto r = run_tubes_suite(params, cfg.out_dir);
        rep.checks.insert(rep.checks.end(), r.begin(), r.end());
    }
    if (want("weights")) {
        auto r = run_weights_suite(rng, params, cfg.out_dir);
        rep.checks.insert(rep.checks.end(), r.begin(), r.end());
    }
    if (want("restriction")) {
        auto r = run_restriction_suite(params, cfg.out_dir);
        rep.checks.insert(rep.checks.end(), r.begin(), r.end());
    }

    std::stable_sort(rep.checks.begin(), rep.checks.end(),
                     [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
    rep.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

ordered_json report_to_json(const SuiteReport& rep, bool with_timings) {
    ordered_json j;
    j["suite"] = rep.suite;
    j["config"] = rep.config;
    ordered_json checks = ordered_json::array();
    for (const auto& c : rep.checks) {
        ordered_json one;
        one["id"] = c.id;
        one["observed"] = c.observed;
        one["expected"] = c.expected;
        one["tolerance"] = c.tolerance;
        one["status"] = status_name(c.status);
        checks.push_back(one);
    }
    j["checks"] = checks;
    j["runtime_seconds"] = with_timings ? rep.runtime_seconds : 0.0;
    return j;
}

void write_report(const SuiteReport& rep, const std::string& path, bool with_timings) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << report_to_json(rep, with_timings).dump(2) << "\n";
}

namespace {

void collect_leaves(const ordered_json& j, const std::string& prefix,
                    std::vector<std::pair<std::string, double>>& out) {
    if (j.is_number()) {
        out.push_back({prefix, j.get<double>()});
    } else if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            collect_leaves(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
                           out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            collect_leaves(j[i], prefix + "[" + std::to_string(i) + "]", out);
    }
}

}  // namespace

DriftSummary compare_reports(const ordered_json& baseline, const ordered_json& current) {
    DriftSummary sum;
    if (baseline.value("suite", "") != current.value("suite", "") ||
        baseline.value("config", ordered_json()) != current.value("config", ordered_json()))
        throw std::invalid_argument("compare_reports: suite/config mismatch");

    auto index = [](const ordered_json& rep) {
        std::map<std::string, ordered_json> m;
        for (const auto& c : rep.at("checks")) m[c.at("id").get<std::string>()] = c;
        return m;
    };
    const auto base = index(baseline);
    const auto cur = index(current);

    for (const auto& [id, bc] : base) {
        auto it = cur.find(id);
        if (it == cur.end()) {
            sum.structural_mismatch = true;
            sum.missing_checks.push_back(id);
            continue;
        }
        const double tol = bc.value("tolerance", 0.0);
        std::vector<std::pair<std::string, double>> bl, cl;
        collect_leaves(bc.at("observed"), "", bl);
        collect_leaves(it->second.at("observed"), "", cl);
        if (bl.size() != cl.size()) {
            sum.structural_mismatch = true;
            sum.missing_checks.push_back(id + ".observed");
            continue;
        }
        for (std::size_t i = 0; i < bl.size(); ++i) {
            DriftRow row;
            row.id = id;
            row.field = bl[i].first;
            row.baseline = bl[i].second;
            row.current = cl[i].second;
            const double scale = std::max({std::abs(row.baseline), std::abs(row.current), 1e-300});
            row.drift = std::abs(row.current - row.baseline) / scale;
            row.flagged = row.drift > std::max(tol, 1e-12);
            if (row.drift > 0.0 || row.flagged) sum.rows.push_back(row);
        }
    }
    for (const auto& [id, cc] : cur)
        if (base.find(id) == base.end()) {
            sum.structural_mismatch = true;
            sum.missing_checks.push_back(id);
        }
    return sum;
}

bool DriftSummary::any_flagged() const {
    if (structural_mismatch) return true;
    for (const auto& r : rows)
        if (r.flagged) return true;
    return false;
}

}  // namespace disclab
