#pragma once

#include <span>
#include <string>
#include <vector>

#include "disclab/grid.hpp"

namespace disclab {

/// Hardy-Littlewood maximal value at one index: exhaustive maximum of
/// interval averages over all index ranges containing the point.
double hl_max_1d(std::span<const double> samples, std::size_t index);

/// All maximal values at once (range-chmax sweep over every interval).
std::vector<double> hl_max_all(std::span<const double> samples);

/// Evaluation request for the universal Kakeya maximal function on a radial
/// representative: segment averages over all chords through the point at
/// radius rho, discretized by n_u line distances and n_c endpoints per side.
struct MaximalQuery {
    RadialProfile profile;  // radial representative f_rad (real part used)
    double rho = 0.0;
    std::size_t n_u = 32;
    std::size_t n_c = 32;
};

/// Discrete supremum of chord-segment averages; a lower bound that only
/// grows under refinement of (n_u, n_c).
double universal_kakeya_radial(const MaximalQuery& q);

struct LevelSetReport {
    double lambda = 0.0;
    double measure = 0.0;  // of {Uf > lambda} under r^{n-1} dr
    int n = 2;
};

struct KakeyaScanRow {
    int n = 2;
    double p = 0.0;
    double delta = 0.0;
    double norm_f = 0.0;
    double norm_uf = 0.0;
    double ratio = 0.0;
    bool empty = false;
};

/// ||U f_delta||_p / ||f_delta||_p under r^{n-1} dr for the sharpness family
/// f_delta(r) = r^{-n/p} chi_{[delta,1]}.
KakeyaScanRow kakeya_lp_scan_one(double delta, double p, int n, const RadialGrid& grid,
                                 std::size_t n_u, std::size_t n_c,
                                 std::size_t rho_stride = 1);

std::vector<KakeyaScanRow> kakeya_lp_scan(const std::vector<double>& deltas, double p, int n,
                                          const RadialGrid& grid, std::size_t n_u,
                                          std::size_t n_c, std::size_t rho_stride = 1);

void write_kakeya_csv(const std::vector<KakeyaScanRow>& rows, std::size_t resolution,
                      const std::string& path);

/// Radial vector-field maximal function (segments along rays through the
/// origin): reduces to the 1-D maximal function on the mirrored profile.
/// Returns ||Mf||_p / ||f||_p under r^{n-1} dr.
double radial_field_max_test(const RadialProfile& profile, double p, int n);

}  // namespace disclab
