#pragma once

#include <string>
#include <vector>

#include "disclab/grid.hpp"

namespace disclab {

enum class KernelSplit { full, j1, j2, j3, j4 };
enum class Region { zero, critical, infinity, all };

/// Identifies one integral kernel: Bessel order, split piece, and the
/// indicator restriction chi_{I_alpha}(t) chi_{I_beta}(r).
struct KernelSpec {
    double nu = 1.0;
    KernelSplit split = KernelSplit::full;
    Region region_t = Region::all;
    Region region_r = Region::all;
};

/// Partition [0, inf) = [0, nu/2) u [nu/2, 2nu) u [2nu, inf) plus the dyadic
/// transition subintervals used in the critical range.
struct RegionPartition {
    double nu = 1.0;

    double i0_hi() const { return 0.5 * nu; }   // I_0 = [0, nu/2)
    double ic_hi() const { return 2.0 * nu; }   // I_c = [nu/2, 2 nu)

    bool contains(Region reg, double x) const;

    struct Band {
        double lo = 0.0, hi = 0.0;
        int k = 0;          // dyadic index; k = -1 for the central band I_0
        bool upper = true;  // I_k^+ vs I_k^-
    };
    // central band [nu - nu^{1/3}, nu + nu^{1/3}) plus I_k^{+-},
    // 0 <= k <= floor((2/3) log2 nu)
    std::vector<Band> transition_bands() const;
};

double kernel_k(double nu, double t, double r);
double kernel_split(const KernelSpec& spec, double t, double r);

/// T_k^n g(t) = t^{-(n-1)/2} int_0^inf g(r) r^{(n-1)/2} K_{k-1+n/2}(t,r) dr.
/// The sign convention matches the planar disc multiplier (applying the
/// operator to a single-mode field reproduces the 2-D Fourier cut).
RadialProfile apply_tkn(int n, int k, const RadialProfile& g, const RadialGrid& out_grid);

/// Dense quadrature-weighted kernel matrix A[i][j] = K(t_i, r_j) w_j.
struct DiscreteOperator {
    std::vector<double> entries;  // row-major, rows x cols
    RadialGrid row_grid;
    RadialGrid col_grid;

    std::size_t rows() const { return row_grid.size(); }
    std::size_t cols() const { return col_grid.size(); }
    double at(std::size_t i, std::size_t j) const { return entries[i * cols() + j]; }

    std::vector<double> apply(const std::vector<double>& x) const;
    std::vector<double> apply_transpose(const std::vector<double>& x) const;
};

DiscreteOperator discretize_kernel(const KernelSpec& spec, const RadialGrid& row_grid,
                                   const RadialGrid& col_grid);

struct NormEstimate {
    double value = 0.0;  // nondecreasing lower bound on the operator norm
    int iterations = 0;
    bool converged = false;
};

/// Boyd-style power iteration for the weighted lp -> lp norm; nodes carry
/// measure r^alpha * quadrature weight.  Lower bounds only.
NormEstimate lp_operator_norm(const DiscreteOperator& A, double p, double alpha = 0.0,
                              int max_iter = 200, double tol = 1e-6);

struct KjScanRow {
    double nu = 0.0;
    Region block_t = Region::critical;
    Region block_r = Region::critical;
    NormEstimate estimate;
};

/// Norm estimates of the K^1 blocks (c,c), (c,inf), (inf,c) across nu.
/// I_inf is truncated at 8 nu (fixed multiple, consistent across the scan).
std::vector<KjScanRow> kj_uniformity_scan(double p, const std::vector<double>& nu_list);

void write_kj_csv(const std::vector<KjScanRow>& rows, double p, const std::string& path);

struct WeightedMixedResult {
    double lhs = 0.0, rhs = 0.0, ratio = 0.0;
    bool empty = false;
};

/// LHS/RHS of the vector-valued weighted inequality with weight
/// r^{(n-1)(1-p/2)}: operators K_{nu(l)} applied to each g_l.
WeightedMixedResult weighted_mixed_test(double p, int n, const std::vector<double>& nus,
                                        const std::vector<RadialProfile>& profiles);

}  // namespace disclab
