#pragma once

#include <string>
#include <vector>

#include "disclab/grid.hpp"

namespace disclab {

/// Finite spherical-harmonic coefficient sequence (one normalized harmonic
/// per degree carries all the norm information).
struct HarmonicCoefficients {
    std::vector<cplx> a;  // a[k] multiplies the degree-k harmonic
    int n = 2;

    static HarmonicCoefficients flat(int kmax, int n);  // a_k = 1, k <= kmax
};

/// Angular L^2 magnitude of the extension of sum a_k Y_k:
///   G(r) = 2 pi r^{1-n/2} ( sum_k |a_k|^2 J_{k-1+n/2}(2 pi r)^2 )^{1/2}.
RadialProfile extension_profile(const HarmonicCoefficients& a, const RadialGrid& grid);

struct ExtensionNorm {
    double value = 0.0;
    bool divergence_flag = false;
    double tail_slope = 0.0;  // log-log slope of the integrand on the last decade
};

/// ( int_{r_min}^{r_max} G(r)^q r^{n-1} dr )^{1/q}; the divergence flag fires
/// when the tail integrand decays slower than r^{-1-1e-2}.
ExtensionNorm extension_mixed_norm(const HarmonicCoefficients& a, double q, double r_max,
                                   double r_min = 1e-3);

/// One dyadic ring [M, 2M] in the rescaled radial variable (J_k(r),
/// the 2 pi absorbed):
/// block 1 sums degrees k < M/2, block 2 degrees in [M/2, 4M], block 3
/// degrees > 4M.
struct DyadicBlockRow {
    double M = 0.0;
    double i_m = 0.0;   // full integral over [M, 2M]
    double i1 = 0.0, i2 = 0.0, i3 = 0.0;
};

struct BlockFit {
    double slope = 0.0;
    double stderr_slope = 0.0;  // least-squares standard error
    bool ok = false;
};

struct DyadicBlockReport {
    std::vector<DyadicBlockRow> rows;
    BlockFit fit1, fit2, fit3;
    double q = 0.0;
    int kmax = 0;
};

DyadicBlockReport dyadic_block_scan(const HarmonicCoefficients& a, double q,
                                    const std::vector<double>& m_list);

/// G_alpha bins of the critical block: A_alpha = sum_{k in G_alpha} |a_k|^2
/// with G_alpha = [M/2 + alpha M^{1/3}, M/2 + (alpha+1) M^{1/3}).
std::vector<double> g_alpha_bins(const HarmonicCoefficients& a, double M);

/// Diagnostic for the transition-bin rate: coefficients concentrated on the
/// single bin [M, M + M^{1/3}) per ring, block value normalized by the bin
/// mass to the power q/2; the fitted slope tracks (4-q)/3.
BlockFit transition_bin_scan(double q, const std::vector<double>& m_list);

struct GeneralBlockReport {
    std::vector<double> m_list;
    std::vector<double> values;
    double slope = 0.0;
    double predicted = 0.0;  // (n-2)(1-q/2) + max((4-q)/2, (4-q)/3, 2-q)
};

/// Total dyadic block with the r^{(1-n/2)q + n - 1} weight in dimension n;
/// the contract is a negative slope exactly when q > 2n/(n-1).
GeneralBlockReport general_dimension_block(const HarmonicCoefficients& a, double q,
                                           const std::vector<double>& m_list);

void write_blocks_csv(const DyadicBlockReport& rep, int n, const std::string& path);

}  // namespace disclab
