#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "disclab/grid.hpp"

namespace disclab {

/// Complex samples on an N x N periodic grid of physical side L.
/// Sample (ix, iy) sits at (ix L/N - L/2, iy L/N - L/2); storage row-major.
struct GridField2D {
    std::size_t N = 0;
    double L = 0.0;
    std::vector<cplx> values;

    GridField2D() = default;
    GridField2D(std::size_t n, double side);

    cplx& at(std::size_t ix, std::size_t iy) { return values[ix * N + iy]; }
    const cplx& at(std::size_t ix, std::size_t iy) const { return values[ix * N + iy]; }

    static GridField2D sample(std::size_t n, double side,
                              const std::function<cplx(double, double)>& f);
};

void validate(const GridField2D& f);  // N >= 32 power of two, finite values

GridField2D operator-(const GridField2D& a, const GridField2D& b);

/// Planar l2 norm  (sum |f|^2 (L/N)^2)^{1/2}.
double planar_l2(const GridField2D& f);

/// Fraction of spectral energy in the outer half of the frequency square
/// (max(|m_x|, |m_y|) > N/4); the wrap-around / aliasing indicator.
double aliasing_indicator(const GridField2D& f);

void fft2d(std::vector<cplx>& v, std::size_t N, bool inverse);

enum class SymbolKind { disc, ball_shifted, half_plane, directional_hilbert, homogeneous };

/// One circular Fourier coefficient of the angular part Omega.
struct OmegaCoeff {
    int m = 1;
    cplx c = cplx(0.0, 0.0);
};

struct MultiplierSymbol {
    SymbolKind kind = SymbolKind::disc;
    double R = 1.0;                         // disc / ball_shifted radius
    double center_x = 0.0, center_y = 0.0;  // ball_shifted center
    double omega_x = 0.0, omega_y = 1.0;    // unit direction
    std::vector<OmegaCoeff> omega_coeffs;   // homogeneous kernels, zero mean

    static MultiplierSymbol disc(double radius);
    static MultiplierSymbol ball_shifted(double radius, double cx, double cy);
    static MultiplierSymbol half_plane(double wx, double wy);
    static MultiplierSymbol directional_hilbert(double wx, double wy);
    static MultiplierSymbol homogeneous(std::vector<OmegaCoeff> coeffs);
};

/// Symbol value at frequency (xi_x, xi_y); lattice points landing exactly on
/// a discontinuity take the midpoint-of-jump value.
cplx symbol_value(const MultiplierSymbol& sym, double xi_x, double xi_y);

GridField2D apply_multiplier(const MultiplierSymbol& sym, const GridField2D& f);

GridField2D modulate(const GridField2D& f, double xi_x, double xi_y);

/// Angular L^2 means A(r) on n_theta-point circles, bilinear resampling.
struct AngularProfile {
    std::vector<double> r;
    std::vector<double> a;  // A(r) = sqrt(mean_theta |f|^2)
};

AngularProfile angular_profile(const GridField2D& f, std::size_t n_r, std::size_t n_theta);

/// Mixed norm via polar resampling: ( int (A(r)^2)^{p/2} r dr )^{1/p}
/// with n_r = N/2 radii and n_theta = 4N angles.
double mixed_norm_grid(const GridField2D& f, double p);

struct CubeDecayResult {
    double slope = 0.0;
    double intercept = 0.0;
    bool fit_ok = false;
    double aliasing = 0.0;
    std::vector<double> partial_r;  // right endpoints of [2, R]
    std::vector<double> partial_i;  // partial mixed-norm integrals int_2^R A^p r dr
    double tail_fraction = 1.0;     // (I(Rmax) - I(Rmax/sqrt2)) / I(Rmax)
    bool diverged = true;
};

/// H_{e2} of the unit-cube indicator: angular decay slope over [r_lo, r_hi]
/// and partial mixed-norm integrals for the exponent threshold test.
CubeDecayResult cube_decay_experiment(double p, double r_lo, double r_hi, std::size_t N,
                                      double L);

/// Mixed-norm distance between the shifted-ball multiplier (R_k = 2^k,
/// center -R_k omega) and the half-plane multiplier, per k.
std::vector<double> ball_to_halfplane_limit(const GridField2D& f, int k_max, double wx,
                                            double wy);

struct DirectionSet {
    std::vector<std::pair<double, double>> dirs;  // unit vectors
};

void validate(const DirectionSet& d);

struct RatioResult {
    double ratio = 0.0;
    bool empty = false;
};

/// || (sum_j |H_j f_j|^2)^{1/2} ||_mixed / || (sum_j |f_j|^2)^{1/2} ||_mixed.
RatioResult meyer_vector_test(const DirectionSet& dirs, const std::vector<GridField2D>& batch,
                              double p);

/// Max over trials of mixed_norm(Tf)/mixed_norm(f) for the homogeneous
/// singular integral with angular part Omega.
RatioResult singular_integral_test(const std::vector<OmegaCoeff>& omega, double p,
                                   const std::vector<GridField2D>& trials);

void write_field_csv(const GridField2D& f, const std::string& path);

}  // namespace disclab
