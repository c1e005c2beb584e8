#pragma once

#include <array>
#include <string>
#include <vector>

namespace disclab {

/// Annulus R <= |x| <= R + Delta with tangency radius R0 and tube width eps.
struct ShellSpec {
    int n = 2;          // ambient dimension, 2 or 3
    double R = 1.0;     // inner radius
    double Delta = 1.0; // thickness
    double R0 = 0.5;    // tangency radius, in (0, R]
    double eps = 0.01;  // tube width (eps <= Delta/16)

    bool thin() const { return Delta < 0.5 * R; }
};

void validate(const ShellSpec& spec);  // throws std::invalid_argument

/// Axis segment from the outer sphere to the far inner-sphere crossing; the
/// axis line is tangent to |x| = R0, meets the NS (z / y) axis, and points
/// north.
struct Tube {
    std::array<double, 3> p{};  // outer-sphere endpoint
    std::array<double, 3> q{};  // inner-sphere endpoint
    double eps = 0.0;

    double length() const;
};

struct TubeSet {
    ShellSpec spec;
    std::vector<Tube> tubes;
};

/// Maximal brush: tubes with pairwise disjoint outer-sphere footprints,
/// equal angular spacing; for n = 3 the meridian-band construction.
TubeSet generate_brush(const ShellSpec& spec);

struct OverlapHistogram {
    std::vector<double> measure;  // measure[d-1] = |{ sum chi_T >= d }|
    double cell = 0.0;            // raster spacing h
    int n = 2;

    std::size_t levels() const { return measure.size(); }
};

/// Rasterized overlap counts on a Cartesian grid of spacing h (h <= eps/4).
OverlapHistogram overlap_histogram(const TubeSet& tubes, double h);

struct OverlapFit {
    double slope = 0.0;
    double intercept = 0.0;
    bool ok = false;
};

/// Least-squares slope of log measure vs log d.  mass_quantile < 1 restricts
/// the fit to the shallowest levels carrying that fraction of int sum chi_T
/// (the brush-argument regime; deeper levels sit in caustic neighborhoods
/// the bound only majorizes).
OverlapFit fit_overlap_exponent(const OverlapHistogram& hist, double mass_quantile = 1.0);

/// Max overlap count over cells at radius ~r, times (r/(R+Delta))^{n-1}:
/// the per-sphere constant, which the brush bound says is r-stable.
struct SphereOverlapRow {
    double r = 0.0;
    int max_count = 0;
    double constant = 0.0;
};

std::vector<SphereOverlapRow> per_sphere_overlap(const TubeSet& tubes, double h,
                                                 const std::vector<double>& radii);

struct ThinShellResult {
    OverlapHistogram hist;
    double max_ratio = 0.0;  // max over d of measure(d) d^2 / (Delta R)
};

/// Thin-shell (n = 2) check of measure(d) <= C Delta R / d^2.
ThinShellResult thin_shell_2d(const ShellSpec& spec, double h);

void write_histogram_csv(const OverlapHistogram& hist, const std::string& path);
void write_tubes_json(const TubeSet& tubes, const std::string& path);

}  // namespace disclab
