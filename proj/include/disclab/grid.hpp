#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace disclab {

using cplx = std::complex<double>;

/// Radial quadrature grid on [nodes.front(), r_max].
///
/// Two schemes: `linear` (uniform spacing) and `hybrid` (uniform on
/// [0, r_lin], geometric on [r_lin, r_max]).  Weights are composite
/// trapezoid weights on the nodes, so integrating samples is a dot
/// product with `weights`.
struct RadialGrid {
    enum class Scheme { linear, hybrid };

    std::vector<double> nodes;    // strictly increasing, last == r_max
    std::vector<double> weights;  // trapezoid weights, all > 0
    double r_max = 0.0;
    Scheme scheme = Scheme::linear;

    std::size_t size() const { return nodes.size(); }
    double spacing_near(double r) const;  // local node spacing around r

    // trapezoid integral of arbitrary samples (must match node count)
    double integrate(const std::vector<double>& samples) const;

    bool same_nodes(const RadialGrid& other, double tol = 0.0) const;
};

RadialGrid make_grid(RadialGrid::Scheme scheme, double r_max, std::size_t count,
                     double r_lin = 0.0);

/// Complex samples on a RadialGrid with piecewise-linear interpolation.
struct RadialProfile {
    RadialGrid grid;
    std::vector<cplx> values;

    RadialProfile() = default;
    RadialProfile(RadialGrid g, std::vector<cplx> v);

    std::size_t size() const { return values.size(); }
    cplx operator()(double r) const;  // piecewise-linear evaluation

    static RadialProfile sample(const RadialGrid& g, const std::function<cplx(double)>& f);
    static RadialProfile zeros(const RadialGrid& g);
};

void write_profile_csv(const RadialProfile& p, const std::string& path);
RadialProfile read_profile_csv(const std::string& path);

/// Spherical-harmonic mode label: degree k, multiplicity index l, dimension n.
struct ModeIndex {
    int k = 0;
    int l = 1;
    int n = 2;

    bool operator<(const ModeIndex& o) const {
        if (n != o.n) return n < o.n;
        if (k != o.k) return k < o.k;
        return l < o.l;
    }
};

/// Dimension of the space of degree-k spherical harmonics in R^n.
long long harmonic_space_dim(int n, int k);

void validate(const ModeIndex& m);  // throws std::invalid_argument

/// Finitely many modes (k,l) -> radial profile, all on one grid.
struct ModeFunction {
    std::map<ModeIndex, RadialProfile> modes;
    int n = 2;

    void insert(const ModeIndex& m, RadialProfile p);
    const RadialGrid& grid() const;  // throws if empty
    bool empty() const { return modes.empty(); }
};

struct NormParams {
    double p = 2.0;
    std::optional<double> q;
    std::optional<double> s;
    std::optional<double> s_conj;
    int n = 2;
};

void validate(const NormParams& params);

/// Mixed norm ( \int_0^rmax (sum_{k,l} |f_k^l(r)|^2)^{p/2} r^{n-1} dr )^{1/p}.
double mixed_norm(const ModeFunction& f, const NormParams& params);

struct WeightedNorm {
    double value = 0.0;
    bool divergence_warning = false;
    operator double() const { return value; }
};

/// ( \int |g(r)|^p r^alpha dr )^{1/p} over g's grid.
/// Sets divergence_warning when alpha <= -1 and g(0) != 0.
WeightedNorm weighted_lp_norm(const RadialProfile& g, double p, double alpha);

}  // namespace disclab
