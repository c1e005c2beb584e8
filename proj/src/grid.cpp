#include "disclab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace disclab {

namespace {

std::vector<double> trapezoid_weights(const std::vector<double>& nodes) {
    const std::size_t n = nodes.size();
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = nodes[i + 1] - nodes[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    return w;
}

}  // namespace

double RadialGrid::spacing_near(double r) const {
    if (nodes.size() < 2) throw std::invalid_argument("grid too small");
    auto it = std::lower_bound(nodes.begin(), nodes.end(), r);
    std::size_t i = static_cast<std::size_t>(it - nodes.begin());
    if (i + 1 >= nodes.size()) i = nodes.size() - 2;
    return nodes[i + 1] - nodes[i];
}

double RadialGrid::integrate(const std::vector<double>& samples) const {
    if (samples.size() != nodes.size())
        throw std::invalid_argument("sample count does not match grid");
    double acc = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double term = samples[i] * weights[i] - comp;
        const double next = acc + term;
        comp = (next - acc) - term;
        acc = next;
    }
    return acc;
}

bool RadialGrid::same_nodes(const RadialGrid& other, double tol) const {
    if (nodes.size() != other.nodes.size()) return false;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (std::abs(nodes[i] - other.nodes[i]) > tol) return false;
    return true;
}

RadialGrid make_grid(RadialGrid::Scheme scheme, double r_max, std::size_t count,
                     double r_lin) {
    if (!(r_max > 0.0)) throw std::invalid_argument("make_grid: r_max must be > 0");
    if (count < 16) throw std::invalid_argument("make_grid: need at least 16 nodes");

    RadialGrid g;
    g.r_max = r_max;
    g.scheme = scheme;
    g.nodes.resize(count);

    if (scheme == RadialGrid::Scheme::linear) {
        const double h = r_max / static_cast<double>(count - 1);
        for (std::size_t i = 0; i < count; ++i) g.nodes[i] = h * static_cast<double>(i);
        g.nodes.back() = r_max;
    } else {
        if (!(r_lin > 0.0) || !(r_lin < r_max))
            throw std::invalid_argument("make_grid: hybrid needs 0 < r_lin < r_max");
        // uniform on [0, r_lin], geometric node spacing on [r_lin, r_max];
        // split node count so the linear part keeps roughly half the nodes
        const std::size_t n_lin = std::max<std::size_t>(8, count / 2);
        const std::size_t n_geo = count - n_lin;  // >= 8 given count >= 16
        const double h = r_lin / static_cast<double>(n_lin);
        for (std::size_t i = 0; i < n_lin; ++i) g.nodes[i] = h * static_cast<double>(i);
        const double ratio = std::pow(r_max / r_lin, 1.0 / static_cast<double>(n_geo));
        for (std::size_t j = 0; j < n_geo; ++j)
            g.nodes[n_lin + j] = r_lin * std::pow(ratio, static_cast<double>(j));
        g.nodes.back() = r_max;
    }

    for (std::size_t i = 0; i + 1 < count; ++i)
        if (!(g.nodes[i] < g.nodes[i + 1]))
            throw std::invalid_argument("make_grid: nodes not strictly increasing");

    g.weights = trapezoid_weights(g.nodes);
    return g;
}

RadialProfile::RadialProfile(RadialGrid g, std::vector<cplx> v)
    : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.nodes.size())
        throw std::invalid_argument("profile values do not match grid node count");
}

cplx RadialProfile::operator()(double r) const {
    const auto& x = grid.nodes;
    if (r <= x.front()) return values.front();
    if (r >= x.back()) return values.back();
    std::size_t i;
    if (grid.scheme == RadialGrid::Scheme::linear) {
        const double h = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
        i = std::min(static_cast<std::size_t>((r - x.front()) / h), x.size() - 2);
        // guard against rounding at cell boundaries
        if (r < x[i]) --i;
        else if (r >= x[i + 1]) ++i;
    } else {
        auto it = std::upper_bound(x.begin(), x.end(), r);
        i = static_cast<std::size_t>(it - x.begin()) - 1;
    }
    const double t = (r - x[i]) / (x[i + 1] - x[i]);
    return values[i] * (1.0 - t) + values[i + 1] * t;
}

RadialProfile RadialProfile::sample(const RadialGrid& g, const std::function<cplx(double)>& f) {
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g.nodes[i]);
    return RadialProfile(g, std::move(v));
}

RadialProfile RadialProfile::zeros(const RadialGrid& g) {
    return RadialProfile(g, std::vector<cplx>(g.size(), cplx(0.0, 0.0)));
}

void write_profile_csv(const RadialProfile& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "r,re,im\n";
    char buf[128];
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", p.grid.nodes[i],
                      p.values[i].real(), p.values[i].imag());
        out << buf;
    }
}

RadialProfile read_profile_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> r;
    std::vector<cplx> v;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        double a, b, c;
        char comma;
        ss >> a >> comma >> b >> comma >> c;
        r.push_back(a);
        v.push_back(cplx(b, c));
    }
    RadialGrid g;
    g.nodes = std::move(r);
    g.r_max = g.nodes.back();
    g.weights = trapezoid_weights(g.nodes);
    return RadialProfile(std::move(g), std::move(v));
}

long long harmonic_space_dim(int n, int k) {
    auto binom = [](long long a, long long b) -> long long {
        if (b < 0 || a < 0 || b > a) return 0;
        b = std::min(b, a - b);
        long long r = 1;
        for (long long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return r;
    };
    return binom(n + k - 1, k) - binom(n + k - 3, k - 2);
}

void validate(const ModeIndex& m) {
    if (m.n < 2) throw std::invalid_argument("ModeIndex: n must be >= 2");
    if (m.k < 0) throw std::invalid_argument("ModeIndex: k must be >= 0");
    const long long dk = harmonic_space_dim(m.n, m.k);
    if (m.l < 1 || m.l > dk)
        throw std::invalid_argument("ModeIndex: l out of range for (n,k)");
}

void ModeFunction::insert(const ModeIndex& m, RadialProfile p) {
    validate(m);
    if (m.n != n) throw std::invalid_argument("ModeFunction: dimension mismatch");
    if (!modes.empty() && !p.grid.same_nodes(grid()))
        throw std::invalid_argument("ModeFunction: all profiles must share one grid");
    modes.emplace(m, std::move(p));
}

const RadialGrid& ModeFunction::grid() const {
    if (modes.empty()) throw std::logic_error("ModeFunction: empty");
    return modes.begin()->second.grid;
}

void validate(const NormParams& params) {
    if (!(params.p > 1.0) || !std::isfinite(params.p))
        throw std::invalid_argument("NormParams: p must be finite and > 1");
    if (params.s && params.s_conj) {
        const double lhs = 1.0 / *params.s + 1.0 / *params.s_conj;
        if (std::abs(lhs - 1.0) > 1e-12)
            throw std::invalid_argument("NormParams: 1/s + 1/s' must equal 1");
    }
    if (params.q) {
        const double lhs = 2.0 / params.p + 1.0 / *params.q;
        if (std::abs(lhs - 1.0) > 1e-12)
            throw std::invalid_argument("NormParams: 2/p + 1/q must equal 1");
    }
}

double mixed_norm(const ModeFunction& f, const NormParams& params) {
    validate(params);
    if (f.empty()) throw std::invalid_argument("mixed_norm: empty mode function");
    const RadialGrid& g = f.grid();
    for (const auto& [m, prof] : f.modes)
        if (!prof.grid.same_nodes(g))
            throw std::invalid_argument("mixed_norm: profiles on mismatched grids");

    const double p = params.p;
    const int n = params.n;
    std::vector<double> integrand(g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        double sq = 0.0;
        for (const auto& [m, prof] : f.modes) sq += std::norm(prof.values[i]);
        integrand[i] = std::pow(sq, 0.5 * p) * std::pow(g.nodes[i], n - 1);
    }
    return std::pow(g.integrate(integrand), 1.0 / p);
}

WeightedNorm weighted_lp_norm(const RadialProfile& g, double p, double alpha) {
    if (!(p >= 1.0)) throw std::invalid_argument("weighted_lp_norm: p must be >= 1");
    WeightedNorm out;
    const auto& grid = g.grid;
    const std::size_t n = grid.size();
    std::vector<double> integrand(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = grid.nodes[i];
        const double mag = std::abs(g.values[i]);
        if (r == 0.0) {
            if (alpha == 0.0) {
                integrand[i] = std::pow(mag, p);
            } else if (alpha > 0.0) {
                integrand[i] = 0.0;
            } else {
                // r^alpha blows up at 0; flag genuine divergence, otherwise
                // leave the node out (the first cell is handled below)
                if (alpha <= -1.0 && mag != 0.0) out.divergence_warning = true;
                integrand[i] = 0.0;
            }
        } else {
            integrand[i] = std::pow(mag, p) * std::pow(r, alpha);
        }
    }
    double total = grid.integrate(integrand);
    // integrable power singularity: replace the first trapezoid cell with the
    // exact cell integral of |g(mid)|^p r^alpha
    if (grid.nodes[0] == 0.0 && alpha < 0.0 && alpha > -1.0 && n >= 2) {
        const double h = grid.nodes[1];
        const double cell_old = 0.5 * h * (integrand[0] + integrand[1]);
        const double gmid = std::abs(g(0.5 * h));
        const double cell_new = std::pow(gmid, p) * std::pow(h, alpha + 1.0) / (alpha + 1.0);
        total += cell_new - cell_old;
    }
    out.value = std::pow(std::max(total, 0.0), 1.0 / p);
    return out;
}

}  // namespace disclab
