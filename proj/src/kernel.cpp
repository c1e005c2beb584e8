#include "disclab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "disclab/bessel.hpp"

namespace disclab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kNearDiag = 1e-3;  // relative width of the removable-singularity band

constexpr double kGL12x[6] = {0.1252334085114689, 0.3678314989981802,
                              0.5873179542866175, 0.7699026741943047,
                              0.9041172563704749, 0.9815606342467192};
constexpr double kGL12w[6] = {0.2491470458134028, 0.2334925365383548,
                              0.2031674267230659, 0.1600783285433462,
                              0.1069393259953184, 0.04717533638651183};

// quadrature of sqrt(tr) int_0^1 J_nu(r s) J_nu(t s) s ds; panel width bounds
// the phase change so fixed-order Gauss resolves the oscillation
double kernel_by_s_integral(double nu, double t, double r) {
    const double rate = t + r + 2.0;
    const std::size_t panels = std::max<std::size_t>(8, static_cast<std::size_t>(
                                                            std::ceil(rate / (0.5 * kPi))));
    const double w = 1.0 / static_cast<double>(panels);
    double acc = 0.0;
    for (std::size_t i = 0; i < panels; ++i) {
        const double a = w * static_cast<double>(i);
        const double b = (i + 1 == panels) ? 1.0 : a + w;
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (int g = 0; g < 6; ++g) {
            for (double s : {c + h * kGL12x[g], c - h * kGL12x[g]}) {
                acc += kGL12w[g] * h * s * bessel_j({nu, r * s}).value *
                       bessel_j({nu, t * s}).value;
            }
        }
    }
    return std::sqrt(t * r) * acc;
}

// closed form via the Lommel integral,
//   K_nu(t,r) = sqrt(tr) (t J'(t) J(r) - r J'(r) J(t)) / (r^2 - t^2),
// written with cached J, J' values
double kernel_closed_form(double t, double r, double jt, double jpt, double jr, double jpr) {
    return std::sqrt(t * r) * (t * jpt * jr - r * jpr * jt) / (r * r - t * t);
}

// K_nu(t,t) = (t/2) [J'(t)^2 + (1 - nu^2/t^2) J(t)^2]  (Lommel's second integral)
double kernel_diag(double nu, double t, double jt, double jpt) {
    return 0.5 * t * (jpt * jpt + (1.0 - nu * nu / (t * t)) * jt * jt);
}

bool near_diagonal(double t, double r) {
    return std::abs(t - r) <= kNearDiag * std::max({1.0, t, r});
}

RadialGrid make_interval_grid(double a, double b, std::size_t count) {
    RadialGrid g;
    g.r_max = b;
    g.scheme = RadialGrid::Scheme::linear;
    g.nodes.resize(count);
    for (std::size_t i = 0; i < count; ++i)
        g.nodes[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
    g.weights.assign(count, 0.0);
    for (std::size_t i = 0; i + 1 < count; ++i) {
        const double h = g.nodes[i + 1] - g.nodes[i];
        g.weights[i] += 0.5 * h;
        g.weights[i + 1] += 0.5 * h;
    }
    return g;
}

struct BesselTable {
    std::vector<double> j, jp;
};

BesselTable tabulate(double nu, const std::vector<double>& xs) {
    BesselTable tb;
    tb.j.resize(xs.size());
    tb.jp.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        tb.j[i] = bessel_j({nu, xs[i]}).value;
        if (xs[i] > 0.0) {
            // J'_nu = (nu/x) J_nu - J_{nu+1}: one extra evaluation per node
            tb.jp[i] = nu / xs[i] * tb.j[i] - bessel_j({nu + 1.0, xs[i]}).value;
        } else {
            tb.jp[i] = bessel_j_prime({nu, xs[i]}).value;
        }
    }
    return tb;
}

double lp_norm_weighted(const std::vector<double>& v, const std::vector<double>& mu,
                        double p) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += std::pow(std::abs(v[i]), p) * mu[i];
    return std::pow(s, 1.0 / p);
}

}  // namespace

bool RegionPartition::contains(Region reg, double x) const {
    switch (reg) {
        case Region::zero: return x < i0_hi();
        case Region::critical: return x >= i0_hi() && x < ic_hi();
        case Region::infinity: return x >= ic_hi();
        case Region::all: return true;
    }
    return false;
}

std::vector<RegionPartition::Band> RegionPartition::transition_bands() const {
    std::vector<Band> bands;
    const double nu13 = std::cbrt(nu);
    bands.push_back({nu - nu13, nu + nu13, -1, true});  // central band I_0
    const int kmax = static_cast<int>(std::floor(2.0 / 3.0 * std::log2(nu)));
    for (int k = 0; k <= kmax; ++k) {
        const double lo = std::pow(2.0, k) * nu13;
        const double hi = std::pow(2.0, k + 1) * nu13;
        bands.push_back({nu + lo, nu + hi, k, true});
        bands.push_back({nu - hi, nu - lo, k, false});
    }
    return bands;
}

double kernel_k(double nu, double t, double r) {
    if (!(t > 0.0) || !(r > 0.0))
        throw std::invalid_argument("kernel_k: t and r must be > 0");
    if (near_diagonal(t, r)) return kernel_by_s_integral(nu, t, r);
    const double jt = bessel_j({nu, t}).value;
    const double jr = bessel_j({nu, r}).value;
    const double jpt = bessel_j_prime({nu, t}).value;
    const double jpr = bessel_j_prime({nu, r}).value;
    return kernel_closed_form(t, r, jt, jpt, jr, jpr);
}

double kernel_split(const KernelSpec& spec, double t, double r) {
    if (!(t > 0.0) || !(r > 0.0))
        throw std::invalid_argument("kernel_split: t and r must be > 0");
    RegionPartition part{spec.nu};
    if (!part.contains(spec.region_t, t) || !part.contains(spec.region_r, r)) return 0.0;
    if (spec.split == KernelSplit::full) return kernel_k(spec.nu, t, r);

    if (t == r && (spec.split == KernelSplit::j1 || spec.split == KernelSplit::j3))
        throw std::domain_error("kernel_split: j1/j3 singular at t = r");

    const double jt = bessel_j({spec.nu, t}).value;
    const double jr = bessel_j({spec.nu, r}).value;
    const double st = std::sqrt(t), sr = std::sqrt(r);
    switch (spec.split) {
        case KernelSplit::j1:
            return st * bessel_j_prime({spec.nu, t}).value * jr * sr / (2.0 * (r - t));
        case KernelSplit::j2:
            return -st * bessel_j_prime({spec.nu, t}).value * jr * sr / (2.0 * (r + t));
        case KernelSplit::j3:
            return st * jt * bessel_j_prime({spec.nu, r}).value * sr / (2.0 * (t - r));
        case KernelSplit::j4:
            return -st * jt * bessel_j_prime({spec.nu, r}).value * sr / (2.0 * (t + r));
        case KernelSplit::full: break;
    }
    return 0.0;
}

RadialProfile apply_tkn(int n, int k, const RadialProfile& g, const RadialGrid& out_grid) {
    if (n < 2 || k < 0) throw std::invalid_argument("apply_tkn: need n >= 2, k >= 0");
    const double nu = k - 1.0 + 0.5 * n;

    const auto& tg = out_grid.nodes;
    const auto& rg = g.grid.nodes;
    const BesselTable jt = tabulate(nu, tg);
    const BesselTable jr = tabulate(nu, rg);
    const double half_pow = 0.5 * (n - 1.0);

    std::vector<cplx> out(tg.size(), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < tg.size(); ++i) {
        const double t = tg[i];
        if (t == 0.0) {
            // limit row: only the nu = 0 mode survives at the origin, where
            // t^{-1/2} K_0(t, r) -> J_1(r)/sqrt(r)
            if (nu == 0.0 && n == 2) {
                cplx acc(0.0, 0.0);
                for (std::size_t j = 0; j < rg.size(); ++j) {
                    if (rg[j] == 0.0) continue;
                    acc += g.values[j] * bessel_j({1.0, rg[j]}).value * g.grid.weights[j];
                }
                out[i] = acc;
            }
            continue;
        }
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < rg.size(); ++j) {
            const double r = rg[j];
            if (r == 0.0) continue;  // kernel vanishes like sqrt(r)
            double kv;
            if (t == r) {
                kv = kernel_diag(nu, t, jt.j[i], jt.jp[i]);
            } else if (near_diagonal(t, r)) {
                const double m = 0.5 * (t + r);
                const double jm = bessel_j({nu, m}).value;
                const double jpm = nu / m * jm - bessel_j({nu + 1.0, m}).value;
                kv = kernel_diag(nu, m, jm, jpm);
            } else {
                kv = kernel_closed_form(t, r, jt.j[i], jt.jp[i], jr.j[j], jr.jp[j]);
            }
            acc += g.values[j] * std::pow(r, half_pow) * kv * g.grid.weights[j];
        }
        out[i] = acc * std::pow(t, -half_pow);
    }
    return RadialProfile(out_grid, std::move(out));
}

std::vector<double> DiscreteOperator::apply(const std::vector<double>& x) const {
    std::vector<double> y(rows(), 0.0);
    const std::size_t nc = cols();
    for (std::size_t i = 0; i < rows(); ++i) {
        double s = 0.0;
        const double* row = entries.data() + i * nc;
        for (std::size_t j = 0; j < nc; ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

std::vector<double> DiscreteOperator::apply_transpose(const std::vector<double>& x) const {
    std::vector<double> y(cols(), 0.0);
    const std::size_t nc = cols();
    for (std::size_t i = 0; i < rows(); ++i) {
        const double* row = entries.data() + i * nc;
        const double xi = x[i];
        for (std::size_t j = 0; j < nc; ++j) y[j] += row[j] * xi;
    }
    return y;
}

DiscreteOperator discretize_kernel(const KernelSpec& spec, const RadialGrid& row_grid,
                                   const RadialGrid& col_grid) {
    DiscreteOperator op;
    op.row_grid = row_grid;
    op.col_grid = col_grid;
    const auto& ts = row_grid.nodes;
    const auto& rs = col_grid.nodes;
    op.entries.assign(ts.size() * rs.size(), 0.0);

    RegionPartition part{spec.nu};
    const BesselTable jt = tabulate(spec.nu, ts);
    const BesselTable jr = tabulate(spec.nu, rs);

    std::vector<double> row_h(ts.size()), col_h(rs.size());
    for (std::size_t i = 0; i < ts.size(); ++i) row_h[i] = row_grid.spacing_near(ts[i]);
    for (std::size_t j = 0; j < rs.size(); ++j) col_h[j] = col_grid.spacing_near(rs[j]);

    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double t = ts[i];
        if (t <= 0.0 || !part.contains(spec.region_t, t)) continue;
        const double st = std::sqrt(t);
        for (std::size_t j = 0; j < rs.size(); ++j) {
            const double r = rs[j];
            if (r <= 0.0 || !part.contains(spec.region_r, r)) continue;
            const double sr = std::sqrt(r);
            double kv = 0.0;
            switch (spec.split) {
                case KernelSplit::full:
                    if (t == r) {
                        kv = kernel_diag(spec.nu, t, jt.j[i], jt.jp[i]);
                    } else if (near_diagonal(t, r)) {
                        const double m = 0.5 * (t + r);
                        const double jm = bessel_j({spec.nu, m}).value;
                        const double jpm =
                            spec.nu / m * jm - bessel_j({spec.nu + 1.0, m}).value;
                        kv = kernel_diag(spec.nu, m, jm, jpm);
                    } else {
                        kv = kernel_closed_form(t, r, jt.j[i], jt.jp[i], jr.j[j],
                                                jr.jp[j]);
                    }
                    break;
                case KernelSplit::j1:
                    // principal-value convention: drop the diagonal cell
                    kv = (std::abs(t - r) < 0.5 * std::max(row_h[i], col_h[j]))
                             ? 0.0
                             : st * jt.jp[i] * jr.j[j] * sr / (2.0 * (r - t));
                    break;
                case KernelSplit::j2:
                    kv = -st * jt.jp[i] * jr.j[j] * sr / (2.0 * (r + t));
                    break;
                case KernelSplit::j3:
                    kv = (std::abs(t - r) < 0.5 * std::max(row_h[i], col_h[j]))
                             ? 0.0
                             : st * jt.j[i] * jr.jp[j] * sr / (2.0 * (t - r));
                    break;
                case KernelSplit::j4:
                    kv = -st * jt.j[i] * jr.jp[j] * sr / (2.0 * (t + r));
                    break;
            }
            op.entries[i * rs.size() + j] = kv * col_grid.weights[j];
        }
    }
    return op;
}

NormEstimate lp_operator_norm(const DiscreteOperator& A, double p, double alpha,
                              int max_iter, double tol) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::invalid_argument("lp_operator_norm: p must be in (1, inf)");
    NormEstimate est;
    const std::size_t nr = A.rows(), nc = A.cols();
    if (nr == 0 || nc == 0) return est;

    std::vector<double> mu_r(nr), mu_c(nc);
    for (std::size_t i = 0; i < nr; ++i)
        mu_r[i] = std::pow(std::max(A.row_grid.nodes[i], 0.0), alpha) * A.row_grid.weights[i];
    for (std::size_t j = 0; j < nc; ++j)
        mu_c[j] = std::pow(std::max(A.col_grid.nodes[j], 0.0), alpha) * A.col_grid.weights[j];
    for (auto& m : mu_r) if (!std::isfinite(m) || m < 0.0) m = 0.0;
    for (auto& m : mu_c) if (!std::isfinite(m) || m < 0.0) m = 0.0;

    const double q = p / (p - 1.0);
    std::vector<double> x(nc, 1.0);
    {
        const double nx = lp_norm_weighted(x, mu_c, p);
        if (nx == 0.0) return est;
        for (auto& v : x) v /= nx;
    }

    double prev = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        std::vector<double> y = A.apply(x);
        const double ny = lp_norm_weighted(y, mu_r, p);
        est.iterations = it;
        est.value = std::max(est.value, ny);  // lower bound, kept nondecreasing
        if (ny == 0.0) break;
        if (it > 1 && std::abs(ny - prev) <= tol * std::max(ny, 1e-300)) {
            est.converged = true;
            break;
        }
        prev = ny;
        // dual map in the image space, normalized in the dual norm
        std::vector<double> z(nr);
        for (std::size_t i = 0; i < nr; ++i)
            z[i] = std::pow(std::abs(y[i]), p - 1.0) * (y[i] < 0.0 ? -1.0 : 1.0) * mu_r[i];
        std::vector<double> u = A.apply_transpose(z);
        for (std::size_t j = 0; j < nc; ++j) {
            const double uj = mu_c[j] > 0.0 ? u[j] / mu_c[j] : 0.0;
            x[j] = std::pow(std::abs(uj), q - 1.0) * (uj < 0.0 ? -1.0 : 1.0);
        }
        const double nx = lp_norm_weighted(x, mu_c, p);
        if (nx == 0.0) break;
        for (auto& v : x) v /= nx;
    }
    return est;
}

std::vector<KjScanRow> kj_uniformity_scan(double p, const std::vector<double>& nu_list) {
    if (!(p > 4.0 / 3.0) || !(p < 4.0))
        throw std::invalid_argument("kj_uniformity_scan: p must be in (4/3, 4)");
    std::vector<KjScanRow> rows;
    for (double nu : nu_list) {
        const double nu13 = std::cbrt(nu);
        const double h_c = std::min(2.0 * kPi / 20.0, nu13 / 16.0);
        const std::size_t n_c =
            std::max<std::size_t>(64, static_cast<std::size_t>(1.5 * nu / h_c));
        const RadialGrid gc = make_interval_grid(0.5 * nu, 2.0 * nu * (1.0 - 1e-9), n_c);
        const double h_inf = 2.0 * kPi / 12.0;
        const std::size_t n_inf =
            std::max<std::size_t>(64, static_cast<std::size_t>(6.0 * nu / h_inf));
        const RadialGrid ginf = make_interval_grid(2.0 * nu, 8.0 * nu, n_inf);

        const std::pair<Region, Region> blocks[3] = {
            {Region::critical, Region::critical},
            {Region::critical, Region::infinity},
            {Region::infinity, Region::critical},
        };
        for (const auto& [bt, br] : blocks) {
            KernelSpec spec;
            spec.nu = nu;
            spec.split = KernelSplit::j1;
            spec.region_t = bt;
            spec.region_r = br;
            const RadialGrid& rgrid = (bt == Region::critical) ? gc : ginf;
            const RadialGrid& cgrid = (br == Region::critical) ? gc : ginf;
            KjScanRow row;
            row.nu = nu;
            row.block_t = bt;
            row.block_r = br;
            row.estimate = lp_operator_norm(discretize_kernel(spec, rgrid, cgrid), p, 0.0);
            rows.push_back(row);
        }
    }
    return rows;
}

namespace {
const char* region_letter(Region r) {
    switch (r) {
        case Region::zero: return "0";
        case Region::critical: return "c";
        case Region::infinity: return "inf";
        case Region::all: return "all";
    }
    return "?";
}
}  // namespace

void write_kj_csv(const std::vector<KjScanRow>& rows, double p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "nu,p,block,alpha,norm_estimate,iterations,converged\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,(%s;%s),0,%.17g,%d,%d\n", r.nu, p,
                      region_letter(r.block_t), region_letter(r.block_r), r.estimate.value,
                      r.estimate.iterations, r.estimate.converged ? 1 : 0);
        out << buf;
    }
}

WeightedMixedResult weighted_mixed_test(double p, int n, const std::vector<double>& nus,
                                        const std::vector<RadialProfile>& profiles) {
    const double lo = 2.0 * n / (n + 1.0), hi = 2.0 * n / (n - 1.0);
    if (!(p > lo) || !(p < hi))
        throw std::invalid_argument("weighted_mixed_test: p outside (2n/(n+1), 2n/(n-1))");
    if (nus.size() != profiles.size())
        throw std::invalid_argument("weighted_mixed_test: nus and profiles mismatch");

    WeightedMixedResult res;
    double mass = 0.0;
    for (const auto& g : profiles)
        for (const auto& v : g.values) mass += std::norm(v);
    if (profiles.empty() || mass == 0.0) {
        res.empty = true;
        return res;
    }

    const RadialGrid& grid = profiles.front().grid;
    const double alpha = (n - 1.0) * (1.0 - 0.5 * p);
    std::vector<double> lhs_sq(grid.size(), 0.0), rhs_sq(grid.size(), 0.0);
    for (std::size_t l = 0; l < profiles.size(); ++l) {
        KernelSpec spec;
        spec.nu = nus[l];
        spec.split = KernelSplit::full;
        const DiscreteOperator op = discretize_kernel(spec, grid, grid);
        std::vector<double> re(grid.size()), im(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) {
            re[j] = profiles[l].values[j].real();
            im[j] = profiles[l].values[j].imag();
        }
        const auto kre = op.apply(re);
        const auto kim = op.apply(im);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            lhs_sq[i] += kre[i] * kre[i] + kim[i] * kim[i];
            rhs_sq[i] += std::norm(profiles[l].values[i]);
        }
    }
    std::vector<double> li(grid.size()), ri(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = grid.nodes[i] > 0.0 ? std::pow(grid.nodes[i], alpha) : 0.0;
        li[i] = std::pow(lhs_sq[i], 0.5 * p) * w;
        ri[i] = std::pow(rhs_sq[i], 0.5 * p) * w;
    }
    res.lhs = std::pow(grid.integrate(li), 1.0 / p);
    res.rhs = std::pow(grid.integrate(ri), 1.0 / p);
    res.ratio = res.rhs > 0.0 ? res.lhs / res.rhs : 0.0;
    return res;
}

}  // namespace disclab
