#include "disclab/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace disclab {

namespace {

std::vector<double> prefix_sums(std::span<const double> v) {
    std::vector<double> p(v.size() + 1, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) p[i + 1] = p[i] + v[i];
    return p;
}

}  // namespace

double hl_max_1d(std::span<const double> samples, std::size_t index) {
    if (samples.empty() || index >= samples.size())
        throw std::invalid_argument("hl_max_1d: index out of range");
    const auto p = prefix_sums(samples);
    double best = 0.0;
    for (std::size_t a = 0; a <= index; ++a) {
        for (std::size_t b = index; b < samples.size(); ++b) {
            const double avg = (p[b + 1] - p[a]) / static_cast<double>(b + 1 - a);
            best = std::max(best, avg);
        }
    }
    return best;
}

std::vector<double> hl_max_all(std::span<const double> samples) {
    const std::size_t n = samples.size();
    const auto p = prefix_sums(samples);
    std::vector<double> out(n, 0.0);
    std::vector<double> suffix(n, 0.0);
    // M(i) = max_{a <= i} max_{b >= i} avg(a, b); for each start a keep the
    // suffix maxima of avg(a, .) and fold into the running answer
    for (std::size_t a = 0; a < n; ++a) {
        double run = 0.0;
        for (std::size_t b = n; b-- > a;) {
            const double avg = (p[b + 1] - p[a]) / static_cast<double>(b + 1 - a);
            run = std::max(run, avg);
            suffix[b] = run;
        }
        for (std::size_t i = a; i < n; ++i) out[i] = std::max(out[i], suffix[i]);
    }
    return out;
}

double universal_kakeya_radial(const MaximalQuery& q) {
    const RadialGrid& grid = q.profile.grid;
    if (!(q.rho >= 0.0) || q.rho > 0.5 * grid.r_max)
        throw std::invalid_argument("universal_kakeya_radial: need rho <= r_max/2");
    if (q.n_u < 32 || q.n_c < 32)
        throw std::invalid_argument("universal_kakeya_radial: resolution counts >= 32");

    // chord-lattice spacing tied to the mean profile spacing (equals the
    // node spacing on linear grids)
    const double dc =
        (grid.nodes.back() - grid.nodes.front()) / static_cast<double>(grid.size() - 1);

    double best = 0.0;
    for (std::size_t iu = 0; iu <= q.n_u; ++iu) {
        const double u = q.rho * static_cast<double>(iu) / static_cast<double>(q.n_u);
        const double c0 = std::sqrt(std::max(q.rho * q.rho - u * u, 0.0));
        const double c_lim = std::sqrt(std::max(grid.r_max * grid.r_max - u * u, 0.0));

        // samples of f(sqrt(u^2 + c^2)) on the lattice c = (j - m) dc
        const std::size_t m = static_cast<std::size_t>(std::floor(c_lim / dc));
        const std::size_t cnt = 2 * m + 1;
        std::vector<double> g(cnt);
        for (std::size_t j = 0; j < cnt; ++j) {
            const double c = (static_cast<double>(j) - static_cast<double>(m)) * dc;
            g[j] = std::abs(q.profile(std::hypot(u, c)));
        }
        // trapezoid prefix: P[j] = int from c_{-m} to lattice point j
        std::vector<double> P(cnt, 0.0);
        for (std::size_t j = 1; j < cnt; ++j) P[j] = P[j - 1] + 0.5 * (g[j - 1] + g[j]) * dc;
        auto value_at = [&](double c) {
            const double x = (c + static_cast<double>(m) * dc) / dc;
            const std::size_t j = std::min(static_cast<std::size_t>(std::max(x, 0.0)),
                                           cnt - 2);
            const double t = x - static_cast<double>(j);
            return g[j] * (1.0 - t) + g[j + 1] * t;
        };
        auto integral_to = [&](double c) {
            const double x = (c + static_cast<double>(m) * dc) / dc;
            const std::size_t j = std::min(static_cast<std::size_t>(std::max(x, 0.0)),
                                           cnt - 2);
            const double t = (x - static_cast<double>(j)) * dc;
            const double gj = g[j], gc = value_at(c);
            return P[j] + 0.5 * (gj + gc) * t;
        };

        for (std::size_t i1 = 0; i1 <= q.n_c; ++i1) {
            const double c1 = -c_lim + (c0 + c_lim) * static_cast<double>(i1) /
                                           static_cast<double>(q.n_c);
            const double int1 = integral_to(c1);
            for (std::size_t i2 = 0; i2 <= q.n_c; ++i2) {
                const double c2 = c0 + (c_lim - c0) * static_cast<double>(i2) /
                                           static_cast<double>(q.n_c);
                const double len = c2 - c1;
                double avg;
                if (len < 0.5 * dc) {
                    avg = std::abs(q.profile(q.rho));  // degenerate short segment
                } else {
                    avg = (integral_to(c2) - int1) / len;
                }
                best = std::max(best, avg);
            }
        }
    }
    return best;
}

KakeyaScanRow kakeya_lp_scan_one(double delta, double p, int n, const RadialGrid& grid,
                                 std::size_t n_u, std::size_t n_c,
                                 std::size_t rho_stride) {
    KakeyaScanRow row;
    row.n = n;
    row.p = p;
    row.delta = delta;
    const double expo = -static_cast<double>(n) / p;
    auto f = RadialProfile::sample(grid, [&](double r) {
        return cplx((r >= delta && r <= 1.0) ? std::pow(r, expo) : 0.0, 0.0);
    });
    row.norm_f = weighted_lp_norm(f, p, n - 1.0).value;
    if (row.norm_f == 0.0) {
        row.empty = true;
        return row;
    }
    // U f evaluated on a strided subgrid; the norm uses the subgrid trapezoid
    std::vector<double> rs, us;
    for (std::size_t i = 0; i < grid.size(); i += rho_stride) {
        const double rho = grid.nodes[i];
        if (rho > 0.5 * grid.r_max) break;
        MaximalQuery q{f, rho, n_u, n_c};
        rs.push_back(rho);
        us.push_back(universal_kakeya_radial(q));
    }
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
        const double f0 = std::pow(us[i], p) * std::pow(rs[i], n - 1.0);
        const double f1 = std::pow(us[i + 1], p) * std::pow(rs[i + 1], n - 1.0);
        acc += 0.5 * (f0 + f1) * (rs[i + 1] - rs[i]);
    }
    row.norm_uf = std::pow(acc, 1.0 / p);
    row.ratio = row.norm_uf / row.norm_f;
    return row;
}

std::vector<KakeyaScanRow> kakeya_lp_scan(const std::vector<double>& deltas, double p, int n,
                                          const RadialGrid& grid, std::size_t n_u,
                                          std::size_t n_c, std::size_t rho_stride) {
    if (!(p > 1.0) || n < 2) throw std::invalid_argument("kakeya_lp_scan: need p > 1, n >= 2");
    std::vector<KakeyaScanRow> rows;
    for (double d : deltas)
        rows.push_back(kakeya_lp_scan_one(d, p, n, grid, n_u, n_c, rho_stride));
    return rows;
}

void write_kakeya_csv(const std::vector<KakeyaScanRow>& rows, std::size_t resolution,
                      const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "n,p,delta,norm_f,norm_Uf,ratio,resolution\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%zu\n", r.n, r.p,
                      r.delta, r.norm_f, r.norm_uf, r.ratio, resolution);
        out << buf;
    }
}

double radial_field_max_test(const RadialProfile& profile, double p, int n) {
    if (!(p > 1.0)) throw std::invalid_argument("radial_field_max_test: p must be > 1");
    const RadialGrid& grid = profile.grid;
    // mirror onto a uniform lattice over [-r_max, r_max]; segments along the
    // ray through the origin see radius |s|
    const std::size_t half = std::max<std::size_t>(grid.size(), 129);
    const std::size_t cnt = 2 * half - 1;
    const double h = grid.r_max / static_cast<double>(half - 1);
    std::vector<double> line(cnt);
    for (std::size_t i = 0; i < cnt; ++i) {
        const double s = (static_cast<double>(i) - static_cast<double>(half - 1)) * h;
        line[i] = std::abs(profile(std::abs(s)));
    }
    const auto mx = hl_max_all(line);

    double num = 0.0, den = 0.0;
    for (std::size_t i = half - 1; i < cnt; ++i) {
        const double r = (static_cast<double>(i) - static_cast<double>(half - 1)) * h;
        const double w = (i == half - 1 || i + 1 == cnt) ? 0.5 * h : h;
        const double meas = std::pow(r, n - 1.0) * w;
        num += std::pow(mx[i], p) * meas;
        den += std::pow(line[i], p) * meas;
    }
    if (den == 0.0) return 0.0;
    return std::pow(num / den, 1.0 / p);
}

}  // namespace disclab
