#include "disclab/tubes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace disclab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr std::size_t kCellCap = std::size_t(1) << 28;

struct Vec2 {
    double x = 0.0, y = 0.0;
};

// 2-D brush tube anchored at outer angle alpha (measured from north):
// direction beta from sin(alpha - beta) = +-R0/rho with the branch that
// approaches the origin (x . d < 0) while pointing north (d_y > 0).
bool make_tube_2d(double alpha, const ShellSpec& spec, Tube& out) {
    const double rho = spec.R + spec.Delta;
    const double asr = std::asin(spec.R0 / rho);
    const Vec2 x{rho * std::sin(alpha), rho * std::cos(alpha)};

    double best_cos = -1.0, best_beta = 0.0;
    for (double beta : {alpha - kPi + asr, alpha - kPi - asr}) {
        const double cb = std::cos(beta);
        if (cb <= 0.0) continue;  // must point north
        if (cb > best_cos + 1e-15 ||
            (std::abs(cb - best_cos) <= 1e-15 && beta < best_beta)) {
            best_cos = cb;
            best_beta = beta;
        }
    }
    if (best_cos <= 0.0) return false;
    const Vec2 d{std::sin(best_beta), std::cos(best_beta)};
    // closest approach at s* = -x.d = sqrt(rho^2 - R0^2) > 0; the far
    // inner-sphere crossing sits beyond it
    const double s_star = -(x.x * d.x + x.y * d.y);
    if (s_star <= 0.0) return false;
    const double reach = spec.R * spec.R - spec.R0 * spec.R0;
    if (reach < 0.0) return false;
    const double s_end = s_star + std::sqrt(reach);
    out.p = {x.x, x.y, 0.0};
    out.q = {x.x + s_end * d.x, x.y + s_end * d.y, 0.0};
    out.eps = spec.eps;
    return true;
}

}  // namespace

void validate(const ShellSpec& spec) {
    if (spec.n != 2 && spec.n != 3)
        throw std::invalid_argument("ShellSpec: n must be 2 or 3");
    if (!(spec.R > 0.0) || !(spec.Delta > 0.0))
        throw std::invalid_argument("ShellSpec: R and Delta must be > 0");
    if (!(spec.R0 > 0.0) || spec.R0 > spec.R)
        throw std::invalid_argument("ShellSpec: tangency radius must lie in (0, R]");
    if (!(spec.eps > 0.0) || spec.eps > spec.Delta / 16.0)
        throw std::invalid_argument("ShellSpec: need 0 < eps <= Delta/16");
}

double Tube::length() const {
    return std::sqrt((q[0] - p[0]) * (q[0] - p[0]) + (q[1] - p[1]) * (q[1] - p[1]) +
                     (q[2] - p[2]) * (q[2] - p[2]));
}

TubeSet generate_brush(const ShellSpec& spec) {
    validate(spec);
    TubeSet set;
    set.spec = spec;
    const double rho = spec.R + spec.Delta;
    const double dalpha = spec.eps / rho;
    const std::size_t n_alpha = static_cast<std::size_t>(std::floor(2.0 * kPi / dalpha));

    if (spec.n == 2) {
        for (std::size_t i = 0; i < n_alpha; ++i) {
            const double alpha = -kPi + 2.0 * kPi * static_cast<double>(i) /
                                            static_cast<double>(n_alpha);
            Tube t;
            if (make_tube_2d(alpha, spec, t)) set.tubes.push_back(t);
        }
    } else {
        // meridian bands H_theta^eps, theta eps-spaced on the half equator
        // (theta and theta + pi span the same plane)
        const std::size_t n_theta = static_cast<std::size_t>(std::floor(kPi / dalpha));
        for (std::size_t j = 0; j < n_theta; ++j) {
            const double theta = kPi * static_cast<double>(j) / static_cast<double>(n_theta);
            const double ex = std::cos(theta), ey = std::sin(theta);
            for (std::size_t i = 0; i < n_alpha; ++i) {
                const double alpha = -kPi + 2.0 * kPi * static_cast<double>(i) /
                                                static_cast<double>(n_alpha);
                Tube flat;
                if (!make_tube_2d(alpha, spec, flat)) continue;
                // embed the in-plane (a, b) coordinates as a e_theta + b e_z
                Tube t;
                t.p = {flat.p[0] * ex, flat.p[0] * ey, flat.p[1]};
                t.q = {flat.q[0] * ex, flat.q[0] * ey, flat.q[1]};
                t.eps = spec.eps;
                set.tubes.push_back(t);
            }
        }
    }
    if (set.tubes.empty()) throw std::domain_error("generate_brush: infeasible shell");
    return set;
}

namespace {

// raster counts with explicit geometry: for each grid column the capsule
// slice is a single interval (the capsule is convex)
struct Raster {
    std::size_t nx = 0, ny = 0, nz = 1;
    double h = 0.0, x0 = 0.0;
    std::vector<std::uint16_t> count;
};

void paint_capsule_2d(Raster& g, const Tube& t) {
    const double w = 0.5 * t.eps;
    const double px = t.p[0], py = t.p[1], qx = t.q[0], qy = t.q[1];
    const double len = t.length();
    const double ux = (qx - px) / len, uy = (qy - py) / len;

    const double xlo = std::min(px, qx) - w, xhi = std::max(px, qx) + w;
    const std::size_t ix_lo = static_cast<std::size_t>(
        std::max(0.0, std::floor((xlo - g.x0) / g.h)));
    const std::size_t ix_hi = static_cast<std::size_t>(
        std::min(static_cast<double>(g.nx - 1), std::ceil((xhi - g.x0) / g.h)));

    for (std::size_t ix = ix_lo; ix <= ix_hi; ++ix) {
        const double x = g.x0 + (static_cast<double>(ix) + 0.5) * g.h;
        double lo = 1e300, hi = -1e300;
        // body: perp^2 <= w^2 with 0 <= t <= len, t = (x-px) ux + (y-py) uy
        // perp^2 = (x-px)^2 + (y-py)^2 - t^2; quadratic in y with leading ux^2
        {
            const double dx = x - px;
            const double a = ux * ux;
            const double b = -2.0 * (dx * ux * uy);
            const double c = dx * dx * (1.0 - ux * ux) - w * w;
            // a y'^2 + b y' + c <= 0 for y' = y - py
            if (a > 1e-30) {
                const double disc = b * b - 4.0 * a * c;
                if (disc >= 0.0) {
                    const double sq = std::sqrt(disc);
                    double y1 = py + (-b - sq) / (2.0 * a);
                    double y2 = py + (-b + sq) / (2.0 * a);
                    // clamp to the 0 <= t <= len band
                    if (std::abs(uy) > 1e-30) {
                        const double tb1 = py + (0.0 - dx * ux) / uy;
                        const double tb2 = py + (len - dx * ux) / uy;
                        y1 = std::max(y1, std::min(tb1, tb2));
                        y2 = std::min(y2, std::max(tb1, tb2));
                    }
                    if (y1 <= y2) {
                        lo = std::min(lo, y1);
                        hi = std::max(hi, y2);
                    }
                }
            } else if (dx * dx <= w * w) {
                // vertical axis: the body spans the full t-range at this x
                const double tb1 = py, tb2 = py + len * uy;
                lo = std::min(lo, std::min(tb1, tb2));
                hi = std::max(hi, std::max(tb1, tb2));
            }
        }
        // end caps
        for (const auto& e : {std::pair{px, py}, std::pair{qx, qy}}) {
            const double dx = x - e.first;
            const double rad = w * w - dx * dx;
            if (rad >= 0.0) {
                const double s = std::sqrt(rad);
                lo = std::min(lo, e.second - s);
                hi = std::max(hi, e.second + s);
            }
        }
        if (lo > hi) continue;
        const std::size_t iy_lo = static_cast<std::size_t>(
            std::max(0.0, std::ceil((lo - g.x0) / g.h - 0.5)));
        const std::size_t iy_hi = static_cast<std::size_t>(std::min(
            static_cast<double>(g.ny - 1), std::floor((hi - g.x0) / g.h - 0.5)));
        for (std::size_t iy = iy_lo; iy <= iy_hi && iy < g.ny; ++iy) {
            auto& c = g.count[ix * g.ny + iy];
            if (c < 65535) ++c;
        }
    }
}

void paint_capsule_3d(Raster& g, const Tube& t) {
    const double w = 0.5 * t.eps;
    const double len = t.length();
    const double ux = (t.q[0] - t.p[0]) / len, uy = (t.q[1] - t.p[1]) / len,
                 uz = (t.q[2] - t.p[2]) / len;

    auto cell_range = [&](double a, double b, std::size_t n) {
        const std::size_t lo = static_cast<std::size_t>(
            std::max(0.0, std::floor((a - g.x0) / g.h)));
        const std::size_t hi = static_cast<std::size_t>(
            std::min(static_cast<double>(n - 1), std::ceil((b - g.x0) / g.h)));
        return std::pair{lo, hi};
    };
    const auto [ix_lo, ix_hi] = cell_range(std::min(t.p[0], t.q[0]) - w,
                                           std::max(t.p[0], t.q[0]) + w, g.nx);
    const auto [iy_lo, iy_hi] = cell_range(std::min(t.p[1], t.q[1]) - w,
                                           std::max(t.p[1], t.q[1]) + w, g.ny);

    for (std::size_t ix = ix_lo; ix <= ix_hi; ++ix) {
        const double x = g.x0 + (static_cast<double>(ix) + 0.5) * g.h;
        for (std::size_t iy = iy_lo; iy <= iy_hi; ++iy) {
            const double y = g.x0 + (static_cast<double>(iy) + 0.5) * g.h;
            const double dx = x - t.p[0], dy = y - t.p[1];
            double lo = 1e300, hi = -1e300;
            // body quadratic in z' = z - pz: leading coeff 1 - uz^2
            {
                const double tpar = dx * ux + dy * uy;  // t at z' = 0 ... plus uz z'
                const double a = 1.0 - uz * uz;
                const double b = -2.0 * tpar * uz;
                const double c = dx * dx + dy * dy - tpar * tpar - w * w;
                if (a > 1e-30) {
                    const double disc = b * b - 4.0 * a * c;
                    if (disc >= 0.0) {
                        const double sq = std::sqrt(disc);
                        double z1 = t.p[2] + (-b - sq) / (2.0 * a);
                        double z2 = t.p[2] + (-b + sq) / (2.0 * a);
                        if (std::abs(uz) > 1e-30) {
                            const double zb1 = t.p[2] + (0.0 - tpar) / uz;
                            const double zb2 = t.p[2] + (len - tpar) / uz;
                            z1 = std::max(z1, std::min(zb1, zb2));
                            z2 = std::min(z2, std::max(zb1, zb2));
                        }
                        if (z1 <= z2) {
                            lo = std::min(lo, z1);
                            hi = std::max(hi, z2);
                        }
                    }
                } else if (dx * dx + dy * dy - tpar * tpar <= w * w) {
                    const double zb1 = t.p[2], zb2 = t.p[2] + len * uz;
                    lo = std::min(lo, std::min(zb1, zb2));
                    hi = std::max(hi, std::max(zb1, zb2));
                }
            }
            for (const auto& e : {t.p, t.q}) {
                const double ddx = x - e[0], ddy = y - e[1];
                const double rad = w * w - ddx * ddx - ddy * ddy;
                if (rad >= 0.0) {
                    const double s = std::sqrt(rad);
                    lo = std::min(lo, e[2] - s);
                    hi = std::max(hi, e[2] + s);
                }
            }
            if (lo > hi) continue;
            const std::size_t iz_lo = static_cast<std::size_t>(
                std::max(0.0, std::ceil((lo - g.x0) / g.h - 0.5)));
            const std::size_t iz_hi = static_cast<std::size_t>(std::min(
                static_cast<double>(g.nz - 1), std::floor((hi - g.x0) / g.h - 0.5)));
            for (std::size_t iz = iz_lo; iz <= iz_hi && iz < g.nz; ++iz) {
                auto& c = g.count[(ix * g.ny + iy) * g.nz + iz];
                if (c < 65535) ++c;
            }
        }
    }
}

Raster rasterize(const TubeSet& set, double h) {
    if (!(h > 0.0) || h > set.spec.eps / 4.0)
        throw std::invalid_argument("overlap_histogram: need h <= eps/4");
    const double rho = set.spec.R + set.spec.Delta;
    Raster g;
    g.h = h;
    g.x0 = -rho;
    const std::size_t side = static_cast<std::size_t>(std::ceil(2.0 * rho / h));
    g.nx = g.ny = side;
    g.nz = set.spec.n == 3 ? side : 1;
    const std::size_t cells = g.nx * g.ny * g.nz;
    if (cells > kCellCap)
        throw std::invalid_argument("overlap_histogram: raster exceeds the cell cap");
    g.count.assign(cells, 0);
    for (const auto& t : set.tubes) {
        if (set.spec.n == 2)
            paint_capsule_2d(g, t);
        else
            paint_capsule_3d(g, t);
    }
    return g;
}

}  // namespace

OverlapHistogram overlap_histogram(const TubeSet& set, double h) {
    const Raster g = rasterize(set, h);
    int dmax = 0;
    for (auto c : g.count) dmax = std::max(dmax, static_cast<int>(c));
    std::vector<std::size_t> cells_at(static_cast<std::size_t>(dmax) + 1, 0);
    for (auto c : g.count)
        if (c > 0) ++cells_at[c];
    OverlapHistogram hist;
    hist.cell = h;
    hist.n = set.spec.n;
    hist.measure.assign(static_cast<std::size_t>(dmax), 0.0);
    const double cell_meas = std::pow(h, set.spec.n);
    std::size_t cum = 0;
    for (int d = dmax; d >= 1; --d) {
        cum += cells_at[static_cast<std::size_t>(d)];
        hist.measure[static_cast<std::size_t>(d - 1)] = static_cast<double>(cum) * cell_meas;
    }
    return hist;
}

OverlapFit fit_overlap_exponent(const OverlapHistogram& hist, double mass_quantile) {
    OverlapFit fit;
    std::size_t d_hi = hist.levels();
    if (mass_quantile < 1.0) {
        double total = 0.0;
        for (double v : hist.measure) total += v;
        double acc = 0.0;
        for (std::size_t d = 1; d <= hist.levels(); ++d) {
            acc += hist.measure[d - 1];
            if (acc >= mass_quantile * total) {
                d_hi = d;
                break;
            }
        }
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t d = 1; d <= d_hi; ++d) {
        const double meas = hist.measure[d - 1];
        if (meas <= 0.0) continue;
        const double X = std::log(static_cast<double>(d)), Y = std::log(meas);
        sx += X;
        sy += Y;
        sxx += X * X;
        sxy += X * Y;
        ++m;
    }
    if (m < 4) throw std::domain_error("fit_overlap_exponent: need >= 4 nonzero levels");
    const double den = static_cast<double>(m) * sxx - sx * sx;
    fit.slope = (static_cast<double>(m) * sxy - sx * sy) / den;
    fit.intercept = (sy - fit.slope * sx) / static_cast<double>(m);
    fit.ok = true;
    return fit;
}

std::vector<SphereOverlapRow> per_sphere_overlap(const TubeSet& set, double h,
                                                 const std::vector<double>& radii) {
    const Raster g = rasterize(set, h);
    const double rho = set.spec.R + set.spec.Delta;
    std::vector<SphereOverlapRow> rows;
    for (double r : radii) {
        SphereOverlapRow row;
        row.r = r;
        for (std::size_t ix = 0; ix < g.nx; ++ix) {
            const double x = g.x0 + (static_cast<double>(ix) + 0.5) * g.h;
            for (std::size_t iy = 0; iy < g.ny; ++iy) {
                const double y = g.x0 + (static_cast<double>(iy) + 0.5) * g.h;
                for (std::size_t iz = 0; iz < g.nz; ++iz) {
                    const double z =
                        set.spec.n == 3 ? g.x0 + (static_cast<double>(iz) + 0.5) * g.h : 0.0;
                    const double rr = std::sqrt(x * x + y * y + z * z);
                    if (std::abs(rr - r) > g.h) continue;
                    row.max_count = std::max(
                        row.max_count,
                        static_cast<int>(g.count[(ix * g.ny + iy) * g.nz + iz]));
                }
            }
        }
        row.constant =
            static_cast<double>(row.max_count) * std::pow(r / rho, set.spec.n - 1.0);
        rows.push_back(row);
    }
    return rows;
}

ThinShellResult thin_shell_2d(const ShellSpec& spec, double h) {
    if (spec.n != 2 || !spec.thin())
        throw std::invalid_argument("thin_shell_2d: need n = 2 and Delta < R/2");
    ThinShellResult res;
    res.hist = overlap_histogram(generate_brush(spec), h);
    for (std::size_t d = 1; d <= res.hist.levels(); ++d) {
        const double ratio = res.hist.measure[d - 1] * static_cast<double>(d) *
                             static_cast<double>(d) / (spec.Delta * spec.R);
        res.max_ratio = std::max(res.max_ratio, ratio);
    }
    return res;
}

void write_histogram_csv(const OverlapHistogram& hist, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "d,measure\n";
    char buf[96];
    for (std::size_t d = 1; d <= hist.levels(); ++d) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", d, hist.measure[d - 1]);
        out << buf;
    }
}

void write_tubes_json(const TubeSet& set, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "{\n  \"eps\": " << set.spec.eps << ",\n  \"tubes\": [\n";
    char buf[256];
    for (std::size_t i = 0; i < set.tubes.size(); ++i) {
        const auto& t = set.tubes[i];
        std::snprintf(buf, sizeof(buf),
                      "    [[%.17g,%.17g,%.17g],[%.17g,%.17g,%.17g]]%s\n", t.p[0], t.p[1],
                      t.p[2], t.q[0], t.q[1], t.q[2],
                      i + 1 == set.tubes.size() ? "" : ",");
        out << buf;
    }
    out << "  ]\n}\n";
}

}  // namespace disclab
