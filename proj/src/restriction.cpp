#include "disclab/restriction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "disclab/bessel.hpp"

namespace disclab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// sum_k |a_k|^2 J_{k-1+n/2}(x)^2, with the integer-order fast path for n = 2
double mode_energy(const HarmonicCoefficients& a, double x) {
    const int kmax = static_cast<int>(a.a.size()) - 1;
    double s = 0.0;
    if (a.n == 2) {
        const auto j = bessel_j_integer_all(kmax, x);
        for (int k = 0; k <= kmax; ++k)
            s += std::norm(a.a[static_cast<std::size_t>(k)]) *
                 j[static_cast<std::size_t>(k)] * j[static_cast<std::size_t>(k)];
        return s;
    }
    for (int k = 0; k <= kmax; ++k) {
        const double m = std::norm(a.a[static_cast<std::size_t>(k)]);
        if (m == 0.0) continue;
        const double jv = bessel_j({k - 1.0 + 0.5 * a.n, x}).value;
        s += m * jv * jv;
    }
    return s;
}

// restricted mode energy over a degree window [klo, khi]
double mode_energy_window(const HarmonicCoefficients& a, const std::vector<double>& j,
                          int klo, int khi) {
    double s = 0.0;
    const int kmax = static_cast<int>(a.a.size()) - 1;
    for (int k = std::max(klo, 0); k <= std::min(khi, kmax); ++k)
        s += std::norm(a.a[static_cast<std::size_t>(k)]) *
             j[static_cast<std::size_t>(k)] * j[static_cast<std::size_t>(k)];
    return s;
}

BlockFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
    BlockFit fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(y[i] > 0.0)) continue;
        const double X = std::log(x[i]), Y = std::log(y[i]);
        sx += X;
        sy += Y;
        sxx += X * X;
        sxy += X * Y;
        ++m;
    }
    if (m < 3) return fit;
    const double dm = static_cast<double>(m);
    fit.slope = (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
    const double intercept = (sy - fit.slope * sx) / dm;
    double ss_res = 0.0;
    const double sxx_c = sxx - sx * sx / dm;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(y[i] > 0.0)) continue;
        const double resid = std::log(y[i]) - (intercept + fit.slope * std::log(x[i]));
        ss_res += resid * resid;
    }
    if (m > 2 && sxx_c > 0.0) fit.stderr_slope = std::sqrt(ss_res / (dm - 2.0) / sxx_c);
    fit.ok = true;
    return fit;
}

}  // namespace

HarmonicCoefficients HarmonicCoefficients::flat(int kmax, int n) {
    HarmonicCoefficients out;
    out.n = n;
    out.a.assign(static_cast<std::size_t>(kmax) + 1, cplx(1.0, 0.0));
    return out;
}

RadialProfile extension_profile(const HarmonicCoefficients& a, const RadialGrid& grid) {
    std::vector<cplx> v(grid.size(), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid.nodes[i];
        if (r <= 0.0) continue;
        const double e = mode_energy(a, 2.0 * kPi * r);
        v[i] = cplx(2.0 * kPi * std::pow(r, 1.0 - 0.5 * a.n) * std::sqrt(e), 0.0);
    }
    return RadialProfile(grid, std::move(v));
}

ExtensionNorm extension_mixed_norm(const HarmonicCoefficients& a, double q, double r_max,
                                   double r_min) {
    if (!(q > 2.0)) throw std::invalid_argument("extension_mixed_norm: q must be > 2");
    if (!(r_max > r_min) || !(r_min >= 0.0))
        throw std::invalid_argument("extension_mixed_norm: bad radial range");
    ExtensionNorm out;
    // J(2 pi r) oscillates with period ~1 in r; 40 nodes per unit resolves it
    const std::size_t count =
        std::max<std::size_t>(257, static_cast<std::size_t>((r_max - r_min) * 40.0));
    double acc = 0.0, prev = 0.0;
    std::vector<double> rs(count + 1), integrand(count + 1);
    for (std::size_t i = 0; i <= count; ++i) {
        const double r =
            r_min + (r_max - r_min) * static_cast<double>(i) / static_cast<double>(count);
        const double e = mode_energy(a, 2.0 * kPi * r);
        const double g = 2.0 * kPi * std::pow(r, 1.0 - 0.5 * a.n) * std::sqrt(e);
        const double f = std::pow(g, q) * std::pow(r, a.n - 1.0);
        rs[i] = r;
        integrand[i] = f;
        if (i > 0) acc += 0.5 * (prev + f) * (r - rs[i - 1]);
        prev = f;
    }
    out.value = std::pow(acc, 1.0 / q);

    // log-log fit of bin means over the last decade flags slow tails
    const double lo = r_max / 10.0;
    const std::size_t bins = 8;
    std::vector<double> bx, by;
    for (std::size_t b = 0; b < bins; ++b) {
        const double b0 = lo * std::pow(r_max / lo, static_cast<double>(b) / bins);
        const double b1 = lo * std::pow(r_max / lo, static_cast<double>(b + 1) / bins);
        double mean = 0.0;
        std::size_t cnt = 0;
        for (std::size_t i = 0; i <= count; ++i)
            if (rs[i] >= b0 && rs[i] < b1) {
                mean += integrand[i];
                ++cnt;
            }
        if (cnt > 0) {
            bx.push_back(std::sqrt(b0 * b1));
            by.push_back(mean / static_cast<double>(cnt));
        }
    }
    const auto fit = loglog_fit(bx, by);
    out.tail_slope = fit.slope;
    out.divergence_flag = fit.ok && fit.slope >= -1.01;
    return out;
}

DyadicBlockReport dyadic_block_scan(const HarmonicCoefficients& a, double q,
                                    const std::vector<double>& m_list) {
    if (a.n != 2) throw std::invalid_argument("dyadic_block_scan: stated for n = 2");
    if (!(q > 4.0)) throw std::invalid_argument("dyadic_block_scan: q must be > 4");
    if (m_list.size() < 3) throw std::invalid_argument("dyadic_block_scan: need >= 3 rings");

    DyadicBlockReport rep;
    rep.q = q;
    rep.kmax = static_cast<int>(a.a.size()) - 1;

    for (double M : m_list) {
        DyadicBlockRow row;
        row.M = M;
        const std::size_t count =
            std::max<std::size_t>(257, static_cast<std::size_t>(M * 24.0 / (2.0 * kPi)));
        double prev_full = 0.0, prev1 = 0.0, prev2 = 0.0, prev3 = 0.0, prev_r = M;
        for (std::size_t i = 0; i <= count; ++i) {
            const double r = M + M * static_cast<double>(i) / static_cast<double>(count);
            const auto j = bessel_j_integer_all(rep.kmax, r);
            const int b1 = static_cast<int>(std::ceil(0.5 * M)) - 1;   // k < M/2
            const int b2 = static_cast<int>(std::floor(4.0 * M));      // k <= 4M
            const double e1 = mode_energy_window(a, j, 0, b1);
            const double e2 = mode_energy_window(a, j, b1 + 1, b2);
            const double e3 = mode_energy_window(a, j, b2 + 1, rep.kmax);
            const double f_full = std::pow(e1 + e2 + e3, 0.5 * q) * r;
            const double f1 = std::pow(e1, 0.5 * q) * r;
            const double f2 = std::pow(e2, 0.5 * q) * r;
            const double f3 = std::pow(e3, 0.5 * q) * r;
            if (i > 0) {
                const double h = r - prev_r;
                row.i_m += 0.5 * (prev_full + f_full) * h;
                row.i1 += 0.5 * (prev1 + f1) * h;
                row.i2 += 0.5 * (prev2 + f2) * h;
                row.i3 += 0.5 * (prev3 + f3) * h;
            }
            prev_full = f_full;
            prev1 = f1;
            prev2 = f2;
            prev3 = f3;
            prev_r = r;
        }
        rep.rows.push_back(row);
    }

    std::vector<double> ms, v1, v2, v3;
    for (const auto& r : rep.rows) {
        ms.push_back(r.M);
        v1.push_back(r.i1);
        v2.push_back(r.i2);
        v3.push_back(r.i3);
    }
    rep.fit1 = loglog_fit(ms, v1);
    rep.fit2 = loglog_fit(ms, v2);
    rep.fit3 = loglog_fit(ms, v3);
    return rep;
}

std::vector<double> g_alpha_bins(const HarmonicCoefficients& a, double M) {
    const double m13 = std::cbrt(M);
    const std::size_t nbins = static_cast<std::size_t>(std::floor(1.5 * M / m13)) + 1;
    std::vector<double> bins(nbins, 0.0);
    for (std::size_t k = 0; k < a.a.size(); ++k) {
        const double pos = (static_cast<double>(k) - 0.5 * M) / m13;
        if (pos < 0.0) continue;
        const std::size_t b = static_cast<std::size_t>(pos);
        if (b < nbins) bins[b] += std::norm(a.a[k]);
    }
    return bins;
}

BlockFit transition_bin_scan(double q, const std::vector<double>& m_list) {
    if (!(q > 4.0)) throw std::invalid_argument("transition_bin_scan: q must be > 4");
    std::vector<double> ms, vals;
    for (double M : m_list) {
        const int klo = static_cast<int>(M);
        const int khi = klo + std::max(1, static_cast<int>(std::cbrt(M)));
        HarmonicCoefficients a;
        a.n = 2;
        a.a.assign(static_cast<std::size_t>(khi) + 1, cplx(0.0, 0.0));
        for (int k = klo; k <= khi; ++k) a.a[static_cast<std::size_t>(k)] = cplx(1.0, 0.0);
        const double mass = static_cast<double>(khi - klo + 1);

        const std::size_t count =
            std::max<std::size_t>(257, static_cast<std::size_t>(M * 24.0 / (2.0 * kPi)));
        double acc = 0.0, prev = 0.0, prev_r = M;
        for (std::size_t i = 0; i <= count; ++i) {
            const double r = M + M * static_cast<double>(i) / static_cast<double>(count);
            const auto j = bessel_j_integer_all(khi, r);
            const double e = mode_energy_window(a, j, klo, khi);
            const double f = std::pow(e, 0.5 * q) * r;
            if (i > 0) acc += 0.5 * (prev + f) * (r - prev_r);
            prev = f;
            prev_r = r;
        }
        ms.push_back(M);
        vals.push_back(acc / std::pow(mass, 0.5 * q));
    }
    return loglog_fit(ms, vals);
}

GeneralBlockReport general_dimension_block(const HarmonicCoefficients& a, double q,
                                           const std::vector<double>& m_list) {
    if (a.n < 2) throw std::invalid_argument("general_dimension_block: n >= 2");
    if (m_list.size() < 3)
        throw std::invalid_argument("general_dimension_block: need >= 3 rings");
    GeneralBlockReport rep;
    rep.m_list = m_list;
    const double wexp = (1.0 - 0.5 * a.n) * q + a.n - 1.0;
    for (double M : m_list) {
        const std::size_t count =
            std::max<std::size_t>(257, static_cast<std::size_t>(M * 24.0 / (2.0 * kPi)));
        double acc = 0.0, prev = 0.0, prev_r = M;
        for (std::size_t i = 0; i <= count; ++i) {
            const double r = M + M * static_cast<double>(i) / static_cast<double>(count);
            const double f = std::pow(mode_energy(a, r), 0.5 * q) * std::pow(r, wexp);
            if (i > 0) acc += 0.5 * (prev + f) * (r - prev_r);
            prev = f;
            prev_r = r;
        }
        rep.values.push_back(acc);
    }
    const auto fit = loglog_fit(rep.m_list, rep.values);
    rep.slope = fit.slope;
    rep.predicted = (a.n - 2.0) * (1.0 - 0.5 * q) +
                    std::max({0.5 * (4.0 - q), (4.0 - q) / 3.0, 2.0 - q});
    return rep;
}

void write_blocks_csv(const DyadicBlockReport& rep, int n, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "n,q,M,block,value\n";
    char buf[160];
    for (const auto& r : rep.rows) {
        const std::pair<const char*, double> rows[4] = {
            {"full", r.i_m}, {"I1", r.i1}, {"I2", r.i2}, {"I3", r.i3}};
        for (const auto& [name, val] : rows) {
            std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%s,%.17g\n", n, rep.q, r.M, name,
                          val);
            out << buf;
        }
    }
}

}  // namespace disclab
