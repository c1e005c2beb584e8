#include "disclab/planar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

namespace disclab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// iterative radix-2 FFT; forward kernel e^{-2 pi i jk/N}, inverse unscaled
void fft1d(cplx* a, std::size_t n, bool inverse) {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cplx u = a[i + j];
                const cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

void transpose(std::vector<cplx>& v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) std::swap(v[i * n + j], v[j * n + i]);
}

double signed_freq(std::size_t k, std::size_t n) {
    return k <= n / 2 ? static_cast<double>(k)
                      : static_cast<double>(k) - static_cast<double>(n);
}

cplx ipow_conj(int m) {
    // (-i)^{|m|}
    switch (std::abs(m) % 4) {
        case 0: return cplx(1.0, 0.0);
        case 1: return cplx(0.0, -1.0);
        case 2: return cplx(-1.0, 0.0);
        default: return cplx(0.0, 1.0);
    }
}

}  // namespace

GridField2D::GridField2D(std::size_t n, double side) : N(n), L(side) {
    values.assign(n * n, cplx(0.0, 0.0));
}

GridField2D GridField2D::sample(std::size_t n, double side,
                                const std::function<cplx(double, double)>& f) {
    GridField2D out(n, side);
    const double h = side / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = h * static_cast<double>(i) - 0.5 * side;
        for (std::size_t j = 0; j < n; ++j) {
            const double y = h * static_cast<double>(j) - 0.5 * side;
            out.values[i * n + j] = f(x, y);
        }
    }
    return out;
}

void validate(const GridField2D& f) {
    if (f.N < 32 || !power_of_two(f.N))
        throw std::invalid_argument("GridField2D: N must be a power of two >= 32");
    if (!(f.L > 0.0)) throw std::invalid_argument("GridField2D: L must be > 0");
    if (f.values.size() != f.N * f.N)
        throw std::invalid_argument("GridField2D: value count mismatch");
}

GridField2D operator-(const GridField2D& a, const GridField2D& b) {
    if (a.N != b.N || a.L != b.L)
        throw std::invalid_argument("GridField2D: size mismatch in subtraction");
    GridField2D out(a.N, a.L);
    for (std::size_t i = 0; i < a.values.size(); ++i) out.values[i] = a.values[i] - b.values[i];
    return out;
}

double planar_l2(const GridField2D& f) {
    double s = 0.0;
    for (const auto& v : f.values) s += std::norm(v);
    const double h = f.L / static_cast<double>(f.N);
    return std::sqrt(s) * h;
}

void fft2d(std::vector<cplx>& v, std::size_t N, bool inverse) {
    for (std::size_t i = 0; i < N; ++i) fft1d(v.data() + i * N, N, inverse);
    transpose(v, N);
    for (std::size_t i = 0; i < N; ++i) fft1d(v.data() + i * N, N, inverse);
    transpose(v, N);
    if (inverse) {
        const double scale = 1.0 / (static_cast<double>(N) * static_cast<double>(N));
        for (auto& x : v) x *= scale;
    }
}

double aliasing_indicator(const GridField2D& f) {
    std::vector<cplx> hat = f.values;
    fft2d(hat, f.N, false);
    double outer = 0.0, total = 0.0;
    for (std::size_t i = 0; i < f.N; ++i) {
        const double mi = std::abs(signed_freq(i, f.N));
        for (std::size_t j = 0; j < f.N; ++j) {
            const double mj = std::abs(signed_freq(j, f.N));
            const double e = std::norm(hat[i * f.N + j]);
            total += e;
            if (std::max(mi, mj) > static_cast<double>(f.N) / 4.0) outer += e;
        }
    }
    return total > 0.0 ? outer / total : 0.0;
}

MultiplierSymbol MultiplierSymbol::disc(double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("disc: R must be > 0");
    MultiplierSymbol s;
    s.kind = SymbolKind::disc;
    s.R = radius;
    return s;
}

MultiplierSymbol MultiplierSymbol::ball_shifted(double radius, double cx, double cy) {
    if (!(radius > 0.0)) throw std::invalid_argument("ball_shifted: R must be > 0");
    MultiplierSymbol s;
    s.kind = SymbolKind::ball_shifted;
    s.R = radius;
    s.center_x = cx;
    s.center_y = cy;
    return s;
}

namespace {
void set_unit(MultiplierSymbol& s, double wx, double wy) {
    const double n = std::hypot(wx, wy);
    if (!(n > 0.0)) throw std::invalid_argument("direction must be nonzero");
    if (std::abs(n - 1.0) > 1e-12) throw std::invalid_argument("direction must be unit");
    s.omega_x = wx;
    s.omega_y = wy;
}
}  // namespace

MultiplierSymbol MultiplierSymbol::half_plane(double wx, double wy) {
    MultiplierSymbol s;
    s.kind = SymbolKind::half_plane;
    set_unit(s, wx, wy);
    return s;
}

MultiplierSymbol MultiplierSymbol::directional_hilbert(double wx, double wy) {
    MultiplierSymbol s;
    s.kind = SymbolKind::directional_hilbert;
    set_unit(s, wx, wy);
    return s;
}

MultiplierSymbol MultiplierSymbol::homogeneous(std::vector<OmegaCoeff> coeffs) {
    for (const auto& c : coeffs)
        if (c.m == 0 && std::abs(c.c) != 0.0)
            throw std::invalid_argument("homogeneous: Omega must have zero mean (c_0 = 0)");
    MultiplierSymbol s;
    s.kind = SymbolKind::homogeneous;
    s.omega_coeffs = std::move(coeffs);
    return s;
}

cplx symbol_value(const MultiplierSymbol& sym, double xi_x, double xi_y) {
    switch (sym.kind) {
        case SymbolKind::disc: {
            const double q = xi_x * xi_x + xi_y * xi_y, R2 = sym.R * sym.R;
            if (q < R2) return cplx(1.0, 0.0);
            if (q > R2) return cplx(0.0, 0.0);
            return cplx(0.5, 0.0);
        }
        case SymbolKind::ball_shifted: {
            const double dx = xi_x - sym.center_x, dy = xi_y - sym.center_y;
            const double q = dx * dx + dy * dy, R2 = sym.R * sym.R;
            if (q < R2) return cplx(1.0, 0.0);
            if (q > R2) return cplx(0.0, 0.0);
            return cplx(0.5, 0.0);
        }
        case SymbolKind::half_plane: {
            const double d = xi_x * sym.omega_x + xi_y * sym.omega_y;
            if (d < 0.0) return cplx(1.0, 0.0);
            if (d > 0.0) return cplx(0.0, 0.0);
            return cplx(0.5, 0.0);
        }
        case SymbolKind::directional_hilbert: {
            const double d = xi_x * sym.omega_x + xi_y * sym.omega_y;
            if (d > 0.0) return cplx(0.0, 1.0);
            if (d < 0.0) return cplx(0.0, -1.0);
            return cplx(0.0, 0.0);  // midpoint of the jump
        }
        case SymbolKind::homogeneous: {
            if (xi_x == 0.0 && xi_y == 0.0) return cplx(0.0, 0.0);
            const double phi = std::atan2(xi_y, xi_x);
            cplx s(0.0, 0.0);
            for (const auto& oc : sym.omega_coeffs) {
                // normalization anchored so Omega = cos(theta) maps to -i xi_1/|xi|
                s += oc.c * ipow_conj(oc.m) *
                     cplx(std::cos(oc.m * phi), std::sin(oc.m * phi));
            }
            return s;
        }
    }
    return cplx(0.0, 0.0);
}

GridField2D apply_multiplier(const MultiplierSymbol& sym, const GridField2D& f) {
    validate(f);
    GridField2D out = f;
    fft2d(out.values, out.N, false);
    const double invL = 1.0 / out.L;
    for (std::size_t i = 0; i < out.N; ++i) {
        const double xi_x = signed_freq(i, out.N) * invL;
        for (std::size_t j = 0; j < out.N; ++j) {
            const double xi_y = signed_freq(j, out.N) * invL;
            out.values[i * out.N + j] *= symbol_value(sym, xi_x, xi_y);
        }
    }
    fft2d(out.values, out.N, true);
    return out;
}

GridField2D modulate(const GridField2D& f, double xi_x, double xi_y) {
    GridField2D out(f.N, f.L);
    const double h = f.L / static_cast<double>(f.N);
    for (std::size_t i = 0; i < f.N; ++i) {
        const double x = h * static_cast<double>(i) - 0.5 * f.L;
        for (std::size_t j = 0; j < f.N; ++j) {
            const double y = h * static_cast<double>(j) - 0.5 * f.L;
            const double ph = 2.0 * kPi * (x * xi_x + y * xi_y);
            out.values[i * f.N + j] = f.values[i * f.N + j] * cplx(std::cos(ph), std::sin(ph));
        }
    }
    return out;
}

AngularProfile angular_profile(const GridField2D& f, std::size_t n_r, std::size_t n_theta) {
    AngularProfile prof;
    prof.r.resize(n_r);
    prof.a.resize(n_r);
    const double n = static_cast<double>(f.N);
    const double scale = n / f.L;
    const double dr = 0.5 * f.L / static_cast<double>(n_r);
    for (std::size_t ir = 0; ir < n_r; ++ir) {
        const double r = dr * static_cast<double>(ir + 1);
        double acc = 0.0;
        for (std::size_t it = 0; it < n_theta; ++it) {
            const double th = 2.0 * kPi * static_cast<double>(it) / static_cast<double>(n_theta);
            // map to fractional grid coordinates; periodic wrap
            double gx = (r * std::cos(th) + 0.5 * f.L) * scale;
            double gy = (r * std::sin(th) + 0.5 * f.L) * scale;
            gx -= n * std::floor(gx / n);
            gy -= n * std::floor(gy / n);
            const std::size_t ix = static_cast<std::size_t>(gx) % f.N;
            const std::size_t iy = static_cast<std::size_t>(gy) % f.N;
            const double tx = gx - std::floor(gx), ty = gy - std::floor(gy);
            const std::size_t ix1 = (ix + 1) % f.N, iy1 = (iy + 1) % f.N;
            const cplx v = f.at(ix, iy) * ((1 - tx) * (1 - ty)) +
                           f.at(ix1, iy) * (tx * (1 - ty)) +
                           f.at(ix, iy1) * ((1 - tx) * ty) + f.at(ix1, iy1) * (tx * ty);
            acc += std::norm(v);
        }
        prof.r[ir] = r;
        prof.a[ir] = std::sqrt(acc / static_cast<double>(n_theta));
    }
    return prof;
}

double mixed_norm_grid(const GridField2D& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("mixed_norm_grid: p must be >= 1");
    validate(f);
    const auto prof = angular_profile(f, f.N / 2, 4 * f.N);
    // angular L^2 with the full circle measure: int |f|^2 dtheta = 2 pi A(r)^2;
    // then trapezoid in r with measure r dr (n = 2)
    constexpr double two_pi = 2.0 * kPi;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < prof.r.size(); ++i) {
        const double f0 = std::pow(two_pi * prof.a[i] * prof.a[i], 0.5 * p) * prof.r[i];
        const double f1 =
            std::pow(two_pi * prof.a[i + 1] * prof.a[i + 1], 0.5 * p) * prof.r[i + 1];
        acc += 0.5 * (f0 + f1) * (prof.r[i + 1] - prof.r[i]);
    }
    return std::pow(acc, 1.0 / p);
}

CubeDecayResult cube_decay_experiment(double p, double r_lo, double r_hi, std::size_t N,
                                      double L) {
    if (!(r_lo >= 2.0) || !(r_hi <= L / 4.0) || !(r_lo < r_hi))
        throw std::invalid_argument("cube_decay_experiment: need 2 <= r_lo < r_hi <= L/4");
    auto cube = GridField2D::sample(N, L, [](double x, double y) {
        return cplx((std::abs(x) <= 0.5 && std::abs(y) <= 0.5) ? 1.0 : 0.0, 0.0);
    });
    auto h = apply_multiplier(MultiplierSymbol::directional_hilbert(0.0, 1.0), cube);

    CubeDecayResult res;
    res.aliasing = aliasing_indicator(h);

    const auto prof = angular_profile(h, N / 2, 4 * N);
    // weighted log-log least squares over [r_lo, r_hi]
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < prof.r.size(); ++i) {
        if (prof.r[i] < r_lo || prof.r[i] > r_hi) continue;
        if (!(prof.a[i] > 0.0)) continue;
        const double X = std::log(prof.r[i]), Y = std::log(prof.a[i]);
        sx += X;
        sy += Y;
        sxx += X * X;
        sxy += X * Y;
        ++m;
    }
    if (m >= 4) {
        const double den = static_cast<double>(m) * sxx - sx * sx;
        res.slope = (static_cast<double>(m) * sxy - sx * sy) / den;
        res.intercept = (sy - res.slope * sx) / static_cast<double>(m);
        res.fit_ok = true;
    }

    // partial integrals I(R) = int_2^R A(r)^p r dr at geometric checkpoints
    const double r_pi_max = L / 3.2;
    std::vector<double> checkpoints;
    for (double R = 2.0 * std::sqrt(2.0); R <= r_pi_max * 1.0000001; R *= std::sqrt(2.0))
        checkpoints.push_back(R);
    double acc = 0.0;
    std::size_t ci = 0;
    for (std::size_t i = 0; i + 1 < prof.r.size() && ci < checkpoints.size(); ++i) {
        const double r0 = prof.r[i], r1 = prof.r[i + 1];
        if (r1 < 2.0) continue;
        const double f0 = std::pow(prof.a[i], p) * r0;
        const double f1 = std::pow(prof.a[i + 1], p) * r1;
        acc += 0.5 * (f0 + f1) * (r1 - r0);
        while (ci < checkpoints.size() && r1 >= checkpoints[ci]) {
            res.partial_r.push_back(r1);
            res.partial_i.push_back(acc);
            ++ci;
        }
    }
    const std::size_t np = res.partial_i.size();
    if (np >= 2 && res.partial_i[np - 1] > 0.0) {
        res.tail_fraction =
            (res.partial_i[np - 1] - res.partial_i[np - 2]) / res.partial_i[np - 1];
        res.diverged = res.tail_fraction >= 0.05;
    }
    return res;
}

std::vector<double> ball_to_halfplane_limit(const GridField2D& f, int k_max, double wx,
                                            double wy) {
    const auto hp = apply_multiplier(MultiplierSymbol::half_plane(wx, wy), f);
    std::vector<double> errs;
    for (int k = 1; k <= k_max; ++k) {
        const double R = std::pow(2.0, k);
        const auto ball =
            apply_multiplier(MultiplierSymbol::ball_shifted(R, -R * wx, -R * wy), f);
        errs.push_back(mixed_norm_grid(ball - hp, 2.0));
    }
    return errs;
}

void validate(const DirectionSet& d) {
    for (const auto& [x, y] : d.dirs)
        if (std::abs(std::hypot(x, y) - 1.0) > 1e-12)
            throw std::invalid_argument("DirectionSet: directions must be unit vectors");
}

RatioResult meyer_vector_test(const DirectionSet& dirs, const std::vector<GridField2D>& batch,
                              double p) {
    if (batch.empty() || dirs.dirs.empty())
        throw std::invalid_argument("meyer_vector_test: empty batch");
    if (batch.size() != dirs.dirs.size())
        throw std::invalid_argument("meyer_vector_test: batch size must match directions");
    validate(dirs);

    double mass = 0.0;
    for (const auto& f : batch)
        for (const auto& v : f.values) mass += std::norm(v);
    RatioResult res;
    if (mass == 0.0) {
        res.empty = true;
        return res;
    }

    const std::size_t N = batch.front().N;
    const double L = batch.front().L;
    GridField2D sq_h(N, L), sq_f(N, L);
    for (std::size_t j = 0; j < batch.size(); ++j) {
        const auto h = apply_multiplier(
            MultiplierSymbol::directional_hilbert(dirs.dirs[j].first, dirs.dirs[j].second),
            batch[j]);
        for (std::size_t i = 0; i < N * N; ++i) {
            sq_h.values[i] += std::norm(h.values[i]);
            sq_f.values[i] += std::norm(batch[j].values[i]);
        }
    }
    for (std::size_t i = 0; i < N * N; ++i) {
        sq_h.values[i] = std::sqrt(sq_h.values[i].real());
        sq_f.values[i] = std::sqrt(sq_f.values[i].real());
    }
    res.ratio = mixed_norm_grid(sq_h, p) / mixed_norm_grid(sq_f, p);
    return res;
}

RatioResult singular_integral_test(const std::vector<OmegaCoeff>& omega, double p,
                                   const std::vector<GridField2D>& trials) {
    if (!(p > 1.0)) throw std::invalid_argument("singular_integral_test: p must be > 1");
    const auto sym = MultiplierSymbol::homogeneous(omega);  // validates zero mean
    RatioResult res;
    bool all_zero = true;
    for (const auto& f : trials) {
        const double nf = mixed_norm_grid(f, p);
        if (nf == 0.0) continue;
        all_zero = false;
        const double nt = mixed_norm_grid(apply_multiplier(sym, f), p);
        res.ratio = std::max(res.ratio, nt / nf);
    }
    res.empty = all_zero;
    return res;
}

void write_field_csv(const GridField2D& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "i,j,re,im\n";
    char buf[160];
    for (std::size_t i = 0; i < f.N; ++i)
        for (std::size_t j = 0; j < f.N; ++j) {
            const cplx v = f.at(i, j);
            std::snprintf(buf, sizeof(buf), "%zu,%zu,%.17g,%.17g\n", i, j, v.real(), v.imag());
            out << buf;
        }
}

}  // namespace disclab
