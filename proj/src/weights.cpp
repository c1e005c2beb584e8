#include "disclab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "disclab/maximal.hpp"

namespace disclab {

double WeightSamples::midpoint(std::size_t i) const {
    const double h = 2.0 * X / static_cast<double>(cells());
    return -X + (static_cast<double>(i) + 0.5) * h;
}

WeightSamples WeightSamples::sample(double X, std::size_t cells,
                                    const std::function<double(double)>& w) {
    WeightSamples out;
    out.X = X;
    out.values.resize(cells);
    for (std::size_t i = 0; i < cells; ++i) out.values[i] = w(out.midpoint(i));
    return out;
}

void validate(const WeightSamples& w) {
    if (w.values.empty() || !(w.X > 0.0))
        throw std::invalid_argument("WeightSamples: empty grid");
    for (double v : w.values)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("WeightSamples: values must be positive and finite");
}

namespace {

// sup over block-aligned cell intervals of (avg w)(avg sigma)^{p-1},
// sigma = w^{-1/(p-1)}; block = 1 gives the full exhaustive sup
double ap_sup(const std::vector<double>& pw, const std::vector<double>& ps, double p,
              std::size_t block, std::size_t* lo_out = nullptr,
              std::size_t* hi_out = nullptr) {
    const std::size_t n = pw.size() - 1;
    double best = 0.0;
    if (p == 2.0) {  // hot path: the exponent is 1
        for (std::size_t a = 0; a < n; a += block) {
            for (std::size_t b = a + block; b <= n; b += block) {
                const double len = static_cast<double>(b - a);
                const double val = (pw[b] - pw[a]) * (ps[b] - ps[a]) / (len * len);
                if (val > best) {
                    best = val;
                    if (lo_out) *lo_out = a;
                    if (hi_out) *hi_out = b;
                }
            }
        }
        return best;
    }
    for (std::size_t a = 0; a < n; a += block) {
        for (std::size_t b = a + block; b <= n; b += block) {
            const double len = static_cast<double>(b - a);
            const double avg_w = (pw[b] - pw[a]) / len;
            const double avg_s = (ps[b] - ps[a]) / len;
            const double val = avg_w * std::pow(avg_s, p - 1.0);
            if (val > best) {
                best = val;
                if (lo_out) *lo_out = a;
                if (hi_out) *hi_out = b;
            }
        }
    }
    return best;
}

}  // namespace

ApResult ap_characteristic(const WeightSamples& w, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("ap_characteristic: p must be > 1");
    validate(w);
    const std::size_t n = w.cells();
    std::vector<double> pw(n + 1, 0.0), ps(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        pw[i + 1] = pw[i] + w.values[i];
        ps[i + 1] = ps[i] + std::pow(w.values[i], -1.0 / (p - 1.0));
    }
    ApResult res;
    res.p = p;
    // interval families aligned to coarser blocks give the refinement trace
    for (std::size_t block : {16, 4, 1}) {
        if (block >= n) continue;
        if (block == 1)
            res.characteristic = ap_sup(pw, ps, p, 1, &res.best_lo, &res.best_hi);
        res.refinement_trace.push_back(ap_sup(pw, ps, p, block));
    }
    if (res.refinement_trace.empty()) {
        res.characteristic = ap_sup(pw, ps, p, 1, &res.best_lo, &res.best_hi);
        res.refinement_trace.push_back(res.characteristic);
    }
    return res;
}

WeightSamples a1_construct(const WeightSamples& w, double s) {
    if (!(s > 1.0)) throw std::invalid_argument("a1_construct: s must be > 1");
    if (w.values.empty()) throw std::invalid_argument("a1_construct: empty weight");
    std::vector<double> ws(w.cells());
    for (std::size_t i = 0; i < ws.size(); ++i) ws[i] = std::pow(w.values[i], s);
    const auto m = hl_max_all(ws);
    WeightSamples out;
    out.X = w.X;
    out.s = s;
    out.values.resize(w.cells());
    for (std::size_t i = 0; i < ws.size(); ++i) out.values[i] = std::pow(m[i], 1.0 / s);
    return out;
}

double a1_lemma_check(const WeightSamples& w, double s) {
    const WeightSamples W = a1_construct(w, s);
    const auto mw = hl_max_all(W.values);
    double sup = 0.0;
    for (std::size_t i = 0; i < W.cells(); ++i)
        if (W.values[i] > 0.0) sup = std::max(sup, mw[i] / W.values[i]);
    return sup;
}

std::vector<PowerWeightRow> power_weight_range_scan(double p, const std::vector<double>& alphas,
                                                    std::size_t base_cells, std::size_t levels,
                                                    double sandwich_s) {
    if (!(p > 1.0)) throw std::invalid_argument("power_weight_range_scan: p must be > 1");
    std::vector<PowerWeightRow> rows;
    for (double alpha : alphas) {
        PowerWeightRow row;
        row.alpha = alpha;
        row.p = p;
        for (std::size_t l = 0; l < levels; ++l) {
            std::size_t cells = base_cells;
            for (std::size_t k = 0; k < l; ++k) cells *= 4;
            auto w = WeightSamples::sample(1.0, cells,
                                           [&](double x) { return std::pow(std::abs(x), alpha); });
            row.level_cells.push_back(cells);
            row.level_characteristic.push_back(ap_characteristic(w, p).characteristic);
        }
        // classification: ratio blow-up catches power divergence, persistent
        // increments catch the boundary (logarithmic) divergence
        bool divergent = false;
        const auto& c = row.level_characteristic;
        for (std::size_t l = 0; l + 1 < c.size(); ++l)
            if (c[l + 1] / c[l] >= 1.5) divergent = true;
        if (c.size() >= 3) {
            // logarithmic boundary growth shows as non-decaying increments;
            // convergent weights decay at least like 4^{-1/2} per level
            const double inc_first = c[1] - c[0];
            const double inc_last = c[c.size() - 1] - c[c.size() - 2];
            if (inc_first > 0.0 && inc_last >= 0.6 * inc_first &&
                inc_last >= 0.01 * c.back())
                divergent = true;
        }
        row.cls = divergent ? WeightClass::divergent : WeightClass::stable;

        if (alpha > -1.0 && alpha <= 0.0 && sandwich_s * alpha > -1.0 && sandwich_s > 1.0) {
            row.sandwich_checked = true;
            row.sandwich_ok = true;
            const std::size_t cells = 1 << 14;
            auto w = WeightSamples::sample(1.0, cells,
                                           [&](double x) { return std::pow(std::abs(x), alpha); });
            const auto W = a1_construct(w, sandwich_s);
            const double sa = sandwich_s * alpha;
            const double lo_c = std::pow(1.0 / (1.0 + sa), 1.0 / sandwich_s);
            const double hi_c = std::pow(2.0 / (1.0 + sa), 1.0 / sandwich_s);
            for (double x : {0.125, 0.25, 0.5, 0.75, -0.25, -0.5}) {
                const std::size_t i = static_cast<std::size_t>((x + 1.0) / 2.0 *
                                                               static_cast<double>(cells));
                const double xa = std::pow(std::abs(W.midpoint(i)), alpha);
                if (!(lo_c * xa <= W.values[i] * (1.0 + 1e-9)) ||
                    !(W.values[i] <= hi_c * xa * (1.0 + 1e-9)))
                    row.sandwich_ok = false;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

void write_weights_csv(const std::vector<PowerWeightRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "alpha,p,level,nodes,characteristic,classification\n";
    char buf[192];
    for (const auto& r : rows) {
        for (std::size_t l = 0; l < r.level_cells.size(); ++l) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%zu,%zu,%.17g,%s\n", r.alpha, r.p, l,
                          r.level_cells[l] + 1, r.level_characteristic[l],
                          r.cls == WeightClass::divergent ? "divergent" : "stable");
            out << buf;
        }
    }
}

}  // namespace disclab
