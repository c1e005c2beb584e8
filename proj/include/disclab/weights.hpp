#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace disclab {

/// Positive weight sampled at the midpoints of count cells on [-X, X]
/// (count+1 nodes).  Midpoint sampling keeps |x|^alpha finite at the origin.
struct WeightSamples {
    double X = 1.0;
    std::vector<double> values;           // one per cell, > 0
    std::optional<double> s;              // set when built as (M w^s)^{1/s}

    std::size_t cells() const { return values.size(); }
    double midpoint(std::size_t i) const;

    static WeightSamples sample(double X, std::size_t cells,
                                const std::function<double(double)>& w);
};

void validate(const WeightSamples& w);

struct ApResult {
    double p = 0.0;
    double characteristic = 1.0;
    std::size_t best_lo = 0, best_hi = 0;    // maximizing cell interval
    std::vector<double> refinement_trace;    // values at successive refinements
};

/// Exhaustive sup over cell-aligned intervals of
/// (avg w) (avg w^{-1/(p-1)})^{p-1}, via prefix sums.
ApResult ap_characteristic(const WeightSamples& w, double p);

/// Pointwise (M w^s)^{1/s} on the same cells.
WeightSamples a1_construct(const WeightSamples& w, double s);

/// sup over cells of M(W)/W for W = a1_construct(w, s).
double a1_lemma_check(const WeightSamples& w, double s);

enum class WeightClass { stable, divergent };

struct PowerWeightRow {
    double alpha = 0.0;
    double p = 0.0;
    std::vector<std::size_t> level_cells;
    std::vector<double> level_characteristic;
    WeightClass cls = WeightClass::stable;
    bool sandwich_checked = false;
    bool sandwich_ok = false;
};

/// A_p classification of |x|^alpha by refinement growth, plus the
/// (1/(1+s a))^{1/s} |x|^a <= (M |.|^{a s})^{1/s} <= (2/(1+s a))^{1/s} |x|^a
/// sandwich for -1 < alpha <= 0 with s alpha > -1.
std::vector<PowerWeightRow> power_weight_range_scan(double p, const std::vector<double>& alphas,
                                                    std::size_t base_cells = 1024,
                                                    std::size_t levels = 3,
                                                    double sandwich_s = 1.5);

void write_weights_csv(const std::vector<PowerWeightRow>& rows, const std::string& path);

}  // namespace disclab
