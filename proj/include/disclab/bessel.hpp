#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace disclab {

/// Evaluation request for J_nu(x).  Both entries must be finite and >= 0.
struct BesselQuery {
    double nu = 0.0;
    double x = 0.0;
};

enum class BesselMethod { series, integral_representation, closed_form_half_integer };

/// Value together with an a-posteriori absolute error bound and the method
/// that produced it.  The contract is |value - J_nu(x)| <= abs_error_bound,
/// with abs_error_bound <= 1e-9 on nu <= 600, x <= 5000; when a method cannot
/// reach that, the bound is enlarged rather than the value silently trusted.
struct BesselValue {
    double value = 0.0;
    double abs_error_bound = 0.0;
    BesselMethod method = BesselMethod::series;
};

BesselValue bessel_j(const BesselQuery& q);
BesselValue bessel_j_prime(const BesselQuery& q);

/// The two underlying evaluation routes, exposed for cross-validation.
/// bessel_j dispatches between them (plus the half-integer closed forms).
BesselValue bessel_j_series(const BesselQuery& q);    // convergent for x <= ~25
BesselValue bessel_j_integral(const BesselQuery& q);  // any x >= 0

/// log Gamma(x) for x > 0, Lanczos-corrected Stirling form (no libm lgamma).
double log_gamma(double x);

/// All integer orders J_0(x) .. J_nmax(x) in one pass.
/// Upward recurrence below the turning point, Miller's downward recurrence
/// with sum-rule normalization above it.
std::vector<double> bessel_j_integer_all(int nmax, double x);

enum class Regime { oscillatory, subcritical, transition_above, transition_below };

std::string regime_name(Regime r);

/// Asymptotic regime of (nu, x) for the envelope estimates.  rho is the
/// transition parameter |x - nu| / nu^{1/3}, present only for the two
/// transition tags.  Both transition bands live inside the critical interval
/// [nu/2, 2 nu); everything below nu/2 is tagged subcritical.
struct RegimeTag {
    Regime tag = Regime::subcritical;
    double rho = 0.0;
};

RegimeTag classify_regime(const BesselQuery& q);  // requires nu >= 1

/// Envelope magnitudes (for J_nu and J_nu') of the uniform estimates,
/// without multiplicative constants.
struct VdcBound {
    double j_bound = 0.0;
    double jprime_bound = 0.0;
};

VdcBound vdc_bound(const RegimeTag& tag, const BesselQuery& q);

struct VdcRegimeStats {
    Regime regime = Regime::oscillatory;
    double max_ratio_j = 0.0;
    double max_ratio_jprime = 0.0;
    double argmax_x_j = 0.0;
    double argmax_x_jprime = 0.0;
    // set when the oscillatory envelope beats the transition_above J' bound
    // somewhere in the sampled band (the two envelopes cross at large rho)
    bool oscillatory_bound_smaller_somewhere = false;
};

struct VdcScanReport {
    std::vector<double> nu_list;
    std::size_t samples_per_regime = 0;
    std::vector<VdcRegimeStats> per_regime;  // one entry per regime
    double oscillatory_far_field_ratio = 0.0;  // max |J| sqrt(x) at x/nu in [12,16]
};

VdcScanReport vdc_scan(const std::vector<double>& nu_list, std::size_t samples_per_regime);

void write_vdc_csv(const VdcScanReport& rep, const std::string& path);

/// (1/nu) * integral_{nu/2}^{2 nu} |J_nu(r) r^{1/2}|^p dr.
double prodj_integral(double nu, double p, std::size_t nodes_per_wavelength = 24);

}  // namespace disclab
