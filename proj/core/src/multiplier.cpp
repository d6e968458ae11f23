#include "multlab/multiplier.hpp"

#include <cmath>

#include "multlab/errors.hpp"
#include "multlab/fft.hpp"

namespace multlab {

SampledField apply_multiplier_hat(const MultiplierSpec& sigma, const SampledField& f_hat) {
    require_domain(f_hat, Domain::frequency, "apply_multiplier");
    if (sigma.dim != f_hat.grid().dim()) throw ContractError("apply_multiplier: symbol and grid dimensions differ");
    SampledField g = f_hat;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] == 0.0) continue;
        g[i] *= sigma(g.point(i));
    }
    return dft_inverse(g);
}

SampledField apply_multiplier(const MultiplierSpec& sigma, const SampledField& f) {
    require_domain(f, Domain::space, "apply_multiplier");
    return apply_multiplier_hat(sigma, dft_forward(f));
}

double AnalyticFamilyParams::r() const { return 1.0 / ((1.0 - theta) / r0 + theta / r1); }
double AnalyticFamilyParams::s() const { return (1.0 - theta) * s0 + theta * s1; }

void AnalyticFamilyParams::validate(int dim) const {
    if (!(theta > 0.0 && theta < 1.0)) throw ParameterError("analytic family: theta must lie in (0, 1)");
    if (!(r0 > 1.0 && r1 > 1.0)) throw ParameterError("analytic family: r0 and r1 must exceed 1");
    if (!(s0 >= 0.0 && s1 >= 0.0)) throw ParameterError("analytic family: s0 and s1 must be >= 0");
    if (variant == FamilyVariant::sobolev_sec2 && (r0 * s0 <= dim || r1 * s1 <= dim))
        throw ParameterError("analytic family: need r0 s0 > n and r1 s1 > n");
    if (k_range.lo > k_range.hi) throw ParameterError("analytic family: empty k range");
    if (upsample == 0 || !is_power_of_two(upsample)) throw ParameterError("analytic family: upsample must be a power of two");
}

nlohmann::json AnalyticFamilyParams::to_json() const {
    return {{"r0", r0},
            {"s0", s0},
            {"r1", r1},
            {"s1", s1},
            {"theta", theta},
            {"r", r()},
            {"s", s()},
            {"variant", variant == FamilyVariant::sobolev_sec2 ? "sobolev_sec2" : "besov_sec5"},
            {"k_lo", k_range.lo},
            {"k_hi", k_range.hi}};
}

LowerBound operator_lower_bound(const MultiplierSpec& sigma, double p, std::span<const SampledField> probes) {
    if (probes.empty()) throw ParameterError("operator_lower_bound: no probes");
    LowerBound lb;
    lb.ratios.assign(probes.size(), 0.0);
    bool any = false;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        double fn = lp_value(probes[i], p);
        if (fn == 0.0) {
            lb.skipped.push_back(i);
            continue;
        }
        double ratio = lp_value(apply_multiplier(sigma, probes[i]), p) / fn;
        lb.ratios[i] = ratio;
        if (!any || ratio > lb.value) {
            lb.value = ratio;
            lb.argmax = i;
        }
        any = true;
    }
    if (!any) throw ParameterError("operator_lower_bound: every probe is zero");
    return lb;
}

} // namespace multlab
