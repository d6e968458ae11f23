#include <cmath>

#include "multlab/errors.hpp"
#include "multlab/fft.hpp"
#include "multlab/frames.hpp"

namespace multlab {

namespace detail {
DecayProfile decay_profile_extended(const SampledField& g, int j, std::span<const int> l_values, double q,
                                    const FramePair& frame);
}

namespace {

void check_args(int j, std::span<const int> ls, double q) {
    if (j < 0) throw ParameterError("cross_lp_decay: j must be >= 0");
    for (int l : ls)
        if (l < 0) throw ParameterError("cross_lp_decay: l must be >= 0");
    if (!(q >= 1.0)) throw ParameterError("cross_lp_decay: q must be >= 1");
}

// Largest |coordinate| on the dual grid of g along one axis.
double dual_reach(const SampledField& g) {
    const GridSpec& gr = g.grid();
    return 0.5 * static_cast<double>(gr.points()) * gr.step(dual(g.domain()));
}

} // namespace

DecayProfile cross_lp_decay_profile(const SampledField& g, int j, std::span<const int> l_values, double q,
                                    const FramePair& frame, DecayPrecision precision) {
    check_args(j, l_values, q);
    int top = j;
    for (int l : l_values) top = std::max(top, l);
    double need = top == 0 ? FramePair::phi_tilde_outer : std::ldexp(FramePair::psi_tilde_outer, top);
    if (need > dual_reach(g))
        throw ResolutionError("cross_lp_decay: widened block " + std::to_string(top) + " exceeds the dual grid");
    if (precision == DecayPrecision::extended) return detail::decay_profile_extended(g, j, l_values, q, frame);

    double gnorm = lp_value(g, q);
    if (gnorm == 0.0) throw ParameterError("cross_lp_decay: g is zero");
    SampledField a = besov_block(g, j, frame, true);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= frame.psi_hat(radius(a.point(i)));
    SampledField ad = to_dual(a);
    DecayProfile out;
    for (int l : l_values) {
        SampledField b = dual_multiply_from(ad, g.domain(), [&](const Point& w) { return cplx(frame.widened_block(l, radius(w))); });
        double r = lp_value(b, q) / gnorm;
        out.l_values.push_back(l);
        out.ratio.push_back(r);
        out.log2_ratio.push_back(r > 0.0 ? std::log2(r) : -infinity);
    }
    return out;
}

double cross_lp_decay(const SampledField& g, int j, int l, double q, const FramePair& frame, DecayPrecision precision) {
    int ls[1] = {l};
    return cross_lp_decay_profile(g, j, ls, q, frame, precision).ratio.front();
}

} // namespace multlab
