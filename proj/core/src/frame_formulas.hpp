#pragma once

// Frame formulas shared by the double and multiprecision code paths. R is
// a real type with exp() and comparison found by ADL or std.

#include <cmath>

namespace multlab::formulas {

using std::exp;
using std::ldexp;
using std::pow;

// 1 - S(t) computed without cancellation near t = 1.
template <class R>
R one_minus_smoothstep(const R& t, int order) {
    if (t <= 0) return R(1);
    if (t >= 1) return R(0);
    R a = order == 1 ? R(1 / t) : R(1 / pow(t, order));
    R b = order == 1 ? R(1 / (1 - t)) : R(1 / pow(R(1 - t), order));
    // 1 - S = 1 / (1 + exp(b - a))
    return R(1 / (1 + exp(R(b - a))));
}

template <class R>
R smoothstep(const R& t, int order) {
    if (t <= 0) return R(0);
    if (t >= 1) return R(1);
    R a = order == 1 ? R(1 / t) : R(1 / pow(t, order));
    R b = order == 1 ? R(1 / (1 - t)) : R(1 / pow(R(1 - t), order));
    return R(1 / (1 + exp(R(a - b))));
}

template <class R>
R cutoff(R r, double inner, double outer, int order) {
    if (r < 0) r = -r;
    if (r <= inner) return R(1);
    if (r >= outer) return R(0);
    return one_minus_smoothstep(R((r - inner) / (outer - inner)), order);
}

template <class R>
R chi(const R& r, int order) {
    return cutoff(r, 1.0, 2.0, order);
}

template <class R>
R psi_hat(const R& r, int order) {
    return R(chi(r, order) - chi(R(2 * r), order));
}

// 1 on [1/2, 2], rises on (0.4, 0.5), falls on (2, 2.5).
template <class R>
R psi_tilde_hat(R r, int order) {
    if (r < 0) r = -r;
    if (r <= 0.4 || r >= 2.5) return R(0);
    R rise = smoothstep(R((r - 0.4) / 0.1), order);
    return R(rise * cutoff(r, 2.0, 2.5, order));
}

template <class R>
R phi_tilde_hat(const R& r, int order) {
    return cutoff(r, 2.0, 3.0, order);
}

template <class R>
R block(int j, const R& r, int order) {
    if (j == 0) return chi(r, order);
    return psi_hat(R(ldexp(r, -j)), order);
}

template <class R>
R widened_block(int j, const R& r, int order) {
    if (j == 0) return phi_tilde_hat(r, order);
    return psi_tilde_hat(R(ldexp(r, -j)), order);
}

} // namespace multlab::formulas
