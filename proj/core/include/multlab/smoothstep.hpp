#pragma once

namespace multlab {

// S(t) = e^{-1/t^k} / (e^{-1/t^k} + e^{-1/(1-t)^k}) on (0,1), 0 for t <= 0 and
// 1 for t >= 1. Smooth, with every derivative vanishing at both ends. k is
// the order.
double smoothstep(double t, int order = 1);

// Radial cutoff: 1 for r <= inner, 0 for r >= outer, 1 - S((r-inner)/(outer-inner))
// in between. Negative r is treated as |r|.
double cutoff(double r, double inner, double outer, int order = 1);

} // namespace multlab
