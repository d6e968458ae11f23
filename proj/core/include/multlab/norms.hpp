#pragma once

#include <span>
#include <vector>

#include "multlab/field_ops.hpp"
#include "multlab/frames.hpp"
#include "multlab/symbol.hpp"

namespace multlab {

// ||(I - Laplacian)^(s/2) h||_{L^r}, applied on the dual side of h.
NormValue sobolev_norm(const SampledField& h, double r, double s);

struct KRange {
    int lo = -20;
    int hi = 20;
};

struct SupNormResult {
    NormValue norm;
    std::vector<int> k_values;
    std::vector<double> piece_values;
    // max of the two endpoint piece norms over the maximum; a large value
    // means the sup may sit outside the scanned range.
    double boundary_ratio = 0.0;
    // Pieces whose grid hit the point cap.
    std::vector<int> unresolved_k;
};

// sup_k ||sigma(2^k .) psi_hat||_{W^{s,r}} over the k range.
SupNormResult hormander_norm(const MultiplierSpec& sigma, double r, double s, const FramePair& frame,
                             KRange range = {}, const PieceGridOptions& opts = {});

// Smallest J with 2^J >= sqrt(n) * Nyquist of the dual grid, so that the
// low-pass plus blocks 1..J reproduce every grid frequency.
int besov_truncation(const SampledField& h);

// (sum_{j>=1} (2^{js} ||Delta_j h||_p)^q)^{1/q} + ||S_0 h||_p. tail holds the
// weighted norm of the last block kept.
NormValue besov_norm(const SampledField& h, double p, double q, double s, const FramePair& frame, int J = -1);

// Same with the low-pass block folded into the sum as j = 0, which is the
// quantity sup_k sum_j 2^{js} ||Delta_j (sigma(2^k.) psi_hat)||_p uses with q = 1.
NormValue besov_sum(const SampledField& h, double p, double q, double s, const FramePair& frame, int J = -1);

// sup_k of besov_sum over dyadic pieces.
SupNormResult hormander_besov_norm(const MultiplierSpec& sigma, double p, double q, double s, const FramePair& frame,
                                   KRange range = {}, const PieceGridOptions& opts = {});

// Decreasing rearrangement as a step function: value levels[i] on
// (breakpoints[i-1], breakpoints[i]], breakpoints[-1] = 0. Zero samples are
// dropped, so the last breakpoint is the measure of the support.
struct RearrangementProfile {
    std::vector<double> breakpoints;
    std::vector<double> levels;

    static RearrangementProfile of(const SampledField& f);
};

// (sum_i v_i^2 (p/2) (t_i^{2/p} - t_{i-1}^{2/p}))^{1/2}
NormValue lorentz_p2_quasinorm(const SampledField& f, double p);

} // namespace multlab
