#include "multlab/norms.hpp"

#include <algorithm>
#include <cmath>

#include "multlab/errors.hpp"
#include "multlab/fft.hpp"
#include "multlab/parallel.hpp"

namespace multlab {

NormValue sobolev_norm(const SampledField& h, double r, double s) {
    if (!(r > 1.0)) throw ParameterError("sobolev_norm: r must exceed 1");
    const double c = 4.0 * M_PI * M_PI;
    SampledField g = s == 0.0 ? h : dual_multiply(h, [&](const Point& w) {
        double rr = w[0] * w[0] + w[1] * w[1];
        return cplx(std::pow(1.0 + c * rr, 0.5 * s));
    });
    NormValue nv;
    nv.kind = NormKind::SobolevRS;
    nv.params = {{"r", r}, {"s", s}};
    nv.value = lp_value(g, r);
    return nv;
}

namespace {

template <class PieceNorm>
SupNormResult sup_over_pieces(const MultiplierSpec& sigma, const FramePair& frame, KRange range,
                              const PieceGridOptions& opts, PieceNorm&& piece_norm) {
    if (range.lo > range.hi) throw ParameterError("k range is empty");
    const std::size_t n = static_cast<std::size_t>(range.hi - range.lo + 1);
    SupNormResult res;
    res.k_values.resize(n);
    res.piece_values.assign(n, 0.0);
    std::vector<char> unresolved(n, 0);
    parallel_for(n, [&](std::size_t i) {
        int k = range.lo + static_cast<int>(i);
        res.k_values[i] = k;
        if (!sigma.piece_may_be_nonzero(k)) return;
        PieceGrid pg = piece_grid(sigma, k, opts);
        unresolved[i] = pg.resolved ? 0 : 1;
        SampledField piece = dyadic_piece_on(sigma, k, frame, pg.grid);
        res.piece_values[i] = piece_norm(piece);
    });
    std::size_t best = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (res.piece_values[i] > res.piece_values[best]) best = i;
        if (unresolved[i]) res.unresolved_k.push_back(res.k_values[i]);
    }
    double top = res.piece_values[best];
    res.norm.value = top;
    res.norm.argmax_k = res.k_values[best];
    res.boundary_ratio = top > 0.0 ? std::max(res.piece_values.front(), res.piece_values.back()) / top : 0.0;
    return res;
}

} // namespace

SupNormResult hormander_norm(const MultiplierSpec& sigma, double r, double s, const FramePair& frame, KRange range,
                             const PieceGridOptions& opts) {
    if (!(r > 1.0)) throw ParameterError("hormander_norm: r must exceed 1");
    auto res = sup_over_pieces(sigma, frame, range, opts,
                               [&](const SampledField& piece) { return sobolev_norm(piece, r, s).value; });
    res.norm.kind = NormKind::HormanderSup;
    res.norm.params = {{"r", r}, {"s", s}, {"k_lo", range.lo}, {"k_hi", range.hi}};
    return res;
}

int besov_truncation(const SampledField& h) {
    const GridSpec& g = h.grid();
    double reach = 0.5 * static_cast<double>(g.points()) * g.step(dual(h.domain()));
    reach *= std::sqrt(static_cast<double>(g.dim()));
    return std::max(1, static_cast<int>(std::ceil(std::log2(reach))));
}

namespace {

struct BlockNorms {
    std::vector<double> weighted;  // 2^{js} ||Delta_j h||_p, j = 0..J
    int J = 0;
};

BlockNorms block_norms(const SampledField& h, double p, double s, const FramePair& frame, int J) {
    if (!(p >= 1.0)) throw ParameterError("besov: p must be >= 1");
    BlockNorms b;
    b.J = J < 0 ? besov_truncation(h) : J;
    SampledField d = to_dual(h);
    b.weighted.assign(static_cast<std::size_t>(b.J) + 1, 0.0);
    for (int j = 0; j <= b.J; ++j) {
        SampledField blk = dual_multiply_from(d, h.domain(), [&](const Point& w) { return cplx(frame.block(j, radius(w))); });
        b.weighted[static_cast<std::size_t>(j)] = std::pow(2.0, j * s) * lp_value(blk, p);
    }
    return b;
}

double lq_sum(std::span<const double> v, double q) {
    if (std::isinf(q)) return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
    double acc = 0.0;
    for (double x : v) acc += std::pow(x, q);
    return std::pow(acc, 1.0 / q);
}

} // namespace

NormValue besov_norm(const SampledField& h, double p, double q, double s, const FramePair& frame, int J) {
    if (!(q >= 1.0)) throw ParameterError("besov_norm: q must be >= 1");
    BlockNorms b = block_norms(h, p, s, frame, J);
    NormValue nv;
    nv.kind = NormKind::Besov;
    nv.params = {{"p", p}, {"q", q}, {"s", s}, {"J", b.J}};
    std::span<const double> high(b.weighted.data() + 1, b.weighted.size() - 1);
    nv.value = lq_sum(high, q) + b.weighted[0];
    nv.tail = b.weighted.back();
    return nv;
}

NormValue besov_sum(const SampledField& h, double p, double q, double s, const FramePair& frame, int J) {
    if (!(q >= 1.0)) throw ParameterError("besov_sum: q must be >= 1");
    BlockNorms b = block_norms(h, p, s, frame, J);
    NormValue nv;
    nv.kind = NormKind::Besov;
    nv.params = {{"p", p}, {"q", q}, {"s", s}, {"J", b.J}, {"lowpass_in_sum", true}};
    nv.value = lq_sum(b.weighted, q);
    nv.tail = b.weighted.back();
    return nv;
}

SupNormResult hormander_besov_norm(const MultiplierSpec& sigma, double p, double q, double s, const FramePair& frame,
                                   KRange range, const PieceGridOptions& opts) {
    auto res = sup_over_pieces(sigma, frame, range, opts,
                               [&](const SampledField& piece) { return besov_sum(piece, p, q, s, frame).value; });
    res.norm.kind = NormKind::BesovSup;
    res.norm.params = {{"p", p}, {"q", q}, {"s", s}, {"k_lo", range.lo}, {"k_hi", range.hi}};
    return res;
}

RearrangementProfile RearrangementProfile::of(const SampledField& f) {
    std::vector<double> mods;
    mods.reserve(f.size());
    for (const auto& v : f.values()) {
        double a = std::abs(v);
        if (a > 0.0) mods.push_back(a);
    }
    std::sort(mods.begin(), mods.end(), std::greater<>());
    RearrangementProfile rp;
    const double cell = f.cell_measure();
    std::size_t count = 0;
    for (std::size_t i = 0; i < mods.size(); ++i) {
        ++count;
        if (i + 1 == mods.size() || mods[i + 1] != mods[i]) {
            rp.levels.push_back(mods[i]);
            rp.breakpoints.push_back(cell * static_cast<double>(count));
        }
    }
    return rp;
}

NormValue lorentz_p2_quasinorm(const SampledField& f, double p) {
    if (!(p > 0.0) || std::isinf(p)) throw ParameterError("lorentz_p2_quasinorm: p must be positive and finite");
    RearrangementProfile rp = RearrangementProfile::of(f);
    double acc = 0.0, prev = 0.0;
    for (std::size_t i = 0; i < rp.levels.size(); ++i) {
        double t = std::pow(rp.breakpoints[i], 2.0 / p);
        acc += rp.levels[i] * rp.levels[i] * (0.5 * p) * (t - prev);
        prev = t;
    }
    NormValue nv;
    nv.kind = NormKind::LorentzP2;
    nv.params = {{"p", p}, {"q", 2}};
    nv.value = std::sqrt(acc);
    return nv;
}

} // namespace multlab
