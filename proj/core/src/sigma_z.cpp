#include <algorithm>
#include <cmath>

#include "multlab/errors.hpp"
#include "multlab/fft.hpp"
#include "multlab/multiplier.hpp"

namespace multlab {

struct SigmaZ::Data {
    std::vector<Term> terms;
    int k_min = 0;
    std::vector<int> slot;  // slot[k - k_min] = index into terms or -1
    FramePair frame;

    const Term* term(int k) const {
        int i = k - k_min;
        if (i < 0 || i >= static_cast<int>(slot.size()) || slot[static_cast<std::size_t>(i)] < 0) return nullptr;
        return &terms[static_cast<std::size_t>(slot[static_cast<std::size_t>(i)])];
    }

    template <class F>
    void for_each_active(const Point& xi, F&& f) const {
        double r = radius(xi);
        if (r == 0.0) return;
        // Window support (0.4, 2.5) in 2^-k |xi| means 2^k in (|xi|/2.5, |xi|/0.4).
        int lo = static_cast<int>(std::floor(std::log2(r / FramePair::psi_tilde_outer)));
        int hi = static_cast<int>(std::ceil(std::log2(r / FramePair::psi_tilde_inner)));
        for (int k = lo; k <= hi; ++k) {
            const Term* t = term(k);
            if (!t) continue;
            double w = frame.psi_tilde_hat(std::ldexp(r, -k));
            if (w == 0.0) continue;
            f(*t, w, Point{std::ldexp(xi[0], -k), std::ldexp(xi[1], -k)});
        }
    }
};

SigmaZ::SigmaZ(std::vector<Term> terms, const FramePair& frame, GridSpec base_grid, std::string name,
               nlohmann::json params, int dim)
    : base_grid_(base_grid) {
    auto d = std::make_shared<Data>(Data{std::move(terms), 0, {}, frame});
    std::sort(d->terms.begin(), d->terms.end(), [](const Term& a, const Term& b) { return a.k < b.k; });
    if (!d->terms.empty()) {
        d->k_min = d->terms.front().k;
        d->slot.assign(static_cast<std::size_t>(d->terms.back().k - d->k_min + 1), -1);
        for (std::size_t i = 0; i < d->terms.size(); ++i)
            d->slot[static_cast<std::size_t>(d->terms[i].k - d->k_min)] = static_cast<int>(i);
    }
    data_ = d;
    spec_.name = std::move(name);
    spec_.params = std::move(params);
    spec_.dim = dim;
    std::shared_ptr<const Data> cd = data_;
    spec_.eval = [cd](const Point& xi) {
        cplx acc = 0.0;
        cd->for_each_active(xi, [&](const Term& t, double w, const Point& eta) { acc += w * interpolate(t.g, eta); });
        return acc;
    };
    if (!data_->terms.empty()) {
        spec_.support_min = std::ldexp(FramePair::psi_tilde_inner, data_->terms.front().k);
        spec_.support_max = std::ldexp(FramePair::psi_tilde_outer, data_->terms.back().k) * std::sqrt(2.0);
    } else {
        spec_.support_max = 0.0;
    }
    double step = base_grid_.frequency_spacing();
    spec_.piece_feature_width = [step](int) { return 8.0 * step; };
}

int SigmaZ::terms_at(const Point& xi) const {
    int n = 0;
    data_->for_each_active(xi, [&](const Term&, double, const Point&) { ++n; });
    return n;
}

std::vector<int> SigmaZ::k_values() const {
    std::vector<int> ks;
    for (const auto& t : data_->terms) ks.push_back(t.k);
    return ks;
}

double SigmaZ::sup_norm() const {
    double best = 0.0;
    for (const auto& t : data_->terms) {
        for (std::size_t i = 0; i < base_grid_.size(); ++i) {
            Point eta = base_grid_.point(Domain::frequency, i);
            double r = radius(eta);
            if (r <= FramePair::psi_tilde_inner || r >= FramePair::psi_tilde_outer) continue;
            Point xi{std::ldexp(eta[0], t.k), std::ldexp(eta[1], t.k)};
            best = std::max(best, std::abs(spec_.eval(xi)));
        }
    }
    return best;
}

PieceSet collect_pieces(const MultiplierSpec& sigma, const FramePair& frame, const AnalyticFamilyParams& params) {
    PieceSet ps;
    std::vector<int> candidates;
    std::size_t points = params.piece.fixed_points;
    for (int k = params.k_range.lo; k <= params.k_range.hi; ++k) {
        if (!sigma.piece_may_be_nonzero(k)) continue;
        candidates.push_back(k);
        if (!params.piece.fixed_points)
            points = std::max(points, piece_grid(sigma, k, params.piece).grid.points());
    }
    if (candidates.empty()) throw NormalizationError("sigma has no nonzero dyadic piece in the k range");
    PieceGridOptions fixed = params.piece;
    fixed.fixed_points = points;
    ps.grid = piece_grid_for_width(sigma.dim, 1.0, fixed).grid;
    std::vector<SampledField> all;
    double top = 0.0;
    std::vector<double> norms;
    for (int k : candidates) {
        all.push_back(dyadic_piece_on(sigma, k, frame, ps.grid));
        norms.push_back(lp_value(all.back(), 2.0));
        top = std::max(top, norms.back());
    }
    if (top == 0.0) throw NormalizationError("sigma vanishes on every dyadic piece");
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (norms[i] <= params.drop_below * top) continue;
        ps.k_values.push_back(candidates[i]);
        ps.pieces.push_back(std::move(all[i]));
    }
    return ps;
}

namespace {

void check_strip(cplx z) {
    if (!(z.real() >= 0.0 && z.real() <= 1.0)) throw ParameterError("sigma_z: z must lie in the closed strip 0 <= Re z <= 1");
}

// (1 + 4 pi^2 |x|^2)^{w/2}, principal branch.
std::function<cplx(const Point&)> bessel_weight(cplx w) {
    return [w](const Point& x) {
        double base = 1.0 + 4.0 * M_PI * M_PI * (x[0] * x[0] + x[1] * x[1]);
        return std::exp(0.5 * w * std::log(base));
    };
}

} // namespace

SigmaZ build_sigma_z_sec2(const MultiplierSpec& sigma, const AnalyticFamilyParams& params, cplx z,
                          const FramePair& frame) {
    params.validate(sigma.dim);
    if (params.variant != FamilyVariant::sobolev_sec2) throw ParameterError("build_sigma_z_sec2 needs the sobolev_sec2 variant");
    check_strip(z);
    const double r = params.r(), s = params.s();
    const cplx power = r * ((1.0 - z) / params.r0 + z / params.r1);
    const cplx smooth = -(params.s0 * (1.0 - z) + params.s1 * z);
    PieceSet ps = collect_pieces(sigma, frame, params);
    std::vector<SigmaZ::Term> terms(ps.pieces.size());
    for (std::size_t i = 0; i < ps.pieces.size(); ++i) {
        SampledField phi = dual_multiply(ps.pieces[i], bessel_weight(s));
        SampledField g = dual_multiply(polar_power(phi, power), bessel_weight(smooth));
        terms[i] = {ps.k_values[i], upsample(g, params.upsample)};
    }
    nlohmann::json p = params.to_json();
    p["z"] = {z.real(), z.imag()};
    p["sigma"] = sigma.to_json();
    return SigmaZ(std::move(terms), frame, ps.grid, "sigma_z_sec2", p, sigma.dim);
}

BesovWeights besov_weights(const PieceSet& pieces, double r, double s, const FramePair& frame) {
    BesovWeights bw;
    bw.k_values = pieces.k_values;
    if (pieces.pieces.empty()) throw NormalizationError("besov weights: no pieces");
    bw.J = besov_truncation(pieces.pieces.front());
    double Q = 0.0;
    for (const auto& piece : pieces.pieces) {
        auto blocks = besov_blocks(piece, bw.J, frame);
        std::vector<double> norms(blocks.size());
        double sum = 0.0;
        for (std::size_t j = 0; j < blocks.size(); ++j) {
            norms[j] = lp_value(blocks[j], r);
            sum += std::pow(2.0, static_cast<double>(j) * s) * norms[j];
        }
        Q = std::max(Q, sum);
        bw.c.push_back(std::move(norms));
    }
    if (Q == 0.0) throw NormalizationError("besov weights: sigma is zero");
    for (auto& row : bw.c)
        for (auto& v : row) v /= Q;
    bw.normaliser = Q;
    return bw;
}

SigmaZ build_sigma_z_sec5(const MultiplierSpec& sigma, const AnalyticFamilyParams& params, cplx z,
                          const FramePair& frame) {
    params.validate(sigma.dim);
    if (params.variant != FamilyVariant::besov_sec5) throw ParameterError("build_sigma_z_sec5 needs the besov_sec5 variant");
    check_strip(z);
    const double r = params.r(), s = params.s();
    const cplx L = r / params.r0 * (1.0 - z) + r / params.r1 * z;
    const cplx M = s - (1.0 - z) * params.s0 - z * params.s1;
    PieceSet ps = collect_pieces(sigma, frame, params);
    BesovWeights bw = besov_weights(ps, r, s, frame);
    std::vector<SigmaZ::Term> terms(ps.pieces.size());
    for (std::size_t i = 0; i < ps.pieces.size(); ++i) {
        const auto& c = bw.c[i];
        double cmax = *std::max_element(c.begin(), c.end());
        auto blocks = besov_blocks(ps.pieces[i], bw.J, frame);
        SampledField acc(ps.grid, Domain::space);
        for (int j = 0; j <= bw.J; ++j) {
            double cj = c[static_cast<std::size_t>(j)];
            if (cj == 0.0 || cj <= params.drop_below * cmax) continue;
            cplx coef = std::exp(static_cast<double>(j) * M * std::log(2.0) + (1.0 - L) * std::log(cj));
            SampledField q = to_dual(polar_power(blocks[static_cast<std::size_t>(j)], L));
            for (std::size_t m = 0; m < acc.size(); ++m) {
                double w = frame.widened_block(j, radius(q.point(m)));
                if (w != 0.0) acc[m] += coef * w * q[m];
            }
        }
        terms[i] = {ps.k_values[i], upsample(to_dual(acc), params.upsample)};
    }
    nlohmann::json p = params.to_json();
    p["z"] = {z.real(), z.imag()};
    p["sigma"] = sigma.to_json();
    p["besov_normaliser"] = bw.normaliser;
    p["J"] = bw.J;
    return SigmaZ(std::move(terms), frame, ps.grid, "sigma_z_sec5", p, sigma.dim);
}

} // namespace multlab
