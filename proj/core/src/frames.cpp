#include "multlab/frames.hpp"

#include <cmath>

#include "frame_formulas.hpp"
#include "multlab/errors.hpp"
#include "multlab/fft.hpp"
#include "multlab/smoothstep.hpp"

namespace multlab {

FramePair::FramePair(int smoothstep_order) : order_(smoothstep_order) {
    if (order_ < 1) throw ParameterError("smoothstep order must be >= 1");
    // Check sum_{j in Z} psi_hat(2^-j xi) = 1 on a log grid covering many octaves.
    double worst = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        double r = std::exp2(-20.0 + 40.0 * i / 4000.0);
        double sum = 0.0;
        int jc = static_cast<int>(std::floor(std::log2(r)));
        for (int j = jc - 3; j <= jc + 3; ++j) sum += psi_hat(std::ldexp(r, -j));
        worst = std::max(worst, std::abs(sum - 1.0));
        // Low-pass plus high-pass blocks telescope to chi(2^-J xi).
        double lp = phi_hat(r);
        for (int j = 1; j <= 24; ++j) lp += block(j, r);
        if (r < std::ldexp(1.0, 24)) worst = std::max(worst, std::abs(lp - 1.0));
        // Reproducing property of the widened pair.
        double ph = psi_hat(r);
        if (ph != 0.0 && psi_tilde_hat(r) != 1.0)
            throw NormalizationError("widened psi is not identically 1 on the support of psi");
        if (phi_hat(r) != 0.0 && phi_tilde_hat(r) != 1.0)
            throw NormalizationError("widened phi is not identically 1 on the support of phi");
    }
    partition_residual_ = worst;
    if (worst > 1e-12) throw NormalizationError("partition of unity residual " + std::to_string(worst));
}

double FramePair::chi(double r) const { return formulas::chi(r, order_); }
double FramePair::psi_hat(double r) const { return formulas::psi_hat(r, order_); }
double FramePair::psi_tilde_hat(double r) const { return formulas::psi_tilde_hat(r, order_); }
double FramePair::phi_tilde_hat(double r) const { return formulas::phi_tilde_hat(r, order_); }
double FramePair::block(int j, double r) const {
    if (j < 0) throw ParameterError("block index must be >= 0");
    return formulas::block(j, r, order_);
}
double FramePair::widened_block(int j, double r) const {
    if (j < 0) throw ParameterError("block index must be >= 0");
    return formulas::widened_block(j, r, order_);
}

nlohmann::json FramePair::to_json() const {
    return {{"smoothstep_order", order_},
            {"chi", {{"inner", 1.0}, {"outer", 2.0}}},
            {"psi_tilde", {{"inner", psi_tilde_inner}, {"outer", psi_tilde_outer}}},
            {"phi_tilde_outer", phi_tilde_outer},
            {"partition_residual", partition_residual_}};
}

PieceGrid piece_grid_for_width(int dim, double feature_width, const PieceGridOptions& opts) {
    if (!(feature_width > 0.0)) throw ParameterError("feature width must be positive");
    const double w = opts.half_width;
    std::size_t cap = dim == 1 ? opts.max_points_1d : opts.max_points_2d;
    PieceGrid pg;
    std::size_t m;
    if (opts.fixed_points) {
        m = opts.fixed_points;
    } else {
        double need = 2.0 * w * opts.samples_per_feature / feature_width;
        m = next_power_of_two(static_cast<std::size_t>(std::ceil(std::max(need, double(opts.min_points)))));
        if (m > cap) {
            if (opts.strict)
                throw ResolutionError("piece needs " + std::to_string(m) + " points per axis, cap is " +
                                          std::to_string(cap),
                                      m);
            m = cap;
        }
    }
    // Frequency box [-w, w): Nyquist M / (2L) = w.
    pg.grid = GridSpec(dim, m, static_cast<double>(m) / (2.0 * w));
    pg.samples_per_feature = feature_width / pg.grid.frequency_spacing();
    pg.resolved = pg.samples_per_feature >= opts.samples_per_feature * (1.0 - 1e-12);
    return pg;
}

PieceGrid piece_grid(const MultiplierSpec& sigma, int k, const PieceGridOptions& opts) {
    return piece_grid_for_width(sigma.dim, sigma.feature_width(k), opts);
}

SampledField dyadic_piece_on(const MultiplierSpec& sigma, int k, const FramePair& frame, const GridSpec& grid) {
    SampledField out(grid, Domain::frequency);
    const double s = std::ldexp(1.0, k);
    for (std::size_t i = 0; i < out.size(); ++i) {
        Point eta = out.point(i);
        double w = frame.psi_hat(radius(eta));
        if (w == 0.0) continue;
        out[i] = sigma(Point{s * eta[0], s * eta[1]}) * w;
    }
    return out;
}

SampledField dyadic_piece(const MultiplierSpec& sigma, int k, const FramePair& frame, const PieceGridOptions& opts) {
    PieceGrid pg = piece_grid(sigma, k, opts);
    return dyadic_piece_on(sigma, k, frame, pg.grid);
}

SampledField besov_block(const SampledField& h, int j, const FramePair& frame, bool widened) {
    if (j < 0) throw ParameterError("besov_block: j must be >= 0");
    return dual_multiply(h, [&](const Point& w) {
        double r = radius(w);
        return cplx(widened ? frame.widened_block(j, r) : frame.block(j, r));
    });
}

std::vector<SampledField> besov_blocks(const SampledField& h, int J, const FramePair& frame, bool widened) {
    if (J < 0) throw ParameterError("besov_blocks: J must be >= 0");
    SampledField d = to_dual(h);
    std::vector<SampledField> out;
    out.reserve(static_cast<std::size_t>(J) + 1);
    for (int j = 0; j <= J; ++j) {
        out.push_back(dual_multiply_from(d, h.domain(), [&](const Point& w) {
            double r = radius(w);
            return cplx(widened ? frame.widened_block(j, r) : frame.block(j, r));
        }));
    }
    return out;
}

SampledField h1_atom(const Point& center, double scale, const GridSpec& grid) {
    if (!(scale > 0.0)) throw ParameterError("h1_atom: scale must be positive");
    for (int a = 0; a < grid.dim(); ++a)
        if (std::abs(center[a]) + scale > grid.box_halfwidth())
            throw ParameterError("h1_atom: ball leaves the box");
    if (scale < 8.0 * grid.spacing())
        throw ResolutionError("h1_atom: scale below 8 grid cells",
                              next_power_of_two(static_cast<std::size_t>(std::ceil(8.0 * grid.length() / scale))));
    auto bump = [&](const Point& x, double rad) {
        Point d{x[0] - center[0], grid.dim() == 1 ? 0.0 : x[1] - center[1]};
        return cutoff(radius(d) / rad, 0.0, 1.0);
    };
    SampledField b1 = SampledField::from_function(grid, Domain::space, [&](const Point& x) { return cplx(bump(x, scale)); });
    SampledField b2 =
        SampledField::from_function(grid, Domain::space, [&](const Point& x) { return cplx(bump(x, 0.5 * scale)); });
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < b1.size(); ++i) {
        s1 += b1[i].real();
        s2 += b2[i].real();
    }
    double c = s1 / s2;
    SampledField a(grid, Domain::space);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = b1[i] - c * b2[i];
    double ball = grid.dim() == 1 ? 2.0 * scale : M_PI * scale * scale;
    double l2 = lp_value(a, 2.0);
    double f = 1.0 / (std::sqrt(ball) * l2);
    for (auto& v : a.values()) v *= f;
    return a;
}

} // namespace multlab
