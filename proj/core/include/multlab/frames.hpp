#pragma once

#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "multlab/grid.hpp"
#include "multlab/symbol.hpp"

namespace multlab {

// Littlewood-Paley pair built from one smooth radial cutoff chi (1 on |xi| <= 1,
// 0 for |xi| >= 2):
//   psi_hat(xi) = chi(xi) - chi(2 xi),   supported in 1/2 <= |xi| <= 2
//   phi_hat(xi) = chi(xi) = sum_{j <= 0} psi_hat(2^-j xi)
// and widened companions that equal 1 on the support of the originals:
//   psi_tilde_hat = 1 on [1/2, 2], supported in (0.4, 2.5)
//   phi_tilde_hat = 1 on |xi| <= 2, supported in |xi| < 3
class FramePair {
public:
    explicit FramePair(int smoothstep_order = 1);

    int order() const { return order_; }
    double chi(double r) const;
    double psi_hat(double r) const;
    double phi_hat(double r) const { return chi(r); }
    double psi_tilde_hat(double r) const;
    double phi_tilde_hat(double r) const;

    // Littlewood-Paley block multipliers: j = 0 is the low-pass phi_hat,
    // j >= 1 is psi_hat(2^-j .).
    double block(int j, double r) const;
    double widened_block(int j, double r) const;

    // max |sum_j psi_hat(2^-j xi) - 1| measured when the pair was built.
    double partition_residual() const { return partition_residual_; }
    nlohmann::json to_json() const;

    static constexpr double psi_inner = 0.5, psi_outer = 2.0;
    static constexpr double psi_tilde_inner = 0.4, psi_tilde_outer = 2.5;
    static constexpr double phi_tilde_outer = 3.0;

private:
    int order_;
    double partition_residual_ = 0.0;
};

struct PieceGridOptions {
    double half_width = 4.0;
    double samples_per_feature = 8.0;
    std::size_t min_points = 256;
    std::size_t max_points_1d = std::size_t(1) << 18;
    std::size_t max_points_2d = 1024;
    // Nonzero: use exactly this many points per axis.
    std::size_t fixed_points = 0;
    // Throw instead of flagging when the cap prevents resolving a piece.
    bool strict = false;
};

struct PieceGrid {
    GridSpec grid;
    double samples_per_feature = 0.0;
    bool resolved = true;
};

// Frequency grid for eta -> sigma(2^k eta) psi_hat(eta) on the box [-w, w]^n.
PieceGrid piece_grid(const MultiplierSpec& sigma, int k, const PieceGridOptions& opts = {});
PieceGrid piece_grid_for_width(int dim, double feature_width, const PieceGridOptions& opts = {});

// eta -> sigma(2^k eta) psi_hat(eta), frequency tagged.
SampledField dyadic_piece(const MultiplierSpec& sigma, int k, const FramePair& frame,
                          const PieceGridOptions& opts = {});
SampledField dyadic_piece_on(const MultiplierSpec& sigma, int k, const FramePair& frame, const GridSpec& grid);

// Littlewood-Paley block j of h, acting on the dual side of h. The result
// keeps the domain tag of h.
SampledField besov_block(const SampledField& h, int j, const FramePair& frame, bool widened = false);
// All blocks 0..J from one transform.
std::vector<SampledField> besov_blocks(const SampledField& h, int J, const FramePair& frame, bool widened = false);

enum class DecayPrecision { standard, extended };

// ||Delta~_l( Delta~_j(g) psi_hat )||_q / ||g||_q with widened blocks.
// The extended path runs the transforms in 425-bit floating point and is
// needed once the ratio drops below about 1e-15. It is one-dimensional.
double cross_lp_decay(const SampledField& g, int j, int l, double q, const FramePair& frame,
                      DecayPrecision precision = DecayPrecision::standard);

struct DecayProfile {
    std::vector<int> l_values;
    std::vector<double> ratio;
    std::vector<double> log2_ratio;
};

// Same ratio for several l, sharing the product Delta~_j(g) psi_hat.
DecayProfile cross_lp_decay_profile(const SampledField& g, int j, std::span<const int> l_values, double q,
                                    const FramePair& frame, DecayPrecision precision = DecayPrecision::standard);

// Mean-zero smooth bump supported in the ball B(center, scale), normalised
// so that |B|^(1/2) ||a||_2 = 1.
SampledField h1_atom(const Point& center, double scale, const GridSpec& grid);

} // namespace multlab
