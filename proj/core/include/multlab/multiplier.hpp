#pragma once

#include <memory>
#include <span>
#include <vector>

#include "multlab/frames.hpp"
#include "multlab/norms.hpp"
#include "multlab/symbol.hpp"

namespace multlab {

// Inverse transform of sigma * f_hat, sigma sampled at the grid frequencies.
SampledField apply_multiplier(const MultiplierSpec& sigma, const SampledField& f);
// Same with f_hat already on the frequency grid.
SampledField apply_multiplier_hat(const MultiplierSpec& sigma, const SampledField& f_hat);

enum class FamilyVariant { sobolev_sec2, besov_sec5 };

struct AnalyticFamilyParams {
    double r0 = 2.0, s0 = 0.75;
    double r1 = 8.0, s1 = 0.25;
    double theta = 0.5;
    FamilyVariant variant = FamilyVariant::sobolev_sec2;
    KRange k_range{-8, 8};
    PieceGridOptions piece;
    // Pieces (and for besov_sec5 blocks) below this fraction of the largest
    // are dropped from the sums.
    double drop_below = 1e-14;
    // Stored pieces are trigonometrically upsampled by this factor so that
    // sigma_z can be read at dilated grid points without interpolation error.
    std::size_t upsample = 4;

    // 1/r = (1 - theta)/r0 + theta/r1
    double r() const;
    // s = (1 - theta) s0 + theta s1
    double s() const;
    void validate(int dim) const;
    nlohmann::json to_json() const;
};

// Symbol of the form sum_k G_k(2^-k xi) psi_tilde_hat(2^-k xi) with the G_k
// stored on a common upsampled piece grid.
class SigmaZ {
public:
    struct Term {
        int k = 0;
        SampledField g;  // G_k on the fine grid
    };

    SigmaZ(std::vector<Term> terms, const FramePair& frame, GridSpec base_grid, std::string name,
           nlohmann::json params, int dim);

    const MultiplierSpec& spec() const { return spec_; }
    operator const MultiplierSpec&() const { return spec_; }
    cplx operator()(const Point& xi) const { return spec_(xi); }

    // Number of stored terms whose window is nonzero at xi.
    int terms_at(const Point& xi) const;
    // max |sigma_z| over 2^k eta for all stored k and base-grid eta in the
    // window support; every such point is a node of the stored grids.
    double sup_norm() const;
    std::vector<int> k_values() const;
    const GridSpec& base_grid() const { return base_grid_; }

private:
    struct Data;
    std::shared_ptr<const Data> data_;
    MultiplierSpec spec_;
    GridSpec base_grid_;
};

// Pieces sigma(2^k .) psi_hat on one common grid, with the k values kept.
struct PieceSet {
    GridSpec grid;
    std::vector<int> k_values;
    std::vector<SampledField> pieces;
};
PieceSet collect_pieces(const MultiplierSpec& sigma, const FramePair& frame, const AnalyticFamilyParams& params);

SigmaZ build_sigma_z_sec2(const MultiplierSpec& sigma, const AnalyticFamilyParams& params, cplx z,
                          const FramePair& frame);

// Normalising weights c_j^k = ||Delta_j(sigma^k psi_hat)||_r / Q with
// Q = sup_mu sum_l 2^{ls} ||Delta_l(sigma^mu psi_hat)||_r.
struct BesovWeights {
    std::vector<int> k_values;
    std::vector<std::vector<double>> c;  // c[k index][j]
    double normaliser = 0.0;             // Q
    int J = 0;
};
BesovWeights besov_weights(const PieceSet& pieces, double r, double s, const FramePair& frame);

SigmaZ build_sigma_z_sec5(const MultiplierSpec& sigma, const AnalyticFamilyParams& params, cplx z,
                          const FramePair& frame);

struct LowerBound {
    double value = 0.0;
    std::size_t argmax = 0;
    std::vector<std::size_t> skipped;
    std::vector<double> ratios;  // per probe, 0 for skipped ones
};

// max over nonzero probes of ||T_sigma f||_p / ||f||_p.
LowerBound operator_lower_bound(const MultiplierSpec& sigma, double p, std::span<const SampledField> probes);

} // namespace multlab
