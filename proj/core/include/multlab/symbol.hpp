#pragma once

#include <functional>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "multlab/field_ops.hpp"
#include "multlab/grid.hpp"

namespace multlab {

using SymbolFn = std::function<cplx(const Point&)>;

// A Fourier multiplier symbol with enough metadata to sample it sensibly.
struct MultiplierSpec {
    std::string name;
    nlohmann::json params = nlohmann::json::object();
    SymbolFn eval;
    int dim = 1;

    // Symbols with a singularity at the origin take this value there.
    bool singular_at_origin = false;
    std::optional<cplx> origin_value;

    // Smallest feature width of eta -> sigma(2^k eta) on 1/2 <= |eta| <= 2,
    // in eta units. Drives piece grid sizing.
    std::function<double(int)> piece_feature_width;

    // sigma vanishes outside support_min <= |xi| <= support_max.
    double support_min = 0.0;
    double support_max = infinity;

    cplx operator()(const Point& xi) const;
    double feature_width(int k) const;
    // True if sigma(2^k .) can be nonzero on 1/2 <= |eta| <= 2.
    bool piece_may_be_nonzero(int k) const;

    nlohmann::json to_json() const { return {{"name", name}, {"params", params}}; }

    static MultiplierSpec constant(cplx c, int dim);
    // Symbol from frequency samples, evaluated off the grid by local
    // Lagrange interpolation and zero outside the sampled box.
    static MultiplierSpec from_field(const SampledField& sigma);
};

// Local Lagrange interpolation of a sampled field at an arbitrary point in
// its domain. Exact at grid nodes; zero outside the box.
cplx interpolate(const SampledField& f, const Point& p, int stencil = 8);

} // namespace multlab
