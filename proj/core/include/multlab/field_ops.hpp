#pragma once

#include <limits>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "multlab/grid.hpp"

namespace multlab {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

enum class NormKind { Lp, Linf, LorentzP2, SobolevRS, Besov, HormanderSup, BesovSup };

std::string to_string(NormKind k);
NormKind norm_kind_from_string(const std::string& s);

struct NormValue {
    NormKind kind = NormKind::Lp;
    nlohmann::json params = nlohmann::json::object();
    double value = 0.0;
    std::optional<int> argmax_k;
    std::optional<double> tail;

    nlohmann::json to_json() const;
};

// (cell * sum |f|^p)^(1/p), cell = h^d on space grids and L^-d on frequency
// grids. p = infinity gives the max modulus.
NormValue lp_norm(const SampledField& f, double p);
double lp_value(const SampledField& f, double p);

enum class PointwiseOp { add, multiply, scale, conjugate, abs_power, phase, polar_power };

// polar_power maps a to |a|^w exp(i arg a) for complex w, with 0 -> 0.
cplx polar_power(cplx a, cplx w);

SampledField add(const SampledField& a, const SampledField& b);
SampledField multiply(const SampledField& a, const SampledField& b);
SampledField scale(const SampledField& a, cplx c);
SampledField conjugate(const SampledField& a);
SampledField abs_power(const SampledField& a, double beta);
SampledField phase(const SampledField& a);
SampledField polar_power(const SampledField& a, cplx w);

// Dispatcher over the ops above. b is required for add and multiply, the
// scalar is the factor for scale and the exponent otherwise.
SampledField pointwise(PointwiseOp op, const SampledField& a, const SampledField* b = nullptr,
                       cplx scalar = 1.0);

} // namespace multlab
