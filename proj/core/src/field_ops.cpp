#include "multlab/field_ops.hpp"

#include <cmath>

#include "multlab/errors.hpp"

namespace multlab {

std::string to_string(NormKind k) {
    switch (k) {
    case NormKind::Lp: return "Lp";
    case NormKind::Linf: return "Linf";
    case NormKind::LorentzP2: return "LorentzP2";
    case NormKind::SobolevRS: return "SobolevRS";
    case NormKind::Besov: return "Besov";
    case NormKind::HormanderSup: return "HormanderSup";
    case NormKind::BesovSup: return "BesovSup";
    }
    return "unknown";
}

NormKind norm_kind_from_string(const std::string& s) {
    for (auto k : {NormKind::Lp, NormKind::Linf, NormKind::LorentzP2, NormKind::SobolevRS, NormKind::Besov,
                   NormKind::HormanderSup, NormKind::BesovSup})
        if (to_string(k) == s) return k;
    throw ParameterError("unknown norm kind '" + s + "'");
}

nlohmann::json NormValue::to_json() const {
    nlohmann::json j{{"kind", to_string(kind)}, {"params", params}, {"value", value}};
    if (argmax_k) j["argmax_k"] = *argmax_k;
    if (tail) j["tail"] = *tail;
    return j;
}

double lp_value(const SampledField& f, double p) {
    if (!(p > 0.0)) throw ParameterError("lp_norm: exponent must be positive");
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& v : f.values()) m = std::max(m, std::abs(v));
        return m;
    }
    // Scale by the max modulus first so large p does not overflow.
    double m = 0.0;
    for (const auto& v : f.values()) m = std::max(m, std::abs(v));
    if (m == 0.0) return 0.0;
    double sum = 0.0;
    if (p == 2.0) {
        for (const auto& v : f.values()) sum += std::norm(v / m);
    } else {
        for (const auto& v : f.values()) sum += std::pow(std::abs(v) / m, p);
    }
    return m * std::pow(f.cell_measure() * sum, 1.0 / p);
}

NormValue lp_norm(const SampledField& f, double p) {
    NormValue nv;
    double v = lp_value(f, p);
    if (std::isinf(p)) {
        nv.kind = NormKind::Linf;
    } else {
        nv.kind = NormKind::Lp;
        nv.params["p"] = p;
    }
    nv.value = v;
    return nv;
}

cplx polar_power(cplx a, cplx w) {
    double r = std::abs(a);
    if (r == 0.0) return 0.0;
    // |a|^w = exp(w log|a|), then restore the phase of a.
    return std::exp(w * std::log(r)) * (a / r);
}

namespace {
template <class F>
SampledField map1(const SampledField& a, F f) {
    SampledField out(a.grid(), a.domain());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i]);
    return out;
}
template <class F>
SampledField map2(const SampledField& a, const SampledField& b, F f, const char* where) {
    require_same_grid(a, b, where);
    SampledField out(a.grid(), a.domain());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i], b[i]);
    return out;
}
} // namespace

SampledField add(const SampledField& a, const SampledField& b) {
    return map2(a, b, [](cplx x, cplx y) { return x + y; }, "add");
}
SampledField multiply(const SampledField& a, const SampledField& b) {
    return map2(a, b, [](cplx x, cplx y) { return x * y; }, "multiply");
}
SampledField scale(const SampledField& a, cplx c) {
    return map1(a, [c](cplx x) { return c * x; });
}
SampledField conjugate(const SampledField& a) {
    return map1(a, [](cplx x) { return std::conj(x); });
}
SampledField abs_power(const SampledField& a, double beta) {
    return map1(a, [beta](cplx x) { return cplx(x == 0.0 ? (beta == 0.0 ? 1.0 : 0.0) : std::pow(std::abs(x), beta)); });
}
SampledField phase(const SampledField& a) {
    return map1(a, [](cplx x) { return x == 0.0 ? cplx(0.0) : x / std::abs(x); });
}
SampledField polar_power(const SampledField& a, cplx w) {
    return map1(a, [w](cplx x) { return polar_power(x, w); });
}

SampledField pointwise(PointwiseOp op, const SampledField& a, const SampledField* b, cplx scalar) {
    auto need_b = [&] {
        if (!b) throw ParameterError("pointwise: binary op needs a second field");
        return *b;
    };
    switch (op) {
    case PointwiseOp::add: return add(a, need_b());
    case PointwiseOp::multiply: return multiply(a, need_b());
    case PointwiseOp::scale: return scale(a, scalar);
    case PointwiseOp::conjugate: return conjugate(a);
    case PointwiseOp::abs_power: return abs_power(a, scalar.real());
    case PointwiseOp::phase: return phase(a);
    case PointwiseOp::polar_power: return polar_power(a, scalar);
    }
    throw ParameterError("pointwise: unknown op");
}

} // namespace multlab
