#include "multlab/symbol.hpp"

#include <cmath>

#include "multlab/errors.hpp"

namespace multlab {

cplx MultiplierSpec::operator()(const Point& xi) const {
    double r = radius(xi);
    if (r == 0.0 && singular_at_origin) {
        if (origin_value) return *origin_value;
        throw EvaluationError("symbol '" + name + "' is singular at the origin and has no value there");
    }
    if (r < support_min || r > support_max) return 0.0;
    cplx v = eval(xi);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw EvaluationError("symbol '" + name + "' is not finite at |xi| = " + std::to_string(r));
    return v;
}

double MultiplierSpec::feature_width(int k) const {
    if (piece_feature_width) return piece_feature_width(k);
    return 0.05;
}

bool MultiplierSpec::piece_may_be_nonzero(int k) const {
    double lo = std::ldexp(0.5, k), hi = std::ldexp(2.0, k);
    return !(hi <= support_min || lo >= support_max);
}

MultiplierSpec MultiplierSpec::constant(cplx c, int dim) {
    MultiplierSpec m;
    m.name = "constant";
    m.params = {{"re", c.real()}, {"im", c.imag()}};
    m.eval = [c](const Point&) { return c; };
    m.dim = dim;
    m.piece_feature_width = [](int) { return 1.0; };
    return m;
}

MultiplierSpec MultiplierSpec::from_field(const SampledField& sigma) {
    require_domain(sigma, Domain::frequency, "MultiplierSpec::from_field");
    auto shared = std::make_shared<SampledField>(sigma);
    MultiplierSpec m;
    m.name = "sampled";
    m.params = {{"grid", sigma.grid().to_json()}};
    m.dim = sigma.grid().dim();
    m.eval = [shared](const Point& p) { return interpolate(*shared, p); };
    double step = sigma.grid().frequency_spacing();
    // A sampled symbol has no structure finer than its grid spacing.
    m.piece_feature_width = [step](int k) { return std::ldexp(step, -k); };
    m.support_max = sigma.grid().nyquist() * std::sqrt(static_cast<double>(m.dim));
    return m;
}

namespace {

struct Stencil {
    long first = 0;
    int count = 0;
    double w[16] = {};
    bool node = false;
};

Stencil make_stencil(double u, long m, int stencil) {
    Stencil s;
    double nearest = std::nearbyint(u);
    if (std::abs(u - nearest) < 1e-9) {
        s.node = true;
        s.first = static_cast<long>(nearest);
        s.count = 1;
        s.w[0] = 1.0;
        return s;
    }
    long base = static_cast<long>(std::floor(u)) - stencil / 2 + 1;
    s.first = base;
    s.count = stencil;
    for (int i = 0; i < stencil; ++i) {
        double xi = static_cast<double>(base + i);
        double w = 1.0;
        for (int k = 0; k < stencil; ++k) {
            if (k == i) continue;
            double xk = static_cast<double>(base + k);
            w *= (u - xk) / (xi - xk);
        }
        s.w[i] = w;
    }
    (void)m;
    return s;
}

} // namespace

cplx interpolate(const SampledField& f, const Point& p, int stencil) {
    if (stencil < 2 || stencil > 16) throw ParameterError("interpolate: stencil must be in [2, 16]");
    const GridSpec& g = f.grid();
    const long m = static_cast<long>(g.points());
    const double step = g.step(f.domain());
    auto index_of = [&](double x) { return x / step + 0.5 * static_cast<double>(m); };
    auto in_range = [&](long i) { return i >= 0 && i < m; };
    if (g.dim() == 1) {
        Stencil s = make_stencil(index_of(p[0]), m, stencil);
        cplx acc = 0.0;
        for (int i = 0; i < s.count; ++i) {
            long idx = s.first + i;
            if (in_range(idx)) acc += s.w[i] * f[static_cast<std::size_t>(idx)];
        }
        return acc;
    }
    Stencil s0 = make_stencil(index_of(p[0]), m, stencil);
    Stencil s1 = make_stencil(index_of(p[1]), m, stencil);
    cplx acc = 0.0;
    for (int a = 0; a < s0.count; ++a) {
        long i = s0.first + a;
        if (!in_range(i)) continue;
        for (int b = 0; b < s1.count; ++b) {
            long j = s1.first + b;
            if (!in_range(j)) continue;
            acc += s0.w[a] * s1.w[b] * f[static_cast<std::size_t>(i * m + j)];
        }
    }
    return acc;
}

} // namespace multlab
