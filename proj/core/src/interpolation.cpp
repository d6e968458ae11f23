#include "multlab/interpolation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "multlab/errors.hpp"

namespace multlab {

namespace {

// Pairwise summation keeps the result independent of how the range is split.
double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 16) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

void check_theta(double theta) {
    if (!(theta > 0.0 && theta < 1.0)) throw ParameterError("theta must lie in (0,1)");
}

struct Kernels {
    double minus, plus;
};

Kernels poisson(double t, double theta) {
    const double ch = std::cosh(std::numbers::pi * t);
    const double c = std::cos(std::numbers::pi * theta);
    return {1.0 / (ch - c), 1.0 / (ch + c)};
}

double three_lines_log(const BoundaryData& data, double theta, double halfwidth, int steps,
                       std::vector<double>& violations) {
    const double dt = 2.0 * halfwidth / steps;
    std::vector<double> terms(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double t = -halfwidth + (i + 0.5) * dt;
        const double a0 = data.A0(t);
        const double a1 = data.A1(t);
        const double cap = data.A * std::exp(data.a * std::abs(t));
        if (!(a0 > 0.0) || !(a1 > 0.0) || !std::isfinite(a0) || !std::isfinite(a1) || std::log(a0) > cap ||
            std::log(a1) > cap) {
            violations.push_back(t);
            terms[static_cast<std::size_t>(i)] = 0.0;
            continue;
        }
        const Kernels k = poisson(t, theta);
        terms[static_cast<std::size_t>(i)] = std::log(a0) * k.minus + std::log(a1) * k.plus;
    }
    return 0.5 * std::sin(std::numbers::pi * theta) * dt * pairwise_sum(terms);
}

} // namespace

std::pair<double, double> ide_identities(double theta, double quadrature_halfwidth, int steps) {
    check_theta(theta);
    if (steps < 1000) throw ParameterError("ide_identities needs at least 1000 steps");
    if (quadrature_halfwidth < 10.0) throw ParameterError("ide_identities needs halfwidth >= 10");
    const double dt = 2.0 * quadrature_halfwidth / steps;
    std::vector<double> minus(static_cast<std::size_t>(steps) + 1), plus(minus.size());
    for (int i = 0; i <= steps; ++i) {
        const double t = -quadrature_halfwidth + i * dt;
        const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
        const Kernels k = poisson(t, theta);
        minus[static_cast<std::size_t>(i)] = w * k.minus;
        plus[static_cast<std::size_t>(i)] = w * k.plus;
    }
    const double scale = 0.5 * std::sin(std::numbers::pi * theta) * dt;
    return {scale * pairwise_sum(minus), scale * pairwise_sum(plus)};
}

ThreeLinesResult three_lines_bound(const BoundaryData& data, double theta, const QuadratureOptions& opts) {
    check_theta(theta);
    if (!data.A0 || !data.A1) throw ParameterError("three_lines_bound needs both boundary functions");
    if (!(data.A > 0.0)) throw ParameterError("admissibility constant A must be positive");
    if (!(data.a > 0.0 && data.a < std::numbers::pi)) throw ParameterError("admissibility constant a must lie in (0, pi)");
    if (opts.steps < 1000 || opts.steps % 2 != 0) throw ParameterError("three_lines_bound needs an even step count >= 1000");
    if (opts.halfwidth < 10.0) throw ParameterError("three_lines_bound needs halfwidth >= 10");

    std::vector<double> violations;
    const double coarse = three_lines_log(data, theta, opts.halfwidth, opts.steps, violations);
    const double fine = three_lines_log(data, theta, opts.halfwidth, 2 * opts.steps, violations);
    if (!violations.empty()) {
        std::ostringstream msg;
        msg << "boundary data not admissible at t =";
        const std::size_t shown = std::min<std::size_t>(violations.size(), 8);
        for (std::size_t i = 0; i < shown; ++i) msg << ' ' << violations[i];
        if (violations.size() > shown) msg << " ... (" << violations.size() << " points)";
        throw EvaluationError(msg.str());
    }
    ThreeLinesResult out;
    out.value = std::exp(fine);
    out.refinement_delta = std::abs(std::exp(coarse) - out.value) / out.value;
    return out;
}

nlohmann::json InterpolationPlan::to_json() const {
    return {{"p", p},
            {"s", s},
            {"n", n},
            {"delta", delta},
            {"epsilon", epsilon},
            {"p0", p0},
            {"p1", p1},
            {"r0", r0},
            {"r1", r1},
            {"s0", s0},
            {"s1", s1},
            {"theta", theta},
            {"r", r},
            {"s_target", s_target},
            {"gap_chain", gap_chain},
            {"reachable", reachable},
            {"identity_residual", identity_residual}};
}

namespace {

double reachable_gap(double s, int n, double delta, double epsilon) {
    const double s0 = n / 2.0 + epsilon;
    const double s1 = epsilon + epsilon * epsilon;
    const double one_minus_theta = (s - s1) / (s0 - s1);
    return one_minus_theta * (1.0 - delta) / (2.0 * (1.0 + delta));
}

} // namespace

InterpolationPlan plan_interpolation(double p, double s, int n, double delta, double epsilon) {
    if (n < 1) throw ParameterError("dimension must be positive");
    if (!(p > 1.0 && p <= 2.0)) throw ParameterError("p must lie in (1,2)");
    if (!(delta > 0.0) || !(epsilon > 0.0)) throw ParameterError("delta and epsilon must be positive");
    if (!(1.0 / p - 0.5 < s / n)) throw ParameterError("need 1/p - 1/2 < s/n");

    InterpolationPlan plan;
    plan.p = p;
    plan.n = n;
    plan.delta = delta;
    plan.epsilon = epsilon;
    plan.s_target = s;
    plan.p0 = 1.0 + delta;
    plan.p1 = 2.0;
    plan.r0 = 2.0;
    plan.s0 = n / 2.0 + epsilon;
    plan.s1 = epsilon + epsilon * epsilon;
    plan.r1 = n / epsilon;

    if (!(plan.p0 < p)) throw ParameterError("p0 = 1 + delta must be below p; choose a smaller delta");
    plan.theta = (1.0 / plan.p0 - 1.0 / p) / (1.0 / plan.p0 - 1.0 / plan.p1);
    if (!(plan.theta > 0.0 && plan.theta < 1.0))
        throw ParameterError("theta = " + std::to_string(plan.theta) +
                             " is outside (0,1); p = 2 is degenerate, otherwise choose smaller delta and epsilon");
    plan.s = (1.0 - plan.theta) * plan.s0 + plan.theta * plan.s1;
    if (plan.s > s)
        throw ParameterError("the recipe needs smoothness " + std::to_string(plan.s) + " > " + std::to_string(s) +
                             "; choose smaller delta and epsilon");
    plan.r = 1.0 / ((1.0 - plan.theta) / plan.r0 + plan.theta / plan.r1);

    const double th = plan.theta;
    plan.gap_chain = (plan.s / n - (1.0 - th) * epsilon / n - th * (epsilon + epsilon * epsilon) / n) *
                     (1.0 - delta) / (1.0 + delta);
    plan.reachable = reachable_gap(s, n, delta, epsilon);

    const double r_p = std::abs(1.0 / p - ((1.0 - th) / plan.p0 + th / plan.p1));
    const double r_r = std::abs(1.0 / plan.r - ((1.0 - th) / plan.r0 + th / plan.r1));
    const double r_s = std::abs(plan.s - ((1.0 - th) * plan.s0 + th * plan.s1));
    const double r_chain = std::abs((1.0 / p - 0.5) - plan.gap_chain);
    plan.identity_residual = std::max({r_p, r_r, r_s, r_chain});
    if (plan.identity_residual > 1e-12)
        throw EvaluationError("interpolation identity residual " + std::to_string(plan.identity_residual));
    if (!(plan.gap_chain < plan.s / n)) throw EvaluationError("1/p - 1/2 does not stay below s/n");
    return plan;
}

std::vector<double> plan_convergence(double s, int n, std::span<const double> values) {
    if (n < 1) throw ParameterError("dimension must be positive");
    if (!(s > 0.0 && s < n / 2.0)) throw ParameterError("s must lie in (0, n/2)");
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) {
        if (!(v > 0.0 && v < 1.0)) throw ParameterError("delta = epsilon must lie in (0,1)");
        out.push_back(reachable_gap(s, n, v, v));
    }
    return out;
}

} // namespace multlab
