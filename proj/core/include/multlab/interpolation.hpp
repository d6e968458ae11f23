#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "multlab/grid.hpp"

namespace multlab {

// (sin(pi theta)/2) * integral over [-w, w] of dt / (cosh(pi t) -+ cos(pi theta)),
// trapezoid rule on `steps` subintervals. Exact values are 1 - theta and theta.
std::pair<double, double> ide_identities(double theta, double quadrature_halfwidth = 20.0, int steps = 20000);

struct BoundaryData {
    std::function<double(double)> A0;
    std::function<double(double)> A1;
    // Admissibility: log A_tau(t) <= A exp(a |t|) with a < pi.
    double A = 1.0;
    double a = 1.0;
};

struct QuadratureOptions {
    double halfwidth = 30.0;
    int steps = 60000;  // midpoint nodes on [-halfwidth, halfwidth], t = 0 excluded
};

struct ThreeLinesResult {
    double value = 0.0;
    // |value(steps) - value(2 steps)| / value(2 steps)
    double refinement_delta = 0.0;
};

// exp{(sin(pi theta)/2) int [log A0/(cosh pi t - cos pi theta) + log A1/(cosh pi t + cos pi theta)] dt}
ThreeLinesResult three_lines_bound(const BoundaryData& data, double theta, const QuadratureOptions& opts = {});

// Cube of grid cells: first cell index and width in cells along every axis.
struct Cube {
    std::array<std::size_t, 2> origin{0, 0};
    std::size_t width = 1;
    cplx c = 0.0;
};

struct StepFamilyOptions {
    double initial_tolerance = 0.25;
    int max_halvings = 40;
    std::size_t max_cubes = std::size_t(1) << 21;
    // Ramp width of the smooth indicators in units of the grid spacing.
    // Below 1/2 the grid samples of h_j are exactly those of the cube indicator.
    double mollifier_cells = 0.25;
};

// f_z = sum_j |c_j|^{p/p0 (1-z) + p/p1 z} h_j with h_j = e^{i arg c_j} g_j and
// g_j smooth, 0 <= g_j <= indicator of cube Q_j, cubes with disjoint interiors.
class StepFamily {
public:
    StepFamily(GridSpec grid, std::vector<Cube> cubes, double p, double p0, double p1, double theta,
               double mollifier_cells, double tolerance);

    SampledField evaluate(cplx z) const;
    // g_j at an arbitrary point.
    double g(std::size_t j, const Point& x) const;

    const std::vector<Cube>& cubes() const { return cubes_; }
    const GridSpec& grid() const { return grid_; }
    double tolerance() const { return tolerance_; }
    double theta() const { return theta_; }

private:
    GridSpec grid_;
    std::vector<Cube> cubes_;
    double p_, p0_, p1_, theta_, ramp_, tolerance_;
};

struct EmbedDiagnostics {
    // ||f_theta - f||_2 + ||f_theta - f||_{p0}^{min(1,p0)} + ||f_theta - f||_{p1}^{min(1,p1)}
    double approximation_error = 0.0;
    std::vector<double> t_values;
    std::vector<double> eps_prime_0;  // ||f_{it}||_{p0}^{p0} - ||f||_p^p
    std::vector<double> eps_prime_1;  // ||f_{1+it}||_{p1}^{p1} - ||f||_p^p
    double eps_prime = 0.0;           // max of both
    std::size_t cube_count = 0;
};

StepFamily step_family_embed(const SampledField& f, double p, double p0, double p1, double theta, double eps,
                             const StepFamilyOptions& opts = {});
EmbedDiagnostics embed_diagnostics(const StepFamily& family, const SampledField& f, double p, double p0, double p1,
                                   std::span<const double> t_values);

struct InterpolationPlan {
    double p = 0.0, s = 0.0;
    int n = 1;
    double delta = 0.0, epsilon = 0.0;
    double p0 = 0.0, p1 = 2.0, r0 = 2.0, s0 = 0.0, s1 = 0.0, r1 = 0.0;
    double theta = 0.0, r = 0.0;
    // Requested smoothness. The plan interpolates to s = (1 - theta) s0 + theta s1 <= s_target.
    double s_target = 0.0;
    // (s/n - (1-theta) eps/n - theta (eps + eps^2)/n) (1 - delta)/(1 + delta), equal to 1/p - 1/2.
    double gap_chain = 0.0;
    // Largest 1/p - 1/2 reachable with smoothness s_target at these delta, eps. Below s_target/n.
    double reachable = 0.0;
    // Max residual over the three convex-combination identities and the chain.
    double identity_residual = 0.0;

    nlohmann::json to_json() const;
};

InterpolationPlan plan_interpolation(double p, double s, int n, double delta, double epsilon);

// Reachable 1/p - 1/2 along delta = epsilon = values[i].
std::vector<double> plan_convergence(double s, int n, std::span<const double> values);

} // namespace multlab
