#include <algorithm>
#include <cmath>
#include <limits>

#include "multlab/errors.hpp"
#include "multlab/field_ops.hpp"
#include "multlab/interpolation.hpp"
#include "multlab/smoothstep.hpp"

namespace multlab {

namespace {

// Smooth bump on [a, b]: ramps up over [a, a + rho], 1 in the middle, ramps down over [b - rho, b].
double plateau(double x, double a, double b, double rho) {
    if (x <= a || x >= b) return 0.0;
    if (x < a + rho) return smoothstep((x - a) / rho);
    if (x > b - rho) return smoothstep((b - x) / rho);
    return 1.0;
}

double power_sum(const SampledField& f, double q) {
    double s = 0.0;
    for (const cplx& v : f.values()) s += std::pow(std::abs(v), q);
    return s * f.cell_measure();
}

double lq_term(const SampledField& f, double q) {
    // ||f||_q^{min(1,q)}
    const double integral = power_sum(f, q);
    return std::pow(integral, std::min(1.0, q) / q);
}

class Decomposer {
public:
    Decomposer(const SampledField& f, double tol, std::size_t max_cubes)
        : f_(f), dim_(f.grid().dim()), m_(f.grid().points()), tol_(tol), max_cubes_(max_cubes) {}

    void run(std::array<std::size_t, 2> origin, std::size_t width) { split(origin, width); }
    std::vector<Cube> take() { return std::move(cubes_); }

private:
    std::size_t flat(std::size_t i, std::size_t j) const { return dim_ == 1 ? i : i * m_ + j; }

    template <class F>
    void for_cells(std::array<std::size_t, 2> o, std::size_t w, F&& body) const {
        const std::size_t wj = dim_ == 1 ? 1 : w;
        for (std::size_t i = o[0]; i < o[0] + w; ++i)
            for (std::size_t j = o[1]; j < o[1] + wj; ++j) body(flat(i, j));
    }

    void split(std::array<std::size_t, 2> o, std::size_t w) {
        cplx sum = 0.0;
        double peak = 0.0;
        std::size_t count = 0;
        for_cells(o, w, [&](std::size_t k) {
            sum += f_[k];
            peak = std::max(peak, std::abs(f_[k]));
            ++count;
        });
        if (peak == 0.0) return;
        const cplx c = sum / static_cast<double>(count);
        double osc = 0.0;
        for_cells(o, w, [&](std::size_t k) { osc = std::max(osc, std::abs(f_[k] - c)); });
        if (osc <= tol_ || w == 1) {
            if (c != 0.0) {
                if (cubes_.size() >= max_cubes_)
                    throw ResolutionError("step decomposition exceeds the cube budget", cubes_.size());
                cubes_.push_back({o, w, c});
            }
            return;
        }
        const std::size_t h = w / 2;
        for (std::size_t a = 0; a < 2; ++a) {
            if (dim_ == 1) {
                split({o[0] + a * h, 0}, h);
                continue;
            }
            for (std::size_t b = 0; b < 2; ++b) split({o[0] + a * h, o[1] + b * h}, h);
        }
    }

    const SampledField& f_;
    int dim_;
    std::size_t m_;
    double tol_;
    std::size_t max_cubes_;
    std::vector<Cube> cubes_;
};

void check_exponents(double p, double p0, double p1, double theta) {
    const bool collapse = p0 == p && p1 == p;
    if (!collapse && !(0.0 < p0 && p0 < p && p < p1 && std::isfinite(p1)))
        throw ParameterError("need 0 < p0 < p < p1 < infinity");
    if (!(theta >= 0.0 && theta <= 1.0)) throw ParameterError("theta must lie in [0,1]");
    if (std::abs(1.0 / p - ((1.0 - theta) / p0 + theta / p1)) > 1e-12)
        throw ParameterError("exponents violate 1/p = (1-theta)/p0 + theta/p1");
}

} // namespace

StepFamily::StepFamily(GridSpec grid, std::vector<Cube> cubes, double p, double p0, double p1, double theta,
                       double mollifier_cells, double tolerance)
    : grid_(std::move(grid)),
      cubes_(std::move(cubes)),
      p_(p),
      p0_(p0),
      p1_(p1),
      theta_(theta),
      ramp_(mollifier_cells * grid_.spacing()),
      tolerance_(tolerance) {
    if (!(mollifier_cells > 0.0)) throw ParameterError("mollifier width must be positive");
}

double StepFamily::g(std::size_t j, const Point& x) const {
    const Cube& q = cubes_.at(j);
    const double h = grid_.spacing();
    double v = 1.0;
    for (int d = 0; d < grid_.dim(); ++d) {
        const double a = grid_.coordinate(Domain::space, q.origin[static_cast<std::size_t>(d)]) - 0.5 * h;
        const double b = a + static_cast<double>(q.width) * h;
        v *= plateau(x[static_cast<std::size_t>(d)], a, b, std::min(ramp_, 0.5 * (b - a)));
    }
    return v;
}

SampledField StepFamily::evaluate(cplx z) const {
    SampledField out(grid_, Domain::space);
    const cplx w = p_ / p0_ * (1.0 - z) + p_ / p1_ * z;
    const std::size_t m = grid_.points();
    for (std::size_t j = 0; j < cubes_.size(); ++j) {
        const Cube& q = cubes_[j];
        const double mod = std::abs(q.c);
        const cplx height = std::exp(w * std::log(mod)) * std::polar(1.0, std::arg(q.c));
        const std::size_t wj = grid_.dim() == 1 ? 1 : q.width;
        for (std::size_t a = q.origin[0]; a < q.origin[0] + q.width; ++a)
            for (std::size_t b = q.origin[1]; b < q.origin[1] + wj; ++b) {
                const std::size_t k = grid_.dim() == 1 ? a : a * m + b;
                out[k] += height * g(j, out.point(k));
            }
    }
    return out;
}

StepFamily step_family_embed(const SampledField& f, double p, double p0, double p1, double theta, double eps,
                             const StepFamilyOptions& opts) {
    require_domain(f, Domain::space, "step_family_embed");
    check_exponents(p, p0, p1, theta);
    if (!(eps > 0.0)) throw ParameterError("epsilon must be positive");
    const GridSpec& grid = f.grid();
    const std::size_t m = grid.points();
    if (!is_power_of_two(m)) throw ParameterError("step_family_embed needs a power-of-two grid");

    // Bounding box of the support in cell indices.
    std::array<std::size_t, 2> lo{m, grid.dim() == 1 ? 0 : m}, hi{0, 0};
    double peak = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double v = std::abs(f[k]);
        if (!std::isfinite(v)) throw ParameterError("f has non-finite samples");
        peak = std::max(peak, v);
        if (v == 0.0) continue;
        const std::size_t i = grid.dim() == 1 ? k : k / m;
        const std::size_t j = grid.dim() == 1 ? 0 : k % m;
        lo[0] = std::min(lo[0], i);
        hi[0] = std::max(hi[0], i);
        if (grid.dim() == 2) {
            lo[1] = std::min(lo[1], j);
            hi[1] = std::max(hi[1], j);
        }
    }
    if (peak == 0.0) return StepFamily(grid, {}, p, p0, p1, theta, opts.mollifier_cells, 0.0);
    std::size_t extent = hi[0] - lo[0] + 1;
    if (grid.dim() == 2) extent = std::max(extent, hi[1] - lo[1] + 1);
    const std::size_t width = next_power_of_two(extent);
    std::array<std::size_t, 2> origin{std::min(lo[0], m - width), grid.dim() == 1 ? 0 : std::min(lo[1], m - width)};

    double tol = opts.initial_tolerance * peak;
    for (int round = 0; round <= opts.max_halvings; ++round, tol *= 0.5) {
        Decomposer dec(f, tol, opts.max_cubes);
        dec.run(origin, width);
        StepFamily family(grid, dec.take(), p, p0, p1, theta, opts.mollifier_cells, tol);
        const SampledField diff = add(family.evaluate(theta), scale(f, -1.0));
        const double err = lq_term(diff, 2.0) + lq_term(diff, p0) + lq_term(diff, p1);
        if (err < eps) return family;
    }
    throw ResolutionError("step approximation error stays above epsilon at this grid resolution", 2 * m);
}

EmbedDiagnostics embed_diagnostics(const StepFamily& family, const SampledField& f, double p, double p0, double p1,
                                   std::span<const double> t_values) {
    if (family.grid() != f.grid()) throw ContractError("embed_diagnostics: family and f live on different grids");
    EmbedDiagnostics d;
    d.eps_prime = -std::numeric_limits<double>::infinity();
    d.cube_count = family.cubes().size();
    const SampledField diff = add(family.evaluate(family.theta()), scale(f, -1.0));
    d.approximation_error = lq_term(diff, 2.0) + lq_term(diff, p0) + lq_term(diff, p1);
    const double base = power_sum(f, p);
    for (double t : t_values) {
        d.t_values.push_back(t);
        d.eps_prime_0.push_back(power_sum(family.evaluate(cplx(0.0, t)), p0) - base);
        d.eps_prime_1.push_back(power_sum(family.evaluate(cplx(1.0, t)), p1) - base);
        d.eps_prime = std::max({d.eps_prime, d.eps_prime_0.back(), d.eps_prime_1.back()});
    }
    return d;
}

} // namespace multlab
