#pragma once

#include <cstdint>
#include <span>
#include <variant>

#include <nlohmann/json.hpp>

#include "multlab/grid.hpp"
#include "multlab/symbol.hpp"

namespace multlab {

// Deterministic signs a_j in {-1, +1} for every integer j, computed from
// (seed, j) by a counter-based hash.
class SignTable {
public:
    explicit SignTable(std::uint64_t seed = 0) : seed_(seed) {}
    int operator()(long j) const;
    std::uint64_t seed() const { return seed_; }
    // Table whose signs are all +1.
    static SignTable all_plus();
    bool is_all_plus() const { return all_plus_; }

private:
    std::uint64_t seed_;
    bool all_plus_ = false;
};

namespace profiles {
// Cutoffs used by the families, all built from the frame smoothstep.
double zeta_hat_1d(double x);         // support [-1/10, 1/10], peak 1 at 0
double zeta_hat_axis_2d(double x);    // support [-0.07, 0.07]; products lie in B(0, 1/10)
double bump_phi_hat_1d(double x);     // 1 on [-1/5, 1/5], support [-1/2, 1/2]
double bump_phi_hat_axis_2d(double x); // 1 on [-1/5, 1/5], support [-0.35, 0.35]
double rademacher_phi_hat(double x);  // support [-1/100, 1/100]
double rademacher_psi_cut(double x);  // 1 on [-1/10, 1/10], support [-1/2, 1/2]
double miyachi_psi(double r);         // 0 for r <= 1, 1 for r >= 2

// Inverse Fourier transform of a real even profile supported in [-w, w],
// by trapezoid quadrature on n nodes.
double even_profile_transform(double (*profile)(double), double w, double y, int nodes = 4096);
} // namespace profiles

struct MiyachiWainger {
    double a = 0.5;
    double b = 0.25;
};
struct BumpPairSpec {
    int N = 8;
    Point direction{1.0, 0.0};
};
struct RademacherSpec {
    int N = 16;
    std::uint64_t seed = 0;
    int dim = 1;
};
struct DirichletSpec {
    int N = 8;
};

struct FamilySpec {
    std::variant<MiyachiWainger, BumpPairSpec, RademacherSpec, DirichletSpec> variant;
    GridSpec grid;

    std::string family_name() const;
    nlohmann::json params_json() const;
    nlohmann::json to_json() const;
    static FamilySpec from_json(const nlohmann::json& j);
};

// m_{a,b}(xi) = psi(xi) |xi|^{-b} exp(i |xi|^a).
MultiplierSpec gen_miyachi(double a, double b, int dim = 1);

struct BumpPair {
    SampledField f;
    MultiplierSpec sigma;
    SampledField closed_form_T;
};

// f_hat(xi) = zeta_hat(N(xi - a)), sigma(xi) = phi_hat(N(xi - a)). The
// closed form of T f is left empty unless requested; it costs a quadrature
// per grid coordinate.
BumpPair gen_bump_pair(int N, const Point& direction, const GridSpec& grid, bool with_closed_form = true);
// Grid on which the periodic sampling error of the bump pair is below 1e-10
// (n = 1) or 1e-7 (n = 2).
GridSpec bump_pair_grid(int N, int dim);

struct RademacherPair {
    SampledField f;
    MultiplierSpec sigma;
};

// f_hat_N = sum_{|j| <= N} phi_hat(N xi - j), sigma = sum_{j in J_N} a_j psi_cut(N xi - j)
// with J_N = {N/2 <= |j| <= 2N}. In two dimensions both are tensor products,
// signs a_{j1} b_{j2} come from two tables, and J_N uses the Euclidean length.
RademacherPair gen_rademacher(int N, const SignTable& signs, const GridSpec& grid, int dim = 1,
                              const SignTable& second = SignTable(0x5eedULL));
MultiplierSpec rademacher_symbol(int N, const SignTable& signs, int dim = 1,
                                 const SignTable& second = SignTable(0x5eedULL));
// Frequency samples of f_hat_N.
SampledField rademacher_f_hat(int N, const GridSpec& grid, int dim = 1);
GridSpec rademacher_grid(int N, int dim);

// D_N(x) = sum_{|j| <= N} exp(2 pi i j x).
SampledField dirichlet_kernel(int N, const GridSpec& grid);
GridSpec dirichlet_grid(int N);

struct KhintchineResult {
    double ratio_low = 0.0;
    double ratio_high = 0.0;
    std::vector<double> replicate_ratios;
};

// Four independent estimates of (E|sum a_j A_j|^p)^{1/p} / (sum |A_j|^2)^{1/2},
// each averaging `trials` sign draws; low and high are their min and max.
KhintchineResult khintchine_check(std::span<const cplx> A, double p, int trials, std::uint64_t seed);

} // namespace multlab
