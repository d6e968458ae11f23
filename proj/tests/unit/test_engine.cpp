#include "doctest.h"
#include "multlab/errors.hpp"
#include "multlab/families.hpp"
#include "multlab/fft.hpp"
#include "multlab/multiplier.hpp"
#include "oracles.hpp"

#include <numbers>

using namespace multlab;

namespace {

MultiplierSpec shift_symbol(double a) {
    MultiplierSpec m;
    m.name = "shift";
    m.eval = [a](const Point& xi) { return std::polar(1.0, -2.0 * std::numbers::pi * a * xi[0]); };
    return m;
}

AnalyticFamilyParams small_params(FamilyVariant v) {
    AnalyticFamilyParams p;
    p.r0 = 2.0;
    p.s0 = 0.75;
    p.r1 = 8.0;
    p.s1 = 0.25;
    p.theta = 0.4;
    p.variant = v;
    p.k_range = {-2, 2};
    p.piece.fixed_points = 2048;
    return p;
}

// Points 2 eta, eta a base-grid node, with 0.55 <= 2 eta <= 1.95. For the
// dyadic terms k = -1, 0, 1 that meet them, 2^-k xi is a stored node.
std::vector<Point> node_points(const GridSpec& base) {
    std::vector<Point> out;
    for (std::size_t i = 0; i < base.points(); ++i) {
        const double xi = 2.0 * base.coordinate(Domain::frequency, i);
        if (xi >= 0.55 && xi <= 1.95) out.push_back({xi, 0.0});
    }
    return out;
}

} // namespace

TEST_CASE("identity and translation") {
    const GridSpec g(1, 512, 16.0);
    const SampledField f = oracle::gaussian_noise(g, Domain::space, 3);
    const SampledField same = apply_multiplier(MultiplierSpec::constant(1.0, 1), f);
    CHECK(oracle::max_abs_diff(same.values(), f.values()) < 1e-12 * oracle::max_abs(f.values()));

    // Shift by 7 cells, periodically.
    const std::size_t cells = 7;
    const SampledField moved = apply_multiplier(shift_symbol(cells * g.spacing()), f);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        worst = std::max(worst, std::abs(moved[(i + cells) % f.size()] - f[i]));
    CHECK(worst < 1e-11 * oracle::max_abs(f.values()));

    CHECK_THROWS_AS(apply_multiplier(MultiplierSpec::constant(1.0, 2), f), ContractError);
    CHECK_THROWS_AS(apply_multiplier(MultiplierSpec::constant(1.0, 1), dft_forward(f)), ContractError);
}

TEST_CASE("bump pair against its closed form") {
    for (int N : {4, 8}) {
        const BumpPair pair = gen_bump_pair(N, {1.0, 0.0}, bump_pair_grid(N, 1));
        const SampledField Tf = apply_multiplier(pair.sigma, pair.f);
        CHECK(oracle::max_abs_diff(Tf.values(), pair.closed_form_T.values()) < 1e-8);
    }
}

TEST_CASE("analytic family at z = theta reproduces the symbol") {
    const FramePair frame;
    const MultiplierSpec sigma = rademacher_symbol(8, SignTable(11));
    for (FamilyVariant v : {FamilyVariant::sobolev_sec2, FamilyVariant::besov_sec5}) {
        const AnalyticFamilyParams params = small_params(v);
        const SigmaZ sz = v == FamilyVariant::sobolev_sec2 ? build_sigma_z_sec2(sigma, params, params.theta, frame)
                                                           : build_sigma_z_sec5(sigma, params, params.theta, frame);
        double worst = 0.0;
        for (const Point& xi : node_points(sz.base_grid())) {
            worst = std::max(worst, std::abs(sz(xi) - sigma(xi)));
            CHECK(sz.terms_at(xi) <= 3);
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("analytic family with equal endpoints is constant in z") {
    const FramePair frame;
    const MultiplierSpec sigma = rademacher_symbol(8, SignTable(12));
    AnalyticFamilyParams params = small_params(FamilyVariant::sobolev_sec2);
    params.r1 = params.r0;
    params.s1 = params.s0;
    const SigmaZ a = build_sigma_z_sec2(sigma, params, cplx(0.0, 3.0), frame);
    const SigmaZ b = build_sigma_z_sec2(sigma, params, cplx(1.0, -2.0), frame);
    for (const Point& xi : node_points(a.base_grid())) {
        CHECK(std::abs(a(xi) - b(xi)) < 1e-10);
        CHECK(std::abs(a(xi) - sigma(xi)) < 1e-10);
    }
}

TEST_CASE("analytic family rejects bad input") {
    const FramePair frame;
    AnalyticFamilyParams params = small_params(FamilyVariant::besov_sec5);
    CHECK_THROWS_AS(build_sigma_z_sec5(MultiplierSpec::constant(0.0, 1), params, 0.5, frame), NormalizationError);
    CHECK_THROWS_AS(build_sigma_z_sec2(rademacher_symbol(8, SignTable(1)), params, 0.5, frame), ParameterError);
    params.variant = FamilyVariant::sobolev_sec2;
    params.s1 = 0.1;  // r1 s1 < n
    CHECK_THROWS_AS(build_sigma_z_sec2(rademacher_symbol(8, SignTable(1)), params, 0.5, frame), ParameterError);
}

TEST_CASE("operator lower bound") {
    const GridSpec g(1, 1024, 16.0);
    std::vector<SampledField> probes;
    for (std::uint64_t i = 0; i < 4; ++i) probes.push_back(oracle::gaussian_noise(g, Domain::space, 40 + i));
    probes.insert(probes.begin() + 1, SampledField(g, Domain::space));

    const LowerBound one = operator_lower_bound(MultiplierSpec::constant(1.0, 1), 1.5, probes);
    CHECK(one.value == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(one.skipped.size() == 1);
    CHECK(one.skipped[0] == 1);

    MultiplierSpec low;
    low.name = "lowpass";
    low.eval = [](const Point& xi) { return cplx(std::exp(-xi[0] * xi[0])); };
    MultiplierSpec low3 = low;
    low3.eval = [](const Point& xi) { return cplx(3.0 * std::exp(-xi[0] * xi[0])); };
    const LowerBound a = operator_lower_bound(low, 3.0, probes), b = operator_lower_bound(low3, 3.0, probes);
    CHECK(a.argmax == b.argmax);
    CHECK(b.value == doctest::Approx(3.0 * a.value).epsilon(1e-12));

    const std::vector<SampledField> zeros{SampledField(g, Domain::space)};
    CHECK_THROWS_AS(operator_lower_bound(low, 2.0, zeros), ParameterError);
}
