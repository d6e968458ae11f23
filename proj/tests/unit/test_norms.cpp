#include "doctest.h"
#include "multlab/errors.hpp"
#include "multlab/families.hpp"
#include "multlab/fft.hpp"
#include "multlab/multiplier.hpp"
#include "multlab/norms.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <numbers>

using namespace multlab;

TEST_CASE("sobolev norm") {
    const GridSpec g(1, 1024, 16.0);
    const SampledField h = SampledField::from_function(
        g, Domain::space, [](const Point& x) { return cplx(std::exp(-x[0] * x[0]) * std::cos(3.0 * x[0]), 0.2 * x[0] * std::exp(-x[0] * x[0])); });
    CHECK(sobolev_norm(h, 3.0, 0.0).value == doctest::Approx(lp_value(h, 3.0)).epsilon(1e-10));

    // r = 2 on the frequency side: (sum_xi (1 + 4 pi^2 xi^2)^s |h_hat|^2 / L)^{1/2}, with h_hat by direct summation.
    const GridSpec small(1, 128, 12.0);
    const SampledField hs = SampledField::from_function(
        small, Domain::space, [](const Point& x) { return cplx(std::exp(-x[0] * x[0]), std::sin(x[0]) * std::exp(-x[0] * x[0])); });
    const auto hat = oracle::direct_dft(hs);
    for (double s : {0.5, 1.0, 2.0}) {
        double acc = 0.0;
        for (std::size_t k = 0; k < hat.size(); ++k) {
            const double xi = small.coordinate(Domain::frequency, k);
            acc += std::pow(1.0 + 4.0 * std::numbers::pi * std::numbers::pi * xi * xi, s) * std::norm(hat[k]);
        }
        CHECK(sobolev_norm(hs, 2.0, s).value == doctest::Approx(std::sqrt(acc / small.length())).epsilon(1e-8));
    }

    // Monotone in s at r = 2.
    double prev = 0.0;
    for (double s : {0.0, 0.3, 0.9, 1.7}) {
        const double v = sobolev_norm(h, 2.0, s).value;
        CHECK(v >= prev);
        prev = v;
    }
    CHECK_THROWS_AS(sobolev_norm(h, 0.5, 1.0), ParameterError);
}

TEST_CASE("sobolev norm of the bump piece scales like N^{s - n/r}") {
    const FramePair frame;
    std::vector<double> Ns, vals;
    for (int N : {8, 16, 32, 64}) {
        const BumpPair pair = gen_bump_pair(N, {1.0, 0.0}, bump_pair_grid(N, 1), false);
        Ns.push_back(N);
        vals.push_back(sobolev_norm(dyadic_piece(pair.sigma, 0, frame), 2.0, 1.0).value);
    }
    CHECK(std::abs(oracle::loglog_slope(Ns, vals) - 0.5) < 0.05);
}

TEST_CASE("hormander norm of a constant symbol") {
    const FramePair frame;
    const SupNormResult r = hormander_norm(MultiplierSpec::constant(1.0, 1), 4.0, 0.5, frame, {-3, 3});
    const double ref = sobolev_norm(dyadic_piece(MultiplierSpec::constant(1.0, 1), 0, frame), 4.0, 0.5).value;
    CHECK(r.piece_values.size() == 7);
    for (double v : r.piece_values) CHECK(v == doctest::Approx(ref).epsilon(1e-12));
    CHECK(r.norm.value == doctest::Approx(ref).epsilon(1e-12));
    CHECK(r.norm.kind == NormKind::HormanderSup);
}

TEST_CASE("hormander norm of the Miyachi-Wainger symbol stabilises") {
    const FramePair frame;
    const MultiplierSpec m = gen_miyachi(0.5, 0.25);
    const SupNormResult r = hormander_norm(m, 4.0, 0.5, frame, {2, 12});
    // With a s = b the piece norms settle to a constant as k grows.
    const std::size_t n = r.piece_values.size();
    REQUIRE(n == 11);
    for (std::size_t i = n - 4; i < n; ++i)
        CHECK(std::abs(r.piece_values[i] - r.piece_values[n - 1]) < 0.05 * r.piece_values[n - 1]);
    CHECK(r.norm.argmax_k.has_value());
}

TEST_CASE("hormander norm of the Rademacher symbol grows like N^s") {
    const FramePair frame;
    std::vector<double> Ns, vals;
    for (int N : {16, 32, 64, 128}) {
        double acc = 0.0;
        for (std::uint64_t t = 0; t < 4; ++t)
            acc += hormander_norm(rademacher_symbol(N, SignTable(100 + t)), 4.0, 0.5, frame, {-2, 2}).norm.value;
        Ns.push_back(N);
        vals.push_back(acc / 4.0);
    }
    CHECK(std::abs(oracle::loglog_slope(Ns, vals) - 0.5) < 0.1);
}

TEST_CASE("besov norm") {
    const FramePair frame;
    const GridSpec g(1, 2048, 32.0);
    // Spectrum inside 2 <= |xi| <= 4, so only blocks 1 and 2 see it.
    const SampledField noise = oracle::gaussian_noise(g, Domain::space, 5);
    const SampledField h = dual_multiply(noise, [](const Point& xi) {
        const double r = radius(xi);
        return cplx(r >= 2.0 && r <= 4.0 ? 1.0 : 0.0);
    });
    const auto blocks = besov_blocks(h, 8, frame);
    std::vector<double> norms;
    for (const SampledField& b : blocks) norms.push_back(lp_value(b, 2.0));
    const double top = *std::max_element(norms.begin(), norms.end());
    for (int j : {0, 3, 4, 5, 6, 7, 8}) CHECK(norms[static_cast<std::size_t>(j)] < 1e-12 * top);
    // Direct block-by-block value with p = 2, q = 1, s = 0.5.
    double direct = norms[0];
    for (int j = 1; j <= 8; ++j) direct += std::exp2(0.5 * j) * norms[static_cast<std::size_t>(j)];
    CHECK(besov_norm(h, 2.0, 1.0, 0.5, frame, 8).value == doctest::Approx(direct).epsilon(1e-12));

    // s = 0, q = 1, p = infinity against a two-term direct bound.
    const SampledField bump = SampledField::from_function(g, Domain::space, [](const Point& x) {
        return std::polar(std::exp(-x[0] * x[0]), 2.0 * std::numbers::pi * 3.0 * x[0]);
    });
    const NormValue b = besov_norm(bump, infinity, 1.0, 0.0, frame);
    const auto bb = besov_blocks(bump, besov_truncation(bump), frame);
    int active = 0;
    double max_block = 0.0;
    for (const SampledField& x : bb) {
        const double v = lp_value(x, infinity);
        if (v > 1e-12) ++active;
        max_block = std::max(max_block, v);
    }
    const double two_term = lp_value(bump, infinity) + active * max_block;
    CHECK(b.value <= 3.0 * two_term);
    CHECK(b.value >= two_term / 3.0);
    CHECK(b.tail.has_value());
}

TEST_CASE("hormander-besov quantity of a constant symbol is k independent") {
    const FramePair frame;
    const SupNormResult r = hormander_besov_norm(MultiplierSpec::constant(1.0, 1), 2.0, 1.0, 0.5, frame, {-4, 4});
    for (double v : r.piece_values) CHECK(v == doctest::Approx(r.piece_values.front()).epsilon(1e-12));
}

TEST_CASE("lorentz quasinorm") {
    const GridSpec g(1, 1024, 8.0);
    const SampledField ind =
        SampledField::from_function(g, Domain::space, [](const Point& x) { return cplx(x[0] >= 0.0 && x[0] < 1.0 ? 1.0 : 0.0); });
    for (double p : {0.5, 1.5, 2.0, 4.0})
        CHECK(lorentz_p2_quasinorm(ind, p).value == doctest::Approx(std::sqrt(p / 2.0)).epsilon(1e-12));

    const SampledField f = oracle::gaussian_noise(g, Domain::space, 8);
    CHECK(lorentz_p2_quasinorm(f, 2.0).value == doctest::Approx(lp_value(f, 2.0)).epsilon(1e-10));

    // Same samples on a grid stretched by lambda: the measure of every level set scales by lambda^n.
    const double lambda = 2.5;
    const SampledField stretched(GridSpec(1, 1024, 8.0 * lambda), Domain::space, f.storage());
    for (double p : {1.2, 3.0})
        CHECK(lorentz_p2_quasinorm(stretched, p).value ==
              doctest::Approx(std::pow(lambda, 1.0 / p) * lorentz_p2_quasinorm(f, p).value).epsilon(1e-8));

    SampledField shuffled = f;
    std::reverse(shuffled.storage().begin(), shuffled.storage().end());
    CHECK(lorentz_p2_quasinorm(shuffled, 1.5).value == doctest::Approx(lorentz_p2_quasinorm(f, 1.5).value).epsilon(1e-14));

    const RearrangementProfile prof = RearrangementProfile::of(ind);
    CHECK(prof.breakpoints.back() == doctest::Approx(1.0));
    CHECK_THROWS_AS(lorentz_p2_quasinorm(f, 0.0), ParameterError);
}

TEST_CASE("trivial L2 estimate") {
    const GridSpec g(1, 512, 10.0);
    for (std::uint64_t i = 0; i < 10; ++i) {
        const SampledField sigma = oracle::gaussian_noise(g, Domain::frequency, 1000 + i);
        const SampledField f = oracle::gaussian_noise(g, Domain::space, 2000 + i);
        const double lhs = lp_value(apply_multiplier(MultiplierSpec::from_field(sigma), f), 2.0);
        CHECK(lhs <= lp_value(sigma, infinity) * lp_value(f, 2.0) * (1.0 + 1e-10));
    }
}
