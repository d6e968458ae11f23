#include "doctest.h"
#include "multlab/errors.hpp"
#include "multlab/families.hpp"
#include "multlab/fft.hpp"
#include "multlab/multiplier.hpp"
#include "oracles.hpp"

#include <numbers>

using namespace multlab;

namespace {

constexpr double pi = std::numbers::pi;

double bump(double t) {
    // 1 - S(t) written out for the oracle, S(t) = e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)}).
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
    return b / (a + b);
}

// Inverse transform of the profile x -> bump(|x| / 0.01) at y.
double phi(double y) {
    return oracle::simpson([y](double x) { return bump(std::abs(x) / 0.01) * std::cos(2.0 * pi * y * x); }, -0.01,
                           0.01, 4000);
}

} // namespace

TEST_CASE("miyachi symbol") {
    const MultiplierSpec m = gen_miyachi(0.5, 0.25);
    for (double r : {0.3, 1.0}) CHECK(m({r, 0.0}) == cplx(0.0));
    for (double r : {2.0, 3.7, 150.0, 1e6}) {
        CHECK(std::abs(m({r, 0.0})) == doctest::Approx(std::pow(r, -0.25)).epsilon(1e-14));
        CHECK(std::arg(m({-r, 0.0}) * std::polar(1.0, -std::sqrt(r))) == doctest::Approx(0.0).epsilon(1e-9));
    }
    const MultiplierSpec m2 = gen_miyachi(0.5, 0.25, 2);
    CHECK(m2({3.0, 4.0}) == m({5.0, 0.0}));
    CHECK_THROWS_AS(gen_miyachi(1.0, 0.25), ParameterError);
    CHECK_THROWS_AS(gen_miyachi(0.5, 0.0), ParameterError);
}

TEST_CASE("sign table") {
    const SignTable a(17), b(17), c(18);
    long sum = 0, diff = 0;
    for (long j = -5000; j < 5000; ++j) {
        CHECK((a(j) == 1 || a(j) == -1));
        CHECK(a(j) == b(j));
        sum += a(j);
        diff += a(j) != c(j);
    }
    CHECK(std::abs(sum) < 500);
    CHECK(diff > 4000);
    const SignTable plus = SignTable::all_plus();
    for (long j = -50; j < 50; ++j) CHECK(plus(j) == 1);
}

TEST_CASE("bump pair") {
    const int N = 8;
    const GridSpec g = bump_pair_grid(N, 1);
    const BumpPair pair = gen_bump_pair(N, {-1.0, 0.0}, g, false);
    const SampledField fh = dft_forward(pair.f);
    double worst = 0.0;
    for (std::size_t k = 0; k < fh.size(); ++k) {
        const double xi = g.coordinate(Domain::frequency, k);
        worst = std::max(worst, std::abs(fh[k] - bump(std::abs(N * (xi + 1.0)) / 0.1)));
    }
    CHECK(worst < 1e-12);
    CHECK(pair.sigma({-1.0 + 0.2 / N, 0.0}) == cplx(1.0));
    CHECK(pair.sigma({-1.0 + 0.5 / N, 0.0}) == cplx(0.0));
    // sigma is 1 on the support of f_hat.
    const SampledField Tf = apply_multiplier(pair.sigma, pair.f);
    CHECK(oracle::max_abs_diff(Tf.values(), pair.f.values()) < 1e-12 * oracle::max_abs(pair.f.values()));

    CHECK_THROWS_AS(gen_bump_pair(2, {1.0, 0.0}, g), ParameterError);
    CHECK_THROWS_AS(gen_bump_pair(N, {0.0, 0.0}, g), ParameterError);
    CHECK_THROWS_AS(gen_bump_pair(N, {1.0, 0.0}, GridSpec(1, 1024, 64.0)), ParameterError);
}

TEST_CASE("rademacher pair in physical space") {
    // f_N(x) = N^-1 phi(x/N) D_N(x/N), periodised with the grid length. D_N has
    // period 1 and L/N is an integer, so only phi needs the periodic sum.
    const int N = 8;
    const GridSpec g = rademacher_grid(N, 1);
    const RademacherPair pair = gen_rademacher(N, SignTable(3), g);
    double worst = 0.0, top = 0.0;
    for (std::size_t i = 0; i < g.points(); i += 1021) {
        const double x = g.coordinate(Domain::space, i);
        if (std::abs(x) > 0.25 * g.length()) continue;
        const double y = x / N;
        double dn = 1.0;
        for (int j = 1; j <= N; ++j) dn += 2.0 * std::cos(2.0 * pi * j * y);
        const double period = g.length() / N;
        double phi_per = 0.0;
        for (int m = -40; m <= 40; ++m) phi_per += phi(y + m * period);
        const double expect = phi_per * dn / N;
        worst = std::max(worst, std::abs(pair.f[i] - expect));
        top = std::max(top, std::abs(expect));
    }
    CHECK(worst < 1e-8 * top);
}

TEST_CASE("rademacher symbol with all plus signs keeps the middle bumps") {
    const int N = 16;
    const GridSpec g = rademacher_grid(N, 1);
    const RademacherPair pair = gen_rademacher(N, SignTable::all_plus(), g);
    const SampledField spectrum = dft_forward(apply_multiplier(pair.sigma, pair.f));
    double worst = 0.0;
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        const double u = N * g.coordinate(Domain::frequency, k);
        const double j = std::nearbyint(u);
        const bool kept = std::abs(j) >= N / 2 && std::abs(j) <= N;
        const double expect = kept ? bump(std::abs(u - j) / 0.01) : 0.0;
        worst = std::max(worst, std::abs(spectrum[k] - expect));
    }
    CHECK(worst < 1e-12);

    const MultiplierSpec s = rademacher_symbol(N, SignTable(5));
    CHECK(s({0.25 / N, 0.0}) == cplx(0.0));
    CHECK(s({(2.0 * N + 1.0) / N, 0.0}) == cplx(0.0));
    CHECK(std::abs(s({(N + 0.05) / static_cast<double>(N), 0.0})) == 1.0);
}

TEST_CASE("dirichlet kernel") {
    for (int N : {0, 3, 10, 40}) {
        const GridSpec g = dirichlet_grid(N);
        const SampledField d = dirichlet_kernel(N, g);
        CHECK(std::abs(d[g.points() / 2] - cplx(2.0 * N + 1.0)) < 1e-12);
        for (std::size_t i = 1; i < g.points(); i += 7) {
            const double x = g.coordinate(Domain::space, i);
            if (std::abs(std::sin(pi * x)) < 1e-3) continue;
            const double closed = std::sin((2.0 * N + 1.0) * pi * x) / std::sin(pi * x);
            CHECK(std::abs(d[i].real() - closed) < 1e-10 * (2.0 * N + 1.0));
        }
        // Orthogonality of the characters on the grid.
        CHECK(lp_value(d, 2.0) == doctest::Approx(std::sqrt(2.0 * N + 1.0)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(dirichlet_kernel(-1, dirichlet_grid(4)), ParameterError);
}

TEST_CASE("khintchine check") {
    std::vector<cplx> A(200);
    for (std::size_t j = 0; j < A.size(); ++j) A[j] = cplx(std::cos(0.3 * j), 1.0 / (1.0 + j));
    // For many comparable terms the ratio tends to the Gaussian moment (E|g|^p)^{1/p}
    // of a standard complex-valued normal with the same covariance, which lies
    // between 1/sqrt(2) and 1 for p = 1 and between 1 and sqrt(2) for p = 4.
    const KhintchineResult r1 = khintchine_check(A, 1.0, 256, 9);
    CHECK(r1.replicate_ratios.size() == 4);
    CHECK(r1.ratio_low > 1.0 / std::sqrt(2.0) - 0.1);
    CHECK(r1.ratio_high < 1.05);
    const KhintchineResult r2 = khintchine_check(A, 2.0, 256, 9);
    CHECK(std::abs(r2.ratio_low - 1.0) < 0.15);
    CHECK(std::abs(r2.ratio_high - 1.0) < 0.15);
    const KhintchineResult r4 = khintchine_check(A, 4.0, 256, 9);
    CHECK(r4.ratio_low > 0.95);
    CHECK(r4.ratio_high < std::sqrt(2.0) + 0.1);
    CHECK_THROWS_AS(khintchine_check(A, 2.0, 16, 1), ParameterError);
    CHECK_THROWS_AS(khintchine_check(std::vector<cplx>(4), 2.0, 64, 1), ParameterError);
}

TEST_CASE("family spec json") {
    const std::vector<FamilySpec> specs{
        {MiyachiWainger{0.3, 0.1}, GridSpec(1, 512, 8.0)},
        {BumpPairSpec{16, {0.6, 0.8}}, GridSpec(2, 256, 4.0)},
        {RademacherSpec{32, 99, 2}, GridSpec(1, 1024, 2.0)},
        {DirichletSpec{12}, GridSpec(1, 256, 1.0)},
    };
    for (const FamilySpec& s : specs) {
        const FamilySpec back = FamilySpec::from_json(nlohmann::json::parse(s.to_json().dump()));
        CHECK(back.to_json() == s.to_json());
        CHECK(back.grid == s.grid);
    }
    CHECK(specs[2].family_name() == "rademacher");
    CHECK_THROWS_AS(FamilySpec::from_json({{"family", "nope"}}), ConfigError);
    CHECK_THROWS_AS(FamilySpec::from_json({{"family", "bump_pair"}, {"params", {{"direction", {1, 2, 3}}}}}),
                    ConfigError);
}
