#include <cstring>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "multlab/errors.hpp"
#include "multlab/fft.hpp"
#include "multlab/field_ops.hpp"
#include "multlab/snapshot.hpp"
#include "oracles.hpp"

using namespace multlab;

TEST_CASE("grid geometry") {
    const GridSpec g(1, 64, 8.0);
    CHECK(g.spacing() == doctest::Approx(0.125));
    CHECK(g.frequency_spacing() == doctest::Approx(0.125));
    CHECK(g.nyquist() == doctest::Approx(4.0));
    CHECK(g.coordinate(Domain::space, 32) == 0.0);
    CHECK(g.coordinate(Domain::space, 0) == doctest::Approx(-4.0));
    CHECK(g.coordinate(Domain::frequency, 0) == doctest::Approx(-4.0));
    const GridSpec g2(2, 16, 2.0);
    CHECK(g2.size() == 256);
    const Point p = g2.point(Domain::space, 3 * 16 + 5);
    CHECK(p[0] == doctest::Approx((3.0 - 8.0) / 8.0));
    CHECK(p[1] == doctest::Approx((5.0 - 8.0) / 8.0));
    CHECK_THROWS_AS(GridSpec(1, 100, 1.0), ParameterError);
    CHECK_THROWS_AS(GridSpec(1, 4, 1.0), ParameterError);
    CHECK_THROWS_AS(GridSpec(3, 64, 1.0), ParameterError);
    CHECK_THROWS_AS(GridSpec(1, 64, -1.0), ParameterError);
    CHECK(GridSpec::from_json(g2.to_json()) == g2);
}

TEST_CASE("dft matches direct summation") {
    for (int dim : {1, 2}) {
        const GridSpec g(dim, dim == 1 ? 64 : 16, 5.0);
        const SampledField f = oracle::gaussian_noise(g, Domain::space, 11 + dim);
        const SampledField F = dft_forward(f);
        const auto direct = oracle::direct_dft(f);
        CHECK(oracle::max_abs_diff(F.values(), direct) <= 1e-12 * oracle::max_abs(direct));
        CHECK(F.domain() == Domain::frequency);
    }
}

TEST_CASE("point mass transforms to one") {
    const GridSpec g(2, 32, 4.0);
    SampledField f(g, Domain::space);
    f[16 * 32 + 16] = 1.0 / g.cell_measure(Domain::space);
    const SampledField F = dft_forward(f);
    for (const cplx& v : F.values()) CHECK(std::abs(v - 1.0) < 1e-13);
}

TEST_CASE("grid exponential concentrates on one bin") {
    const GridSpec g(1, 128, 16.0);
    const int k0 = 5;
    const SampledField f = SampledField::from_function(
        g, Domain::space, [&](const Point& x) { return std::polar(1.0, 2.0 * std::numbers::pi * x[0] * k0 / g.length()); });
    const SampledField F = dft_forward(f);
    const std::size_t bin = g.points() / 2 + k0;
    CHECK(std::abs(F[bin] - 1.0 / g.cell_measure(Domain::frequency)) < 1e-10);
    for (std::size_t i = 0; i < F.size(); ++i)
        if (i != bin) CHECK(std::abs(F[i]) < 1e-10);
}

TEST_CASE("gaussian transform") {
    const GridSpec g(1, 512, 32.0);
    const SampledField f =
        SampledField::from_function(g, Domain::space, [](const Point& x) { return cplx(std::exp(-std::numbers::pi * x[0] * x[0])); });
    const SampledField F = dft_forward(f);
    double err = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) {
        const double xi = F.point(i)[0];
        err = std::max(err, std::abs(F[i] - std::exp(-std::numbers::pi * xi * xi)));
    }
    CHECK(err < 1e-8);

    const GridSpec g2(2, 128, 16.0);
    const SampledField f2 = SampledField::from_function(
        g2, Domain::space, [](const Point& x) { return cplx(std::exp(-std::numbers::pi * (x[0] * x[0] + x[1] * x[1]))); });
    const SampledField F2 = dft_forward(f2);
    double err2 = 0.0;
    for (std::size_t i = 0; i < F2.size(); ++i) {
        const Point xi = F2.point(i);
        err2 = std::max(err2, std::abs(F2[i] - std::exp(-std::numbers::pi * (xi[0] * xi[0] + xi[1] * xi[1]))));
    }
    CHECK(err2 < 1e-8);
}

TEST_CASE("round trip, parseval and linearity") {
    const GridSpec g(2, 64, 7.0);
    const SampledField f = oracle::gaussian_noise(g, Domain::space, 3);
    const SampledField h = oracle::gaussian_noise(g, Domain::space, 4);
    const SampledField back = dft_inverse(dft_forward(f));
    CHECK(oracle::max_abs_diff(back.values(), f.values()) < 1e-12 * oracle::max_abs(f.values()));
    CHECK(lp_value(dft_forward(f), 2.0) == doctest::Approx(lp_value(f, 2.0)).epsilon(1e-10));
    const cplx a(1.5, -0.5), b(-2.0, 0.25);
    const SampledField lhs = dft_forward(add(scale(f, a), scale(h, b)));
    const SampledField rhs = add(scale(dft_forward(f), a), scale(dft_forward(h), b));
    CHECK(oracle::max_abs_diff(lhs.values(), rhs.values()) < 1e-12 * oracle::max_abs(rhs.values()));
}

TEST_CASE("domain tags are enforced") {
    const GridSpec g(1, 16, 1.0);
    const SampledField F(g, Domain::frequency);
    CHECK_THROWS_AS(dft_forward(F), ContractError);
    CHECK_THROWS_AS(dft_inverse(SampledField(g, Domain::space)), ContractError);
    CHECK_THROWS_AS(add(SampledField(g, Domain::space), SampledField(GridSpec(1, 32, 1.0), Domain::space)),
                    ContractError);
    CHECK_THROWS_AS(add(SampledField(g, Domain::space), F), ContractError);
}

TEST_CASE("lp norms") {
    const GridSpec g(1, 256, 4.0);
    const SampledField one = SampledField::from_function(g, Domain::space, [](const Point&) { return cplx(1.0); });
    CHECK(lp_value(one, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
    const SampledField ind =
        SampledField::from_function(g, Domain::space, [](const Point& x) { return cplx(x[0] >= 0.0 && x[0] < 1.0 ? 1.0 : 0.0); });
    CHECK(lp_value(ind, 3.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lp_value(scale(ind, 2.5), infinity) == doctest::Approx(2.5));
    CHECK_THROWS_AS(lp_norm(one, 0.0), ParameterError);
    CHECK_THROWS_AS(lp_norm(one, -1.0), ParameterError);
    const NormValue v = lp_norm(one, 2.0);
    CHECK(v.kind == NormKind::Lp);
    CHECK(v.to_json().at("value").get<double>() == doctest::Approx(2.0));

    // Monotone under pointwise domination.
    const SampledField f = oracle::gaussian_noise(g, Domain::space, 9);
    SampledField smaller = f;
    for (std::size_t i = 0; i < f.size(); ++i) smaller[i] *= 0.5 + 0.5 * std::sin(static_cast<double>(i));
    for (double p : {0.5, 1.0, 2.0, 3.5, infinity}) CHECK(lp_value(smaller, p) <= lp_value(f, p));
}

TEST_CASE("pointwise operations") {
    const GridSpec g(1, 64, 4.0);
    const SampledField a = oracle::gaussian_noise(g, Domain::space, 21);
    const SampledField recombined = multiply(abs_power(a, 1.0), phase(a));
    CHECK(oracle::max_abs_diff(recombined.values(), a.values()) < 1e-13 * oracle::max_abs(a.values()));

    const SampledField three =
        SampledField::from_function(g, Domain::space, [](const Point& x) { return std::polar(3.0, x[0]); });
    const SampledField squared = abs_power(three, 2.0);
    for (const cplx& v : squared.values()) CHECK(std::abs(v - 9.0) < 1e-12);

    // Modulus of a complex power depends on the real part of the exponent only:
    // |phi|^{r((1-it)/r0 + it/r1)} has modulus |phi|^{r/r0}.
    const double r = 3.0, r0 = 2.0, r1 = 8.0;
    for (double t : {0.0, 1.0, -2.5, 7.0}) {
        const cplx w = r * ((1.0 - cplx(0, t)) / r0 + cplx(0, t) / r1);
        const SampledField pw = polar_power(a, w);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double expect = std::exp(r / r0 * std::log(std::abs(a[i])));
            CHECK(std::abs(std::abs(pw[i]) - expect) <= 1e-12 * std::max(1.0, expect));
        }
    }
    SampledField z(g, Domain::space);
    CHECK(phase(z)[3] == cplx(0.0));
    CHECK(abs_power(z, 0.5)[3] == cplx(0.0));
    CHECK(polar_power(z, cplx(0.5, 2.0))[3] == cplx(0.0));
    CHECK(pointwise(PointwiseOp::conjugate, a)[5] == std::conj(a[5]));
    CHECK_THROWS_AS(pointwise(PointwiseOp::add, a), ParameterError);
}

TEST_CASE("snapshot round trip") {
    const auto dir = std::filesystem::temp_directory_path() / "multlab_snapshot_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "f.mlf";
    const GridSpec g(2, 16, 3.5);
    const SampledField f = oracle::gaussian_noise(g, Domain::frequency, 5);
    write_snapshot(path, f);
    CHECK(std::filesystem::file_size(path) == 4 + 4 + 4 + 8 + 4 + 256 * 8);
    char magic[4];
    std::ifstream(path, std::ios::binary).read(magic, 4);
    CHECK(std::memcmp(magic, "MLF1", 4) == 0);
    const SampledField back = read_snapshot(path);
    CHECK(back.grid() == g);
    CHECK(back.domain() == Domain::frequency);
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(std::abs(back[i].real() - f[i].real()) <= 1e-6 * std::abs(f[i].real()) + 1e-30);
        CHECK(std::abs(back[i].imag() - f[i].imag()) <= 1e-6 * std::abs(f[i].imag()) + 1e-30);
    }
    std::ofstream(dir / "bad.mlf", std::ios::binary) << "XXXX";
    CHECK_THROWS_AS(read_snapshot(dir / "bad.mlf"), Error);
    std::filesystem::remove_all(dir);
}
