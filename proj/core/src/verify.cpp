#include "multlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "multlab/errors.hpp"
#include "multlab/families.hpp"
#include "multlab/fft.hpp"
#include "multlab/frames.hpp"
#include "multlab/interpolation.hpp"
#include "multlab/multiplier.hpp"
#include "multlab/norms.hpp"
#include "multlab/random.hpp"
#include "multlab/smoothstep.hpp"

namespace multlab {

nlohmann::json CheckResult::to_json() const {
    return {{"suite", suite}, {"name", name},     {"measured", measured},
            {"threshold", threshold}, {"pass", pass}, {"detail", detail}};
}

bool VerifyReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

nlohmann::json VerifyReport::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const CheckResult& c : checks) j.push_back(c.to_json());
    return {{"checks", j}, {"pass", pass()}};
}

std::string VerifyReport::text() const {
    std::ostringstream out;
    for (const CheckResult& c : checks) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6g (limit %.3g)", c.measured, c.threshold);
        out << (c.pass ? "PASS " : "FAIL ") << c.suite << '/' << c.name << ": " << buf;
        if (!c.detail.empty()) out << "  " << c.detail;
        out << '\n';
    }
    return out.str();
}

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names{"frames", "norms", "engine", "families", "interpolation"};
    return names;
}

namespace {

class Suite {
public:
    Suite(std::string name, VerifyReport& report) : name_(std::move(name)), report_(report) {}

    // Passes when measured <= threshold.
    void at_most(const std::string& check, double measured, double threshold, std::string detail = {}) {
        report_.checks.push_back({name_, check, measured, threshold, measured <= threshold, std::move(detail)});
    }
    void at_least(const std::string& check, double measured, double threshold, std::string detail = {}) {
        report_.checks.push_back({name_, check, measured, threshold, measured >= threshold, std::move(detail)});
    }
    void holds(const std::string& check, bool ok, std::string detail = {}) {
        report_.checks.push_back({name_, check, ok ? 1.0 : 0.0, 1.0, ok, std::move(detail)});
    }
    // Runs body; an exception becomes a failed check.
    template <class F>
    void guarded(const std::string& check, F&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            report_.checks.push_back({name_, check, 0.0, 0.0, false, std::string("threw: ") + e.what()});
        }
    }

private:
    std::string name_;
    VerifyReport& report_;
};

SampledField random_field(const GridSpec& grid, Domain d, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    SampledField f(grid, d);
    for (cplx& v : f.values()) v = cplx(n(rng), n(rng));
    return f;
}

// Smooth random field: Gaussian envelope times a random trigonometric sum.
SampledField smooth_random_field(const GridSpec& grid, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> c(6);
    for (cplx& v : c) v = cplx(u(rng), u(rng));
    return SampledField::from_function(grid, Domain::space, [&](const Point& x) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * std::polar(1.0, 2.0 * M_PI * static_cast<double>(k) * x[0] / 3.0);
        return s * std::exp(-x[0] * x[0] - x[1] * x[1]);
    });
}

double rel_diff(const SampledField& a, const SampledField& b) {
    return lp_value(add(a, scale(b, -1.0)), 2.0) / std::max(lp_value(b, 2.0), 1e-300);
}

void frames_suite(VerifyReport& report, std::uint64_t seed) {
    Suite s("frames", report);
    const FramePair frame;
    s.guarded("partition_of_unity", [&] {
        double worst = 0.0;
        const int n = 10000;
        for (int i = 0; i < n; ++i) {
            const double xi = std::exp2(-10.0 + 20.0 * i / (n - 1));
            double sum = 0.0;
            for (int j = -14; j <= 14; ++j) sum += frame.psi_hat(std::ldexp(xi, -j));
            worst = std::max(worst, std::abs(sum - 1.0));
        }
        s.at_most("partition_of_unity", worst, 1e-12, "10^4 log-spaced points in [2^-10, 2^10]");
    });
    s.guarded("reproducing", [&] {
        double worst = 0.0;
        for (int i = 0; i <= 10000; ++i) {
            const double r = 0.3 + 2.5 * i / 10000.0;
            worst = std::max(worst, std::abs(frame.psi_tilde_hat(r) * frame.psi_hat(r) - frame.psi_hat(r)));
        }
        s.at_most("reproducing", worst, 1e-15, "psi_tilde_hat psi_hat - psi_hat on [0.3, 2.8]");
    });
    s.guarded("block_composition", [&] {
        std::mt19937_64 rng(derive_seed(seed, 1));
        const GridSpec g(1, 4096, 64.0);
        const SampledField h = random_field(g, Domain::space, rng);
        double worst = 0.0;
        for (int j : {0, 1, 3, 5}) {
            const SampledField twice = besov_block(besov_block(h, j, frame), j, frame);
            const SampledField direct = dual_multiply(h, [&](const Point& xi) {
                const double b = frame.block(j, radius(xi));
                return cplx(b * b);
            });
            worst = std::max(worst, rel_diff(twice, direct));
        }
        s.at_most("block_composition", worst, 1e-12, "Delta_j Delta_j against block^2 multiplication");
    });
    s.guarded("cross_decay_monotone", [&] {
        std::mt19937_64 rng(derive_seed(seed, 2));
        const GridSpec g(1, 16384, 4.0);
        int good = 0, total = 0;
        for (int b = 0; b < 6; ++b) {
            const SampledField h = smooth_random_field(g, rng);
            for (int j : {0, 1}) {
                std::vector<int> ls;
                for (int l = j + 4; l <= j + 8; ++l) ls.push_back(l);
                const DecayProfile p = cross_lp_decay_profile(h, j, ls, 2.0, frame);
                for (std::size_t i = 1; i < p.ratio.size(); ++i) {
                    ++total;
                    // Ratios at the double-precision floor count as settled.
                    if (p.ratio[i] <= p.ratio[i - 1] * (1.0 + 1e-9) || p.ratio[i] < 1e-13) ++good;
                }
            }
        }
        s.at_least("cross_decay_monotone", static_cast<double>(good) / total, 0.95,
                   "fraction of non-increasing q=2 ratios beyond separation 4");
    });
}

void norms_suite(VerifyReport& report, std::uint64_t seed) {
    Suite s("norms", report);
    const FramePair frame;
    std::mt19937_64 rng(derive_seed(seed, 3));
    s.guarded("sobolev_monotone_in_s", [&] {
        const GridSpec g(1, 2048, 16.0);
        const SampledField h = random_field(g, Domain::frequency, rng);
        double prev = 0.0, worst = 0.0;
        for (double sv : {0.0, 0.25, 0.5, 1.0, 1.5}) {
            const double v = sobolev_norm(h, 2.0, sv).value;
            worst = std::max(worst, prev - v);
            prev = v;
        }
        s.at_most("sobolev_monotone_in_s", worst, 0.0, "largest decrease over s in {0, .25, .5, 1, 1.5}, r = 2");
    });
    s.guarded("hormander_dilation", [&] {
        const MultiplierSpec base = rademacher_symbol(16, SignTable(derive_seed(seed, 4)));
        const int m = 3;
        MultiplierSpec dilated = base;
        dilated.name = "dilated";
        dilated.eval = [base, m](const Point& xi) { return base({std::ldexp(xi[0], m), std::ldexp(xi[1], m)}); };
        dilated.piece_feature_width = [base, m](int k) { return base.feature_width(k + m); };
        dilated.support_min = std::ldexp(base.support_min, -m);
        dilated.support_max = std::ldexp(base.support_max, -m);
        const double a = hormander_norm(base, 4.0, 0.5, frame, {-2, 2}).norm.value;
        const double b = hormander_norm(dilated, 4.0, 0.5, frame, {-2 - m, 2 - m}).norm.value;
        s.at_most("hormander_dilation", std::abs(a - b) / a, 1e-12, "sigma(2^3 .) with the k range shifted by 3");
    });
    s.guarded("lorentz_rearrangement", [&] {
        const GridSpec g(1, 4096, 32.0);
        const SampledField f = random_field(g, Domain::space, rng);
        SampledField shuffled = f;
        std::shuffle(shuffled.storage().begin(), shuffled.storage().end(), rng);
        const double a = lorentz_p2_quasinorm(f, 1.5).value;
        const double b = lorentz_p2_quasinorm(shuffled, 1.5).value;
        s.at_most("lorentz_rearrangement", std::abs(a - b) / a, 1e-13, "sample permutation, p = 1.5");
    });
    s.guarded("trivial_l2_estimate", [&] {
        const GridSpec g(1, 1024, 16.0);
        double worst = -infinity;
        for (int i = 0; i < 20; ++i) {
            const SampledField sigma = random_field(g, Domain::frequency, rng);
            const SampledField f = random_field(g, Domain::space, rng);
            const double lhs = lp_value(apply_multiplier(MultiplierSpec::from_field(sigma), f), 2.0);
            const double rhs = lp_value(sigma, infinity) * lp_value(f, 2.0);
            worst = std::max(worst, (lhs - rhs) / rhs);
        }
        s.at_most("trivial_l2_estimate", worst, 1e-10, "max of (||T f||_2 - ||sigma||_inf ||f||_2)/rhs over 20 pairs");
    });
}

void engine_suite(VerifyReport& report, std::uint64_t seed) {
    Suite s("engine", report);
    std::mt19937_64 rng(derive_seed(seed, 5));
    s.guarded("plancherel", [&] {
        double worst = 0.0;
        for (int dim : {1, 2}) {
            const GridSpec g = default_grid(dim);
            const SampledField f = random_field(g, Domain::space, rng);
            const double a = lp_value(dft_forward(f), 2.0), b = lp_value(f, 2.0);
            worst = std::max(worst, std::abs(a - b) / b);
        }
        s.at_most("plancherel", worst, 1e-10, "default grids, n = 1, 2");
    });
    s.guarded("round_trip", [&] {
        const SampledField f = random_field(default_grid(1), Domain::space, rng);
        s.at_most("round_trip", rel_diff(dft_inverse(dft_forward(f)), f), 1e-12);
    });
    s.guarded("linearity", [&] {
        const GridSpec g = default_grid(1);
        const SampledField f = random_field(g, Domain::space, rng), h = random_field(g, Domain::space, rng);
        const MultiplierSpec sigma = MultiplierSpec::from_field(random_field(g, Domain::frequency, rng));
        const cplx a(0.3, -1.2), b(2.0, 0.5);
        const SampledField lhs = apply_multiplier(sigma, add(scale(f, a), scale(h, b)));
        const SampledField rhs = add(scale(apply_multiplier(sigma, f), a), scale(apply_multiplier(sigma, h), b));
        const double err = lp_value(add(lhs, scale(rhs, -1.0)), 2.0);
        s.at_most("linearity", err / (lp_value(f, 2.0) + lp_value(h, 2.0)), 1e-10);
    });
    s.guarded("unimodular_isometry", [&] {
        const GridSpec g = default_grid(1);
        const SampledField f = random_field(g, Domain::space, rng);
        MultiplierSpec sigma;
        sigma.name = "chirp";
        sigma.eval = [](const Point& xi) { return std::polar(1.0, 3.0 * xi[0] * xi[0]); };
        const double a = lp_value(apply_multiplier(sigma, f), 2.0), b = lp_value(f, 2.0);
        s.at_most("unimodular_isometry", std::abs(a - b) / b, 1e-12, "|sigma| = 1 gives equality in the L2 bound");
    });
    s.guarded("sigma_z_analytic", [&] {
        const FramePair frame;
        const MultiplierSpec sigma = rademacher_symbol(8, SignTable(derive_seed(seed, 6)));
        AnalyticFamilyParams params;
        params.k_range = {-2, 2};
        params.piece.fixed_points = 2048;
        const cplx z0(0.5, 0.7);
        const double h1 = 1e-4, h2 = 1e-5;
        const SigmaZ plus = build_sigma_z_sec2(sigma, params, z0 + h1, frame);
        const SigmaZ minus = build_sigma_z_sec2(sigma, params, z0 - h1, frame);
        const SigmaZ mid = build_sigma_z_sec2(sigma, params, z0, frame);
        const SigmaZ step = build_sigma_z_sec2(sigma, params, z0 + h2, frame);
        double worst = 0.0, scale_ref = 0.0;
        for (int i = 0; i < 64; ++i) {
            const Point xi{0.55 + 1.4 * i / 63.0, 0.0};
            const cplx centred = (plus(xi) - minus(xi)) / (2.0 * h1);
            const cplx one_sided = (step(xi) - mid(xi)) / h2;
            worst = std::max(worst, std::abs(centred - one_sided));
            scale_ref = std::max(scale_ref, std::abs(centred));
        }
        s.at_most("sigma_z_analytic", worst / std::max(scale_ref, 1e-300), 1e-3,
                  "centred (1e-4) against one-sided (1e-5) z-derivative");
    });
    s.guarded("argmax_invariance", [&] {
        const GridSpec g(1, 2048, 32.0);
        std::vector<SampledField> probes;
        for (int i = 0; i < 6; ++i) probes.push_back(smooth_random_field(g, rng));
        MultiplierSpec sigma;
        sigma.name = "ramp";
        sigma.eval = [](const Point& xi) { return cplx(std::exp(-std::abs(xi[0]))); };
        MultiplierSpec scaled = sigma;
        scaled.eval = [](const Point& xi) { return cplx(7.5 * std::exp(-std::abs(xi[0]))); };
        const LowerBound a = operator_lower_bound(sigma, 1.5, probes);
        const LowerBound b = operator_lower_bound(scaled, 1.5, probes);
        s.holds("argmax_invariance", a.argmax == b.argmax && std::abs(b.value / a.value - 7.5) < 1e-10,
                "argmax " + std::to_string(a.argmax) + " vs " + std::to_string(b.argmax));
    });
}

void families_suite(VerifyReport& report, std::uint64_t seed) {
    Suite s("families", report);
    const int N = 16;
    s.guarded("support_disjointness", [&] {
        // Distance between the supports of neighbouring bumps, measured on samples.
        const int n = 400000;
        double last_end = -infinity, gap = infinity;
        long last_j = 0;
        bool any = false;
        for (int i = 0; i <= n; ++i) {
            const double xi = -1.1 + 2.2 * i / n;
            const double u = N * xi;
            const long j = std::lround(u);
            if (profiles::rademacher_phi_hat(u - static_cast<double>(j)) == 0.0) continue;
            if (any && j != last_j) gap = std::min(gap, xi - last_end);
            last_end = xi;
            last_j = j;
            any = true;
        }
        s.at_least("support_disjointness", gap, 0.98 / N - 2.0 * 2.2 / n, "smallest gap between neighbouring bumps");
    });
    s.guarded("cut_reproduces_bump", [&] {
        double worst = 0.0;
        for (int i = 0; i <= 20000; ++i) {
            const double x = -0.6 + 1.2 * i / 20000.0;
            worst = std::max(worst, std::abs(profiles::rademacher_psi_cut(x) * profiles::rademacher_phi_hat(x) -
                                             profiles::rademacher_phi_hat(x)));
        }
        s.at_most("cut_reproduces_bump", worst, 0.0, "psi_cut phi_hat - phi_hat");
    });
    s.guarded("reproducible", [&] {
        const GridSpec g = rademacher_grid(8, 1);
        const SignTable t(derive_seed(seed, 7));
        const RademacherPair a = gen_rademacher(8, t, g), b = gen_rademacher(8, t, g);
        const bool same_f = a.f.storage() == b.f.storage();
        bool same_sigma = true;
        for (int i = 0; i < 4096; ++i) {
            const Point xi{-2.2 + 4.4 * i / 4095.0, 0.0};
            same_sigma = same_sigma && a.sigma(xi) == b.sigma(xi);
        }
        s.holds("reproducible", same_f && same_sigma, "identical seed gives bit-identical f and sigma");
    });
    s.guarded("tensorization", [&] {
        std::mt19937_64 rng(derive_seed(seed, 8));
        std::uniform_real_distribution<double> u(-2.2, 2.2);
        const int n2 = 8;
        const SignTable a(derive_seed(seed, 9)), b(derive_seed(seed, 10));
        const MultiplierSpec s2 = rademacher_symbol(n2, a, 2, b);
        double worst = 0.0;
        for (int i = 0; i < 20000; ++i) {
            const Point xi{u(rng), u(rng)};
            const long j1 = std::lround(n2 * xi[0]), j2 = std::lround(n2 * xi[1]);
            const double len = std::hypot(static_cast<double>(j1), static_cast<double>(j2));
            double expect = 0.0;
            if (len >= n2 / 2.0 && len <= 2.0 * n2)
                expect = a(j1) * b(j2) * profiles::rademacher_psi_cut(n2 * xi[0] - static_cast<double>(j1)) *
                         profiles::rademacher_psi_cut(n2 * xi[1] - static_cast<double>(j2));
            worst = std::max(worst, std::abs(s2(xi) - expect));
        }
        // f_hat on the smallest grid the family accepts, compared on random rows.
        const GridSpec g = rademacher_grid(4, 2);
        const GridSpec g1(1, g.points(), g.length());
        const SampledField f2 = rademacher_f_hat(4, g, 2), f1 = rademacher_f_hat(4, g1, 1);
        const std::size_t m = g.points();
        std::uniform_int_distribution<std::size_t> row(0, m - 1);
        for (int r = 0; r < 64; ++r) {
            // Half the rows run through bump centres xi_1 = j/4, where f_hat is nonzero.
            const std::size_t through = m / 2 + static_cast<std::size_t>(400 * (r % 5) + r % 7) - 3;
            const std::size_t i = r < 32 ? row(rng) : through;
            for (std::size_t k = 0; k < m; ++k) worst = std::max(worst, std::abs(f2[i * m + k] - f1[i] * f1[k]));
        }
        s.at_most("tensorization", worst, 1e-15, "2D sigma and f_hat against products of 1D factors");
    });
}

void interpolation_suite(VerifyReport& report, std::uint64_t seed) {
    Suite s("interpolation", report);
    (void)seed;
    s.guarded("ide_identities", [&] {
        const auto [m, p] = ide_identities(0.3);
        s.at_most("ide_identities", std::max(std::abs(m - 0.7), std::abs(p - 0.3)), 1e-8, "theta = 0.3");
    });
    s.guarded("ide_halfwidth", [&] {
        double worst = 0.0;
        for (double th : {0.1, 0.3, 0.5, 0.9}) {
            const auto a = ide_identities(th, 10.0, 20000), b = ide_identities(th, 20.0, 40000);
            worst = std::max({worst, std::abs(a.first - b.first), std::abs(a.second - b.second)});
        }
        s.at_most("ide_halfwidth", worst, 1e-12, "halfwidth 10 against 20");
    });
    s.guarded("three_lines_scaling", [&] {
        const double theta = 0.35, lambda = 3.7;
        BoundaryData d;
        d.A0 = [](double t) { return 2.0 + std::sin(t); };
        d.A1 = [](double t) { return 1.0 + t * t; };
        d.A = 5.0;
        BoundaryData e = d;
        e.A0 = [lambda](double t) { return lambda * (2.0 + std::sin(t)); };
        const double a = three_lines_bound(d, theta).value, b = three_lines_bound(e, theta).value;
        s.at_most("three_lines_scaling", std::abs(b / a / std::pow(lambda, 1.0 - theta) - 1.0), 1e-9,
                  "A0 scaled by 3.7");
    });
    s.guarded("step_family_modulus", [&] {
        const GridSpec g(1, 2048, 4.0);
        const SampledField f = SampledField::from_function(g, Domain::space, [](const Point& x) {
            return std::polar(smoothstep((x[0] + 0.1) / 0.2) * smoothstep((1.1 - x[0]) / 0.2), 2.0 * x[0]);
        });
        const double p = 2.0, p0 = 1.25, p1 = 4.0, theta = 0.3 / 0.55;
        const StepFamily fam = step_family_embed(f, p, p0, p1, theta, 0.01);
        double worst = 0.0;
        for (double re : {0.0, 0.4, 1.0}) {
            const SampledField base = fam.evaluate(cplx(re, 0.0));
            for (double t : {-4.0, 1.0, 4.0}) {
                const SampledField other = fam.evaluate(cplx(re, t));
                for (std::size_t i = 0; i < base.size(); ++i)
                    worst = std::max(worst, std::abs(std::abs(other[i]) - std::abs(base[i])));
            }
        }
        s.at_most("step_family_modulus", worst, 1e-12, "| |f_{x+it}| - |f_x| | over samples");
    });
    s.guarded("plan_identities", [&] {
        const InterpolationPlan plan = plan_interpolation(4.0 / 3.0, 0.5, 1, 1e-3, 1e-3);
        s.at_most("plan_identities", plan.identity_residual, 1e-12, "p = 4/3, s = 1/2, delta = eps = 1e-3");
    });
}

} // namespace

VerifyReport run_verify(const std::string& suite, std::uint64_t seed) {
    VerifyReport report;
    auto run = [&](const std::string& name) {
        if (name == "frames") frames_suite(report, seed);
        else if (name == "norms") norms_suite(report, seed);
        else if (name == "engine") engine_suite(report, seed);
        else if (name == "families") families_suite(report, seed);
        else if (name == "interpolation") interpolation_suite(report, seed);
    };
    if (suite == "all") {
        for (const std::string& name : verify_suites()) run(name);
        return report;
    }
    const auto& names = verify_suites();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw ConfigError("unknown verify suite '" + suite + "'; expected frames, norms, engine, families, interpolation or all");
    run(suite);
    return report;
}

} // namespace multlab
