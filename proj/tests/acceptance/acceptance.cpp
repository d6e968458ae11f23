// One PASS/FAIL line per acceptance criterion. A criterion fails when its
// measurement misses the tolerance or its runtime exceeds the limit.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "multlab/experiment.hpp"
#include "multlab/families.hpp"
#include "multlab/fft.hpp"
#include "multlab/frames.hpp"
#include "multlab/interpolation.hpp"
#include "multlab/multiplier.hpp"
#include "multlab/norms.hpp"
#include "multlab/random.hpp"

using namespace multlab;

namespace {

constexpr std::uint64_t kSeed = 20240917;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [miss]");
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double max_diff(const SampledField& a, const SampledField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Slopes of every report in a scan against the predicted exponent.
void check_scan(Outcome& o, const ScanConfig& c, double tol, const std::string& label) {
    const ScanResult r = run_scan(c);
    for (const ScalingReport& rep : r.reports) {
        std::ostringstream what;
        what << label << ' ' << to_string(rep.norm) << ' ' << rep.norm_params.dump() << " slope "
             << fmt("%+.4f", rep.slope) << " vs " << fmt("%+.4f", rep.predicted_slope);
        o.require(std::abs(rep.slope - rep.predicted_slope) <= tol, what.str());
    }
}

Outcome partition_of_unity() {
    Outcome o;
    const FramePair frame;
    double worst = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const double xi = std::exp2(-10.0 + 20.0 * i / (n - 1));
        double sum = 0.0;
        for (int j = -14; j <= 14; ++j) sum += frame.psi_hat(std::ldexp(xi, -j));
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    o.require(worst < 1e-12, "residual " + fmt("%.2e", worst) + " < 1e-12");
    return o;
}

Outcome poisson_identities() {
    Outcome o;
    double worst = 0.0;
    for (double theta : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        const auto [minus, plus] = ide_identities(theta);
        worst = std::max({worst, std::abs(minus - (1.0 - theta)), std::abs(plus - theta)});
    }
    o.require(worst < 1e-8, "max error " + fmt("%.2e", worst) + " < 1e-8");
    return o;
}

Outcome bump_closed_form() {
    Outcome o;
    for (int N : {8, 16, 32}) {
        const BumpPair pair = gen_bump_pair(N, {1.0, 0.0}, bump_pair_grid(N, 1));
        const double err = max_diff(apply_multiplier(pair.sigma, pair.f), pair.closed_form_T);
        o.require(err < 1e-8, "n=1 N=" + std::to_string(N) + " sup error " + fmt("%.2e", err) + " < 1e-8");
    }
    for (int N : {8, 16}) {
        const BumpPair pair = gen_bump_pair(N, {0.6, 0.8}, bump_pair_grid(N, 2));
        const double err = max_diff(apply_multiplier(pair.sigma, pair.f), pair.closed_form_T);
        o.require(err < 1e-6, "n=2 N=" + std::to_string(N) + " sup error " + fmt("%.2e", err) + " < 1e-6");
    }
    return o;
}

Outcome bump_scaling() {
    Outcome o;
    ScanConfig c;
    c.family = "bump_pair";
    c.target = ScanTarget::f;
    c.N_values = {8, 16, 32, 64, 128};
    c.norms = {NormRequest{NormKind::Lp, 4.0 / 3.0}, NormRequest{NormKind::Lp, 2.0}, NormRequest{NormKind::Lp, 4.0}};
    c.seed = kSeed;
    check_scan(o, c, 0.05, "f");
    c.target = ScanTarget::sigma;
    NormRequest sob;
    sob.kind = NormKind::SobolevRS;
    sob.r = 4.0;
    sob.s = 1.0;
    c.norms = {sob};
    check_scan(o, c, 0.1, "sigma piece");
    return o;
}

Outcome rademacher_f_and_dirichlet() {
    Outcome o;
    ScanConfig c;
    c.family = "rademacher";
    c.target = ScanTarget::f;
    c.N_values = {16, 32, 64, 128, 256};
    c.norms = {NormRequest{NormKind::Lp, 1.25}, NormRequest{NormKind::Lp, 1.5}, NormRequest{NormKind::Lp, 3.0}};
    c.seed = kSeed;
    check_scan(o, c, 0.1, "f_N");
    ScanConfig d;
    d.family = "dirichlet";
    d.target = ScanTarget::f;
    d.N_values = {16, 32, 64, 128, 256};
    d.norms = {NormRequest{NormKind::Lp, 2.0}};
    d.seed = kSeed;
    check_scan(o, d, 0.05, "D_N");
    return o;
}

Outcome hormander_growth() {
    Outcome o;
    ScanConfig c;
    c.family = "rademacher";
    c.target = ScanTarget::sigma;
    c.N_values = {16, 32, 64, 128, 256};
    c.trials = 16;
    c.seed = kSeed;
    for (double s : {0.25, 0.5, 1.0}) {
        NormRequest h;
        h.kind = NormKind::HormanderSup;
        h.r = 4.0;
        h.s = s;
        c.norms.push_back(h);
    }
    c.norms.erase(c.norms.begin());
    check_scan(o, c, 0.1, "sigma");
    return o;
}

Outcome khintchine_operator() {
    Outcome o;
    ScanConfig c;
    c.family = "rademacher";
    c.target = ScanTarget::Tf;
    c.N_values = {16, 32, 64, 128, 256};
    c.norms = {NormRequest{NormKind::Lp, 4.0 / 3.0}, NormRequest{NormKind::Lp, 2.0}};
    c.trials = 64;
    c.seed = kSeed;
    check_scan(o, c, 0.1, "Tf");
    return o;
}

Outcome region_sharpness() {
    Outcome o;
    RegionConfig c;
    c.seed = kSeed;
    const RegionMap map = run_region(c);
    int out_ok = 0, out_total = 0, in_ok = 0, in_total = 0, mid_ok = 0, mid_total = 0;
    for (const RegionCell& cell : map.cells) {
        const double gap = std::abs(cell.inv_p - 0.5) - cell.s;
        if (gap > 0.1 + 1e-12) {
            ++out_total;
            out_ok += cell.cls == CellClass::outside;
        } else if (-gap > 0.1 + 1e-12) {
            ++in_total;
            in_ok += cell.cls == CellClass::inside;
        } else {
            ++mid_total;
            mid_ok += cell.cls == CellClass::indeterminate;
        }
    }
    o.require(map.cells.size() == 25, std::to_string(map.cells.size()) + " cells");
    o.require(out_ok == out_total, "outside " + std::to_string(out_ok) + "/" + std::to_string(out_total));
    o.require(in_ok == in_total, "inside " + std::to_string(in_ok) + "/" + std::to_string(in_total));
    o.require(mid_ok == mid_total, "indeterminate " + std::to_string(mid_ok) + "/" + std::to_string(mid_total));
    return o;
}

Outcome trivial_l2() {
    Outcome o;
    std::mt19937_64 rng(kSeed);
    std::normal_distribution<double> nd;
    const GridSpec g(1, 1024, 16.0);
    double worst = -infinity;
    for (int i = 0; i < 100; ++i) {
        SampledField sigma(g, Domain::frequency), f(g, Domain::space);
        for (cplx& v : sigma.values()) v = cplx(nd(rng), nd(rng));
        for (cplx& v : f.values()) v = cplx(nd(rng), nd(rng));
        const double lhs = lp_value(apply_multiplier(MultiplierSpec::from_field(sigma), f), 2.0);
        const double rhs = lp_value(sigma, infinity) * lp_value(f, 2.0);
        worst = std::max(worst, (lhs - rhs) / rhs);
    }
    o.require(worst <= 1e-10, "max (lhs - rhs)/rhs " + fmt("%.3e", worst) + " <= 1e-10 over 100 pairs");
    return o;
}

Outcome cross_decay() {
    Outcome o;
    const FramePair frame;
    // Random g with spectrum in |xi| <= 2.5, wide enough for l up to 14.
    const GridSpec g(1, std::size_t(1) << 19, 4.0);
    std::mt19937_64 rng(kSeed);
    std::normal_distribution<double> nd;
    SampledField G(g, Domain::frequency);
    for (std::size_t i = 0; i < G.size(); ++i)
        if (std::abs(G.point(i)[0]) <= 2.5) G[i] = cplx(nd(rng), nd(rng));
    const SampledField x = dft_inverse(G);
    const std::vector<int> ls{10, 11, 12, 13, 14};
    const DecayProfile p = cross_lp_decay_profile(x, 0, ls, 2.0, frame, DecayPrecision::extended);
    double least = infinity;
    for (std::size_t i = 1; i < ls.size(); ++i) least = std::min(least, p.log2_ratio[i - 1] - p.log2_ratio[i]);
    o.require(least >= 5.0, "q=2 j=0 l=10..14 least log2 drop " + fmt("%.1f", least) + " >= 5");

    // q = 1 on the widened low-pass function: one constant for every pair.
    const GridSpec gs(1, 8192, 4.0);
    const SampledField phi_tilde = dft_inverse(SampledField::from_function(
        gs, Domain::frequency, [&](const Point& xi) { return cplx(frame.phi_tilde_hat(radius(xi))); }));
    double worst = 0.0;
    for (int j = 0; j <= 6; ++j)
        for (int l = 0; l <= 6; ++l) worst = std::max(worst, cross_lp_decay(phi_tilde, j, l, 1.0, frame));
    o.require(std::isfinite(worst) && worst < 50.0, "q=1 max ratio " + fmt("%.3f", worst) + " < 50 over j,l in 0..6");

    // H1 atom: ratios fall as max(j, l) grows with j - l fixed.
    const GridSpec ga(1, 65536, 16.0);
    const SampledField atom = h1_atom({0.25, 0.0}, 0.5, ga);
    std::vector<double> chain;
    for (int m = 4; m <= 8; ++m) chain.push_back(cross_lp_decay(atom, 0, m, 1.0, frame));
    bool falling = true;
    for (std::size_t i = 1; i < chain.size(); ++i) falling = falling && chain[i] < chain[i - 1];
    o.require(falling, "H1 atom q=1 j=0 l=4..8 " + fmt("%.2e", chain.front()) + " -> " + fmt("%.2e", chain.back()));
    return o;
}

Outcome sigma_z_boundary() {
    Outcome o;
    const FramePair frame;
    const MultiplierSpec sigma = rademacher_symbol(32, SignTable(derive_seed(kSeed, 11)));
    AnalyticFamilyParams p;
    p.k_range = {-4, 4};
    const double growth = 0.5 + 1.5;  // n/2 + 1.5 with n = 1
    double worst = 0.0;
    for (double tau : {0.0, 1.0}) {
        const double base = build_sigma_z_sec2(sigma, p, cplx(tau, 0.0), frame).sup_norm();
        for (double t : {1.0, -1.0, 2.0, -2.0, 4.0, -4.0}) {
            const double sup = build_sigma_z_sec2(sigma, p, cplx(tau, t), frame).sup_norm();
            worst = std::max(worst, sup / (base * std::pow(1.0 + std::abs(t), growth)));
        }
    }
    o.require(worst <= 1.0, "max sup|sigma_{tau+it}| / (sup|sigma_tau| (1+|t|)^2) " + fmt("%.3f", worst) + " <= 1");

    // Besov boundary inequality: sup_k B-norm of sigma_{m+it} at (r_m, s_m)
    // against Q^{r/r_m}, relative to the same ratio when the endpoints collapse.
    AnalyticFamilyParams q = p;
    q.variant = FamilyVariant::besov_sec5;
    const PieceSet ps = collect_pieces(sigma, frame, q);
    const double Q = besov_weights(ps, q.r(), q.s(), frame).normaliser;
    PieceGridOptions po;
    po.fixed_points = ps.grid.points();
    AnalyticFamilyParams collapse = q;
    collapse.r0 = collapse.r1 = q.r();
    collapse.s0 = collapse.s1 = q.s();
    const SigmaZ coll = build_sigma_z_sec5(sigma, collapse, cplx(0.5, 0.0), frame);
    const double c_collapse = hormander_besov_norm(coll.spec(), q.r(), 1.0, q.s(), frame, {-5, 5}, po).norm.value / Q;
    double c_max = 0.0;
    for (int m : {0, 1})
        for (double t : {0.0, 1.0, 4.0}) {
            const SigmaZ sz = build_sigma_z_sec5(sigma, q, cplx(m, t), frame);
            const double rm = m == 0 ? q.r0 : q.r1, sm = m == 0 ? q.s0 : q.s1;
            const double B = hormander_besov_norm(sz.spec(), rm, 1.0, sm, frame, {-5, 5}, po).norm.value;
            c_max = std::max(c_max, B / std::pow(Q, q.r() / rm));
        }
    o.require(c_max <= 10.0 * c_collapse,
              "boundary constant " + fmt("%.3f", c_max) + " <= 10 x collapse " + fmt("%.3f", c_collapse));
    return o;
}

Outcome step_family() {
    Outcome o;
    const GridSpec g(1, 8192, 4.0);
    // Smooth indicator of [0, 1].
    const SampledField f = SampledField::from_function(g, Domain::space, [](const Point& x) {
        const double d = std::abs(x[0] - 0.5);
        if (d <= 0.4) return cplx(1.0);
        if (d >= 0.5) return cplx(0.0);
        const double t = (d - 0.4) / 0.1;
        const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
        return cplx(b / (a + b));
    });
    const double p = 2.0, p0 = 1.25, p1 = 4.0, theta = 0.3 / 0.55;
    const StepFamily fam = step_family_embed(f, p, p0, p1, theta, 0.01);
    const std::vector<double> ts{0.0, 1.0, -1.0, 4.0, -4.0};
    const EmbedDiagnostics d = embed_diagnostics(fam, f, p, p0, p1, ts);
    o.require(d.approximation_error < 0.01, "approximation " + fmt("%.4f", d.approximation_error) + " < 0.01");
    o.require(d.eps_prime <= 0.05, "eps' " + fmt("%.2e", d.eps_prime) + " <= 0.05");
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "partition of unity", 1.0, partition_of_unity},
        {2, "Poisson kernel identities", 1.0, poisson_identities},
        {3, "bump pair closed form", 30.0, bump_closed_form},
        {4, "bump pair scaling", 120.0, bump_scaling},
        {5, "Rademacher f_N and Dirichlet growth", 120.0, rademacher_f_and_dirichlet},
        {6, "Hormander norm growth", 300.0, hormander_growth},
        {7, "Monte Carlo operator growth", 600.0, khintchine_operator},
        {8, "region sharpness", 1200.0, region_sharpness},
        {9, "trivial L2 estimate", 10.0, trivial_l2},
        {10, "cross decay", 60.0, cross_decay},
        {11, "sigma_z boundary control", 300.0, sigma_z_boundary},
        {12, "step family embedding", 10.0, step_family},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("threw: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.limit_seconds;
        const bool pass = o.pass && in_time;
        failures += !pass;
        std::printf("%s %2d %s: %s; runtime %.2fs (limit %.0fs)%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), secs, c.limit_seconds, in_time ? "" : " [over]");
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
