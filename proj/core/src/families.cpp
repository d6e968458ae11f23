#include "multlab/families.hpp"

#include <cmath>

#include "multlab/errors.hpp"
#include "multlab/fft.hpp"
#include "multlab/random.hpp"
#include "multlab/smoothstep.hpp"

namespace multlab {

int SignTable::operator()(long j) const {
    if (all_plus_) return 1;
    std::uint64_t h = splitmix64(seed_ ^ splitmix64(static_cast<std::uint64_t>(j)));
    return (h >> 63) ? 1 : -1;
}

SignTable SignTable::all_plus() {
    SignTable t(0);
    t.all_plus_ = true;
    return t;
}

namespace profiles {
double zeta_hat_1d(double x) { return cutoff(std::abs(x) / 0.1, 0.0, 1.0); }
double zeta_hat_axis_2d(double x) { return cutoff(std::abs(x) / 0.07, 0.0, 1.0); }
double bump_phi_hat_1d(double x) { return cutoff(x, 0.2, 0.5); }
double bump_phi_hat_axis_2d(double x) { return cutoff(x, 0.2, 0.35); }
double rademacher_phi_hat(double x) { return cutoff(std::abs(x) / 0.01, 0.0, 1.0); }
double rademacher_psi_cut(double x) { return cutoff(x, 0.1, 0.5); }
double miyachi_psi(double r) { return 1.0 - cutoff(r, 1.0, 2.0); }

double even_profile_transform(double (*profile)(double), double w, double y, int nodes) {
    // Integrand is smooth with every derivative vanishing at +-w, so the
    // trapezoid rule on [-w, w] converges spectrally.
    const double h = w / nodes;
    double acc = 0.5 * profile(0.0);
    for (int i = 1; i < nodes; ++i) {
        double x = i * h;
        acc += profile(x) * std::cos(2.0 * M_PI * y * x);
    }
    return 2.0 * h * acc;
}
} // namespace profiles

std::string FamilySpec::family_name() const {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, MiyachiWainger>) return "miyachi";
            else if constexpr (std::is_same_v<T, BumpPairSpec>) return "bump_pair";
            else if constexpr (std::is_same_v<T, RademacherSpec>) return "rademacher";
            else return "dirichlet";
        },
        variant);
}

nlohmann::json FamilySpec::params_json() const {
    return std::visit(
        [](const auto& v) -> nlohmann::json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, MiyachiWainger>) return {{"a", v.a}, {"b", v.b}};
            else if constexpr (std::is_same_v<T, BumpPairSpec>)
                return {{"N", v.N}, {"direction", {v.direction[0], v.direction[1]}}};
            else if constexpr (std::is_same_v<T, RademacherSpec>)
                return {{"N", v.N}, {"seed", v.seed}, {"dim", v.dim}};
            else return {{"N", v.N}};
        },
        variant);
}

nlohmann::json FamilySpec::to_json() const {
    return {{"family", family_name()}, {"params", params_json()}, {"grid", grid.to_json()}};
}

FamilySpec FamilySpec::from_json(const nlohmann::json& j) {
    FamilySpec fs;
    const std::string name = j.at("family").get<std::string>();
    const nlohmann::json p = j.value("params", nlohmann::json::object());
    if (name == "miyachi") {
        fs.variant = MiyachiWainger{p.value("a", 0.5), p.value("b", 0.25)};
    } else if (name == "bump_pair") {
        BumpPairSpec b;
        b.N = p.value("N", 8);
        if (p.contains("direction")) {
            auto d = p.at("direction").get<std::vector<double>>();
            if (d.empty() || d.size() > 2) throw ConfigError("bump_pair direction needs 1 or 2 entries");
            b.direction = {d[0], d.size() > 1 ? d[1] : 0.0};
        }
        fs.variant = b;
    } else if (name == "rademacher") {
        fs.variant = RademacherSpec{p.value("N", 16), p.value("seed", std::uint64_t(0)), p.value("dim", 1)};
    } else if (name == "dirichlet") {
        fs.variant = DirichletSpec{p.value("N", 8)};
    } else {
        throw ConfigError("unknown family '" + name + "'");
    }
    if (j.contains("grid")) fs.grid = GridSpec::from_json(j.at("grid"));
    return fs;
}

MultiplierSpec gen_miyachi(double a, double b, int dim) {
    if (!(a > 0.0)) throw ParameterError("gen_miyachi: a must be positive");
    if (a == 1.0) throw ParameterError("gen_miyachi: a = 1 is excluded");
    if (!(b > 0.0)) throw ParameterError("gen_miyachi: b must be positive");
    MultiplierSpec m;
    m.name = "miyachi";
    m.params = {{"a", a}, {"b", b}};
    m.dim = dim;
    m.eval = [a, b](const Point& xi) {
        double r = radius(xi);
        double c = profiles::miyachi_psi(r);
        if (c == 0.0) return cplx(0.0);
        return c * std::pow(r, -b) * std::polar(1.0, std::pow(r, a));
    };
    m.support_min = 1.0;
    m.piece_feature_width = [a](int k) {
        // One period of the phase |2^k eta|^a at its fastest point on [1/2, 2],
        // the cutoff transition, and the frame transition.
        double fastest = a * std::pow(2.0, k * a) * std::max(std::pow(0.5, a - 1.0), std::pow(2.0, a - 1.0));
        double w = 2.0 * M_PI / fastest;
        w = std::min(w, std::ldexp(1.0, -k));
        return std::min(w, 0.25);
    };
    return m;
}

GridSpec bump_pair_grid(int N, int dim) {
    if (dim == 1) return GridSpec(1, 2048 * static_cast<std::size_t>(N), 512.0 * N);
    return GridSpec(2, 256 * static_cast<std::size_t>(N), 64.0 * N);
}

BumpPair gen_bump_pair(int N, const Point& direction, const GridSpec& grid, bool with_closed_form) {
    if (N < 4) throw ParameterError("gen_bump_pair: N must be >= 4");
    const int dim = grid.dim();
    Point a = direction;
    if (dim == 1) a[1] = 0.0;
    double na = radius(a);
    if (!(na > 0.0)) throw ParameterError("gen_bump_pair: direction must be nonzero");
    a = {a[0] / na, a[1] / na};
    // Frequency resolution: the bump of radius 1/(10N) needs several samples,
    // and the shifted bump has to sit inside the frequency box.
    double need_l = 40.0 * N;
    if (grid.frequency_spacing() > 1.0 / need_l || grid.nyquist() < 1.0 + 0.5 / N) {
        std::size_t req = next_power_of_two(static_cast<std::size_t>(std::ceil(2.0 * (1.0 + 0.5 / N) * std::max(need_l, grid.length()))));
        throw ParameterError("gen_bump_pair: grid does not resolve the pair; need L >= " + std::to_string(need_l) +
                             " and M >= " + std::to_string(req));
    }
    const double dN = N;
    SampledField fh = SampledField::from_function(grid, Domain::frequency, [&](const Point& xi) {
        double u = dN * (xi[0] - a[0]), v = dN * (xi[1] - a[1]);
        if (dim == 1) return cplx(profiles::zeta_hat_1d(u));
        return cplx(profiles::zeta_hat_axis_2d(u) * profiles::zeta_hat_axis_2d(v));
    });
    BumpPair out{dft_inverse(fh), {}, {}};

    MultiplierSpec& s = out.sigma;
    s.name = "bump_pair";
    s.params = {{"N", N}, {"direction", {a[0], a[1]}}};
    s.dim = dim;
    s.eval = [a, dN, dim](const Point& xi) {
        double u = dN * (xi[0] - a[0]), v = dN * (xi[1] - a[1]);
        if (dim == 1) return cplx(profiles::bump_phi_hat_1d(u));
        return cplx(profiles::bump_phi_hat_axis_2d(u) * profiles::bump_phi_hat_axis_2d(v));
    };
    s.support_min = 1.0 - 0.5 / dN;
    s.support_max = 1.0 + 0.5 / dN;
    s.piece_feature_width = [dN](int k) { return std::ldexp(0.3 / dN, -k); };

    if (!with_closed_form) return out;
    out.closed_form_T = SampledField(grid, Domain::space);
    // N^-n zeta(x/N) exp(2 pi i x.a), zeta by quadrature of its profile.
    const std::size_t m = grid.points();
    std::vector<double> axis(m);
    double w = dim == 1 ? 0.1 : 0.07;
    auto prof = dim == 1 ? &profiles::zeta_hat_1d : &profiles::zeta_hat_axis_2d;
    for (std::size_t i = 0; i < m; ++i) {
        double x = grid.coordinate(Domain::space, i);
        axis[i] = profiles::even_profile_transform(prof, w, x / dN) / dN;
    }
    for (std::size_t i = 0; i < out.closed_form_T.size(); ++i) {
        Point x = grid.point(Domain::space, i);
        double amp = dim == 1 ? axis[i] : axis[i / m] * axis[i % m];
        out.closed_form_T[i] = amp * std::polar(1.0, 2.0 * M_PI * (x[0] * a[0] + x[1] * a[1]));
    }
    return out;
}

namespace {
void check_rademacher(int N, const GridSpec& grid, int dim) {
    if (N < 4) throw ParameterError("gen_rademacher: N must be >= 4");
    if (dim != grid.dim()) throw ParameterError("gen_rademacher: dim does not match the grid");
    double need_l = 400.0 * N;
    double reach = (N + 0.01) / N;
    if (grid.length() < need_l || grid.nyquist() <= reach) {
        double l = std::max(need_l, grid.length());
        std::size_t req = next_power_of_two(static_cast<std::size_t>(std::ceil(2.0 * reach * l)) + 1);
        throw ParameterError("gen_rademacher: grid does not resolve width 1/(100N) bumps; need L >= " +
                             std::to_string(need_l) + " and M >= " + std::to_string(req));
    }
}

// Sum over |j| <= N of phi_hat(N x - j); bumps are disjoint.
double f_hat_axis(int N, double x) {
    double u = N * x;
    double j = std::nearbyint(u);
    if (std::abs(j) > N) return 0.0;
    return profiles::rademacher_phi_hat(u - j);
}
} // namespace

GridSpec rademacher_grid(int N, int dim) {
    if (dim == 1) return GridSpec(1, 2048 * static_cast<std::size_t>(N), 512.0 * N);
    double l = 400.0 * N;
    return GridSpec(2, next_power_of_two(static_cast<std::size_t>(std::ceil(2.05 * l))), l);
}

SampledField rademacher_f_hat(int N, const GridSpec& grid, int dim) {
    check_rademacher(N, grid, dim);
    return SampledField::from_function(grid, Domain::frequency, [&](const Point& xi) {
        if (dim == 1) return cplx(f_hat_axis(N, xi[0]));
        return cplx(f_hat_axis(N, xi[0]) * f_hat_axis(N, xi[1]));
    });
}

MultiplierSpec rademacher_symbol(int N, const SignTable& signs, int dim, const SignTable& second) {
    if (N < 4) throw ParameterError("rademacher_symbol: N must be >= 4");
    MultiplierSpec s;
    s.name = "rademacher";
    s.params = {{"N", N}, {"seed", signs.seed()}, {"dim", dim}};
    if (dim == 2) s.params["seed2"] = second.seed();
    s.dim = dim;
    const double dN = N;
    s.eval = [dN, N, signs, second, dim](const Point& xi) {
        double u = dN * xi[0];
        double j1 = std::nearbyint(u);
        if (dim == 1) {
            double aj = std::abs(j1);
            if (aj < 0.5 * N || aj > 2.0 * N) return cplx(0.0);
            return cplx(signs(static_cast<long>(j1)) * profiles::rademacher_psi_cut(u - j1));
        }
        double v = dN * xi[1];
        double j2 = std::nearbyint(v);
        double len = std::hypot(j1, j2);
        if (len < 0.5 * N || len > 2.0 * N) return cplx(0.0);
        return cplx(signs(static_cast<long>(j1)) * second(static_cast<long>(j2)) *
                    profiles::rademacher_psi_cut(u - j1) * profiles::rademacher_psi_cut(v - j2));
    };
    s.support_min = dim == 1 ? (0.5 * N - 0.5) / dN : 0.0;
    s.support_max = dim == 1 ? (2.0 * N + 0.5) / dN : (2.0 * N + 1.0) / dN;
    s.piece_feature_width = [dN](int k) { return std::ldexp(1.0 / dN, -k); };
    return s;
}

RademacherPair gen_rademacher(int N, const SignTable& signs, const GridSpec& grid, int dim, const SignTable& second) {
    SampledField fh = rademacher_f_hat(N, grid, dim);
    return {dft_inverse(fh), rademacher_symbol(N, signs, dim, second)};
}

GridSpec dirichlet_grid(int N) {
    std::size_t m = next_power_of_two(std::max<std::size_t>(256, 16 * (2 * static_cast<std::size_t>(N) + 1)));
    return GridSpec(1, m, 1.0);
}

SampledField dirichlet_kernel(int N, const GridSpec& grid) {
    if (N < 0) throw ParameterError("dirichlet_kernel: N must be >= 0");
    if (grid.dim() != 1) throw ParameterError("dirichlet_kernel: one-dimensional grid required");
    return SampledField::from_function(grid, Domain::space, [N](const Point& x) {
        // Real part of the geometric sum, accumulated symmetrically.
        double acc = 1.0;
        for (int j = 1; j <= N; ++j) acc += 2.0 * std::cos(2.0 * M_PI * j * x[0]);
        return cplx(acc);
    });
}

KhintchineResult khintchine_check(std::span<const cplx> A, double p, int trials, std::uint64_t seed) {
    if (trials < 32) throw ParameterError("khintchine_check: trials must be >= 32");
    if (!(p > 0.0)) throw ParameterError("khintchine_check: p must be positive");
    double l2 = 0.0;
    for (auto v : A) l2 += std::norm(v);
    if (l2 == 0.0) throw ParameterError("khintchine_check: all entries are zero");
    l2 = std::sqrt(l2);
    KhintchineResult res;
    const int replicates = 4;
    for (int r = 0; r < replicates; ++r) {
        double acc = 0.0;
        for (int t = 0; t < trials; ++t) {
            SignTable table(derive_seed(seed, static_cast<std::uint64_t>(r) * 1000003ULL + t));
            cplx s = 0.0;
            for (std::size_t j = 0; j < A.size(); ++j) s += double(table(static_cast<long>(j))) * A[j];
            acc += std::pow(std::abs(s), p);
        }
        res.replicate_ratios.push_back(std::pow(acc / trials, 1.0 / p) / l2);
    }
    res.ratio_low = *std::min_element(res.replicate_ratios.begin(), res.replicate_ratios.end());
    res.ratio_high = *std::max_element(res.replicate_ratios.begin(), res.replicate_ratios.end());
    return res;
}

} // namespace multlab
