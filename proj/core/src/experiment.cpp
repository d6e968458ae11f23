#include "multlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "multlab/errors.hpp"
#include "multlab/fft.hpp"
#include "multlab/frames.hpp"
#include "multlab/multiplier.hpp"
#include "multlab/parallel.hpp"
#include "multlab/random.hpp"

namespace multlab {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void require_increasing(const std::vector<int>& n, std::size_t min_len, const char* what) {
    if (n.size() < min_len) throw ConfigError(std::string(what) + " needs at least " + std::to_string(min_len) + " N values");
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] < 4) throw ConfigError(std::string(what) + ": N values must be >= 4");
        if (i > 0 && n[i] <= n[i - 1]) throw ConfigError(std::string(what) + ": N values must be strictly increasing");
    }
}

} // namespace

std::string to_string(ScanTarget t) {
    switch (t) {
    case ScanTarget::f: return "f";
    case ScanTarget::Tf: return "Tf";
    case ScanTarget::sigma: return "sigma";
    case ScanTarget::kernel: return "kernel";
    }
    return "f";
}

ScanTarget scan_target_from_string(const std::string& s) {
    if (s == "f") return ScanTarget::f;
    if (s == "Tf") return ScanTarget::Tf;
    if (s == "sigma") return ScanTarget::sigma;
    if (s == "kernel") return ScanTarget::kernel;
    throw ConfigError("unknown scan target '" + s + "'");
}

nlohmann::json NormRequest::to_json() const {
    nlohmann::json j{{"kind", to_string(kind)}};
    switch (kind) {
    case NormKind::Lp:
    case NormKind::LorentzP2: j["p"] = p; break;
    case NormKind::Linf: break;
    case NormKind::SobolevRS:
    case NormKind::HormanderSup: j["r"] = r; j["s"] = s; break;
    case NormKind::Besov:
    case NormKind::BesovSup: j["p"] = p; j["q"] = q; j["s"] = s; break;
    }
    return j;
}

NormRequest NormRequest::from_json(const nlohmann::json& j) {
    NormRequest n;
    try {
        n.kind = norm_kind_from_string(j.at("kind").get<std::string>());
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    n.p = j.value("p", n.p);
    n.q = j.value("q", n.q);
    n.r = j.value("r", n.r);
    n.s = j.value("s", n.s);
    return n;
}

void ScanConfig::validate() const {
    if (family != "bump_pair" && family != "rademacher" && family != "dirichlet")
        throw ConfigError("scan family must be bump_pair, rademacher or dirichlet, got '" + family + "'");
    if (dim != 1 && dim != 2) throw ConfigError("dim must be 1 or 2");
    if (family == "dirichlet" && dim != 1) throw ConfigError("the Dirichlet kernel is one-dimensional");
    require_increasing(N_values, 4, "scan");
    if (norms.empty()) throw ConfigError("scan needs at least one norm");
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (tolerance && !(*tolerance > 0.0)) throw ConfigError("tolerance must be positive");
    if (k_range.lo > k_range.hi) throw ConfigError("k_range is empty");
    if (family == "dirichlet" && (target == ScanTarget::Tf || target == ScanTarget::sigma))
        throw ConfigError("the Dirichlet family only has the targets f and kernel");
    for (const NormRequest& n : norms) {
        const bool symbol_only = n.kind == NormKind::HormanderSup || n.kind == NormKind::BesovSup;
        if (symbol_only && target != ScanTarget::sigma)
            throw ConfigError(to_string(n.kind) + " applies to the target sigma only");
    }
}

nlohmann::json ScanConfig::to_json() const {
    nlohmann::json norms_j = nlohmann::json::array();
    for (const NormRequest& n : norms) norms_j.push_back(n.to_json());
    nlohmann::json j{{"family", family},
                     {"dim", dim},
                     {"target", to_string(target)},
                     {"N_values", N_values},
                     {"norms", norms_j},
                     {"seed", seed},
                     {"trials", trials},
                     {"k_range", {k_range.lo, k_range.hi}},
                     {"direction", {direction[0], direction[1]}}};
    if (tolerance) j["tolerance"] = *tolerance;
    if (predicted_slope) j["predicted_slope"] = *predicted_slope;
    if (grid_m) j["grid_m"] = *grid_m;
    if (grid_l) j["grid_l"] = *grid_l;
    return j;
}

ScanConfig ScanConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("scan config must be a JSON object");
    ScanConfig c;
    try {
        c.family = j.value("family", c.family);
        c.dim = j.value("dim", c.dim);
        if (j.contains("target")) c.target = scan_target_from_string(j.at("target").get<std::string>());
        if (j.contains("N_values")) c.N_values = j.at("N_values").get<std::vector<int>>();
        if (j.contains("norms")) {
            c.norms.clear();
            for (const auto& n : j.at("norms")) c.norms.push_back(NormRequest::from_json(n));
        }
        if (j.contains("norm")) c.norms = {NormRequest::from_json(j.at("norm"))};
        c.seed = j.value("seed", c.seed);
        c.trials = j.value("trials", c.trials);
        if (j.contains("tolerance")) c.tolerance = j.at("tolerance").get<double>();
        if (j.contains("predicted_slope")) c.predicted_slope = j.at("predicted_slope").get<double>();
        if (j.contains("grid_m")) c.grid_m = j.at("grid_m").get<std::size_t>();
        if (j.contains("grid_l")) c.grid_l = j.at("grid_l").get<double>();
        if (j.contains("k_range")) {
            auto k = j.at("k_range").get<std::vector<int>>();
            if (k.size() != 2) throw ConfigError("k_range needs two entries");
            c.k_range = {k[0], k[1]};
        }
        if (j.contains("direction")) {
            auto d = j.at("direction").get<std::vector<double>>();
            if (d.empty() || d.size() > 2) throw ConfigError("direction needs 1 or 2 entries");
            c.direction = {d[0], d.size() > 1 ? d[1] : 0.0};
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("scan config: ") + e.what());
    }
    c.validate();
    return c;
}

nlohmann::json ScalingReport::to_json() const {
    return {{"family", family.to_json()},
            {"norm", to_string(norm)},
            {"norm_params", norm_params},
            {"N_values", N_values},
            {"measured", measured},
            {"dropped_N", dropped_N},
            {"slope", slope},
            {"intercept", intercept},
            {"r_squared", r_squared},
            {"reliable", reliable},
            {"predicted_slope", predicted_slope},
            {"tolerance", tolerance},
            {"verdict", pass ? "pass" : "fail"},
            {"warnings", warnings}};
}

bool ScanResult::all_pass() const {
    return std::all_of(reports.begin(), reports.end(), [](const ScalingReport& r) { return r.pass; });
}

std::string ScanResult::csv() const {
    std::ostringstream out;
    out << "family,params,norm_kind,N,value,seed,grid_M,grid_L\n";
    for (const ScanRow& r : rows)
        out << r.family << ',' << csv_quote(r.params.dump()) << ',' << r.norm_kind << ',' << r.N << ','
            << fmt(r.value) << ',' << r.seed << ',' << r.grid_M << ',' << fmt(r.grid_L) << '\n';
    return out.str();
}

nlohmann::json ScanResult::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const ScalingReport& r : reports) j.push_back(r.to_json());
    return {{"reports", j}, {"pass", all_pass()}};
}

double predicted_slope(const ScanConfig& c, const NormRequest& norm) {
    if (c.predicted_slope) return *c.predicted_slope;
    const double n = c.dim;
    const bool lp_like = norm.kind == NormKind::Lp || norm.kind == NormKind::LorentzP2;
    auto fail = [&]() -> double {
        throw ConfigError("no predicted slope for " + c.family + "/" + to_string(c.target) + "/" + to_string(norm.kind) +
                          "; set predicted_slope");
    };
    if (c.family == "bump_pair") {
        if (c.target == ScanTarget::sigma) {
            if (norm.kind == NormKind::SobolevRS || norm.kind == NormKind::HormanderSup) return norm.s - n / norm.r;
            return fail();
        }
        if (lp_like) return -n + n / norm.p;
        if (norm.kind == NormKind::Linf) return -n;
        return fail();
    }
    if (c.family == "rademacher") {
        if (c.target == ScanTarget::sigma) {
            if (norm.kind == NormKind::SobolevRS || norm.kind == NormKind::HormanderSup) return norm.s;
            return fail();
        }
        if (c.target == ScanTarget::f && (lp_like || norm.kind == NormKind::Linf)) return 0.0;
        if (lp_like) return n * (1.0 / norm.p - 0.5);
        return fail();
    }
    // Dirichlet kernel on [0, 1].
    if (norm.kind == NormKind::Linf) return 1.0;
    if (lp_like && norm.p > 1.0) return 1.0 - 1.0 / norm.p;
    return fail();
}

namespace {

struct Sample {
    std::vector<double> values;  // one per norm
    std::vector<std::string> warnings;
    GridSpec grid;
};

GridSpec family_grid(const ScanConfig& c, int N) {
    GridSpec g = c.family == "bump_pair"    ? bump_pair_grid(N, c.dim)
                 : c.family == "rademacher" ? rademacher_grid(N, c.dim)
                                            : dirichlet_grid(N);
    if (c.grid_m || c.grid_l) g = GridSpec(c.dim, c.grid_m.value_or(g.points()), c.grid_l.value_or(g.length()));
    return g;
}

SampledField sample_symbol(const MultiplierSpec& sigma, const GridSpec& grid) {
    return SampledField::from_function(grid, Domain::frequency, [&](const Point& xi) { return sigma(xi); });
}

double field_norm(const SampledField& h, const NormRequest& n, const FramePair& frame) {
    switch (n.kind) {
    case NormKind::Lp: return lp_value(h, n.p);
    case NormKind::Linf: return lp_value(h, infinity);
    case NormKind::LorentzP2: return lorentz_p2_quasinorm(h, n.p).value;
    case NormKind::SobolevRS: return sobolev_norm(h, n.r, n.s).value;
    case NormKind::Besov: return besov_norm(h, n.p, n.q, n.s, frame).value;
    default: throw ConfigError(to_string(n.kind) + " needs the target sigma");
    }
}

double symbol_norm(const MultiplierSpec& sigma, const GridSpec& grid, const NormRequest& n, const ScanConfig& c,
                   const FramePair& frame, std::vector<std::string>& warnings) {
    auto note_unresolved = [&](const SupNormResult& r) {
        for (int k : r.unresolved_k) warnings.push_back("piece k=" + std::to_string(k) + " not resolved");
        if (r.boundary_ratio > 0.5)
            warnings.push_back("sup sits near the edge of the k range (ratio " + fmt(r.boundary_ratio) + ")");
    };
    switch (n.kind) {
    case NormKind::HormanderSup: {
        SupNormResult r = hormander_norm(sigma, n.r, n.s, frame, c.k_range);
        note_unresolved(r);
        return r.norm.value;
    }
    case NormKind::BesovSup: {
        SupNormResult r = hormander_besov_norm(sigma, n.p, n.q, n.s, frame, c.k_range);
        note_unresolved(r);
        return r.norm.value;
    }
    case NormKind::SobolevRS: {
        if (!piece_grid(sigma, 0).resolved) warnings.push_back("piece k=0 not resolved");
        return sobolev_norm(dyadic_piece(sigma, 0, frame), n.r, n.s).value;
    }
    default: return field_norm(sample_symbol(sigma, grid), n, frame);
    }
}

Sample measure(const ScanConfig& c, int N, int trial, const FramePair& frame) {
    Sample out;
    out.grid = family_grid(c, N);
    const std::uint64_t seed = derive_seed(c.seed, static_cast<std::uint64_t>(trial));

    MultiplierSpec sigma;
    SampledField f;
    if (c.family == "bump_pair") {
        BumpPair pair = gen_bump_pair(N, c.direction, out.grid, false);
        sigma = pair.sigma;
        f = std::move(pair.f);
    } else if (c.family == "rademacher") {
        const SignTable a(seed), b(derive_seed(seed, 0x2d));
        if (c.target == ScanTarget::sigma) {
            sigma = rademacher_symbol(N, a, c.dim, b);
        } else {
            RademacherPair pair = gen_rademacher(N, a, out.grid, c.dim, b);
            sigma = pair.sigma;
            f = std::move(pair.f);
        }
    } else {
        f = dirichlet_kernel(N, out.grid);
    }

    SampledField target;
    switch (c.target) {
    case ScanTarget::f: target = f; break;
    case ScanTarget::Tf: target = apply_multiplier(sigma, f); break;
    case ScanTarget::kernel:
        target = c.family == "dirichlet" ? f : dft_inverse(sample_symbol(sigma, out.grid));
        break;
    case ScanTarget::sigma: break;
    }
    for (const NormRequest& n : c.norms) {
        out.values.push_back(c.target == ScanTarget::sigma ? symbol_norm(sigma, out.grid, n, c, frame, out.warnings)
                                                           : field_norm(target, n, frame));
    }
    return out;
}

bool monte_carlo(const ScanConfig& c) {
    return c.family == "rademacher" && c.target != ScanTarget::f;
}

FamilySpec family_spec(const ScanConfig& c, int N, const GridSpec& grid) {
    FamilySpec fs;
    fs.grid = grid;
    if (c.family == "bump_pair") fs.variant = BumpPairSpec{N, c.direction};
    else if (c.family == "rademacher") fs.variant = RademacherSpec{N, c.seed, c.dim};
    else fs.variant = DirichletSpec{N};
    return fs;
}

} // namespace

ScanResult run_scan(const ScanConfig& config) {
    config.validate();
    const int trials = monte_carlo(config) ? config.trials : 1;
    const std::size_t nN = config.N_values.size();
    const FramePair frame;

    std::vector<double> predicted(config.norms.size());
    for (std::size_t k = 0; k < config.norms.size(); ++k) predicted[k] = predicted_slope(config, config.norms[k]);

    std::vector<Sample> samples(nN * static_cast<std::size_t>(trials));
    parallel_for(samples.size(), [&](std::size_t job) {
        const std::size_t i = job / static_cast<std::size_t>(trials);
        const int t = static_cast<int>(job % static_cast<std::size_t>(trials));
        const int N = config.N_values[i];
        try {
            samples[job] = measure(config, N, t, frame);
        } catch (const ResolutionError& e) {
            throw ResolutionError("N = " + std::to_string(N) + ": " + e.what(), e.required_points());
        } catch (const ParameterError& e) {
            throw ParameterError("N = " + std::to_string(N) + ": " + e.what());
        }
    });

    ScanResult result;
    const double tol = config.tolerance.value_or(config.family == "rademacher" ? 0.1 : 0.05);
    for (std::size_t k = 0; k < config.norms.size(); ++k) {
        const NormRequest& norm = config.norms[k];
        ScalingReport rep;
        rep.norm = norm.kind;
        rep.norm_params = norm.to_json();
        rep.predicted_slope = predicted[k];
        rep.tolerance = tol;
        std::vector<std::vector<std::string>> warned(nN);
        for (std::size_t i = 0; i < nN; ++i) {
            double sum = 0.0;
            for (int t = 0; t < trials; ++t) {
                const Sample& s = samples[i * static_cast<std::size_t>(trials) + static_cast<std::size_t>(t)];
                sum += s.values[k];
                warned[i].insert(warned[i].end(), s.warnings.begin(), s.warnings.end());
            }
            const double mean = sum / trials;
            const int N = config.N_values[i];
            const GridSpec& g = samples[i * static_cast<std::size_t>(trials)].grid;
            rep.N_values.push_back(N);
            rep.measured.push_back(mean);
            FamilySpec fs = family_spec(config, N, g);
            result.rows.push_back({config.family, fs.params_json(), to_string(norm.kind), N, mean, config.seed,
                                   g.points(), g.length()});
            for (const std::string& w : warned[i]) rep.warnings.push_back("N=" + std::to_string(N) + ": " + w);
        }
        rep.family = family_spec(config, config.N_values.back(),
                                 samples[(nN - 1) * static_cast<std::size_t>(trials)].grid);

        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < nN; ++i) {
            if (i == 0 && !warned[0].empty()) {
                rep.dropped_N.push_back(rep.N_values[0]);
                continue;
            }
            xs.push_back(rep.N_values[i]);
            ys.push_back(rep.measured[i]);
        }
        const LogLogFit fit = fit_loglog(xs, ys);
        rep.slope = fit.slope;
        rep.intercept = fit.intercept;
        rep.r_squared = fit.r_squared;
        rep.reliable = fit.reliable;
        if (!fit.reliable) rep.warnings.push_back("fit unreliable: r^2 = " + fmt(fit.r_squared));
        rep.pass = std::abs(rep.slope - rep.predicted_slope) <= tol;
        result.reports.push_back(std::move(rep));
    }
    return result;
}

void RegionConfig::validate() const {
    if (dim != 1) throw ConfigError("region mapping runs on the one-dimensional Rademacher family");
    if (inv_p.empty() || s.empty()) throw ConfigError("region grid is empty");
    for (double v : inv_p)
        if (!(v > 0.0 && v < 1.0)) throw ConfigError("1/p values must lie in (0,1)");
    for (double v : s)
        if (!(v > 0.0)) throw ConfigError("s values must be positive");
    require_increasing(N_values, 4, "region");
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (!(tolerance > 0.0) || !(boundary_band >= 0.0)) throw ConfigError("tolerance must be positive");
    if (r && !(*r > 0.0)) throw ConfigError("r must be positive");
}

nlohmann::json RegionConfig::to_json() const {
    nlohmann::json j{{"dim", dim},
                     {"inv_p", inv_p},
                     {"s", s},
                     {"N_values", N_values},
                     {"trials", trials},
                     {"seed", seed},
                     {"tolerance", tolerance},
                     {"boundary_band", boundary_band},
                     {"k_range", {k_range.lo, k_range.hi}}};
    if (r) j["r"] = *r;
    return j;
}

RegionConfig RegionConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("region config must be a JSON object");
    RegionConfig c;
    try {
        c.dim = j.value("dim", c.dim);
        if (j.contains("inv_p")) c.inv_p = j.at("inv_p").get<std::vector<double>>();
        if (j.contains("s")) c.s = j.at("s").get<std::vector<double>>();
        if (j.contains("N_values")) c.N_values = j.at("N_values").get<std::vector<int>>();
        c.trials = j.value("trials", c.trials);
        c.seed = j.value("seed", c.seed);
        c.tolerance = j.value("tolerance", c.tolerance);
        c.boundary_band = j.value("boundary_band", c.boundary_band);
        if (j.contains("r")) c.r = j.at("r").get<double>();
        if (j.contains("k_range")) {
            auto k = j.at("k_range").get<std::vector<int>>();
            if (k.size() != 2) throw ConfigError("k_range needs two entries");
            c.k_range = {k[0], k[1]};
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("region config: ") + e.what());
    }
    c.validate();
    return c;
}

std::string to_string(CellClass c) {
    switch (c) {
    case CellClass::inside: return "inside";
    case CellClass::outside: return "outside";
    case CellClass::indeterminate: return "indeterminate";
    case CellClass::skipped: return "skipped";
    }
    return "skipped";
}

std::string RegionMap::csv() const {
    std::ostringstream out;
    out << "inv_p,s,r,t_slope,h_slope,net,predicted_gap,class,reason\n";
    for (const RegionCell& c : cells)
        out << fmt(c.inv_p) << ',' << fmt(c.s) << ',' << fmt(c.r) << ',' << fmt(c.t_slope) << ',' << fmt(c.h_slope)
            << ',' << fmt(c.net) << ',' << fmt(c.predicted_gap) << ',' << to_string(c.cls) << ','
            << csv_quote(c.reason) << '\n';
    return out.str();
}

nlohmann::json RegionMap::to_json() const {
    nlohmann::json cells_j = nlohmann::json::array();
    for (const RegionCell& c : cells)
        cells_j.push_back({{"inv_p", c.inv_p},
                           {"s", c.s},
                           {"r", c.r},
                           {"t_slope", c.t_slope},
                           {"h_slope", c.h_slope},
                           {"net", c.net},
                           {"predicted_gap", c.predicted_gap},
                           {"class", to_string(c.cls)},
                           {"reason", c.reason}});
    return {{"config", config.to_json()}, {"cells", cells_j}};
}

RegionMap run_region(const RegionConfig& config) {
    config.validate();
    const std::size_t nN = config.N_values.size();
    const std::size_t T = static_cast<std::size_t>(config.trials);
    const double n = config.dim;
    const FramePair frame;

    // ||T f_N||_{p*} for every (N, trial, p), one transform per (N, trial).
    std::vector<double> p_star(config.inv_p.size());
    for (std::size_t a = 0; a < p_star.size(); ++a) p_star[a] = 1.0 / std::max(config.inv_p[a], 1.0 - config.inv_p[a]);
    std::vector<std::vector<double>> t_norms(nN * T);
    parallel_for(nN * T, [&](std::size_t job) {
        const int N = config.N_values[job / T];
        const std::uint64_t seed = derive_seed(config.seed, job % T);
        const GridSpec grid = rademacher_grid(N, 1);
        RademacherPair pair = gen_rademacher(N, SignTable(seed), grid, 1, SignTable(derive_seed(seed, 0x2d)));
        const SampledField tf = apply_multiplier(pair.sigma, pair.f);
        for (double p : p_star) t_norms[job].push_back(lp_value(tf, p));
    });

    std::vector<double> r_of(config.s.size());
    std::vector<bool> skip(config.s.size());
    for (std::size_t b = 0; b < config.s.size(); ++b) {
        r_of[b] = config.r.value_or(2.0 * n / config.s[b]);
        skip[b] = r_of[b] * config.s[b] <= n;
    }
    // Hormander norms for every (s, N, trial); the same sign tables serve every s.
    std::vector<double> h_norms(config.s.size() * nN * T, 0.0);
    parallel_for(h_norms.size(), [&](std::size_t job) {
        const std::size_t b = job / (nN * T);
        if (skip[b]) return;
        const std::size_t rest = job % (nN * T);
        const int N = config.N_values[rest / T];
        const std::uint64_t seed = derive_seed(config.seed, rest % T);
        const MultiplierSpec sigma = rademacher_symbol(N, SignTable(seed), 1, SignTable(derive_seed(seed, 0x2d)));
        h_norms[job] = hormander_norm(sigma, r_of[b], config.s[b], frame, config.k_range).norm.value;
    });

    std::vector<double> xs(config.N_values.begin(), config.N_values.end());
    auto mean_fit = [&](auto&& value_at) {
        std::vector<double> ys(nN);
        for (std::size_t i = 0; i < nN; ++i) {
            double sum = 0.0;
            for (std::size_t t = 0; t < T; ++t) sum += value_at(i, t);
            ys[i] = sum / static_cast<double>(T);
        }
        return fit_loglog(xs, ys).slope;
    };
    std::vector<double> t_slope(config.inv_p.size());
    for (std::size_t a = 0; a < t_slope.size(); ++a)
        t_slope[a] = mean_fit([&](std::size_t i, std::size_t t) { return t_norms[i * T + t][a]; });
    std::vector<double> h_slope(config.s.size(), 0.0);
    for (std::size_t b = 0; b < h_slope.size(); ++b)
        if (!skip[b]) h_slope[b] = mean_fit([&](std::size_t i, std::size_t t) { return h_norms[(b * nN + i) * T + t]; });

    RegionMap map;
    map.config = config;
    for (std::size_t a = 0; a < config.inv_p.size(); ++a) {
        for (std::size_t b = 0; b < config.s.size(); ++b) {
            RegionCell c;
            c.inv_p = config.inv_p[a];
            c.s = config.s[b];
            c.r = r_of[b];
            c.predicted_gap = std::abs(c.inv_p - 0.5) - c.s / n;
            if (skip[b]) {
                c.cls = CellClass::skipped;
                c.reason = "rs <= n is excluded by the hypothesis rs > n";
                map.cells.push_back(c);
                continue;
            }
            c.t_slope = t_slope[a];
            c.h_slope = h_slope[b];
            c.net = c.t_slope - c.h_slope;
            if (std::abs(c.predicted_gap) <= config.boundary_band) {
                c.cls = CellClass::indeterminate;
                c.reason = "within the boundary band of |1/p - 1/2| = s/n";
            } else if (c.net > config.tolerance) {
                c.cls = CellClass::outside;
                c.reason = "operator norm outgrows the symbol norm";
            } else {
                c.cls = CellClass::inside;
                c.reason = "net growth exponent within tolerance";
            }
            map.cells.push_back(c);
        }
    }
    return map;
}

} // namespace multlab
