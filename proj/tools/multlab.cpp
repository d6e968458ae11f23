// multlab command line: generate families, compute norms, apply multipliers,
// run N-sweeps and region maps, and re-run the invariant suites.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "multlab/errors.hpp"
#include "multlab/experiment.hpp"
#include "multlab/families.hpp"
#include "multlab/fft.hpp"
#include "multlab/multiplier.hpp"
#include "multlab/snapshot.hpp"
#include "multlab/verify.hpp"

namespace fs = std::filesystem;
using namespace multlab;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_failure = 1;
constexpr int exit_config = 2;

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
    std::optional<std::size_t> grid_m;
    std::optional<double> grid_l;
    std::optional<int> trials;
    std::optional<double> tolerance;
};

nlohmann::json load_config(const std::string& path) {
    if (path.empty()) return nlohmann::json::object();
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
}

fs::path out_path(const Common& c, const std::string& name) {
    fs::create_directories(c.out_dir);
    return fs::path(c.out_dir) / name;
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + p.string() + "'");
    out << text;
}

GridSpec override_grid(const Common& c, GridSpec g) {
    if (c.grid_m || c.grid_l) g = GridSpec(g.dim(), c.grid_m.value_or(g.points()), c.grid_l.value_or(g.length()));
    return g;
}

SampledField sample_symbol(const MultiplierSpec& sigma, const GridSpec& grid) {
    return SampledField::from_function(grid, Domain::frequency, [&](const Point& xi) { return sigma(xi); });
}

// Family spec from --config, with --family/--N/--dim and the common flags layered on top.
FamilySpec family_from(const Common& c, const std::string& family, std::optional<int> N, int dim) {
    nlohmann::json j = load_config(c.config);
    if (!family.empty()) j["family"] = family;
    if (!j.contains("family")) throw ConfigError("no family given; use --family or a config with \"family\"");
    if (!j.contains("params")) j["params"] = nlohmann::json::object();
    if (N) j["params"]["N"] = *N;
    if (c.seed) j["params"]["seed"] = *c.seed;
    if (dim != 0) j["params"]["dim"] = dim;
    FamilySpec spec;
    try {
        spec = FamilySpec::from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("family config: ") + e.what());
    }
    const int d = dim != 0 ? dim : j["params"].value("dim", 1);
    if (!j.contains("grid")) {
        if (auto* b = std::get_if<BumpPairSpec>(&spec.variant)) spec.grid = bump_pair_grid(b->N, d);
        else if (auto* r = std::get_if<RademacherSpec>(&spec.variant)) spec.grid = rademacher_grid(r->N, r->dim);
        else if (auto* k = std::get_if<DirichletSpec>(&spec.variant)) spec.grid = dirichlet_grid(k->N);
        else spec.grid = default_grid(d);
    }
    spec.grid = override_grid(c, spec.grid);
    return spec;
}

struct Generated {
    std::optional<SampledField> f;
    std::optional<MultiplierSpec> sigma;
    std::optional<SampledField> closed_form;
};

Generated generate(const FamilySpec& spec, bool closed_form) {
    Generated g;
    if (const auto* b = std::get_if<BumpPairSpec>(&spec.variant)) {
        BumpPair pair = gen_bump_pair(b->N, b->direction, spec.grid, closed_form);
        g.f = std::move(pair.f);
        g.sigma = pair.sigma;
        if (closed_form) g.closed_form = std::move(pair.closed_form_T);
    } else if (const auto* r = std::get_if<RademacherSpec>(&spec.variant)) {
        RademacherPair pair = gen_rademacher(r->N, SignTable(r->seed), spec.grid, r->dim);
        g.f = std::move(pair.f);
        g.sigma = pair.sigma;
    } else if (const auto* k = std::get_if<DirichletSpec>(&spec.variant)) {
        g.f = dirichlet_kernel(k->N, spec.grid);
    } else {
        const auto& m = std::get<MiyachiWainger>(spec.variant);
        g.sigma = gen_miyachi(m.a, m.b, spec.grid.dim());
    }
    return g;
}

int cmd_gen(const Common& c, const std::string& family, std::optional<int> N, int dim) {
    const FamilySpec spec = family_from(c, family, N, dim);
    const Generated g = generate(spec, false);
    nlohmann::json files = nlohmann::json::array();
    if (g.f) {
        write_snapshot(out_path(c, "f.mlf"), *g.f);
        files.push_back("f.mlf");
    }
    if (g.sigma) {
        write_snapshot(out_path(c, "sigma.mlf"), sample_symbol(*g.sigma, spec.grid));
        files.push_back("sigma.mlf");
    }
    const nlohmann::json meta{{"family", spec.to_json()}, {"files", files}};
    write_text(out_path(c, "family.json"), meta.dump(2) + "\n");
    std::cout << meta.dump(2) << "\n";
    return exit_pass;
}

int cmd_norm(const Common& c, std::string input, NormRequest req, bool kind_given) {
    const nlohmann::json j = load_config(c.config);
    if (input.empty()) input = j.value("input", std::string());
    if (input.empty()) throw ConfigError("norm needs --input or \"input\" in the config");
    if (!kind_given && j.contains("norm")) req = NormRequest::from_json(j.at("norm"));
    const SampledField h = read_snapshot(input);
    const FramePair frame;
    NormValue v;
    switch (req.kind) {
    case NormKind::Lp: v = lp_norm(h, req.p); break;
    case NormKind::Linf: v = lp_norm(h, infinity); break;
    case NormKind::LorentzP2: v = lorentz_p2_quasinorm(h, req.p); break;
    case NormKind::SobolevRS: v = sobolev_norm(h, req.r, req.s); break;
    case NormKind::Besov: v = besov_norm(h, req.p, req.q, req.s, frame); break;
    case NormKind::HormanderSup:
    case NormKind::BesovSup: {
        require_domain(h, Domain::frequency, "symbol norms");
        const MultiplierSpec sigma = MultiplierSpec::from_field(h);
        const SupNormResult r = req.kind == NormKind::HormanderSup
                                    ? hormander_norm(sigma, req.r, req.s, frame)
                                    : hormander_besov_norm(sigma, req.p, req.q, req.s, frame);
        v = r.norm;
        break;
    }
    }
    std::cout << v.to_json().dump(2) << "\n";
    return exit_pass;
}

int cmd_apply(const Common& c, const std::string& input, const std::string& sigma_path, const std::string& family,
              std::optional<int> N, int dim) {
    SampledField tf;
    nlohmann::json summary;
    if (!input.empty() || !sigma_path.empty()) {
        if (input.empty() || sigma_path.empty()) throw ConfigError("apply needs both --input and --sigma");
        const SampledField f = read_snapshot(input);
        const SampledField sigma = read_snapshot(sigma_path);
        require_domain(sigma, Domain::frequency, "apply --sigma");
        if (f.grid() != sigma.grid()) throw ContractError("apply: f and sigma snapshots use different grids");
        const SampledField fh = f.domain() == Domain::space ? dft_forward(f) : f;
        tf = dft_inverse(multiply(fh, sigma));
        summary = {{"input", input}, {"sigma", sigma_path}};
    } else {
        const FamilySpec spec = family_from(c, family, N, dim);
        const bool bump = std::holds_alternative<BumpPairSpec>(spec.variant);
        const Generated g = generate(spec, bump);
        if (!g.f || !g.sigma) throw ConfigError("family '" + spec.family_name() + "' has no (f, sigma) pair");
        tf = apply_multiplier(*g.sigma, *g.f);
        summary = {{"family", spec.to_json()}};
        if (g.closed_form) {
            summary["closed_form_sup_error"] = lp_value(add(tf, scale(*g.closed_form, -1.0)), infinity);
        }
    }
    write_snapshot(out_path(c, "Tf.mlf"), tf);
    summary["output"] = "Tf.mlf";
    summary["Tf_L2"] = lp_value(tf, 2.0);
    std::cout << summary.dump(2) << "\n";
    return exit_pass;
}

int cmd_scan(const Common& c) {
    nlohmann::json j = load_config(c.config);
    if (c.seed) j["seed"] = *c.seed;
    if (c.trials) j["trials"] = *c.trials;
    if (c.tolerance) j["tolerance"] = *c.tolerance;
    if (c.grid_m) j["grid_m"] = *c.grid_m;
    if (c.grid_l) j["grid_l"] = *c.grid_l;
    const ScanConfig config = ScanConfig::from_json(j);
    const ScanResult result = run_scan(config);
    write_text(out_path(c, "scan.csv"), result.csv());
    write_text(out_path(c, "scan.json"), result.to_json().dump(2) + "\n");
    for (const ScalingReport& r : result.reports) {
        std::printf("%-5s %-12s %-40s slope %+.4f predicted %+.4f tol %.3f r2 %.4f%s\n", r.pass ? "PASS" : "FAIL",
                    to_string(r.norm).c_str(), r.norm_params.dump().c_str(), r.slope, r.predicted_slope, r.tolerance,
                    r.r_squared, r.reliable ? "" : " (unreliable)");
        for (const std::string& w : r.warnings) std::printf("      warning: %s\n", w.c_str());
    }
    return result.all_pass() ? exit_pass : exit_failure;
}

int cmd_region(const Common& c) {
    nlohmann::json j = load_config(c.config);
    if (c.seed) j["seed"] = *c.seed;
    if (c.trials) j["trials"] = *c.trials;
    if (c.tolerance) j["tolerance"] = *c.tolerance;
    const RegionConfig config = RegionConfig::from_json(j);
    const RegionMap map = run_region(config);
    write_text(out_path(c, "region.csv"), map.csv());
    write_text(out_path(c, "region.json"), map.to_json().dump(2) + "\n");

    // Rows are 1/p, columns s.
    const std::size_t ns = config.s.size();
    std::printf("%8s", "1/p \\ s");
    for (double s : config.s) std::printf(" %14.3f", s);
    std::printf("\n");
    bool monotone = true;
    for (std::size_t a = 0; a < config.inv_p.size(); ++a) {
        std::printf("%8.3f", config.inv_p[a]);
        for (std::size_t b = 0; b < ns; ++b) {
            const RegionCell& cell = map.cells[a * ns + b];
            std::printf(" %5s(%+.3f)", to_string(cell.cls).substr(0, 5).c_str(), cell.net);
            if (b > 0) {
                const RegionCell& prev = map.cells[a * ns + b - 1];
                if (prev.cls != CellClass::skipped && cell.cls != CellClass::skipped && cell.net > prev.net + 1e-12)
                    monotone = false;
            }
        }
        std::printf("\n");
    }
    if (!monotone) std::printf("FAIL net exponent increases with s in some row\n");
    return monotone ? exit_pass : exit_failure;
}

int cmd_verify(const Common& c, const std::string& suite) {
    const VerifyReport report = run_verify(suite, c.seed.value_or(0));
    std::cout << report.text();
    if (c.out_dir != ".") write_text(out_path(c, "verify.json"), report.to_json().dump(2) + "\n");
    return report.pass() ? exit_pass : exit_failure;
}

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config, "JSON config file");
    sub->add_option("--seed", c.seed, "Random seed");
    sub->add_option("--out-dir", c.out_dir, "Output directory");
    sub->add_option("--grid-m", c.grid_m, "Grid points per axis")->check(CLI::PositiveNumber);
    sub->add_option("--grid-l", c.grid_l, "Grid box length")->check(CLI::PositiveNumber);
    sub->add_option("--trials", c.trials, "Monte Carlo sign tables per N")->check(CLI::PositiveNumber);
    sub->add_option("--tolerance", c.tolerance, "Slope tolerance")->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier multiplier experiments on uniform grids"};
    app.require_subcommand(1);
    Common c;

    std::string family;
    std::optional<int> N;
    int dim = 0;
    auto* gen = app.add_subcommand("gen", "Generate a family and write snapshots");
    add_common(gen, c);
    gen->add_option("--family", family, "bump_pair, rademacher, dirichlet or miyachi");
    gen->add_option("--N", N, "Family parameter N");
    gen->add_option("--dim", dim, "Dimension (1 or 2)");

    std::string input, sigma_path;
    NormRequest req;
    std::string kind = "Lp";
    auto* norm = app.add_subcommand("norm", "Norm of a snapshot");
    add_common(norm, c);
    norm->add_option("--input", input, "Snapshot file");
    auto* kind_opt = norm->add_option("--kind", kind, "Lp, Linf, LorentzP2, SobolevRS, Besov, HormanderSup, BesovSup");
    norm->add_option("--p", req.p, "Integrability exponent");
    norm->add_option("--q", req.q, "Besov summation exponent");
    norm->add_option("--r", req.r, "Sobolev integrability exponent");
    norm->add_option("--s", req.s, "Smoothness");

    auto* apply = app.add_subcommand("apply", "Apply a multiplier");
    add_common(apply, c);
    apply->add_option("--input", input, "Snapshot of f");
    apply->add_option("--sigma", sigma_path, "Snapshot of sigma on the frequency grid");
    apply->add_option("--family", family, "Family providing (f, sigma)");
    apply->add_option("--N", N, "Family parameter N");
    apply->add_option("--dim", dim, "Dimension (1 or 2)");

    auto* scan = app.add_subcommand("scan", "N-sweep with log-log slope fits");
    add_common(scan, c);

    auto* region = app.add_subcommand("region", "Empirical (1/p, s) boundedness map");
    add_common(region, c);

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "Run invariant suites");
    add_common(verify, c);
    verify->add_option("suite", suite, "frames, norms, engine, families, interpolation or all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_pass : exit_config;
    }

    try {
        if (*gen) return cmd_gen(c, family, N, dim);
        if (*norm) {
            const bool kind_given = kind_opt->count() > 0;
            try {
                req.kind = norm_kind_from_string(kind);
            } catch (const ParameterError& e) {
                throw ConfigError(e.what());
            }
            return cmd_norm(c, input, req, kind_given);
        }
        if (*apply) return cmd_apply(c, input, sigma_path, family, N, dim);
        if (*scan) return cmd_scan(c);
        if (*region) return cmd_region(c);
        if (*verify) return cmd_verify(c, suite);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return exit_config;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return exit_config;
    } catch (const ResolutionError& e) {
        std::cerr << "resolution error: " << e.what();
        if (e.required_points() != 0) std::cerr << " (needs M >= " << e.required_points() << ")";
        std::cerr << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_config;
}
