#include "cesaro/cli.hpp"

#include "cesaro/bmoa.hpp"
#include "cesaro/config.hpp"
#include "cesaro/errors.hpp"
#include "cesaro/operators.hpp"
#include "cesaro/report.hpp"
#include "cesaro/spectra.hpp"
#include "cesaro/weights.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace cesaro {

namespace {

ClassifierConfig finer(ClassifierConfig c) {
    c.circle_levels += 1;
    c.disk_levels += 1;
    c.membership_last += 1;
    return c;
}

bool decided(Label l) { return l == Label::Resolvent || l == Label::Spectrum; }

void write_csv_if_requested(const SpectrumMap& map, const std::string& path) {
    if (path.empty()) return;
    std::ostringstream out;
    write_map_csv(out, map);
    write_text(out.str(), path);
}

int exit_for(Verdict v) { return v == Verdict::Inconclusive ? kExitInconclusive : kExitPass; }

json convergence_json(const SpectrumMap& a, const SpectrumMap& b, std::size_t& decided_flips) {
    std::size_t changes = 0;
    decided_flips = 0;
    json flips = json::array();
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        if (a.cells[i].label == b.cells[i].label) continue;
        ++changes;
        if (decided(a.cells[i].label) && decided(b.cells[i].label)) {
            ++decided_flips;
            flips.push_back({{"re", a.cells[i].lambda.real()},
                             {"im", a.cells[i].lambda.imag()},
                             {"from", to_string(a.cells[i].label)},
                             {"to", to_string(b.cells[i].label)}});
        }
    }
    return {{"levels_added", 1}, {"label_changes", changes}, {"decided_flips", decided_flips}, {"flips", flips}};
}

int cmd_spectrum_map(const RunConfig& cfg) {
    const auto grid = cfg.grid();
    const auto space = cfg.space();
    const auto g = cfg.symbol();
    const auto ccfg = cfg.classifier();
    const auto map = spectrum_map(PointClassifier(g, space, ccfg), grid, cfg.threads());

    json doc = provenance(cfg, "spectrum-map");
    doc["symbol"] = g.name();
    doc["space"] = space.describe();
    doc["map"] = map_summary(map);
    int code = kExitPass;
    if (cfg.flag("check.convergence")) {
        const auto fine = spectrum_map(PointClassifier(g, space, finer(ccfg)), grid, cfg.threads());
        std::size_t flips = 0;
        doc["convergence"] = convergence_json(map, fine, flips);
        if (flips > 0) code = kExitInconclusive;
    }
    write_csv_if_requested(map, cfg.text("out.csv").empty() ? "spectrum_map.csv" : cfg.text("out.csv"));
    write_json(doc, cfg.text("out.json"));
    return code;
}

int cmd_classify(const RunConfig& cfg) {
    const auto space = cfg.space();
    const auto g = cfg.symbol();
    const cplx lambda = cfg.complex("point.lambda");
    const auto report = PointClassifier(g, space, cfg.classifier()).classify(lambda);

    json doc = provenance(cfg, "classify");
    doc["symbol"] = g.name();
    doc["space"] = space.describe();
    doc["point"] = to_json(report);
    try {
        ProbeOptions opt;
        opt.max_degree = 4 * static_cast<std::size_t>(std::max(1L, cfg.integer("series.degree")));
        const auto radii = dyadic_radii(static_cast<int>(cfg.integer("probe.first")),
                                        static_cast<int>(cfg.integer("probe.last")));
        doc["probe"] = to_json(resolvent_probe(g, lambda, space, radii, opt));
    } catch (const NumericalError& e) {
        doc["probe"] = {{"error", e.what()}};
    }
    int code = decided(report.label) || report.label == Label::Origin ? kExitPass : kExitInconclusive;
    if (cfg.flag("check.convergence")) {
        const auto fine = PointClassifier(g, space, finer(cfg.classifier())).classify(lambda);
        const bool flip = fine.label != report.label;
        doc["convergence"] = {{"levels_added", 1}, {"label", to_string(fine.label)}, {"flip", flip}};
        if (flip) code = kExitInconclusive;
    }
    write_json(doc, cfg.text("out.json"));
    return code;
}

int cmd_radius(const RunConfig& cfg) {
    const auto space = cfg.space();
    const auto g = cfg.symbol();
    const auto n = static_cast<std::size_t>(cfg.integer("radius.N"));
    const int nmax = static_cast<int>(cfg.integer("radius.nmax"));
    if (n < 1 || nmax < 1) throw ConfigError("radius.N", "radius.N and radius.nmax must be positive");
    const auto rho = spectral_radius_estimate(symbol_series(g, n), space, n, nmax, cfg.real("tol.norm"));

    json doc = provenance(cfg, "radius");
    doc["symbol"] = g.name();
    doc["space"] = space.describe();
    double best = 0.0;
    for (double r : rho) best = std::max(best, r);
    doc["radius"] = {{"N", n}, {"nmax", nmax}, {"rho", rho}, {"rho_last", rho.back()}, {"rho_max", best}};
    write_json(doc, cfg.text("out.json"));
    return kExitPass;
}

struct WeightRun {
    std::string condition;
    CharacteristicReport report{Condition::AInfinity, {}};
};

WeightRun run_weight(const RunConfig& cfg, int circle_levels, int disk_levels) {
    const std::string name = cfg.text("weight.name");
    const double e = cfg.real("weight.exponent");
    const auto space = cfg.space();
    std::string cond = cfg.text("weight.condition");
    if (cond == "auto") {
        cond = name == "disk-power"   ? "b2"
               : name == "exp-symbol" ? (space.is_hardy() ? "ainfty" : "binfty")
                                      : "a2";
    }
    WeightRun out{cond};
    const bool circle = cond == "ainfty" || cond == "a2";
    const cplx lambda = cfg.complex("weight.lambda");
    if (name == "exp-symbol" && lambda == cplx{0.0}) {
        throw ConfigError("weight.lambda", "weight.lambda must be non-zero");
    }
    const auto g = name == "exp-symbol" ? cfg.symbol() : SymbolSpec::zero();

    if (circle) {
        if (name == "disk-power") throw ConfigError("weight.condition", "disk-power needs binfty or b2");
        const auto tree = ArcDyadicTree::make(circle_levels,
                                              static_cast<std::size_t>(cfg.integer("weights.samples_per_arc")));
        const std::size_t m = tree.samples(tree.levels());
        const auto w = CircleWeight::from_log(tree, [&](double t) {
            if (name == "circle-power") return e * std::log(2.0 * std::abs(std::sin(0.5 * t)));
            if (name == "exp-symbol") return (g.boundary_value(t, m) / lambda).real();
            return 0.0;
        });
        out.report = cond == "a2" ? a2_characteristic(w, tree) : ainfty_characteristic(w, tree);
        return out;
    }
    const auto grid = CarlesonGrid::make(disk_levels);
    const double alpha = space.is_hardy() ? 0.0 : space.alpha;
    const auto w = DiskWeight::from_log(grid.disk(), [&](cplx z) {
        if (name == "disk-power") return e * std::log1p(-std::norm(z));
        if (name == "circle-power") return e * std::log(std::abs(1.0 - z));
        if (name == "exp-symbol") return (g.value(z) / lambda).real() + alpha * std::log1p(-std::norm(z));
        return 0.0;
    });
    out.report = cond == "b2" ? b2_characteristic(w, grid) : binfty_characteristic(w, grid);
    return out;
}

int cmd_weights(const RunConfig& cfg) {
    const int cl = static_cast<int>(cfg.integer("weights.levels"));
    const int dl = static_cast<int>(cfg.integer("weights.disk_levels"));
    const auto run = run_weight(cfg, cl, dl);

    json doc = provenance(cfg, "weights");
    doc["weight"] = {{"name", cfg.text("weight.name")},
                     {"exponent", cfg.real("weight.exponent")},
                     {"lambda", complex_json(cfg.complex("weight.lambda"))}};
    doc["characteristic"] = to_json(run.report);
    int code = exit_for(run.report.verdict);
    if (cfg.flag("check.convergence")) {
        const auto fine = run_weight(cfg, cl + 1, dl + 1);
        const bool flip = fine.report.verdict != run.report.verdict;
        doc["convergence"] = {{"levels_added", 1}, {"verdict", to_string(fine.report.verdict)}, {"flip", flip}};
        if (flip) code = kExitInconclusive;
    }
    write_json(doc, cfg.text("out.json"));
    return code;
}

ArcDyadicTree arc_tree(const RunConfig& cfg) {
    return ArcDyadicTree::make(static_cast<int>(cfg.integer("weights.levels")),
                               static_cast<std::size_t>(cfg.integer("weights.samples_per_arc")));
}

int cmd_gj(const RunConfig& cfg) {
    const auto tree = arc_tree(cfg);
    const std::string kind = cfg.text("gj.phi");
    const double a = cfg.real("gj.a");
    RealBoundaryFunction phi;
    if (kind == "symbol-re") {
        phi = RealBoundaryFunction::real_part(cfg.symbol(), tree).scaled(a);
    } else if (kind == "symbol-im") {
        phi = RealBoundaryFunction::imag_part(cfg.symbol(), tree).scaled(a);
    } else if (kind == "log-power") {
        phi = RealBoundaryFunction::sample(
            tree, [&](double t) { return a * std::log(2.0 * std::abs(std::sin(0.5 * t))); }, {0.0});
    } else if (kind == "cosine") {
        phi = RealBoundaryFunction::sample(tree, [&](double t) { return a * std::cos(t); });
    } else {
        phi = RealBoundaryFunction::sample(tree, [](double) { return 0.0; });
    }
    const auto report = gj_level(phi, tree, cfg.real("tol.gj"));

    json doc = provenance(cfg, "gj");
    doc["phi"] = {{"name", kind}, {"a", a}};
    doc["bmo_norm"] = bmo_norm(phi, tree);
    doc["gj"] = to_json(report);
    write_json(doc, cfg.text("out.json"));
    return kExitPass;
}

AxesConfig axes_config(const RunConfig& cfg) {
    AxesConfig a;
    a.points_per_half_axis = static_cast<int>(cfg.integer("axes.points"));
    a.classifier = cfg.classifier();
    a.norm_levels = static_cast<int>(cfg.integer("weights.levels"));
    a.threads = cfg.threads();
    return a;
}

int cmd_distance(const RunConfig& cfg) {
    const auto g = cfg.symbol();
    const auto space = cfg.space();
    const auto tree = arc_tree(cfg);
    const auto dist = dist_hinfty_report(g, tree, cfg.real("tol.gj"));
    const auto axes = axes_test(g, space, axes_config(cfg));

    json doc = provenance(cfg, "distance");
    doc["symbol"] = g.name();
    doc["space"] = space.describe();
    doc["lambda_re"] = dist.re.estimate;
    doc["lambda_im"] = dist.im.estimate;
    json verdicts = json::array();
    for (const auto& p : axes.points) verdicts.push_back(to_string(p.label));
    doc["verdicts"] = verdicts;
    doc["proxy_distance"] = dist.proxy;
    doc["zero_distance"] = dist.zero_distance;
    doc["verdict"] = to_string(axes.verdict);
    doc["gj_re"] = to_json(dist.re);
    doc["gj_im"] = to_json(dist.im);
    doc["axes"] = to_json(axes);
    write_json(doc, cfg.text("out.json"));
    return axes.verdict == AxesVerdict::Inconclusive ? kExitInconclusive : kExitPass;
}

int cmd_verify(const RunConfig& cfg, const std::string& theorem) {
    const auto g = cfg.symbol();
    const auto space = cfg.space();
    json doc = provenance(cfg, "verify " + theorem);
    doc["symbol"] = g.name();
    doc["space"] = space.describe();
    int code = kExitPass;

    if (theorem == "stability") {
        const auto h = cfg.perturbation();
        doc["perturbation"] = h.name();
        const auto r = stability_harness(g, h, space, cfg.grid(), cfg.classifier(), cfg.quasinil(),
                                         cfg.threads());
        doc["report"] = to_json(r);
        code = !r.probative ? kExitInconclusive : r.pass ? kExitPass : kExitFail;
        write_csv_if_requested(r.perturbed, cfg.text("out.csv"));
    } else if (theorem == "star" || theorem == "sector") {
        const auto map = spectrum_map(PointClassifier(g, space, cfg.classifier()), cfg.grid(), cfg.threads());
        doc["map"] = map_summary(map);
        if (theorem == "star") {
            const auto v = star_shape_check(map);
            doc["report"] = {{"pass", v.empty()}, {"violations", to_json(v, map)}};
            code = v.empty() ? kExitPass : kExitFail;
        } else {
            const auto r = sector_inclusion_check(map, cfg.complex("point.lambda"), cfg.real("sector.r"),
                                                  cfg.real("sector.rprime"));
            doc["report"] = to_json(r, map);
            code = r.pass ? kExitPass : kExitFail;
        }
        write_csv_if_requested(map, cfg.text("out.csv"));
    } else if (theorem == "closure") {
        const auto axes = axes_test(g, space, axes_config(cfg));
        doc["report"] = to_json(axes);
        code = axes.verdict == AxesVerdict::InClosure      ? kExitPass
               : axes.verdict == AxesVerdict::NotInClosure ? kExitFail
                                                           : kExitInconclusive;
    } else {
        const auto r = quasinil_certificate(g, space, cfg.quasinil());
        doc["report"] = to_json(r);
        code = r.quasi_nilpotent ? kExitPass : kExitFail;
    }
    doc["exit_code"] = code;
    write_json(doc, cfg.text("out.json"));
    return code;
}

int fail(int code, const std::string& what) {
    std::cerr << "cesaro: " << what << "\n";
    return code;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Spectra of integration operators on Hardy and Bergman spaces", "cesaro"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(CESARO_VERSION));

    std::string config_file;
    std::vector<std::string> assignments;
    bool check_convergence = false;
    app.add_option("--config", config_file, "key=value configuration file");
    app.add_option("--set", assignments, "override one key, as key=value")->take_all();
    app.add_flag("--check-convergence", check_convergence, "rerun one level finer and report label flips");

    std::map<std::string, std::string> flags;
    for (const auto& k : RunConfig::keys()) {
        if (k.key == "check.convergence") continue;
        app.add_option("--" + k.key, flags[k.key], k.help);
    }

    struct Command {
        std::string name;
        std::string help;
        CLI::App* sub = nullptr;
    };
    std::vector<Command> commands = {
        {"spectrum-map", "label a rectangle of spectral parameters"},
        {"classify", "classify one spectral parameter and probe the resolvent"},
        {"radius", "spectral radius estimates of the truncated operator"},
        {"weights", "characteristic of a built-in weight"},
        {"gj", "Garnett-Jones level of a boundary function"},
        {"distance", "distance proxy to bounded symbols and the axes test"},
        {"verify", "run a theorem harness"},
    };
    for (auto& c : commands) c.sub = app.add_subcommand(c.name, c.help);
    std::string theorem;
    commands.back()
        .sub->add_option("theorem", theorem, "stability|star|sector|closure|quasinil")
        ->required()
        ->check(CLI::IsMember({"stability", "star", "sector", "closure", "quasinil"}));

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitConfig;
    }

    try {
        RunConfig cfg;
        if (!config_file.empty()) cfg.load_file(config_file);
        for (const auto& a : assignments) {
            const auto eq = a.find('=');
            if (eq == std::string::npos) throw ConfigError(a, "--set expects key=value, got '" + a + "'");
            cfg.set(a.substr(0, eq), a.substr(eq + 1));
        }
        for (const auto& [key, value] : flags) {
            if (app.count("--" + key) > 0) cfg.set(key, value);
        }
        if (check_convergence) cfg.set("check.convergence", "true");

        const std::string name = app.get_subcommands().front()->get_name();
        if (name == "spectrum-map") return cmd_spectrum_map(cfg);
        if (name == "classify") return cmd_classify(cfg);
        if (name == "radius") return cmd_radius(cfg);
        if (name == "weights") return cmd_weights(cfg);
        if (name == "gj") return cmd_gj(cfg);
        if (name == "distance") return cmd_distance(cfg);
        return cmd_verify(cfg, theorem);
    } catch (const ConfigError& e) {
        return fail(kExitConfig, std::string("config error [") + e.key() + "]: " + e.what());
    } catch (const NumericalError& e) {
        return fail(kExitNumerical, std::string("numerical error: ") + e.what());
    } catch (const DomainError& e) {
        return fail(kExitConfig, std::string("invalid input: ") + e.what());
    } catch (const UnsupportedSpace& e) {
        return fail(kExitConfig, std::string("unsupported space: ") + e.what());
    } catch (const std::exception& e) {
        return fail(kExitNumerical, std::string("error: ") + e.what());
    }
}

int run_cli(int argc, char** argv) { return run_cli(std::vector<std::string>(argv, argv + argc)); }

} // namespace cesaro
