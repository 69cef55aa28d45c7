#include "cesaro/report.hpp"

#include "cesaro/errors.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cesaro {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

json region_json(const RegionId& r) {
    return {{"level", r.level}, {"index", r.index}, {"shifted", r.shifted}, {"center", r.center}};
}

json cell_json(const SpectrumMap& map, std::size_t i) {
    const auto& c = map.cells[i];
    return {{"ix", i % static_cast<std::size_t>(map.grid.nx)},
            {"iy", i / static_cast<std::size_t>(map.grid.nx)},
            {"re", c.lambda.real()},
            {"im", c.lambda.imag()},
            {"label", to_string(c.label)}};
}

} // namespace

json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json provenance(const RunConfig& cfg, const std::string& command) {
    json config = json::object();
    for (const auto& [k, v] : cfg.canonical()) {
        if (k == "threads" || k == "out.csv" || k == "out.json") continue;
        config[k] = v;
    }
    json modules = json::object();
    for (const char* m : {"analytic-core", "operators", "weights", "spectra", "bmoa-distance", "cli"}) {
        modules[m] = CESARO_VERSION;
    }
    return {{"tool", "cesaro"},
            {"version", CESARO_VERSION},
            {"command", command},
            {"config_hash", cfg.hash()},
            {"modules", modules},
            {"config", config}};
}

json to_json(const CharacteristicReport& r) {
    json levels = json::array();
    for (const auto& l : r.levels) {
        levels.push_back({{"level", l.level}, {"max", l.max}, {"argmax", region_json(l.argmax)}});
    }
    return {{"condition", to_string(r.condition)},
            {"levels", levels},
            {"verdict", to_string(r.verdict)},
            {"growth", r.growth},
            {"increment_ratio", r.increment_ratio}};
}

json to_json(const ResolventProbeReport& r) {
    json probes = json::array();
    for (const auto& p : r.probes) {
        probes.push_back({{"w", complex_json(p.w)}, {"degree", p.degree}, {"ratio", p.ratio}});
    }
    return {{"lambda", complex_json(r.lambda)}, {"probes", probes}, {"exponent", r.exponent}};
}

json to_json(const GJReport& r) {
    json cands = json::array();
    for (const auto& c : r.candidates) cands.push_back({{"lambda", c.lambda}, {"verdict", to_string(c.verdict)}});
    return {{"lambda_lo", r.lambda_lo},
            {"lambda_hi", r.lambda_hi},
            {"estimate", r.estimate},
            {"uncertainty", r.uncertainty},
            {"band", r.band},
            {"candidates", cands}};
}

json to_json(const PointReport& r) {
    return {{"lambda", complex_json(r.lambda)},
            {"label", to_string(r.label)},
            {"membership", to_string(r.membership)},
            {"weight_verdict", to_string(r.weight)},
            {"growth_exponent", r.growth_exponent},
            {"membership_log", r.membership_log},
            {"membership_growth", r.membership_growth.growth},
            {"membership_increment_ratio", r.membership_growth.increment_ratio},
            {"weight", to_json(r.weight_report)},
            {"note", r.note}};
}

json to_json(const AxesReport& r) {
    json pts = json::array();
    for (const auto& p : r.points) {
        pts.push_back({{"re", p.lambda.real()}, {"im", p.lambda.imag()}, {"label", to_string(p.label)}});
    }
    return {{"verdict", to_string(r.verdict)},
            {"eps0", r.eps0},
            {"lambda_max", r.lambda_max},
            {"norm_proxy", r.norm_proxy},
            {"points", pts}};
}

json to_json(const QuasinilReport& r) {
    json out = {{"quasi_nilpotent", r.quasi_nilpotent},
                {"sup_bounded", r.sup_bounded},
                {"sup_norm", r.sup_norm},
                {"rho", r.rho},
                {"rho_threshold", r.rho_threshold},
                {"rho_below_threshold", r.rho_below_threshold}};
    out["axes"] = r.axes ? to_json(*r.axes) : json(nullptr);
    return out;
}

json to_json(const SectorReport& r, const SpectrumMap& map) {
    json bad = json::array();
    for (auto i : r.counterexamples) bad.push_back(cell_json(map, i));
    return {{"pass", r.pass},
            {"lambda", complex_json(r.lambda)},
            {"r", r.r},
            {"rprime", r.rprime},
            {"specbound", r.specbound},
            {"halfangle", r.halfangle},
            {"sampled", r.sampled},
            {"outside_map", r.outside_map},
            {"counterexamples", bad}};
}

json to_json(const StabilityReport& r) {
    json all = json::array(), outside = json::array();
    for (auto i : r.disagreements) all.push_back(cell_json(r.base, i));
    for (auto i : r.disagreements_outside_band) outside.push_back(cell_json(r.base, i));
    return {{"pass", r.pass},
            {"probative", r.probative},
            {"agreement", r.agreement},
            {"decided_both", r.decided_both},
            {"perturbation", to_json(r.perturbation)},
            {"base", map_summary(r.base)},
            {"perturbed", map_summary(r.perturbed)},
            {"disagreements", all},
            {"disagreements_outside_band", outside}};
}

json to_json(const std::vector<StarViolation>& v, const SpectrumMap& map) {
    json out = json::array();
    for (const auto& s : v) {
        out.push_back({{"cell", cell_json(map, s.cell)}, {"target", cell_json(map, s.target)}, {"t", s.t}});
    }
    return out;
}

json map_summary(const SpectrumMap& map) {
    const auto& g = map.grid;
    json counts = json::object();
    for (Label l : {Label::Resolvent, Label::Spectrum, Label::Undecided, Label::Origin}) {
        counts[to_string(l)] = map.count(l);
    }
    return {{"grid",
             {{"re_min", g.re_min},
              {"re_max", g.re_max},
              {"im_min", g.im_min},
              {"im_max", g.im_max},
              {"nx", g.nx},
              {"ny", g.ny}}},
            {"eps0", map.eps0},
            {"counts", counts}};
}

void write_map_csv(std::ostream& out, const SpectrumMap& map) {
    out << "re,im,label,growth_exponent,weight_verdict\n";
    for (const auto& c : map.cells) {
        const bool classified = c.label == Label::Resolvent || c.label == Label::Spectrum ||
                                (c.label == Label::Undecided && c.note.empty());
        out << fmt(c.lambda.real()) << ',' << fmt(c.lambda.imag()) << ',' << to_string(c.label) << ','
            << (classified ? fmt(c.growth_exponent) : std::string("nan")) << ','
            << (classified ? to_string(c.weight) : std::string("none")) << '\n';
    }
}

void write_text(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("out", "cannot write '" + path + "'");
    out << text;
}

void write_json(const json& doc, const std::string& path) { write_text(doc.dump(2) + "\n", path); }

} // namespace cesaro
