#include "cesaro/config.hpp"

#include "cesaro/errors.hpp"
#include "cesaro/parallel.hpp"
#include "cesaro/series.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace cesaro {

namespace {

using Type = RunConfig::Type;

const std::vector<std::string> kSymbolKinds = {"cesaro-log", "polynomial", "blaschke",
                                               "power-log",  "explicit",   "zero"};

std::vector<RunConfig::KeyInfo> make_keys() {
    std::vector<RunConfig::KeyInfo> k;
    auto add = [&](std::string key, Type t, std::string fallback, std::string help,
                   std::vector<std::string> choices = {}) {
        k.push_back({std::move(key), t, std::move(fallback), std::move(choices), std::move(help)});
    };
    for (const std::string prefix : {"symbol", "perturb"}) {
        const bool main = prefix == "symbol";
        add(prefix + ".kind", Type::Choice, main ? "cesaro-log" : "zero", "symbol family", kSymbolKinds);
        add(prefix + ".coeffs", Type::ComplexList, "", "Taylor coefficients for polynomial/explicit");
        add(prefix + ".file", Type::Path, "", "series CSV (index,re,im) for explicit");
        add(prefix + ".a", Type::Complex, "0.5", "Blaschke zero or power-log exponent");
        add(prefix + ".scale", Type::Complex, "1", "constant multiplier");
    }
    add("space.kind", Type::Choice, "hardy", "function space", {"hardy", "bergman"});
    add("space.p", Type::Real, "2", "integrability exponent");
    add("space.alpha", Type::Real, "0", "Bergman weight exponent");
    add("grid.re_min", Type::Real, "-0.5", "map rectangle");
    add("grid.re_max", Type::Real, "2.5", "map rectangle");
    add("grid.im_min", Type::Real, "-1.5", "map rectangle");
    add("grid.im_max", Type::Real, "1.5", "map rectangle");
    add("grid.nx", Type::Integer, "160", "cells along the real axis");
    add("grid.ny", Type::Integer, "160", "cells along the imaginary axis");
    add("grid.eps0", Type::Text, "auto", "origin exclusion radius, or auto");
    add("weights.levels", Type::Integer, "10", "dyadic arc levels");
    add("weights.samples_per_arc", Type::Integer, "16", "circle samples per finest arc");
    add("weights.disk_levels", Type::Integer, "8", "Carleson box levels");
    add("membership.first", Type::Integer, "3", "first membership radius 1-2^-j");
    add("membership.last", Type::Integer, "12", "last membership radius 1-2^-j");
    add("series.degree", Type::Integer, "1024", "working degree of series");
    add("boundary.samples", Type::Integer, "4096", "boundary grid size");
    add("tol.gj", Type::Real, "0.01", "Garnett-Jones bisection tolerance");
    add("tol.norm", Type::Real, "1e-10", "power iteration tolerance");
    add("radius.N", Type::Integer, "256", "compression size");
    add("radius.nmax", Type::Integer, "32", "highest operator power");
    add("radius.threshold", Type::Real, "0.15", "quasi-nilpotency threshold for rho");
    add("point.lambda", Type::Complex, "1", "spectral parameter");
    add("probe.first", Type::Integer, "3", "first probe radius 1-2^-j");
    add("probe.last", Type::Integer, "8", "last probe radius 1-2^-j");
    add("sector.r", Type::Real, "0.5", "sector radius ratio");
    add("sector.rprime", Type::Real, "0.75", "sector auxiliary radius");
    add("axes.points", Type::Integer, "24", "ladder points per half-axis");
    add("weight.name", Type::Choice, "constant", "built-in weight",
        {"constant", "circle-power", "disk-power", "exp-symbol"});
    add("weight.exponent", Type::Real, "0", "power-weight exponent");
    add("weight.condition", Type::Choice, "auto", "characteristic",
        {"auto", "ainfty", "a2", "binfty", "b2"});
    add("weight.lambda", Type::Complex, "1", "divisor in exp(Re(g/lambda))");
    add("gj.phi", Type::Choice, "log-power", "boundary function",
        {"zero", "cosine", "log-power", "symbol-re", "symbol-im"});
    add("gj.a", Type::Real, "1", "amplitude of the boundary function");
    add("out.csv", Type::Path, "", "CSV output path");
    add("out.json", Type::Path, "", "JSON output path (stdout if empty)");
    add("threads", Type::Integer, "0", "worker threads, 0 = default");
    add("check.convergence", Type::Flag, "false", "rerun one level finer and report flips");
    return k;
}

std::string strip(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(out);
}

bool parse_long(const std::string& s, long& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtol(s.c_str(), &end, 10);
    return end == s.c_str() + s.size();
}

bool parse_flag(const std::string& s, bool& out) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") return out = true, true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return out = false, true;
    return false;
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* what) {
    throw ConfigError(key, "invalid value '" + value + "' for key '" + key + "': expected " + what);
}

std::string normalize(const RunConfig::KeyInfo& info, const std::string& value) {
    const std::string& key = info.key;
    switch (info.type) {
    case Type::Text:
        if (key == "grid.eps0" && value != "auto") {
            double v;
            if (!parse_double(value, v) || v < 0) bad_value(key, value, "'auto' or a number >= 0");
            return format_real(v);
        }
        return value;
    case Type::Path: return value;
    case Type::Choice:
        if (std::find(info.choices.begin(), info.choices.end(), value) == info.choices.end()) {
            std::string list;
            for (const auto& c : info.choices) list += (list.empty() ? "" : "|") + c;
            bad_value(key, value, list.c_str());
        }
        return value;
    case Type::Real: {
        double v;
        if (!parse_double(value, v)) bad_value(key, value, "a finite number");
        return format_real(v);
    }
    case Type::Integer: {
        long v;
        if (!parse_long(value, v)) bad_value(key, value, "an integer");
        return std::to_string(v);
    }
    case Type::Complex: return format_complex(parse_complex(value, key));
    case Type::ComplexList: {
        std::string out;
        for (cplx c : parse_complex_list(value, key)) out += (out.empty() ? "" : ",") + format_complex(c);
        return out;
    }
    case Type::Flag: {
        bool b;
        if (!parse_flag(value, b)) bad_value(key, value, "true or false");
        return b ? "true" : "false";
    }
    }
    return value;
}

} // namespace

cplx parse_complex(std::string_view text, const std::string& key) {
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    }
    const std::string original(text);
    if (s.empty()) bad_value(key, original, "a complex number");
    if (s.back() != 'i' && s.back() != 'j') {
        double re;
        if (!parse_double(s, re)) bad_value(key, original, "a complex number like 1, 2i or 1-0.5i");
        return {re, 0.0};
    }
    s.pop_back();
    // Split at the last sign that is not an exponent sign or the leading one.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_part = [&](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        double v;
        if (!parse_double(t, v)) bad_value(key, original, "a complex number like 1, 2i or 1-0.5i");
        return v;
    };
    if (split == std::string::npos) return {0.0, imag_part(s)};
    double re;
    if (!parse_double(s.substr(0, split), re)) {
        bad_value(key, original, "a complex number like 1, 2i or 1-0.5i");
    }
    return {re, imag_part(s.substr(split))};
}

std::vector<cplx> parse_complex_list(std::string_view text, const std::string& key) {
    std::vector<cplx> out;
    const std::string s = strip(text);
    if (s.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = s.find(',', start);
        out.push_back(parse_complex(s.substr(start, comma - start), key));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string format_complex(cplx c) {
    if (c.imag() == 0.0) return format_real(c.real());
    const std::string im = format_real(std::abs(c.imag())) + "i";
    if (c.real() == 0.0) return (c.imag() < 0 ? "-" : "") + im;
    return format_real(c.real()) + (c.imag() < 0 ? "-" : "+") + im;
}

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

const std::vector<RunConfig::KeyInfo>& RunConfig::keys() {
    static const std::vector<KeyInfo> k = make_keys();
    return k;
}

const RunConfig::KeyInfo* RunConfig::find(std::string_view key) {
    for (const auto& k : keys()) {
        if (k.key == key) return &k;
    }
    return nullptr;
}

RunConfig::RunConfig() {
    for (const auto& k : keys()) values_[k.key] = normalize(k, k.fallback);
}

void RunConfig::set(const std::string& key, const std::string& value) {
    const KeyInfo* info = find(key);
    if (!info) throw ConfigError(key, "unknown configuration key '" + key + "'");
    values_[key] = normalize(*info, strip(value));
    explicit_[key] = true;
}

void RunConfig::load(std::istream& in) {
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string s = strip(line);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(s, "line " + std::to_string(number) + ": expected key=value, got '" + s + "'");
        }
        set(strip(s.substr(0, eq)), s.substr(eq + 1));
    }
}

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open config file '" + path + "'");
    load(in);
}

const std::string& RunConfig::raw(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(key, "unknown configuration key '" + key + "'");
    return it->second;
}

double RunConfig::real(const std::string& key) const {
    return std::strtod(raw(key).c_str(), nullptr);
}

long RunConfig::integer(const std::string& key) const {
    return std::strtol(raw(key).c_str(), nullptr, 10);
}

cplx RunConfig::complex(const std::string& key) const { return parse_complex(raw(key), key); }

std::vector<cplx> RunConfig::complex_list(const std::string& key) const {
    return parse_complex_list(raw(key), key);
}

bool RunConfig::flag(const std::string& key) const { return raw(key) == "true"; }

std::map<std::string, std::string> RunConfig::canonical() const { return values_; }

std::string RunConfig::hash() const {
    std::string blob;
    for (const auto& [k, v] : values_) {
        if (k == "threads" || k == "out.csv" || k == "out.json") continue;
        blob += k + "=" + v + "\n";
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(blob)));
    return buf;
}

SymbolSpec RunConfig::build_symbol(const std::string& prefix) const {
    const std::string kind = raw(prefix + ".kind");
    SymbolSpec s;
    if (kind == "cesaro-log") {
        s = SymbolSpec::cesaro_log();
    } else if (kind == "polynomial" || kind == "explicit") {
        std::vector<cplx> c = complex_list(prefix + ".coeffs");
        const std::string file = raw(prefix + ".file");
        if (!file.empty()) {
            if (!c.empty()) {
                throw ConfigError(prefix + ".file", prefix + ".coeffs and " + prefix + ".file are exclusive");
            }
            std::ifstream in(file);
            if (!in) throw ConfigError(prefix + ".file", "cannot open series file '" + file + "'");
            try {
                const auto f = read_series_csv(in);
                c.assign(f.coeffs().begin(), f.coeffs().end());
            } catch (const Error& e) {
                throw ConfigError(prefix + ".file", e.what());
            }
        }
        if (c.empty()) throw ConfigError(prefix + ".coeffs", prefix + ".coeffs is empty");
        s = kind == "polynomial" ? SymbolSpec::polynomial(c) : SymbolSpec::explicit_coeffs(c);
    } else if (kind == "blaschke") {
        try {
            s = SymbolSpec::blaschke(complex(prefix + ".a"));
        } catch (const DomainError& e) {
            throw ConfigError(prefix + ".a", e.what());
        }
    } else if (kind == "power-log") {
        const cplx a = complex(prefix + ".a");
        if (a.imag() != 0.0) throw ConfigError(prefix + ".a", "power-log exponent must be real");
        s = SymbolSpec::power_log(a.real());
    } else {
        s = SymbolSpec::zero();
    }
    const cplx scale = complex(prefix + ".scale");
    return scale == cplx{1.0} ? s : s.scaled(scale);
}

SymbolSpec RunConfig::symbol() const { return build_symbol("symbol"); }
SymbolSpec RunConfig::perturbation() const { return build_symbol("perturb"); }

SpaceSpec RunConfig::space() const {
    try {
        return raw("space.kind") == "hardy" ? SpaceSpec::hardy(real("space.p"))
                                           : SpaceSpec::bergman(real("space.p"), real("space.alpha"));
    } catch (const DomainError& e) {
        throw ConfigError("space.p", e.what());
    }
}

MapGrid RunConfig::grid() const {
    MapGrid g;
    g.re_min = real("grid.re_min");
    g.re_max = real("grid.re_max");
    g.im_min = real("grid.im_min");
    g.im_max = real("grid.im_max");
    g.nx = static_cast<int>(integer("grid.nx"));
    g.ny = static_cast<int>(integer("grid.ny"));
    g.eps0 = raw("grid.eps0") == "auto" ? -1.0 : real("grid.eps0");
    try {
        g.validate();
    } catch (const DomainError& e) {
        throw ConfigError("grid", e.what());
    }
    return g;
}

ClassifierConfig RunConfig::classifier() const {
    ClassifierConfig c;
    c.circle_levels = static_cast<int>(integer("weights.levels"));
    c.samples_per_arc = static_cast<std::size_t>(std::max(0L, integer("weights.samples_per_arc")));
    c.disk_levels = static_cast<int>(integer("weights.disk_levels"));
    c.membership_first = static_cast<int>(integer("membership.first"));
    c.membership_last = static_cast<int>(integer("membership.last"));
    return c;
}

QuasinilConfig RunConfig::quasinil() const {
    QuasinilConfig q;
    q.boundary_samples = static_cast<std::size_t>(std::max(1L, integer("boundary.samples")));
    q.radius_truncation = static_cast<std::size_t>(std::max(1L, integer("radius.N")));
    q.radius_powers = static_cast<int>(integer("radius.nmax"));
    q.radius_threshold = real("radius.threshold");
    q.axes_points = static_cast<int>(integer("axes.points"));
    q.classifier = classifier();
    q.threads = threads();
    return q;
}

unsigned RunConfig::threads() const {
    const long t = integer("threads");
    if (t < 0) throw ConfigError("threads", "threads must be >= 0");
    return t == 0 ? default_parallelism() : static_cast<unsigned>(t);
}

} // namespace cesaro
