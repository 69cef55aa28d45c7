#include "cesaro/cli.hpp"
#include "cesaro/config.hpp"
#include "cesaro/errors.hpp"
#include "cesaro/report.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <unistd.h>

using namespace cesaro;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("cesaro_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Runs the tool with stderr captured.
int run(std::vector<std::string> args, std::string* err = nullptr) {
    args.insert(args.begin(), "cesaro");
    std::ostringstream captured;
    auto* old = std::cerr.rdbuf(captured.rdbuf());
    const int code = run_cli(args);
    std::cerr.rdbuf(old);
    if (err) *err = captured.str();
    return code;
}

json load_json(const std::string& path) { return json::parse(slurp(path)); }

const std::vector<std::string> kSmallMap = {"--grid.nx", "24", "--grid.ny", "24", "--threads", "1"};

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

} // namespace

TEST_CASE("complex parsing") {
    CHECK(parse_complex("2.5") == cplx(2.5, 0.0));
    CHECK(parse_complex("i") == cplx(0.0, 1.0));
    CHECK(parse_complex("-i") == cplx(0.0, -1.0));
    CHECK(parse_complex("3i") == cplx(0.0, 3.0));
    CHECK(parse_complex("1-0.5i") == cplx(1.0, -0.5));
    CHECK(parse_complex(" -1e-3 + 2i ") == cplx(-1e-3, 2.0));
    CHECK_THROWS_AS(parse_complex("1+", "point.lambda"), ConfigError);
    CHECK_THROWS_AS(parse_complex("abc"), ConfigError);
    const auto list = parse_complex_list("0, 1, 0.5i");
    REQUIRE(list.size() == 3);
    CHECK(list[2] == cplx(0.0, 0.5));
    CHECK(parse_complex(format_complex(cplx(0.1, -1.0 / 3.0))) == cplx(0.1, -1.0 / 3.0));
}

TEST_CASE("run configuration") {
    RunConfig cfg;
    CHECK(cfg.raw("symbol.kind") == "cesaro-log");
    CHECK(cfg.real("space.p") == 2.0);
    CHECK(cfg.integer("grid.nx") == 160);

    SUBCASE("unknown keys name themselves") {
        try {
            cfg.set("grid.nz", "3");
            FAIL("no exception");
        } catch (const ConfigError& e) {
            CHECK(e.key() == "grid.nz");
        }
        CHECK_THROWS_AS(cfg.set("space.kind", "sobolev"), ConfigError);
        CHECK_THROWS_AS(cfg.set("grid.nx", "1.5"), ConfigError);
        CHECK_THROWS_AS(cfg.set("space.p", "two"), ConfigError);
    }
    SUBCASE("file loading with comments") {
        std::istringstream in("# map setup\nspace.kind = bergman\n\nspace.alpha=1 # trailing\n");
        cfg.load(in);
        CHECK(cfg.space().kind == SpaceSpec::Kind::Bergman);
        CHECK(cfg.space().alpha == 1.0);
        std::istringstream bad("space.kind\n");
        CHECK_THROWS_AS(cfg.load(bad), ConfigError);
    }
    SUBCASE("hash ignores threads and outputs but not content") {
        RunConfig a, b;
        b.set("threads", "7");
        b.set("out.json", "x.json");
        CHECK(a.hash() == b.hash());
        CHECK(a.hash().size() == 16);
        b.set("space.p", "2.0");
        CHECK(a.hash() == b.hash());
        b.set("space.p", "3");
        CHECK(a.hash() != b.hash());
    }
    SUBCASE("builders") {
        cfg.set("symbol.kind", "polynomial");
        cfg.set("symbol.coeffs", "0, 1, 0.5i");
        const auto s = symbol_series(cfg.symbol(), 3);
        CHECK(s[2] == cplx(0.0, 0.5));
        cfg.set("grid.eps0", "0.2");
        CHECK(cfg.grid().eps0 == 0.2);
        CHECK(RunConfig().grid().eps0 < 0.0);
        cfg.set("weights.levels", "12");
        CHECK(cfg.classifier().circle_levels == 12);
    }
    CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
}

TEST_CASE("command line") {
    TempDir tmp;

    SUBCASE("version and help") {
        CHECK(run({"--version"}) == kExitPass);
        CHECK(run({}) == kExitConfig);
        CHECK(run({"frobnicate"}) == kExitConfig);
    }
    SUBCASE("malformed keys exit 2 with the key named") {
        std::string err;
        CHECK(run({"--set", "grid.bogus=1", "classify"}, &err) == kExitConfig);
        CHECK(err.find("grid.bogus") != std::string::npos);

        std::ofstream(tmp.file("bad.cfg")) << "symbol.kind = cesaro-log\nweights.bogus = 4\n";
        CHECK(run({"--config", tmp.file("bad.cfg"), "classify"}, &err) == kExitConfig);
        CHECK(err.find("weights.bogus") != std::string::npos);

        CHECK(run({"--space.p", "x", "classify"}, &err) == kExitConfig);
        CHECK(err.find("space.p") != std::string::npos);
        CHECK(run({"--space.kind", "bergman", "--space.alpha", "-2", "classify"}) == kExitConfig);
    }
    SUBCASE("flags win over --set and files") {
        std::ofstream(tmp.file("a.cfg")) << "point.lambda = 1\n";
        const auto out = tmp.file("c.json");
        CHECK(run({"--config", tmp.file("a.cfg"), "--set", "point.lambda=2", "--point.lambda", "2.5",
                   "--out.json", out, "classify"}) == kExitPass);
        const auto doc = load_json(out);
        CHECK(doc["config"]["point.lambda"] == "2.5");
        CHECK(doc["point"]["label"] == "resolvent");
        CHECK(doc["config_hash"].get<std::string>().size() == 16);
        CHECK(doc["modules"].size() == 6);
    }
    SUBCASE("classify inside the disk") {
        const auto out = tmp.file("in.json");
        CHECK(run({"--point.lambda", "1", "--out.json", out, "classify"}) == kExitPass);
        CHECK(load_json(out)["point"]["label"] == "spectrum");
    }
    SUBCASE("spectrum map of the zero symbol") {
        const auto csv = tmp.file("zero.csv");
        CHECK(run(concat(kSmallMap, {"--symbol.kind", "zero", "--out.csv", csv, "--out.json", tmp.file("zero.json"),
                                     "spectrum-map"})) == kExitPass);
        std::istringstream in(slurp(csv));
        std::string line;
        std::getline(in, line);
        CHECK(line == "re,im,label,growth_exponent,weight_verdict");
        std::size_t rows = 0;
        while (std::getline(in, line)) {
            ++rows;
            CHECK((line.find(",resolvent,") != std::string::npos || line.find(",origin,") != std::string::npos));
        }
        CHECK(rows == 24 * 24);
    }
    SUBCASE("outputs do not depend on the thread count") {
        const std::vector<std::string> base = {"--grid.nx", "20", "--grid.ny", "20"};
        CHECK(run(concat(base, {"--threads", "1", "--out.csv", tmp.file("t1.csv"), "--out.json", tmp.file("t1.json"),
                                "spectrum-map"})) == kExitPass);
        CHECK(run(concat(base, {"--threads", "3", "--out.csv", tmp.file("t3.csv"), "--out.json", tmp.file("t3.json"),
                                "spectrum-map"})) == kExitPass);
        CHECK(slurp(tmp.file("t1.csv")) == slurp(tmp.file("t3.csv")));
        CHECK(slurp(tmp.file("t1.json")) == slurp(tmp.file("t3.json")));
    }
    SUBCASE("verify exit codes") {
        CHECK(run(concat(kSmallMap, {"--out.json", tmp.file("star.json"), "verify", "star"})) == kExitPass);
        CHECK(run({"--axes.points", "6", "--out.json", tmp.file("cl.json"), "verify", "closure"}) == kExitFail);
        CHECK(run({"--symbol.kind", "blaschke", "--symbol.a", "0.3", "--out.json", tmp.file("q.json"), "verify",
                   "quasinil"}) == kExitPass);
        CHECK(run(concat(kSmallMap, {"--perturb.kind", "polynomial", "--perturb.coeffs", "0,1", "--out.json",
                                     tmp.file("st.json"), "verify", "stability"})) == kExitPass);
        CHECK(run(concat(kSmallMap, {"--perturb.kind", "cesaro-log", "--out.json", tmp.file("st2.json"), "verify",
                                     "stability"})) == kExitInconclusive);
        CHECK(run({"verify", "nonsense"}) == kExitConfig);
    }
    SUBCASE("weights and gj") {
        const auto out = tmp.file("w.json");
        CHECK(run({"--weight.name", "constant", "--out.json", out, "weights"}) == kExitPass);
        const auto doc = load_json(out);
        CHECK(doc["characteristic"]["verdict"] == "bounded");
        CHECK(run({"--weight.name", "circle-power", "--weight.exponent", "-1.2", "--weight.condition", "ainfty",
                   "--out.json", out, "weights"}) == kExitPass);
        CHECK(load_json(out)["characteristic"]["verdict"] == "divergent");
        CHECK(run({"--gj.phi", "zero", "--out.json", out, "gj"}) == kExitPass);
        CHECK(load_json(out)["gj"]["estimate"].get<double>() <= 0.01);
    }
    SUBCASE("radius") {
        const auto out = tmp.file("r.json");
        CHECK(run({"--symbol.kind", "polynomial", "--symbol.coeffs", "0,1", "--radius.N", "128", "--out.json", out,
                   "radius"}) == kExitPass);
        CHECK(load_json(out)["radius"]["rho_last"].get<double>() == doctest::Approx(0.0781843145303).epsilon(1e-6));
    }
}
