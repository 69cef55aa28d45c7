// Acceptance runs. Usage: acceptance <criterion 1..8>
// Prints one PASS/FAIL line per check and exits non-zero if any check fails.

#include "cesaro/bmoa.hpp"
#include "cesaro/operators.hpp"
#include "cesaro/parallel.hpp"
#include "cesaro/report.hpp"
#include "cesaro/spectra.hpp"
#include "cesaro/weights.hpp"

#include "oracles.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>

using namespace cesaro;

namespace {

int failures = 0;

void report(bool pass, const std::string& id, const std::string& what, const std::string& detail) {
    std::printf("%s %s: %s [%s]\n", pass ? "PASS" : "FAIL", id.c_str(), what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool decided(Label l) { return l == Label::Resolvent || l == Label::Spectrum; }

struct Circle {
    cplx centre;
    double radius = 0.0;
    std::size_t points = 0;
};

// Boundary samples are midpoints between a spectrum cell and the first resolvent
// cell reached along its row or column; a least-squares circle goes through them.
Circle fit_boundary_circle(const SpectrumMap& map) {
    std::vector<cplx> pts;
    const int nx = map.grid.nx, ny = map.grid.ny;
    auto walk = [&](int x, int y, int dx, int dy) {
        const cplx from = map.at(x, y).lambda;
        for (x += dx, y += dy; x >= 0 && y >= 0 && x < nx && y < ny; x += dx, y += dy) {
            const Label l = map.at(x, y).label;
            if (l == Label::Spectrum || l == Label::Origin) return;
            if (l == Label::Resolvent) {
                pts.push_back(0.5 * (from + map.at(x, y).lambda));
                return;
            }
        }
    };
    for (int y = 0; y < ny; ++y) {
        for (int x = 0; x < nx; ++x) {
            if (map.at(x, y).label != Label::Spectrum) continue;
            walk(x, y, 1, 0);
            walk(x, y, -1, 0);
            walk(x, y, 0, 1);
            walk(x, y, 0, -1);
        }
    }
    Circle c;
    c.points = pts.size();
    if (pts.size() < 3) return c;
    Eigen::MatrixXd a(pts.size(), 3);
    Eigen::VectorXd b(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        a.row(i) << pts[i].real(), pts[i].imag(), 1.0;
        b(i) = -std::norm(pts[i]);
    }
    const Eigen::Vector3d s = a.colPivHouseholderQr().solve(b);
    c.centre = cplx(-0.5 * s(0), -0.5 * s(1));
    c.radius = std::sqrt(std::max(0.0, std::norm(c.centre) - s(2)));
    return c;
}

// Compares a map with the closed disk of the given radius centred on the
// positive real axis, tangent to the imaginary axis at 0.
void check_disk(const std::string& id, const SpaceSpec& space, double radius) {
    const auto t0 = std::chrono::steady_clock::now();
    const MapGrid grid = MapGrid{}.scaled(radius);
    const auto map = spectrum_map(SymbolSpec::cesaro_log(), space, grid, {}, default_parallelism());
    const double secs = seconds_since(t0);

    const bool bergman = !space.is_hardy();
    auto inside = [&](cplx z) { return oracle::cesaro_spectrum(z, space.p, bergman, space.alpha); };
    std::size_t dec = 0, agree = 0, outside_band_bad = 0, undecided = 0;
    for (const auto& c : map.cells) {
        if (c.label == Label::Undecided) ++undecided;
        if (!decided(c.label)) continue;
        ++dec;
        const bool ok = (c.label == Label::Spectrum) == inside(c.lambda);
        if (ok) {
            ++agree;
        } else if (!oracle::near_oracle_boundary(c.lambda, grid.dx(), grid.dy(), 2, inside)) {
            ++outside_band_bad;
        }
    }
    const double rate = dec ? static_cast<double>(agree) / dec : 0.0;
    report(rate >= 0.97, id + ".agreement", "decided cells agreeing with the analytic disk >= 97%",
           fmt("%.4f of %.0f decided cells", rate, static_cast<double>(dec)));
    report(outside_band_bad == 0, id + ".band", "every disagreement lies within 2 cells of the disk boundary",
           fmt("%.0f outside the band, %.0f undecided", static_cast<double>(outside_band_bad),
               static_cast<double>(undecided)));
    const Circle fit = fit_boundary_circle(map);
    const double tol = 2.0 * std::max(grid.dx(), grid.dy());
    const bool shape = fit.points >= 3 && std::abs(fit.centre - cplx(radius, 0.0)) <= tol &&
                       std::abs(fit.radius - radius) <= tol;
    report(shape, id + ".shape", "fitted boundary circle: centre and radius within 2 cells of " + fmt("%.3g", radius),
           fmt("centre %.4f%+.4fi, ", fit.centre.real(), fit.centre.imag()) +
               fmt("radius %.4f, cell %.4f", fit.radius, grid.dx()));
    report(true, id + ".runtime", "map runtime", fmt("%.1f s", secs));
}

void criterion1() { check_disk("c1", SpaceSpec::hardy(2.0), 1.0); }

void criterion2() { check_disk("c2", SpaceSpec::bergman(2.0, 0.0), 0.5); }

void criterion3() {
    check_disk("c3.p1", SpaceSpec::hardy(1.0), 0.5);
    check_disk("c3.p4", SpaceSpec::hardy(4.0), 2.0);
}

void criterion4() {
    const std::pair<const char*, SymbolSpec> perturbations[] = {
        {"z", SymbolSpec::polynomial({0.0, 1.0})},
        {"z^2", SymbolSpec::polynomial({0.0, 0.0, 1.0})},
        {"blaschke(0.5)", SymbolSpec::blaschke(0.5)},
    };
    for (const auto& [name, h] : perturbations) {
        const auto r = stability_harness(SymbolSpec::cesaro_log(), h, SpaceSpec::hardy(), MapGrid{}, {}, {},
                                         default_parallelism());
        const std::string id = std::string("c4.") + name;
        report(r.probative, id + ".certified", "perturbation certified quasi-nilpotent", r.probative ? "yes" : "no");
        report(r.agreement >= 0.99, id + ".agreement", "agreement of decided cells >= 99%",
               fmt("%.4f of %.0f", r.agreement, static_cast<double>(r.decided_both)));
        report(r.disagreements_outside_band.empty(), id + ".band", "disagreements confined to the boundary band",
               fmt("%.0f total, %.0f outside", static_cast<double>(r.disagreements.size()),
                   static_cast<double>(r.disagreements_outside_band.size())));
        report(r.pass, id + ".exit", "harness exit code 0", r.pass ? "0" : "1");
    }
}

void criterion5() {
    const std::pair<const char*, SymbolSpec> bounded[] = {
        {"z", SymbolSpec::polynomial({0.0, 1.0})},
        {"z^3", SymbolSpec::polynomial({0.0, 0.0, 0.0, 1.0})},
        {"blaschke(0.3)", SymbolSpec::blaschke(0.3)},
    };
    for (const auto& [name, g] : bounded) {
        const std::string id = std::string("c5.") + name;
        const auto rho = spectral_radius_estimate(symbol_series(g, 256), SpaceSpec::hardy(), 256, 32);
        report(rho.back() < 0.05, id + ".rho32", "rho_32 < 0.05 at N = 256", fmt("rho_32 = %.6f", rho.back()));
        AxesConfig a;
        a.threads = default_parallelism();
        const auto axes = axes_test(g, SpaceSpec::hardy(), a);
        std::size_t resolvent = 0;
        for (const auto& p : axes.points) resolvent += p.label == Label::Resolvent;
        report(resolvent == axes.points.size(), id + ".axes", "axes test all resolvent",
               fmt("%.0f of %.0f resolvent", static_cast<double>(resolvent), static_cast<double>(axes.points.size())));
    }
    const auto rho = spectral_radius_estimate(symbol_series(SymbolSpec::cesaro_log(), 256), SpaceSpec::hardy(), 256, 32);
    const double best = *std::max_element(rho.begin(), rho.end());
    report(best >= 1.5, "c5.cesaro.rho", "max over n <= 32 of rho_n >= 1.5",
           fmt("max %.6f, rho_32 %.6f", best, rho.back()));
}

void criterion6() {
    const auto tree = ArcDyadicTree::make(10, 16);
    for (double a : {0.5, 1.0, 2.0}) {
        const auto phi = RealBoundaryFunction::sample(
            tree, [a](double t) { return a * std::log(std::abs(2.0 * std::sin(0.5 * t))); }, {0.0});
        const auto r = gj_level(phi, tree, 1e-2);
        const double err = std::abs(r.estimate - a) / a;
        report(err <= 0.05, "c6.log" + fmt("%g", a), "level of a*log|1-e^{it}| within 5% of |a|",
               fmt("estimate %.4f +- %.4f (rel err %.4f)", r.estimate, r.uncertainty, err));
    }
    const std::pair<const char*, std::function<double(double)>> bounded[] = {
        {"cos", [](double t) { return std::cos(t); }},
        {"trig", [](double t) { return 3.0 * std::sin(5.0 * t) - 0.5 * std::cos(t) + 2.0; }},
        {"zero", [](double) { return 0.0; }},
    };
    for (const auto& [name, f] : bounded) {
        const auto r = gj_level(RealBoundaryFunction::sample(tree, f), tree, 1e-2);
        report(r.estimate <= 1e-2, std::string("c6.") + name, "bounded function has level <= 1e-2",
               fmt("estimate %.4g", r.estimate));
    }
}

void criterion7() {
    const double exps[] = {-1.5, -1.1, -0.9, -0.5, 0.5, 0.9, 1.1, 1.5};
    for (int levels : {10, 13}) {
        const auto tree = ArcDyadicTree::make(levels, 16);
        const auto disk = CarlesonGrid::make(levels);
        for (double a : exps) {
            const bool inside = std::abs(a) < 1.0;
            const bool adjacent = std::abs(std::abs(a) - 1.1) < 1e-12;
            auto ok = [&](Verdict v) {
                if (inside) return v == Verdict::Bounded;
                if (adjacent && levels == 10) return v != Verdict::Bounded;
                return v == Verdict::Divergent;
            };
            const auto w = CircleWeight::from_log(tree, [a](double t) { return a * std::log(std::abs(2.0 * std::sin(0.5 * t))); });
            const auto rc = a2_characteristic(w, tree);
            const std::string tag = fmt("L%.0f.a%+.1f", levels, a);
            report(ok(rc.verdict), "c7.circle." + tag, inside ? "A2 bounded" : "A2 not bounded",
                   to_string(rc.verdict) + fmt(" G=%.3f q=%.3f", rc.growth, rc.increment_ratio));
            const auto d = DiskWeight::from_log(disk.disk(), [a](cplx z) { return a * std::log1p(-std::norm(z)); });
            const auto rd = b2_characteristic(d, disk);
            report(ok(rd.verdict), "c7.disk." + tag, inside ? "B2 bounded" : "B2 not bounded",
                   to_string(rd.verdict) + fmt(" G=%.3f q=%.3f", rd.growth, rd.increment_ratio));
        }
    }
}

double min_ratio(const CharacteristicReport& r) {
    double m = 1e300;
    for (const auto& l : r.levels) m = std::min(m, l.max);
    return m;
}

void criterion8() {
    const SymbolSpec library[] = {
        SymbolSpec::cesaro_log(),
        SymbolSpec::polynomial({0.0, 1.0}),
        SymbolSpec::polynomial({0.0, cplx(0.5, -0.5), 0.25, 0.0, 1.0}),
        SymbolSpec::blaschke(cplx(0.3, 0.2)),
        SymbolSpec::power_log(0.5),
        SymbolSpec::power_log(-0.75),
    };

    {
        std::mt19937_64 rng(8001);
        std::normal_distribution<double> nd;
        std::uniform_real_distribution<double> mod(1.0, 4.0), arg(-oracle::kPi, oracle::kPi);
        std::uniform_int_distribution<int> deg(0, 8);
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t n = 256;
            const auto g = symbol_series(library[trial % 6], n);
            std::vector<cplx> hc(deg(rng) + 1);
            for (auto& c : hc) c = {nd(rng), nd(rng)};
            const PowerSeries h(hc);
            const cplx lambda = std::polar(mod(rng), arg(rng));
            const auto f = resolvent_apply(g, lambda, h, n);
            const auto residual = f - (1.0 / lambda) * apply_Tg(g, f, n) - h.truncated(n);
            worst = std::max(worst, space_norm(residual, SpaceSpec::hardy()));
        }
        report(worst < 1e-8, "c8.resolvent", "resolvent identity residual < 1e-8 on 50 triples",
               fmt("worst %.3g", worst));
    }

    double amgm = 1e300;
    {
        const auto tree = ArcDyadicTree::make(10, 16);
        std::mt19937_64 rng(8002);
        std::uniform_real_distribution<double> expo(-0.9, 1.5), amp(-1.0, 1.0), phase(0.0, 2 * oracle::kPi);
        std::size_t violations = 0, compared = 0;
        for (int pair = 0; pair < 20; ++pair) {
            const double a1 = expo(rng), a2 = expo(rng), b1 = amp(rng), b2 = amp(rng), s1 = phase(rng), s2 = phase(rng);
            auto w1 = [=](double t) { return a1 * std::log(std::abs(2 * std::sin(0.5 * (t - s1)))) + b1 * std::cos(3 * t); };
            auto w2 = [=](double t) { return a2 * std::log(std::abs(2 * std::sin(0.5 * (t - s2)))) + b2 * std::sin(t); };
            const auto r1 = ainfty_characteristic(CircleWeight::from_log(tree, w1), tree);
            const auto r2 = ainfty_characteristic(CircleWeight::from_log(tree, w2), tree);
            amgm = std::min({amgm, min_ratio(r1), min_ratio(r2)});
            for (double r : {0.25, 0.5, 0.75}) {
                const auto mix = ainfty_characteristic(
                    CircleWeight::from_log(tree, [&](double t) { return r * w1(t) + (1 - r) * w2(t); }), tree);
                amgm = std::min(amgm, min_ratio(mix));
                for (std::size_t l = 0; l < mix.levels.size(); ++l) {
                    const double bound = std::pow(r1.levels[l].max, r) * std::pow(r2.levels[l].max, 1 - r);
                    ++compared;
                    if (mix.levels[l].max > bound * (1 + 1e-12) + 1e-9) ++violations;
                }
            }
        }
        report(violations == 0, "c8.holder", "log-convex combinations obey the Hoelder bound at every level",
               fmt("%.0f violations in %.0f comparisons", static_cast<double>(violations), static_cast<double>(compared)));
    }

    {
        const auto tree = ArcDyadicTree::make(10, 16);
        const auto disk = CarlesonGrid::make(7);
        for (const auto& g : library) {
            auto lw = [&](double t) { return 2.0 * g.boundary_value(t, tree.samples(tree.levels())).real(); };
            auto dw = [&](cplx z) { return 2.0 * g.value(z).real(); };
            const auto w = CircleWeight::from_log(tree, lw);
            const auto d = DiskWeight::from_log(disk.disk(), dw);
            for (const auto& r : {ainfty_characteristic(w, tree), a2_characteristic(w, tree),
                                  binfty_characteristic(d, disk), b2_characteristic(d, disk)}) {
                amgm = std::min(amgm, min_ratio(r));
            }
        }
    }

    MapGrid grid;
    grid.nx = 80;
    grid.ny = 80;
    std::size_t star_violations = 0;
    bool identical = true;
    for (const auto& g : library) {
        const PointClassifier c(g, SpaceSpec::hardy());
        const auto one = spectrum_map(c, grid, 1);
        const auto four = spectrum_map(c, grid, 4);
        std::ostringstream a, b;
        write_map_csv(a, one);
        write_map_csv(b, four);
        identical = identical && a.str() == b.str() && map_summary(one).dump() == map_summary(four).dump();
        star_violations += star_shape_check(one).size();
    }
    report(star_violations == 0, "c8.star", "star-shape check empty on library-symbol maps",
           fmt("%.0f violations over 6 maps", static_cast<double>(star_violations)));
    report(identical, "c8.determinism", "maps byte-identical at 1 and 4 threads", identical ? "identical" : "differ");
    report(amgm >= 1.0 - 1e-12, "c8.amgm", "every reported ratio >= 1 - 1e-12", fmt("min %.15f", amgm));
}

} // namespace

int main(int argc, char** argv) {
    const int which = argc > 1 ? std::atoi(argv[1]) : 0;
    switch (which) {
    case 1: criterion1(); break;
    case 2: criterion2(); break;
    case 3: criterion3(); break;
    case 4: criterion4(); break;
    case 5: criterion5(); break;
    case 6: criterion6(); break;
    case 7: criterion7(); break;
    case 8: criterion8(); break;
    default: std::fprintf(stderr, "usage: acceptance <1..8>\n"); return 2;
    }
    return failures == 0 ? 0 : 1;
}
