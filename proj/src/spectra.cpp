#include "cesaro/spectra.hpp"

#include "cesaro/bmoa.hpp"
#include "cesaro/errors.hpp"
#include "cesaro/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cesaro {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
    if (a < b) std::swap(a, b);
    if (b == kNegInf) return a;
    return a + std::log1p(std::exp(b - a));
}

// Quadrature nodes of one membership group: log measure and g at the node.
struct NodeSet {
    std::vector<double> log_measure;
    std::vector<double> re;
    std::vector<double> im;

    void add(double log_measure_value, cplx g) {
        log_measure.push_back(log_measure_value);
        re.push_back(g.real());
        im.push_back(g.imag());
    }

    // log Σ exp(log_measure + p·Re(g/λ)), with 1/λ = a + ib.
    double log_integral(double p, double a, double b) const {
        double top = kNegInf;
        const std::size_t n = re.size();
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = log_measure[i] + p * (a * re[i] - b * im[i]);
            top = std::max(top, v[i]);
        }
        if (top == kNegInf || !std::isfinite(top)) return top;
        double s = 0.0;
        for (double x : v) s += std::exp(x - top);
        return top + std::log(s);
    }
};

} // namespace

std::string to_string(Label l) {
    switch (l) {
    case Label::Resolvent: return "resolvent";
    case Label::Spectrum: return "spectrum";
    case Label::Undecided: return "undecided";
    case Label::Origin: return "origin";
    }
    return "?";
}

std::string to_string(AxesVerdict v) {
    switch (v) {
    case AxesVerdict::InClosure: return "in-closure";
    case AxesVerdict::NotInClosure: return "not-in-closure";
    case AxesVerdict::Inconclusive: return "inconclusive";
    case AxesVerdict::Exploratory: return "exploratory";
    }
    return "?";
}

struct PointClassifier::Data {
    // Hardy: boundary values of g on each resolution grid of the arc tree.
    std::optional<ArcDyadicTree> tree;
    std::vector<std::vector<double>> boundary_re, boundary_im;

    // Bergman: g and α·log(1−|z|²) on the Carleson grid nodes.
    std::optional<CarlesonGrid> carleson;
    std::vector<double> disk_re, disk_im, disk_base;
    std::size_t disk_active = 0;   // nodes before the terminal panel

    // Hardy: one group per radius. Bergman: one group per radial panel,
    // accumulated into partial disk integrals.
    std::vector<NodeSet> groups;
};

PointClassifier::PointClassifier(const SymbolSpec& g, const SpaceSpec& space,
                                 const ClassifierConfig& cfg)
    : space_(space), cfg_(cfg), data_(std::make_unique<Data>()) {
    if (cfg.membership_first < 1 || cfg.membership_last < cfg.membership_first + 3) {
        throw DomainError("membership radii need at least four levels");
    }
    const auto singular = g.singular_angles();
    Data& d = *data_;

    if (space.is_hardy()) {
        d.tree = ArcDyadicTree::make(cfg.circle_levels, cfg.samples_per_arc);
        for (int res = 0; res <= d.tree->levels(); ++res) {
            const CircleGrid grid = d.tree->grid(res);
            std::vector<double> re(grid.samples()), im(grid.samples());
            for (std::size_t j = 0; j < grid.samples(); ++j) {
                const cplx v = g.boundary_value(grid.theta(j), grid.samples());
                re[j] = v.real();
                im[j] = v.imag();
            }
            d.boundary_re.push_back(std::move(re));
            d.boundary_im.push_back(std::move(im));
        }
        for (int j = cfg.membership_first; j <= cfg.membership_last; ++j) {
            const double r = 1.0 - std::ldexp(1.0, -j);
            const auto quad = graded_circle_quadrature(singular, 1.0 - r);
            NodeSet set;
            for (std::size_t i = 0; i < quad.theta.size(); ++i) {
                set.add(std::log(quad.weight[i]), g.value_polar(r, quad.theta[i]));
            }
            d.groups.push_back(std::move(set));
        }
        return;
    }

    d.carleson = CarlesonGrid::make(cfg.disk_levels, cfg.disk_base_angular, cfg.disk_nodes_per_panel);
    const DiskGrid& disk = d.carleson->disk();
    const int top_panel = d.carleson->deepest_panel(cfg.disk_levels);
    d.disk_re.assign(disk.node_count(), 0.0);
    d.disk_im.assign(disk.node_count(), 0.0);
    d.disk_base.assign(disk.node_count(), 0.0);
    for (std::size_t ring = 0; ring < disk.rings().size(); ++ring) {
        const DiskRing& rg = disk.rings()[ring];
        if (rg.panel > top_panel) continue;
        const std::size_t off = disk.ring_offset(ring);
        d.disk_active = std::max(d.disk_active, off + rg.angular);
        const double base = space.alpha * std::log1p(-rg.radius * rg.radius);
        for (std::size_t j = 0; j < rg.angular; ++j) {
            const cplx v = g.value_polar(rg.radius, disk.theta(ring, j));
            d.disk_re[off + j] = v.real();
            d.disk_im[off + j] = v.imag();
            d.disk_base[off + j] = base;
        }
    }

    const auto [x, w] = gauss_legendre(6);
    for (int k = 0; k < cfg.membership_last; ++k) {
        const double a = 1.0 - std::ldexp(1.0, -k);
        const double b = 1.0 - std::ldexp(1.0, -k - 1);
        NodeSet set;
        for (std::size_t q = 0; q < x.size(); ++q) {
            const double rho = 0.5 * (a + b) + 0.5 * (b - a) * x[q];
            const double radial = std::log(0.5 * (b - a) * w[q] * 2.0 * rho) +
                                  space.alpha * std::log1p(-rho * rho);
            const auto quad = graded_circle_quadrature(singular, 1.0 - rho);
            for (std::size_t i = 0; i < quad.theta.size(); ++i) {
                set.add(radial + std::log(quad.weight[i]), g.value_polar(rho, quad.theta[i]));
            }
        }
        d.groups.push_back(std::move(set));
    }
}

PointClassifier::~PointClassifier() = default;
PointClassifier::PointClassifier(PointClassifier&&) noexcept = default;
PointClassifier& PointClassifier::operator=(PointClassifier&&) noexcept = default;

PointReport PointClassifier::classify(cplx lambda) const {
    if (!(std::abs(lambda) >= cfg_.min_modulus)) {
        throw OverflowNearOrigin("lambda is too close to the origin to classify");
    }
    const Data& d = *data_;
    const cplx mu = 1.0 / lambda;
    const double a = mu.real(), b = mu.imag(), p = space_.p;

    PointReport out;
    out.lambda = lambda;

    if (space_.is_hardy()) {
        for (const auto& set : d.groups) out.membership_log.push_back(set.log_integral(p, a, b));
        std::vector<std::vector<double>> levels(d.boundary_re.size());
        for (std::size_t res = 0; res < levels.size(); ++res) {
            const auto& re = d.boundary_re[res];
            const auto& im = d.boundary_im[res];
            levels[res].resize(re.size());
            for (std::size_t j = 0; j < re.size(); ++j) levels[res][j] = p * (a * re[j] - b * im[j]);
        }
        out.weight_report = ainfty_characteristic(CircleWeight::from_log_levels(std::move(levels)),
                                                  *d.tree, cfg_.policy);
    } else {
        double acc = kNegInf;
        for (int k = 0; k < cfg_.membership_last; ++k) {
            acc = log_add(acc, d.groups[k].log_integral(p, a, b));
            if (k + 1 >= cfg_.membership_first) out.membership_log.push_back(acc);
        }
        std::vector<double> lw(d.disk_re.size(), 0.0);
        for (std::size_t i = 0; i < d.disk_active; ++i) {
            lw[i] = d.disk_base[i] + p * (a * d.disk_re[i] - b * d.disk_im[i]);
        }
        out.weight_report = binfty_characteristic(DiskWeight::from_log_values(std::move(lw)),
                                                  *d.carleson, cfg_.policy);
    }

    out.membership_growth = assess_growth(out.membership_log, cfg_.policy);
    out.membership = out.membership_growth.verdict;
    out.weight = out.weight_report.verdict;
    const auto n = out.membership_log.size();
    out.growth_exponent = (out.membership_log[n - 1] - out.membership_log[n - 2]) / std::log(2.0);

    const bool conflict = (out.membership == Verdict::Bounded && out.weight == Verdict::Divergent) ||
                          (out.membership == Verdict::Divergent && out.weight == Verdict::Bounded);
    if (conflict) {
        out.label = Label::Undecided;
        out.note = "membership and weight channels disagree";
    } else if (out.membership == Verdict::Divergent || out.weight == Verdict::Divergent) {
        out.label = Label::Spectrum;
    } else if (out.membership == Verdict::Bounded && out.weight == Verdict::Bounded) {
        out.label = Label::Resolvent;
    } else {
        out.label = Label::Undecided;
    }
    return out;
}

PointReport classify_point(const SymbolSpec& g, cplx lambda, const SpaceSpec& space,
                           const ClassifierConfig& cfg) {
    return PointClassifier(g, space, cfg).classify(lambda);
}

void MapGrid::validate() const {
    if (!(re_max > re_min) || !(im_max > im_min)) {
        throw DomainError("spectrum map rectangle is empty");
    }
    if (nx < 1 || ny < 1) throw DomainError("spectrum map resolution must be positive");
}

MapGrid MapGrid::scaled(double s) const {
    MapGrid g = *this;
    g.re_min *= s;
    g.re_max *= s;
    g.im_min *= s;
    g.im_max *= s;
    if (g.eps0 > 0) g.eps0 *= s;
    return g;
}

std::optional<std::pair<int, int>> SpectrumMap::locate(cplx z) const {
    const double fx = (z.real() - grid.re_min) / grid.dx();
    const double fy = (z.imag() - grid.im_min) / grid.dy();
    if (!(fx >= 0.0 && fy >= 0.0)) return std::nullopt;
    const auto ix = static_cast<int>(std::floor(fx));
    const auto iy = static_cast<int>(std::floor(fy));
    if (ix >= grid.nx || iy >= grid.ny) return std::nullopt;
    return std::make_pair(ix, iy);
}

std::size_t SpectrumMap::count(Label l) const {
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [l](const MapCell& c) { return c.label == l; }));
}

SpectrumMap spectrum_map(const PointClassifier& classifier, const MapGrid& grid, unsigned threads) {
    grid.validate();
    SpectrumMap map;
    map.grid = grid;
    const std::size_t n = static_cast<std::size_t>(grid.nx) * grid.ny;
    map.cells.resize(n);
    double max_modulus = 0.0;
    for (int iy = 0; iy < grid.ny; ++iy) {
        for (int ix = 0; ix < grid.nx; ++ix) {
            const cplx c = grid.center(ix, iy);
            map.cells[static_cast<std::size_t>(iy) * grid.nx + ix].lambda = c;
            max_modulus = std::max(max_modulus, std::abs(c));
        }
    }
    map.eps0 = grid.eps0 >= 0.0 ? grid.eps0 : 0.05 * max_modulus;

    parallel_for(n, threads, [&](std::size_t i) {
        MapCell& cell = map.cells[i];
        if (std::abs(cell.lambda) < map.eps0) {
            cell.label = Label::Origin;
            return;
        }
        try {
            const PointReport r = classifier.classify(cell.lambda);
            cell.label = r.label;
            cell.growth_exponent = r.growth_exponent;
            cell.membership = r.membership;
            cell.weight = r.weight;
        } catch (const Error& e) {
            cell.label = Label::Undecided;
            cell.note = e.what();
        }
    });
    return map;
}

SpectrumMap spectrum_map(const SymbolSpec& g, const SpaceSpec& space, const MapGrid& grid,
                         const ClassifierConfig& cfg, unsigned threads) {
    grid.validate();
    return spectrum_map(PointClassifier(g, space, cfg), grid, threads);
}

std::vector<StarViolation> star_shape_check(const SpectrumMap& map) {
    std::vector<StarViolation> out;
    for (std::size_t i = 0; i < map.cells.size(); ++i) {
        if (map.cells[i].label != Label::Spectrum) continue;
        for (double t : {0.25, 0.5, 0.75}) {
            const auto loc = map.locate(t * map.cells[i].lambda);
            if (!loc) continue;
            const auto [ix, iy] = *loc;
            bool clear = true;
            for (int dy = -1; dy <= 1 && clear; ++dy) {
                for (int dx = -1; dx <= 1 && clear; ++dx) {
                    const int x = ix + dx, y = iy + dy;
                    if (x < 0 || y < 0 || x >= map.grid.nx || y >= map.grid.ny) continue;
                    clear = map.at(x, y).label == Label::Resolvent;
                }
            }
            const std::size_t target = static_cast<std::size_t>(iy) * map.grid.nx + ix;
            if (clear) out.push_back({i, target, t});
        }
    }
    return out;
}

double sector_halfangle(double r, double rprime, double lambda_abs, double specbound) {
    if (!(r > 0.0 && r < rprime && rprime < 1.0)) {
        throw DomainError("sector radii need 0 < r < r' < 1");
    }
    if (!(lambda_abs > 0.0 && specbound >= lambda_abs)) {
        throw DomainError("sector bound needs specbound >= |lambda| > 0");
    }
    const double arg = r * (1.0 - rprime) * lambda_abs / (rprime * specbound);
    const double t = std::min(std::acos(std::min(1.0, r / rprime)), std::asin(std::min(1.0, arg)));
    return std::clamp(t, 0.0, kPi / 2);
}

double map_specbound(const SpectrumMap& map) {
    double m = 0.0;
    for (const auto& c : map.cells) {
        if (c.label == Label::Spectrum) m = std::max(m, std::abs(c.lambda));
    }
    return m + std::hypot(map.grid.dx(), map.grid.dy());
}

SectorReport sector_inclusion_check(const SpectrumMap& map, cplx lambda, double r, double rprime) {
    const auto loc = map.locate(lambda);
    if (!loc) throw DomainError("sector apex lies outside the spectrum map");
    const MapCell& apex = map.at(loc->first, loc->second);
    if (apex.label != Label::Spectrum) {
        throw DomainError("sector apex cell is labeled " + to_string(apex.label) + ", not spectrum");
    }

    SectorReport out;
    out.lambda = apex.lambda;
    out.r = r;
    out.rprime = rprime;
    out.specbound = map_specbound(map);
    out.halfangle = sector_halfangle(r, rprime, std::abs(out.lambda), out.specbound);

    const double h = 0.25 * std::min(map.grid.dx(), map.grid.dy());
    const double radius = r * std::abs(out.lambda);
    const double dir = std::arg(out.lambda);
    const auto radial_steps = static_cast<int>(std::ceil(radius / h));
    std::vector<bool> flagged(map.cells.size(), false);
    for (int k = 0; k <= radial_steps; ++k) {
        const double rho = radius * k / std::max(1, radial_steps);
        const auto ang_steps = static_cast<int>(std::ceil(2.0 * out.halfangle * rho / h));
        for (int m = 0; m <= ang_steps; ++m) {
            const double phi = ang_steps == 0
                                   ? dir
                                   : dir - out.halfangle + 2.0 * out.halfangle * m / ang_steps;
            const cplx z = std::polar(rho, phi);
            ++out.sampled;
            const auto cell = map.locate(z);
            if (!cell) {
                ++out.outside_map;
                continue;
            }
            const std::size_t idx = static_cast<std::size_t>(cell->second) * map.grid.nx + cell->first;
            if (map.cells[idx].label == Label::Resolvent && !flagged[idx]) {
                flagged[idx] = true;
                out.counterexamples.push_back(idx);
            }
        }
    }
    std::sort(out.counterexamples.begin(), out.counterexamples.end());
    out.pass = out.counterexamples.empty();
    return out;
}

QuasinilReport quasinil_certificate(const SymbolSpec& g, const SpaceSpec& space,
                                    const QuasinilConfig& cfg) {
    QuasinilReport out;
    if (g.bounded_on_circle()) {
        const auto grid = CircleGrid::make(1.0, cfg.boundary_samples, true);
        const auto values = symbol_boundary(g, grid).values;
        for (const auto& v : values) out.sup_norm = std::max(out.sup_norm, std::abs(v));
        out.sup_bounded = std::isfinite(out.sup_norm);
    } else {
        out.sup_norm = std::numeric_limits<double>::infinity();
    }

    SpaceSpec p2 = space;
    p2.p = 2.0;
    out.rho = spectral_radius_estimate(symbol_series(g, cfg.radius_truncation), p2,
                                       cfg.radius_truncation, cfg.radius_powers);
    out.rho_threshold = cfg.radius_threshold;
    out.rho_below_threshold = out.rho.back() < cfg.radius_threshold;

    if (space.is_hardy()) {
        AxesConfig acfg;
        acfg.points_per_half_axis = cfg.axes_points;
        acfg.classifier = cfg.classifier;
        acfg.threads = cfg.threads;
        out.axes = axes_test(g, space, acfg);
    }
    out.quasi_nilpotent =
        out.sup_bounded || (out.axes && out.axes->verdict == AxesVerdict::InClosure);
    return out;
}

std::vector<bool> boundary_band(const SpectrumMap& map, int width) {
    const int nx = map.grid.nx, ny = map.grid.ny;
    std::vector<bool> band(map.cells.size(), false);
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const Label l = map.at(ix, iy).label;
            bool edge = false;
            for (int dy = -width; dy <= width && !edge; ++dy) {
                for (int dx = -width; dx <= width && !edge; ++dx) {
                    const int jx = ix + dx, jy = iy + dy;
                    if (jx < 0 || jy < 0 || jx >= nx || jy >= ny) continue;
                    edge = map.at(jx, jy).label != l;
                }
            }
            band[static_cast<std::size_t>(iy) * nx + ix] = edge;
        }
    }
    return band;
}

StabilityReport stability_harness(const SymbolSpec& g, const SymbolSpec& h, const SpaceSpec& space,
                                  const MapGrid& grid, const ClassifierConfig& cfg,
                                  const QuasinilConfig& qcfg, unsigned threads) {
    StabilityReport out;
    out.perturbation = quasinil_certificate(h, space, qcfg);
    out.probative = out.perturbation.quasi_nilpotent;
    out.base = spectrum_map(g, space, grid, cfg, threads);
    out.perturbed = spectrum_map(g + h, space, grid, cfg, threads);

    const auto band_a = boundary_band(out.base);
    const auto band_b = boundary_band(out.perturbed);
    std::size_t agree = 0;
    auto decided = [](Label l) { return l == Label::Resolvent || l == Label::Spectrum; };
    for (std::size_t i = 0; i < out.base.cells.size(); ++i) {
        const Label a = out.base.cells[i].label, b = out.perturbed.cells[i].label;
        if (!decided(a) || !decided(b)) continue;
        ++out.decided_both;
        if (a == b) {
            ++agree;
            continue;
        }
        out.disagreements.push_back(i);
        if (!band_a[i] && !band_b[i]) out.disagreements_outside_band.push_back(i);
    }
    out.agreement = out.decided_both ? static_cast<double>(agree) / out.decided_both : 1.0;
    out.pass = out.probative && out.agreement >= 0.99 && out.disagreements_outside_band.empty();
    return out;
}

} // namespace cesaro
