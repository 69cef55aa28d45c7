#include "cesaro/bmoa.hpp"

#include "cesaro/errors.hpp"
#include "cesaro/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace cesaro {

namespace {

std::vector<std::size_t> adjacent_nodes(std::span<const double> angles, const CircleGrid& grid) {
    std::vector<std::size_t> out;
    const auto m = grid.samples();
    for (double s : angles) {
        double t = std::fmod(s, kTwoPi);
        if (t < 0) t += kTwoPi;
        const double pos = t * static_cast<double>(m) / kTwoPi - (grid.offset() ? 0.5 : 0.0);
        const auto lo = static_cast<std::size_t>(std::floor(pos + static_cast<double>(m))) % m;
        out.push_back(lo);
        out.push_back((lo + 1) % m);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

RealBoundaryFunction symbol_part(const SymbolSpec& g, const ArcDyadicTree& tree, bool imag) {
    return RealBoundaryFunction::sample(
        tree,
        [&](double t) {
            const cplx v = g.boundary_value(t, tree.samples(tree.levels()));
            return imag ? v.imag() : v.real();
        },
        g.singular_angles());
}

} // namespace

RealBoundaryFunction RealBoundaryFunction::sample(const ArcDyadicTree& tree,
                                                  const std::function<double(double)>& phi,
                                                  std::vector<double> singular_angles) {
    RealBoundaryFunction f;
    for (int res = 0; res <= tree.levels(); ++res) {
        const CircleGrid grid = tree.grid(res);
        std::vector<double> v(grid.samples());
        for (std::size_t j = 0; j < v.size(); ++j) {
            v[j] = phi(grid.theta(j));
            if (!std::isfinite(v[j])) {
                throw DomainError("boundary function is not finite at angle " +
                                  std::to_string(grid.theta(j)));
            }
        }
        f.samples_.push_back(std::move(v));
    }
    f.singular_ = adjacent_nodes(singular_angles, tree.grid(tree.levels()));
    return f;
}

RealBoundaryFunction RealBoundaryFunction::real_part(const SymbolSpec& g, const ArcDyadicTree& tree) {
    return symbol_part(g, tree, false);
}

RealBoundaryFunction RealBoundaryFunction::imag_part(const SymbolSpec& g, const ArcDyadicTree& tree) {
    return symbol_part(g, tree, true);
}

RealBoundaryFunction RealBoundaryFunction::scaled(double c) const {
    RealBoundaryFunction f = *this;
    for (auto& level : f.samples_) {
        for (double& v : level) v *= c;
    }
    return f;
}

RealBoundaryFunction RealBoundaryFunction::shifted(double c) const {
    RealBoundaryFunction f = *this;
    for (auto& level : f.samples_) {
        for (double& v : level) v += c;
    }
    return f;
}

double bmo_norm(const RealBoundaryFunction& phi, const ArcDyadicTree& tree) {
    const auto x = phi.samples(std::min(phi.levels(), tree.levels()));
    const std::size_t m = x.size();
    double best = 0.0;
    for (int k = 0; k <= tree.levels(); ++k) {
        const std::size_t len = m >> k;
        const std::size_t count = std::size_t{1} << k;
        for (int s = 0; s < (k == 0 ? 1 : 2); ++s) {
            const std::size_t shift = s == 1 ? len / 2 : 0;
            for (std::size_t i = 0; i < count; ++i) {
                const std::size_t start = i * len + shift;
                double mean = 0.0;
                for (std::size_t j = 0; j < len; ++j) mean += x[(start + j) % m];
                mean /= static_cast<double>(len);
                double osc = 0.0;
                for (std::size_t j = 0; j < len; ++j) osc += std::abs(x[(start + j) % m] - mean);
                best = std::max(best, osc / static_cast<double>(len));
            }
        }
    }
    return best;
}

double bloch_norm(const SymbolSpec& g, const DiskGrid& grid) {
    double best = std::abs(g.derivative(cplx{0.0}));
    for (std::size_t ring = 0; ring < grid.rings().size(); ++ring) {
        const double r = grid.rings()[ring].radius;
        const double damp = 1.0 - r * r;
        for (std::size_t j = 0; j < grid.rings()[ring].angular; ++j) {
            best = std::max(best, damp * std::abs(g.derivative(grid.node(ring, j))));
        }
    }
    return best;
}

GJReport gj_level(const RealBoundaryFunction& phi, const ArcDyadicTree& tree, double tol,
                  const DivergencePolicy& policy) {
    if (!(tol > 0.0)) throw DomainError("Garnett-Jones tolerance must be positive");
    GJReport out;
    auto verdict = [&](double lambda) {
        std::vector<std::vector<double>> levels;
        for (int res = 0; res <= tree.levels(); ++res) {
            const auto s = phi.samples(res);
            std::vector<double> lw(s.size());
            for (std::size_t j = 0; j < s.size(); ++j) lw[j] = s[j] / lambda;
            levels.push_back(std::move(lw));
        }
        const Verdict v =
            a2_characteristic(CircleWeight::from_log_levels(std::move(levels)), tree, policy).verdict;
        out.candidates.push_back({lambda, v});
        return v;
    };

    if (verdict(tol) == Verdict::Bounded) {
        out.lambda_lo = 0.0;
        out.lambda_hi = tol;
        out.estimate = 0.0;
        out.uncertainty = tol;
        return out;
    }

    double hi = std::max(4.0 * bmo_norm(phi, tree), 4.0 * tol);
    for (int attempt = 0;; ++attempt) {
        if (verdict(hi) == Verdict::Bounded) break;
        if (attempt == 3) {
            throw NoBracket("e^{phi/lambda} is not A2-bounded even at lambda = " + std::to_string(hi));
        }
        hi *= 4.0;
    }

    double lo = tol;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const Verdict v = verdict(mid);
        if (v == Verdict::Bounded) {
            hi = mid;
        } else if (v == Verdict::Divergent) {
            lo = mid;
        } else {
            // Bracket each edge of the inconclusive band separately.
            out.band = true;
            double a = mid, b = hi;
            while (b - a > tol) {
                const double m = 0.5 * (a + b);
                (verdict(m) == Verdict::Bounded ? b : a) = m;
            }
            hi = b;
            a = lo;
            b = mid;
            while (b - a > tol) {
                const double m = 0.5 * (a + b);
                (verdict(m) == Verdict::Divergent ? a : b) = m;
            }
            lo = a;
            break;
        }
    }
    out.lambda_lo = lo;
    out.lambda_hi = hi;
    out.estimate = 0.5 * (lo + hi);
    out.uncertainty = 0.5 * (hi - lo);
    return out;
}

DistanceReport dist_hinfty_report(const SymbolSpec& g, const ArcDyadicTree& tree, double tol) {
    DistanceReport out;
    out.re = gj_level(RealBoundaryFunction::real_part(g, tree), tree, tol);
    out.im = gj_level(RealBoundaryFunction::imag_part(g, tree), tree, tol);
    out.proxy = std::max(out.re.estimate, out.im.estimate);
    out.zero_distance = out.re.estimate < tol && out.im.estimate < tol;
    return out;
}

AxesReport axes_test(const SymbolSpec& g, const SpaceSpec& space, const AxesConfig& cfg) {
    if (cfg.points_per_half_axis < 2) throw DomainError("axes ladder needs at least two points");
    AxesReport out;
    const auto tree = ArcDyadicTree::make(cfg.norm_levels);
    out.norm_proxy = bmo_norm(RealBoundaryFunction::real_part(g, tree), tree) +
                     bmo_norm(RealBoundaryFunction::imag_part(g, tree), tree);
    out.lambda_max = out.norm_proxy > 1e-12 ? 4.0 * out.norm_proxy : 1.0;
    out.eps0 = 0.05 * out.lambda_max;

    const int n = cfg.points_per_half_axis;
    const cplx dirs[] = {1.0, -1.0, cplx{0.0, 1.0}, cplx{0.0, -1.0}};
    for (const cplx d : dirs) {
        for (int k = 0; k < n; ++k) {
            const double t = out.eps0 * std::pow(out.lambda_max / out.eps0, double(k) / (n - 1));
            out.points.push_back({d * t, Label::Undecided});
        }
    }

    const PointClassifier classifier(g, space, cfg.classifier);
    parallel_for(out.points.size(), cfg.threads, [&](std::size_t i) {
        try {
            out.points[i].label = classifier.classify(out.points[i].lambda).label;
        } catch (const Error&) {
            out.points[i].label = Label::Undecided;
        }
    });

    if (!space.is_hardy()) {
        out.verdict = AxesVerdict::Exploratory;
        return out;
    }
    const bool any_spectrum = std::any_of(out.points.begin(), out.points.end(),
                                          [](const AxisPoint& p) { return p.label == Label::Spectrum; });
    const bool all_resolvent = std::all_of(out.points.begin(), out.points.end(),
                                           [](const AxisPoint& p) { return p.label == Label::Resolvent; });
    out.verdict = any_spectrum    ? AxesVerdict::NotInClosure
                  : all_resolvent ? AxesVerdict::InClosure
                                  : AxesVerdict::Inconclusive;
    return out;
}

} // namespace cesaro
