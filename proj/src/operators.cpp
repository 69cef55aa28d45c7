#include "cesaro/operators.hpp"

#include "cesaro/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace cesaro {

namespace {

double log_monomial_norm_sq(const SpaceSpec& s, std::size_t n) {
    if (s.is_hardy()) return 0.0;
    const double nn = static_cast<double>(n);
    return std::lgamma(nn + 1.0) + std::lgamma(s.alpha + 2.0) - std::lgamma(nn + s.alpha + 2.0);
}

void require_p2(const SpaceSpec& s) {
    if (s.p != 2.0) {
        throw UnsupportedSpace("matrix models need p = 2, got " + s.describe());
    }
}

} // namespace

SpaceSpec SpaceSpec::hardy(double p) {
    if (!(p > 0.0)) throw DomainError("Hardy exponent p must be positive");
    return {Kind::Hardy, p, 0.0};
}

SpaceSpec SpaceSpec::bergman(double p, double alpha) {
    if (!(p > 0.0)) throw DomainError("Bergman exponent p must be positive");
    if (!(alpha > -1.0)) throw DomainError("Bergman weight exponent must exceed -1");
    return {Kind::Bergman, p, alpha};
}

double SpaceSpec::monomial_norm_sq(std::size_t n) const {
    return std::exp(log_monomial_norm_sq(*this, n));
}

std::string SpaceSpec::describe() const {
    std::ostringstream out;
    if (is_hardy()) {
        out << "hardy(p=" << p << ")";
    } else {
        out << "bergman(p=" << p << ",alpha=" << alpha << ")";
    }
    return out.str();
}

PowerSeries apply_Tg(const PowerSeries& g, const PowerSeries& f, std::size_t workdeg) {
    if (workdeg < 1) throw DomainError("apply_Tg needs working degree at least 1");
    // b_j = (j+1) g_{j+1}
    std::vector<cplx> b(workdeg);
    for (std::size_t j = 0; j < workdeg; ++j) b[j] = static_cast<double>(j + 1) * g.at(j + 1);
    std::vector<cplx> c(workdeg + 1, cplx{0.0});
    const std::size_t df = f.degree();
    for (std::size_t k = 1; k <= workdeg; ++k) {
        cplx acc{0.0};
        const std::size_t top = std::min(k - 1, df);
        for (std::size_t m = 0; m <= top; ++m) acc += f[m] * b[k - 1 - m];
        c[k] = acc / static_cast<double>(k);
    }
    return PowerSeries(std::move(c));
}

PowerSeries apply_Mh(const PowerSeries& h, const PowerSeries& f, std::size_t workdeg) {
    return multiply(h, f, workdeg);
}

PowerSeries resolvent_apply(const PowerSeries& g, cplx lambda, const PowerSeries& h,
                            std::size_t workdeg) {
    if (lambda == cplx{0.0}) throw DomainError("resolvent needs lambda != 0");
    std::vector<cplx> gc(workdeg + 1, cplx{0.0});
    for (std::size_t k = 1; k <= workdeg; ++k) gc[k] = g.at(k);
    const PowerSeries g0(std::move(gc));

    const cplx mu = 1.0 / lambda;
    const PowerSeries e = exp_series(g0, mu, workdeg);
    if (workdeg == 0) return PowerSeries({h[0] * e[0]});
    const PowerSeries e_inv = exp_series(g0, -mu, workdeg);
    const PowerSeries inner = primitive(multiply(e_inv, derivative(h), workdeg - 1));
    return h[0] * e + multiply(e, inner, workdeg);
}

TruncatedOperator compression_matrix(const PowerSeries& g, const SpaceSpec& space, std::size_t n) {
    require_p2(space);
    TruncatedOperator t{Eigen::MatrixXcd::Zero(n, n), space};
    std::vector<double> log_norm(n);
    for (std::size_t k = 0; k < n; ++k) log_norm[k] = log_monomial_norm_sq(space, k);
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t m = 0; m < k; ++m) {
            const std::size_t j = k - 1 - m;
            const cplx b = static_cast<double>(j + 1) * g.at(j + 1);
            if (b == cplx{0.0}) continue;
            const double scale = std::exp(0.5 * (log_norm[k] - log_norm[m]));
            t.matrix(k, m) = b / static_cast<double>(k) * scale;
        }
    }
    return t;
}

TruncatedOperator multiplication_compression(const PowerSeries& h, const SpaceSpec& space,
                                             std::size_t n) {
    require_p2(space);
    TruncatedOperator t{Eigen::MatrixXcd::Zero(n, n), space};
    std::vector<double> log_norm(n);
    for (std::size_t k = 0; k < n; ++k) log_norm[k] = log_monomial_norm_sq(space, k);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t m = 0; m <= k; ++m) {
            const cplx c = h.at(k - m);
            if (c == cplx{0.0}) continue;
            t.matrix(k, m) = c * std::exp(0.5 * (log_norm[k] - log_norm[m]));
        }
    }
    return t;
}

double operator_norm_estimate(const TruncatedOperator& t, double tol, int max_iter) {
    const Eigen::Index n = t.size();
    if (n == 0 || t.matrix.isZero(0.0)) return 0.0;

    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(n) / std::sqrt(static_cast<double>(n));
    Eigen::VectorXcd u = t.matrix * v;
    if (u.norm() == 0.0) {
        // The all-ones vector lies in the kernel; fall back to a fixed ramp.
        for (Eigen::Index k = 0; k < n; ++k) v(k) = static_cast<double>(k + 1);
        v.normalize();
        u = t.matrix * v;
    }
    double estimate = u.norm();
    for (int it = 0; it < max_iter; ++it) {
        v = t.matrix.adjoint() * u;
        const double vn = v.norm();
        if (vn == 0.0) return estimate;
        v /= vn;
        u = t.matrix * v;
        const double next = u.norm();
        if (std::abs(next - estimate) <= tol * next) return next;
        estimate = next;
    }
    throw NonConvergence("power iteration did not reach relative tolerance " +
                         std::to_string(tol) + " in " + std::to_string(max_iter) + " steps");
}

std::vector<double> spectral_radius_estimate(const PowerSeries& g, const SpaceSpec& space,
                                             std::size_t n, int n_max, double tol) {
    if (n_max < 1) throw DomainError("spectral radius estimate needs n_max >= 1");
    const TruncatedOperator a = compression_matrix(g, space, n);
    std::vector<double> rho;
    rho.reserve(n_max);
    TruncatedOperator power = a;
    for (int k = 1; k <= n_max; ++k) {
        if (k > 1) {
            power.matrix = a.matrix.triangularView<Eigen::StrictlyLower>() * power.matrix;
        }
        const double norm = operator_norm_estimate(power, tol);
        rho.push_back(norm > 0.0 ? std::pow(norm, 1.0 / k) : 0.0);
    }
    return rho;
}

double space_norm(const PowerSeries& f, const SpaceSpec& space, std::size_t boundary_samples) {
    if (space.p == 2.0) {
        double acc = 0.0;
        for (std::size_t n = 0; n <= f.degree(); ++n) {
            acc += std::norm(f[n]) * space.monomial_norm_sq(n);
        }
        return std::sqrt(acc);
    }
    if (space.is_hardy()) {
        const auto grid = CircleGrid::make(1.0 - 1.0 / static_cast<double>(boundary_samples),
                                           boundary_samples, true);
        const auto values = evaluate_on_circle(f, grid);
        double acc = 0.0;
        for (const auto& v : values) acc += std::pow(std::abs(v), space.p);
        return std::pow(acc / static_cast<double>(values.size()), 1.0 / space.p);
    }
    const auto disk = DiskGrid::dyadic(10, 16, 4);
    double acc = 0.0;
    for (std::size_t i = 0; i < disk.rings().size(); ++i) {
        const auto& ring = disk.rings()[i];
        const auto grid = CircleGrid::make(ring.radius, ring.angular, disk.angular_offset());
        const auto values = evaluate_on_circle(f, grid);
        double s = 0.0;
        for (const auto& v : values) s += std::pow(std::abs(v), space.p);
        const double w = std::pow(1.0 - ring.radius * ring.radius, space.alpha);
        acc += disk.node_weight(i) * w * s;
    }
    // Normalize the weight (1−|z|²)^α dA to unit mass.
    return std::pow(acc * (space.alpha + 1.0), 1.0 / space.p);
}

PowerSeries reproducing_kernel(cplx w, const SpaceSpec& space, std::size_t degree) {
    std::vector<cplx> c(degree + 1);
    const cplx wb = std::conj(w);
    c[0] = 1.0;
    const double s = space.is_hardy() ? 1.0 : 2.0 + space.alpha;
    for (std::size_t n = 1; n <= degree; ++n) {
        const double nn = static_cast<double>(n);
        c[n] = c[n - 1] * wb * ((nn - 1.0 + s) / nn);
    }
    return PowerSeries(std::move(c));
}

std::vector<double> dyadic_radii(int first, int last) {
    std::vector<double> r;
    for (int j = first; j <= last; ++j) r.push_back(1.0 - std::ldexp(1.0, -j));
    return r;
}

ResolventProbeReport resolvent_probe(const SymbolSpec& g, cplx lambda, const SpaceSpec& space,
                                     const std::vector<double>& radii,
                                     const ProbeOptions& options) {
    if (lambda == cplx{0.0}) throw DomainError("resolvent probe needs lambda != 0");
    ResolventProbeReport report{lambda, {}, 0.0};
    for (double r : radii) {
        if (!(r >= 0.0 && r < 1.0)) throw DomainError("probe radius must lie in [0, 1)");
        const auto degree = static_cast<std::size_t>(std::clamp(
            std::ceil(options.degree_scale / (1.0 - r)), 64.0,
            static_cast<double>(options.max_degree)));
        const cplx w = std::polar(r, options.direction);
        const PowerSeries k = reproducing_kernel(w, space, degree);
        const PowerSeries gs = symbol_series(g, degree);
        const PowerSeries rk = resolvent_apply(gs, lambda, k, degree);
        const double ratio = space_norm(rk, space) / space_norm(k, space);
        report.probes.push_back({w, degree, ratio});
    }

    const std::size_t count = std::min(options.fit_points, report.probes.size());
    if (count >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = report.probes.size() - count; i < report.probes.size(); ++i) {
            const double x = -std::log(1.0 - std::abs(report.probes[i].w));
            const double y = std::log(report.probes[i].ratio);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double c = static_cast<double>(count);
        const double den = c * sxx - sx * sx;
        report.exponent = den != 0.0 ? (c * sxy - sx * sy) / den : 0.0;
    }
    return report;
}

void write_operator_csv(std::ostream& out, const TruncatedOperator& t) {
    out << "k,n,re,im\n";
    char buf[128];
    for (Eigen::Index k = 0; k < t.size(); ++k) {
        for (Eigen::Index n = 0; n < t.size(); ++n) {
            const cplx v = t.matrix(k, n);
            if (v == cplx{0.0}) continue;
            std::snprintf(buf, sizeof buf, "%td,%td,%.17g,%.17g\n", k, n, v.real(), v.imag());
            out << buf;
        }
    }
}

} // namespace cesaro
