#include "cesaro/symbol.hpp"

#include "cesaro/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cesaro {

namespace {

std::string format_complex(cplx c) {
    std::ostringstream out;
    out.precision(6);
    if (c.imag() == 0.0) {
        out << c.real();
    } else {
        out << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
    }
    return out.str();
}

std::string format_list(const std::vector<cplx>& cs) {
    std::string s = "[";
    for (std::size_t k = 0; k < cs.size(); ++k) s += (k ? "," : "") + format_complex(cs[k]);
    return s + "]";
}

double wrap_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0) t += kTwoPi;
    return t;
}

// log 1/(1−z) at z = r e^{iθ}, written to avoid cancellation in 1−z.
cplx cesaro_log_polar(double r, double theta) {
    const double t = wrap_angle(theta);
    if (r >= 1.0) {
        if (t == 0.0) return {std::numeric_limits<double>::infinity(), 0.0};
        return {-std::log(2.0 * std::sin(0.5 * t)), 0.5 * (kPi - t)};
    }
    const double s = std::sin(0.5 * t);
    const double re = (1.0 - r) + 2.0 * r * s * s;
    const double im = -r * std::sin(t);
    return {-std::log(std::hypot(re, im)), -std::atan2(im, re)};
}

cplx horner(const std::vector<cplx>& c, cplx z) {
    cplx acc{0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

cplx horner_derivative(const std::vector<cplx>& c, cplx z) {
    cplx acc{0.0};
    for (std::size_t k = c.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * c[k];
    return acc;
}

cplx atom_value(const SymbolTerm& t, double r, double theta) {
    switch (t.kind) {
    case SymbolKind::CesaroLog: return cesaro_log_polar(r, theta);
    case SymbolKind::PowerLog: return t.power * cesaro_log_polar(r, theta);
    case SymbolKind::BlaschkeFactor: {
        const cplx z = std::polar(r, theta);
        return (t.a - z) / (1.0 - std::conj(t.a) * z) - t.a;
    }
    case SymbolKind::Polynomial:
    case SymbolKind::ExplicitCoeffs: return horner(t.coeffs, std::polar(r, theta));
    }
    return {};
}

SymbolTerm make_term(SymbolKind kind) {
    SymbolTerm t;
    t.kind = kind;
    return t;
}

bool atom_singular(const SymbolTerm& t) {
    return (t.kind == SymbolKind::CesaroLog || t.kind == SymbolKind::PowerLog) &&
           t.weight != cplx{0.0} && (t.kind == SymbolKind::CesaroLog || t.power != 0.0);
}

} // namespace

SymbolSpec SymbolSpec::cesaro_log() {
    SymbolSpec s;
    s.name_ = "cesaro-log";
    s.terms_.push_back(make_term(SymbolKind::CesaroLog));
    return s;
}

SymbolSpec SymbolSpec::polynomial(std::vector<cplx> coeffs) {
    SymbolSpec s;
    s.name_ = "polynomial" + format_list(coeffs);
    SymbolTerm t = make_term(SymbolKind::Polynomial);
    t.coeffs = std::move(coeffs);
    s.terms_.push_back(std::move(t));
    return s;
}

SymbolSpec SymbolSpec::blaschke(cplx a) {
    if (!(std::abs(a) < 1.0)) {
        throw DomainError("Blaschke factor needs |a| < 1, got |a| = " + std::to_string(std::abs(a)));
    }
    SymbolSpec s;
    s.name_ = "blaschke(a=" + format_complex(a) + ")";
    SymbolTerm t = make_term(SymbolKind::BlaschkeFactor);
    t.a = a;
    s.terms_.push_back(t);
    return s;
}

SymbolSpec SymbolSpec::power_log(double a) {
    SymbolSpec s;
    s.name_ = "power-log(a=" + format_complex(a) + ")";
    SymbolTerm t = make_term(SymbolKind::PowerLog);
    t.power = a;
    s.terms_.push_back(t);
    return s;
}

SymbolSpec SymbolSpec::explicit_coeffs(std::vector<cplx> coeffs) {
    SymbolSpec s;
    s.name_ = "explicit" + format_list(coeffs);
    SymbolTerm t = make_term(SymbolKind::ExplicitCoeffs);
    t.coeffs = std::move(coeffs);
    s.terms_.push_back(std::move(t));
    return s;
}

SymbolSpec SymbolSpec::scaled(cplx c) const {
    SymbolSpec s = *this;
    for (auto& t : s.terms_) t.weight *= c;
    s.name_ = "(" + format_complex(c) + ")*" + name_;
    return s;
}

SymbolSpec SymbolSpec::with_name(std::string name) const {
    SymbolSpec s = *this;
    s.name_ = std::move(name);
    return s;
}

SymbolSpec operator+(const SymbolSpec& g, const SymbolSpec& h) {
    if (g.is_zero()) return h;
    if (h.is_zero()) return g;
    SymbolSpec s = g;
    s.terms_.insert(s.terms_.end(), h.terms_.begin(), h.terms_.end());
    s.name_ = g.name_ + " + " + h.name_;
    return s;
}

cplx SymbolSpec::value_polar(double r, double theta) const {
    cplx acc{0.0};
    for (const auto& t : terms_) acc += t.weight * atom_value(t, r, theta);
    return acc;
}

cplx SymbolSpec::value(cplx z) const {
    return value_polar(std::abs(z), std::arg(z));
}

cplx SymbolSpec::derivative(cplx z) const {
    cplx acc{0.0};
    for (const auto& t : terms_) {
        cplx d{0.0};
        switch (t.kind) {
        case SymbolKind::CesaroLog: d = 1.0 / (1.0 - z); break;
        case SymbolKind::PowerLog: d = t.power / (1.0 - z); break;
        case SymbolKind::BlaschkeFactor: {
            const cplx den = 1.0 - std::conj(t.a) * z;
            d = (std::norm(t.a) - 1.0) / (den * den);
            break;
        }
        case SymbolKind::Polynomial:
        case SymbolKind::ExplicitCoeffs: d = horner_derivative(t.coeffs, z); break;
        }
        acc += t.weight * d;
    }
    return acc;
}

std::vector<double> SymbolSpec::singular_angles() const {
    for (const auto& t : terms_) {
        if (atom_singular(t)) return {0.0};
    }
    return {};
}

cplx SymbolSpec::boundary_value(double theta, std::size_t grid_size) const {
    cplx acc{0.0};
    for (const auto& t : terms_) {
        const double r = t.kind == SymbolKind::ExplicitCoeffs
                             ? 1.0 - 1.0 / static_cast<double>(grid_size)
                             : 1.0;
        acc += t.weight * atom_value(t, r, theta);
    }
    return acc;
}

PowerSeries symbol_series(const SymbolSpec& s, std::size_t degree) {
    std::vector<cplx> c(degree + 1, cplx{0.0});
    for (const auto& t : s.terms()) {
        switch (t.kind) {
        case SymbolKind::CesaroLog:
        case SymbolKind::PowerLog: {
            const double m = t.kind == SymbolKind::PowerLog ? t.power : 1.0;
            for (std::size_t n = 1; n <= degree; ++n) {
                c[n] += t.weight * (m / static_cast<double>(n));
            }
            break;
        }
        case SymbolKind::BlaschkeFactor: {
            const cplx abar = std::conj(t.a);
            cplx p{1.0};
            for (std::size_t n = 1; n <= degree; ++n) {
                c[n] += t.weight * p * (std::norm(t.a) - 1.0);
                p *= abar;
            }
            break;
        }
        case SymbolKind::Polynomial:
        case SymbolKind::ExplicitCoeffs:
            for (std::size_t n = 0; n <= degree && n < t.coeffs.size(); ++n) {
                c[n] += t.weight * t.coeffs[n];
            }
            break;
        }
    }
    return PowerSeries(std::move(c));
}

BoundarySamples symbol_boundary(const SymbolSpec& s, const CircleGrid& grid) {
    const std::size_t m = grid.samples();
    BoundarySamples out;
    const bool on_circle = grid.radius() == 1.0;
    if (on_circle) {
        const double half = grid.offset() ? 0.5 : 0.0;
        for (double sing : s.singular_angles()) {
            const double t = wrap_angle(sing) * static_cast<double>(m) / kTwoPi - half;
            const double nearest = std::round(t);
            if (!grid.offset() && std::abs(t - nearest) < 1e-9) {
                throw SingularSample("grid node " +
                                     std::to_string(static_cast<std::size_t>(nearest) % m) +
                                     " coincides with a singular point of " + s.name());
            }
            const auto lo = static_cast<std::size_t>(std::floor(t + static_cast<double>(m))) % m;
            out.singular_indices.push_back(lo);
            out.singular_indices.push_back((lo + 1) % m);
        }
        std::sort(out.singular_indices.begin(), out.singular_indices.end());
        out.singular_indices.erase(
            std::unique(out.singular_indices.begin(), out.singular_indices.end()),
            out.singular_indices.end());
    }
    out.values.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        out.values[j] = on_circle ? s.boundary_value(grid.theta(j), m)
                                  : s.value_polar(grid.radius(), grid.theta(j));
    }
    return out;
}

} // namespace cesaro
