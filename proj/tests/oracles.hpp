#pragma once

// Independent reference computations. Nothing here calls into the library
// except for plain grid geometry (node positions and weights).

#include "cesaro/grids.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Coeffs = std::vector<cplx>;

inline constexpr double kPi = 3.14159265358979323846;

// Σ c_k z^k with explicit powers.
inline cplx power_sum(const Coeffs& c, cplx z) {
    cplx s{0.0}, zk{1.0};
    for (std::size_t k = 0; k < c.size(); ++k, zk *= z) s += c[k] * zk;
    return s;
}

inline Coeffs cauchy(const Coeffs& f, const Coeffs& g, std::size_t n) {
    Coeffs out(n + 1, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            if (i + j <= n) out[i + j] += f[i] * g[j];
    return out;
}

// exp(s·f) for f(0) = 0 by summing (s f)^m / m! term by term.
inline Coeffs exp_by_powers(const Coeffs& f, cplx s, std::size_t n) {
    Coeffs sf(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) sf[k] = s * f[k];
    Coeffs out(n + 1, 0.0), term(n + 1, 0.0);
    term[0] = 1.0;
    for (std::size_t m = 0; m <= n; ++m) {
        for (std::size_t k = 0; k <= n; ++k) out[k] += term[k];
        term = cauchy(term, sf, n);
        for (auto& t : term) t /= static_cast<double>(m + 1);
    }
    return out;
}

// Coefficients of ∫_0^z f g′ up to degree n.
inline Coeffs integrate_f_dg(const Coeffs& g, const Coeffs& f, std::size_t n) {
    Coeffs dg;
    for (std::size_t j = 1; j < g.size(); ++j) dg.push_back(static_cast<double>(j) * g[j]);
    if (dg.empty()) dg.push_back(0.0);
    const Coeffs prod = cauchy(f, dg, n);
    Coeffs out(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k) out[k] = prod[k - 1] / static_cast<double>(k);
    return out;
}

// ‖z^n‖² in the p = 2 space as a running product.
inline double monomial_norm_sq(std::size_t n, bool bergman, double alpha) {
    if (!bergman) return 1.0;
    double v = 1.0;
    for (std::size_t j = 1; j <= n; ++j) v *= static_cast<double>(j) / (static_cast<double>(j) + alpha + 1.0);
    return v;
}

// Matrix of P_N T_g P_N in the orthonormal monomial basis, column by column.
inline Eigen::MatrixXcd compression(const Coeffs& g, std::size_t n, bool bergman = false,
                                    double alpha = 0.0) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        Coeffs e(col + 1, 0.0);
        e[col] = 1.0;
        const Coeffs img = integrate_f_dg(g, e, n - 1);
        for (std::size_t row = 0; row < n; ++row) {
            m(row, col) = img[row] * std::sqrt(monomial_norm_sq(row, bergman, alpha) /
                                               monomial_norm_sq(col, bergman, alpha));
        }
    }
    return m;
}

inline double spectral_norm(const Eigen::MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

// ‖Mⁿ‖^{1/n} for n = 1..nmax.
inline std::vector<double> gelfand_sequence(const Eigen::MatrixXcd& m, int nmax) {
    std::vector<double> out;
    Eigen::MatrixXcd p = m;
    for (int n = 1; n <= nmax; ++n) {
        out.push_back(std::pow(spectral_norm(p), 1.0 / n));
        p = p * m;
    }
    return out;
}

// (n!)^{-1/n}: ‖T_zⁿ‖ = 1/n! on H², attained at the constant function.
inline double volterra_rho(int n) { return std::exp(-std::lgamma(n + 1.0) / n); }

// λ ∈ σ(T_g) for g = log 1/(1−z): Re(1/λ) ≥ 1/p (Hardy), ≥ (2+α)/p (Bergman).
inline bool cesaro_spectrum(cplx lambda, double p, bool bergman = false, double alpha = 0.0) {
    const double threshold = (bergman ? 2.0 + alpha : 1.0) / p;
    return (1.0 / lambda).real() >= threshold;
}

// Cell center λ lies within `width` cells (Chebyshev) of a cell whose oracle label differs.
inline bool near_oracle_boundary(cplx lambda, double dx, double dy, int width,
                                 const std::function<bool(cplx)>& inside) {
    const bool here = inside(lambda);
    for (int a = -width; a <= width; ++a)
        for (int b = -width; b <= width; ++b)
            if (inside(lambda + cplx(a * dx, b * dy)) != here) return true;
    return false;
}

enum class Ratio { Infinity, Two };

inline double ratio(double mean_w, double mean_logw, double mean_inv, Ratio r) {
    return r == Ratio::Infinity ? mean_w / std::exp(mean_logw) : mean_w * mean_inv;
}

// Per-level maxima of the A∞ or A₂ ratio with plain sums. Resolution level ℓ
// samples log w on K·2^ℓ half-offset nodes and scans dyadic arcs of level
// k ≤ ℓ plus the half-shifted family for k ≥ 1.
inline std::vector<double> circle_level_maxima(const std::function<double(double)>& log_w, int levels,
                                               std::size_t k_per_arc, Ratio r) {
    std::vector<double> out;
    for (int res = 0; res <= levels; ++res) {
        const std::size_t m = k_per_arc << res;
        std::vector<double> lw(m);
        for (std::size_t j = 0; j < m; ++j) lw[j] = log_w(2.0 * kPi * (j + 0.5) / m);
        double best = 0.0;
        for (int k = 0; k <= res; ++k) {
            const std::size_t len = m >> k;
            for (int shifted = 0; shifted < (k == 0 ? 1 : 2); ++shifted) {
                for (std::size_t i = 0; i < (std::size_t{1} << k); ++i) {
                    const std::size_t start = i * len + (shifted ? len / 2 : 0);
                    double sw = 0, sl = 0, si = 0;
                    for (std::size_t j = 0; j < len; ++j) {
                        const double v = lw[(start + j) % m];
                        sw += std::exp(v);
                        sl += v;
                        si += std::exp(-v);
                    }
                    best = std::max(best, ratio(sw / len, sl / len, si / len, r));
                }
            }
        }
        out.push_back(best);
    }
    return out;
}

// Disk counterpart on the dyadic polar grid: the box over a level-k arc takes
// every node of panels k..d (d = ℓ + 3) whose angle lies in the arc, and the
// deepest panel is weighted by area(tail beyond 1−2^{−d}) / area(panel d).
inline std::vector<double> disk_level_maxima(const cesaro::DiskGrid& grid, int levels,
                                             const std::function<double(cplx)>& log_w, Ratio r) {
    auto ring_area = [](double a, double b) { return b * b - a * a; };
    std::vector<double> out;
    for (int res = 0; res <= levels; ++res) {
        const int deepest = res + 3;
        const double inner = 1.0 - std::ldexp(1.0, -deepest);
        const double stretch =
            ring_area(inner, 1.0) / ring_area(inner, 1.0 - std::ldexp(1.0, -deepest - 1));
        double best = 0.0;
        for (int k = 0; k <= res; ++k) {
            const double len = 2.0 * kPi * std::ldexp(1.0, -k);
            for (int shifted = 0; shifted < (k == 0 ? 1 : 2); ++shifted) {
                for (std::size_t i = 0; i < (std::size_t{1} << k); ++i) {
                    const double start = i * len + (shifted ? 0.5 * len : 0.0);
                    double sa = 0, sw = 0, sl = 0, si = 0;
                    for (std::size_t ring = 0; ring < grid.rings().size(); ++ring) {
                        const int panel = grid.rings()[ring].panel;
                        if (panel < k || panel > deepest) continue;
                        const double a = grid.node_weight(ring) * (panel == deepest ? stretch : 1.0);
                        for (std::size_t j = 0; j < grid.rings()[ring].angular; ++j) {
                            double t = grid.theta(ring, j) - start;
                            t = std::fmod(t + 4.0 * kPi, 2.0 * kPi);
                            if (k > 0 && t >= len) continue;
                            const double v = log_w(grid.node(ring, j));
                            sa += a;
                            sw += a * std::exp(v);
                            sl += a * v;
                            si += a * std::exp(-v);
                        }
                    }
                    best = std::max(best, ratio(sw / sa, sl / sa, si / sa, r));
                }
            }
        }
        out.push_back(best);
    }
    return out;
}

} // namespace oracle
