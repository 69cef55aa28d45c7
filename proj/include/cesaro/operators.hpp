#pragma once

#include "cesaro/series.hpp"
#include "cesaro/symbol.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace cesaro {

struct SpaceSpec {
    enum class Kind { Hardy, Bergman };

    Kind kind = Kind::Hardy;
    double p = 2.0;
    double alpha = 0.0;

    /// Throws DomainError unless p > 0 (and α > −1 for Bergman).
    static SpaceSpec hardy(double p = 2.0);
    static SpaceSpec bergman(double p = 2.0, double alpha = 0.0);

    bool is_hardy() const noexcept { return kind == Kind::Hardy; }

    /// ‖zⁿ‖² in the p = 2 space: 1 (Hardy) or n!Γ(α+2)/Γ(n+α+2) (Bergman).
    double monomial_norm_sq(std::size_t n) const;

    std::string describe() const;
};

struct TruncatedOperator {
    Eigen::MatrixXcd matrix;
    SpaceSpec basis;

    Eigen::Index size() const noexcept { return matrix.rows(); }
};

PowerSeries apply_Tg(const PowerSeries& g, const PowerSeries& f, std::size_t workdeg);
PowerSeries apply_Mh(const PowerSeries& h, const PowerSeries& f, std::size_t workdeg);

/// Solution f of (I − λ^{-1}T_g) f = h. The constant term of g is ignored,
/// since T_g only sees g′.
PowerSeries resolvent_apply(const PowerSeries& g, cplx lambda, const PowerSeries& h,
                            std::size_t workdeg);

/// P_N T_g P_N in the orthonormal monomial basis. Throws UnsupportedSpace if p ≠ 2.
TruncatedOperator compression_matrix(const PowerSeries& g, const SpaceSpec& space, std::size_t n);
TruncatedOperator multiplication_compression(const PowerSeries& h, const SpaceSpec& space,
                                             std::size_t n);

/// Largest singular value by power iteration on T*T from the normalized
/// all-ones vector. Throws NonConvergence after `max_iter` steps.
double operator_norm_estimate(const TruncatedOperator& t, double tol = 1e-10,
                              int max_iter = 20000);

/// ρ_n = ‖(P_N T_g P_N)ⁿ‖^{1/n} for n = 1..n_max.
std::vector<double> spectral_radius_estimate(const PowerSeries& g, const SpaceSpec& space,
                                             std::size_t n, int n_max, double tol = 1e-10);

/// ‖f‖ in the space: coefficient sums for p = 2, otherwise quadrature of
/// |f|^p at radius 1−1/M (Hardy) or on a dyadic disk grid (Bergman).
double space_norm(const PowerSeries& f, const SpaceSpec& space, std::size_t boundary_samples = 4096);

/// Taylor coefficients of the reproducing kernel at w.
PowerSeries reproducing_kernel(cplx w, const SpaceSpec& space, std::size_t degree);

struct ResolventProbe {
    cplx w;
    std::size_t degree;
    double ratio;
};

struct ResolventProbeReport {
    cplx lambda;
    std::vector<ResolventProbe> probes;
    double exponent = 0.0;
};

struct ProbeOptions {
    double degree_scale = 16.0;    // working degree ≈ degree_scale/(1−|w|)
    std::size_t max_degree = 4096;
    double direction = 0.0;        // arg w
    std::size_t fit_points = 4;
};

/// ‖R_g(λ)k_w‖/‖k_w‖ at |w| = each radius; the exponent is the slope of
/// log ratio against log 1/(1−|w|) over the outermost probes.
ResolventProbeReport resolvent_probe(const SymbolSpec& g, cplx lambda, const SpaceSpec& space,
                                     const std::vector<double>& radii,
                                     const ProbeOptions& options = {});

/// Geometric probe radii 1−2^{−j}, j = first..last.
std::vector<double> dyadic_radii(int first, int last);

/// Non-zero entries as k,n,re,im.
void write_operator_csv(std::ostream& out, const TruncatedOperator& t);

} // namespace cesaro
