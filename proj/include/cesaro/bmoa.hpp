#pragma once

#include "cesaro/spectra.hpp"
#include "cesaro/symbol.hpp"
#include "cesaro/weights.hpp"

#include <functional>
#include <span>
#include <vector>

namespace cesaro {

/// Real function on the circle, sampled on every resolution grid of an arc tree.
class RealBoundaryFunction {
public:
    /// Throws DomainError on non-finite samples.
    static RealBoundaryFunction sample(const ArcDyadicTree& tree,
                                       const std::function<double(double)>& phi,
                                       std::vector<double> singular_angles = {});
    static RealBoundaryFunction real_part(const SymbolSpec& g, const ArcDyadicTree& tree);
    static RealBoundaryFunction imag_part(const SymbolSpec& g, const ArcDyadicTree& tree);

    int levels() const noexcept { return static_cast<int>(samples_.size()) - 1; }
    std::span<const double> samples(int level) const { return samples_[level]; }
    std::span<const double> finest() const { return samples_.back(); }
    /// Finest-grid nodes adjacent to a singular angle.
    std::span<const std::size_t> singular_indices() const noexcept { return singular_; }

    RealBoundaryFunction scaled(double c) const;
    RealBoundaryFunction shifted(double c) const;

private:
    std::vector<std::vector<double>> samples_;
    std::vector<std::size_t> singular_;
};

/// sup over dyadic and half-shifted arcs of avg_I |φ − avg_I φ| on the finest grid.
double bmo_norm(const RealBoundaryFunction& phi, const ArcDyadicTree& tree);

/// max of (1−|z|²)|g′(z)| over the grid nodes and the origin.
double bloch_norm(const SymbolSpec& g, const DiskGrid& grid);

struct GJCandidate {
    double lambda;
    Verdict verdict;
};

struct GJReport {
    double lambda_lo = 0.0;
    double lambda_hi = 0.0;
    double estimate = 0.0;
    double uncertainty = 0.0;
    bool band = false;   // an inconclusive verdict was met inside the bracket
    std::vector<GJCandidate> candidates;
};

/// inf{λ > 0 : e^{φ/λ} ∈ A₂} by bisection on A₂ verdicts. Throws NoBracket if
/// the weight is not bounded at the enlarged upper bracket.
GJReport gj_level(const RealBoundaryFunction& phi, const ArcDyadicTree& tree, double tol,
                  const DivergencePolicy& policy = {});

struct DistanceReport {
    GJReport re;
    GJReport im;
    double proxy = 0.0;
    bool zero_distance = false;
};

DistanceReport dist_hinfty_report(const SymbolSpec& g, const ArcDyadicTree& tree, double tol);

struct AxesConfig {
    int points_per_half_axis = 24;
    ClassifierConfig classifier;
    int norm_levels = 10;
    unsigned threads = 1;
};

/// Classifies ±t, ±it on a geometric ladder from ε₀ = 0.05·λ_max to
/// λ_max = 4·(bmo_norm(Re g) + bmo_norm(Im g)). Hardy spaces get a closure
/// verdict; Bergman spaces only report the labels.
AxesReport axes_test(const SymbolSpec& g, const SpaceSpec& space, const AxesConfig& cfg = {});

} // namespace cesaro
