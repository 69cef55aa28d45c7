#pragma once

#include "cesaro/operators.hpp"
#include "cesaro/symbol.hpp"
#include "cesaro/weights.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cesaro {

enum class Label { Resolvent, Spectrum, Undecided, Origin };

std::string to_string(Label l);

struct ClassifierConfig {
    int circle_levels = 10;
    std::size_t samples_per_arc = 16;
    int disk_levels = 8;
    std::size_t disk_base_angular = 8;
    int disk_nodes_per_panel = 3;
    // membership radii 1 − 2^{−j}
    int membership_first = 3;
    int membership_last = 12;
    DivergencePolicy policy;
    double min_modulus = 1e-9;
};

struct PointReport {
    cplx lambda;
    Label label = Label::Undecided;
    Verdict membership = Verdict::Inconclusive;
    Verdict weight = Verdict::Inconclusive;
    /// log2 growth of the membership integral over the last radius step.
    double growth_exponent = 0.0;
    std::vector<double> membership_log;   // log of the integrals, one per radius
    GrowthAssessment membership_growth;
    CharacteristicReport weight_report{Condition::AInfinity, {}};
    std::string note;
};

/// Decides λ ∈ ρ(T_g) or σ(T_g) from two channels: membership of e^{g/λ} in
/// the space, and the A∞ (Hardy) or B∞ (Bergman) condition of the weight
/// |e^{g/λ}|^p, times (1−|z|²)^α on the disk. Boundary and disk samples of g
/// are computed once; classify() is thread-safe.
class PointClassifier {
public:
    PointClassifier(const SymbolSpec& g, const SpaceSpec& space, const ClassifierConfig& cfg = {});
    ~PointClassifier();
    PointClassifier(PointClassifier&&) noexcept;
    PointClassifier& operator=(PointClassifier&&) noexcept;

    /// Throws OverflowNearOrigin when |λ| is below cfg.min_modulus.
    PointReport classify(cplx lambda) const;

    const SpaceSpec& space() const noexcept { return space_; }
    const ClassifierConfig& config() const noexcept { return cfg_; }

private:
    struct Data;
    SpaceSpec space_;
    ClassifierConfig cfg_;
    std::unique_ptr<Data> data_;
};

PointReport classify_point(const SymbolSpec& g, cplx lambda, const SpaceSpec& space,
                           const ClassifierConfig& cfg = {});

struct MapGrid {
    double re_min = -0.5;
    double re_max = 2.5;
    double im_min = -1.5;
    double im_max = 1.5;
    int nx = 160;
    int ny = 160;
    /// Exclusion radius; negative selects 0.05·max|λ| over cell centers.
    double eps0 = -1.0;

    double dx() const noexcept { return (re_max - re_min) / nx; }
    double dy() const noexcept { return (im_max - im_min) / ny; }
    cplx center(int ix, int iy) const noexcept {
        return {re_min + (ix + 0.5) * dx(), im_min + (iy + 0.5) * dy()};
    }
    /// Throws DomainError on an empty rectangle or resolution.
    void validate() const;
    /// Same rectangle scaled about the origin.
    MapGrid scaled(double s) const;
};

struct MapCell {
    cplx lambda;
    Label label = Label::Undecided;
    double growth_exponent = 0.0;
    Verdict membership = Verdict::Inconclusive;
    Verdict weight = Verdict::Inconclusive;
    std::string note;
};

/// Cells in row-major order: index = iy·nx + ix, iy along the imaginary axis.
struct SpectrumMap {
    MapGrid grid;
    double eps0 = 0.0;
    std::vector<MapCell> cells;

    const MapCell& at(int ix, int iy) const { return cells[static_cast<std::size_t>(iy) * grid.nx + ix]; }
    std::optional<std::pair<int, int>> locate(cplx z) const;
    std::size_t count(Label l) const;
};

SpectrumMap spectrum_map(const SymbolSpec& g, const SpaceSpec& space, const MapGrid& grid,
                         const ClassifierConfig& cfg = {}, unsigned threads = 1);

/// Applies the origin rule and classifies each remaining cell with `classifier`.
SpectrumMap spectrum_map(const PointClassifier& classifier, const MapGrid& grid, unsigned threads = 1);

struct StarViolation {
    std::size_t cell;     // spectrum cell
    std::size_t target;   // resolvent cell containing t·λ
    double t;
};

/// A spectrum cell violates when t·λ (t = 1/4, 1/2, 3/4) lands in a resolvent cell whose
/// eight neighbours are resolvent too, so one-cell boundary jitter is tolerated.
std::vector<StarViolation> star_shape_check(const SpectrumMap& map);

/// min{arccos(r/r′), arcsin(r(1−r′)|λ|/(r′·specbound))} clamped to [0, π/2].
/// Throws DomainError unless 0 < r < r′ < 1 and specbound ≥ |λ| > 0.
double sector_halfangle(double r, double rprime, double lambda_abs, double specbound);

/// Max modulus of spectrum cells plus one cell diagonal.
double map_specbound(const SpectrumMap& map);

struct SectorReport {
    bool pass = false;
    cplx lambda;
    double r = 0.0;
    double rprime = 0.0;
    double specbound = 0.0;
    double halfangle = 0.0;
    std::size_t sampled = 0;
    std::size_t outside_map = 0;
    std::vector<std::size_t> counterexamples;   // resolvent cells hit by the sector
};

/// Samples the convex hull of 0 and the arc of radius r|λ| about arg λ at a
/// quarter-cell spacing. λ is snapped to the center of its cell, which must be
/// labeled spectrum (DomainError otherwise).
SectorReport sector_inclusion_check(const SpectrumMap& map, cplx lambda, double r, double rprime);

struct QuasinilConfig {
    std::size_t boundary_samples = 4096;
    std::size_t radius_truncation = 128;
    int radius_powers = 32;
    double radius_threshold = 0.15;
    int axes_points = 24;
    ClassifierConfig classifier;
    unsigned threads = 1;
};

enum class AxesVerdict { InClosure, NotInClosure, Inconclusive, Exploratory };

struct AxisPoint {
    cplx lambda;
    Label label;
};

struct AxesReport {
    AxesVerdict verdict = AxesVerdict::Inconclusive;
    double eps0 = 0.0;
    double lambda_max = 0.0;
    double norm_proxy = 0.0;
    std::vector<AxisPoint> points;
};

std::string to_string(AxesVerdict v);

struct QuasinilReport {
    bool quasi_nilpotent = false;
    bool sup_bounded = false;
    double sup_norm = 0.0;
    std::vector<double> rho;
    bool rho_below_threshold = false;
    double rho_threshold = 0.0;
    std::optional<AxesReport> axes;
};

QuasinilReport quasinil_certificate(const SymbolSpec& g, const SpaceSpec& space,
                                    const QuasinilConfig& cfg = {});

struct StabilityReport {
    bool probative = false;
    bool pass = false;
    QuasinilReport perturbation;
    double agreement = 0.0;
    std::size_t decided_both = 0;
    std::vector<std::size_t> disagreements;
    std::vector<std::size_t> disagreements_outside_band;
    SpectrumMap base;
    SpectrumMap perturbed;
};

/// Cells within `width` cells (Chebyshev distance) of a label change.
std::vector<bool> boundary_band(const SpectrumMap& map, int width = 2);

StabilityReport stability_harness(const SymbolSpec& g, const SymbolSpec& h, const SpaceSpec& space,
                                  const MapGrid& grid, const ClassifierConfig& cfg = {},
                                  const QuasinilConfig& qcfg = {}, unsigned threads = 1);

} // namespace cesaro
