#pragma once

#include "cesaro/grids.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace cesaro {

enum class Condition { AInfinity, A2, BInfinity, B2 };
enum class Verdict { Bounded, Divergent, Inconclusive };

std::string to_string(Condition c);
std::string to_string(Verdict v);

/// Thresholds for reading a refinement sequence m_0, m_1, … of level maxima.
///
/// G = m_L/m_{L−3}; q = ((m_L − m_{L−1})/(m_{L−2} − m_{L−3}))^{1/2}. For a
/// power-type singularity q ≈ 2^{−e}, e the signed distance to the critical
/// exponent, so log2 q separates convergent from divergent sequences.
struct DivergencePolicy {
    double bounded_growth = 1.05;
    double divergent_growth = 1.2;
    double ratio_band = 0.05;   // in log2 units
};

struct GrowthAssessment {
    Verdict verdict = Verdict::Inconclusive;
    double growth = 1.0;
    double increment_ratio = 0.0;   // 0 when increments change sign
};

/// Reads a sequence given by its logarithms.
GrowthAssessment assess_growth(std::span<const double> log_values,
                               const DivergencePolicy& policy = {});

/// Dyadic arcs of normalized length 2^{−ℓ}, ℓ = 0..L, with their half-shifted
/// companions. Resolution level ℓ samples the circle at K·2^ℓ half-offset nodes.
class ArcDyadicTree {
public:
    /// Throws DomainError unless levels ≥ 3 and samples_per_arc is an even power of two ≥ 8.
    static ArcDyadicTree make(int levels = 10, std::size_t samples_per_arc = 16);

    int levels() const noexcept { return levels_; }
    std::size_t samples_per_arc() const noexcept { return samples_per_arc_; }
    std::size_t samples(int level) const noexcept { return samples_per_arc_ << level; }
    CircleGrid grid(int level) const { return CircleGrid::make(1.0, samples(level), true); }

    /// Start angle of arc `index` at `level`; shifted arcs start half an arc later.
    static double arc_start(int level, std::size_t index, bool shifted);

private:
    ArcDyadicTree(int levels, std::size_t k) : levels_(levels), samples_per_arc_(k) {}

    int levels_;
    std::size_t samples_per_arc_;
};

struct RegionId {
    int level = 0;
    std::size_t index = 0;
    bool shifted = false;
    double center = 0.0;   // angle of the arc midpoint
};

struct LevelMax {
    int level;
    double max;
    double log_max;
    RegionId argmax;
};

struct CharacteristicReport {
    Condition condition;
    std::vector<LevelMax> levels;
    Verdict verdict = Verdict::Inconclusive;
    double growth = 1.0;
    double increment_ratio = 0.0;
};

/// Positive weight sampled as log w on every resolution grid of a tree.
class CircleWeight {
public:
    static CircleWeight from_log(const ArcDyadicTree& tree,
                                 const std::function<double(double)>& log_w);
    /// Throws NonPositiveSample on w ≤ 0 or non-finite samples.
    static CircleWeight from_values(const ArcDyadicTree& tree,
                                    const std::function<double(double)>& w);
    static CircleWeight from_log_levels(std::vector<std::vector<double>> levels);

    int levels() const noexcept { return static_cast<int>(log_.size()) - 1; }
    std::span<const double> log_samples(int level) const { return log_[level]; }

private:
    std::vector<std::vector<double>> log_;
};

CharacteristicReport ainfty_characteristic(const CircleWeight& w, const ArcDyadicTree& tree,
                                           const DivergencePolicy& policy = {});
CharacteristicReport a2_characteristic(const CircleWeight& w, const ArcDyadicTree& tree,
                                       const DivergencePolicy& policy = {});

/// Carleson boxes S_I over the dyadic and half-shifted arcs, discretized by a
/// dyadic polar grid with J = L + 4 radial panels.
class CarlesonGrid {
public:
    static CarlesonGrid make(int levels = 7, std::size_t base_angular = 8, int nodes_per_panel = 3);

    int levels() const noexcept { return levels_; }
    const DiskGrid& disk() const noexcept { return disk_; }

    /// Deepest radial panel used at resolution level ℓ.
    int deepest_panel(int resolution) const noexcept { return resolution + 3; }

    /// Normalized area m²(2 − m) of a box at level ℓ, m = 2^{−ℓ}.
    static double box_area(int level);
    /// Area summed from grid weights over every node inside the box.
    double computed_area(int level, std::size_t index, bool shifted) const;

private:
    CarlesonGrid(int levels, DiskGrid disk) : levels_(levels), disk_(std::move(disk)) {}

    int levels_;
    DiskGrid disk_;
};

/// log w on the nodes of a disk grid, ring by ring.
class DiskWeight {
public:
    static DiskWeight from_log(const DiskGrid& grid, const std::function<double(cplx)>& log_w);
    /// Throws NonPositiveSample on w ≤ 0 or non-finite samples.
    static DiskWeight from_values(const DiskGrid& grid, std::span<const double> w);
    static DiskWeight from_log_values(std::vector<double> log_w);

    std::span<const double> log_samples() const noexcept { return log_; }

private:
    std::vector<double> log_;
};

CharacteristicReport binfty_characteristic(const DiskWeight& w, const CarlesonGrid& grid,
                                           const DivergencePolicy& policy = {});
CharacteristicReport b2_characteristic(const DiskWeight& w, const CarlesonGrid& grid,
                                       const DivergencePolicy& policy = {});

} // namespace cesaro
