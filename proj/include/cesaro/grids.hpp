#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace cesaro {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Equispaced nodes θ_j = 2π(j + offset/2)/M on the circle of the given radius.
class CircleGrid {
public:
    /// Throws DomainError unless 0 < radius ≤ 1 and M is a power of two.
    static CircleGrid make(double radius, std::size_t samples, bool offset = true);

    double radius() const noexcept { return radius_; }
    std::size_t samples() const noexcept { return samples_; }
    bool offset() const noexcept { return offset_; }

    double theta(std::size_t j) const noexcept {
        return kTwoPi * (static_cast<double>(j) + (offset_ ? 0.5 : 0.0)) /
               static_cast<double>(samples_);
    }
    cplx node(std::size_t j) const { return std::polar(radius_, theta(j)); }

private:
    CircleGrid(double radius, std::size_t samples, bool offset)
        : radius_(radius), samples_(samples), offset_(offset) {}

    double radius_;
    std::size_t samples_;
    bool offset_;
};

struct DiskRing {
    double radius;
    double weight;          // share of ∫ 2r dr carried by this ring
    std::size_t angular;    // nodes on the ring
    int panel;              // dyadic radial panel the ring belongs to
};

/// Polar product grid for the normalized area measure dA = r dr dθ / π.
///
/// The dyadic layout has radial panels [1−2^{−k}, 1−2^{−k−1}] for k < J with
/// angular count base·2^k, closed by a terminal panel [1−2^{−J}, 1].
class DiskGrid {
public:
    enum class Rule { Midpoint, GaussLegendre };

    static DiskGrid dyadic(int panels, std::size_t base_angular, int nodes_per_panel,
                           Rule rule = Rule::GaussLegendre, bool angular_offset = true);

    std::span<const DiskRing> rings() const noexcept { return rings_; }
    int panels() const noexcept { return panels_; }
    std::size_t base_angular() const noexcept { return base_angular_; }
    int nodes_per_panel() const noexcept { return nodes_per_panel_; }
    Rule rule() const noexcept { return rule_; }
    bool angular_offset() const noexcept { return angular_offset_; }

    std::size_t node_count() const noexcept { return ring_offset_.back(); }
    std::size_t ring_offset(std::size_t ring) const noexcept { return ring_offset_[ring]; }

    double theta(std::size_t ring, std::size_t j) const noexcept {
        const auto m = static_cast<double>(rings_[ring].angular);
        return kTwoPi * (static_cast<double>(j) + (angular_offset_ ? 0.5 : 0.0)) / m;
    }
    cplx node(std::size_t ring, std::size_t j) const {
        return std::polar(rings_[ring].radius, theta(ring, j));
    }
    double node_weight(std::size_t ring) const noexcept {
        return rings_[ring].weight / static_cast<double>(rings_[ring].angular);
    }

    /// Normalized area of the radial panel (the terminal panel has index J).
    static double panel_area(int panel, int panels);

private:
    DiskGrid() = default;

    std::vector<DiskRing> rings_;
    std::vector<std::size_t> ring_offset_{0};
    int panels_ = 0;
    std::size_t base_angular_ = 0;
    int nodes_per_panel_ = 0;
    Rule rule_ = Rule::GaussLegendre;
    bool angular_offset_ = true;
};

/// Gauss–Legendre nodes and weights on [−1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

/// Angular quadrature for the normalized circle measure dθ/2π.
struct CircleQuadrature {
    std::vector<double> theta;
    std::vector<double> weight;
};

/// Composite Gauss–Legendre rule graded geometrically toward the singular
/// angles, down to panels of width `scale`/64. Without singular angles a
/// uniform trapezoid rule with `uniform_nodes` points is returned.
CircleQuadrature graded_circle_quadrature(std::span<const double> singular_angles,
                                          double scale, int nodes_per_panel = 8,
                                          std::size_t uniform_nodes = 512);

} // namespace cesaro
