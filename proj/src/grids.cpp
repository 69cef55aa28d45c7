#include "cesaro/grids.hpp"

#include "cesaro/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace cesaro {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

} // namespace

CircleGrid CircleGrid::make(double radius, std::size_t samples, bool offset) {
    if (!(radius > 0.0 && radius <= 1.0)) {
        throw DomainError("circle grid radius must lie in (0, 1], got " + std::to_string(radius));
    }
    if (!is_power_of_two(samples)) {
        throw DomainError("circle grid size must be a power of two, got " +
                          std::to_string(samples));
    }
    return CircleGrid(radius, samples, offset);
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    if (n < 1) throw DomainError("Gauss-Legendre rule needs at least one node");
    // Golub–Welsch: eigenvalues of the Jacobi matrix are the nodes.
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double beta = k / std::sqrt(4.0 * k * k - 1.0);
        jacobi(k, k - 1) = beta;
        jacobi(k - 1, k) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    std::vector<double> nodes(n), weights(n);
    for (int k = 0; k < n; ++k) {
        nodes[k] = solver.eigenvalues()(k);
        const double v = solver.eigenvectors()(0, k);
        weights[k] = 2.0 * v * v;
    }
    // Symmetrize so the rule is exactly odd-symmetric.
    for (int k = 0; k < n / 2; ++k) {
        const double x = 0.5 * (nodes[n - 1 - k] - nodes[k]);
        const double w = 0.5 * (weights[n - 1 - k] + weights[k]);
        nodes[k] = -x;
        nodes[n - 1 - k] = x;
        weights[k] = weights[n - 1 - k] = w;
    }
    if (n % 2 == 1) nodes[n / 2] = 0.0;
    return {nodes, weights};
}

double DiskGrid::panel_area(int panel, int panels) {
    const double a = 1.0 - std::ldexp(1.0, -panel);
    if (panel >= panels) return 1.0 - a * a;
    const double b = 1.0 - std::ldexp(1.0, -panel - 1);
    return b * b - a * a;
}

DiskGrid DiskGrid::dyadic(int panels, std::size_t base_angular, int nodes_per_panel, Rule rule,
                          bool angular_offset) {
    if (panels < 1 || panels > 40) throw DomainError("disk grid needs 1..40 radial panels");
    if (base_angular < 2 || base_angular % 2 != 0) {
        throw DomainError("disk grid angular base must be even and at least 2");
    }
    if (nodes_per_panel < 1) throw DomainError("disk grid needs at least one node per panel");

    DiskGrid grid;
    grid.panels_ = panels;
    grid.base_angular_ = base_angular;
    grid.nodes_per_panel_ = nodes_per_panel;
    grid.rule_ = rule;
    grid.angular_offset_ = angular_offset;

    std::vector<double> x, w;
    if (rule == Rule::GaussLegendre) {
        std::tie(x, w) = gauss_legendre(nodes_per_panel);
    } else {
        for (int q = 0; q < nodes_per_panel; ++q) {
            x.push_back(-1.0 + (2.0 * q + 1.0) / nodes_per_panel);
            w.push_back(2.0 / nodes_per_panel);
        }
    }

    for (int k = 0; k <= panels; ++k) {
        const double a = 1.0 - std::ldexp(1.0, -k);
        const double b = k < panels ? 1.0 - std::ldexp(1.0, -k - 1) : 1.0;
        // The terminal panel only closes the radial quadrature; it keeps the
        // angular count of the last regular panel.
        const std::size_t m = base_angular << std::min(k, panels - 1);
        for (int q = 0; q < nodes_per_panel; ++q) {
            const double r = 0.5 * (a + b) + 0.5 * (b - a) * x[q];
            grid.rings_.push_back({r, 0.5 * (b - a) * w[q] * 2.0 * r, m, k});
            grid.ring_offset_.push_back(grid.ring_offset_.back() + m);
        }
    }
    return grid;
}

CircleQuadrature graded_circle_quadrature(std::span<const double> singular_angles, double scale,
                                          int nodes_per_panel, std::size_t uniform_nodes) {
    CircleQuadrature quad;
    if (singular_angles.empty()) {
        quad.theta.resize(uniform_nodes);
        quad.weight.assign(uniform_nodes, 1.0 / static_cast<double>(uniform_nodes));
        for (std::size_t j = 0; j < uniform_nodes; ++j) {
            quad.theta[j] = kTwoPi * (static_cast<double>(j) + 0.5) /
                            static_cast<double>(uniform_nodes);
        }
        return quad;
    }

    std::vector<double> s(singular_angles.begin(), singular_angles.end());
    for (double& t : s) {
        t = std::fmod(t, kTwoPi);
        if (t < 0) t += kTwoPi;
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());

    const auto [x, w] = gauss_legendre(nodes_per_panel);
    const double finest = std::max(scale, 1e-300) / 64.0;

    auto add_panel = [&](double lo, double hi) {
        for (int q = 0; q < nodes_per_panel; ++q) {
            quad.theta.push_back(0.5 * (lo + hi) + 0.5 * (hi - lo) * x[q]);
            quad.weight.push_back(0.5 * (hi - lo) * w[q] / kTwoPi);
        }
    };
    // Half-segment [anchor, anchor ± len], graded toward the anchor.
    auto graded = [&](double anchor, double len, double dir) {
        double outer = len;
        while (outer > finest) {
            const double inner = 0.5 * outer;
            const double lo = anchor + dir * (dir > 0 ? inner : outer);
            const double hi = anchor + dir * (dir > 0 ? outer : inner);
            add_panel(lo, hi);
            outer = inner;
        }
        add_panel(dir > 0 ? anchor : anchor - outer, dir > 0 ? anchor + outer : anchor);
    };

    for (std::size_t i = 0; i < s.size(); ++i) {
        const double start = s[i];
        const double end = i + 1 < s.size() ? s[i + 1] : s[0] + kTwoPi;
        const double half = 0.5 * (end - start);
        graded(start, half, +1.0);
        graded(end, half, -1.0);
    }
    return quad;
}

} // namespace cesaro
