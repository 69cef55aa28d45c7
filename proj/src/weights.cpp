#include "cesaro/weights.hpp"

#include "cesaro/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cesaro {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool is_dual(Condition c) { return c == Condition::A2 || c == Condition::B2; }

double log_add(double a, double b) {
    if (a < b) std::swap(a, b);
    if (b == kNegInf) return a;
    return a + std::log1p(std::exp(b - a));
}

// mass = Σ a_i; lse = log Σ a_i w_i; second = Σ a_i log w_i, or log Σ a_i/w_i
// for the dual (A₂/B₂) conditions.
struct Moments {
    double mass = 0.0;
    double lse = kNegInf;
    double second = 0.0;
};

Moments merge(const Moments& x, const Moments& y, bool dual) {
    return {x.mass + y.mass, log_add(x.lse, y.lse),
            dual ? log_add(x.second, y.second) : x.second + y.second};
}

Moments stretch(const Moments& m, double s, bool dual) {
    const double ls = std::log(s);
    return {m.mass * s, m.lse + ls, dual ? m.second + ls : m.second * s};
}

double log_ratio(const Moments& m, bool dual) {
    const double lm = std::log(m.mass);
    if (dual) return (m.lse - lm) + (m.second - lm);
    return (m.lse - lm) - m.second / m.mass;
}

// Accumulates samples with area a (log-area la) and log-weight lw.
class LeafBuilder {
public:
    explicit LeafBuilder(bool dual) : dual_(dual) {}

    void add(double a, double la, double lw) { items_.push_back({a, la, lw}); }

    Moments finish() {
        Moments m;
        m.second = dual_ ? kNegInf : 0.0;
        if (items_.empty()) return m;
        double top = kNegInf, top_inv = kNegInf;
        for (const auto& it : items_) {
            top = std::max(top, it.la + it.lw);
            if (dual_) top_inv = std::max(top_inv, it.la - it.lw);
        }
        double s = 0.0, s_inv = 0.0, s_log = 0.0;
        for (const auto& it : items_) {
            m.mass += it.a;
            s += std::exp(it.la + it.lw - top);
            if (dual_) {
                s_inv += std::exp(it.la - it.lw - top_inv);
            } else {
                s_log += it.a * it.lw;
            }
        }
        m.lse = top + std::log(s);
        m.second = dual_ ? top_inv + std::log(s_inv) : s_log;
        items_.clear();
        return m;
    }

private:
    struct Item {
        double a, la, lw;
    };
    bool dual_;
    std::vector<Item> items_;
};

// Binary tree over 2^depth leaf blocks; level t has 2^t nodes.
using BlockTree = std::vector<std::vector<Moments>>;

BlockTree build_tree(std::vector<Moments> leaves, int depth, bool dual) {
    BlockTree tree(depth + 1);
    tree[depth] = std::move(leaves);
    for (int t = depth - 1; t >= 0; --t) {
        const auto& child = tree[t + 1];
        tree[t].resize(std::size_t{1} << t);
        for (std::size_t i = 0; i < tree[t].size(); ++i) {
            tree[t][i] = merge(child[2 * i], child[2 * i + 1], dual);
        }
    }
    return tree;
}

Moments arc_moments(const BlockTree& tree, int level, std::size_t index, bool shifted, bool dual) {
    if (!shifted) return tree[level][index];
    const auto& half = tree[level + 1];
    return merge(half[2 * index + 1], half[(2 * index + 2) % half.size()], dual);
}

RegionId region(int level, std::size_t index, bool shifted) {
    const double len = kTwoPi * std::ldexp(1.0, -level);
    return {level, index, shifted, ArcDyadicTree::arc_start(level, index, shifted) + 0.5 * len};
}

void check_finite_log(double lw, const char* where) {
    if (std::isnan(lw) || std::isinf(lw)) {
        throw NonPositiveSample(std::string("weight sample is zero, negative or not finite in ") +
                                where);
    }
}

CharacteristicReport finish_report(Condition c, std::vector<LevelMax> levels,
                                   const DivergencePolicy& policy) {
    std::vector<double> logs;
    for (const auto& l : levels) logs.push_back(l.log_max);
    const auto g = assess_growth(logs, policy);
    return {c, std::move(levels), g.verdict, g.growth, g.increment_ratio};
}

CharacteristicReport circle_scan(const CircleWeight& w, const ArcDyadicTree& tree,
                                 Condition condition, const DivergencePolicy& policy) {
    if (w.levels() < tree.levels()) {
        throw DomainError("circle weight has fewer resolution levels than the arc tree");
    }
    const bool dual = is_dual(condition);
    const std::size_t half = tree.samples_per_arc() / 2;
    std::vector<LevelMax> levels;
    LeafBuilder leaf(dual);
    for (int res = 0; res <= tree.levels(); ++res) {
        const auto lw = w.log_samples(res);
        if (lw.size() != tree.samples(res)) {
            throw DomainError("circle weight level size does not match the arc tree");
        }
        const std::size_t blocks = std::size_t{1} << (res + 1);
        std::vector<Moments> leaves(blocks);
        for (std::size_t b = 0; b < blocks; ++b) {
            for (std::size_t j = b * half; j < (b + 1) * half; ++j) leaf.add(1.0, 0.0, lw[j]);
            leaves[b] = leaf.finish();
        }
        const BlockTree bt = build_tree(std::move(leaves), res + 1, dual);

        LevelMax best{res, 0.0, kNegInf, {}};
        for (int k = 0; k <= res; ++k) {
            const std::size_t count = std::size_t{1} << k;
            for (int s = 0; s < (k == 0 ? 1 : 2); ++s) {
                for (std::size_t i = 0; i < count; ++i) {
                    const double v = log_ratio(arc_moments(bt, k, i, s == 1, dual), dual);
                    if (v > best.log_max) {
                        best.log_max = v;
                        best.argmax = region(k, i, s == 1);
                    }
                }
            }
        }
        best.max = std::exp(best.log_max);
        levels.push_back(best);
    }
    return finish_report(condition, std::move(levels), policy);
}

CharacteristicReport disk_scan(const DiskWeight& w, const CarlesonGrid& grid, Condition condition,
                               const DivergencePolicy& policy) {
    const DiskGrid& disk = grid.disk();
    const auto lw = w.log_samples();
    if (lw.size() != disk.node_count()) {
        throw DomainError("disk weight size does not match the Carleson grid");
    }
    const bool dual = is_dual(condition);
    const int q = disk.nodes_per_panel();
    const int top_panel = grid.deepest_panel(grid.levels());
    const std::size_t half = disk.base_angular() / 2;

    // One block tree per radial panel; panel k resolves angles down to level k+1.
    std::vector<BlockTree> panel_trees;
    LeafBuilder leaf(dual);
    for (int k = 0; k <= top_panel; ++k) {
        const std::size_t blocks = std::size_t{1} << (k + 1);
        std::vector<Moments> leaves(blocks);
        for (std::size_t b = 0; b < blocks; ++b) {
            for (int r = 0; r < q; ++r) {
                const std::size_t ring = static_cast<std::size_t>(k * q + r);
                const double a = disk.node_weight(ring);
                const double la = std::log(a);
                const std::size_t off = disk.ring_offset(ring);
                for (std::size_t j = b * half; j < (b + 1) * half; ++j) {
                    leaf.add(a, la, lw[off + j]);
                }
            }
            leaves[b] = leaf.finish();
        }
        panel_trees.push_back(build_tree(std::move(leaves), k + 1, dual));
    }

    std::vector<LevelMax> levels;
    for (int res = 0; res <= grid.levels(); ++res) {
        const int deepest = grid.deepest_panel(res);
        // The deepest panel stands in for the whole tail [1−2^{−deepest}, 1].
        const double s = DiskGrid::panel_area(deepest, deepest) /
                         DiskGrid::panel_area(deepest, disk.panels());
        LevelMax best{res, 0.0, kNegInf, {}};
        for (int k = 0; k <= res; ++k) {
            const std::size_t count = std::size_t{1} << k;
            for (int sh = 0; sh < (k == 0 ? 1 : 2); ++sh) {
                for (std::size_t i = 0; i < count; ++i) {
                    Moments m = stretch(arc_moments(panel_trees[deepest], k, i, sh == 1, dual), s,
                                        dual);
                    for (int p = deepest - 1; p >= k; --p) {
                        m = merge(arc_moments(panel_trees[p], k, i, sh == 1, dual), m, dual);
                    }
                    const double v = log_ratio(m, dual);
                    if (v > best.log_max) {
                        best.log_max = v;
                        best.argmax = region(k, i, sh == 1);
                    }
                }
            }
        }
        best.max = std::exp(best.log_max);
        levels.push_back(best);
    }
    return finish_report(condition, std::move(levels), policy);
}

} // namespace

std::string to_string(Condition c) {
    switch (c) {
    case Condition::AInfinity: return "ainfty";
    case Condition::A2: return "a2";
    case Condition::BInfinity: return "binfty";
    case Condition::B2: return "b2";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Bounded: return "bounded";
    case Verdict::Divergent: return "divergent";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

GrowthAssessment assess_growth(std::span<const double> log_values, const DivergencePolicy& policy) {
    GrowthAssessment out;
    const std::size_t n = log_values.size();
    if (n < 4) return out;
    const auto tail = log_values.subspan(n - 4);
    for (double v : tail) {
        if (std::isnan(v)) return out;
    }
    if (tail[3] == std::numeric_limits<double>::infinity()) {
        out.verdict = Verdict::Divergent;
        out.growth = std::numeric_limits<double>::infinity();
        return out;
    }
    const double base = tail[0];
    out.growth = std::exp(tail[3] - base);
    const double s0 = 1.0, s1 = std::exp(tail[1] - base), s2 = std::exp(tail[2] - base);
    const double s3 = out.growth;
    const double d_late = s3 - s2;
    const double d_early = s1 - s0;
    const bool same_sign = (d_late > 0 && d_early > 0) || (d_late < 0 && d_early < 0);
    if (same_sign) out.increment_ratio = std::sqrt(d_late / d_early);
    const double log2q = same_sign ? std::log2(out.increment_ratio) : 0.0;

    if (!std::isfinite(out.growth)) {
        out.verdict = Verdict::Divergent;
    } else if (out.growth <= policy.bounded_growth) {
        out.verdict = Verdict::Bounded;
    } else if (same_sign && log2q <= -policy.ratio_band) {
        out.verdict = Verdict::Bounded;
    } else if (out.growth >= policy.divergent_growth && d_late > 0 && d_early > 0 &&
               log2q >= policy.ratio_band) {
        out.verdict = Verdict::Divergent;
    }
    return out;
}

ArcDyadicTree ArcDyadicTree::make(int levels, std::size_t samples_per_arc) {
    if (levels < 3 || levels > 24) throw DomainError("arc tree needs 3..24 levels");
    if (samples_per_arc < 8 || (samples_per_arc & (samples_per_arc - 1)) != 0) {
        throw DomainError("samples per finest arc must be a power of two >= 8");
    }
    return ArcDyadicTree(levels, samples_per_arc);
}

double ArcDyadicTree::arc_start(int level, std::size_t index, bool shifted) {
    const double len = kTwoPi * std::ldexp(1.0, -level);
    return len * (static_cast<double>(index) + (shifted ? 0.5 : 0.0));
}

CircleWeight CircleWeight::from_log(const ArcDyadicTree& tree,
                                    const std::function<double(double)>& log_w) {
    CircleWeight w;
    for (int res = 0; res <= tree.levels(); ++res) {
        const CircleGrid grid = tree.grid(res);
        std::vector<double> v(grid.samples());
        for (std::size_t j = 0; j < v.size(); ++j) {
            v[j] = log_w(grid.theta(j));
            check_finite_log(v[j], "circle weight");
        }
        w.log_.push_back(std::move(v));
    }
    return w;
}

CircleWeight CircleWeight::from_values(const ArcDyadicTree& tree,
                                       const std::function<double(double)>& w) {
    return from_log(tree, [&](double t) {
        const double v = w(t);
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw NonPositiveSample("circle weight sample " + std::to_string(v) + " at angle " +
                                    std::to_string(t));
        }
        return std::log(v);
    });
}

CircleWeight CircleWeight::from_log_levels(std::vector<std::vector<double>> levels) {
    for (const auto& level : levels) {
        for (double v : level) check_finite_log(v, "circle weight");
    }
    CircleWeight w;
    w.log_ = std::move(levels);
    return w;
}

CharacteristicReport ainfty_characteristic(const CircleWeight& w, const ArcDyadicTree& tree,
                                           const DivergencePolicy& policy) {
    return circle_scan(w, tree, Condition::AInfinity, policy);
}

CharacteristicReport a2_characteristic(const CircleWeight& w, const ArcDyadicTree& tree,
                                       const DivergencePolicy& policy) {
    return circle_scan(w, tree, Condition::A2, policy);
}

CarlesonGrid CarlesonGrid::make(int levels, std::size_t base_angular, int nodes_per_panel) {
    if (levels < 3 || levels > 16) throw DomainError("Carleson grid needs 3..16 levels");
    return CarlesonGrid(levels, DiskGrid::dyadic(levels + 4, base_angular, nodes_per_panel));
}

double CarlesonGrid::box_area(int level) {
    const double m = std::ldexp(1.0, -level);
    return m * m * (2.0 - m);
}

double CarlesonGrid::computed_area(int level, std::size_t index, bool shifted) const {
    const double start = ArcDyadicTree::arc_start(level, index, shifted);
    const double len = kTwoPi * std::ldexp(1.0, -level);
    double area = 0.0;
    for (std::size_t ring = 0; ring < disk_.rings().size(); ++ring) {
        if (disk_.rings()[ring].panel < level) continue;
        std::size_t inside = 0;
        for (std::size_t j = 0; j < disk_.rings()[ring].angular; ++j) {
            double d = std::fmod(disk_.theta(ring, j) - start, kTwoPi);
            if (d < 0) d += kTwoPi;
            if (d < len) ++inside;
        }
        area += disk_.node_weight(ring) * static_cast<double>(inside);
    }
    return area;
}

DiskWeight DiskWeight::from_log(const DiskGrid& grid, const std::function<double(cplx)>& log_w) {
    DiskWeight w;
    w.log_.resize(grid.node_count());
    for (std::size_t ring = 0; ring < grid.rings().size(); ++ring) {
        const std::size_t off = grid.ring_offset(ring);
        for (std::size_t j = 0; j < grid.rings()[ring].angular; ++j) {
            const double v = log_w(grid.node(ring, j));
            check_finite_log(v, "disk weight");
            w.log_[off + j] = v;
        }
    }
    return w;
}

DiskWeight DiskWeight::from_values(const DiskGrid& grid, std::span<const double> values) {
    if (values.size() != grid.node_count()) {
        throw DomainError("disk weight sample count does not match the grid");
    }
    DiskWeight w;
    w.log_.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
            throw NonPositiveSample("disk weight sample " + std::to_string(values[i]) +
                                    " at node " + std::to_string(i));
        }
        w.log_[i] = std::log(values[i]);
    }
    return w;
}

DiskWeight DiskWeight::from_log_values(std::vector<double> log_w) {
    for (double v : log_w) check_finite_log(v, "disk weight");
    DiskWeight w;
    w.log_ = std::move(log_w);
    return w;
}

CharacteristicReport binfty_characteristic(const DiskWeight& w, const CarlesonGrid& grid,
                                           const DivergencePolicy& policy) {
    return disk_scan(w, grid, Condition::BInfinity, policy);
}

CharacteristicReport b2_characteristic(const DiskWeight& w, const CarlesonGrid& grid,
                                       const DivergencePolicy& policy) {
    return disk_scan(w, grid, Condition::B2, policy);
}

} // namespace cesaro
