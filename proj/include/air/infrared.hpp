#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "air/exactgeom.hpp"
#include "air/perv.hpp"

namespace air {

inline void require_generic_zeta(const PointConfig& config, const Direction& zeta) {
    auto rep = check_genericity(config, zeta);
    for (const auto& v : rep.violations)
        if (v.kind != "collinear")
            fail("NonGenericZeta", "points " + v.labels[0] + " and " + v.labels[1] + " have equal rho(zeta) projection");
}

/// Labels (as indices) sorted by strictly increasing ⟨w, ρ(ζ)⟩.
inline std::vector<std::size_t> zeta_order(const PointConfig& config, const Direction& zeta) {
    require_generic_zeta(config, zeta);
    const Point r = rho(zeta).vec();
    std::vector<std::size_t> idx(config.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return dot(config.point(a), r) < dot(config.point(b), r); });
    return idx;
}

/// Rays ±(w_j − w_i), deduplicated up to positive scaling, sorted by angle in [0, 2π).
inline std::vector<Direction> stokes_rays(const PointConfig& config) {
    std::vector<Point> raw;
    const auto& p = config.points();
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
            if (i != j) raw.push_back(p[j] - p[i]);
    std::sort(raw.begin(), raw.end(), angle_less);
    std::vector<Direction> out;
    for (const auto& v : raw) {
        Direction d(v);
        if (out.empty() || out.back() != d) out.push_back(d);
    }
    return out;
}

/// Operational ζ-convexity: strictly increasing ζ-order and strict right turns between
/// consecutive edges (the region swept by the ζ-rays lies on the right).
inline bool is_convex_path(const PointConfig& config, const Direction& zeta, const std::vector<std::size_t>& seq) {
    require_generic_zeta(config, zeta);
    if (seq.size() < 2) return false;
    const Point r = rho(zeta).vec();
    for (std::size_t v = 0; v + 1 < seq.size(); ++v)
        if (dot(config.point(seq[v + 1]) - config.point(seq[v]), r) <= 0) return false;
    for (std::size_t v = 0; v + 2 < seq.size(); ++v) {
        Point d1 = config.point(seq[v + 1]) - config.point(seq[v]);
        Point d2 = config.point(seq[v + 2]) - config.point(seq[v + 1]);
        if (cross(d1, d2) >= 0) return false;
    }
    return true;
}

struct ConvexPath {
    Direction zeta;
    std::vector<std::size_t> vertices;
};

/// All ζ-convex paths from → to, by depth-first search over order-increasing chains pruned by
/// the turn predicate. Output is lexicographic in ζ-order positions.
inline std::vector<ConvexPath> enumerate_convex_paths(const PointConfig& config, const Direction& zeta,
                                                      std::size_t from, std::size_t to) {
    auto order = zeta_order(config, zeta);
    std::vector<std::size_t> pos(config.size());
    for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
    if (from >= config.size() || to >= config.size() || pos[from] >= pos[to])
        fail("InvalidEndpoints", "source must come strictly before target in zeta-order");
    std::vector<ConvexPath> out;
    std::vector<std::size_t> chain{from};
    std::function<void()> dfs = [&]() {
        const std::size_t cur = chain.back();
        for (std::size_t k = pos[cur] + 1; k <= pos[to]; ++k) {
            const std::size_t nxt = order[k];
            if (chain.size() >= 2) {
                Point d1 = config.point(cur) - config.point(chain[chain.size() - 2]);
                Point d2 = config.point(nxt) - config.point(cur);
                if (cross(d1, d2) >= 0) continue;
            }
            chain.push_back(nxt);
            if (nxt == to) out.push_back({zeta, chain});
            else dfs();
            chain.pop_back();
        }
    };
    dfs();
    return out;
}

/// Block upper-unipotent matrix on ⊕Φ_i: `blocks[(i, j)]` is C_ij : Φ_i → Φ_j (n_j × n_i) for
/// i strictly before j in `order`; the diagonal is the identity and everything below is zero.
struct StokesMatrix {
    Direction zeta{1, 0};
    std::vector<std::size_t> order;
    std::map<std::pair<std::size_t, std::size_t>, Matrix> blocks;

    /// Full matrix on ⊕Φ_i with blocks laid out in `basis` order; column i, row j holds C_ij.
    Matrix full(const MatrixDiagram& md, const std::vector<std::size_t>& basis) const {
        auto off = block_offsets(md, basis);
        Matrix m = Matrix::identity(md.total_dim());
        for (const auto& [ij, b] : blocks) m.set_block(off[ij.second], off[ij.first], b);
        return m;
    }

    friend bool operator==(const StokesMatrix& a, const StokesMatrix& b) {
        return a.order == b.order && a.blocks == b.blocks;
    }
};

/// C_ij = Σ over ζ-convex paths i = i₁, …, i_p = j of t_{i_{p−1} i_p} ∘ ⋯ ∘ t_{i₁ i₂}.
inline StokesMatrix stokes_matrix(const MatrixDiagram& md, const Direction& zeta) {
    StokesMatrix c;
    c.zeta = zeta;
    c.order = zeta_order(md.config(), zeta);
    for (std::size_t a = 0; a < c.order.size(); ++a)
        for (std::size_t b = a + 1; b < c.order.size(); ++b) {
            const std::size_t i = c.order[a], j = c.order[b];
            Matrix sum = Matrix::zero(md.dim(j), md.dim(i));
            for (const auto& path : enumerate_convex_paths(md.config(), zeta, i, j)) {
                Matrix comp = Matrix::identity(md.dim(i));
                for (std::size_t v = 0; v + 1 < path.vertices.size(); ++v)
                    comp = md.t(path.vertices[v], path.vertices[v + 1]) * comp;
                sum += comp;
            }
            c.blocks.emplace(std::make_pair(i, j), std::move(sum));
        }
    return c;
}

/// Structural check: exactly one block C_ij of shape n_j × n_i for every i strictly before j,
/// and the assembled operator is the identity on the diagonal with nothing from Φ_j back to Φ_i.
inline bool is_block_unipotent(const MatrixDiagram& md, const StokesMatrix& c) {
    if (c.order.size() != md.size()) return false;
    std::vector<std::size_t> pos(md.size(), md.size());
    for (std::size_t k = 0; k < c.order.size(); ++k) pos[c.order[k]] = k;
    for (auto p : pos)
        if (p == md.size()) return false;
    if (c.blocks.size() != md.size() * (md.size() - 1) / 2) return false;
    for (const auto& [ij, b] : c.blocks) {
        if (pos[ij.first] >= pos[ij.second]) return false;
        if (b.rows() != md.dim(ij.second) || b.cols() != md.dim(ij.first)) return false;
    }
    Matrix m = c.full(md, c.order);
    auto off = block_offsets(md, c.order);
    for (std::size_t a = 0; a < c.order.size(); ++a)
        for (std::size_t b = a; b < c.order.size(); ++b) {
            const std::size_t i = c.order[a], j = c.order[b];
            // component Φ_j → Φ_i (row i, column j) for j at or after i
            Matrix blk = m.block(off[i], off[j], md.dim(i), md.dim(j));
            if (a == b ? blk != Matrix::identity(md.dim(i)) : !blk.is_zero()) return false;
        }
    return true;
}

/// Independent evaluation: the ordered product ∏ (1 + t_ij E_ij) over pairs i before j, factors
/// multiplied left to right in increasing angle of w_j − w_i measured anticlockwise from ζ.
inline StokesMatrix stokes_matrix_oracle(const MatrixDiagram& md, const Direction& zeta) {
    const auto& config = md.config();
    auto order = zeta_order(config, zeta);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < order.size(); ++a)
        for (std::size_t b = a + 1; b < order.size(); ++b) pairs.emplace_back(order[a], order[b]);
    auto diff = [&](const std::pair<std::size_t, std::size_t>& e) { return config.point(e.second) - config.point(e.first); };
    for (std::size_t x = 0; x < pairs.size(); ++x)
        for (std::size_t y = x + 1; y < pairs.size(); ++y)
            // parallel differences of disjoint pairs give commuting factors; a shared point
            // means three collinear points, where the order of the factors is undetermined
            if (cross(diff(pairs[x]), diff(pairs[y])) == 0 &&
                (pairs[x].first == pairs[y].first || pairs[x].first == pairs[y].second ||
                 pairs[x].second == pairs[y].first || pairs[x].second == pairs[y].second))
                fail("ParallelDifferences", "differences " + config.label(pairs[x].first) + "->" +
                                                config.label(pairs[x].second) + " and " + config.label(pairs[y].first) +
                                                "->" + config.label(pairs[y].second) + " are parallel");
    // every difference points into the open half-plane ⟨·, ρ(ζ)⟩ > 0, so the cross product
    // orders angles from ζ
    std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& e, const auto& f) { return cross(diff(e), diff(f)) > 0; });
    auto off = block_offsets(md, order);
    const std::size_t dim = md.total_dim();
    Matrix prod = Matrix::identity(dim);
    for (const auto& [i, j] : pairs) {
        Matrix factor = Matrix::identity(dim);
        factor.set_block(off[j], off[i], md.t(i, j));
        prod = prod * factor;
    }
    StokesMatrix c;
    c.zeta = zeta;
    c.order = order;
    for (std::size_t a = 0; a < order.size(); ++a)
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            const std::size_t i = order[a], j = order[b];
            c.blocks.emplace(std::make_pair(i, j), prod.block(off[j], off[i], md.dim(j), md.dim(i)));
        }
    return c;
}

/// A rational direction strictly inside the open arc from u anticlockwise to v; `weight`
/// selects one of several distinct samples (0, 1, 2, …).
inline Direction direction_between(const Direction& u, const Direction& v, int weight = 0) {
    const Point& a = u.vec();
    const Point& b = v.vec();
    Rational wa = 1, wb = 1;
    if (weight == 1) wa = 2;
    if (weight == 2) wb = 2;
    if (cross(a, b) > 0) return Direction(wa * a + wb * b);
    // half-turn gap: sample around ρ(u)
    Point mid = rho(u).vec();
    if (weight == 0) return Direction(mid);
    return weight == 1 ? Direction(mid + a) : Direction(mid + b);
}

/// Three exact sample directions per chamber between consecutive Stokes rays.
inline std::vector<std::vector<Direction>> chamber_samples(const PointConfig& config) {
    auto rays = stokes_rays(config);
    std::vector<std::vector<Direction>> out;
    for (std::size_t r = 0; r < rays.size(); ++r) {
        const auto& u = rays[r];
        const auto& v = rays[(r + 1) % rays.size()];
        out.push_back({direction_between(u, v, 0), direction_between(u, v, 1), direction_between(u, v, 2)});
    }
    return out;
}

struct WallCrossing {
    StokesMatrix before;
    StokesMatrix after;
    Matrix connecting;  // after · before⁻¹, both assembled in configuration label order
};

/// Stokes matrices in the two chambers adjacent to a Stokes ray (anticlockwise crossing).
inline WallCrossing wall_cross_report(const MatrixDiagram& md, const Direction& ray) {
    auto rays = stokes_rays(md.config());
    auto it = std::find(rays.begin(), rays.end(), ray);
    if (it == rays.end()) fail("BadRay", "direction is not a Stokes ray of the configuration");
    const std::size_t r = static_cast<std::size_t>(it - rays.begin());
    const auto& prev = rays[(r + rays.size() - 1) % rays.size()];
    const auto& next = rays[(r + 1) % rays.size()];
    WallCrossing wc{stokes_matrix(md, direction_between(prev, ray)), stokes_matrix(md, direction_between(ray, next)), {}};
    std::vector<std::size_t> basis(md.size());
    for (std::size_t i = 0; i < basis.size(); ++i) basis[i] = i;
    Matrix b = wc.before.full(md, basis), a = wc.after.full(md, basis);
    wc.connecting = a * *b.inverse();
    return wc;
}

/// Trace of the composite of rectilinear transports around ∂Conv(subset), anticlockwise from
/// the lexicographically smallest vertex.
inline Rational polygon_trace(const MatrixDiagram& md, const std::vector<std::size_t>& subset) {
    if (subset.size() < 3) fail("NotConvexPosition", "need at least three points");
    std::vector<Point> pts;
    for (auto i : subset) pts.push_back(md.config().point(i));
    auto hull = convex_hull_indices(pts);
    if (hull.size() != subset.size()) fail("NotConvexPosition", "points are not in strictly convex position");
    const std::size_t start = subset[hull[0]];
    Matrix comp = Matrix::identity(md.dim(start));
    for (std::size_t k = 0; k < hull.size(); ++k) {
        const std::size_t from = subset[hull[k]], to = subset[hull[(k + 1) % hull.size()]];
        comp = md.t(from, to) * comp;
    }
    return comp.trace();
}

struct FsFiltration {
    std::vector<std::size_t> order;
    std::vector<std::size_t> dims;
    StokesMatrix stokes;
};

/// ζ-ordered pieces Φ_{i₁}, …, Φ_{i_N} of ⊕Φ_i glued by the Stokes matrix.
inline FsFiltration fs_filtration(const MatrixDiagram& md, const Direction& zeta) {
    FsFiltration f;
    f.stokes = stokes_matrix(md, zeta);
    f.order = f.stokes.order;
    for (auto i : f.order) f.dims.push_back(md.dim(i));
    return f;
}

}  // namespace air
