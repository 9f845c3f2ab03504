#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "air/exactgeom.hpp"
#include "air/lp.hpp"
#include "air/polytope.hpp"

namespace air {

/// A convex cell of a polygonal subdivision: its polygon vertices (counterclockwise) and any
/// further points of the configuration lying in the cell that the cell carries ("marked").
/// Points in a cell that are neither vertices nor marked are unused by the subdivision.
struct Cell {
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> marked;

    /// Vertices and marked points, sorted.
    std::vector<std::size_t> support() const {
        std::vector<std::size_t> s = vertices;
        s.insert(s.end(), marked.begin(), marked.end());
        std::sort(s.begin(), s.end());
        return s;
    }

    friend bool operator==(const Cell& a, const Cell& b) { return a.vertices == b.vertices && a.marked == b.marked; }
    friend bool operator<(const Cell& a, const Cell& b) {
        return a.vertices != b.vertices ? a.vertices < b.vertices : a.marked < b.marked;
    }
};

/// Polygonal subdivision of Conv(A) with vertices in A. Kept canonical by `canonicalize`:
/// each cell counterclockwise from its smallest index, cells sorted.
struct Subdivision {
    std::vector<Cell> cells;

    bool is_triangulation() const {
        for (const auto& c : cells)
            if (c.vertices.size() != 3 || !c.marked.empty()) return false;
        return !cells.empty();
    }

    /// Configuration indices used by some cell.
    std::vector<std::size_t> used_points() const {
        std::set<std::size_t> s;
        for (const auto& c : cells)
            for (auto i : c.support()) s.insert(i);
        return {s.begin(), s.end()};
    }

    friend bool operator==(const Subdivision& a, const Subdivision& b) { return a.cells == b.cells; }
    friend bool operator!=(const Subdivision& a, const Subdivision& b) { return !(a == b); }
    friend bool operator<(const Subdivision& a, const Subdivision& b) { return a.cells < b.cells; }
};

/// A Subdivision all of whose cells are triangles.
using Triangulation = Subdivision;

inline Cell make_cell(const PointConfig& config, std::vector<std::size_t> pts) {
    std::vector<Point> coords;
    for (auto i : pts) coords.push_back(config.point(i));
    auto hull = convex_hull_indices(coords);
    Cell c;
    for (auto h : hull) c.vertices.push_back(pts[h]);
    std::set<std::size_t> on_hull(c.vertices.begin(), c.vertices.end());
    for (auto i : pts)
        if (!on_hull.count(i)) c.marked.push_back(i);
    std::sort(c.marked.begin(), c.marked.end());
    auto m = std::min_element(c.vertices.begin(), c.vertices.end());
    std::rotate(c.vertices.begin(), m, c.vertices.end());
    return c;
}

/// Orders each cell counterclockwise from its smallest index and sorts the cells.
/// Cells given clockwise are reversed; vertex order is otherwise trusted.
inline Subdivision canonicalize(const PointConfig& config, Subdivision sub) {
    for (auto& c : sub.cells) {
        if (c.vertices.size() >= 3) {
            std::vector<Point> poly;
            for (auto i : c.vertices) poly.push_back(config.point(i));
            if (twice_signed_area(poly) < 0) std::reverse(c.vertices.begin(), c.vertices.end());
        }
        auto m = std::min_element(c.vertices.begin(), c.vertices.end());
        std::rotate(c.vertices.begin(), m, c.vertices.end());
        std::sort(c.marked.begin(), c.marked.end());
    }
    std::sort(sub.cells.begin(), sub.cells.end());
    return sub;
}

inline Subdivision make_triangulation(const PointConfig& config, const std::vector<std::array<std::size_t, 3>>& tris) {
    Subdivision s;
    for (const auto& t : tris) s.cells.push_back(make_cell(config, {t[0], t[1], t[2]}));
    return canonicalize(config, s);
}

inline std::vector<Point> cell_polygon(const PointConfig& config, const Cell& c) {
    std::vector<Point> poly;
    for (auto i : c.vertices) poly.push_back(config.point(i));
    return poly;
}

/// Normalized volume (twice the Euclidean area) of a cell.
inline Rational normalized_volume(const PointConfig& config, const Cell& c) {
    return twice_signed_area(cell_polygon(config, c));
}

namespace detail {

inline bool separated(const std::vector<Point>& p, const std::vector<Point>& q) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Point& a = p[i];
        const Point& b = p[(i + 1) % p.size()];
        bool all_out = true;
        for (const auto& x : q)
            if (orient(a, b, x) > 0) {
                all_out = false;
                break;
            }
        if (all_out) return true;
    }
    return false;
}

inline void require_nondegenerate(const PointConfig& config, std::size_t min_points = 3) {
    if (config.size() < min_points)
        fail("DegenerateConfig", "need at least " + std::to_string(min_points) + " points");
    if (!no_three_collinear(config)) fail("DegenerateConfig", "three points of the configuration are collinear");
}

}  // namespace detail

/// Throws InvalidSubdivision unless the cells are convex, face-to-face, have disjoint
/// interiors and cover Conv(A).
inline void validate_subdivision(const PointConfig& config, const Subdivision& sub) {
    auto bad = [](const std::string& why) { fail("InvalidSubdivision", why); };
    if (sub.cells.empty()) bad("no cells");
    const std::size_t n = config.size();
    Rational area = 0;
    std::vector<std::vector<Point>> polys;
    for (const auto& c : sub.cells) {
        if (c.vertices.size() < 3) bad("cell with fewer than three vertices");
        std::set<std::size_t> seen;
        for (auto i : c.support()) {
            if (i >= n) bad("cell references a point outside the configuration");
            if (!seen.insert(i).second) bad("cell repeats a point");
        }
        auto poly = cell_polygon(config, c);
        for (std::size_t i = 0; i < poly.size(); ++i)
            if (orient(poly[i], poly[(i + 1) % poly.size()], poly[(i + 2) % poly.size()]) <= 0)
                bad("cell is not strictly convex and counterclockwise");
        for (auto m : c.marked)
            if (locate_in_convex(config.point(m), poly) <= 0) bad("marked point not interior to its cell");
        area += twice_signed_area(poly);
        polys.push_back(std::move(poly));
    }
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (std::size_t j = i + 1; j < polys.size(); ++j)
            if (!detail::separated(polys[i], polys[j]) && !detail::separated(polys[j], polys[i]))
                bad("cells overlap");
    std::vector<Point> hull;
    auto hidx = convex_hull_indices(config.points());
    for (auto i : hidx) hull.push_back(config.point(i));
    if (area != twice_signed_area(hull)) bad("cells do not cover the convex hull");

    std::set<std::pair<std::size_t, std::size_t>> hull_edges;
    for (std::size_t i = 0; i < hidx.size(); ++i) hull_edges.insert({hidx[i], hidx[(i + 1) % hidx.size()]});
    std::map<std::pair<std::size_t, std::size_t>, int> edges;
    for (const auto& c : sub.cells)
        for (std::size_t i = 0; i < c.vertices.size(); ++i)
            ++edges[{c.vertices[i], c.vertices[(i + 1) % c.vertices.size()]}];
    for (const auto& [e, count] : edges) {
        if (count != 1) bad("directed edge used twice");
        if (hull_edges.count(e)) continue;
        if (!edges.count({e.second, e.first})) bad("cells are not face-to-face");
    }
}

/// Subdivision induced by the lower convex hull of the lifted points (x_a, y_a, h_a).
inline Subdivision lift_subdivision(const PointConfig& config, const std::vector<Rational>& heights) {
    const std::size_t n = config.size();
    if (heights.size() != n) fail("ShapeMismatch", "one height per point required");
    const auto& p = config.points();
    std::set<std::vector<std::size_t>> facets;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Rational det = cross(p[j] - p[i], p[k] - p[i]);
                if (det == 0) continue;
                // height of the plane through the three lifted points, evaluated at r
                auto plane = [&](const Point& r) {
                    Rational li = cross(p[j] - r, p[k] - r) / det;
                    Rational lj = cross(p[k] - r, p[i] - r) / det;
                    Rational lk = cross(p[i] - r, p[j] - r) / det;
                    return Rational(li * heights[i] + lj * heights[j] + lk * heights[k]);
                };
                std::vector<std::size_t> on;
                bool lower = true;
                for (std::size_t m = 0; m < n && lower; ++m) {
                    int s = sign(heights[m] - plane(p[m]));
                    if (s < 0) lower = false;
                    if (s == 0) on.push_back(m);
                }
                if (lower) facets.insert(on);
            }
    Subdivision sub;
    for (const auto& f : facets) sub.cells.push_back(make_cell(config, f));
    return canonicalize(config, sub);
}

struct RegularityResult {
    bool regular = false;
    std::optional<std::vector<Rational>> witness;
};

/// Decides whether `sub` is induced by some height function, returning a rational witness.
/// Constraints: coplanarity of each cell's support, strict local convexity across interior
/// edges, and unused points of a cell strictly above its plane.
inline RegularityResult is_regular(const PointConfig& config, const Subdivision& sub) {
    validate_subdivision(config, sub);
    const std::size_t n = config.size();
    const auto& p = config.points();
    FourierMotzkin lp(n);

    // coefficients of h_r − (plane through a, b, c)(r)
    auto above = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t r) {
        std::vector<Rational> row(n);
        Rational det = cross(p[b] - p[a], p[c] - p[a]);
        row[r] += 1;
        row[a] -= cross(p[b] - p[r], p[c] - p[r]) / det;
        row[b] -= cross(p[c] - p[r], p[a] - p[r]) / det;
        row[c] -= cross(p[a] - p[r], p[b] - p[r]) / det;
        return row;
    };

    auto hull = convex_hull_indices(p);
    for (std::size_t g = 0; g < 3 && g < hull.size(); ++g) {
        std::vector<Rational> row(n);
        row[hull[g]] = 1;
        lp.add_equality(row, 0);
    }

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_owner;
    for (std::size_t ci = 0; ci < sub.cells.size(); ++ci) {
        const auto& c = sub.cells[ci];
        for (std::size_t i = 0; i < c.vertices.size(); ++i)
            edge_owner[{c.vertices[i], c.vertices[(i + 1) % c.vertices.size()]}] = ci;
    }

    for (std::size_t ci = 0; ci < sub.cells.size(); ++ci) {
        const auto& c = sub.cells[ci];
        std::size_t a = c.vertices[0], b = c.vertices[1], cc = c.vertices[2];
        auto supp = c.support();
        std::set<std::size_t> in_support(supp.begin(), supp.end());
        for (auto r : supp)
            if (r != a && r != b && r != cc) lp.add_equality(above(a, b, cc, r), 0);
        auto poly = cell_polygon(config, c);
        for (std::size_t r = 0; r < n; ++r)
            if (!in_support.count(r) && locate_in_convex(p[r], poly) >= 0) lp.add_inequality(above(a, b, cc, r), 1);
        for (std::size_t i = 0; i < c.vertices.size(); ++i) {
            std::size_t u = c.vertices[i], v = c.vertices[(i + 1) % c.vertices.size()];
            auto it = edge_owner.find({v, u});
            if (it == edge_owner.end()) continue;
            for (auto r : sub.cells[it->second].vertices)
                if (r != u && r != v) {
                    lp.add_inequality(above(a, b, cc, r), 1);
                    break;
                }
        }
    }
    RegularityResult res;
    res.witness = lp.solve();
    res.regular = res.witness.has_value();
    return res;
}

/// Exchanges the diagonal of the convex quadrilateral formed by the two triangles on edge {u, v}.
inline Triangulation flip(const PointConfig& config, const Triangulation& tri, std::size_t u, std::size_t v) {
    std::vector<std::size_t> owners, apex;
    for (std::size_t ci = 0; ci < tri.cells.size(); ++ci) {
        const auto& vs = tri.cells[ci].vertices;
        if (vs.size() != 3) fail("NotFlippable", "flip requires a triangulation");
        if (std::count(vs.begin(), vs.end(), u) && std::count(vs.begin(), vs.end(), v)) {
            owners.push_back(ci);
            for (auto w : vs)
                if (w != u && w != v) apex.push_back(w);
        }
    }
    if (owners.size() != 2)
        fail("NotFlippable", "edge " + config.label(u) + "-" + config.label(v) + " is not interior to two triangles");
    const auto& pa = config.point(apex[0]);
    const auto& pb = config.point(apex[1]);
    int su = orient(pa, pb, config.point(u)), sv = orient(pa, pb, config.point(v));
    if (su == 0 || sv == 0 || su == sv)
        fail("NotFlippable", "quadrilateral around " + config.label(u) + "-" + config.label(v) + " is not strictly convex");
    Triangulation out;
    for (std::size_t ci = 0; ci < tri.cells.size(); ++ci)
        if (ci != owners[0] && ci != owners[1]) out.cells.push_back(tri.cells[ci]);
    out.cells.push_back(make_cell(config, {apex[0], apex[1], u}));
    out.cells.push_back(make_cell(config, {apex[0], apex[1], v}));
    return canonicalize(config, out);
}

/// All triangulations one bistellar move away: diagonal flips, insertion of an unused point
/// into the triangle containing it, and removal of an interior point of degree three.
inline std::vector<Triangulation> flip_neighbors(const PointConfig& config, const Triangulation& tri) {
    std::vector<Triangulation> out;
    std::map<std::pair<std::size_t, std::size_t>, int> edge_count;
    std::map<std::size_t, std::vector<std::size_t>> incident;
    for (std::size_t ci = 0; ci < tri.cells.size(); ++ci) {
        const auto& vs = tri.cells[ci].vertices;
        for (std::size_t i = 0; i < 3; ++i) {
            auto a = vs[i], b = vs[(i + 1) % 3];
            ++edge_count[{std::min(a, b), std::max(a, b)}];
            incident[a].push_back(ci);
        }
    }
    for (const auto& [e, count] : edge_count) {
        if (count != 2) continue;
        try {
            out.push_back(flip(config, tri, e.first, e.second));
        } catch (const Error&) {
        }
    }
    auto used = tri.used_points();
    std::set<std::size_t> used_set(used.begin(), used.end());
    for (std::size_t pt = 0; pt < config.size(); ++pt) {
        if (used_set.count(pt)) continue;
        for (std::size_t ci = 0; ci < tri.cells.size(); ++ci) {
            const auto& vs = tri.cells[ci].vertices;
            if (!strictly_inside_triangle(config.point(pt), config.point(vs[0]), config.point(vs[1]), config.point(vs[2])))
                continue;
            Triangulation t;
            for (std::size_t cj = 0; cj < tri.cells.size(); ++cj)
                if (cj != ci) t.cells.push_back(tri.cells[cj]);
            for (std::size_t i = 0; i < 3; ++i) t.cells.push_back(make_cell(config, {vs[i], vs[(i + 1) % 3], pt}));
            out.push_back(canonicalize(config, t));
            break;
        }
    }
    auto hull = convex_hull_indices(config.points());
    std::set<std::size_t> hull_set(hull.begin(), hull.end());
    for (const auto& [pt, cells] : incident) {
        if (hull_set.count(pt) || cells.size() != 3) continue;
        std::set<std::size_t> ring;
        for (auto ci : cells)
            for (auto w : tri.cells[ci].vertices)
                if (w != pt) ring.insert(w);
        if (ring.size() != 3) continue;
        Triangulation t;
        for (std::size_t cj = 0; cj < tri.cells.size(); ++cj)
            if (std::find(cells.begin(), cells.end(), cj) == cells.end()) t.cells.push_back(tri.cells[cj]);
        t.cells.push_back(make_cell(config, {ring.begin(), ring.end()}));
        out.push_back(canonicalize(config, t));
    }
    return out;
}

/// Triangulation induced by a pseudo-random generic lift (deterministic in `seed`).
inline Triangulation generic_lift_triangulation(const PointConfig& config, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(0, 1000000);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Rational> h(config.size());
        for (auto& x : h) x = Rational(dist(rng));
        auto sub = lift_subdivision(config, h);
        if (sub.is_triangulation()) return sub;
    }
    fail("DegenerateConfig", "no generic lift found");
}

/// All triangulations of Conv(A) with vertices in A (points may be left unused), found by a
/// breadth-first search of the flip graph from one generic lift; canonically sorted.
inline std::vector<Triangulation> enumerate_triangulations(const PointConfig& config, bool regular_only,
                                                            std::uint64_t seed = 0) {
    detail::require_nondegenerate(config);
    std::set<Triangulation> seen;
    std::deque<Triangulation> queue;
    auto start = generic_lift_triangulation(config, seed);
    seen.insert(start);
    queue.push_back(start);
    while (!queue.empty()) {
        auto t = std::move(queue.front());
        queue.pop_front();
        for (auto& nb : flip_neighbors(config, t))
            if (seen.insert(nb).second) queue.push_back(nb);
    }
    std::vector<Triangulation> out;
    for (const auto& t : seen)
        if (!regular_only || is_regular(config, t).regular) out.push_back(t);
    return out;
}

/// coords(a) = Σ normalized volumes of the cells having a as a vertex.
inline Vector gkz_vector(const PointConfig& config, const Triangulation& tri) {
    Vector g(config.size());
    for (const auto& c : tri.cells) {
        Rational vol = normalized_volume(config, c);
        for (auto v : c.vertices) g[v] += vol;
    }
    return g;
}

/// Σ(A): GKZ vectors of the regular triangulations, flip edges between them, and dimension.
struct SecPolytope {
    std::vector<Triangulation> vertices;
    std::vector<Vector> gkz;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    int dim = 0;

    std::size_t find(const Triangulation& t) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), t);
        return (it != vertices.end() && *it == t) ? static_cast<std::size_t>(it - vertices.begin()) : vertices.size();
    }
};

inline SecPolytope secondary_polytope(const PointConfig& config) {
    SecPolytope sp;
    sp.vertices = enumerate_triangulations(config, true);
    for (const auto& t : sp.vertices) sp.gkz.push_back(gkz_vector(config, t));
    for (std::size_t i = 0; i < sp.vertices.size(); ++i)
        for (const auto& nb : flip_neighbors(config, sp.vertices[i])) {
            std::size_t j = sp.find(nb);
            if (j < sp.vertices.size() && i < j) sp.edges.emplace_back(i, j);
        }
    std::sort(sp.edges.begin(), sp.edges.end());
    sp.dim = affine_dimension(sp.gkz);
    return sp;
}

/// Every cell of `fine` carries only points of one cell of `coarse`.
inline bool refines(const Subdivision& fine, const Subdivision& coarse) {
    for (const auto& c : fine.cells) {
        auto s = c.support();
        bool inside = false;
        for (const auto& d : coarse.cells) {
            auto t = d.support();
            if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                inside = true;
                break;
            }
        }
        if (!inside) return false;
    }
    return true;
}

struct FaceFactor {
    std::vector<std::size_t> points;  // indices into the parent configuration
    PointConfig config;
    SecPolytope polytope;
};

struct FaceFactorization {
    std::vector<FaceFactor> factors;
    std::vector<Triangulation> refinements;  // regular triangulations of A refining the subdivision
    bool bijective = false;                  // refinements ↔ ∏ vertices(factors), GKZ-compatible
    std::size_t product_of_vertex_counts = 1;
};

/// Restriction of a triangulation to the points of one cell, re-indexed into the cell's
/// sub-configuration (whose indices follow the sorted `points`).
inline Triangulation restrict_to(const PointConfig& sub_config, const std::vector<std::size_t>& points,
                                 const Triangulation& tri) {
    std::map<std::size_t, std::size_t> local;
    for (std::size_t i = 0; i < points.size(); ++i) local[points[i]] = i;
    Triangulation out;
    for (const auto& c : tri.cells) {
        bool inside = true;
        for (auto v : c.vertices)
            if (!local.count(v)) inside = false;
        if (!inside) continue;
        std::vector<std::size_t> pts;
        for (auto v : c.vertices) pts.push_back(local[v]);
        out.cells.push_back(make_cell(sub_config, pts));
    }
    return canonicalize(sub_config, out);
}

/// For a regular subdivision 𝒫 = {Q_i}: the secondary polytopes of the cells' point sets, the
/// regular triangulations refining 𝒫, and whether the refinements correspond one-to-one to
/// tuples of factor vertices with GKZ vectors adding up. A false `bijective` is a report.
inline FaceFactorization face_factorization(const PointConfig& config, const Subdivision& sub) {
    if (!is_regular(config, sub).regular) fail("NotRegular", "subdivision is not regular");
    FaceFactorization res;
    for (const auto& c : sub.cells) {
        FaceFactor f;
        f.points = c.support();
        f.config = config.subset(f.points);
        f.polytope = secondary_polytope(f.config);
        res.product_of_vertex_counts *= f.polytope.vertices.size();
        res.factors.push_back(std::move(f));
    }
    for (auto& t : enumerate_triangulations(config, true))
        if (refines(t, sub)) res.refinements.push_back(std::move(t));

    bool ok = res.refinements.size() == res.product_of_vertex_counts;
    std::set<std::vector<std::size_t>> tuples;
    for (const auto& t : res.refinements) {
        std::vector<std::size_t> tuple;
        Vector sum(config.size());
        for (const auto& f : res.factors) {
            auto r = restrict_to(f.config, f.points, t);
            std::size_t k = f.polytope.find(r);
            if (k == f.polytope.vertices.size()) {
                ok = false;
                break;
            }
            tuple.push_back(k);
            for (std::size_t i = 0; i < f.points.size(); ++i) sum[f.points[i]] += f.polytope.gkz[k][i];
        }
        if (!ok) break;
        if (sum != gkz_vector(config, t) || !tuples.insert(tuple).second) ok = false;
    }
    res.bijective = ok;
    return res;
}

/// Face lattice of Σ(A) with the regular subdivision attached to each face.
struct SecondaryFaceLattice {
    SecPolytope polytope;
    PolytopeLattice lattice;
    std::vector<Subdivision> subdivisions;  // parallel to lattice.faces
};

constexpr std::size_t kMaxFaceLatticePoints = 6;

inline SecondaryFaceLattice secondary_face_lattice(const PointConfig& config) {
    if (config.size() > kMaxFaceLatticePoints)
        fail("FaceLatticeUnavailable", "face lattices are computed for at most 6 points");
    SecondaryFaceLattice fl;
    fl.polytope = secondary_polytope(config);
    fl.lattice = polytope_faces(fl.polytope.gkz);
    for (const auto& face : fl.lattice.faces) {
        auto sub = lift_subdivision(config, face.functional);
        std::vector<std::size_t> refining;
        for (std::size_t v = 0; v < fl.polytope.vertices.size(); ++v)
            if (refines(fl.polytope.vertices[v], sub)) refining.push_back(v);
        if (refining != face.vertices)
            throw std::logic_error("secondary face lattice: face and lifted subdivision disagree");
        fl.subdivisions.push_back(std::move(sub));
    }
    return fl;
}

}  // namespace air
