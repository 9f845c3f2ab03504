#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "air/secondary.hpp"

namespace air {

// ---------------------------------------------------------------------------------------------
// Orientation bookkeeping

/// An oriented affine frame for a polytope: origin plus an ordered basis of the direction
/// space, with a solver returning coordinates of direction vectors in that basis.
class Frame {
public:
    Frame() = default;
    Frame(Vector origin, std::vector<Vector> basis) : origin_(std::move(origin)), basis_(std::move(basis)) {
        const std::size_t m = basis_.size();
        if (m == 0) return;
        const std::size_t ambient = basis_[0].size();
        Matrix b(m, ambient);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < ambient; ++j) b(i, j) = basis_[i][j];
        Matrix r = b;
        rows_ = r.rref();
        if (rows_.size() != m) throw std::logic_error("Frame: basis vectors are dependent");
        Matrix square(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < m; ++k) square(k, i) = basis_[i][rows_[k]];
        solve_ = *square.inverse();
    }

    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<Vector>& basis() const noexcept { return basis_; }
    const Vector& origin() const noexcept { return origin_; }

    Vector coords(const Vector& w) const {
        const std::size_t m = basis_.size();
        Matrix rhs(m, 1);
        for (std::size_t k = 0; k < m; ++k) rhs(k, 0) = w[rows_[k]];
        Matrix c = solve_ * rhs;
        Vector out(m);
        for (std::size_t k = 0; k < m; ++k) out[k] = c(k, 0);
        return out;
    }

    /// Sign of the determinant of the given direction vectors expressed in this frame.
    int orientation_of(const std::vector<Vector>& vecs) const {
        const std::size_t m = basis_.size();
        if (vecs.size() != m) throw std::logic_error("Frame: wrong number of vectors for orientation");
        Matrix d(m, m);
        for (std::size_t c = 0; c < m; ++c) {
            auto x = coords(vecs[c]);
            for (std::size_t r = 0; r < m; ++r) d(r, c) = x[r];
        }
        return sign(d.determinant());
    }

private:
    Vector origin_;
    std::vector<Vector> basis_;
    std::vector<std::size_t> rows_;
    Matrix solve_;
};

/// Orientation of a face by the lexicographic order of its vertex ids: the first vertex is the
/// origin and each later vertex that raises the affine rank contributes v − v₀.
inline Frame lex_frame(const std::vector<Vector>& points, const std::vector<std::size_t>& vertex_ids) {
    std::vector<std::size_t> ids = vertex_ids;
    std::sort(ids.begin(), ids.end());
    const Vector& v0 = points[ids[0]];
    std::vector<Vector> basis;
    std::size_t rank = 0;
    for (std::size_t k = 1; k < ids.size(); ++k) {
        Vector w = detail::sub(points[ids[k]], v0);
        basis.push_back(w);
        Matrix m(basis.size(), w.size());
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = basis[i][j];
        if (m.rank() == rank + 1) ++rank;
        else basis.pop_back();
    }
    return Frame(v0, std::move(basis));
}

/// A vector from the rest of `face` towards its facet `facet`.
inline Vector outward_vector(const std::vector<Vector>& points, const std::vector<std::size_t>& face,
                             const std::vector<std::size_t>& facet) {
    std::size_t outside = face.size();
    for (auto v : face)
        if (!std::binary_search(facet.begin(), facet.end(), v)) {
            outside = v;
            break;
        }
    return detail::sub(points[facet[0]], points[outside]);
}

// ---------------------------------------------------------------------------------------------
// Polyhedral chain complex

struct ChainGenerator {
    std::string id;
    int degree = 0;
};

/// Finite chain complex over ℚ. `boundary.at(k)` maps degree-k chains to degree-(k−1) chains,
/// in the bases `by_degree.at(k)` and `by_degree.at(k−1)` (indices into `generators`).
struct ChainComplex {
    std::vector<ChainGenerator> generators;
    std::map<int, std::vector<std::size_t>> by_degree;
    std::map<int, Matrix> boundary;

    bool boundary_squares_to_zero() const {
        for (const auto& [k, m] : boundary) {
            auto it = boundary.find(k - 1);
            if (it == boundary.end()) continue;
            if (!(it->second * m).is_zero()) return false;
        }
        return true;
    }
};

/// Cellular chain complex of Σ(A): one generator per face, degree = dimension, each face
/// oriented by `lex_frame` and ∂F = Σ_G ±G with the induced (outward-first) orientation.
inline ChainComplex polyhedral_chain_complex(const SecondaryFaceLattice& fl) {
    const auto& faces = fl.lattice.faces;
    const auto& pts = fl.polytope.gkz;
    ChainComplex cc;
    std::vector<Frame> frames;
    std::vector<std::size_t> pos_in_degree(faces.size());
    for (std::size_t f = 0; f < faces.size(); ++f) {
        cc.generators.push_back({"F" + std::to_string(f), faces[f].dim});
        auto& list = cc.by_degree[faces[f].dim];
        pos_in_degree[f] = list.size();
        list.push_back(f);
        frames.push_back(lex_frame(pts, faces[f].vertices));
    }
    for (const auto& [k, list] : cc.by_degree) {
        if (k == 0) continue;
        const auto& lower = cc.by_degree[k - 1];
        Matrix m(lower.size(), list.size());
        for (std::size_t c = 0; c < list.size(); ++c) {
            const std::size_t f = list[c];
            for (auto g : fl.lattice.facets[f]) {
                std::vector<Vector> vecs{outward_vector(pts, faces[f].vertices, faces[g].vertices)};
                for (const auto& b : frames[g].basis()) vecs.push_back(b);
                m(pos_in_degree[g], c) = frames[f].orientation_of(vecs);
            }
        }
        cc.boundary[k] = std::move(m);
    }
    return cc;
}

inline ChainComplex polyhedral_chain_complex(const PointConfig& config) {
    return polyhedral_chain_complex(secondary_face_lattice(config));
}

// ---------------------------------------------------------------------------------------------
// Free graded-commutative and free associative algebras over ℚ

/// Sorted multiset of generator ids (commutative case) or a word (associative case).
using Monomial = std::vector<std::size_t>;
using Polynomial = std::map<Monomial, Rational>;

inline void add_term(Polynomial& p, const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = p.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

/// Product of two sorted monomials in the free graded-commutative algebra: merged with the
/// Koszul sign; zero (nullopt) when an odd generator would repeat.
inline std::optional<std::pair<int, Monomial>> supercommutative_product(const Monomial& a, const Monomial& b,
                                                                        const std::vector<int>& degree) {
    int sgn = 1;
    for (auto y : b) {
        if (degree[y] % 2 == 0) continue;
        for (auto x : a)
            if (degree[x] % 2 != 0 && x > y) sgn = -sgn;
    }
    Monomial m = a;
    m.insert(m.end(), b.begin(), b.end());
    std::sort(m.begin(), m.end());
    for (std::size_t i = 0; i + 1 < m.size(); ++i)
        if (m[i] == m[i + 1] && degree[m[i]] % 2 != 0) return std::nullopt;
    return std::make_pair(sgn, m);
}

struct WebGenerator {
    std::vector<std::size_t> subset;  // indices into the configuration, sorted
    int degree = 0;
    std::string id;                   // canonical, e.g. "{w1,w2,w4}"
    std::vector<std::size_t> orientation_vertices;  // vertex ids of Σ(subset) spanning its frame
};

/// Free graded-commutative algebra on one generator [Σ(A′)] per subset A′ ⊆ A (|A′| ≥ 2), of
/// degree dim Σ(A′). Every face of Σ(A′) factors as a product of such generators (one per cell
/// of its subdivision), so d[Σ(A′)] = Σ_facets ±(product of the facet's cell generators):
/// single-cell facets give the linear part, multi-cell facets the brackets.
struct WebCdga {
    PointConfig config;
    std::vector<WebGenerator> generators;
    std::vector<Polynomial> differential;

    std::vector<int> degrees() const {
        std::vector<int> d;
        for (const auto& g : generators) d.push_back(g.degree);
        return d;
    }

    std::size_t find(const std::vector<std::size_t>& subset) const {
        for (std::size_t i = 0; i < generators.size(); ++i)
            if (generators[i].subset == subset) return i;
        return generators.size();
    }

    /// Extension of d as a degree −1 derivation.
    Polynomial apply(const Polynomial& p) const {
        auto deg = degrees();
        Polynomial out;
        for (const auto& [mono, coeff] : p) {
            int prefix = 0;
            for (std::size_t j = 0; j < mono.size(); ++j) {
                Monomial left(mono.begin(), mono.begin() + j), right(mono.begin() + j + 1, mono.end());
                const Rational c = (prefix % 2 == 0) ? coeff : Rational(-coeff);
                for (const auto& [dm, dc] : differential[mono[j]]) {
                    // left · dm · right, with left and right already in sorted position
                    auto lm = supercommutative_product(left, dm, deg);
                    if (!lm) continue;
                    auto full = supercommutative_product(lm->second, right, deg);
                    if (!full) continue;
                    add_term(out, full->second, Rational(c * dc * lm->first * full->first));
                }
                prefix += deg[mono[j]];
            }
        }
        return out;
    }
};

inline std::string subset_id(const PointConfig& config, const std::vector<std::size_t>& subset) {
    std::string s = "{";
    for (std::size_t i = 0; i < subset.size(); ++i) s += (i ? "," : "") + config.label(subset[i]);
    return s + "}";
}

namespace detail {

/// Σ of a sub-configuration with its lex orientation frame (coordinates indexed by the
/// sub-configuration, i.e. by the sorted parent indices).
struct OrientedSecondary {
    SecPolytope polytope;
    Frame frame;
    std::vector<std::size_t> frame_vertices;
};

inline OrientedSecondary oriented_secondary(const PointConfig& sub_config) {
    OrientedSecondary o;
    o.polytope = secondary_polytope(sub_config);
    std::vector<std::size_t> all(o.polytope.vertices.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    o.frame = lex_frame(o.polytope.gkz, all);
    // record which vertices span the frame (origin first)
    o.frame_vertices.push_back(0);
    for (const auto& b : o.frame.basis()) {
        for (std::size_t v = 0; v < o.polytope.gkz.size(); ++v)
            if (detail::sub(o.polytope.gkz[v], o.polytope.gkz[0]) == b) {
                o.frame_vertices.push_back(v);
                break;
            }
    }
    return o;
}

/// Pushes a vector indexed by `from` (sorted parent indices) into coordinates indexed by `to`.
inline Vector extend(const Vector& v, const std::vector<std::size_t>& from, const std::vector<std::size_t>& to) {
    Vector out(to.size());
    for (std::size_t i = 0; i < from.size(); ++i) {
        auto it = std::lower_bound(to.begin(), to.end(), from[i]);
        out[static_cast<std::size_t>(it - to.begin())] = v[i];
    }
    return out;
}

inline std::vector<std::size_t> to_parent(const std::vector<std::size_t>& local, const std::vector<std::size_t>& subset) {
    std::vector<std::size_t> out;
    for (auto i : local) out.push_back(subset[i]);
    std::sort(out.begin(), out.end());
    return out;
}

/// All subsets of {0..n-1} of size ≥ k, each sorted, ordered by size then lexicographically.
inline std::vector<std::vector<std::size_t>> subsets_of_size_at_least(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t size = k; size <= n; ++size)
        for_each_combination(n, size, [&](const std::vector<std::size_t>& c) { out.push_back(c); });
    return out;
}

}  // namespace detail

/// Builds the web CDGA over every sub-configuration (|A| ≤ 6, no three points collinear).
/// Throws SignInconsistency if the result fails d² = 0 (a bug trap).
inline WebCdga build_web_cdga(const PointConfig& config, bool verify = true);

struct DSquaredReport {
    bool ok = true;
    std::vector<std::size_t> failing_generators;
};

inline DSquaredReport check_d_squared(const WebCdga& cdga) {
    DSquaredReport rep;
    for (std::size_t g = 0; g < cdga.generators.size(); ++g) {
        if (!cdga.apply(cdga.differential[g]).empty()) {
            rep.ok = false;
            rep.failing_generators.push_back(g);
        }
    }
    return rep;
}

inline WebCdga build_web_cdga(const PointConfig& config, bool verify) {
    if (config.size() > kMaxFaceLatticePoints)
        fail("FaceLatticeUnavailable", "web CDGA is built for at most 6 points");
    if (!no_three_collinear(config)) fail("DegenerateConfig", "three points of the configuration are collinear");
    WebCdga cdga;
    cdga.config = config;
    auto subsets = detail::subsets_of_size_at_least(config.size(), 2);
    std::map<std::vector<std::size_t>, detail::OrientedSecondary> oriented;
    for (const auto& s : subsets) {
        WebGenerator g;
        g.subset = s;
        g.id = subset_id(config, s);
        if (s.size() >= 3) {
            auto o = detail::oriented_secondary(config.subset(s));
            g.degree = static_cast<int>(o.frame.dim());
            g.orientation_vertices = o.frame_vertices;
            oriented.emplace(s, std::move(o));
        }
        cdga.generators.push_back(std::move(g));
    }
    cdga.differential.assign(cdga.generators.size(), {});
    auto deg = cdga.degrees();
    for (std::size_t gi = 0; gi < cdga.generators.size(); ++gi) {
        const auto& g = cdga.generators[gi];
        if (g.degree == 0) continue;
        auto sub_config = config.subset(g.subset);
        auto fl = secondary_face_lattice(sub_config);
        const auto& top = oriented.at(g.subset);
        for (auto f : fl.lattice.facets[0]) {
            const auto& sub = fl.subdivisions[f];
            std::vector<std::size_t> ids;
            for (const auto& cell : sub.cells) {
                auto parent = detail::to_parent(cell.support(), g.subset);
                ids.push_back(cdga.find(parent));
            }
            std::sort(ids.begin(), ids.end());
            std::vector<Vector> vecs{outward_vector(fl.polytope.gkz, fl.lattice.faces[0].vertices, fl.lattice.faces[f].vertices)};
            for (auto id : ids)
                for (const auto& b : oriented.at(cdga.generators[id].subset).frame.basis())
                    vecs.push_back(detail::extend(b, cdga.generators[id].subset, g.subset));
            if (vecs.size() != top.frame.dim())
                throw std::logic_error("web CDGA: facet " + std::to_string(f) + " of " + g.id + " does not factor");
            add_term(cdga.differential[gi], ids, top.frame.orientation_of(vecs));
        }
    }
    (void)deg;
    if (verify && !check_d_squared(cdga).ok) fail("SignInconsistency", "d^2 != 0 in the web CDGA");
    return cdga;
}

// ---------------------------------------------------------------------------------------------
// Extended configuration A ∪ {∞} and the A∞ algebra of infinite polygons

inline const std::string kInfinityLabel = "inf";

/// Far-point bound: beyond it every orientation involving M·η has its limiting sign.
inline Rational infinity_stability_bound(const PointConfig& config, const Direction& eta) {
    Rational bound = 1;
    const auto& p = config.points();
    for (std::size_t i = 0; i < p.size(); ++i) {
        bound = std::max(bound, Rational(abs(p[i].x) + abs(p[i].y) + 1));
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (i == j) continue;
            Point d = p[j] - p[i];
            Rational den = cross(d, eta.vec());
            if (den == 0) fail("NonGenericEta", "eta is parallel to " + config.label(j) + " - " + config.label(i));
            Rational r = abs(cross(d, p[i])) / abs(den);
            bound = std::max(bound, Rational(2 * r + 1));
        }
    }
    return bound;
}

inline PointConfig extended_config(const PointConfig& config, const Direction& eta, const Rational& m) {
    PointConfig ext = config;
    ext.add(kInfinityLabel, m * eta.vec());
    return ext;
}

struct ExtendedTriangulation {
    Triangulation triangulation;               // of the extended configuration
    std::vector<std::size_t> infinite_cells;  // indices into triangulation.cells, anticlockwise around ∞
};

struct ExtendedTriangulations {
    PointConfig config;  // A ∪ {∞}, ∞ last
    Rational m;
    std::vector<ExtendedTriangulation> triangulations;
};

/// Cells containing `inf`, sorted anticlockwise as seen from it.
inline std::vector<std::size_t> cells_around(const PointConfig& ext, const Subdivision& sub, std::size_t inf) {
    std::vector<std::size_t> cells;
    std::vector<Point> dirs(sub.cells.size());
    for (std::size_t c = 0; c < sub.cells.size(); ++c) {
        auto s = sub.cells[c].support();
        if (!std::binary_search(s.begin(), s.end(), inf)) continue;
        cells.push_back(c);
        Point sum{0, 0};
        for (auto v : s)
            if (v != inf) sum = sum + (ext.point(v) - ext.point(inf));
        dirs[c] = sum;
    }
    std::sort(cells.begin(), cells.end(), [&](std::size_t a, std::size_t b) { return cross(dirs[a], dirs[b]) > 0; });
    return cells;
}

namespace detail {

inline std::vector<std::vector<std::vector<std::string>>> labelled(const PointConfig& ext,
                                                                 const std::vector<Triangulation>& ts) {
    std::vector<std::vector<std::vector<std::string>>> out;
    for (const auto& t : ts) {
        std::vector<std::vector<std::string>> cells;
        for (const auto& c : t.cells) {
            std::vector<std::string> l;
            for (auto v : c.vertices) l.push_back(ext.label(v));
            cells.push_back(l);
        }
        out.push_back(cells);
    }
    return out;
}

inline std::vector<Triangulation> extended_enumeration(const PointConfig& config, const Direction& eta, const Rational& m) {
    try {
        return enumerate_triangulations(extended_config(config, eta, m), false);
    } catch (const Error&) {
        fail("UnstableM", "far point M*eta is degenerate for M = " + to_string(m));
    }
}

}  // namespace detail

/// Triangulations of A ∪ {M·η}; with M absent the stability bound is used (and doubled until
/// the combinatorics agree with 2M). An explicit M whose combinatorics change under
/// doubling raises UnstableM.
inline ExtendedTriangulations extended_triangulations(const PointConfig& config, const Direction& eta,
                                                      std::optional<Rational> m = std::nullopt) {
    if (!no_three_collinear(config)) fail("DegenerateConfig", "three points of the configuration are collinear");
    const bool automatic = !m.has_value();
    Rational cur = automatic ? infinity_stability_bound(config, eta) : *m;
    if (!automatic) {
        std::vector<Point> hull;
        for (auto i : convex_hull_indices(config.points())) hull.push_back(config.point(i));
        if (cur <= 0 || (hull.size() >= 3 && locate_in_convex(cur * eta.vec(), hull) >= 0))
            fail("UnstableM", "far point M*eta is not outside the convex hull for M = " + to_string(cur));
    }
    for (int attempt = 0; attempt < 64; ++attempt) {
        auto a = detail::extended_enumeration(config, eta, cur);
        auto b = detail::extended_enumeration(config, eta, Rational(2 * cur));
        auto ext = extended_config(config, eta, cur);
        if (detail::labelled(ext, a) == detail::labelled(extended_config(config, eta, Rational(2 * cur)), b)) {
            ExtendedTriangulations out{ext, cur, {}};
            const std::size_t inf = ext.size() - 1;
            for (auto& t : a) out.triangulations.push_back({t, cells_around(ext, t, inf)});
            return out;
        }
        if (!automatic) fail("UnstableM", "extended triangulations change when M is doubled");
        cur *= 2;
    }
    fail("UnstableM", "no stable M found");
}

/// A∞ algebra R of infinite polygons, stored in the bar-shifted convention: structure maps
/// b_k of degree −1 on generators r_B (B ⊆ A, |B| ≥ 2, degree dim Σ(B ∪ ∞)). They satisfy
///   Σ_{r+s+t=n} (−1)^{|x₁|+…+|x_r|} b_{r+1+t}(x₁,…,x_r, b_s(x_{r+1},…,x_{r+s}), …, x_n) = 0,
/// which is d² = 0 on the free associative algebra dual to R.
struct AInfAlgebra {
    PointConfig config;
    Direction eta{0, 1};
    Rational m;
    std::vector<std::vector<std::size_t>> basis;  // subsets B, sorted
    std::vector<int> degree;
    std::vector<std::string> ids;
    std::size_t k_max = 4;
    /// products[k][(x₁,…,x_k)] = Σ coefficient · r_out
    std::map<std::size_t, std::map<Monomial, std::map<std::size_t, Rational>>> products;

    std::size_t find(const std::vector<std::size_t>& subset) const {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i] == subset) return i;
        return basis.size();
    }
};

inline AInfAlgebra build_ainf(const PointConfig& config, const Direction& eta, std::size_t k_max = 4) {
    if (config.size() + 1 > kMaxFaceLatticePoints)
        fail("FaceLatticeUnavailable", "A-infinity algebra is built for at most 5 points");
    auto ext_all = extended_triangulations(config, eta);
    const PointConfig& ext = ext_all.config;
    const std::size_t inf = ext.size() - 1;

    AInfAlgebra alg;
    alg.config = config;
    alg.eta = eta;
    alg.m = ext_all.m;
    alg.k_max = k_max;
    std::map<std::vector<std::size_t>, detail::OrientedSecondary> oriented;
    for (const auto& s : detail::subsets_of_size_at_least(config.size(), 2)) {
        auto with_inf = s;
        with_inf.push_back(inf);
        auto o = detail::oriented_secondary(ext.subset(with_inf));
        alg.basis.push_back(s);
        alg.degree.push_back(static_cast<int>(o.frame.dim()));
        alg.ids.push_back(subset_id(config, s) + "+inf");
        oriented.emplace(with_inf, std::move(o));
    }
    for (std::size_t out = 0; out < alg.basis.size(); ++out) {
        if (alg.degree[out] == 0) continue;
        auto with_inf = alg.basis[out];
        with_inf.push_back(inf);
        auto sub_config = ext.subset(with_inf);
        const std::size_t local_inf = with_inf.size() - 1;
        auto fl = secondary_face_lattice(sub_config);
        const auto& top = oriented.at(with_inf);
        for (auto f : fl.lattice.facets[0]) {
            const auto& sub = fl.subdivisions[f];
            auto around = cells_around(sub_config, sub, local_inf);
            if (around.size() != sub.cells.size()) continue;  // finite cells: deformation terms, not part of R
            Monomial word;
            std::vector<Vector> vecs{outward_vector(fl.polytope.gkz, fl.lattice.faces[0].vertices, fl.lattice.faces[f].vertices)};
            for (auto c : around) {
                auto parent = detail::to_parent(sub.cells[c].support(), with_inf);
                for (const auto& b : oriented.at(parent).frame.basis()) vecs.push_back(detail::extend(b, parent, with_inf));
                parent.pop_back();  // drop ∞ (largest index)
                word.push_back(alg.find(parent));
            }
            if (vecs.size() != top.frame.dim())
                throw std::logic_error("A-infinity: facet of " + alg.ids[out] + " does not factor");
            if (word.size() > k_max) continue;
            auto& slot = alg.products[word.size()][word][out];
            slot += top.frame.orientation_of(vecs);
        }
    }
    return alg;
}

struct StasheffFailure {
    Monomial inputs;
    std::size_t output;
    Rational value;
};

struct StasheffReport {
    bool ok = true;
    std::vector<StasheffFailure> failures;
};

inline StasheffReport check_stasheff(const AInfAlgebra& alg, std::size_t max_arity) {
    if (max_arity > alg.k_max) fail("ArityTooLarge", "max_arity exceeds the algebra's k_max");
    struct Entry {
        const Monomial* inputs;
        std::size_t output;
        const Rational* coeff;
    };
    std::vector<Entry> entries;
    std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> containing;  // gen → (entry, position)
    for (const auto& [k, table] : alg.products)
        for (const auto& [in, outs] : table)
            for (const auto& [o, c] : outs) {
                if (c == 0) continue;
                entries.push_back({&in, o, &c});
                for (std::size_t pos = 0; pos < in.size(); ++pos) containing[in[pos]].emplace_back(entries.size() - 1, pos);
            }
    std::map<std::pair<Monomial, std::size_t>, Rational> total;
    for (const auto& inner : entries) {
        auto it = containing.find(inner.output);
        if (it == containing.end()) continue;
        for (const auto& [oi, pos] : it->second) {
            const auto& outer = entries[oi];
            const std::size_t arity = outer.inputs->size() - 1 + inner.inputs->size();
            if (arity > max_arity) continue;
            Monomial word(outer.inputs->begin(), outer.inputs->begin() + pos);
            int prefix = 0;
            for (auto x : word) prefix += alg.degree[x];
            word.insert(word.end(), inner.inputs->begin(), inner.inputs->end());
            word.insert(word.end(), outer.inputs->begin() + pos + 1, outer.inputs->end());
            Rational v = (*inner.coeff) * (*outer.coeff);
            if (prefix % 2 != 0) v = -v;
            total[{word, outer.output}] += v;
        }
    }
    StasheffReport rep;
    for (const auto& [key, v] : total)
        if (v != 0) {
            rep.ok = false;
            rep.failures.push_back({key.first, key.second, v});
        }
    return rep;
}

}  // namespace air
