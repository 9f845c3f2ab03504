#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "air/matrix.hpp"

namespace air {

using Vector = std::vector<Rational>;

/// A face of a V-polytope: its vertex indices (sorted), dimension, and a linear functional
/// whose minimum over the polytope is attained exactly on the face.
struct PolytopeFace {
    std::vector<std::size_t> vertices;
    int dim = 0;
    Vector functional;
};

/// Face lattice of the convex hull of finitely many distinct points, computed exactly.
/// Facets come from supporting hyperplanes through affinely independent vertex tuples; every
/// other face is an intersection of facets. Meant for small polytopes (dimension ≤ 3 or so).
struct PolytopeLattice {
    int dim = -1;
    std::vector<PolytopeFace> faces;                // faces[0] is the polytope itself
    std::vector<std::vector<std::size_t>> facets;   // facets[f] = codimension-one faces of face f

    std::size_t find(const std::vector<std::size_t>& vertex_set) const {
        for (std::size_t i = 0; i < faces.size(); ++i)
            if (faces[i].vertices == vertex_set) return i;
        return faces.size();
    }
};

namespace detail {

inline Vector sub(const Vector& a, const Vector& b) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Rational inner(const Vector& a, const Vector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// One-dimensional null space of a (d−1)×d matrix of full rank.
inline Vector null_vector(const Matrix& m) {
    Matrix r = m;
    auto piv = r.rref();
    std::size_t d = m.cols();
    std::size_t freec = d;
    for (std::size_t j = 0, k = 0; j < d; ++j) {
        if (k < piv.size() && piv[k] == j) {
            ++k;
            continue;
        }
        freec = j;
        break;
    }
    Vector v(d);
    v[freec] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -r(k, freec);
    return v;
}

template <typename F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (k > n) return;
    while (true) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

inline PolytopeLattice polytope_faces(const std::vector<Vector>& verts) {
    PolytopeLattice lat;
    if (verts.empty()) return lat;
    const std::size_t n = verts.size(), ambient = verts[0].size();

    Matrix diffs(n - 1, ambient);
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < ambient; ++j) diffs(i - 1, j) = verts[i][j] - verts[0][j];
    auto coords = diffs.rref();  // projection onto these coordinates is injective on the affine hull
    const std::size_t d = coords.size();
    lat.dim = static_cast<int>(d);

    std::vector<Vector> y(n, Vector(d));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < d; ++k) y[i][k] = verts[i][coords[k]];

    auto lift = [&](const Vector& normal) {
        Vector f(ambient);
        for (std::size_t k = 0; k < d; ++k) f[coords[k]] = normal[k];
        return f;
    };

    std::map<std::vector<std::size_t>, Vector> facet_normals;
    if (d > 0) {
        detail::for_each_combination(n, d, [&](const std::vector<std::size_t>& c) {
            Matrix m(d - 1, d);
            for (std::size_t r = 1; r < d; ++r)
                for (std::size_t k = 0; k < d; ++k) m(r - 1, k) = y[c[r]][k] - y[c[0]][k];
            if (m.rank() != d - 1) return;
            Vector normal = detail::null_vector(m);
            Rational level = detail::inner(normal, y[c[0]]);
            int side = 0;
            std::vector<std::size_t> on;
            for (std::size_t i = 0; i < n; ++i) {
                int s = sign(detail::inner(normal, y[i]) - level);
                if (s == 0) {
                    on.push_back(i);
                } else if (side == 0) {
                    side = s;
                } else if (side != s) {
                    return;
                }
            }
            if (side < 0)
                for (auto& x : normal) x = -x;
            facet_normals.emplace(on, normal);
        });
    }

    std::vector<std::vector<std::size_t>> facet_sets;
    for (auto& [s, _] : facet_normals) facet_sets.push_back(s);

    std::set<std::vector<std::size_t>> seen;
    std::vector<std::vector<std::size_t>> work;
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    seen.insert(all);
    work.push_back(all);
    for (std::size_t w = 0; w < work.size(); ++w) {
        for (const auto& f : facet_sets) {
            std::vector<std::size_t> inter;
            std::set_intersection(work[w].begin(), work[w].end(), f.begin(), f.end(), std::back_inserter(inter));
            if (!inter.empty() && seen.insert(inter).second) work.push_back(inter);
        }
    }

    for (const auto& vs : work) {
        PolytopeFace face;
        face.vertices = vs;
        std::vector<Vector> pts;
        for (auto i : vs) pts.push_back(verts[i]);
        face.dim = affine_dimension(pts);
        Vector normal(d);
        for (const auto& [fs, fn] : facet_normals)
            if (std::includes(fs.begin(), fs.end(), vs.begin(), vs.end()))
                for (std::size_t k = 0; k < d; ++k) normal[k] += fn[k];
        face.functional = lift(normal);
        lat.faces.push_back(std::move(face));
    }
    // full polytope first, then by decreasing dimension, then by vertex set
    std::stable_sort(lat.faces.begin(), lat.faces.end(), [](const PolytopeFace& a, const PolytopeFace& b) {
        if (a.dim != b.dim) return a.dim > b.dim;
        return a.vertices < b.vertices;
    });
    lat.facets.assign(lat.faces.size(), {});
    for (std::size_t f = 0; f < lat.faces.size(); ++f)
        for (std::size_t g = 0; g < lat.faces.size(); ++g) {
            const auto& F = lat.faces[f];
            const auto& G = lat.faces[g];
            if (G.dim == F.dim - 1 &&
                std::includes(F.vertices.begin(), F.vertices.end(), G.vertices.begin(), G.vertices.end()))
                lat.facets[f].push_back(g);
        }
    return lat;
}

}  // namespace air
