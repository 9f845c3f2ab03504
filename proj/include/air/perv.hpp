#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "air/exactgeom.hpp"
#include "air/matrix.hpp"

namespace air {

/// GMV presentation of a perverse sheaf on (ℂ, A): nearby cycles Ψ of dimension m, vanishing
/// cycles Φ_i, and maps a_i : Φ_i → Ψ (m × n_i), a′_i : Ψ → Φ_i (n_i × m).
struct GmvDiagram {
    PointConfig config;
    std::size_t psi_dim = 0;
    std::vector<std::size_t> phi_dims;
    std::vector<Matrix> a;
    std::vector<Matrix> a_prime;
};

struct GmvLabelReport {
    std::string label;
    Rational det_psi;  // det(1_Ψ − a_i a′_i)
    Rational det_phi;  // det(1_Φ − a′_i a_i)
};

struct GmvReport {
    bool valid = true;
    std::vector<GmvLabelReport> labels;
};

inline GmvReport validate_gmv(const GmvDiagram& g) {
    GmvReport rep;
    for (std::size_t i = 0; i < g.config.size(); ++i) {
        const Matrix& a = g.a.at(i);
        const Matrix& ap = g.a_prime.at(i);
        if (a.rows() != g.psi_dim || a.cols() != g.phi_dims[i] || ap.rows() != g.phi_dims[i] || ap.cols() != g.psi_dim)
            fail("ShapeMismatch", "GMV maps for '" + g.config.label(i) + "' have the wrong shape");
        GmvLabelReport r{g.config.label(i), (Matrix::identity(g.psi_dim) - a * ap).determinant(),
                         (Matrix::identity(g.phi_dims[i]) - ap * a).determinant()};
        if (r.det_psi == 0 || r.det_phi == 0) rep.valid = false;
        rep.labels.push_back(std::move(r));
    }
    return rep;
}

/// Matrix-diagram presentation: local monodromies μ_i and rectilinear transports t_ij : Φ_i → Φ_j
/// (an n_j × n_i matrix) for every ordered pair, together with a linear spider order used by
/// braid mutations and the total monodromy.
class MatrixDiagram {
public:
    MatrixDiagram() = default;
    MatrixDiagram(PointConfig config, std::vector<std::size_t> phi_dims)
        : config_(std::move(config)), dims_(std::move(phi_dims)) {
        if (dims_.size() != config_.size()) fail("ShapeMismatch", "one Φ-dimension per point required");
        for (auto n : dims_) mu_.push_back(Matrix::identity(n));
        order_.resize(config_.size());
        std::iota(order_.begin(), order_.end(), std::size_t{0});
    }

    const PointConfig& config() const noexcept { return config_; }
    std::size_t size() const noexcept { return config_.size(); }
    std::size_t dim(std::size_t i) const { return dims_.at(i); }
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    std::size_t total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0}); }

    const Matrix& mu(std::size_t i) const { return mu_.at(i); }
    void set_mu(std::size_t i, Matrix m) {
        if (m.rows() != dims_.at(i) || m.cols() != dims_[i]) fail("ShapeMismatch", "monodromy has the wrong shape");
        mu_[i] = std::move(m);
    }

    /// t_ij (zero of shape n_j × n_i when unset). For i == j this is 1 − μ_i = a′_i a_i.
    Matrix t(std::size_t i, std::size_t j) const {
        if (i == j) return Matrix::identity(dims_.at(i)) - mu_.at(i);
        auto it = t_.find({i, j});
        if (it != t_.end()) return it->second;
        return Matrix::zero(dims_.at(j), dims_.at(i));
    }
    void set_t(std::size_t i, std::size_t j, Matrix m) {
        if (i == j) fail("ShapeMismatch", "transports are defined for distinct points");
        if (m.rows() != dims_.at(j) || m.cols() != dims_.at(i))
            fail("ShapeMismatch", "transport " + config_.label(i) + "->" + config_.label(j) + " has the wrong shape");
        t_[{i, j}] = std::move(m);
    }

    const std::vector<std::size_t>& order() const noexcept { return order_; }
    void set_order(std::vector<std::size_t> order) {
        std::vector<std::size_t> s = order;
        std::sort(s.begin(), s.end());
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i] != i) fail("BadOrder", "spider order must be a permutation of the labels");
        if (s.size() != size()) fail("BadOrder", "spider order must be a permutation of the labels");
        order_ = std::move(order);
    }

    bool monodromies_invertible() const {
        for (const auto& m : mu_)
            if (m.determinant() == 0) return false;
        return true;
    }

    friend bool operator==(const MatrixDiagram& a, const MatrixDiagram& b) {
        if (!(a.config_ == b.config_) || a.dims_ != b.dims_ || a.mu_ != b.mu_ || a.order_ != b.order_) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < a.size(); ++j)
                if (i != j && a.t(i, j) != b.t(i, j)) return false;
        return true;
    }

private:
    PointConfig config_;
    std::vector<std::size_t> dims_;
    std::vector<Matrix> mu_;
    std::map<std::pair<std::size_t, std::size_t>, Matrix> t_;
    std::vector<std::size_t> order_;
};

/// t_ij := a′_j a_i and μ_i := 1 − a′_i a_i, with the given spider order.
inline MatrixDiagram gmv_to_matrix_diagram(const GmvDiagram& g, std::vector<std::size_t> spider_order) {
    if (!validate_gmv(g).valid) fail("InvalidGmv", "1 - a a' or 1 - a' a is singular");
    MatrixDiagram md(g.config, g.phi_dims);
    for (std::size_t i = 0; i < g.config.size(); ++i) {
        md.set_mu(i, Matrix::identity(g.phi_dims[i]) - g.a_prime[i] * g.a[i]);
        for (std::size_t j = 0; j < g.config.size(); ++j)
            if (i != j) md.set_t(i, j, g.a_prime[j] * g.a[i]);
    }
    md.set_order(std::move(spider_order));
    return md;
}

enum class Side { Left, Right };

/// Passing the point `around` on the given side. Crossing to the left contributes the inverse
/// local monodromy on Ψ, crossing to the right the monodromy itself:
///   left:  t_kl ↦ t_kl + t_pl · μ_p⁻¹ · t_kp
///   right: t_kl ↦ t_kl − t_pl · t_kp
struct Winding {
    std::size_t around;
    Side side;
};

/// One leg k → l of a path: the straight segment when `windings` is empty, otherwise a detour
/// that passes the listed points in order.
struct Move {
    std::size_t from;
    std::size_t to;
    std::vector<Winding> windings;

    static Move straight(std::size_t k, std::size_t l) { return {k, l, {}}; }
    static Move detour(std::size_t k, std::size_t l, std::size_t p, Side s) { return {k, l, {{p, s}}}; }
};

struct PathWord {
    std::size_t source;
    std::size_t target;
    std::vector<Move> moves;
};

inline Matrix move_transport(const MatrixDiagram& md, const Move& m) {
    const std::size_t k = m.from, l = m.to;
    // partial[j]: sum over chains Φ_k → Φ_{p_j} ending with winding j (factor c_j applied)
    std::vector<Matrix> partial;
    for (std::size_t j = 0; j < m.windings.size(); ++j) {
        const std::size_t p = m.windings[j].around;
        Matrix s = md.t(k, p);
        for (std::size_t i = 0; i < j; ++i) s += md.t(m.windings[i].around, p) * partial[i];
        if (m.windings[j].side == Side::Left) {
            auto inv = md.mu(p).inverse();
            if (!inv) fail("SingularMonodromy", "monodromy at '" + md.config().label(p) + "' is not invertible");
            s = *inv * s;
        } else {
            s = -s;
        }
        partial.push_back(std::move(s));
    }
    Matrix out = md.t(k, l);
    for (std::size_t j = 0; j < m.windings.size(); ++j) out += md.t(m.windings[j].around, l) * partial[j];
    return out;
}

/// Composite transport along a path word, an n_target × n_source matrix.
inline Matrix transport(const MatrixDiagram& md, const PathWord& path) {
    const std::size_t n = md.size();
    if (path.moves.empty()) fail("MalformedPath", "path has no moves");
    if (path.source >= n || path.target >= n) fail("MalformedPath", "unknown endpoint");
    std::size_t at = path.source;
    Matrix acc = Matrix::identity(md.dim(at));
    for (const auto& m : path.moves) {
        if (m.from != at) fail("MalformedPath", "moves do not compose head to tail");
        if (m.to >= n || m.from == m.to) fail("MalformedPath", "move needs two distinct known endpoints");
        for (const auto& w : m.windings)
            if (w.around >= n || w.around == m.from || w.around == m.to)
                fail("MalformedPath", "detour must wind around a third point");
        if (m.windings.empty()) {
            const auto& p = md.config().points();
            for (std::size_t r = 0; r < n; ++r) {
                if (r == m.from || r == m.to) continue;
                if (orient(p[m.from], p[m.to], p[r]) == 0 && dot(p[r] - p[m.from], p[r] - p[m.to]) < 0)
                    fail("MalformedPath", "straight segment " + md.config().label(m.from) + "-" +
                                              md.config().label(m.to) + " passes through " + md.config().label(r));
            }
        }
        acc = move_transport(md, m) * acc;
        at = m.to;
    }
    if (at != path.target) fail("MalformedPath", "path does not end at its target");
    return acc;
}

/// Braid generator σ_k (k is 1-based, 1 ≤ k < N) or its inverse acting on the spider order.
struct BraidGenerator {
    std::size_t k;
    bool inverse = false;
};

/// Mutation of a matrix diagram under a change of spider. For σ_k with p, q the labels at
/// positions k, k+1, the strand q moves in front of p and is conjugated by p's inverse
/// monodromy on Ψ:
///   t'_qj = t_qj + t_pj μ_p⁻¹ t_qp     t'_jq = t_jq − t_pq t_jp
///   t'_pq = t_pq μ_p                   t'_qp = μ_p⁻¹ t_qp
/// For σ_k⁻¹ the strand p moves behind q and is conjugated by q's monodromy:
///   t'_pj = t_pj − t_qj t_pq           t'_jp = t_jp + t_qp μ_q⁻¹ t_jq
///   t'_qp = t_qp μ_q⁻¹                 t'_pq = μ_q t_pq
/// Monodromies are unchanged. These are the Hurwitz moves on GMV data written in terms of the
/// transports, so σσ⁻¹ = id and the braid relations hold identically.
inline MatrixDiagram braid_mutate(const MatrixDiagram& md, BraidGenerator gen) {
    const std::size_t n = md.size();
    if (gen.k < 1 || gen.k >= n) fail("BadGenerator", "braid generator index out of range");
    const std::size_t p = md.order()[gen.k - 1], q = md.order()[gen.k];
    MatrixDiagram out = md;
    auto inv = [&](std::size_t i) {
        auto m = md.mu(i).inverse();
        if (!m) fail("SingularMonodromy", "monodromy at '" + md.config().label(i) + "' is not invertible");
        return *m;
    };
    if (!gen.inverse) {
        Matrix mp_inv = inv(p);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == p || j == q) continue;
            out.set_t(q, j, md.t(q, j) + md.t(p, j) * mp_inv * md.t(q, p));
            out.set_t(j, q, md.t(j, q) - md.t(p, q) * md.t(j, p));
        }
        out.set_t(p, q, md.t(p, q) * md.mu(p));
        out.set_t(q, p, mp_inv * md.t(q, p));
    } else {
        Matrix mq_inv = inv(q);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == p || j == q) continue;
            out.set_t(p, j, md.t(p, j) - md.t(q, j) * md.t(p, q));
            out.set_t(j, p, md.t(j, p) + md.t(q, p) * mq_inv * md.t(j, q));
        }
        out.set_t(q, p, md.t(q, p) * mq_inv);
        out.set_t(p, q, md.mu(q) * md.t(p, q));
    }
    auto order = md.order();
    std::swap(order[gen.k - 1], order[gen.k]);
    out.set_order(std::move(order));
    return out;
}

/// Block offsets of ⊕Φ_i laid out in the given order.
inline std::vector<std::size_t> block_offsets(const MatrixDiagram& md, const std::vector<std::size_t>& order) {
    std::vector<std::size_t> off(md.size());
    std::size_t at = 0;
    for (auto i : order) {
        off[i] = at;
        at += md.dim(i);
    }
    return off;
}

/// Monodromy at infinity transported to ⊕Φ_i (blocks laid out in `order`):
///   M = (1 + S)⁻¹ (diag μ − U),
/// where S (strictly lower) and U (strictly upper) carry t_ij for i before/after j. Its
/// characteristic polynomial agrees with that of the clockwise product of the local
/// monodromies 1 − a_i a′_i on Ψ, so it is invariant under braid mutations.
inline Matrix total_monodromy(const MatrixDiagram& md, const std::vector<std::size_t>& order) {
    const std::size_t dim = md.total_dim();
    auto off = block_offsets(md, order);
    Matrix lower = Matrix::identity(dim), rest(dim, dim);
    for (std::size_t a = 0; a < order.size(); ++a) {
        const std::size_t i = order[a];
        rest.set_block(off[i], off[i], md.mu(i));
        for (std::size_t b = 0; b < order.size(); ++b) {
            if (a == b) continue;
            const std::size_t j = order[b];
            // block (row j, column i) holds t_ij
            if (a < b) lower.set_block(off[j], off[i], md.t(i, j));
            else rest.set_block(off[j], off[i], -md.t(i, j));
        }
    }
    auto inv = lower.inverse();
    return *inv * rest;
}

}  // namespace air
