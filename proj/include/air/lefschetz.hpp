#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/complex128.hpp>

#include "air/perv.hpp"

// Floating point is confined to this header; everything it exports is exact.

namespace air {

using boost::multiprecision::complex128;
using boost::multiprecision::float128;
using cplx = std::complex<double>;

// ---------------------------------------------------------------------------------------------
// Exact univariate polynomials (coefficients ascending)

namespace poly {

using Coeffs = std::vector<Rational>;

inline void trim(Coeffs& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Coeffs derivative(const Coeffs& p) {
    Coeffs d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
    trim(d);
    return d;
}

inline Coeffs remainder(Coeffs a, const Coeffs& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rational f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
        a.pop_back();
        trim(a);
    }
    return a;
}

inline Coeffs gcd(Coeffs a, Coeffs b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Coeffs r = remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline int degree(const Coeffs& p) { return static_cast<int>(p.size()) - 1; }

}  // namespace poly

/// A univariate polynomial W with exact coefficients (ascending degree).
class Superpotential {
public:
    explicit Superpotential(poly::Coeffs c) : c_(std::move(c)) {
        poly::trim(c_);
        if (c_.size() < 3) fail("BadSuperpotential", "W must have degree at least 2");
        for (const auto& q : c_) {
            cd_.push_back(q.get_d());
            c128_.push_back(float128(q.get_num().get_str()) / float128(q.get_den().get_str()));
        }
    }

    const poly::Coeffs& coefficients() const noexcept { return c_; }
    int degree() const noexcept { return poly::degree(c_); }

    template <class T, class C>
    static T eval(const std::vector<C>& c, const T& x, int order) {
        // order-th derivative by Horner
        T acc = T(0);
        for (std::size_t k = c.size(); k-- > static_cast<std::size_t>(order);) {
            C f = c[k];
            for (int r = 0; r < order; ++r) f *= static_cast<C>(static_cast<double>(k - r));
            acc = acc * x + T(f);
        }
        return acc;
    }

    cplx operator()(cplx x, int order = 0) const { return eval(cd_, x, order); }
    complex128 eval128(const complex128& x, int order = 0) const { return eval(c128_, x, order); }

    /// W′ has no repeated root (exact).
    bool is_morse() const {
        auto d1 = poly::derivative(c_);
        return poly::degree(poly::gcd(d1, poly::derivative(d1))) == 0;
    }

private:
    poly::Coeffs c_;
    std::vector<double> cd_;
    std::vector<float128> c128_;
};

/// Roots of the polynomial with the given complex coefficients (ascending) via the eigenvalues
/// of its companion matrix, polished by Newton's method.
inline std::vector<cplx> polynomial_roots(const std::vector<cplx>& c) {
    const std::size_t n = c.size() - 1;
    if (n == 0) return {};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 1; i < n; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < n; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -c[i] / c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<cplx> roots;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        cplx x = es.eigenvalues()[i];
        for (int it = 0; it < 20; ++it) {
            cplx f = 0, df = 0;
            for (std::size_t k = c.size(); k-- > 0;) {
                df = df * x + f;
                f = f * x + c[k];
            }
            if (df == cplx(0)) break;
            cplx dx = f / df;
            x -= dx;
            if (std::abs(dx) <= 1e-16 * (1 + std::abs(x))) break;
        }
        roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

// ---------------------------------------------------------------------------------------------
// Critical data

struct CriticalData {
    std::vector<complex128> points;  // z_i, sorted like `values`
    std::vector<complex128> values;  // w_i = W(z_i), sorted lexicographically by (Re, Im)
    std::vector<double> residuals;   // |W′(z_i)| after refinement
};

inline CriticalData critical_data(const Superpotential& w) {
    if (!w.is_morse()) fail("NotMorse", "W' has a repeated root");
    auto d1 = poly::derivative(w.coefficients());
    std::vector<cplx> c;
    for (const auto& q : d1) c.push_back(q.get_d());
    auto approx = polynomial_roots(c);
    struct Entry {
        complex128 z, v;
        double res;
    };
    std::vector<Entry> es;
    for (auto a : approx) {
        complex128 z(a.real(), a.imag());
        for (int it = 0; it < 60; ++it) {
            complex128 dz = w.eval128(z, 1) / w.eval128(z, 2);
            z -= dz;
            if (abs(dz) <= float128(1e-33) * (1 + abs(z))) break;
        }
        es.push_back({z, w.eval128(z, 0), static_cast<double>(abs(w.eval128(z, 1)))});
    }
    std::sort(es.begin(), es.end(), [](const Entry& a, const Entry& b) {
        return a.v.real() != b.v.real() ? a.v.real() < b.v.real() : a.v.imag() < b.v.imag();
    });
    CriticalData out;
    for (std::size_t i = 0; i < es.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (abs(es[i].z - es[j].z) < float128(1e-20)) fail("NotMorse", "critical points did not separate");
        for (std::size_t j = 0; j < i; ++j)
            if (abs(es[i].v - es[j].v) < float128(1e-20))
                fail("CriticalValueCollision", "two critical points share a critical value");
        out.points.push_back(es[i].z);
        out.values.push_back(es[i].v);
        out.residuals.push_back(es[i].res);
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Fibers and root tracking

/// The fiber W⁻¹(base) with its separation radius (half the minimum root distance).
struct FiberBasis {
    cplx base;
    std::vector<cplx> roots;
    double separation = 0;
};

inline double separation_radius(const std::vector<cplx>& r) {
    double s = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) s = std::min(s, std::abs(r[i] - r[j]));
    return s / 2;
}

inline FiberBasis fiber_basis(const Superpotential& w, cplx base) {
    std::vector<cplx> c;
    for (const auto& q : w.coefficients()) c.push_back(q.get_d());
    c[0] -= base;
    FiberBasis f{base, polynomial_roots(c), 0};
    f.separation = separation_radius(f.roots);
    return f;
}

struct TrackOptions {
    double max_step = 0.05;  // largest step in the W-plane
    double margin = 1e-10;   // minimal distance of the path from any critical value
    double min_step = 1e-13;
};

namespace detail {

inline double segment_distance(cplx a, cplx b, cplx p) {
    cplx d = b - a;
    double len2 = std::norm(d);
    double t = len2 == 0 ? 0 : std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(a + t * d - p);
}

}  // namespace detail

/// Continues every root of W(x) = c₀ along the polyline c₀, c₁, … (Euler predictor, Newton
/// corrector, step halving). Returns the end positions of the given start roots.
inline std::vector<cplx> track_roots(const Superpotential& w, const std::vector<cplx>& path,
                                     std::vector<cplx> roots, const std::vector<cplx>& critical_values,
                                     const TrackOptions& opt = {}) {
    if (path.empty()) fail("MalformedPath", "empty polyline");
    for (std::size_t s = 0; s + 1 < path.size() || s == 0; ++s) {
        cplx a = path[s], b = path.size() > 1 ? path[s + 1] : path[s];
        for (auto cv : critical_values)
            if (detail::segment_distance(a, b, cv) < opt.margin)
                fail("PathTooClose", "tracking path passes within the margin of a critical value");
        if (path.size() == 1) break;
    }
    for (std::size_t s = 0; s + 1 < path.size(); ++s) {
        const cplx c0 = path[s], c1 = path[s + 1];
        const double len = std::abs(c1 - c0);
        if (len == 0) continue;
        double t = 0, h = std::min(1.0, opt.max_step / len);
        cplx cur = c0;
        while (t < 1) {
            h = std::min(h, 1 - t);
            const cplx next = c0 + (t + h) * (c1 - c0);
            const cplx dc = next - cur;
            const double sep = roots.size() > 1 ? separation_radius(roots) : 1.0;
            std::vector<cplx> moved(roots.size());
            bool ok = true;
            for (std::size_t r = 0; r < roots.size() && ok; ++r) {
                const cplx pred = roots[r] + dc / w(roots[r], 1);
                cplx y = pred;
                bool converged = false;
                double last = std::numeric_limits<double>::infinity();
                for (int it = 0; it < 8; ++it) {
                    cplx dy = (w(y, 0) - next) / w(y, 1);
                    y -= dy;
                    double m = std::abs(dy);
                    if (m > last) break;  // not contracting
                    last = m;
                    if (m <= 1e-14 * (1 + std::abs(y))) {
                        converged = true;
                        break;
                    }
                }
                if (!converged || std::abs(y - pred) > sep / 4 || std::abs(y - roots[r]) > sep / 2) ok = false;
                moved[r] = y;
            }
            if (ok && roots.size() > 1 && separation_radius(moved) < sep / 2) ok = false;
            if (ok) {
                roots = std::move(moved);
                cur = next;
                t += h;
                h = std::min(2 * h, opt.max_step / len);
            } else {
                h /= 2;
                if (h * len < opt.min_step * (1 + std::abs(cur))) fail("StepUnderflow", "root tracking step underflow");
            }
        }
    }
    return roots;
}

/// Index of the root of `f` nearest to x, required to be unambiguous.
inline std::size_t match_root(const FiberBasis& f, cplx x) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < f.roots.size(); ++i)
        if (std::abs(f.roots[i] - x) < std::abs(f.roots[best] - x)) best = i;
    if (f.roots.size() > 1 && std::abs(f.roots[best] - x) > f.separation / 2)
        fail("TrackingFailure", "tracked root does not match a fiber root");
    return best;
}

/// Tracks all roots of `basis` along `path` and matches them against the fiber at the end:
/// perm[i] = index (in the end fiber, sorted) of the continuation of basis root i.
inline std::vector<std::size_t> track_fiber(const Superpotential& w, const std::vector<cplx>& path,
                                            const FiberBasis& basis, const std::vector<cplx>& critical_values,
                                            const TrackOptions& opt = {}) {
    auto end = track_roots(w, path, basis.roots, critical_values, opt);
    auto target = fiber_basis(w, path.back());
    std::vector<std::size_t> perm;
    for (auto x : end) perm.push_back(match_root(target, x));
    auto s = perm;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) fail("TrackingFailure", "root matching is not a bijection");
    return perm;
}

// ---------------------------------------------------------------------------------------------
// Vanishing classes

/// The 0-sphere [p] − [q] in the fiber over `base`, as root positions.
struct VanishingClass {
    cplx base;
    cplx p, q;
};

/// ⟨[p]−[q], [r]−[s]⟩ = δ_pr + δ_qs − δ_ps − δ_qr on root indices.
inline int sphere_pairing(std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
    return (p == r) + (q == s) - (p == s) - (q == r);
}

inline std::vector<cplx> to_cplx(const std::vector<complex128>& v) {
    std::vector<cplx> out;
    for (const auto& z : v) out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    return out;
}

/// Radius of the disc around w_i used to seed its vanishing class.
inline double seed_radius(const std::vector<cplx>& values, std::size_t i) {
    double d = 1.0;
    for (std::size_t j = 0; j < values.size(); ++j)
        if (j != i) d = std::min(d, std::abs(values[i] - values[j]));
    return 1e-3 * d;
}

/// Vanishing class of the critical point z_i at b = w_i + ε·u (|u| = 1): the two roots
/// x ≈ z_i ± s with s = √(2/W″(z_i)) · √ε · e^{iθ/2}, θ = Arg u ∈ (−π, π]; p takes the + sign.
inline VanishingClass vanishing_class(const Superpotential& w, const CriticalData& cd, std::size_t i, cplx u,
                                      double eps) {
    const cplx z(static_cast<double>(cd.points[i].real()), static_cast<double>(cd.points[i].imag()));
    const cplx wi(static_cast<double>(cd.values[i].real()), static_cast<double>(cd.values[i].imag()));
    for (int attempt = 0; attempt < 6; ++attempt, eps *= 1e-2) {
        const cplx base = wi + eps * u;
        const cplx s = std::sqrt(2.0 / w(z, 2)) * std::sqrt(eps) * std::polar(1.0, std::arg(u) / 2);
        auto f = fiber_basis(w, base);
        auto nearest = [&](cplx x) {
            std::size_t b = 0;
            for (std::size_t k = 1; k < f.roots.size(); ++k)
                if (std::abs(f.roots[k] - x) < std::abs(f.roots[b] - x)) b = k;
            return b;
        };
        const std::size_t ip = nearest(z + s), iq = nearest(z - s);
        if (ip != iq && std::abs(f.roots[ip] - (z + s)) < std::abs(s) / 4 && std::abs(f.roots[iq] - (z - s)) < std::abs(s) / 4)
            return {base, f.roots[ip], f.roots[iq]};
    }
    fail("SnapFailure", "vanishing pair is ambiguous");
}

/// Transports a vanishing class along a polyline starting at its base.
inline VanishingClass transport_class(const Superpotential& w, const VanishingClass& v, std::vector<cplx> path,
                                      const std::vector<cplx>& critical_values, const TrackOptions& opt = {}) {
    path.insert(path.begin(), v.base);
    auto end = track_roots(w, path, {v.p, v.q}, critical_values, opt);
    return {path.back(), end[0], end[1]};
}

/// Pairing of two classes over the same base point.
inline int class_pairing(const Superpotential& w, const VanishingClass& a, const VanishingClass& b) {
    if (std::abs(a.base - b.base) > 1e-12 * (1 + std::abs(a.base))) throw std::logic_error("pairing over different fibers");
    auto f = fiber_basis(w, a.base);
    return sphere_pairing(match_root(f, a.p), match_root(f, a.q), match_root(f, b.p), match_root(f, b.q));
}

/// Closed polygonal circle of the given radius, counterclockwise, starting at center + radius·u.
inline std::vector<cplx> circle_path(cplx center, double radius, cplx u, int segments = 64) {
    std::vector<cplx> out;
    for (int k = 0; k <= segments; ++k) out.push_back(center + radius * u * std::polar(1.0, 2 * M_PI * k / segments));
    return out;
}

// ---------------------------------------------------------------------------------------------
// Matrix diagram of W

/// A snapped coordinate: exact when a fraction with denominator ≤ 10⁶ is within 10⁻²⁵,
/// otherwise the nearest multiple of 2⁻⁴⁸ with the error recorded.
struct Snap {
    Rational value;
    bool exact = false;
    double error = 0;
};

inline Snap snap_coordinate(const float128& x) {
    // continued fraction convergents of x
    float128 r = x;
    long long h0 = 1, h1 = 0, k0 = 0, k1 = 1;  // h_{-1}, h_{-2}, ...
    for (int it = 0; it < 64; ++it) {
        float128 a = floor(r);
        long long ai = static_cast<long long>(a);
        long long h = ai * h0 + h1, k = ai * k0 + k1;
        if (k > 1000000) break;
        h1 = h0; h0 = h; k1 = k0; k0 = k;
        float128 err = abs(x - float128(h) / float128(k));
        if (err < float128(1e-25)) return {Rational(mpz_class(std::to_string(h), 10), mpz_class(std::to_string(k), 10)), true, static_cast<double>(err)};
        float128 frac = r - a;
        if (frac == 0) break;
        r = 1 / frac;
    }
    const float128 scale = ldexp(float128(1), 48);
    float128 n = round(x * scale);
    std::string digits = n.str(0, std::ios_base::fixed);
    digits = digits.substr(0, digits.find('.'));
    mpz_class num(digits, 10);
    Rational q(num, mpz_class(1) << 48);
    q.canonicalize();
    return {q, false, static_cast<double>(abs(x - n / scale))};
}

struct LefschetzDiagram {
    MatrixDiagram diagram;
    CriticalData critical;
    std::vector<Snap> snapped_re, snapped_im;
    double max_snap_error = 0;
};

/// Matrix diagram of W: points are the snapped critical values labelled w1, w2, … in
/// lexicographic order, Φ_i is spanned by the vanishing 0-sphere at w_i, t_ij pairs the
/// vanishing classes of w_i and w_j transported straight to the midpoint of [w_i, w_j], and
/// μ_i is read off from a small counterclockwise loop around w_i.
inline LefschetzDiagram matrix_diagram_from_W(const Superpotential& w, const TrackOptions& opt = {}) {
    LefschetzDiagram out;
    out.critical = critical_data(w);
    const auto& cd = out.critical;
    const std::size_t n = cd.values.size();
    const auto values = to_cplx(cd.values);
    PointConfig config;
    for (std::size_t i = 0; i < n; ++i) {
        out.snapped_re.push_back(snap_coordinate(cd.values[i].real()));
        out.snapped_im.push_back(snap_coordinate(cd.values[i].imag()));
        out.max_snap_error = std::max({out.max_snap_error, out.snapped_re.back().error, out.snapped_im.back().error});
        config.add("w" + std::to_string(i + 1), Point{out.snapped_re.back().value, out.snapped_im.back().value});
    }
    if (!no_three_collinear(config)) fail("CollinearCriticalValues", "three critical values are collinear");
    MatrixDiagram md(config, std::vector<std::size_t>(n, 1));
    for (std::size_t i = 0; i < n; ++i) {
        const double eps = seed_radius(values, i);
        auto v = vanishing_class(w, cd, i, 1.0, eps);
        auto loop = circle_path(values[i], std::abs(v.base - values[i]), 1.0);
        auto back = transport_class(w, v, std::vector<cplx>(loop.begin() + 1, loop.end()), values, opt);
        const int self = class_pairing(w, back, v);  // ⟨μδ, δ⟩ = 2μ
        if (self % 2 != 0) fail("SnapFailure", "local monodromy is not ±1");
        md.set_mu(i, Matrix::scalar(self / 2));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const cplx u = (values[j] - values[i]) / std::abs(values[j] - values[i]);
            const cplx mid = (values[i] + values[j]) / 2.0;
            auto vi = transport_class(w, vanishing_class(w, cd, i, u, seed_radius(values, i)), {mid}, values, opt);
            auto vj = transport_class(w, vanishing_class(w, cd, j, -u, seed_radius(values, j)), {mid}, values, opt);
            md.set_t(i, j, Matrix::scalar(class_pairing(w, vi, vj)));
        }
    out.diagram = std::move(md);
    return out;
}

// ---------------------------------------------------------------------------------------------
// Monodromy at infinity

inline bool is_single_cycle(const std::vector<std::size_t>& perm) {
    if (perm.empty()) return false;
    std::size_t at = 0, len = 0;
    do {
        at = perm[at];
        ++len;
    } while (at != 0 && len <= perm.size());
    return len == perm.size();
}

inline std::vector<std::size_t> compose(const std::vector<std::size_t>& second, const std::vector<std::size_t>& first) {
    std::vector<std::size_t> out(first.size());
    for (std::size_t i = 0; i < first.size(); ++i) out[i] = second[first[i]];
    return out;
}

struct TotalMonodromyReport {
    std::vector<std::size_t> big_circle;  // permutation of the fiber over the basepoint
    std::vector<std::size_t> spider;      // composition of the local loops
    bool single_cycle = false;
    bool agrees = false;
};

/// Spider basepoint below all critical values.
inline cplx spider_basepoint(const std::vector<cplx>& values) {
    cplx c = 0;
    double r = 0;
    for (auto v : values) c += v;
    c /= static_cast<double>(values.size());
    for (auto v : values) r = std::max(r, std::abs(v - c));
    return c + cplx(0.01234567 * (r + 1), -2 * r - 1);
}

/// Loop from `b` straight towards w_i, once counterclockwise around it, and back.
inline std::vector<cplx> spider_loop(cplx b, cplx wi, double radius) {
    const cplx u = (b - wi) / std::abs(b - wi);
    std::vector<cplx> path{b};
    for (auto x : circle_path(wi, radius, u)) path.push_back(x);
    path.push_back(b);
    return path;
}

/// Local loops sorted by the angle of w_i − b (counterclockwise).
inline std::vector<std::size_t> spider_order_from(cplx b, const std::vector<cplx>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::arg(values[x] - b) < std::arg(values[y] - b);
    });
    return order;
}

inline TotalMonodromyReport total_monodromy_check(const Superpotential& w, const TrackOptions& opt = {}) {
    auto cd = critical_data(w);
    auto values = to_cplx(cd.values);
    const cplx b = spider_basepoint(values);
    cplx c = 0;
    for (auto v : values) c += v;
    c /= static_cast<double>(values.size());
    auto basis = fiber_basis(w, b);
    TotalMonodromyReport rep;
    rep.big_circle = track_fiber(w, circle_path(c, std::abs(b - c), (b - c) / std::abs(b - c), 256), basis, values, opt);
    rep.spider.resize(basis.roots.size());
    std::iota(rep.spider.begin(), rep.spider.end(), std::size_t{0});
    for (auto i : spider_order_from(b, values)) {
        auto loop = track_fiber(w, spider_loop(b, values[i], seed_radius(values, i)), basis, values, opt);
        rep.spider = compose(loop, rep.spider);
    }
    rep.single_cycle = is_single_cycle(rep.big_circle);
    rep.agrees = rep.big_circle == rep.spider;
    return rep;
}

}  // namespace air
