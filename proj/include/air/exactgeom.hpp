#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "air/rational.hpp"

namespace air {

struct Point {
    Rational x;
    Rational y;

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    friend bool operator<(const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }
    friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator*(const Rational& s, const Point& p) { return {s * p.x, s * p.y}; }
};

inline Rational cross(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }
inline Rational dot(const Point& u, const Point& v) { return u.x * v.x + u.y * v.y; }

/// A nonzero planar direction; equality is up to positive rational scaling.
class Direction {
public:
    Direction(Rational dx, Rational dy) : v_{std::move(dx), std::move(dy)} {
        if (v_.x == 0 && v_.y == 0) fail("ZeroDirection", "direction must be nonzero");
    }
    explicit Direction(const Point& v) : Direction(v.x, v.y) {}

    const Rational& dx() const noexcept { return v_.x; }
    const Rational& dy() const noexcept { return v_.y; }
    const Point& vec() const noexcept { return v_; }

    Direction operator-() const { return Direction(-v_.x, -v_.y); }

    friend bool operator==(const Direction& a, const Direction& b) {
        return cross(a.v_, b.v_) == 0 && dot(a.v_, b.v_) > 0;
    }
    friend bool operator!=(const Direction& a, const Direction& b) { return !(a == b); }

private:
    Point v_;
};

/// Rotation of ζ by +90°: (dx, dy) ↦ (−dy, dx). Orders vacua for the Stokes data.
inline Direction rho(const Direction& zeta) { return Direction(-zeta.dy(), zeta.dx()); }

/// Half-plane index for angular sorting: 0 for angles in [0, π), 1 for [π, 2π).
inline int half_plane(const Point& v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; }

/// Strict "a comes before b" in counterclockwise angle measured from the positive x-axis.
inline bool angle_less(const Point& a, const Point& b) {
    int ha = half_plane(a), hb = half_plane(b);
    if (ha != hb) return ha < hb;
    return cross(a, b) > 0;
}

/// Strict "a before b" in counterclockwise angle measured from `from`.
inline bool angle_less_from(const Point& from, const Point& a, const Point& b) {
    // rotate so that `from` lands on the positive x-axis (scaling is harmless)
    auto rot = [&](const Point& v) { return Point{dot(from, v), cross(from, v)}; };
    return angle_less(rot(a), rot(b));
}

/// Sign of (q − p) × (r − p): +1 for a left (counterclockwise) turn.
inline int orient(const Point& p, const Point& q, const Point& r) { return sign(cross(q - p, r - p)); }

/// Labeled planar points with exact coordinates.
class PointConfig {
public:
    PointConfig() = default;

    void add(const std::string& label, Point p) {
        if (index_.count(label)) fail("DuplicateLabel", "label '" + label + "' appears twice");
        for (std::size_t i = 0; i < points_.size(); ++i)
            if (points_[i] == p) fail("DuplicatePoint", "labels '" + labels_[i] + "' and '" + label + "' coincide");
        index_.emplace(label, labels_.size());
        labels_.push_back(label);
        points_.push_back(std::move(p));
    }

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<Point>& points() const noexcept { return points_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const Point& point(std::size_t i) const { return points_.at(i); }
    const Point& point(const std::string& label) const { return points_[index(label)]; }

    bool contains(const std::string& label) const { return index_.count(label) != 0; }
    std::size_t index(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) fail("UnknownLabel", "no point labeled '" + label + "'");
        return it->second;
    }

    /// Sub-configuration on the given indices, preserving their relative order.
    PointConfig subset(const std::vector<std::size_t>& idx) const {
        PointConfig c;
        std::vector<std::size_t> sorted = idx;
        std::sort(sorted.begin(), sorted.end());
        for (auto i : sorted) c.add(labels_[i], points_[i]);
        return c;
    }

    friend bool operator==(const PointConfig& a, const PointConfig& b) {
        return a.labels_ == b.labels_ && a.points_ == b.points_;
    }

private:
    std::vector<std::string> labels_;
    std::vector<Point> points_;
    std::map<std::string, std::size_t> index_;
};

/// Convex hull vertex indices, counterclockwise from the lexicographically smallest point.
/// Collinear sets give the two extreme points; a single point gives itself.
inline std::vector<std::size_t> convex_hull_indices(const std::vector<Point>& pts) {
    std::vector<std::size_t> idx(pts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
    if (idx.size() <= 1) return idx;
    // Andrew's monotone chain, dropping collinear boundary points
    std::vector<std::size_t> hull;
    for (int pass = 0; pass < 2; ++pass) {
        std::size_t start = hull.size();
        for (std::size_t k = 0; k < idx.size(); ++k) {
            std::size_t i = pass == 0 ? idx[k] : idx[idx.size() - 1 - k];
            while (hull.size() >= start + 2 &&
                   orient(pts[hull[hull.size() - 2]], pts[hull.back()], pts[i]) <= 0)
                hull.pop_back();
            hull.push_back(i);
        }
        hull.pop_back();
    }
    if (hull.size() == 2 && hull[0] == hull[1]) hull.pop_back();
    return hull;
}

inline std::vector<std::string> convex_hull(const PointConfig& config) {
    std::vector<std::string> out;
    for (auto i : convex_hull_indices(config.points())) out.push_back(config.label(i));
    return out;
}

/// Twice the signed area of a polygon given in order.
inline Rational twice_signed_area(const std::vector<Point>& poly) {
    Rational a = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) a += cross(poly[i], poly[(i + 1) % poly.size()]);
    return a;
}

/// Strictly inside the triangle (a, b, c) in either orientation.
inline bool strictly_inside_triangle(const Point& p, const Point& a, const Point& b, const Point& c) {
    int o1 = orient(a, b, p), o2 = orient(b, c, p), o3 = orient(c, a, p);
    return (o1 > 0 && o2 > 0 && o3 > 0) || (o1 < 0 && o2 < 0 && o3 < 0);
}

/// Position of p relative to a counterclockwise convex polygon: +1 inside, 0 on boundary, −1 outside.
inline int locate_in_convex(const Point& p, const std::vector<Point>& ccw) {
    int result = 1;
    for (std::size_t i = 0; i < ccw.size(); ++i) {
        int o = orient(ccw[i], ccw[(i + 1) % ccw.size()], p);
        if (o < 0) return -1;
        if (o == 0) result = 0;
    }
    return result;
}

struct GenericityViolation {
    std::string kind;  // "collinear" or "parallel_to_zeta"
    std::vector<std::string> labels;
};

struct GenericityReport {
    bool ok = true;
    std::vector<GenericityViolation> violations;
};

/// No three points collinear; with ζ, additionally no difference w_j − w_i parallel to ζ
/// and all projections onto ρ(ζ) distinct.
inline GenericityReport check_genericity(const PointConfig& config, const std::optional<Direction>& zeta) {
    GenericityReport rep;
    const auto& p = config.points();
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (orient(p[i], p[j], p[k]) == 0)
                    rep.violations.push_back({"collinear", {config.label(i), config.label(j), config.label(k)}});
    if (zeta) {
        const Point r = rho(*zeta).vec();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                Point d = p[j] - p[i];
                // in the plane, d ∥ ζ exactly when ⟨d, ρ(ζ)⟩ = 0
                if (dot(d, r) == 0)
                    rep.violations.push_back({"parallel_to_zeta", {config.label(i), config.label(j)}});
            }
    }
    rep.ok = rep.violations.empty();
    return rep;
}

inline bool no_three_collinear(const PointConfig& config) {
    const auto& p = config.points();
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            for (std::size_t k = j + 1; k < p.size(); ++k)
                if (orient(p[i], p[j], p[k]) == 0) return false;
    return true;
}

}  // namespace air
