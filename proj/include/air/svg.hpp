#pragma once

#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "air/infrared.hpp"
#include "air/secondary.hpp"

namespace air {

struct HullOverlay {};
struct StokesRaysOverlay {};

using Overlay = std::variant<Subdivision, ConvexPath, HullOverlay, StokesRaysOverlay>;

struct Viewport {
    Rational min_x, min_y, max_x, max_y;
};

/// What to draw: a configuration plus overlays. The viewport defaults to the bounding box of
/// the points with a margin; `style` overrides stroke/fill colours by overlay kind.
struct Scene {
    PointConfig config;
    std::vector<Overlay> overlays;
    std::optional<Viewport> viewport;
    std::map<std::string, std::string> style;
};

namespace detail {

inline Viewport default_viewport(const PointConfig& c) {
    Viewport v{c.point(0).x, c.point(0).y, c.point(0).x, c.point(0).y};
    for (const auto& p : c.points()) {
        v.min_x = std::min(v.min_x, p.x);
        v.max_x = std::max(v.max_x, p.x);
        v.min_y = std::min(v.min_y, p.y);
        v.max_y = std::max(v.max_y, p.y);
    }
    Rational pad = std::max(Rational(v.max_x - v.min_x), Rational(v.max_y - v.min_y)) / 10;
    if (pad == 0) pad = 1;
    v.min_x -= pad;
    v.min_y -= pad;
    v.max_x += pad;
    v.max_y += pad;
    return v;
}

inline std::string style_or(const Scene& s, const std::string& key, const std::string& fallback) {
    auto it = s.style.find(key);
    return it == s.style.end() ? fallback : it->second;
}

inline std::string xml_escape(const std::string& in) {
    std::string out;
    for (char c : in) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace detail

/// Deterministic SVG 1.1: coordinates are exact rationals printed with 6 fractional digits,
/// y flipped so that the picture is upright, attributes in alphabetical order.
inline std::string render_svg(const Scene& scene) {
    const auto& c = scene.config;
    if (c.empty()) fail("EmptyScene", "nothing to render");
    for (const auto& o : scene.overlays) {
        auto check = [&](const std::vector<std::size_t>& idx) {
            for (auto i : idx)
                if (i >= c.size()) fail("InvalidScene", "overlay references an unknown point");
        };
        if (auto* s = std::get_if<Subdivision>(&o))
            for (const auto& cell : s->cells) check(cell.support());
        if (auto* p = std::get_if<ConvexPath>(&o)) check(p->vertices);
    }
    const Viewport v = scene.viewport ? *scene.viewport : detail::default_viewport(c);
    const Rational w = v.max_x - v.min_x, h = v.max_y - v.min_y;
    if (w <= 0 || h <= 0) fail("InvalidScene", "viewport has no area");
    auto num = [](const Rational& q) { return to_decimal(q, 6); };
    auto X = [&](const Rational& x) { return num(x - v.min_x); };
    auto Y = [&](const Rational& y) { return num(v.max_y - y); };
    auto coords = [&](const std::vector<std::size_t>& idx) {
        std::string s;
        for (std::size_t k = 0; k < idx.size(); ++k)
            s += (k ? " " : "") + X(c.point(idx[k]).x) + "," + Y(c.point(idx[k]).y);
        return s;
    };
    const Rational unit = std::max(w, h) / 200;
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg height=\"" << num(h) << "\" version=\"1.1\" viewBox=\"0 0 " << num(w) << " " << num(h)
        << "\" width=\"" << num(w) << "\" xmlns=\"http://www.w3.org/2000/svg\">\n";
    for (const auto& o : scene.overlays) {
        if (auto* s = std::get_if<Subdivision>(&o)) {
            for (const auto& cell : s->cells)
                out << "<polygon fill=\"" << detail::style_or(scene, "cell_fill", "none") << "\" points=\""
                    << coords(cell.vertices) << "\" stroke=\"" << detail::style_or(scene, "cell_stroke", "#4060a0")
                    << "\" stroke-width=\"" << num(unit / 2) << "\"/>\n";
        } else if (auto* p = std::get_if<ConvexPath>(&o)) {
            out << "<polyline fill=\"none\" points=\"" << coords(p->vertices) << "\" stroke=\""
                << detail::style_or(scene, "path_stroke", "#c03020") << "\" stroke-width=\"" << num(unit) << "\"/>\n";
        } else if (std::holds_alternative<HullOverlay>(o)) {
            out << "<polygon fill=\"none\" points=\"" << coords(convex_hull_indices(c.points())) << "\" stroke=\""
                << detail::style_or(scene, "hull_stroke", "#202020") << "\" stroke-dasharray=\"" << num(2 * unit)
                << "\" stroke-width=\"" << num(unit / 2) << "\"/>\n";
        } else {
            // one short segment per Stokes ray, drawn from the centre of the viewport
            const Rational cx = (v.min_x + v.max_x) / 2, cy = (v.min_y + v.max_y) / 2;
            for (const auto& r : stokes_rays(c)) {
                const Rational len = std::max(abs(r.dx()), abs(r.dy()));
                const Rational sx = cx + r.dx() / len * w / 4, sy = cy + r.dy() / len * h / 4;
                out << "<line stroke=\"" << detail::style_or(scene, "ray_stroke", "#909090") << "\" stroke-width=\""
                    << num(unit / 4) << "\" x1=\"" << X(cx) << "\" x2=\"" << X(sx) << "\" y1=\"" << Y(cy)
                    << "\" y2=\"" << Y(sy) << "\"/>\n";
            }
        }
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
        out << "<circle cx=\"" << X(c.point(i).x) << "\" cy=\"" << Y(c.point(i).y) << "\" fill=\""
            << detail::style_or(scene, "point_fill", "#000000") << "\" r=\"" << num(2 * unit) << "\"/>\n";
        out << "<text font-size=\"" << num(6 * unit) << "\" x=\"" << num(c.point(i).x - v.min_x + 3 * unit) << "\" y=\""
            << num(v.max_y - c.point(i).y - 3 * unit) << "\">" << detail::xml_escape(c.label(i)) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace air
