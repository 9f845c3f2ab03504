#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "air/homotopy.hpp"
#include "air/infrared.hpp"
#include "air/lefschetz.hpp"

// JSON documents. Rationals travel as strings ("p/q" or "n") so nothing is rounded on the wire.

namespace air::io {

using json = nlohmann::json;

[[noreturn]] inline void parse_error(const std::string& what) { fail("ParseError", what); }

inline json to_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.dump(), 10);
    parse_error("expected a rational string, got " + j.dump());
}

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("IoError", "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        parse_error(path + ": " + e.what());
    }
}

inline std::string dump(const json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

inline json error_json(const std::string& code, const std::string& message) {
    return json{{"error", code}, {"message", message}};
}

/// "dx,dy" as used on the command line.
inline Direction parse_direction(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) parse_error("direction must be 'dx,dy': '" + text + "'");
    return Direction(parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1)));
}

inline std::string direction_string(const Direction& d) { return to_string(d.dx()) + "," + to_string(d.dy()); }

// --- configurations -------------------------------------------------------------------------

inline json points_json(const PointConfig& c) {
    json pts = json::array();
    for (std::size_t i = 0; i < c.size(); ++i)
        pts.push_back({{"label", c.label(i)}, {"x", to_json(c.point(i).x)}, {"y", to_json(c.point(i).y)}});
    return pts;
}

inline json to_json(const PointConfig& c) { return json{{"points", points_json(c)}}; }

inline PointConfig config_from_points(const json& pts) {
    if (!pts.is_array()) parse_error("'points' must be an array");
    PointConfig c;
    for (const auto& p : pts)
        c.add(field(p, "label").get<std::string>(), Point{rational_from_json(field(p, "x")), rational_from_json(field(p, "y"))});
    return c;
}

inline PointConfig config_from_json(const json& j) { return config_from_points(field(j, "points")); }

inline std::vector<std::string> labels_of(const PointConfig& c, const std::vector<std::size_t>& idx) {
    std::vector<std::string> out;
    for (auto i : idx) out.push_back(c.label(i));
    return out;
}

inline std::vector<std::size_t> indices_of(const PointConfig& c, const json& labels) {
    if (!labels.is_array()) parse_error("expected an array of labels");
    std::vector<std::size_t> out;
    for (const auto& l : labels) out.push_back(c.index(l.get<std::string>()));
    return out;
}

// --- subdivisions ---------------------------------------------------------------------------

inline json to_json(const PointConfig& c, const Subdivision& s) {
    json cells = json::array(), marked = json::array();
    bool any_marked = false;
    for (const auto& cell : s.cells) {
        cells.push_back(labels_of(c, cell.vertices));
        marked.push_back(labels_of(c, cell.marked));
        any_marked = any_marked || !cell.marked.empty();
    }
    json j{{"cells", cells}};
    if (any_marked) j["marked"] = marked;
    return j;
}

/// Reads and validates a subdivision of `c`.
inline Subdivision subdivision_from_json(const PointConfig& c, const json& j) {
    const json& cells = field(j, "cells");
    if (!cells.is_array()) parse_error("'cells' must be an array");
    const json* marked = j.contains("marked") ? &j.at("marked") : nullptr;
    if (marked && (!marked->is_array() || marked->size() != cells.size())) parse_error("'marked' must match 'cells'");
    Subdivision s;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        Cell cell = make_cell(c, indices_of(c, cells[k]));
        if (marked) {
            cell.marked = indices_of(c, (*marked)[k]);
            std::sort(cell.marked.begin(), cell.marked.end());
        }
        s.cells.push_back(std::move(cell));
    }
    s = canonicalize(c, std::move(s));
    validate_subdivision(c, s);
    return s;
}

inline json triangulations_json(const PointConfig& c, const std::vector<Triangulation>& ts, bool regular_only) {
    json list = json::array();
    for (const auto& t : ts) list.push_back(to_json(c, t));
    return json{{"config", to_json(c)}, {"regular_only", regular_only}, {"count", ts.size()}, {"triangulations", list}};
}

inline json to_json(const Vector& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(to_json(q));
    return a;
}

inline json to_json(const PointConfig& c, const SecPolytope& sp) {
    json verts = json::array(), edges = json::array();
    for (std::size_t i = 0; i < sp.vertices.size(); ++i) {
        json v = to_json(c, sp.vertices[i]);
        v["id"] = "T" + std::to_string(i);
        v["gkz"] = to_json(sp.gkz[i]);
        verts.push_back(v);
    }
    for (const auto& [a, b] : sp.edges) edges.push_back({a, b});
    return json{{"config", to_json(c)}, {"dim", sp.dim}, {"vertices", verts}, {"edges", edges}};
}

inline SecPolytope secondary_from_json(const PointConfig& c, const json& j) {
    SecPolytope sp;
    sp.dim = field(j, "dim").get<int>();
    for (const auto& v : field(j, "vertices")) {
        sp.vertices.push_back(subdivision_from_json(c, v));
        Vector g;
        for (const auto& q : field(v, "gkz")) g.push_back(rational_from_json(q));
        sp.gkz.push_back(std::move(g));
    }
    for (const auto& e : field(j, "edges")) sp.edges.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
    return sp;
}

// --- matrices and diagrams ------------------------------------------------------------------

inline json to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

/// Reads a rows × cols matrix; a 0 × n matrix is written [], an n × 0 one as n empty rows.
inline Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows) parse_error("expected a matrix with " + std::to_string(rows) + " rows");
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            parse_error("expected a matrix with " + std::to_string(cols) + " columns");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational_from_json(j[r][c]);
    }
    return m;
}

inline std::string pair_key(const PointConfig& c, std::size_t i, std::size_t j) { return c.label(i) + "->" + c.label(j); }

inline std::pair<std::size_t, std::size_t> parse_pair_key(const PointConfig& c, const std::string& key) {
    auto arrow = key.find("->");
    if (arrow == std::string::npos) parse_error("expected 'wi->wj', got '" + key + "'");
    return {c.index(key.substr(0, arrow)), c.index(key.substr(arrow + 2))};
}

inline json to_json(const MatrixDiagram& md) {
    const auto& c = md.config();
    json dims = json::object(), mono = json::object(), tr = json::object();
    for (std::size_t i = 0; i < md.size(); ++i) {
        dims[c.label(i)] = md.dim(i);
        mono[c.label(i)] = to_json(md.mu(i));
        for (std::size_t j = 0; j < md.size(); ++j)
            if (i != j) tr[pair_key(c, i, j)] = to_json(md.t(i, j));
    }
    return json{{"points", points_json(c)}, {"phi_dims", dims}, {"monodromies", mono}, {"transports", tr},
                {"order", labels_of(c, md.order())}};
}

inline MatrixDiagram matrix_diagram_from_json(const json& j) {
    PointConfig c = config_from_points(field(j, "points"));
    const json& dj = field(j, "phi_dims");
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < c.size(); ++i) dims.push_back(field(dj, c.label(i).c_str()).get<std::size_t>());
    MatrixDiagram md(c, dims);
    if (j.contains("monodromies"))
        for (const auto& [label, m] : j.at("monodromies").items()) {
            const std::size_t i = c.index(label);
            md.set_mu(i, matrix_from_json(m, dims[i], dims[i]));
        }
    if (j.contains("transports"))
        for (const auto& [key, m] : j.at("transports").items()) {
            auto [a, b] = parse_pair_key(c, key);
            md.set_t(a, b, matrix_from_json(m, dims[b], dims[a]));
        }
    if (j.contains("order")) md.set_order(indices_of(c, j.at("order")));
    return md;
}

inline json to_json(const GmvDiagram& g) {
    const auto& c = g.config;
    json dims = json::object(), a = json::object(), ap = json::object();
    for (std::size_t i = 0; i < c.size(); ++i) {
        dims[c.label(i)] = g.phi_dims[i];
        a[c.label(i)] = to_json(g.a[i]);
        ap[c.label(i)] = to_json(g.a_prime[i]);
    }
    return json{{"points", points_json(c)}, {"psi_dim", g.psi_dim}, {"phi_dims", dims}, {"a", a}, {"a_prime", ap}};
}

inline GmvDiagram gmv_from_json(const json& j) {
    GmvDiagram g;
    g.config = config_from_points(field(j, "points"));
    g.psi_dim = field(j, "psi_dim").get<std::size_t>();
    const json& dj = field(j, "phi_dims");
    for (std::size_t i = 0; i < g.config.size(); ++i) {
        const char* l = g.config.label(i).c_str();
        g.phi_dims.push_back(field(dj, l).get<std::size_t>());
        g.a.push_back(matrix_from_json(field(field(j, "a"), l), g.psi_dim, g.phi_dims[i]));
        g.a_prime.push_back(matrix_from_json(field(field(j, "a_prime"), l), g.phi_dims[i], g.psi_dim));
    }
    return g;
}

inline bool is_gmv_json(const json& j) { return j.is_object() && j.contains("psi_dim"); }

/// A matrix diagram from either document kind (GMV documents use their label order).
inline MatrixDiagram diagram_from_any(const json& j) {
    if (!is_gmv_json(j)) return matrix_diagram_from_json(j);
    GmvDiagram g = gmv_from_json(j);
    std::vector<std::size_t> order(g.config.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    return gmv_to_matrix_diagram(g, order);
}

// --- infrared -------------------------------------------------------------------------------

inline json to_json(const PointConfig& c, const StokesMatrix& s) {
    json blocks = json::object();
    for (const auto& [ij, m] : s.blocks) blocks[pair_key(c, ij.first, ij.second)] = to_json(m);
    return json{{"zeta", direction_string(s.zeta)}, {"order", labels_of(c, s.order)}, {"blocks", blocks}};
}

inline StokesMatrix stokes_from_json(const MatrixDiagram& md, const json& j) {
    const auto& c = md.config();
    StokesMatrix s;
    s.zeta = parse_direction(field(j, "zeta").get<std::string>());
    s.order = indices_of(c, field(j, "order"));
    for (const auto& [key, m] : field(j, "blocks").items()) {
        auto [a, b] = parse_pair_key(c, key);
        s.blocks.emplace(std::make_pair(a, b), matrix_from_json(m, md.dim(b), md.dim(a)));
    }
    return s;
}

inline json to_json(const PointConfig& c, const std::vector<ConvexPath>& paths, const Direction& zeta) {
    json list = json::array();
    for (const auto& p : paths) list.push_back(labels_of(c, p.vertices));
    return json{{"zeta", direction_string(zeta)}, {"paths", list}};
}

// --- lefschetz ------------------------------------------------------------------------------

inline Superpotential superpotential_from_json(const json& j) {
    const json& arr = j.is_object() ? field(j, "coefficients") : j;
    if (!arr.is_array()) parse_error("W must be an array of rational coefficients (ascending degree)");
    poly::Coeffs c;
    for (const auto& q : arr) c.push_back(rational_from_json(q));
    return Superpotential(std::move(c));
}

// --- homotopy -------------------------------------------------------------------------------

inline json polynomial_json(const std::vector<std::string>& ids, const Polynomial& p) {
    json terms = json::array();
    for (const auto& [mono, coeff] : p) {
        json factors = json::array();
        for (auto g : mono) factors.push_back(ids[g]);
        terms.push_back({{"coefficient", to_json(coeff)}, {"factors", factors}});
    }
    return terms;
}

inline json to_json(const WebCdga& cdga) {
    std::vector<std::string> ids;
    for (const auto& g : cdga.generators) ids.push_back(g.id);
    json gens = json::array();
    for (std::size_t g = 0; g < cdga.generators.size(); ++g)
        gens.push_back({{"id", ids[g]}, {"degree", cdga.generators[g].degree}, {"d", polynomial_json(ids, cdga.differential[g])}});
    return json{{"config", to_json(cdga.config)}, {"generators", gens}};
}

inline json to_json(const AInfAlgebra& alg) {
    json basis = json::array(), products = json::array();
    for (std::size_t b = 0; b < alg.basis.size(); ++b) basis.push_back({{"id", alg.ids[b]}, {"degree", alg.degree[b]}});
    for (const auto& [k, table] : alg.products)
        for (const auto& [in, outs] : table)
            for (const auto& [o, coeff] : outs) {
                json inputs = json::array();
                for (auto x : in) inputs.push_back(alg.ids[x]);
                products.push_back({{"arity", k}, {"inputs", inputs}, {"output", alg.ids[o]}, {"coefficient", to_json(coeff)}});
            }
    return json{{"config", to_json(alg.config)}, {"eta", direction_string(alg.eta)}, {"M", to_json(alg.m)},
                {"basis", basis}, {"products", products}};
}

}  // namespace air::io
