#include <gtest/gtest.h>

#include "air/io.hpp"
#include "air/svg.hpp"
#include "air/testing/random.hpp"
#include "support.hpp"

using namespace air;
using air::test::cfg3b;
using air::test::expect_error;
using nlohmann::json;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
    return n;
}

}  // namespace

TEST(Json, RationalsAcceptStringsAndIntegers) {
    EXPECT_EQ(io::rational_from_json(json("3/4")), Rational(3, 4));
    EXPECT_EQ(io::rational_from_json(json(-2)), Rational(-2));
    EXPECT_EQ(io::to_json(Rational(-7, 3)), json("-7/3"));
    expect_error("ParseError", [] { io::rational_from_json(json::array()); });
}

TEST(Json, DirectionsParseAndPrint) {
    EXPECT_EQ(io::parse_direction("1,-2"), Direction(1, -2));
    EXPECT_EQ(io::parse_direction("1/2, 3"), Direction(1, 6));
    EXPECT_EQ(io::direction_string(Direction(Rational(1, 2), 3)), "1/2,3");
    expect_error("ParseError", [] { io::parse_direction("1"); });
    expect_error("ZeroDirection", [] { io::parse_direction("0,0"); });
}

TEST(Json, ConfigRoundTrip) {
    auto c = air::testing::Random(1).config(5, 10, 3);
    EXPECT_EQ(io::config_from_json(io::to_json(c)), c);
    expect_error("ParseError", [] { io::config_from_json(json::object()); });
    expect_error("DuplicateLabel", [] {
        io::config_from_json(json::parse(R"({"points":[{"label":"a","x":0,"y":0},{"label":"a","x":1,"y":0}]})"));
    });
}

TEST(Json, SubdivisionRoundTripWithMarkedPoints) {
    auto c = air::test::make_config({{"a", "0", "0"}, {"b", "2", "0"}, {"c", "0", "2"}, {"d", "2", "2"}, {"e", "1", "3/4"}});
    for (const auto& t : enumerate_triangulations(c, false)) EXPECT_EQ(io::subdivision_from_json(c, io::to_json(c, t)), t);
    Subdivision marked;
    marked.cells.push_back(make_cell(c, {0, 1, 3, 2}));
    marked.cells[0].marked = {4};
    marked = canonicalize(c, marked);
    auto j = io::to_json(c, marked);
    ASSERT_TRUE(j.contains("marked"));
    EXPECT_EQ(io::subdivision_from_json(c, j), marked);
    expect_error("InvalidSubdivision", [&] { io::subdivision_from_json(c, json::parse(R"({"cells":[["a","b","c"]]})")); });
}

TEST(Json, SecondaryPolytopeRoundTrip) {
    auto c = air::test::make_config({{"w1", "0", "0"}, {"w2", "2", "0"}, {"w3", "3", "2"}, {"w4", "1", "3"}, {"w5", "-1", "2"}});
    auto sp = secondary_polytope(c);
    auto back = io::secondary_from_json(c, io::to_json(c, sp));
    EXPECT_EQ(back.vertices, sp.vertices);
    EXPECT_EQ(back.gkz, sp.gkz);
    EXPECT_EQ(back.edges, sp.edges);
    EXPECT_EQ(back.dim, sp.dim);
}

TEST(Json, MatrixShapes) {
    auto m = air::test::M(2, 3, {"1", "-1/2", "0", "3", "4", "5/7"});
    EXPECT_EQ(io::matrix_from_json(io::to_json(m), 2, 3), m);
    EXPECT_EQ(io::to_json(Matrix(0, 3)), json::array());
    EXPECT_EQ(io::matrix_from_json(io::to_json(Matrix(0, 3)), 0, 3), Matrix(0, 3));
    EXPECT_EQ(io::matrix_from_json(io::to_json(Matrix(2, 0)), 2, 0), Matrix(2, 0));
    expect_error("ParseError", [&] { io::matrix_from_json(io::to_json(m), 3, 2); });
}

TEST(Json, MatrixDiagramRoundTrip) {
    air::testing::Random rng(2);
    for (int inst = 0; inst < 5; ++inst) {
        auto md = rng.diagram(rng.config(4), 2);
        md.set_order({2, 0, 3, 1});
        EXPECT_EQ(io::matrix_diagram_from_json(io::to_json(md)), md);
    }
}

TEST(Json, GmvRoundTripAndConversion) {
    auto j = io::read_file(std::string(AIR_DATA_DIR) + "/gmv.json");
    auto g = io::gmv_from_json(j);
    EXPECT_EQ(g.psi_dim, 2u);
    EXPECT_EQ(io::to_json(g), io::to_json(io::gmv_from_json(io::to_json(g))));
    auto md = io::diagram_from_any(j);
    EXPECT_EQ(md, gmv_to_matrix_diagram(g, {0, 1, 2}));
}

TEST(Json, SampleDiagramLoads) {
    auto md = io::diagram_from_any(io::read_file(std::string(AIR_DATA_DIR) + "/md.json"));
    EXPECT_EQ(md.config(), cfg3b());
    EXPECT_EQ(md.mu(2), Matrix::scalar(2));
    EXPECT_EQ(md.t(2, 1), Matrix::scalar(Rational(-1, 3)));
}

TEST(Json, StokesRoundTrip) {
    auto md = io::diagram_from_any(io::read_file(std::string(AIR_DATA_DIR) + "/md.json"));
    auto s = stokes_matrix(md, Direction(0, 1));
    auto back = io::stokes_from_json(md, io::to_json(md.config(), s));
    EXPECT_EQ(back, s);
    EXPECT_EQ(back.zeta, s.zeta);
}

TEST(Json, SuperpotentialForms) {
    auto a = io::superpotential_from_json(json::parse(R"(["0", "-1", "0", "1/3"])"));
    auto b = io::superpotential_from_json(json::parse(R"({"coefficients": [0, -1, 0, "1/3"]})"));
    EXPECT_EQ(a.coefficients(), b.coefficients());
    expect_error("ParseError", [] { io::superpotential_from_json(json("x")); });
}

TEST(Json, FileErrors) {
    expect_error("IoError", [] { io::read_file("/nonexistent/air.json"); });
}

TEST(Json, SerializationIsDeterministic) {
    air::testing::Random rng(4);
    auto c = rng.config(5);
    EXPECT_EQ(io::dump(io::to_json(c, secondary_polytope(c)), false), io::dump(io::to_json(c, secondary_polytope(c)), false));
    EXPECT_EQ(io::dump(io::to_json(build_web_cdga(c)), false), io::dump(io::to_json(build_web_cdga(c)), false));
}

TEST(Svg, SinglePointIsOneCircle) {
    PointConfig c;
    c.add("w1", {0, 0});
    auto svg = render_svg(Scene{c, {}, std::nullopt, {}});
    EXPECT_EQ(count(svg, "<circle"), 1u);
    EXPECT_EQ(count(svg, "<polygon"), 0u);
    EXPECT_NE(svg.find(">w1</text>"), std::string::npos);
}

TEST(Svg, OverlaysAndDeterminism) {
    auto c = cfg3b();
    auto paths = enumerate_convex_paths(c, Direction(0, 1), 1, 0);
    Scene s{c, {HullOverlay{}, paths[0], StokesRaysOverlay{}}, std::nullopt, {}};
    auto svg = render_svg(s);
    EXPECT_EQ(count(svg, "<polyline"), 1u);
    EXPECT_EQ(count(svg, "<line"), 6u);
    EXPECT_EQ(count(svg, "<circle"), 3u);
    EXPECT_EQ(svg, render_svg(s));
}

TEST(Svg, YAxisPointsUp) {
    PointConfig c;
    c.add("low", {0, 0});
    c.add("high", {0, 10});
    auto svg = render_svg(Scene{c, {}, Viewport{-1, -1, 1, 11}, {}});
    EXPECT_NE(svg.find("cx=\"1.000000\" cy=\"11.000000\""), std::string::npos);
    EXPECT_NE(svg.find("cx=\"1.000000\" cy=\"1.000000\""), std::string::npos);
}

TEST(Svg, Errors) {
    expect_error("EmptyScene", [] { render_svg(Scene{}); });
    auto c = cfg3b();
    expect_error("InvalidScene", [&] { render_svg(Scene{c, {ConvexPath{Direction(1, 0), {0, 7}}}, std::nullopt, {}}); });
    expect_error("InvalidScene", [&] { render_svg(Scene{c, {}, Viewport{0, 0, 0, 1}, {}}); });
}
