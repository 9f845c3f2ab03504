#include <gtest/gtest.h>

#include "air/secondary.hpp"
#include "air/testing/oracles.hpp"
#include "air/testing/random.hpp"
#include "support.hpp"

using namespace air;
using air::test::expect_error;
using air::test::make_config;

namespace {

// w1 w2 on the bottom edge, w3 w4 on the top edge
PointConfig unit_square() { return make_config({{"w1", "0", "0"}, {"w2", "1", "0"}, {"w3", "0", "1"}, {"w4", "1", "1"}}); }

PointConfig pentagon() {
    return make_config({{"w1", "0", "0"}, {"w2", "2", "0"}, {"w3", "3", "2"}, {"w4", "1", "3"}, {"w5", "-1", "2"}});
}

bool has_edge(const Subdivision& s, std::size_t a, std::size_t b) {
    for (const auto& c : s.cells) {
        const auto& v = c.vertices;
        for (std::size_t k = 0; k < v.size(); ++k) {
            auto x = v[k], y = v[(k + 1) % v.size()];
            if ((x == a && y == b) || (x == b && y == a)) return true;
        }
    }
    return false;
}

}  // namespace

TEST(LiftSubdivision, SquareFoldsAlongTheLowDiagonal) {
    auto sq = unit_square();
    auto t = lift_subdivision(sq, {1, 0, 0, 1});
    ASSERT_TRUE(t.is_triangulation());
    EXPECT_EQ(t.cells.size(), 2u);
    EXPECT_TRUE(has_edge(t, 1, 2));
    EXPECT_FALSE(has_edge(t, 0, 3));
    EXPECT_EQ(gkz_vector(sq, t), (Vector{1, 2, 2, 1}));

    auto u = lift_subdivision(sq, {0, 1, 1, 0});
    EXPECT_TRUE(has_edge(u, 0, 3));
    EXPECT_EQ(gkz_vector(sq, u), (Vector{2, 1, 1, 2}));
}

TEST(LiftSubdivision, FlatHeightsGiveOneCell) {
    auto sq = unit_square();
    auto s = lift_subdivision(sq, {0, 0, 0, 0});
    ASSERT_EQ(s.cells.size(), 1u);
    EXPECT_EQ(s.cells[0].vertices.size(), 4u);
    EXPECT_FALSE(s.is_triangulation());
}

TEST(SecondaryPolytope, SquareIsASegment) {
    auto sp = secondary_polytope(unit_square());
    EXPECT_EQ(sp.vertices.size(), 2u);
    EXPECT_EQ(sp.dim, 1);
    EXPECT_EQ(sp.edges.size(), 1u);
}

TEST(SecondaryPolytope, TriangleWithInteriorPointHasTwoVertices) {
    auto c = make_config({{"a", "0", "0"}, {"b", "3", "0"}, {"c", "0", "3"}, {"d", "1", "1"}});
    auto sp = secondary_polytope(c);
    ASSERT_EQ(sp.vertices.size(), 2u);
    EXPECT_EQ(sp.dim, 1);
    std::set<std::size_t> cell_counts;
    for (const auto& t : sp.vertices) cell_counts.insert(t.cells.size());
    EXPECT_EQ(cell_counts, (std::set<std::size_t>{1, 3}));
    // the unused interior point gets GKZ coordinate zero
    for (std::size_t v = 0; v < 2; ++v)
        if (sp.vertices[v].cells.size() == 1) {
            EXPECT_EQ(sp.gkz[v][3], 0);
        }
}

TEST(SecondaryPolytope, PentagonIsAPentagon) {
    auto sp = secondary_polytope(pentagon());
    EXPECT_EQ(sp.vertices.size(), 5u);
    EXPECT_EQ(sp.dim, 2);
    EXPECT_EQ(sp.edges.size(), 5u);
    // GKZ coordinates sum to (d + 1) · Vol
    for (const auto& g : sp.gkz) {
        Rational s;
        for (const auto& q : g) s += q;
        Rational s0;
        for (const auto& q : sp.gkz[0]) s0 += q;
        EXPECT_EQ(s, s0);
    }
}

TEST(SecondaryPolytope, MatchesBruteForceOracle) {
    air::testing::Random rng(7);
    for (int inst = 0; inst < 8; ++inst) {
        auto c = rng.config(static_cast<std::size_t>(rng.integer(4, 6)), 5, 1);
        auto all = enumerate_triangulations(c, false);
        EXPECT_EQ(all, air::testing::brute_force_triangulations(c)) << "instance " << inst;
    }
}

TEST(EnumerateTriangulations, SeedDoesNotChangeTheResult) {
    auto c = pentagon();
    auto a = enumerate_triangulations(c, false, 0);
    for (std::uint64_t seed : {1u, 17u, 12345u}) EXPECT_EQ(enumerate_triangulations(c, false, seed), a);
}

TEST(EnumerateTriangulations, RejectsDegenerateInput) {
    auto line = make_config({{"a", "0", "0"}, {"b", "1", "1"}, {"c", "2", "2"}});
    expect_error("DegenerateConfig", [&] { enumerate_triangulations(line, false); });
}

TEST(Flip, ExchangesTheSquareDiagonal) {
    auto sq = unit_square();
    auto t = lift_subdivision(sq, {1, 0, 0, 1});
    auto f = flip(sq, t, 1, 2);
    EXPECT_EQ(f, lift_subdivision(sq, {0, 1, 1, 0}));
    EXPECT_EQ(flip(sq, f, 0, 3), t);
}

TEST(Flip, BoundaryEdgeIsNotFlippable) {
    auto sq = unit_square();
    auto t = lift_subdivision(sq, {1, 0, 0, 1});
    expect_error("NotFlippable", [&] { flip(sq, t, 0, 1); });
}

TEST(Flip, NonConvexQuadrilateralIsNotFlippable) {
    auto c = make_config({{"a", "0", "0"}, {"b", "3", "0"}, {"c", "0", "3"}, {"d", "1", "1"}});
    auto t = make_triangulation(c, {{{0, 1, 3}}, {{1, 2, 3}}, {{0, 2, 3}}});
    expect_error("NotFlippable", [&] { flip(c, t, 0, 3); });
}

TEST(Regularity, LiftedSubdivisionsAreRegularWithWitness) {
    auto c = pentagon();
    std::vector<Rational> h{0, 1, 0, 0, 0};
    auto sub = lift_subdivision(c, h);
    auto reg = is_regular(c, sub);
    ASSERT_TRUE(reg.regular);
    ASSERT_TRUE(reg.witness);
    EXPECT_EQ(lift_subdivision(c, *reg.witness), sub);
}

TEST(Regularity, MotherOfAllExamplesHasANonRegularTriangulation) {
    // two nested triangles; the "twisted" triangulations are not regular
    auto c = make_config({{"a", "0", "0"}, {"b", "4", "0"}, {"c", "0", "4"}, {"d", "1", "1"}, {"e", "2", "1"}, {"f", "1", "2"}});
    auto all = enumerate_triangulations(c, false);
    auto reg = enumerate_triangulations(c, true);
    EXPECT_LT(reg.size(), all.size());
    for (const auto& t : reg) EXPECT_TRUE(is_regular(c, t).regular);
}

TEST(FaceFactorization, PentagonSplitByADiagonal) {
    auto c = pentagon();
    auto sub = lift_subdivision(c, {0, 1, 0, 0, 0});
    ASSERT_EQ(sub.cells.size(), 2u);
    auto f = face_factorization(c, sub);
    EXPECT_EQ(f.factors.size(), 2u);
    EXPECT_EQ(f.refinements.size(), 2u);
    EXPECT_EQ(f.product_of_vertex_counts, 2u);
    EXPECT_TRUE(f.bijective);
    for (const auto& t : f.refinements) EXPECT_TRUE(refines(t, sub));
}

TEST(FaceLattice, SquareFacesCarryTheirSubdivisions) {
    auto fl = secondary_face_lattice(unit_square());
    ASSERT_EQ(fl.lattice.faces.size(), fl.subdivisions.size());
    // the whole segment is the trivial subdivision, its endpoints the triangulations
    EXPECT_EQ(fl.subdivisions[0].cells.size(), 1u);
    for (std::size_t f = 0; f < fl.lattice.faces.size(); ++f)
        if (fl.lattice.faces[f].dim == 0) {
            EXPECT_TRUE(fl.subdivisions[f].is_triangulation());
        }
}

TEST(FaceLattice, RejectsLargeConfigurations) {
    auto c = air::testing::Random(3).config(7);
    expect_error("FaceLatticeUnavailable", [&] { secondary_face_lattice(c); });
}
