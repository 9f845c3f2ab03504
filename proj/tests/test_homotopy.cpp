#include <gtest/gtest.h>

#include "air/homotopy.hpp"
#include "air/testing/random.hpp"
#include "support.hpp"

using namespace air;
using air::test::expect_error;
using air::test::make_config;

namespace {

PointConfig unit_square() { return make_config({{"w1", "0", "0"}, {"w2", "1", "0"}, {"w3", "0", "1"}, {"w4", "1", "1"}}); }

PointConfig pentagon() {
    return make_config({{"w1", "0", "0"}, {"w2", "2", "0"}, {"w3", "3", "2"}, {"w4", "1", "3"}, {"w5", "-1", "2"}});
}

int total_degree(const Monomial& m, const std::vector<int>& deg) {
    int d = 0;
    for (auto g : m) d += deg[g];
    return d;
}

}  // namespace

TEST(PolyhedralChainComplex, SegmentBoundaryIsDifferenceOfEndpoints) {
    auto cc = polyhedral_chain_complex(unit_square());
    ASSERT_EQ(cc.by_degree.at(0).size(), 2u);
    ASSERT_EQ(cc.by_degree.at(1).size(), 1u);
    const Matrix& d1 = cc.boundary.at(1);
    ASSERT_EQ(d1.rows(), 2u);
    ASSERT_EQ(d1.cols(), 1u);
    EXPECT_EQ(d1(0, 0) + d1(1, 0), 0);
    EXPECT_EQ(abs(d1(0, 0)), 1);
}

TEST(PolyhedralChainComplex, PentagonHasElevenCellsAndSquareZeroBoundary) {
    auto cc = polyhedral_chain_complex(pentagon());
    EXPECT_EQ(cc.by_degree.at(0).size(), 5u);
    EXPECT_EQ(cc.by_degree.at(1).size(), 5u);
    EXPECT_EQ(cc.by_degree.at(2).size(), 1u);
    EXPECT_TRUE(cc.boundary_squares_to_zero());
    const Matrix& d2 = cc.boundary.at(2);
    for (std::size_t r = 0; r < d2.rows(); ++r) EXPECT_EQ(abs(d2(r, 0)), 1);
}

TEST(PolyhedralChainComplex, RandomConfigurationsSatisfyBoundarySquaredZero) {
    air::testing::Random rng(11);
    for (int inst = 0; inst < 4; ++inst)
        EXPECT_TRUE(polyhedral_chain_complex(rng.config(static_cast<std::size_t>(rng.integer(4, 6)))).boundary_squares_to_zero());
}

TEST(SupercommutativeProduct, KoszulSignsAndOddSquares) {
    std::vector<int> deg{1, 1, 2};
    auto ab = supercommutative_product({0}, {1}, deg);
    auto ba = supercommutative_product({1}, {0}, deg);
    ASSERT_TRUE(ab && ba);
    EXPECT_EQ(ab->second, ba->second);
    EXPECT_EQ(ab->first, -ba->first);
    EXPECT_FALSE(supercommutative_product({0}, {0}, deg));
    auto cc = supercommutative_product({2}, {2}, deg);
    ASSERT_TRUE(cc);
    EXPECT_EQ(cc->first, 1);
}

TEST(WebCdga, TwoPointsGiveOneClosedGenerator) {
    auto cdga = build_web_cdga(make_config({{"w1", "0", "0"}, {"w2", "1", "0"}}));
    ASSERT_EQ(cdga.generators.size(), 1u);
    EXPECT_EQ(cdga.generators[0].id, "{w1,w2}");
    EXPECT_EQ(cdga.generators[0].degree, 0);
    EXPECT_TRUE(cdga.differential[0].empty());
}

TEST(WebCdga, SquareTopGeneratorBoundsTheTwoTriangulations) {
    auto cdga = build_web_cdga(unit_square());
    EXPECT_EQ(cdga.generators.size(), 6u + 4u + 1u);
    const std::size_t top = cdga.find({0, 1, 2, 3});
    ASSERT_LT(top, cdga.generators.size());
    EXPECT_EQ(cdga.generators[top].degree, 1);
    const auto& d = cdga.differential[top];
    ASSERT_EQ(d.size(), 2u);
    Rational sum;
    for (const auto& [mono, c] : d) {
        EXPECT_EQ(mono.size(), 2u);  // one generator per triangle
        EXPECT_EQ(abs(c), 1);
        sum += c;
    }
    EXPECT_EQ(sum, 0);
}

TEST(WebCdga, InteriorPointGivesALinearTerm) {
    auto c = make_config({{"a", "0", "0"}, {"b", "3", "0"}, {"c", "0", "3"}, {"d", "1", "1"}});
    auto cdga = build_web_cdga(c);
    const auto& d = cdga.differential[cdga.find({0, 1, 2, 3})];
    ASSERT_EQ(d.size(), 2u);
    std::set<std::size_t> lengths;
    for (const auto& [mono, coeff] : d) lengths.insert(mono.size());
    // the triangulation that omits d is the single cell {a,b,c}; the other has three triangles
    EXPECT_EQ(lengths, (std::set<std::size_t>{1, 3}));
}

TEST(WebCdga, DegreesAndHomogeneity) {
    air::testing::Random rng(5);
    auto cdga = build_web_cdga(rng.config(5));
    auto deg = cdga.degrees();
    for (std::size_t g = 0; g < cdga.generators.size(); ++g) {
        const auto& gen = cdga.generators[g];
        EXPECT_EQ(gen.degree, std::max(0, static_cast<int>(gen.subset.size()) - 3)) << gen.id;
        for (const auto& [mono, c] : cdga.differential[g]) EXPECT_EQ(total_degree(mono, deg), gen.degree - 1) << gen.id;
    }
    EXPECT_TRUE(check_d_squared(cdga).ok);
}

TEST(WebCdga, CorruptedSignIsReported) {
    auto cdga = build_web_cdga(pentagon());
    const std::size_t top = cdga.find({0, 1, 2, 3, 4});
    ASSERT_EQ(cdga.generators[top].degree, 2);
    auto& d = cdga.differential[top];
    ASSERT_FALSE(d.empty());
    d.begin()->second = -d.begin()->second;
    auto rep = check_d_squared(cdga);
    EXPECT_FALSE(rep.ok);
    EXPECT_NE(std::find(rep.failing_generators.begin(), rep.failing_generators.end(), top), rep.failing_generators.end());
}

TEST(WebCdga, RejectsDegenerateOrLargeConfigurations) {
    expect_error("DegenerateConfig", [] {
        build_web_cdga(make_config({{"a", "0", "0"}, {"b", "1", "1"}, {"c", "2", "2"}}));
    });
    auto big = air::testing::Random(2).config(7);
    EXPECT_THROW(build_web_cdga(big), Error);
}

TEST(ExtendedTriangulations, TwoPointsGiveASingleTriangle) {
    auto c = make_config({{"w1", "0", "0"}, {"w2", "1", "0"}});
    auto ext = extended_triangulations(c, Direction(0, 1));
    ASSERT_EQ(ext.triangulations.size(), 1u);
    EXPECT_EQ(ext.config.labels().back(), kInfinityLabel);
    EXPECT_EQ(ext.triangulations[0].infinite_cells.size(), 1u);
}

TEST(ExtendedTriangulations, FarPointInsideHullIsUnstable) {
    auto c = make_config({{"w1", "-1", "-1"}, {"w2", "2", "-1"}, {"w3", "-1", "2"}});
    expect_error("UnstableM", [&] { extended_triangulations(c, Direction(0, 1), Rational(0)); });
    expect_error("UnstableM", [&] { extended_triangulations(c, Direction(0, 1), Rational(1, 2)); });
}

TEST(ExtendedTriangulations, AutomaticBoundIsStableUnderDoubling) {
    air::testing::Random rng(9);
    auto c = rng.config(4);
    auto eta = rng.generic_direction(c);
    auto a = extended_triangulations(c, eta);
    EXPECT_GE(a.m, infinity_stability_bound(c, eta));
    auto b = extended_triangulations(c, eta, Rational(2 * a.m));
    EXPECT_EQ(a.triangulations.size(), b.triangulations.size());
    for (std::size_t k = 0; k < a.triangulations.size(); ++k)
        EXPECT_EQ(a.triangulations[k].triangulation, b.triangulations[k].triangulation);
}

TEST(ExtendedTriangulations, EtaParallelToADifferenceIsRejected) {
    auto c = make_config({{"w1", "0", "0"}, {"w2", "1", "0"}, {"w3", "0", "1"}});
    expect_error("NonGenericEta", [&] { extended_triangulations(c, Direction(1, 0)); });
}

TEST(AInfinity, ThreePointsHaveANonzeroBinaryProduct) {
    auto c = make_config({{"w1", "0", "0"}, {"w2", "2", "1"}, {"w3", "1", "-3"}});
    auto alg = build_ainf(c, Direction(1, 5));
    ASSERT_TRUE(alg.products.count(2));
    bool nonzero = false;
    for (const auto& [in, outs] : alg.products.at(2))
        for (const auto& [o, coeff] : outs) nonzero = nonzero || coeff != 0;
    EXPECT_TRUE(nonzero);
    EXPECT_TRUE(check_stasheff(alg, 4).ok);
    EXPECT_EQ(alg.ids[alg.find({0, 1})], "{w1,w2}+inf");
}

TEST(AInfinity, DegreeBookkeeping) {
    air::testing::Random rng(13);
    auto c = rng.config(4);
    auto alg = build_ainf(c, rng.generic_direction(c));
    for (std::size_t b = 0; b < alg.basis.size(); ++b)
        EXPECT_EQ(alg.degree[b], static_cast<int>(alg.basis[b].size()) - 2);
    for (const auto& [k, table] : alg.products)
        for (const auto& [in, outs] : table)
            for (const auto& [o, coeff] : outs) {
                int d = 0;
                for (auto x : in) d += alg.degree[x];
                EXPECT_EQ(d, alg.degree[o] - 1);
            }
}

TEST(AInfinity, CorruptedProductBreaksStasheff) {
    air::testing::Random rng(21);
    auto c = rng.config(4);
    auto alg = build_ainf(c, rng.generic_direction(c));
    ASSERT_TRUE(check_stasheff(alg, 4).ok);
    bool detected = false;
    for (auto& [in, outs] : alg.products.at(2)) {
        for (auto& [o, coeff] : outs) {
            if (coeff == 0 || alg.basis[o].size() != 3) continue;
            coeff = -coeff;
            auto rep = check_stasheff(alg, 4);
            coeff = -coeff;
            if (!rep.ok) {
                detected = true;
                ASSERT_FALSE(rep.failures.empty());
                EXPECT_EQ(alg.basis[rep.failures[0].output].size(), 4u);
                EXPECT_NE(rep.failures[0].value, 0);
            }
        }
    }
    EXPECT_TRUE(detected);
}

TEST(AInfinity, ArityBeyondTheTruncationIsRejected) {
    auto c = make_config({{"w1", "0", "0"}, {"w2", "1", "0"}});
    auto alg = build_ainf(c, Direction(1, 1), 3);
    expect_error("ArityTooLarge", [&] { check_stasheff(alg, 4); });
}
