#include <gtest/gtest.h>

#include "air/perv.hpp"
#include "air/testing/random.hpp"
#include "support.hpp"

using namespace air;
using air::test::cfg3b;
using air::test::expect_error;
using air::test::M;

namespace {

/// Ψ = ℚ², Φ_1 = Φ_2 = ℚ, Φ_3 = 0.
GmvDiagram sample_gmv() {
    GmvDiagram g;
    g.config = cfg3b();
    g.psi_dim = 2;
    g.phi_dims = {1, 1, 0};
    g.a = {M(2, 1, {"1", "0"}), M(2, 1, {"0", "1"}), Matrix(2, 0)};
    g.a_prime = {M(1, 2, {"1/2", "1"}), M(1, 2, {"1", "1/2"}), Matrix(0, 2)};
    return g;
}

MatrixDiagram scalar_diagram() {
    MatrixDiagram md(cfg3b(), {1, 1, 1});
    md.set_mu(0, Matrix::scalar(-1));
    md.set_mu(1, Matrix::scalar(-1));
    md.set_mu(2, Matrix::scalar(2));
    const char* t[3][3] = {{nullptr, "1", "1/2"}, {"-1", nullptr, "2"}, {"3", "-1/3", nullptr}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i != j) md.set_t(i, j, Matrix::scalar(air::test::Q(t[i][j])));
    return md;
}

}  // namespace

TEST(Gmv, ValidationReportsDeterminants) {
    auto rep = validate_gmv(sample_gmv());
    EXPECT_TRUE(rep.valid);
    ASSERT_EQ(rep.labels.size(), 3u);
    EXPECT_EQ(rep.labels[0].det_psi, Rational(1, 2));
    EXPECT_EQ(rep.labels[0].det_phi, Rational(1, 2));
    EXPECT_EQ(rep.labels[2].det_psi, 1);

    auto bad = sample_gmv();
    bad.a_prime[0] = M(1, 2, {"1", "0"});  // a′a = 1
    auto r = validate_gmv(bad);
    EXPECT_FALSE(r.valid);
    EXPECT_EQ(r.labels[0].det_phi, 0);
    expect_error("InvalidGmv", [&] { gmv_to_matrix_diagram(bad, {0, 1, 2}); });

    auto shape = sample_gmv();
    shape.a[1] = Matrix(1, 1);
    expect_error("ShapeMismatch", [&] { validate_gmv(shape); });
}

TEST(Gmv, ToMatrixDiagram) {
    auto md = gmv_to_matrix_diagram(sample_gmv(), {0, 1, 2});
    EXPECT_EQ(md.mu(0), Matrix::scalar(Rational(1, 2)));
    EXPECT_EQ(md.mu(1), Matrix::scalar(Rational(1, 2)));
    EXPECT_EQ(md.t(0, 1), Matrix::scalar(1));  // a′_2 a_1
    EXPECT_EQ(md.t(1, 0), Matrix::scalar(1));  // a′_1 a_2
    EXPECT_EQ(md.t(0, 2).rows(), 0u);
    EXPECT_EQ(md.t(0, 0), Matrix::identity(1) - md.mu(0));
}

TEST(MatrixDiagram, ShapesAndOrderAreValidated) {
    MatrixDiagram md(cfg3b(), {1, 2, 0});
    expect_error("ShapeMismatch", [&] { md.set_t(0, 1, Matrix(1, 1)); });
    expect_error("ShapeMismatch", [&] { md.set_mu(1, Matrix::identity(1)); });
    expect_error("ShapeMismatch", [&] { md.set_t(0, 0, Matrix(1, 1)); });
    expect_error("BadOrder", [&] { md.set_order({0, 0, 1}); });
    expect_error("BadOrder", [&] { md.set_order({0, 1}); });
    EXPECT_EQ(md.t(0, 1), Matrix::zero(2, 1));
    EXPECT_EQ(md.total_dim(), 3u);
}

TEST(Transport, StraightAndSingleDetours) {
    auto md = scalar_diagram();
    EXPECT_EQ(transport(md, {0, 1, {Move::straight(0, 1)}}), md.t(0, 1));
    // right of w3: t12 − t32 t13 = 1 − (−1/3)(1/2) = 7/6
    EXPECT_EQ(move_transport(md, Move::detour(0, 1, 2, Side::Right)), Matrix::scalar(Rational(7, 6)));
    // left of w3: t12 + t32 μ3⁻¹ t13 = 1 + (−1/3)(1/2)(1/2) = 11/12
    EXPECT_EQ(move_transport(md, Move::detour(0, 1, 2, Side::Left)), Matrix::scalar(Rational(11, 12)));
}

TEST(Transport, LeftThenRightAroundTheSamePointCancels) {
    air::testing::Random rng(31);
    for (int inst = 0; inst < 20; ++inst) {
        auto md = rng.diagram(rng.config(3), 2);
        Move lr{0, 1, {{2, Side::Left}, {2, Side::Right}}};
        Move rl{0, 1, {{2, Side::Right}, {2, Side::Left}}};
        EXPECT_EQ(move_transport(md, lr), md.t(0, 1));
        EXPECT_EQ(move_transport(md, rl), md.t(0, 1));
    }
}

TEST(Transport, CompositionOfMoves) {
    auto md = scalar_diagram();
    PathWord p{0, 2, {Move::straight(0, 1), Move::straight(1, 2)}};
    EXPECT_EQ(transport(md, p), md.t(1, 2) * md.t(0, 1));
}

TEST(Transport, MalformedPathsAreRejected) {
    auto md = scalar_diagram();
    expect_error("MalformedPath", [&] { transport(md, {0, 1, {}}); });
    expect_error("MalformedPath", [&] { transport(md, {0, 2, {Move::straight(1, 2)}}); });
    expect_error("MalformedPath", [&] { transport(md, {0, 2, {Move::straight(0, 1)}}); });
    expect_error("MalformedPath", [&] { transport(md, {0, 1, {Move::detour(0, 1, 1, Side::Left)}}); });
    expect_error("MalformedPath", [&] { transport(md, {0, 0, {Move::straight(0, 0)}}); });

    PointConfig line;
    line.add("a", {0, 0});
    line.add("b", {1, 0});
    line.add("c", {2, 0});
    MatrixDiagram ml(line, {1, 1, 1});
    expect_error("MalformedPath", [&] { transport(ml, {0, 2, {Move::straight(0, 2)}}); });
    EXPECT_NO_THROW(transport(ml, {0, 2, {Move::detour(0, 2, 1, Side::Right)}}));
}

TEST(Transport, SingularMonodromyOnTheLeft) {
    auto md = scalar_diagram();
    md.set_mu(2, Matrix::scalar(0));
    expect_error("SingularMonodromy", [&] { move_transport(md, Move::detour(0, 1, 2, Side::Left)); });
    EXPECT_NO_THROW(move_transport(md, Move::detour(0, 1, 2, Side::Right)));
}

TEST(Braid, InverseGeneratorUndoesTheMove) {
    air::testing::Random rng(41);
    for (int inst = 0; inst < 25; ++inst) {
        auto md = rng.diagram(rng.config(4), 2);
        for (std::size_t k = 1; k < 4; ++k) {
            EXPECT_EQ(braid_mutate(braid_mutate(md, {k, false}), {k, true}), md);
            EXPECT_EQ(braid_mutate(braid_mutate(md, {k, true}), {k, false}), md);
        }
    }
}

TEST(Braid, BraidAndFarCommutationRelations) {
    air::testing::Random rng(43);
    for (int inst = 0; inst < 25; ++inst) {
        auto md = rng.diagram(rng.config(4), 2);
        for (bool inv : {false, true}) {
            auto a = braid_mutate(braid_mutate(braid_mutate(md, {1, inv}), {2, inv}), {1, inv});
            auto b = braid_mutate(braid_mutate(braid_mutate(md, {2, inv}), {1, inv}), {2, inv});
            EXPECT_EQ(a, b);
            EXPECT_EQ(braid_mutate(braid_mutate(md, {1, inv}), {3, inv}), braid_mutate(braid_mutate(md, {3, inv}), {1, inv}));
        }
    }
}

TEST(Braid, TotalMonodromyCharacteristicPolynomialIsInvariant) {
    air::testing::Random rng(47);
    for (int inst = 0; inst < 25; ++inst) {
        auto md = rng.diagram(rng.config(3), 2);
        auto cp = total_monodromy(md, md.order()).characteristic_polynomial();
        for (std::size_t k = 1; k < 3; ++k)
            for (bool inv : {false, true}) {
                auto m = braid_mutate(md, {k, inv});
                EXPECT_EQ(total_monodromy(m, m.order()).characteristic_polynomial(), cp);
            }
    }
}

TEST(Braid, OrderIsSwappedAndIndexChecked) {
    auto md = scalar_diagram();
    EXPECT_EQ(braid_mutate(md, {2, false}).order(), (std::vector<std::size_t>{0, 2, 1}));
    expect_error("BadGenerator", [&] { braid_mutate(md, {0, false}); });
    expect_error("BadGenerator", [&] { braid_mutate(md, {3, false}); });
}

TEST(TotalMonodromy, MatchesTheProductOfLocalMonodromiesOnPsi) {
    auto g = sample_gmv();
    auto md = gmv_to_matrix_diagram(g, {0, 1, 2});
    auto total = total_monodromy(md, md.order());
    Matrix t1 = Matrix::identity(2) - g.a[0] * g.a_prime[0];
    Matrix t2 = Matrix::identity(2) - g.a[1] * g.a_prime[1];
    EXPECT_EQ(total.characteristic_polynomial(), (t1 * t2).characteristic_polynomial());
}
