#include "doctest.h"

#include <random>

#include "bsym/errors.hpp"
#include "bsym/lie_algebra.hpp"
#include "bsym/parse.hpp"

using namespace bsym;

namespace {

VectorField VF(const char* s) { return VectorField::parse(s); }

const VectorField kX = VF("1;0;0");
const VectorField kT = VF("0;1;0");

RatMat random_invertible(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> entry(-4, 4);
    for (;;) {
        RatMat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = Rational(entry(rng));
        if (m.inverse()) return m;
    }
}

}  // namespace

TEST_CASE("bracket oracle values") {
    VectorField b12 = VF("t;0;1"), b13 = VF("x;2*t;-u");
    CHECK(bracket(kT, b12) == kX);
    CHECK(bracket(kX, kX).is_zero());
    // the scaling bracket: [T,B13] = 2T while [X,B13] = X
    CHECK(bracket(kT, b13) == kT.scaled(parse_expr("2")));
    CHECK(bracket(kX, b13) == kX);
}

TEST_CASE("structure constants of the log-case algebra") {
    StructureConstants sc = structure_constants({kX, kT, VF("t;0;u")});
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Rational expect(0);
                if (k == 0 && i == 1 && j == 2) expect = 1;   // [T,B3] = X
                if (k == 0 && i == 2 && j == 1) expect = -1;
                CHECK(sc.at(k, i, j) == expect);
            }
}

TEST_CASE("structure constants of translations and of case 5") {
    StructureConstants flat = structure_constants({kX, kT});
    CHECK(flat.at(0, 0, 1) == 0);
    CHECK(flat.at(1, 0, 1) == 0);

    StructureConstants sc = structure_constants({kX, kT, VF("x - t;2*t;1 + u")});
    CHECK(sc.at(0, 0, 2) == 1);   // [X,B5] = X
    CHECK(sc.at(0, 1, 2) == -1);  // [T,B5] = -X + 2T
    CHECK(sc.at(1, 1, 2) == 2);
}

TEST_CASE("non-closed sets and dependent bases are rejected") {
    CHECK_THROWS_AS(structure_constants({kX, VF("t*x;t^2;x - t*u")}), NotClosedError);
    CHECK_THROWS_AS(structure_constants({kX, kX.scaled(parse_expr("2"))}), DependentBasisError);
}

TEST_CASE("change of basis transforms the tensor") {
    StructureConstants sc = structure_constants({kX, kT, VF("x - t;2*t;1 + u")});
    CHECK(change_of_basis(sc, RatMat::identity(3)) == sc);

    // new basis (X, -X+T, B5) straightens the adjoint action
    RatMat m(3, 3);
    m.at(0, 0) = 1;
    m.at(0, 1) = -1;
    m.at(1, 1) = 1;
    m.at(2, 2) = 1;
    StructureConstants diag = change_of_basis(sc, m);
    CHECK(diag.at(0, 0, 2) == 1);  // [e1,e3] = e1
    CHECK(diag.at(1, 0, 2) == 0);
    CHECK(diag.at(1, 1, 2) == 2);  // [e2,e3] = 2e2
    CHECK(diag.at(0, 1, 2) == 0);

    // rescaling e3 -> e3/2 moves the eigenvalue pair to (1/2, 1)
    RatMat half = RatMat::identity(3);
    half.at(2, 2) = Rational(1, 2);
    StructureConstants scaled = change_of_basis(diag, half);
    CHECK(scaled.at(0, 0, 2) == Rational(1, 2));
    CHECK(scaled.at(1, 1, 2) == 1);

    RatMat singular(3, 3);
    CHECK_THROWS_AS(change_of_basis(sc, singular), SingularMatrixError);
}

TEST_CASE("the claimed basis e1=X, e2=X+T, e3=B does not give [e2,e3]=2e2") {
    // direct computation gives [e2,e3] = -e1 + 2e2 in the power case and
    // [e2,e3] = -2e1 + 2e2 in case 5; neither matches the claim
    struct Case {
        const char* extra;
        Rational e1_coeff;
    };
    for (const Case& c : {Case{"x;2*t;-(1/2)*u", Rational(-1)},
                          Case{"x - t;2*t;1 + u", Rational(-2)}}) {
        StructureConstants sc = structure_constants({kX, kT, VF(c.extra)});
        RatMat m = RatMat::identity(3);
        m.at(0, 1) = 1;  // e2 = X + T
        StructureConstants claimed = change_of_basis(sc, m);
        CHECK(claimed.at(0, 0, 2) == 1);  // [e1,e3] = e1 does hold
        CHECK(claimed.at(0, 1, 2) == c.e1_coeff);
        CHECK(claimed.at(1, 1, 2) == Rational(2));
    }
}

TEST_CASE("identification of the catalog algebras") {
    // log case: Heisenberg
    StructureConstants g3 = structure_constants({kX, kT, VF("t;0;u")});
    IdentifyResult r3 = identify(g3);
    CHECK(r3.label.kind == AlgebraLabel::Kind::Heisenberg);
    CHECK(r3.label.str() == "A_{3,1}");
    REQUIRE(r3.witness);
    CHECK(change_of_basis(g3, *r3.witness) == heisenberg_target());

    // power case with symbolic p: A_{3,5}^{1/2}
    StructureConstants g2 = structure_constants({kX, kT, VF("x;2*t;-(1/p)*u")});
    IdentifyResult r2 = identify(g2);
    CHECK(r2.label.kind == AlgebraLabel::Kind::A35);
    CHECK(r2.label.a == Rational(1, 2));
    CHECK(r2.label.str() == "A_{3,5}^{1/2}");
    REQUIRE(r2.witness);
    CHECK(change_of_basis(g2, *r2.witness) == a35_target(Rational(1, 2)));

    // abelian
    StructureConstants zero(3);
    CHECK(identify(zero).label.str() == "abelian(3)");

    // the five-dimensional algebra of g(u) = u
    StructureConstants g1 = structure_constants(
        {kX, kT, VF("t*x;t^2;x - t*u"), VF("t;0;1"), VF("x;2*t;-u")});
    IdentifyResult r1 = identify(g1);
    CHECK(r1.label.kind == AlgebraLabel::Kind::A540);
    REQUIRE(r1.witness);
    CHECK(change_of_basis(g1, *r1.witness) == a540_target());
}

TEST_CASE("the A_{5,40} target tensor is a Lie algebra with sl2 Levi part") {
    StructureConstants target = a540_target();
    target.validate();
    // Killing form of the Levi block has signature (2,1)
    StructureConstants levi(3);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            for (int k = 0; k < 3; ++k) levi.set(k, i, j, target.at(k, i, j));
    levi.validate();
    AlgebraProfile p = algebra_profile(levi);
    CHECK(p.killing_rank == 3);
    CHECK(p.killing_positive == 2);
    CHECK(p.killing_negative == 1);
}

TEST_CASE("identification is invariant under rational basis changes") {
    std::mt19937 rng(2718);
    std::vector<StructureConstants> algebras = {
        structure_constants({kX, kT, VF("t;0;u")}),
        structure_constants({kX, kT, VF("x;2*t;-(1/2)*u")}),
        structure_constants({kX, kT, VF("x - t;2*t;1 + u")}),
        structure_constants({kX, kT, VF("t*x;t^2;x - t*u"), VF("t;0;1"), VF("x;2*t;-u")}),
        StructureConstants(3),
    };
    for (const StructureConstants& sc : algebras) {
        AlgebraLabel reference = identify(sc).label;
        for (int trial = 0; trial < 12; ++trial) {
            StructureConstants moved = change_of_basis(sc, random_invertible(rng, sc.dim()));
            CHECK(identify(moved).label.same_class(reference));
        }
    }
}

TEST_CASE("A35 parameter is canonicalized to 0 < |a| <= 1") {
    // eigenvalues (3, 2) normalize to a = 2/3
    StructureConstants sc(3);
    sc.set(0, 0, 2, Rational(3));
    sc.set(1, 1, 2, Rational(2));
    IdentifyResult r = identify(sc);
    REQUIRE(r.label.kind == AlgebraLabel::Kind::A35);
    CHECK(r.label.a == Rational(2, 3));
    CHECK(change_of_basis(sc, *r.witness) == a35_target(Rational(2, 3)));

    // eigenvalues (1, -1): a = -1 is its own inverse
    StructureConstants m1(3);
    m1.set(0, 0, 2, Rational(1));
    m1.set(1, 1, 2, Rational(-1));
    IdentifyResult rm = identify(m1);
    REQUIRE(rm.label.kind == AlgebraLabel::Kind::A35);
    CHECK(rm.label.a == Rational(-1));

    // a and 1/a name the same algebra: eigenvalues (1, 2) also give 1/2
    StructureConstants inv(3);
    inv.set(0, 0, 2, Rational(1));
    inv.set(1, 1, 2, Rational(2));
    CHECK(identify(inv).label.a == Rational(1, 2));

    // scalar action: a = 1
    StructureConstants eq(3);
    eq.set(0, 0, 2, Rational(5));
    eq.set(1, 1, 2, Rational(5));
    CHECK(identify(eq).label.a == Rational(1));

    // rotation-like action has irrational eigenvalues: unknown
    StructureConstants rot(3);
    rot.set(1, 0, 2, Rational(1));
    rot.set(0, 1, 2, Rational(-1));
    CHECK(identify(rot).label.kind == AlgebraLabel::Kind::Unknown);

    // defective action: unknown
    StructureConstants jordan(3);
    jordan.set(0, 0, 2, Rational(1));
    jordan.set(0, 1, 2, Rational(1));
    jordan.set(1, 1, 2, Rational(1));
    CHECK(identify(jordan).label.kind == AlgebraLabel::Kind::Unknown);
}

TEST_CASE("two-dimensional non-abelian algebra is profiled as unknown") {
    StructureConstants sc(2);
    sc.set(0, 0, 1, Rational(1));  // [e1,e2] = e1
    IdentifyResult r = identify(sc);
    CHECK(r.label.kind == AlgebraLabel::Kind::Unknown);
    CHECK(r.label.profile.derived_series == std::vector<int>{2, 1, 0});
    CHECK(r.label.profile.nilradical_dim == 1);
}

TEST_CASE("serialization") {
    StructureConstants sc = structure_constants({kX, kT, VF("t;0;u")});
    Json j = sc.to_json();
    CHECK(j["dim"] == 3);
    CHECK(j["entries"].size() == 1);
    CHECK(j["entries"][0]["value"] == "1");
    CHECK(sc.str() == "[e2,e3] = e1\n");
}
