#include "doctest.h"

#include "bsym/errors.hpp"
#include "bsym/parse.hpp"
#include "bsym/vector_field.hpp"
#include "test_support.hpp"

using namespace bsym;

namespace {

const Expr kBurgersF = parse_expr("nu*u_xx - u_t - g*u_x");

}  // namespace

TEST_CASE("translations prolong trivially") {
    ProlongedField X = prolong2(VectorField::parse("1;0;0"));
    CHECK(X.eta1_x.is_zero());
    CHECK(X.eta1_t.is_zero());
    CHECK(X.eta2_xx.is_zero());
    CHECK(X.eta2_xt.is_zero());
    CHECK(X.eta2_tt.is_zero());
    CHECK(apply(X, kBurgersF).is_zero());
    CHECK(apply(prolong2(VectorField::parse("0;1;0")), kBurgersF).is_zero());
}

TEST_CASE("galilean field B_12 = t dx + du") {
    ProlongedField pf = prolong2(VectorField::parse("t;0;1"));
    CHECK(pf.eta1_x.is_zero());
    CHECK(pf.eta1_t == parse_expr("-u_x"));
}

TEST_CASE("scaling field B_13 = x dx + 2t dt - u du") {
    ProlongedField pf = prolong2(VectorField::parse("x;2*t;-u"));
    CHECK(pf.eta1_x == parse_expr("-2*u_x"));
    CHECK(pf.eta1_t == parse_expr("-3*u_t"));
    CHECK(pf.eta2_xx == parse_expr("-3*u_xx"));
}

TEST_CASE("prolongation is linear in the field") {
    std::mt19937 rng(41);
    std::vector<Atom> pool = {atoms::x(), atoms::t(), atoms::u()};
    for (int i = 0; i < 15; ++i) {
        VectorField v(testing::random_poly(rng, pool), testing::random_poly(rng, pool),
                      testing::random_poly(rng, pool));
        VectorField w(testing::random_poly(rng, pool), testing::random_poly(rng, pool),
                      testing::random_poly(rng, pool));
        Expr a = parse_expr("3"), b = parse_expr("-5/2");
        ProlongedField lhs = prolong2(v.scaled(a) + w.scaled(b));
        ProlongedField pv = prolong2(v), pw = prolong2(w);
        CHECK(lhs.eta1_x == a * pv.eta1_x + b * pw.eta1_x);
        CHECK(lhs.eta1_t == a * pv.eta1_t + b * pw.eta1_t);
        CHECK(lhs.eta2_xx == a * pv.eta2_xx + b * pw.eta2_xx);
        CHECK(lhs.eta2_xt == a * pv.eta2_xt + b * pw.eta2_xt);
        CHECK(lhs.eta2_tt == a * pv.eta2_tt + b * pw.eta2_tt);
    }
}

TEST_CASE("constant-coefficient fields have vanishing jet coefficients") {
    ProlongedField pf = prolong2(VectorField::parse("2;-3;1/2"));
    CHECK(pf.eta1_x.is_zero());
    CHECK(pf.eta1_t.is_zero());
    CHECK(pf.eta2_xx.is_zero());
}

TEST_CASE("second-order coefficients are symmetric in the index pair") {
    std::mt19937 rng(42);
    std::vector<Atom> pool = {atoms::x(), atoms::t(), atoms::u()};
    for (int i = 0; i < 10; ++i) {
        VectorField v(testing::random_poly(rng, pool), testing::random_poly(rng, pool),
                      testing::random_poly(rng, pool));
        ProlongedField pf = prolong2(v);
        // the (t, x) evaluation of the recursion must agree with the stored (x, t)
        Expr eta2_tx = total_derivative(pf.eta1_t, Coordinate::X) -
                       total_derivative(v.xi, Coordinate::X) * Expr(atoms::u_xt()) -
                       total_derivative(v.phi, Coordinate::X) * Expr(atoms::u_tt());
        CHECK(pf.eta2_xt == eta2_tx);
    }
}

TEST_CASE("apply rejects jet order above two") {
    Expr third(Atom::make_jet(3, 0));
    CHECK_THROWS_AS(apply(prolong2(VectorField::parse("1;0;0")), third), JetOrderError);
}

TEST_CASE("vector fields validate and round trip") {
    CHECK_THROWS_AS(VectorField(parse_expr("u_x"), Expr::zero(), Expr::zero()),
                    InvariantViolationError);
    VectorField b5 = VectorField::parse("x - t; 2*t; 1 + u");
    CHECK(VectorField::parse(b5.str()) == b5);
    CHECK(b5.latex() == "(x - t)\\frac{\\partial}{\\partial x}+2 t\\frac{\\partial}{\\partial t}+"
                        "(u + 1)\\frac{\\partial}{\\partial u}");
}
