#include "doctest.h"

#include <cmath>
#include <random>

#include "bsym/errors.hpp"
#include "bsym/numlab.hpp"
#include "bsym/parse.hpp"
#include "test_support.hpp"

using namespace bsym;

namespace {

VectorField VF(const char* s) { return VectorField::parse(s); }

Grid periodic_grid(int nx, int nt, double t_final) {
    Grid g;
    g.x_min = 0.0;
    g.x_max = 2.0 * M_PI;
    g.nx = nx;
    g.nt = nt;
    g.t_final = t_final;
    g.boundary = Grid::Boundary::Periodic;
    return g;
}

std::vector<double> sample_profile(const Grid& g, const std::function<double(double)>& f) {
    std::vector<double> u(static_cast<std::size_t>(g.nx));
    for (int i = 0; i < g.nx; ++i) u[static_cast<std::size_t>(i)] = f(g.x_at(i));
    return u;
}

}  // namespace

TEST_CASE("zero and constant data are fixed points of the scheme") {
    Grid g = periodic_grid(32, 32, 0.5);
    ScalarFn burgers = [](double v) { return v; };
    SolutionField zero = solve_pde(0.7, burgers, std::vector<double>(32, 0.0), g);
    for (auto& row : zero.values)
        for (double v : row) CHECK(std::abs(v) <= 1e-13);

    SolutionField constant = solve_pde(0.7, burgers, std::vector<double>(32, 0.4), g);
    for (auto& row : constant.values)
        for (double v : row) CHECK(std::abs(v - 0.4) <= 1e-12);

    Grid d = g;
    d.boundary = Grid::Boundary::Dirichlet;
    d.left = d.right = 0.4;
    SolutionField dirichlet = solve_pde(0.7, burgers, std::vector<double>(32, 0.4), d);
    for (auto& row : dirichlet.values)
        for (double v : row) CHECK(std::abs(v - 0.4) <= 1e-12);
}

TEST_CASE("stability guard rejects advection-dominated steps") {
    Grid g = periodic_grid(64, 16, 10.0);  // huge dt
    ScalarFn fast = [](double) { return 50.0; };
    CHECK_THROWS_AS(solve_pde(0.1, fast, std::vector<double>(64, 1.0), g), NumericError);
}

TEST_CASE("manufactured solution converges at second order in space") {
    // u*(x,t) = exp(-t) sin(x) with the compensating source for g(u) = u
    const double nu = 0.4, t_final = 0.5;
    auto exact = [](double x, double t) { return std::exp(-t) * std::sin(x); };
    SourceFn source = [&](double x, double t) {
        double e = std::exp(-t);
        return -e * std::sin(x) + nu * e * std::sin(x) + e * e * std::sin(x) * std::cos(x);
    };
    ScalarFn gfn = [](double v) { return v; };

    auto error_at = [&](int nx) {
        Grid g = periodic_grid(nx, 16, t_final);
        // dt proportional to dx^2 keeps the first-order-in-time terms at
        // the spatial order
        double dx = g.dx();
        g.nt = std::max(16, static_cast<int>(std::ceil(t_final / (0.25 * dx * dx))));
        SolutionField f = solve_pde(nu, gfn, sample_profile(g, [](double x) { return std::sin(x); }), g,
                                    source);
        double worst = 0.0;
        for (int i = 0; i < g.nx; ++i)
            worst = std::max(worst,
                             std::abs(f.values.back()[static_cast<std::size_t>(i)] -
                                      exact(g.x_at(i), t_final)));
        return worst;
    };
    double e32 = error_at(32), e64 = error_at(64), e128 = error_at(128);
    double order1 = std::log2(e32 / e64);
    double order2 = std::log2(e64 / e128);
    CAPTURE(e32);
    CAPTURE(e64);
    CAPTURE(e128);
    CHECK(order1 >= 1.9);
    CHECK(order2 >= 1.9);
}

TEST_CASE("flows of translation and galilean generators have closed forms") {
    std::vector<FlowPoint> pts = {{0.3, 1.2, -0.5}, {2.0, 0.1, 0.7}};
    auto shifted = flow_transform({VF("1;0;0"), 0.3, 128}, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(shifted[i].x == doctest::Approx(pts[i].x + 0.3).epsilon(1e-12));
        CHECK(shifted[i].t == doctest::Approx(pts[i].t).epsilon(1e-12));
        CHECK(shifted[i].u == doctest::Approx(pts[i].u).epsilon(1e-12));
    }

    auto boosted = flow_transform({VF("t;0;1"), 0.25, 128}, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(boosted[i].x == doctest::Approx(pts[i].x + 0.25 * pts[i].t).epsilon(1e-10));
        CHECK(boosted[i].u == doctest::Approx(pts[i].u + 0.25).epsilon(1e-10));
    }

    auto scaled = flow_transform({VF("x;2*t;-u"), 0.2, 128}, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(scaled[i].x == doctest::Approx(pts[i].x * std::exp(0.2)).epsilon(1e-8));
        CHECK(scaled[i].t == doctest::Approx(pts[i].t * std::exp(0.4)).epsilon(1e-8));
        CHECK(scaled[i].u == doctest::Approx(pts[i].u * std::exp(-0.2)).epsilon(1e-8));
    }

    auto fixed = flow_transform({VF("t*x;t^2;x - t*u"), 0.0, 128}, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(fixed[i].x == pts[i].x);
        CHECK(fixed[i].t == pts[i].t);
        CHECK(fixed[i].u == pts[i].u);
    }
}

TEST_CASE("flow group law within 1e-7") {
    std::vector<FlowPoint> pts = {{0.4, 0.8, 0.3}, {-1.1, 0.5, -0.2}};
    for (const char* gen : {"1;0;0", "0;1;0", "t;0;1", "x;2*t;-u", "t*x;t^2;x - t*u"}) {
        FlowMap half1{VF(gen), 0.2, 128}, half2{VF(gen), 0.3, 128}, whole{VF(gen), 0.5, 128};
        auto composed = flow_transform(half2, flow_transform(half1, pts));
        auto direct = flow_transform(whole, pts);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            CHECK(std::abs(composed[i].x - direct[i].x) <= 1e-7);
            CHECK(std::abs(composed[i].t - direct[i].t) <= 1e-7);
            CHECK(std::abs(composed[i].u - direct[i].u) <= 1e-7);
        }
    }
}

TEST_CASE("jet residual check separates symmetries from non-symmetries") {
    CHECK(jet_residual_check(PDESpec::with_g(parse_expr("u")), VF("1;0;0")) < 1e-12);
    CHECK(jet_residual_check(PDESpec::with_g(parse_expr("u^2")), VF("x;2*t;-(1/2)*u")) < 1e-9);
    CHECK(jet_residual_check(PDESpec::with_g(parse_expr("u/(1-u)")), VF("x + t;2*t;1 + u")) > 1e-3);
}

TEST_CASE("jet residual check agrees with the symbolic verdict on the catalog") {
    struct Entry {
        const char* g;
        const char* vf;
    };
    for (const Entry& e : {Entry{"u", "t*x;t^2;x - t*u"}, Entry{"u", "t;0;1"},
                           Entry{"log(u)", "t;0;u"}, Entry{"(1-u)/(1+u)", "x - t;2*t;1 + u"},
                           Entry{"1/(1+u)", "x;2*t;1 + u"}, Entry{"u/(1+u)", "x + t;2*t;1 + u"},
                           Entry{"u/(1-u)", "x - t;2*t;u - 1"}}) {
        CAPTURE(e.g);
        CAPTURE(e.vf);
        CHECK(jet_residual_check(PDESpec::with_g(parse_expr(e.g)), VF(e.vf)) < 1e-9);
    }
}

TEST_CASE("no false positives at the separation threshold") {
    std::mt19937 rng(505);
    std::vector<Atom> pool = {atoms::x(), atoms::t(), atoms::u()};
    PDESpec pde = PDESpec::with_g(parse_expr("u"));
    int tested = 0;
    while (tested < 20) {
        VectorField vf(testing::random_poly(rng, pool, 3, 2, 2),
                       testing::random_poly(rng, pool, 3, 2, 2),
                       testing::random_poly(rng, pool, 3, 2, 2));
        if (vf.is_zero()) continue;
        bool symbolic = verify_symmetry(pde, vf).is_symmetry;
        if (symbolic) continue;  // random fields essentially never are
        double numeric = jet_residual_check(pde, vf);
        CHECK(numeric > 1e-3);
        ++tested;
    }
}

TEST_CASE("prolonged action matches a finite-difference directional derivative") {
    std::mt19937 rng(99);
    std::vector<Atom> coeff_pool = {atoms::x(), atoms::t(), atoms::u()};
    std::vector<Atom> jet_pool = {atoms::x(),  atoms::t(),  atoms::u(),  atoms::u_x(),
                                  atoms::u_t(), atoms::u_xx(), atoms::u_xt(), atoms::u_tt()};
    std::uniform_real_distribution<double> val(0.3, 1.1);
    for (int trial = 0; trial < 10; ++trial) {
        VectorField vf(testing::random_poly(rng, coeff_pool, 3, 2, 2),
                       testing::random_poly(rng, coeff_pool, 3, 2, 2),
                       testing::random_poly(rng, coeff_pool, 3, 2, 2));
        ProlongedField pf = prolong2(vf);
        Expr e = testing::random_poly(rng, jet_pool, 4, 2, 2);
        EvalPoint pt;
        for (const Atom& a : jet_pool) pt[a] = val(rng);

        double lhs = eval_numeric(apply(pf, e), pt);

        // displace the full second-jet point along the prolonged field
        const double h = 1e-5;
        Expr dirs[8] = {vf.xi,      vf.phi,     vf.eta,     pf.eta1_x,
                        pf.eta1_t, pf.eta2_xx, pf.eta2_xt, pf.eta2_tt};
        EvalPoint plus = pt, minus = pt;
        int idx = 0;
        for (const Atom& a : jet_pool) {
            double w = eval_numeric(dirs[idx], pt);
            plus[a] += h * w;
            minus[a] -= h * w;
            ++idx;
        }
        double rhs = (eval_numeric(e, plus) - eval_numeric(e, minus)) / (2.0 * h);
        CHECK(std::abs(lhs - rhs) <= 1e-6 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("transport at epsilon = 0 reproduces the untransformed residual") {
    Grid g = periodic_grid(48, 48, 0.4);
    ScalarFn gfn = [](double v) { return v; };
    auto u0 = sample_profile(g, [](double x) { return 0.1 + 0.05 * std::sin(x); });
    TransportCheck t = invariance_transport_check(0.5, gfn, VF("t;0;1"), 0.0, g, u0);
    CHECK(t.residual_transformed == t.residual_untransformed);
}

TEST_CASE("translating a periodic solution preserves the residual scale") {
    Grid g = periodic_grid(64, 64, 0.4);
    ScalarFn gfn = [](double v) { return v; };
    auto u0 = sample_profile(g, [](double x) { return 0.1 + 0.05 * std::sin(x); });
    TransportCheck t = invariance_transport_check(0.5, gfn, VF("1;0;0"), 0.3, g, u0);
    CHECK(t.residual_transformed <= 2.0 * t.residual_untransformed);
}

TEST_CASE("galilean transport residual refines at order >= 1.5") {
    ScalarFn gfn = [](double v) { return v; };
    auto residual_at = [&](int nx, int nt) {
        Grid g = periodic_grid(nx, nt, 0.4);
        auto u0 = sample_profile(g, [](double x) { return 0.1 + 0.05 * std::sin(x); });
        return invariance_transport_check(0.5, gfn, VF("t;0;1"), 0.1, g, u0).residual_transformed;
    };
    double coarse = residual_at(32, 32);
    double fine = residual_at(64, 128);  // dt ~ dx^2
    CAPTURE(coarse);
    CAPTURE(fine);
    CHECK(std::log2(coarse / fine) >= 1.5);
}

TEST_CASE("csv export carries the grid") {
    Grid g = periodic_grid(16, 16, 0.1);
    ScalarFn gfn = [](double v) { return v; };
    SolutionField f = solve_pde(1.0, gfn, std::vector<double>(16, 0.25), g);
    std::string csv = f.csv();
    CHECK(csv.rfind("x,t,u\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 16 * 17);
}
