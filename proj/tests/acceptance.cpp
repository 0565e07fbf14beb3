// Acceptance suite: each criterion prints exactly one PASS/FAIL line.
// The process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>

#include "bsym/catalog.hpp"
#include "bsym/numlab.hpp"
#include "bsym/parse.hpp"

using namespace bsym;
namespace {

int failures = 0;

void report(int n, bool ok, const std::string& what) {
    std::printf("CRITERION %d: %s — %s\n", n, ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++failures;
}

VectorField VF(const char* s) { return VectorField::parse(s); }

Expr random_jet_poly(std::mt19937& rng, const std::vector<Atom>& pool) {
    std::uniform_int_distribution<int> nterms(1, 5), nfac(0, 3), expd(1, 2), coeff(-6, 6);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    Expr acc;
    for (int i = 0, terms = nterms(rng); i < terms; ++i) {
        int c = coeff(rng);
        Expr term{Rational(c == 0 ? 1 : c)};
        for (int j = 0, k = nfac(rng); j < k; ++j) term = term * Expr(pool[pick(rng)]).pow(expd(rng));
        acc = acc + term;
    }
    return acc;
}

// ---------------------------------------------------------------- criterion 1
void criterion_1() {
    auto start = std::chrono::steady_clock::now();
    DeterminingSystem mine = extract_determining(PDESpec::with_abstract_g());
    EquivalenceWitness w = equivalent_systems(mine, reference_determining_system());
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = w.equivalent && mine.equations.size() == 3 && secs < 5.0;
    std::ostringstream what;
    what << "determining system for abstract g is span-equivalent to the classical three "
            "equations with an explicit witness ("
         << secs << " s)";
    report(1, ok, what.str());
}

// ---------------------------------------------------------------- criterion 2
void criterion_2() {
    bool ok = true;
    for (const ClassificationEntry& e : classification_catalog()) {
        if (e.case_id == "arb" || e.case_id == "7b") continue;
        for (const VectorField& vf : e.listed_extras)
            ok = ok && verify_symmetry(e.pde, vf).is_symmetry;
        ok = ok && verify_symmetry(e.pde, generator_X()).is_symmetry;
        ok = ok && verify_symmetry(e.pde, generator_T()).is_symmetry;
    }
    // the arbitrary-g equation admits only the translations at degree 1
    std::vector<VectorField> arb = discover_symmetries(PDESpec::with_abstract_g(), 1);
    ok = ok && arb.size() == 2;
    for (const VectorField& vf : arb) {
        ok = ok && expand_in_basis(vf, {generator_X(), generator_T()}).has_value();
    }
    report(2, ok,
           "every generator of cases 1-6 and 7 (g = u/(1+u)) has exactly zero residual; "
           "arbitrary g admits only X, T at degree 1");
}

// ---------------------------------------------------------------- criterion 3
void criterion_3() {
    PDESpec minus = PDESpec::with_g(parse_expr("u/(1-u)"));
    VerifyReport listed = verify_symmetry(minus, VF("x + t;2*t;1 + u"));
    VerifyReport corrected = verify_symmetry(minus, VF("x - t;2*t;u - 1"));

    VectorField b13 = VF("x;2*t;-u");
    bool brackets = bracket(generator_X(), b13) == generator_X() &&
                    bracket(generator_T(), b13) == generator_T().scaled(parse_expr("2"));

    bool cli_ok = false;
    {
        std::string cmd = std::string(BSYM_CLI_PATH) + " classify > /tmp/bsym_classify_out.txt 2>&1";
        int rc = std::system(cmd.c_str());
        int exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
        std::FILE* f = std::fopen("/tmp/bsym_classify_out.txt", "rb");
        std::string text;
        if (f) {
            char buf[4096];
            std::size_t got;
            while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, got);
            std::fclose(f);
        }
        cli_ok = exit_code == 2 && text.find("[X,B13]") != std::string::npos &&
                 text.find("u/(1-u)") != std::string::npos;
    }
    bool ok = !listed.is_symmetry && !listed.residual.is_zero() && corrected.is_symmetry &&
              brackets && cli_ok;
    report(3, ok,
           "documented corrections: case-7b replacement generator verifies while the listed one "
           "fails, [T,B13] = 2T with [X,B13] = X, and `classify` exits 2 naming both");
}

// ---------------------------------------------------------------- criterion 4
void criterion_4() {
    bool ok = true;
    for (const ClassificationEntry& e : classification_catalog()) {
        std::vector<VectorField> basis = {generator_X(), generator_T()};
        for (const VectorField& vf : e.verified_extras) basis.push_back(vf);
        StructureConstants sc = structure_constants(basis);
        ok = ok && sc == e.expected_brackets;
    }
    // spot-check the printed non-null brackets of the solvable cases
    auto entry = [&](const char* id) -> const ClassificationEntry& {
        for (const ClassificationEntry& e : classification_catalog())
            if (e.case_id == id) return e;
        throw Error("missing catalog case");
    };
    for (const char* id : {"2", "4", "6"}) {
        const VectorField& b = entry(id).verified_extras[0];
        ok = ok && bracket(generator_X(), b) == generator_X();
        ok = ok && bracket(generator_T(), b) == generator_T().scaled(parse_expr("2"));
    }
    {
        const VectorField& b5 = entry("5").verified_extras[0];
        ok = ok && bracket(generator_T(), b5) ==
                       generator_T().scaled(parse_expr("2")) - generator_X();
        const VectorField& b7 = entry("7a").verified_extras[0];
        ok = ok && bracket(generator_T(), b7) ==
                       generator_T().scaled(parse_expr("2")) + generator_X();
        const VectorField& b3 = entry("3").verified_extras[0];
        ok = ok && bracket(generator_T(), b3) == generator_X();
        ok = ok && bracket(generator_X(), b3).is_zero();
    }
    report(4, ok, "all non-null brackets of the classification tables are reproduced exactly");
}

// ---------------------------------------------------------------- criterion 5
void criterion_5() {
    bool ok = true;
    for (const ClassificationEntry& e : classification_catalog()) {
        std::vector<VectorField> basis = {generator_X(), generator_T()};
        for (const VectorField& vf : e.verified_extras) basis.push_back(vf);
        StructureConstants sc = structure_constants(basis);
        IdentifyResult r = identify(sc);
        ok = ok && r.label.kind == e.expected_kind;
        if (e.expected_kind == AlgebraLabel::Kind::A35) ok = ok && r.label.a == Rational(1, 2);
        if (e.expected_kind != AlgebraLabel::Kind::Abelian) {
            ok = ok && r.witness.has_value();
            if (r.witness) {
                StructureConstants target =
                    e.expected_kind == AlgebraLabel::Kind::Heisenberg ? heisenberg_target()
                    : e.expected_kind == AlgebraLabel::Kind::A35 ? a35_target(Rational(1, 2))
                                                                 : a540_target();
                ok = ok && change_of_basis(sc, *r.witness) == target;
            }
        }
        if (e.expected_kind == AlgebraLabel::Kind::A540) {
            // Levi block of the witness presentation is sl(2, R): Killing
            // signature (2,1)
            StructureConstants levi(3);
            StructureConstants target = a540_target();
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    for (int k = 0; k < 3; ++k) levi.set(k, i, j, target.at(k, i, j));
            AlgebraProfile p = algebra_profile(levi);
            ok = ok && p.killing_rank == 3 && p.killing_positive == 2 && p.killing_negative == 1;
        }
    }
    report(5, ok,
           "identify returns A_{3,1} (log case), A_{3,5}^{1/2} (cases 2,4,5,6,7), and A_{5,40} "
           "(g = u) with exact basis-change witnesses");
}

// ---------------------------------------------------------------- criterion 6
void criterion_6() {
    bool ok = true;
    {
        PDESpec pde = PDESpec::with_g(parse_expr("u"));
        auto basis = discover_symmetries(pde, 2);
        ok = ok && basis.size() == 5;
        for (const VectorField& vf : basis) ok = ok && verify_symmetry(pde, vf).is_symmetry;
    }
    for (const char* g : {"u^2", "exp(u)", "log(u)", "(1-u)/(1+u)", "1/(1+u)", "u/(1+u)"}) {
        PDESpec pde = PDESpec::with_g(parse_expr(g));
        auto basis = discover_symmetries(pde, 2);
        ok = ok && basis.size() == 3;
        for (const VectorField& vf : basis) ok = ok && verify_symmetry(pde, vf).is_symmetry;
    }
    report(6, ok,
           "degree-2 discovery returns dimension 5 for g = u and dimension 3 for the six "
           "extended cases, all fields re-verified symbolically");
}

// ---------------------------------------------------------------- criterion 7
void criterion_7() {
    bool ok = true;
    std::mt19937 rng(314159);

    // total-derivative commutation and Leibniz rule
    std::vector<Atom> pool = {atoms::x(),    atoms::t(),  atoms::u(),   atoms::u_x(),
                              atoms::u_t(),  atoms::u_xx(), atoms::u_xt(), atoms::u_tt(),
                              Atom::make_jet(3, 0), atoms::g()};
    for (int i = 0; i < 25 && ok; ++i) {
        Expr e1 = random_jet_poly(rng, pool), e2 = random_jet_poly(rng, pool);
        ok = ok && total_derivative(total_derivative(e1, Coordinate::X), Coordinate::T) ==
                       total_derivative(total_derivative(e1, Coordinate::T), Coordinate::X);
        for (Coordinate c : {Coordinate::X, Coordinate::T})
            ok = ok && total_derivative(e1 * e2, c) ==
                           total_derivative(e1, c) * e2 + e1 * total_derivative(e2, c);
    }

    // prolongation linearity
    std::vector<Atom> cpool = {atoms::x(), atoms::t(), atoms::u()};
    for (int i = 0; i < 10 && ok; ++i) {
        VectorField v(random_jet_poly(rng, cpool), random_jet_poly(rng, cpool),
                      random_jet_poly(rng, cpool));
        VectorField w(random_jet_poly(rng, cpool), random_jet_poly(rng, cpool),
                      random_jet_poly(rng, cpool));
        ProlongedField s = prolong2(v + w), pv = prolong2(v), pw = prolong2(w);
        ok = ok && s.eta1_x == pv.eta1_x + pw.eta1_x && s.eta2_xx == pv.eta2_xx + pw.eta2_xx &&
             s.eta2_tt == pv.eta2_tt + pw.eta2_tt;
    }

    // bracket antisymmetry and Jacobi hold exactly for every catalog tensor,
    // and identification is basis-independent (100 random changes each)
    std::uniform_int_distribution<int> entry(-4, 4);
    for (const ClassificationEntry& e : classification_catalog()) {
        std::vector<VectorField> basis = {generator_X(), generator_T()};
        for (const VectorField& vf : e.verified_extras) basis.push_back(vf);
        StructureConstants sc = structure_constants(basis);
        try {
            sc.validate();  // antisymmetry + Jacobi, exact
        } catch (const Error&) {
            ok = false;
        }
        AlgebraLabel reference = identify(sc).label;
        for (int trial = 0; trial < 100 && ok; ++trial) {
            RatMat m(sc.dim(), sc.dim());
            do {
                for (int r = 0; r < sc.dim(); ++r)
                    for (int c = 0; c < sc.dim(); ++c) m.at(r, c) = Rational(entry(rng));
            } while (!m.inverse());
            ok = ok && identify(change_of_basis(sc, m)).label.same_class(reference);
        }
        if (!ok) break;
    }
    report(7, ok,
           "property suites (commutation, Leibniz, prolongation linearity, antisymmetry, "
           "Jacobi, identify invariance under 100 random basis changes) ran with zero failures");
}

// ---------------------------------------------------------------- criterion 8
void criterion_8() {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;

    // every verified catalog generator is numerically invariant below 1e-9
    EvalPoint params;
    params[Atom::make_param("p")] = 2.0;
    params[Atom::make_param("b")] = 1.0;
    for (const ClassificationEntry& e : classification_catalog()) {
        if (e.pde.abstract_g()) continue;
        for (const VectorField& vf : e.verified_extras)
            ok = ok && jet_residual_check(e.pde, vf, {}, params) < 1e-9;
    }
    // ... and the case-7b counterexample stays above 1e-3
    ok = ok && jet_residual_check(PDESpec::with_g(parse_expr("u/(1-u)")),
                                  VF("x + t;2*t;1 + u")) > 1e-3;

    // manufactured-solution convergence order of the solver
    {
        const double nu = 0.4, t_final = 0.5;
        ScalarFn gfn = [](double v) { return v; };
        SourceFn source = [&](double x, double t) {
            double e = std::exp(-t);
            return -e * std::sin(x) + nu * e * std::sin(x) + e * e * std::sin(x) * std::cos(x);
        };
        auto error_at = [&](int nx) {
            Grid grid;
            grid.x_min = 0.0;
            grid.x_max = 2.0 * M_PI;
            grid.nx = nx;
            grid.t_final = t_final;
            grid.boundary = Grid::Boundary::Periodic;
            double dx = grid.dx();
            grid.nt = std::max(16, static_cast<int>(std::ceil(t_final / (0.25 * dx * dx))));
            std::vector<double> u0(static_cast<std::size_t>(nx));
            for (int i = 0; i < nx; ++i) u0[static_cast<std::size_t>(i)] = std::sin(grid.x_at(i));
            SolutionField f = solve_pde(nu, gfn, u0, grid, source);
            double worst = 0.0;
            for (int i = 0; i < nx; ++i)
                worst = std::max(worst, std::abs(f.values.back()[static_cast<std::size_t>(i)] -
                                                 std::exp(-t_final) * std::sin(grid.x_at(i))));
            return worst;
        };
        double e64 = error_at(64), e128 = error_at(128);
        ok = ok && std::log2(e64 / e128) >= 1.9;
    }

    // flow group law below 1e-7 for the catalog generators
    {
        std::vector<FlowPoint> pts = {{0.4, 0.8, 0.3}, {-1.1, 0.5, -0.2}};
        for (const char* gen : {"1;0;0", "0;1;0", "t;0;1", "x;2*t;-u", "t*x;t^2;x - t*u",
                                "t;0;u", "x - t;2*t;1 + u", "x + t;2*t;1 + u"}) {
            FlowMap f1{VF(gen), 0.2, 128}, f2{VF(gen), 0.3, 128}, f3{VF(gen), 0.5, 128};
            auto composed = flow_transform(f2, flow_transform(f1, pts));
            auto direct = flow_transform(f3, pts);
            for (std::size_t i = 0; i < pts.size(); ++i)
                ok = ok && std::abs(composed[i].x - direct[i].x) < 1e-7 &&
                     std::abs(composed[i].t - direct[i].t) < 1e-7 &&
                     std::abs(composed[i].u - direct[i].u) < 1e-7;
        }
    }

    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ok = ok && secs < 60.0;
    std::ostringstream what;
    what << "numeric cross-checks: jet residuals separate at 1e-9 / 1e-3, manufactured-solution "
            "order >= 1.9, flow group law < 1e-7 ("
         << secs << " s)";
    report(8, ok, what.str());
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (failures == 0) {
        std::printf("ACCEPTANCE: all criteria passed\n");
        return 0;
    }
    std::printf("ACCEPTANCE: %d criterion(s) failed\n", failures);
    return 1;
}
