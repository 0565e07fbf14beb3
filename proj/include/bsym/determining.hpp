#pragma once

#include <optional>
#include <vector>

#include "bsym/json.hpp"
#include "bsym/linalg.hpp"
#include "bsym/vector_field.hpp"

namespace bsym {

// The PDE family nu*u_xx = u_t + g(u)*u_x with nu > 0 and g' != 0.
struct PDESpec {
    Expr nu;
    std::optional<Expr> g;  // nullopt: abstract g

    PDESpec(Expr nu, std::optional<Expr> g);

    static PDESpec with_abstract_g() { return PDESpec(Expr(atoms::nu()), std::nullopt); }
    static PDESpec with_g(Expr g) { return PDESpec(Expr(atoms::nu()), std::move(g)); }

    bool abstract_g() const { return !g.has_value(); }
    Expr g_expr() const { return g ? *g : Expr(atoms::g()); }
};

// F = nu*u_xx - u_t - g(u)*u_x
Expr burgers_operator(const PDESpec& pde);

// True for the unknown generator-coefficient function symbols (everything
// abstract except the g family).
bool is_unknown_fn(const Atom& a);

// xi(x,t) d_x + phi(t) d_t + (alpha(x,t) u + beta(x,t)) d_u
VectorField generator_ansatz();

// S^(2)F restricted to the solution manifold: u_t (and the mixed/second
// time jets it induces) are eliminated through the evolution rule.
Expr invariance_residual(const PDESpec& pde, const VectorField& vf);

struct DeterminingEquation {
    Expr lhs;         // the expression that must vanish
    Monomial source;  // jet monomial whose coefficient produced it
};

struct DeterminingSystem {
    std::vector<DeterminingEquation> equations;

    std::string str() const;
    std::string latex() const;
    Json to_json() const;
};

// Coefficient equations of the residual for the generator ansatz, reduced
// by the first-order differential consequences that force single unknown
// derivatives to vanish.
DeterminingSystem extract_determining(const PDESpec& pde);

// The classical three-equation presentation of the determining system for
// abstract g, used as the reference fixture.
DeterminingSystem reference_determining_system();

struct EquivalenceWitness {
    bool equivalent = false;
    std::vector<Atom> alphabet;     // shared unknown atoms (column order)
    ExprMat first_in_second;        // row i: coefficients of A_i over B's equations
    ExprMat second_in_first;
    Json to_json() const;
};

// Exact linear-span comparison of two systems over the field of rational
// functions in the non-unknown atoms, with combination witnesses.
EquivalenceWitness equivalent_systems(const DeterminingSystem& a, const DeterminingSystem& b);

struct VerifyReport {
    bool is_symmetry = false;
    Expr residual;
};

VerifyReport verify_symmetry(const PDESpec& pde, const VectorField& vf);

// Substitution maps instantiating the free parameters of g at the fixed
// sample values (p over {2, 3, -1, 1/2}, b over {1, -2}); a single empty
// map when g is parameter-free. The maps also cover the parameter atoms
// appearing in generator coefficients.
std::vector<SubstitutionMap> parameter_sample_maps(const Expr& g);

// Exact symmetry discovery under the polynomial ansatz of the stated
// degree (<= 3). PDEs whose g carries free parameters (p, b) are sampled
// at fixed rational values and the intersection of the constraint spaces
// is used; every returned field is re-verified symbolically against the
// original (possibly parametric) g.
std::vector<VectorField> discover_symmetries(const PDESpec& pde, int degree);

}  // namespace bsym
