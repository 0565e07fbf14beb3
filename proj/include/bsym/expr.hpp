#pragma once

#include <functional>
#include <map>
#include <string>

#include "bsym/poly.hpp"

namespace bsym {

struct AtomLess {
    bool operator()(const Atom& a, const Atom& b) const { return compare(a, b) < 0; }
};

// Numeric implementation of the abstract function g with derivatives up to
// order 2, used only by eval_numeric.
struct GImpl {
    std::function<double(double)> value;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
};

using EvalPoint = std::map<Atom, double, AtomLess>;
using SubstitutionMap = std::map<Atom, class Expr, AtomLess>;

// Exact symbolic expression: a single quotient of two expanded,
// coefficient-collected polynomials, reduced on construction. Zero is
// uniquely 0/1; the denominator is monic in the graded-lex leading term.
// Immutable after construction; all operations are pure.
class Expr {
public:
    Expr() : num_(), den_(Rational(1)) {}
    explicit Expr(const Rational& c) : num_(c), den_(Rational(1)) {}
    explicit Expr(long n) : num_(Rational(n)), den_(Rational(1)) {}
    explicit Expr(const Atom& a) : num_(a), den_(Rational(1)) {}
    explicit Expr(Poly num) : num_(std::move(num)), den_(Rational(1)) {}
    Expr(Poly num, Poly den);

    static Expr zero() { return Expr(); }
    static Expr one() { return Expr(Rational(1)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.is_constant() && num_.is_constant() && num_.constant_value() == 1; }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_rational() const { return is_constant(); }
    Rational rational_value() const;  // requires is_constant

    Expr operator-() const;
    Expr operator+(const Expr& o) const;
    Expr operator-(const Expr& o) const;
    Expr operator*(const Expr& o) const;
    Expr operator/(const Expr& o) const;  // throws ZeroDenominatorError
    Expr pow(int e) const;

    bool equals(const Expr& o) const;  // exact mathematical equality

    std::set<Atom> atoms() const;
    bool contains_atom(const Atom& a) const;
    bool contains_atom_if(const std::function<bool(const Atom&)>& pred) const;
    int max_jet_order() const;

    std::string str() const;
    std::string latex() const;

private:
    void reduce();
    Poly num_, den_;
};

inline bool operator==(const Expr& a, const Expr& b) { return a.equals(b); }
inline bool operator!=(const Expr& a, const Expr& b) { return !a.equals(b); }

// Re-canonicalizes; idempotent. Expressions are already kept in normal
// form, so this is the identity on any constructed Expr.
Expr normalize(const Expr& e);

// Partial derivative treating distinct jet coordinates as independent.
// v must be a coordinate, jet coordinate, or parameter. Abstract function
// atoms differentiate through their argument slots; the transcendental
// atoms carry their chain rules (d/du log(u) = 1/u, d/du u^p = p*u^p/u, ...).
Expr diff_partial(const Expr& e, const Atom& v);

// Total derivative D_i = d_i + u_i d_u + sum_J u_{J+i} d_{u_J}.
Expr total_derivative(const Expr& e, Coordinate i);

// Simultaneous substitution followed by normalization. Rules may reference
// each other's keys (they are resolved first; a cycle among distinct keys
// is an error); a rule whose right side mentions its own key is applied
// once, so {u -> 1+u} maps u^2 to (1+u)^2.
Expr substitute(const Expr& e, const SubstitutionMap& rules);

// Exact decomposition e = sum over monomials in the given atoms of
// monomial * coefficient. Non-polynomial dependence on a basis atom
// is an error.
std::map<Monomial, Expr, MonomialLess> collect(const Expr& e, const std::set<Atom>& basis);

// Same decomposition with the basis given as a predicate over atoms.
std::map<Monomial, Expr, MonomialLess> collect_if(const Expr& e,
                                                  const std::function<bool(const Atom&)>& pred);

double eval_numeric(const Expr& e, const EvalPoint& point, const GImpl* g_impl = nullptr);

// When root atoms u^(1/d) are present, rewrites u (and coarser roots) as
// powers of the primitive root over the lcm of the orders, so that
// exponent arithmetic decides equality exactly. No-op otherwise.
Expr impose_root_relation(const Expr& e);

}  // namespace bsym

