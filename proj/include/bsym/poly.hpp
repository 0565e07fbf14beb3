#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "bsym/atom.hpp"
#include "bsym/rational.hpp"

namespace bsym {

// Power product of atoms, exponents >= 1, factors sorted by atom order.
struct Monomial {
    std::vector<std::pair<Atom, int>> factors;

    static Monomial one() { return {}; }
    static Monomial of(const Atom& a, int e = 1);

    bool is_one() const { return factors.empty(); }
    int total_degree() const;
    int exponent_of(const Atom& a) const;
    bool contains(const Atom& a) const { return exponent_of(a) > 0; }

    Monomial times(const Monomial& other) const;
    // Quotient if other divides this.
    std::optional<Monomial> divided_by(const Monomial& other) const;
};

int compare(const Monomial& a, const Monomial& b);  // graded, then lexicographic
inline bool operator==(const Monomial& a, const Monomial& b) { return compare(a, b) == 0; }

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
};

// Multivariate polynomial over the atom alphabet with exact rational
// coefficients. Zero is the empty term map.
class Poly {
public:
    using TermMap = std::map<Monomial, Rational, MonomialLess>;

    Poly() = default;
    explicit Poly(const Rational& c);
    explicit Poly(const Atom& a);

    static Poly constant(const Rational& c) { return Poly(c); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Constant term value; zero polynomial evaluates to 0.
    Rational constant_value() const;

    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, const Rational& c);

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Rational& c) const;
    Poly pow(int e) const;  // e >= 0

    // Leading term in the graded-lex order.
    const std::pair<const Monomial, Rational>& leading() const;

    std::set<Atom> atoms() const;
    bool contains_atom(const Atom& a) const;
    bool contains_atom_if(const std::function<bool(const Atom&)>& pred) const;

    // Largest monomial dividing every term (the monomial content).
    Monomial monomial_content() const;
    Poly divided_by_monomial(const Monomial& m) const;

    // Exact polynomial quotient if divisor divides this exactly.
    static std::optional<Poly> exact_divide(const Poly& dividend, const Poly& divisor);

    bool operator==(const Poly& o) const;

private:
    TermMap terms_;
};

// Univariate view in a single atom; used by the lightweight gcd reduction.
bool is_univariate_in(const Poly& p, const Atom& v);
Poly univariate_gcd(const Poly& a, const Poly& b, const Atom& v);

}  // namespace bsym
