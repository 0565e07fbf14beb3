#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bsym/rational.hpp"

namespace bsym {

enum class Coordinate : std::uint8_t { X = 0, T = 1, U = 2 };

const char* coordinate_name(Coordinate c);

// Argument slot of an abstract function symbol. Normally a coordinate
// (g(u), xi(x,t)); substitution may freeze it to an exact value (g'(0))
// or to an opaque printed expression (g(1+u)). Frozen slots are constant
// under differentiation.
struct FnArg {
    enum class Tag : std::uint8_t { Coord = 0, Value, Opaque };
    Tag tag = Tag::Coord;
    Coordinate coord = Coordinate::U;
    Rational value{0};
    std::string opaque;

    static FnArg of(Coordinate c) { return {Tag::Coord, c, Rational(0), {}}; }
    static FnArg of(const Rational& v) { return {Tag::Value, Coordinate::U, v, {}}; }
    static FnArg of_opaque(std::string text) {
        return {Tag::Opaque, Coordinate::U, Rational(0), std::move(text)};
    }
};

int compare(const FnArg& a, const FnArg& b);

// One generator of the polynomial alphabet. Expressions are rational
// functions in these; each kind carries its own differentiation rule
// (see atom_derivative in expr.hpp).
//
//   Coord  x, t, u
//   Jet    u_x, u_t, u_xx, ... (index multiset stored as x/t counts;
//          canonical spelling lists x's before t's)
//   Param  nu, p, b, eps, a0, a1, ...
//   Fn     abstract function symbol with derivative multi-index:
//          g(u), g'(u), xi(x,t) and its partials, phi(t), alpha, beta
//   Pow    u^e where e is a parameter (exponent symbolic)
//   Exp    exp(c*u), c a rational multiple of 1 or of a parameter
//   Log    log(u)
//   Root   u^(1/d); expressions carrying it keep u rewritten as the
//          d-th power of the root so zero tests stay exact
struct Atom {
    enum class Kind : std::uint8_t { Coord = 0, Jet, Param, Fn, Pow, Exp, Log, Root };

    Kind kind = Kind::Coord;
    Coordinate coord = Coordinate::X;
    int jet_x = 0, jet_t = 0;
    std::string name;
    std::vector<FnArg> args;
    std::vector<int> deriv;
    Rational coeff{1};
    int root_den = 0;

    static Atom make_coord(Coordinate c);
    static Atom make_jet(int jx, int jt);
    static Atom make_param(std::string name);
    static Atom make_fn(std::string name, std::vector<FnArg> args, std::vector<int> deriv);
    static Atom make_pow_u(std::string exponent_param);
    static Atom make_exp_u(const Rational& q, std::string param = "");
    static Atom make_log_u();
    static Atom make_root_u(int den);

    int jet_order() const { return jet_x + jet_t; }
    bool is_coord(Coordinate c) const { return kind == Kind::Coord && coord == c; }
    // True for any symbol that differentiates through u: g-family and the
    // transcendental/power atoms attached to u.
    bool depends_on_u() const;

    std::string str() const;
    std::string latex() const;
};

int compare(const Atom& a, const Atom& b);

inline bool operator==(const Atom& a, const Atom& b) { return compare(a, b) == 0; }
inline bool operator!=(const Atom& a, const Atom& b) { return compare(a, b) != 0; }
inline bool operator<(const Atom& a, const Atom& b) { return compare(a, b) < 0; }

// Shared atom singletons for the fixed part of the alphabet.
namespace atoms {
const Atom& x();
const Atom& t();
const Atom& u();
const Atom& u_x();
const Atom& u_t();
const Atom& u_xx();
const Atom& u_xt();
const Atom& u_tt();
const Atom& nu();
Atom g(int deriv_order = 0);          // g, g', g'', ...
Atom xi(int dx = 0, int dt = 0);      // xi(x,t) partials
Atom phi(int dt = 0);                 // phi(t) derivatives
Atom alpha(int dx = 0, int dt = 0);   // alpha(x,t) partials
Atom beta(int dx = 0, int dt = 0);    // beta(x,t) partials
Atom ansatz_param(int i);             // a0, a1, ...
}  // namespace atoms

}  // namespace bsym
