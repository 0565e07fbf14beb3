#pragma once

#include <string_view>

#include "bsym/expr.hpp"

namespace bsym {

// Point-symmetry generator xi*d_x + phi*d_t + eta*d_u with coefficients
// depending on (x, t, u) only.
struct VectorField {
    Expr xi, phi, eta;

    VectorField() = default;
    VectorField(Expr xi, Expr phi, Expr eta);

    // Parses the "xi; phi; eta" syntax, e.g. "t; 0; 1".
    static VectorField parse(std::string_view text);

    bool is_zero() const { return xi.is_zero() && phi.is_zero() && eta.is_zero(); }

    VectorField operator+(const VectorField& o) const;
    VectorField operator-(const VectorField& o) const;
    VectorField scaled(const Expr& c) const;

    // Action on a function of (x, t, u).
    Expr apply_to_function(const Expr& f) const;

    std::string str() const;    // "xi;phi;eta"
    std::string latex() const;  // generator notation
};

inline bool operator==(const VectorField& a, const VectorField& b) {
    return a.xi == b.xi && a.phi == b.phi && a.eta == b.eta;
}

// Second prolongation: the base field plus the induced coefficients on
// first and second jet coordinates.
struct ProlongedField {
    VectorField base;
    Expr eta1_x, eta1_t;
    Expr eta2_xx, eta2_xt, eta2_tt;
};

ProlongedField prolong2(const VectorField& vf);

// Applies the prolonged field to an expression of jet order <= 2.
Expr apply(const ProlongedField& pf, const Expr& e);

}  // namespace bsym
