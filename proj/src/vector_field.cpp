#include "bsym/vector_field.hpp"

#include <array>

#include "bsym/errors.hpp"
#include "bsym/parse.hpp"

namespace bsym {

namespace {

void check_point_coefficient(const Expr& e, const char* which) {
    if (e.contains_atom_if([](const Atom& a) { return a.kind == Atom::Kind::Jet; }))
        throw InvariantViolationError(std::string("vector field coefficient ") + which +
                                      " must not contain jet coordinates");
}

}  // namespace

VectorField::VectorField(Expr xi_, Expr phi_, Expr eta_)
    : xi(std::move(xi_)), phi(std::move(phi_)), eta(std::move(eta_)) {
    check_point_coefficient(xi, "xi");
    check_point_coefficient(phi, "phi");
    check_point_coefficient(eta, "eta");
}

VectorField VectorField::parse(std::string_view text) {
    std::array<std::string_view, 3> parts;
    std::size_t start = 0, n = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ';') {
            if (n >= 3) throw ParseError("vector field wants exactly three components", i);
            parts[n++] = text.substr(start, i - start);
            start = i + 1;
        }
    }
    if (n != 3) throw ParseError("vector field wants exactly three components", text.size());
    return VectorField(parse_expr(parts[0]), parse_expr(parts[1]), parse_expr(parts[2]));
}

VectorField VectorField::operator+(const VectorField& o) const {
    return VectorField(xi + o.xi, phi + o.phi, eta + o.eta);
}

VectorField VectorField::operator-(const VectorField& o) const {
    return VectorField(xi - o.xi, phi - o.phi, eta - o.eta);
}

VectorField VectorField::scaled(const Expr& c) const {
    return VectorField(xi * c, phi * c, eta * c);
}

Expr VectorField::apply_to_function(const Expr& f) const {
    return xi * diff_partial(f, atoms::x()) + phi * diff_partial(f, atoms::t()) +
           eta * diff_partial(f, atoms::u());
}

std::string VectorField::str() const {
    return xi.str() + ";" + phi.str() + ";" + eta.str();
}

std::string VectorField::latex() const {
    static const std::array<const char*, 3> dirs = {"x", "t", "u"};
    std::array<const Expr*, 3> comps = {&xi, &phi, &eta};
    std::string out;
    for (std::size_t i = 0; i < 3; ++i) {
        const Expr& c = *comps[i];
        if (c.is_zero()) continue;
        std::string coeff;
        if (c.is_one()) {
            coeff = "";
        } else if ((-c).is_one()) {
            coeff = "-";
        } else {
            coeff = c.latex();
            if (c.den().is_constant() && c.num().term_count() > 1) coeff = "(" + coeff + ")";
        }
        std::string term = coeff + "\\frac{\\partial}{\\partial " + dirs[i] + "}";
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
    }
    return out.empty() ? "0" : out;
}

ProlongedField prolong2(const VectorField& vf) {
    auto D = [](const Expr& e, Coordinate c) { return total_derivative(e, c); };
    const Expr ux(atoms::u_x()), ut(atoms::u_t());
    const Expr uxx(atoms::u_xx()), uxt(atoms::u_xt()), utt(atoms::u_tt());

    ProlongedField pf;
    pf.base = vf;
    pf.eta1_x = D(vf.eta, Coordinate::X) - D(vf.xi, Coordinate::X) * ux - D(vf.phi, Coordinate::X) * ut;
    pf.eta1_t = D(vf.eta, Coordinate::T) - D(vf.xi, Coordinate::T) * ux - D(vf.phi, Coordinate::T) * ut;
    pf.eta2_xx =
        D(pf.eta1_x, Coordinate::X) - D(vf.xi, Coordinate::X) * uxx - D(vf.phi, Coordinate::X) * uxt;
    pf.eta2_xt =
        D(pf.eta1_x, Coordinate::T) - D(vf.xi, Coordinate::T) * uxx - D(vf.phi, Coordinate::T) * uxt;
    pf.eta2_tt =
        D(pf.eta1_t, Coordinate::T) - D(vf.xi, Coordinate::T) * uxt - D(vf.phi, Coordinate::T) * utt;
    return pf;
}

Expr apply(const ProlongedField& pf, const Expr& e) {
    if (e.max_jet_order() > 2)
        throw JetOrderError("apply expects jet order <= 2, got " + std::to_string(e.max_jet_order()));
    Expr out = pf.base.apply_to_function(e);
    out = out + pf.eta1_x * diff_partial(e, atoms::u_x());
    out = out + pf.eta1_t * diff_partial(e, atoms::u_t());
    out = out + pf.eta2_xx * diff_partial(e, atoms::u_xx());
    out = out + pf.eta2_xt * diff_partial(e, atoms::u_xt());
    out = out + pf.eta2_tt * diff_partial(e, atoms::u_tt());
    return out;
}

}  // namespace bsym
