#include "bsym/atom.hpp"

#include <array>

#include "bsym/errors.hpp"

namespace bsym {

const char* coordinate_name(Coordinate c) {
    switch (c) {
        case Coordinate::X: return "x";
        case Coordinate::T: return "t";
        case Coordinate::U: return "u";
    }
    return "?";
}

int compare(const FnArg& a, const FnArg& b) {
    if (a.tag != b.tag) return a.tag < b.tag ? -1 : 1;
    switch (a.tag) {
        case FnArg::Tag::Coord:
            if (a.coord != b.coord) return a.coord < b.coord ? -1 : 1;
            return 0;
        case FnArg::Tag::Value:
            return cmp(a.value, b.value);
        case FnArg::Tag::Opaque:
            return a.opaque.compare(b.opaque);
    }
    return 0;
}

Atom Atom::make_coord(Coordinate c) {
    Atom a;
    a.kind = Kind::Coord;
    a.coord = c;
    return a;
}

Atom Atom::make_jet(int jx, int jt) {
    if (jx < 0 || jt < 0 || jx + jt < 1)
        throw InvariantViolationError("jet index must be a nonempty multiset");
    if (jx + jt > 8) throw JetOrderError("jet order " + std::to_string(jx + jt) + " exceeds kernel bound 8");
    Atom a;
    a.kind = Kind::Jet;
    a.jet_x = jx;
    a.jet_t = jt;
    return a;
}

Atom Atom::make_param(std::string name) {
    Atom a;
    a.kind = Kind::Param;
    a.name = std::move(name);
    return a;
}

Atom Atom::make_fn(std::string name, std::vector<FnArg> args, std::vector<int> deriv) {
    if (args.size() != deriv.size())
        throw InvariantViolationError("function derivative multi-index must match argument list");
    for (int d : deriv)
        if (d < 0) throw InvariantViolationError("negative derivative order");
    Atom a;
    a.kind = Kind::Fn;
    a.name = std::move(name);
    a.args = std::move(args);
    a.deriv = std::move(deriv);
    return a;
}

Atom Atom::make_pow_u(std::string exponent_param) {
    Atom a;
    a.kind = Kind::Pow;
    a.name = std::move(exponent_param);
    return a;
}

Atom Atom::make_exp_u(const Rational& q, std::string param) {
    if (sgn(q) == 0) throw InvariantViolationError("exp atom with zero coefficient");
    Atom a;
    a.kind = Kind::Exp;
    a.coeff = q;
    a.name = std::move(param);
    return a;
}

Atom Atom::make_log_u() {
    Atom a;
    a.kind = Kind::Log;
    return a;
}

Atom Atom::make_root_u(int den) {
    if (den < 2) throw InvariantViolationError("root atom needs denominator >= 2");
    Atom a;
    a.kind = Kind::Root;
    a.root_den = den;
    return a;
}

bool Atom::depends_on_u() const {
    switch (kind) {
        case Kind::Coord: return coord == Coordinate::U;
        case Kind::Pow:
        case Kind::Exp:
        case Kind::Log:
        case Kind::Root: return true;
        case Kind::Fn:
            for (std::size_t i = 0; i < args.size(); ++i)
                if (args[i].tag == FnArg::Tag::Coord && args[i].coord == Coordinate::U) return true;
            return false;
        default: return false;
    }
}

namespace {

template <class T>
int cmp_scalar(const T& a, const T& b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

}  // namespace

int compare(const Atom& a, const Atom& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    switch (a.kind) {
        case Atom::Kind::Coord:
            return cmp_scalar(a.coord, b.coord);
        case Atom::Kind::Jet:
            if (int c = cmp_scalar(a.jet_order(), b.jet_order())) return c;
            return cmp_scalar(a.jet_t, b.jet_t);
        case Atom::Kind::Param:
            return a.name.compare(b.name);
        case Atom::Kind::Fn: {
            if (int c = a.name.compare(b.name)) return c;
            if (int c = cmp_scalar(a.args.size(), b.args.size())) return c;
            for (std::size_t i = 0; i < a.args.size(); ++i)
                if (int c = compare(a.args[i], b.args[i])) return c;
            if (int c = cmp_scalar(a.deriv.size(), b.deriv.size())) return c;
            for (std::size_t i = 0; i < a.deriv.size(); ++i)
                if (int c = cmp_scalar(a.deriv[i], b.deriv[i])) return c;
            return 0;
        }
        case Atom::Kind::Pow:
            return a.name.compare(b.name);
        case Atom::Kind::Exp:
            if (int c = a.name.compare(b.name)) return c;
            return cmp(a.coeff, b.coeff);
        case Atom::Kind::Log:
            return 0;
        case Atom::Kind::Root:
            return cmp_scalar(a.root_den, b.root_den);
    }
    return 0;
}

namespace {

std::string fn_suffix(const Atom& a) {
    // phi-style single-argument functions of t print primes; (x,t) functions
    // print an index suffix like _xt.
    std::string out;
    bool primes = a.args.size() == 1 && a.args[0].tag == FnArg::Tag::Coord &&
                  a.args[0].coord == Coordinate::T;
    int total = 0;
    for (int d : a.deriv) total += d;
    if (total == 0) return out;
    if (primes) {
        out.assign(static_cast<std::size_t>(a.deriv[0]), '\'');
        return out;
    }
    out = "_";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (a.args[i].tag != FnArg::Tag::Coord) continue;
        for (int k = 0; k < a.deriv[i]; ++k) out += coordinate_name(a.args[i].coord);
    }
    return out;
}

std::string rational_factor(const Rational& q) {
    std::string s = to_string(q);
    if (s.find('/') != std::string::npos || sgn(q) < 0) return "(" + s + ")";
    return s;
}

}  // namespace

std::string Atom::str() const {
    switch (kind) {
        case Kind::Coord:
            return coordinate_name(coord);
        case Kind::Jet: {
            std::string s = "u_";
            s.append(static_cast<std::size_t>(jet_x), 'x');
            s.append(static_cast<std::size_t>(jet_t), 't');
            return s;
        }
        case Kind::Param:
            return name;
        case Kind::Fn: {
            if (name == "g") {
                std::string s = "g";
                s.append(static_cast<std::size_t>(deriv.empty() ? 0 : deriv[0]), '\'');
                if (!args.empty() && args[0].tag != FnArg::Tag::Coord) {
                    s += "(";
                    s += args[0].tag == FnArg::Tag::Value ? to_string(args[0].value) : args[0].opaque;
                    s += ")";
                }
                return s;
            }
            return name + fn_suffix(*this);
        }
        case Kind::Pow:
            return "u^" + name;
        case Kind::Exp: {
            std::string arg;
            if (name.empty()) {
                arg = coeff == 1 ? "u" : rational_factor(coeff) + "*u";
            } else {
                arg = coeff == 1 ? name + "*u" : rational_factor(coeff) + "*" + name + "*u";
            }
            return "exp(" + arg + ")";
        }
        case Kind::Log:
            return "log(u)";
        case Kind::Root:
            return "u^(1/" + std::to_string(root_den) + ")";
    }
    return "?";
}

std::string Atom::latex() const {
    static const std::array<std::pair<const char*, const char*>, 6> greek = {{
        {"xi", "\\xi"}, {"phi", "\\phi"}, {"alpha", "\\alpha"},
        {"beta", "\\beta"}, {"nu", "\\nu"}, {"eps", "\\varepsilon"},
    }};
    auto tex_name = [&](const std::string& n) -> std::string {
        for (auto& [plain, tex] : greek)
            if (n == plain) return tex;
        if (n.size() > 1 && n[0] == 'a' && std::isdigit(static_cast<unsigned char>(n[1])))
            return "a_{" + n.substr(1) + "}";
        return n;
    };
    switch (kind) {
        case Kind::Coord:
            return coordinate_name(coord);
        case Kind::Jet: {
            std::string s = "u_{";
            s.append(static_cast<std::size_t>(jet_x), 'x');
            s.append(static_cast<std::size_t>(jet_t), 't');
            return s + "}";
        }
        case Kind::Param:
            return tex_name(name);
        case Kind::Fn: {
            if (name == "g") {
                std::string s = "g";
                s.append(static_cast<std::size_t>(deriv.empty() ? 0 : deriv[0]), '\'');
                if (!args.empty() && args[0].tag != FnArg::Tag::Coord)
                    s += "(" + (args[0].tag == FnArg::Tag::Value ? to_string(args[0].value)
                                                                 : args[0].opaque) + ")";
                return s;
            }
            std::string base = tex_name(name);
            std::string suf = fn_suffix(*this);
            if (suf.empty()) return base;
            if (suf[0] == '_') return base + "_{" + suf.substr(1) + "}";
            return base + suf;  // primes
        }
        case Kind::Pow:
            return "u^{" + name + "}";
        case Kind::Exp: {
            std::string arg;
            if (!name.empty()) {
                arg = (coeff == 1 ? "" : to_string(coeff)) + tex_name(name) + " u";
            } else {
                arg = (coeff == 1 ? "" : to_string(coeff)) + std::string("u");
            }
            return "e^{" + arg + "}";
        }
        case Kind::Log:
            return "\\log{u}";
        case Kind::Root:
            return "u^{1/" + std::to_string(root_den) + "}";
    }
    return "?";
}

namespace atoms {

const Atom& x() { static const Atom a = Atom::make_coord(Coordinate::X); return a; }
const Atom& t() { static const Atom a = Atom::make_coord(Coordinate::T); return a; }
const Atom& u() { static const Atom a = Atom::make_coord(Coordinate::U); return a; }
const Atom& u_x() { static const Atom a = Atom::make_jet(1, 0); return a; }
const Atom& u_t() { static const Atom a = Atom::make_jet(0, 1); return a; }
const Atom& u_xx() { static const Atom a = Atom::make_jet(2, 0); return a; }
const Atom& u_xt() { static const Atom a = Atom::make_jet(1, 1); return a; }
const Atom& u_tt() { static const Atom a = Atom::make_jet(0, 2); return a; }
const Atom& nu() { static const Atom a = Atom::make_param("nu"); return a; }

Atom g(int deriv_order) {
    return Atom::make_fn("g", {FnArg::of(Coordinate::U)}, {deriv_order});
}

Atom xi(int dx, int dt) {
    return Atom::make_fn("xi", {FnArg::of(Coordinate::X), FnArg::of(Coordinate::T)}, {dx, dt});
}

Atom phi(int dt) {
    return Atom::make_fn("phi", {FnArg::of(Coordinate::T)}, {dt});
}

Atom alpha(int dx, int dt) {
    return Atom::make_fn("alpha", {FnArg::of(Coordinate::X), FnArg::of(Coordinate::T)}, {dx, dt});
}

Atom beta(int dx, int dt) {
    return Atom::make_fn("beta", {FnArg::of(Coordinate::X), FnArg::of(Coordinate::T)}, {dx, dt});
}

Atom ansatz_param(int i) { return Atom::make_param("a" + std::to_string(i)); }

}  // namespace atoms

}  // namespace bsym
