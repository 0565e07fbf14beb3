#include "bsym/expr.hpp"

#include <cmath>
#include <numeric>

#include "bsym/errors.hpp"

namespace bsym {

namespace {

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
    Monomial out;
    auto it = a.factors.begin();
    auto jt = b.factors.begin();
    while (it != a.factors.end() && jt != b.factors.end()) {
        int c = compare(it->first, jt->first);
        if (c < 0) {
            ++it;
        } else if (c > 0) {
            ++jt;
        } else {
            out.factors.emplace_back(it->first, std::min(it->second, jt->second));
            ++it;
            ++jt;
        }
    }
    return out;
}

}  // namespace

Rational Expr::rational_value() const {
    if (!is_constant()) throw InvariantViolationError("expression is not a rational constant");
    return num_.constant_value() / den_.constant_value();
}

Expr::Expr(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

void Expr::reduce() {
    if (den_.is_zero()) throw ZeroDenominatorError();
    if (num_.is_zero()) {
        den_ = Poly(Rational(1));
        return;
    }
    Monomial common = monomial_gcd(num_.monomial_content(), den_.monomial_content());
    if (!common.is_one()) {
        num_ = num_.divided_by_monomial(common);
        den_ = den_.divided_by_monomial(common);
    }
    if (!den_.is_constant() && !num_.is_constant()) {
        if (auto q = Poly::exact_divide(num_, den_)) {
            num_ = std::move(*q);
            den_ = Poly(Rational(1));
        } else if (auto q2 = Poly::exact_divide(den_, num_)) {
            num_ = Poly(Rational(1));
            den_ = std::move(*q2);
        } else {
            // Content reduction when the denominator is univariate: divide
            // out the gcd of the denominator with every coefficient of the
            // numerator grouped over that variable.
            auto den_atoms = den_.atoms();
            if (den_atoms.size() == 1) {
                const Atom v = *den_atoms.begin();
                std::map<Monomial, Poly, MonomialLess> groups;
                for (auto& [m, c] : num_.terms()) {
                    int k = m.exponent_of(v);
                    Monomial rest = *m.divided_by(Monomial::of(v, k));
                    groups[rest].add_term(Monomial::of(v, k), c);
                }
                Poly g = den_;
                for (auto& [rest, pv] : groups) {
                    g = univariate_gcd(g, pv, v);
                    if (g.is_constant()) break;
                }
                if (!g.is_constant()) {
                    auto qn = Poly::exact_divide(num_, g);
                    auto qd = Poly::exact_divide(den_, g);
                    if (!qn || !qd) throw InvariantViolationError("gcd does not divide");
                    num_ = std::move(*qn);
                    den_ = std::move(*qd);
                }
            }
        }
    }
    if (den_.is_constant()) {
        Rational d = den_.constant_value();
        num_ = num_.scaled(1 / d);
        den_ = Poly(Rational(1));
        return;
    }
    Rational lead = den_.leading().second;
    if (lead != 1) {
        Rational inv = Rational(1) / lead;
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

Expr Expr::operator-() const {
    Expr out;
    out.num_ = -num_;
    out.den_ = den_;
    return out;
}

Expr Expr::operator+(const Expr& o) const {
    // denominators are canonical, so structural equality catches the very
    // common shared-denominator case
    if (den_ == o.den_) return Expr(num_ + o.num_, den_);
    return Expr(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Expr Expr::operator-(const Expr& o) const { return *this + (-o); }

Expr Expr::operator*(const Expr& o) const { return Expr(num_ * o.num_, den_ * o.den_); }

Expr Expr::operator/(const Expr& o) const {
    if (o.is_zero()) throw ZeroDenominatorError();
    return Expr(num_ * o.den_, den_ * o.num_);
}

Expr Expr::pow(int e) const {
    if (e >= 0) return Expr(num_.pow(e), den_.pow(e));
    if (is_zero()) throw ZeroDenominatorError();
    return Expr(den_.pow(-e), num_.pow(-e));
}

bool Expr::equals(const Expr& o) const {
    return (num_ * o.den_ - o.num_ * den_).is_zero();
}

std::set<Atom> Expr::atoms() const {
    std::set<Atom> out = num_.atoms();
    auto d = den_.atoms();
    out.insert(d.begin(), d.end());
    return out;
}

bool Expr::contains_atom(const Atom& a) const {
    return num_.contains_atom(a) || den_.contains_atom(a);
}

bool Expr::contains_atom_if(const std::function<bool(const Atom&)>& pred) const {
    return num_.contains_atom_if(pred) || den_.contains_atom_if(pred);
}

int Expr::max_jet_order() const {
    int order = 0;
    for (const Atom& a : atoms())
        if (a.kind == Atom::Kind::Jet) order = std::max(order, a.jet_order());
    return order;
}

Expr normalize(const Expr& e) { return Expr(e.num(), e.den()); }

// ---------------------------------------------------------------------------
// differentiation

namespace {

bool is_diff_variable(const Atom& v) {
    return v.kind == Atom::Kind::Coord || v.kind == Atom::Kind::Jet ||
           v.kind == Atom::Kind::Param;
}

Expr atom_derivative(const Atom& a, const Atom& v) {
    if (a == v) return Expr::one();
    switch (a.kind) {
        case Atom::Kind::Coord:
        case Atom::Kind::Jet:
        case Atom::Kind::Param:
            return Expr::zero();
        case Atom::Kind::Fn: {
            if (v.kind != Atom::Kind::Coord) return Expr::zero();
            for (std::size_t i = 0; i < a.args.size(); ++i) {
                if (a.args[i].tag == FnArg::Tag::Coord && a.args[i].coord == v.coord) {
                    Atom bumped = a;
                    bumped.deriv[i] += 1;
                    return Expr(bumped);
                }
            }
            return Expr::zero();
        }
        case Atom::Kind::Pow: {
            if (v.is_coord(Coordinate::U))
                return Expr(Atom::make_param(a.name)) * Expr(a) / Expr(atoms::u());
            if (v.kind == Atom::Kind::Param && v.name == a.name)
                return Expr(Atom::make_log_u()) * Expr(a);
            return Expr::zero();
        }
        case Atom::Kind::Exp: {
            if (v.is_coord(Coordinate::U)) {
                Expr c(a.coeff);
                if (!a.name.empty()) c = c * Expr(Atom::make_param(a.name));
                return c * Expr(a);
            }
            if (v.kind == Atom::Kind::Param && !a.name.empty() && v.name == a.name)
                return Expr(a.coeff) * Expr(atoms::u()) * Expr(a);
            return Expr::zero();
        }
        case Atom::Kind::Log:
            if (v.is_coord(Coordinate::U)) return Expr::one() / Expr(atoms::u());
            return Expr::zero();
        case Atom::Kind::Root:
            if (v.is_coord(Coordinate::U))
                return Expr(Rational(1, a.root_den)) * Expr(a).pow(1 - a.root_den);
            return Expr::zero();
    }
    return Expr::zero();
}

Expr diff_poly(const Poly& p, const Atom& v) {
    Expr out;
    for (auto& [m, c] : p.terms()) {
        for (std::size_t i = 0; i < m.factors.size(); ++i) {
            const auto& [a, e] = m.factors[i];
            Expr da = atom_derivative(a, v);
            if (da.is_zero()) continue;
            Monomial rest;
            rest.factors = m.factors;
            if (e == 1)
                rest.factors.erase(rest.factors.begin() + static_cast<long>(i));
            else
                rest.factors[i].second -= 1;
            Poly base;
            base.add_term(rest, c * e);
            out = out + Expr(base) * da;
        }
    }
    return out;
}

}  // namespace

Expr diff_partial(const Expr& e, const Atom& v) {
    if (!is_diff_variable(v))
        throw InvariantViolationError("diff_partial variable must be a coordinate, jet, or parameter");
    Expr dn = diff_poly(e.num(), v);
    if (e.den().is_constant()) {
        // den has been normalized to 1
        return dn;
    }
    Expr dd = diff_poly(e.den(), v);
    Expr den(e.den());
    return (dn * den - Expr(e.num()) * dd) / (den * den);
}

Expr total_derivative(const Expr& e, Coordinate i) {
    if (i == Coordinate::U)
        throw InvariantViolationError("total derivative direction must be x or t");
    Expr out = diff_partial(e, Atom::make_coord(i));
    Expr du = diff_partial(e, atoms::u());
    if (!du.is_zero()) {
        Atom first = i == Coordinate::X ? atoms::u_x() : atoms::u_t();
        out = out + Expr(first) * du;
    }
    for (const Atom& a : e.atoms()) {
        if (a.kind != Atom::Kind::Jet) continue;
        Expr da = diff_partial(e, a);
        if (da.is_zero()) continue;
        Atom bumped = Atom::make_jet(a.jet_x + (i == Coordinate::X ? 1 : 0),
                                     a.jet_t + (i == Coordinate::T ? 1 : 0));
        out = out + Expr(bumped) * da;
    }
    return out;
}

// ---------------------------------------------------------------------------
// substitution

namespace {

Atom rewrite_fn_args(const Atom& a, const SubstitutionMap& rules) {
    if (a.kind != Atom::Kind::Fn) return a;
    Atom out = a;
    bool changed = false;
    for (auto& arg : out.args) {
        if (arg.tag != FnArg::Tag::Coord) continue;
        auto it = rules.find(Atom::make_coord(arg.coord));
        if (it == rules.end()) continue;
        const Expr& r = it->second;
        if (r.is_constant()) {
            arg = FnArg::of(r.rational_value());
        } else if (r.den().is_constant() && r.num().term_count() == 1 &&
                   r.num().leading().second == 1 && r.num().leading().first.factors.size() == 1 &&
                   r.num().leading().first.factors[0].second == 1 &&
                   r.num().leading().first.factors[0].first.kind == Atom::Kind::Coord) {
            arg = FnArg::of(r.num().leading().first.factors[0].first.coord);
        } else {
            arg = FnArg::of_opaque(r.str());
        }
        changed = true;
    }
    return changed ? out : a;
}

Expr apply_rules_once(const Expr& e, const SubstitutionMap& rules) {
    bool u_is_key = rules.count(atoms::u()) > 0;
    auto map_poly = [&](const Poly& p) -> Expr {
        Expr acc;
        for (auto& [m, c] : p.terms()) {
            Expr term{c};
            for (auto& [a, exp] : m.factors) {
                auto it = rules.find(a);
                if (it != rules.end()) {
                    term = term * it->second.pow(exp);
                    continue;
                }
                if (u_is_key && (a.kind == Atom::Kind::Log || a.kind == Atom::Kind::Exp ||
                                 a.kind == Atom::Kind::Pow))
                    throw Error("substitution for u under " + a.str() + " is not supported");
                term = term * Expr(rewrite_fn_args(a, rules)).pow(exp);
            }
            acc = acc + term;
        }
        return acc;
    };
    Expr n = map_poly(e.num());
    if (e.den().is_constant()) return n;
    return n / map_poly(e.den());
}

}  // namespace

Expr substitute(const Expr& e, const SubstitutionMap& rules) {
    if (rules.empty()) return e;
    // Resolve rules against each other so one simultaneous pass suffices.
    // Cycles among distinct keys are an error; a key occurring in its own
    // right side is left alone (single-pass semantics).
    SubstitutionMap resolved;
    std::map<Atom, int, AtomLess> state;  // 0 new, 1 visiting, 2 done
    std::function<void(const Atom&)> visit = [&](const Atom& key) {
        state[key] = 1;
        const Expr& rhs = rules.at(key);
        SubstitutionMap deps;
        for (const Atom& a : rhs.atoms()) {
            if (a == key) continue;
            auto it = rules.find(a);
            if (it == rules.end()) continue;
            int s = state.count(a) ? state[a] : 0;
            if (s == 1) throw CycleError("cyclic substitution rules through '" + a.str() + "'");
            if (s == 0) visit(a);
            deps.emplace(a, resolved.at(a));
        }
        resolved.emplace(key, deps.empty() ? rhs : apply_rules_once(rhs, deps));
        state[key] = 2;
    };
    for (auto& [key, rhs] : rules)
        if (!state.count(key)) visit(key);
    return apply_rules_once(e, resolved);
}

Expr impose_root_relation(const Expr& e) {
    std::set<int> dens;
    for (const Atom& a : e.atoms())
        if (a.kind == Atom::Kind::Root) dens.insert(a.root_den);
    if (dens.empty()) return e;
    int l = 1;
    for (int d : dens) l = static_cast<int>(std::lcm(l, d));
    SubstitutionMap rules;
    Atom prim = Atom::make_root_u(l);
    rules.emplace(atoms::u(), Expr(prim).pow(l));
    for (int d : dens)
        if (d != l) rules.emplace(Atom::make_root_u(d), Expr(prim).pow(l / d));
    return substitute(e, rules);
}

// ---------------------------------------------------------------------------
// collection

std::map<Monomial, Expr, MonomialLess> collect_if(const Expr& e,
                                                  const std::function<bool(const Atom&)>& pred) {
    if (e.den().contains_atom_if(pred))
        throw NonPolynomialError("expression is not polynomial in the collection basis: " + e.str());
    std::map<Monomial, Poly, MonomialLess> groups;
    for (auto& [m, c] : e.num().terms()) {
        Monomial key, rest;
        for (auto& [a, exp] : m.factors)
            (pred(a) ? key : rest).factors.emplace_back(a, exp);
        groups[key].add_term(rest, c);
    }
    std::map<Monomial, Expr, MonomialLess> out;
    for (auto& [key, poly] : groups) out.emplace(key, Expr(poly, e.den()));
    return out;
}

std::map<Monomial, Expr, MonomialLess> collect(const Expr& e, const std::set<Atom>& basis) {
    return collect_if(e, [&](const Atom& a) { return basis.count(a) > 0; });
}

// ---------------------------------------------------------------------------
// numeric evaluation

namespace {

double eval_atom(const Atom& a, const EvalPoint& point, const GImpl* g_impl) {
    auto it = point.find(a);
    if (it != point.end()) return it->second;
    auto u_value = [&]() -> double {
        auto uit = point.find(atoms::u());
        if (uit == point.end()) throw MissingAssignmentError("u");
        return uit->second;
    };
    switch (a.kind) {
        case Atom::Kind::Pow: {
            auto pit = point.find(Atom::make_param(a.name));
            if (pit == point.end()) throw MissingAssignmentError(a.name);
            double u = u_value();
            if (u <= 0.0) throw NumericError("u^p needs u > 0");
            return std::pow(u, pit->second);
        }
        case Atom::Kind::Exp: {
            double c = a.coeff.get_d();
            if (!a.name.empty()) {
                auto pit = point.find(Atom::make_param(a.name));
                if (pit == point.end()) throw MissingAssignmentError(a.name);
                c *= pit->second;
            }
            return std::exp(c * u_value());
        }
        case Atom::Kind::Log: {
            double u = u_value();
            if (u <= 0.0) throw NumericError("log(u) needs u > 0");
            return std::log(u);
        }
        case Atom::Kind::Root: {
            double u = u_value();
            if (u < 0.0) throw NumericError("u^(1/d) needs u >= 0");
            return std::pow(u, 1.0 / a.root_den);
        }
        case Atom::Kind::Fn: {
            if (a.name == "g" && g_impl) {
                double at;
                if (a.args[0].tag == FnArg::Tag::Coord && a.args[0].coord == Coordinate::U)
                    at = u_value();
                else if (a.args[0].tag == FnArg::Tag::Value)
                    at = a.args[0].value.get_d();
                else
                    throw MissingAssignmentError(a.str());
                int k = a.deriv[0];
                if (k == 0 && g_impl->value) return g_impl->value(at);
                if (k == 1 && g_impl->d1) return g_impl->d1(at);
                if (k == 2 && g_impl->d2) return g_impl->d2(at);
                throw MissingAssignmentError(a.str());
            }
            throw MissingAssignmentError(a.str());
        }
        default:
            throw MissingAssignmentError(a.str());
    }
}

double eval_poly(const Poly& p, const EvalPoint& point, const GImpl* g_impl) {
    double sum = 0.0;
    for (auto& [m, c] : p.terms()) {
        double term = c.get_d();
        for (auto& [a, e] : m.factors) {
            double v = eval_atom(a, point, g_impl);
            for (int k = 0; k < e; ++k) term *= v;
        }
        sum += term;
    }
    return sum;
}

}  // namespace

double eval_numeric(const Expr& e, const EvalPoint& point, const GImpl* g_impl) {
    double n = eval_poly(e.num(), point, g_impl);
    double d = eval_poly(e.den(), point, g_impl);
    if (d == 0.0) throw NumericError("division by numeric zero");
    double v = n / d;
    if (!std::isfinite(v)) throw NumericError("non-finite value");
    return v;
}

// ---------------------------------------------------------------------------
// printing

namespace {

std::string print_power(const Atom& a, int e, bool tex) {
    if (a.kind == Atom::Kind::Root) {
        // u^(k/d) in lowest terms; collapses to a plain power of u when the
        // exponent is integral
        int d = a.root_den;
        int g = std::gcd(e, d);
        int k = e / g, dd = d / g;
        if (dd == 1) {
            std::string base = tex ? "u" : "u";
            if (k == 1) return base;
            return tex ? "u^{" + std::to_string(k) + "}" : "u^" + std::to_string(k);
        }
        return tex ? "u^{" + std::to_string(k) + "/" + std::to_string(dd) + "}"
                   : "u^(" + std::to_string(k) + "/" + std::to_string(dd) + ")";
    }
    std::string base = tex ? a.latex() : a.str();
    if (e == 1) return base;
    bool needs_parens = !tex && base.find('^') != std::string::npos;
    if (needs_parens) base = "(" + base + ")";
    return tex ? base + "^{" + std::to_string(e) + "}" : base + "^" + std::to_string(e);
}

std::string print_monomial(const Monomial& m, bool tex) {
    std::string out;
    for (auto& [a, e] : m.factors) {
        if (!out.empty()) out += tex ? " " : "*";
        out += print_power(a, e, tex);
    }
    return out;
}

std::string print_rational(const Rational& q, bool tex) {
    if (!tex || is_integer(q)) return to_string(q);
    return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

std::string print_poly(const Poly& p, bool tex) {
    if (p.is_zero()) return "0";
    std::string out;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        Rational abs_c = sgn(c) < 0 ? Rational(-c) : c;
        std::string body;
        if (m.is_one())
            body = print_rational(abs_c, tex);
        else if (abs_c == 1)
            body = print_monomial(m, tex);
        else
            body = print_rational(abs_c, tex) + (tex ? " " : "*") + print_monomial(m, tex);
        if (out.empty())
            out = (sgn(c) < 0 ? "-" : "") + body;
        else
            out += (sgn(c) < 0 ? " - " : " + ") + body;
    }
    return out;
}

bool den_needs_parens(const Poly& den) {
    if (den.term_count() != 1) return true;
    const auto& [m, c] = den.leading();
    if (c != 1) return true;
    return m.factors.size() != 1;
}

}  // namespace

std::string Expr::str() const {
    std::string n = print_poly(num_, false);
    if (den_.is_constant()) return n;
    if (num_.term_count() > 1) n = "(" + n + ")";
    std::string d = print_poly(den_, false);
    if (den_needs_parens(den_)) d = "(" + d + ")";
    return n + "/" + d;
}

std::string Expr::latex() const {
    if (den_.is_constant()) return print_poly(num_, true);
    return "\\frac{" + print_poly(num_, true) + "}{" + print_poly(den_, true) + "}";
}

}  // namespace bsym
