#include "bsym/determining.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "bsym/errors.hpp"
#include "bsym/parse.hpp"

namespace bsym {

PDESpec::PDESpec(Expr nu_, std::optional<Expr> g_) : nu(std::move(nu_)), g(std::move(g_)) {
    if (nu.is_constant()) {
        if (sgn(nu.rational_value()) <= 0)
            throw InvariantViolationError("nu must be positive");
    } else if (!(nu == Expr(atoms::nu()))) {
        throw InvariantViolationError("nu must be a positive rational or the symbol nu");
    }
    if (g) {
        if (g->contains_atom_if([](const Atom& a) {
                return a.kind == Atom::Kind::Jet ||
                       (a.kind == Atom::Kind::Coord && a.coord != Coordinate::U) ||
                       (a.kind == Atom::Kind::Fn);
            }))
            throw InvariantViolationError("g must be an expression in u alone");
        if (diff_partial(*g, atoms::u()).is_zero())
            throw InvariantViolationError("g must satisfy g'(u) != 0");
    }
}

Expr burgers_operator(const PDESpec& pde) {
    return pde.nu * Expr(atoms::u_xx()) - Expr(atoms::u_t()) - pde.g_expr() * Expr(atoms::u_x());
}

bool is_unknown_fn(const Atom& a) { return a.kind == Atom::Kind::Fn && a.name != "g"; }

VectorField generator_ansatz() {
    return VectorField(Expr(atoms::xi()), Expr(atoms::phi()),
                       Expr(atoms::alpha()) * Expr(atoms::u()) + Expr(atoms::beta()));
}

Expr invariance_residual(const PDESpec& pde, const VectorField& vf) {
    Expr residual = apply(prolong2(vf), burgers_operator(pde));
    // evolution rule u_t = nu*u_xx - g*u_x and its differential consequences
    Expr rhs = pde.nu * Expr(atoms::u_xx()) - pde.g_expr() * Expr(atoms::u_x());
    SubstitutionMap manifold;
    manifold.emplace(atoms::u_t(), rhs);
    if (residual.contains_atom(atoms::u_xt()))
        manifold.emplace(atoms::u_xt(), total_derivative(rhs, Coordinate::X));
    if (residual.contains_atom(atoms::u_tt()))
        manifold.emplace(atoms::u_tt(), total_derivative(rhs, Coordinate::T));
    residual = substitute(residual, manifold);
    return impose_root_relation(residual);
}

std::string DeterminingSystem::str() const {
    std::string out;
    for (auto& eq : equations) {
        out += eq.lhs.str() + " = 0";
        std::string src = eq.source.is_one() ? "1" : [&] {
            std::string s;
            for (auto& [a, e] : eq.source.factors) {
                if (!s.empty()) s += "*";
                s += a.str() + (e > 1 ? "^" + std::to_string(e) : "");
            }
            return s;
        }();
        out += "    [coefficient of " + src + "]\n";
    }
    return out;
}

std::string DeterminingSystem::latex() const {
    std::string out = "\\begin{align*}\n";
    for (auto& eq : equations) out += eq.lhs.latex() + " &= 0\\\\\n";
    out += "\\end{align*}\n";
    return out;
}

Json DeterminingSystem::to_json() const {
    Json eqs = Json::array();
    for (auto& eq : equations) {
        std::string src;
        if (eq.source.is_one()) {
            src = "1";
        } else {
            for (auto& [a, e] : eq.source.factors) {
                if (!src.empty()) src += "*";
                src += a.str() + (e > 1 ? "^" + std::to_string(e) : "");
            }
        }
        eqs.push_back(Json{{"equation", eq.lhs.str()}, {"latex", eq.lhs.latex()}, {"monomial", src}});
    }
    return Json{{"equations", eqs}};
}

namespace {

// scale so the leading numerator coefficient is one
Expr canonical_scale(const Expr& e) {
    if (e.is_zero()) return e;
    Rational lead = e.num().leading().second;
    return e * Expr(Rational(1) / lead);
}

std::vector<Atom> sorted_unknowns(const std::vector<const DeterminingSystem*>& systems) {
    std::set<Atom> set;
    for (const DeterminingSystem* s : systems)
        for (auto& eq : s->equations)
            for (const Atom& a : eq.lhs.atoms())
                if (is_unknown_fn(a)) set.insert(a);
    return {set.begin(), set.end()};
}

// Row of coefficients of a linear homogeneous expression over the unknown
// function atoms.
std::vector<Expr> linear_row(const Expr& eq, const std::vector<Atom>& columns) {
    auto parts = collect_if(eq, is_unknown_fn);
    std::vector<Expr> row(columns.size(), Expr::zero());
    for (auto& [m, coeff] : parts) {
        if (m.is_one()) {
            if (!coeff.is_zero())
                throw InvariantViolationError("determining equation is not homogeneous: " + eq.str());
            continue;
        }
        if (m.factors.size() != 1 || m.factors[0].second != 1)
            throw InvariantViolationError("determining equation is not linear: " + eq.str());
        auto it = std::lower_bound(columns.begin(), columns.end(), m.factors[0].first,
                                   [](const Atom& a, const Atom& b) { return compare(a, b) < 0; });
        if (it == columns.end() || !(*it == m.factors[0].first))
            throw AlphabetMismatchError("unknown atom outside the shared alphabet: " +
                                        m.factors[0].first.str());
        row[static_cast<std::size_t>(it - columns.begin())] = coeff;
    }
    return row;
}

ExprMat system_matrix(const DeterminingSystem& s, const std::vector<Atom>& columns) {
    ExprMat m(s.equations.size(), columns.size());
    for (std::size_t i = 0; i < s.equations.size(); ++i) {
        auto row = linear_row(s.equations[i].lhs, columns);
        for (std::size_t j = 0; j < columns.size(); ++j) m.at(i, j) = row[j];
    }
    return m;
}

}  // namespace

DeterminingSystem extract_determining(const PDESpec& pde) {
    Expr residual = invariance_residual(pde, generator_ansatz());
    if (residual.contains_atom_if(
            [](const Atom& a) { return a.kind == Atom::Kind::Jet && a.jet_t > 0; }))
        throw NonPolynomialError("time jets survived the solution-manifold elimination");
    auto parts = collect_if(residual, [](const Atom& a) { return a.kind == Atom::Kind::Jet; });

    std::vector<DeterminingEquation> raw;
    for (auto& [mono, coeff] : parts)
        if (!coeff.is_zero()) raw.push_back({coeff, mono});

    // One differential-reduction pass: formal x/t-derivatives of the raw
    // equations are themselves determining equations; any combination that
    // pins a single unknown derivative to zero (xi_xx from the x-derivative
    // of the u_xx coefficient) is substituted back into the raw system.
    std::vector<Expr> prolonged;
    for (auto& eq : raw)
        for (Coordinate c : {Coordinate::X, Coordinate::T}) {
            Expr d = diff_partial(eq.lhs, Atom::make_coord(c));
            if (!d.is_zero()) prolonged.push_back(d);
        }
    DeterminingSystem all;
    for (auto& eq : raw) all.equations.push_back(eq);
    for (auto& e : prolonged) all.equations.push_back({e, Monomial::one()});
    std::vector<Atom> columns = sorted_unknowns({&all});
    ExprMat m = system_matrix(all, columns);
    m.rref();
    SubstitutionMap facts;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::size_t nonzero = 0, at = 0;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero()) {
                ++nonzero;
                at = j;
            }
        if (nonzero == 1) facts.emplace(columns[at], Expr::zero());
    }

    DeterminingSystem out;
    std::vector<std::string> seen;
    for (auto& eq : raw) {
        Expr reduced = facts.empty() ? eq.lhs : substitute(eq.lhs, facts);
        if (reduced.is_zero()) continue;
        Expr canon = canonical_scale(reduced);
        std::string key = canon.str();
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(key);
        out.equations.push_back({canon, eq.source});
    }
    return out;
}

DeterminingSystem reference_determining_system() {
    DeterminingSystem s;
    s.equations.push_back({parse_expr("phi' - 2*xi_x"), Monomial::of(atoms::u_xx())});
    s.equations.push_back(
        {parse_expr("u*alpha_t - nu*u*alpha_xx + u*g*alpha_x + beta_t - nu*beta_xx + g*beta_x"),
         Monomial::one()});
    s.equations.push_back(
        {parse_expr("xi_t + 2*nu*alpha_x - g*xi_x - u*g'*alpha - g'*beta"),
         Monomial::of(atoms::u_x())});
    return s;
}

Json EquivalenceWitness::to_json() const {
    Json j;
    j["equivalent"] = equivalent;
    Json cols = Json::array();
    for (const Atom& a : alphabet) cols.push_back(a.str());
    j["alphabet"] = cols;
    auto mat = [](const ExprMat& m) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            Json row = Json::array();
            for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
            rows.push_back(row);
        }
        return rows;
    };
    j["first_in_second"] = mat(first_in_second);
    j["second_in_first"] = mat(second_in_first);
    return j;
}

namespace {

// Expresses each row of `rows` in terms of the originals behind the reduced
// matrix `red` (with transform `t`): returns coefficients, or nullopt if
// some row falls outside the span.
std::optional<ExprMat> express_rows(const ExprMat& rows, const ExprMat& red,
                                    const std::vector<std::size_t>& pivots, const ExprMat& t,
                                    std::size_t originals) {
    ExprMat out(rows.rows(), originals);
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        std::vector<Expr> residue(rows.cols());
        for (std::size_t j = 0; j < rows.cols(); ++j) residue[j] = rows.at(i, j);
        std::vector<Expr> combo(pivots.size(), Expr::zero());
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            Expr c = residue[pivots[k]];
            if (c.is_zero()) continue;
            combo[k] = c;
            for (std::size_t j = 0; j < rows.cols(); ++j)
                residue[j] = residue[j] - c * red.at(k, j);
        }
        for (std::size_t j = 0; j < rows.cols(); ++j)
            if (!residue[j].is_zero()) return std::nullopt;
        for (std::size_t k = 0; k < pivots.size(); ++k)
            for (std::size_t j = 0; j < originals; ++j)
                out.at(i, j) = out.at(i, j) + combo[k] * t.at(k, j);
    }
    return out;
}

}  // namespace

EquivalenceWitness equivalent_systems(const DeterminingSystem& a, const DeterminingSystem& b) {
    std::vector<Atom> cols_a = sorted_unknowns({&a});
    std::vector<Atom> cols_b = sorted_unknowns({&b});
    if (cols_a != cols_b)
        throw AlphabetMismatchError("systems use different unknown-function alphabets");

    EquivalenceWitness w;
    w.alphabet = cols_a;
    ExprMat ma = system_matrix(a, cols_a);
    ExprMat mb = system_matrix(b, cols_a);

    ExprMat ra = ma, rb = mb, ta, tb;
    std::vector<std::size_t> pa, pb;
    std::size_t rank_a = ra.rref(&ta, &pa);
    std::size_t rank_b = rb.rref(&tb, &pb);

    auto a_in_b = express_rows(ma, rb, pb, tb, b.equations.size());
    auto b_in_a = express_rows(mb, ra, pa, ta, a.equations.size());
    w.equivalent = rank_a == rank_b && a_in_b.has_value() && b_in_a.has_value();
    if (a_in_b) w.first_in_second = *a_in_b;
    if (b_in_a) w.second_in_first = *b_in_a;
    return w;
}

VerifyReport verify_symmetry(const PDESpec& pde, const VectorField& vf) {
    if (pde.abstract_g())
        throw InvariantViolationError("verify_symmetry needs a concrete g");
    Expr residual = invariance_residual(pde, vf);
    return {residual.is_zero(), residual};
}

// ---------------------------------------------------------------------------
// discovery

namespace {

bool is_ansatz_atom(const Atom& a) {
    if (a.kind != Atom::Kind::Param || a.name.size() < 2 || a.name[0] != 'a') return false;
    for (std::size_t i = 1; i < a.name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(a.name[i]))) return false;
    return true;
}

struct PolyAnsatz {
    Expr xi, phi, alpha, beta;
    std::vector<Atom> params;

    VectorField field() const {
        return VectorField(xi, phi, alpha * Expr(atoms::u()) + beta);
    }
};

PolyAnsatz build_poly_ansatz(int degree) {
    PolyAnsatz az;
    int next = 0;
    auto fresh = [&] {
        Atom a = atoms::ansatz_param(next++);
        az.params.push_back(a);
        return Expr(a);
    };
    auto xt_poly = [&] {
        Expr acc;
        for (int i = 0; i <= degree; ++i)
            for (int j = 0; i + j <= degree; ++j)
                acc = acc + fresh() * Expr(atoms::x()).pow(i) * Expr(atoms::t()).pow(j);
        return acc;
    };
    az.xi = xt_poly();
    Expr phi;
    for (int j = 0; j <= degree; ++j) phi = phi + fresh() * Expr(atoms::t()).pow(j);
    az.phi = phi;
    az.alpha = xt_poly();
    az.beta = xt_poly();
    return az;
}

}  // namespace

std::vector<SubstitutionMap> parameter_sample_maps(const Expr& g) {
    std::set<std::string> names;
    for (const Atom& a : g.atoms()) {
        if (a.kind == Atom::Kind::Param) names.insert(a.name);
        if (a.kind == Atom::Kind::Pow) names.insert(a.name);
        if (a.kind == Atom::Kind::Exp && !a.name.empty()) names.insert(a.name);
    }
    std::vector<SubstitutionMap> maps = {{}};
    if (names.empty()) return maps;
    for (const std::string& name : names) {
        std::vector<Rational> values;
        if (name == "p")
            values = {Rational(2), Rational(3), Rational(-1), Rational(1, 2)};
        else if (name == "b")
            values = {Rational(1), Rational(-2)};
        else
            throw Error("parameter sampling does not support '" + name + "'");
        std::vector<SubstitutionMap> expanded;
        for (const SubstitutionMap& base : maps) {
            for (const Rational& v : values) {
                SubstitutionMap rules = base;
                rules.emplace(Atom::make_param(name), Expr(v));
                for (const Atom& a : g.atoms()) {
                    if (a.kind == Atom::Kind::Pow && a.name == name) {
                        // u^v with v rational: integer exponent, or root atom
                        if (is_integer(v))
                            rules.emplace(a,
                                          Expr(atoms::u()).pow(static_cast<int>(v.get_num().get_si())));
                        else {
                            long den = v.get_den().get_si(), num = v.get_num().get_si();
                            rules.emplace(a, Expr(Atom::make_root_u(static_cast<int>(den)))
                                                 .pow(static_cast<int>(num)));
                        }
                    }
                    if (a.kind == Atom::Kind::Exp && a.name == name)
                        rules.emplace(a, Expr(Atom::make_exp_u(a.coeff * v)));
                }
                expanded.push_back(std::move(rules));
            }
        }
        maps = std::move(expanded);
    }
    return maps;
}

std::vector<VectorField> discover_symmetries(const PDESpec& pde, int degree) {
    if (degree < 0 || degree > 3)
        throw InvariantViolationError("ansatz degree must be between 0 and 3");
    PolyAnsatz az = build_poly_ansatz(degree);
    VectorField ansatz = az.field();

    std::vector<PDESpec> samples;
    if (pde.abstract_g()) {
        samples.push_back(pde);
    } else {
        for (const SubstitutionMap& rules : parameter_sample_maps(*pde.g))
            samples.emplace_back(pde.nu, substitute(*pde.g, rules));
    }

    // Linear homogeneous constraints on the ansatz parameters: one row per
    // monomial in everything that is not an ansatz parameter.
    std::vector<std::vector<Rational>> rows;
    for (const PDESpec& sample : samples) {
        Expr residual = invariance_residual(sample, ansatz);
        std::map<Monomial, std::vector<Rational>, MonomialLess> grouped;
        for (auto& [m, c] : residual.num().terms()) {
            Monomial key;
            int which = -1, a_degree = 0;
            for (auto& [atom, e] : m.factors) {
                if (is_ansatz_atom(atom)) {
                    a_degree += e;
                    for (std::size_t i = 0; i < az.params.size(); ++i)
                        if (az.params[i] == atom) which = static_cast<int>(i);
                } else {
                    key.factors.emplace_back(atom, e);
                }
            }
            if (a_degree != 1)
                throw InvariantViolationError("residual is not linear in the ansatz parameters");
            auto [it, inserted] =
                grouped.emplace(key, std::vector<Rational>(az.params.size(), Rational(0)));
            it->second[static_cast<std::size_t>(which)] += c;
        }
        for (auto& [key, row] : grouped) rows.push_back(row);
    }

    RatMat constraints(rows.size(), az.params.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < az.params.size(); ++j) constraints.at(i, j) = rows[i][j];
    RatMat null_basis = constraints.nullspace();

    std::vector<VectorField> out;
    for (std::size_t k = 0; k < null_basis.cols(); ++k) {
        SubstitutionMap values;
        for (std::size_t i = 0; i < az.params.size(); ++i)
            values.emplace(az.params[i], Expr(null_basis.at(i, k)));
        VectorField field(substitute(az.xi, values), substitute(az.phi, values),
                          substitute(az.alpha, values) * Expr(atoms::u()) +
                              substitute(az.beta, values));
        if (field.is_zero()) continue;
        // final symbolic gate against the original (possibly parametric) g
        if (pde.abstract_g()) {
            if (invariance_residual(pde, field).is_zero()) out.push_back(field);
        } else if (verify_symmetry(pde, field).is_symmetry) {
            out.push_back(field);
        }
    }
    return out;
}

}  // namespace bsym
