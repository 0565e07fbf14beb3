#include "bsym/lie_algebra.hpp"

#include <algorithm>

#include "bsym/errors.hpp"

namespace bsym {

VectorField bracket(const VectorField& v, const VectorField& w) {
    return VectorField(v.apply_to_function(w.xi) - w.apply_to_function(v.xi),
                       v.apply_to_function(w.phi) - w.apply_to_function(v.phi),
                       v.apply_to_function(w.eta) - w.apply_to_function(v.eta));
}

namespace {

bool is_coordinate_atom(const Atom& a) { return a.kind == Atom::Kind::Coord; }

using CoordKey = std::pair<int, Monomial>;  // component index, monomial in (x,t,u)

struct CoordKeyLess {
    bool operator()(const CoordKey& a, const CoordKey& b) const {
        if (a.first != b.first) return a.first < b.first;
        return compare(a.second, b.second) < 0;
    }
};

std::map<CoordKey, Expr, CoordKeyLess> component_coordinates(const VectorField& f) {
    std::map<CoordKey, Expr, CoordKeyLess> out;
    const Expr* comps[3] = {&f.xi, &f.phi, &f.eta};
    for (int c = 0; c < 3; ++c) {
        for (auto& [m, coeff] : collect_if(*comps[c], is_coordinate_atom)) {
            if (coeff.is_zero()) continue;
            out.emplace(CoordKey{c, m}, coeff);
        }
    }
    return out;
}

}  // namespace

ExprMat field_coordinates(const std::vector<VectorField>& fields) {
    std::set<CoordKey, CoordKeyLess> keys;
    std::vector<std::map<CoordKey, Expr, CoordKeyLess>> per_field;
    per_field.reserve(fields.size());
    for (const VectorField& f : fields) {
        per_field.push_back(component_coordinates(f));
        for (auto& [k, v] : per_field.back()) keys.insert(k);
    }
    ExprMat m(keys.size(), fields.size());
    std::size_t row = 0;
    for (const CoordKey& k : keys) {
        for (std::size_t j = 0; j < fields.size(); ++j) {
            auto it = per_field[j].find(k);
            if (it != per_field[j].end()) m.at(row, j) = it->second;
        }
        ++row;
    }
    return m;
}

std::optional<std::vector<Expr>> expand_in_basis(const VectorField& f,
                                                 const std::vector<VectorField>& basis) {
    std::vector<VectorField> all = basis;
    all.push_back(f);
    ExprMat coords = field_coordinates(all);
    ExprMat lhs(coords.rows(), basis.size());
    std::vector<Expr> rhs(coords.rows());
    for (std::size_t i = 0; i < coords.rows(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) lhs.at(i, j) = coords.at(i, j);
        rhs[i] = coords.at(i, basis.size());
    }
    return lhs.solve(rhs);
}

// ---------------------------------------------------------------------------
// structure constants

StructureConstants::StructureConstants(int dim) : dim_(dim) {
    if (dim < 1) throw InvariantViolationError("dimension must be positive");
    c_.assign(static_cast<std::size_t>(dim) * dim * dim, Rational(0));
}

const Rational& StructureConstants::at(int k, int i, int j) const {
    return c_[(static_cast<std::size_t>(k) * dim_ + i) * dim_ + j];
}

void StructureConstants::set(int k, int i, int j, const Rational& value) {
    c_[(static_cast<std::size_t>(k) * dim_ + i) * dim_ + j] = value;
    c_[(static_cast<std::size_t>(k) * dim_ + j) * dim_ + i] = -value;
}

void StructureConstants::validate() const {
    for (int k = 0; k < dim_; ++k)
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                if (at(k, i, j) != -at(k, j, i))
                    throw InvariantViolationError("structure constants are not antisymmetric");
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            for (int k = 0; k < dim_; ++k)
                for (int l = 0; l < dim_; ++l) {
                    Rational sum(0);
                    for (int m = 0; m < dim_; ++m)
                        sum += at(m, i, j) * at(l, m, k) + at(m, j, k) * at(l, m, i) +
                               at(m, k, i) * at(l, m, j);
                    if (sgn(sum) != 0)
                        throw InvariantViolationError("Jacobi identity fails");
                }
}

bool StructureConstants::operator==(const StructureConstants& o) const {
    return dim_ == o.dim_ && c_ == o.c_;
}

RatMat StructureConstants::adjoint(int i) const {
    RatMat m(dim_, dim_);
    for (int k = 0; k < dim_; ++k)
        for (int j = 0; j < dim_; ++j) m.at(k, j) = at(k, i, j);
    return m;
}

RatMat StructureConstants::killing() const {
    RatMat k(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            Rational sum(0);
            for (int a = 0; a < dim_; ++a)
                for (int b = 0; b < dim_; ++b) sum += at(a, i, b) * at(b, j, a);
            k.at(i, j) = sum;
        }
    return k;
}

Json StructureConstants::to_json() const {
    Json entries = Json::array();
    for (int i = 0; i < dim_; ++i)
        for (int j = i + 1; j < dim_; ++j)
            for (int k = 0; k < dim_; ++k)
                if (sgn(at(k, i, j)) != 0)
                    entries.push_back(Json{{"i", i + 1},
                                           {"j", j + 1},
                                           {"k", k + 1},
                                           {"value", to_string(at(k, i, j))}});
    return Json{{"dim", dim_}, {"entries", entries}};
}

std::string StructureConstants::str() const {
    std::string out;
    for (int i = 0; i < dim_; ++i)
        for (int j = i + 1; j < dim_; ++j) {
            bool any = false;
            for (int k = 0; k < dim_; ++k)
                if (sgn(at(k, i, j)) != 0) any = true;
            if (!any) continue;
            std::string rhs;
            for (int k = 0; k < dim_; ++k) {
                const Rational& v = at(k, i, j);
                if (sgn(v) == 0) continue;
                std::string term = (v == 1 ? "" : v == -1 ? "-" : to_string(v) + "*");
                term += "e" + std::to_string(k + 1);
                if (!rhs.empty() && term[0] != '-') rhs += " + ";
                else if (!rhs.empty()) { rhs += " - "; term = term.substr(1); }
                rhs += term;
            }
            out += "[e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + "] = " + rhs + "\n";
        }
    return out;
}

StructureConstants structure_constants(const std::vector<VectorField>& basis) {
    const int n = static_cast<int>(basis.size());
    if (n < 1) throw InvariantViolationError("empty basis");
    ExprMat coords = field_coordinates(basis);
    if (coords.rank() != basis.size()) throw DependentBasisError();

    StructureConstants sc(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            VectorField br = bracket(basis[i], basis[j]);
            auto combo = expand_in_basis(br, basis);
            if (!combo) throw NotClosedError(i + 1, j + 1, br.str());
            for (int k = 0; k < n; ++k) {
                if (!(*combo)[k].is_constant())
                    throw NotClosedError(i + 1, j + 1,
                                         "non-rational expansion coefficient " + (*combo)[k].str());
                sc.set(k, i, j, (*combo)[k].rational_value());
            }
            // the solved expansion must reproduce the bracket exactly
            VectorField back;
            for (int k = 0; k < n; ++k) back = back + basis[k].scaled((*combo)[k]);
            if (!(back == br)) throw NotClosedError(i + 1, j + 1, br.str());
        }
    sc.validate();
    return sc;
}

StructureConstants change_of_basis(const StructureConstants& sc, const RatMat& m) {
    const int n = sc.dim();
    if (m.rows() != static_cast<std::size_t>(n) || m.cols() != static_cast<std::size_t>(n))
        throw InvariantViolationError("basis matrix shape mismatch");
    auto inv = m.inverse();
    if (!inv) throw SingularMatrixError();
    StructureConstants out(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Rational sum(0);
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) {
                        if (sgn(m.at(a, i)) == 0 || sgn(m.at(b, j)) == 0) continue;
                        for (int c = 0; c < n; ++c)
                            sum += inv->at(k, c) * sc.at(c, a, b) * m.at(a, i) * m.at(b, j);
                    }
                out.set(k, i, j, sum);
            }
    out.validate();
    return out;
}

StructureConstants heisenberg_target() {
    StructureConstants sc(3);
    sc.set(0, 1, 2, Rational(1));  // [e2,e3] = e1
    return sc;
}

StructureConstants a35_target(const Rational& a) {
    StructureConstants sc(3);
    sc.set(0, 0, 2, Rational(1));  // [e1,e3] = e1
    sc.set(1, 1, 2, a);            // [e2,e3] = a e2
    return sc;
}

StructureConstants a540_target() {
    StructureConstants sc(5);
    sc.set(0, 0, 1, Rational(2));   // [e1,e2] = 2e1
    sc.set(1, 0, 2, Rational(-1));  // [e1,e3] = -e2
    sc.set(2, 1, 2, Rational(2));   // [e2,e3] = 2e3
    sc.set(4, 0, 3, Rational(1));   // [e1,e4] = e5
    sc.set(3, 1, 3, Rational(1));   // [e2,e4] = e4
    sc.set(4, 1, 4, Rational(-1));  // [e2,e5] = -e5
    sc.set(3, 2, 4, Rational(1));   // [e3,e5] = e4
    return sc;
}

// ---------------------------------------------------------------------------
// subspaces over Q

namespace {

using Vec = std::vector<Rational>;

Vec bracket_coords(const StructureConstants& sc, const Vec& x, const Vec& y) {
    const int n = sc.dim();
    Vec out(n, Rational(0));
    for (int i = 0; i < n; ++i) {
        if (sgn(x[i]) == 0) continue;
        for (int j = 0; j < n; ++j) {
            if (sgn(y[j]) == 0) continue;
            for (int k = 0; k < n; ++k) out[k] += sc.at(k, i, j) * x[i] * y[j];
        }
    }
    return out;
}

// canonical basis (RREF rows) of the span of the given vectors
std::vector<Vec> span_basis(const std::vector<Vec>& vectors, int dim) {
    if (vectors.empty()) return {};
    RatMat m(vectors.size(), dim);
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (int j = 0; j < dim; ++j) m.at(i, j) = vectors[i][j];
    std::size_t rank = m.rref();
    std::vector<Vec> out;
    for (std::size_t r = 0; r < rank; ++r) {
        Vec v(dim);
        for (int j = 0; j < dim; ++j) v[j] = m.at(r, j);
        out.push_back(v);
    }
    return out;
}

std::vector<Vec> full_basis(int dim) {
    std::vector<Vec> out;
    for (int i = 0; i < dim; ++i) {
        Vec v(dim, Rational(0));
        v[i] = 1;
        out.push_back(v);
    }
    return out;
}

std::vector<Vec> product_space(const StructureConstants& sc, const std::vector<Vec>& a,
                               const std::vector<Vec>& b) {
    std::vector<Vec> products;
    for (const Vec& x : a)
        for (const Vec& y : b) products.push_back(bracket_coords(sc, x, y));
    return span_basis(products, sc.dim());
}

bool in_span(const std::vector<Vec>& basis, const Vec& v, int dim) {
    std::vector<Vec> with = basis;
    with.push_back(v);
    return span_basis(with, dim).size() == basis.size();
}

std::vector<Vec> center_space(const StructureConstants& sc) {
    const int n = sc.dim();
    RatMat m(static_cast<std::size_t>(n) * n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) m.at(static_cast<std::size_t>(j) * n + k, i) = sc.at(k, i, j);
    RatMat ns = m.nullspace();
    std::vector<Vec> out;
    for (std::size_t c = 0; c < ns.cols(); ++c) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = ns.at(i, c);
        out.push_back(v);
    }
    return span_basis(out, n);
}

// radical = Killing-orthogonal complement of the derived subalgebra
std::vector<Vec> radical_space(const StructureConstants& sc) {
    const int n = sc.dim();
    std::vector<Vec> derived = product_space(sc, full_basis(n), full_basis(n));
    if (derived.empty()) return full_basis(n);
    RatMat k = sc.killing();
    RatMat m(derived.size(), n);
    for (std::size_t r = 0; r < derived.size(); ++r)
        for (int j = 0; j < n; ++j) {
            Rational sum(0);
            for (int i = 0; i < n; ++i) sum += derived[r][i] * k.at(i, j);
            m.at(r, j) = sum;
        }
    RatMat ns = m.nullspace();
    std::vector<Vec> out;
    for (std::size_t c = 0; c < ns.cols(); ++c) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = ns.at(i, c);
        out.push_back(v);
    }
    return span_basis(out, n);
}

bool ad_nilpotent(const StructureConstants& sc, const Vec& x) {
    const int n = sc.dim();
    RatMat ad(n, n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            Rational sum(0);
            for (int i = 0; i < n; ++i) sum += sc.at(k, i, j) * x[i];
            ad.at(k, j) = sum;
        }
    RatMat power = ad;
    for (int s = 1; s < n; ++s) power = power * ad;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (sgn(power.at(i, j)) != 0) return false;
    return true;
}

void congruent_signature(RatMat k, int& rank, int& pos, int& neg) {
    const std::size_t n = k.rows();
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(k.at(i, i)) == 0) {
            // bring a nonzero onto the diagonal congruently
            std::size_t found = n;
            for (std::size_t j = i + 1; j < n; ++j)
                if (sgn(k.at(j, j)) != 0) {
                    found = j;
                    break;
                }
            if (found < n) {
                for (std::size_t c = 0; c < n; ++c) std::swap(k.at(i, c), k.at(found, c));
                for (std::size_t r = 0; r < n; ++r) std::swap(k.at(r, i), k.at(r, found));
            } else {
                for (std::size_t j = i + 1; j < n; ++j)
                    if (sgn(k.at(i, j)) != 0) {
                        for (std::size_t c = 0; c < n; ++c) k.at(i, c) += k.at(j, c);
                        for (std::size_t r = 0; r < n; ++r) k.at(r, i) += k.at(r, j);
                        break;
                    }
            }
        }
        if (sgn(k.at(i, i)) == 0) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (sgn(k.at(j, i)) == 0) continue;
            Rational f = k.at(j, i) / k.at(i, i);
            for (std::size_t c = 0; c < n; ++c) k.at(j, c) -= f * k.at(i, c);
            for (std::size_t r = 0; r < n; ++r) k.at(r, j) -= f * k.at(r, i);
        }
    }
    rank = pos = neg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        int s = sgn(k.at(i, i));
        if (s > 0) ++pos;
        if (s < 0) ++neg;
        if (s != 0) ++rank;
    }
}

}  // namespace

AlgebraProfile algebra_profile(const StructureConstants& sc) {
    const int n = sc.dim();
    AlgebraProfile p;
    std::vector<Vec> current = full_basis(n);
    p.derived_series.push_back(n);
    for (;;) {
        std::vector<Vec> next = product_space(sc, current, current);
        if (next.size() == current.size()) break;
        p.derived_series.push_back(static_cast<int>(next.size()));
        current = next;
        if (current.empty()) break;
    }
    current = full_basis(n);
    p.lower_central.push_back(n);
    for (;;) {
        std::vector<Vec> next = product_space(sc, full_basis(n), current);
        if (next.size() == current.size()) break;
        p.lower_central.push_back(static_cast<int>(next.size()));
        current = next;
        if (current.empty()) break;
    }
    p.center_dim = static_cast<int>(center_space(sc).size());
    congruent_signature(sc.killing(), p.killing_rank, p.killing_positive, p.killing_negative);

    // nilradical: the Killing-degenerate part of the radical, verified
    // elementwise for ad-nilpotency
    std::vector<Vec> rad = radical_space(sc);
    RatMat k = sc.killing();
    std::vector<Vec> candidates;
    {
        RatMat m(rad.size() + static_cast<std::size_t>(n), n);
        // x in rad and K(x, g) = 0: parameterize x over rad basis
        RatMat sys(n, rad.size());
        for (int row = 0; row < n; ++row)
            for (std::size_t c = 0; c < rad.size(); ++c) {
                Rational sum(0);
                for (int i = 0; i < n; ++i) sum += k.at(row, i) * rad[c][i];
                sys.at(row, c) = sum;
            }
        RatMat ns = sys.nullspace();
        for (std::size_t c = 0; c < ns.cols(); ++c) {
            Vec v(n, Rational(0));
            for (std::size_t b = 0; b < rad.size(); ++b)
                for (int i = 0; i < n; ++i) v[i] += ns.at(b, c) * rad[b][i];
            candidates.push_back(v);
        }
    }
    candidates = span_basis(candidates, n);
    bool verified = true;
    for (const Vec& v : candidates)
        if (!ad_nilpotent(sc, v)) verified = false;
    p.nilradical_dim = verified ? static_cast<int>(candidates.size()) : -1;
    return p;
}

std::string AlgebraProfile::str() const {
    auto dims = [](const std::vector<int>& v) {
        std::string s;
        for (int d : v) s += (s.empty() ? "" : ",") + std::to_string(d);
        return s;
    };
    return "derived=[" + dims(derived_series) + "] lower_central=[" + dims(lower_central) +
           "] center=" + std::to_string(center_dim) + " killing=(" +
           std::to_string(killing_positive) + "," + std::to_string(killing_negative) +
           ";rank " + std::to_string(killing_rank) + ") nilradical=" +
           (nilradical_dim < 0 ? std::string("?") : std::to_string(nilradical_dim));
}

Json AlgebraProfile::to_json() const {
    return Json{{"derived_series", derived_series},
                {"lower_central_series", lower_central},
                {"center_dim", center_dim},
                {"killing", Json{{"rank", killing_rank},
                                 {"positive", killing_positive},
                                 {"negative", killing_negative}}},
                {"nilradical_dim", nilradical_dim}};
}

std::string AlgebraLabel::str() const {
    switch (kind) {
        case Kind::Abelian: return "abelian(" + std::to_string(dim) + ")";
        case Kind::Heisenberg: return "A_{3,1}";
        case Kind::A35: return "A_{3,5}^{" + to_string(a) + "}";
        case Kind::A540: return "A_{5,40}";
        case Kind::Unknown: return "unknown{" + profile.str() + "}";
    }
    return "?";
}

Json AlgebraLabel::to_json() const {
    Json j;
    j["label"] = str();
    j["dim"] = dim;
    if (kind == Kind::A35) j["a"] = to_string(a);
    if (kind == Kind::Unknown) j["profile"] = profile.to_json();
    return j;
}

bool AlgebraLabel::same_class(const AlgebraLabel& o) const {
    if (kind != o.kind || dim != o.dim) return false;
    if (kind == Kind::A35) return a == o.a;
    return kind != Kind::Unknown;
}

// ---------------------------------------------------------------------------
// identification

namespace {

RatMat columns_matrix(const std::vector<Vec>& cols, int dim) {
    RatMat m(dim, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (int i = 0; i < dim; ++i) m.at(i, c) = cols[c][i];
    return m;
}

std::optional<RatMat> try_heisenberg(const StructureConstants& sc) {
    const int n = sc.dim();
    std::vector<Vec> derived = product_space(sc, full_basis(n), full_basis(n));
    if (derived.size() != 1) return std::nullopt;
    std::vector<Vec> center = center_space(sc);
    if (!in_span(center, derived[0], n)) return std::nullopt;
    const Vec& z = derived[0];
    // find a pair with [b_i, b_j] = gamma z, gamma != 0
    std::vector<Vec> basis = full_basis(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Vec br = bracket_coords(sc, basis[i], basis[j]);
            // br = gamma * z
            int pivot = -1;
            for (int k = 0; k < n; ++k)
                if (sgn(z[k]) != 0) {
                    pivot = k;
                    break;
                }
            Rational gamma = br[static_cast<std::size_t>(pivot)] / z[static_cast<std::size_t>(pivot)];
            if (sgn(gamma) == 0) continue;
            Vec e2(n), e3 = basis[j];
            for (int k = 0; k < n; ++k) e2[k] = basis[i][k] / gamma;
            RatMat m = columns_matrix({z, e2, e3}, n);
            if (!m.inverse()) continue;
            if (!(change_of_basis(sc, m) == heisenberg_target())) continue;
            return m;
        }
    return std::nullopt;
}

struct A35Result {
    Rational a;
    RatMat witness{0, 0};
};

std::optional<A35Result> try_a35(const StructureConstants& sc) {
    const int n = sc.dim();
    std::vector<Vec> derived = product_space(sc, full_basis(n), full_basis(n));
    if (derived.size() != 2) return std::nullopt;
    if (!product_space(sc, derived, derived).empty()) return std::nullopt;  // must be abelian
    // complement direction
    Vec z;
    for (const Vec& cand : full_basis(n))
        if (!in_span(derived, cand, n)) {
            z = cand;
            break;
        }
    // action of z on the derived plane: [z, d_m] = sum A(k, m) d_k
    RatMat dmat = columns_matrix(derived, n);
    RatMat action(2, 2);
    for (int m = 0; m < 2; ++m) {
        Vec br = bracket_coords(sc, z, derived[m]);
        auto combo = dmat.solve(br);
        if (!combo) return std::nullopt;
        action.at(0, m) = (*combo)[0];
        action.at(1, m) = (*combo)[1];
    }
    Rational tr = action.at(0, 0) + action.at(1, 1);
    Rational det = action.at(0, 0) * action.at(1, 1) - action.at(0, 1) * action.at(1, 0);
    auto disc = rat_sqrt(tr * tr - 4 * det);
    if (!disc) return std::nullopt;  // irrational eigenvalues
    Rational l1 = (tr + *disc) / 2, l2 = (tr - *disc) / 2;
    if (sgn(l1) == 0 || sgn(l2) == 0) return std::nullopt;
    std::vector<Vec> eig1, eig2;
    auto eigvecs = [&](const Rational& l) {
        RatMat shifted = action;
        shifted.at(0, 0) -= l;
        shifted.at(1, 1) -= l;
        RatMat ns = shifted.nullspace();
        std::vector<Vec> out;
        for (std::size_t c = 0; c < ns.cols(); ++c) {
            Vec v(n, Rational(0));
            for (int i = 0; i < n; ++i)
                v[i] = ns.at(0, c) * derived[0][i] + ns.at(1, c) * derived[1][i];
            out.push_back(v);
        }
        return out;
    };
    if (l1 == l2) {
        // diagonalizable only if the action is scalar
        if (sgn(action.at(0, 1)) != 0 || sgn(action.at(1, 0)) != 0 ||
            action.at(0, 0) != action.at(1, 1))
            return std::nullopt;
        eig1 = {derived[0]};
        eig2 = {derived[1]};
    } else {
        if (cmp(abs(l2), abs(l1)) > 0) std::swap(l1, l2);
        else if (abs(l1) == abs(l2) && sgn(l1) < 0) std::swap(l1, l2);  // prefer +1 scale
        eig1 = eigvecs(l1);
        eig2 = eigvecs(l2);
        if (eig1.size() != 1 || eig2.size() != 1) return std::nullopt;
    }
    Rational a = l2 / l1;
    Vec e3(n);
    for (int i = 0; i < n; ++i) e3[i] = -z[i] / l1;
    RatMat m = columns_matrix({eig1[0], eig2[0], e3}, n);
    if (!m.inverse()) return std::nullopt;
    if (!(change_of_basis(sc, m) == a35_target(a))) return std::nullopt;
    return A35Result{a, m};
}

std::optional<RatMat> try_a540(const StructureConstants& sc) {
    const int n = sc.dim();
    std::vector<Vec> rad = radical_space(sc);
    if (rad.size() != 2) return std::nullopt;
    if (!product_space(sc, rad, rad).empty()) return std::nullopt;

    // complement of the radical from coordinate directions
    std::vector<Vec> comp;
    {
        std::vector<Vec> span = rad;
        for (const Vec& cand : full_basis(n)) {
            if (in_span(span, cand, n)) continue;
            comp.push_back(cand);
            span.push_back(cand);
            if (comp.size() == 3) break;
        }
        if (comp.size() != 3) return std::nullopt;
    }

    // full-coordinates helper: positions 0..2 complement, 3..4 radical
    RatMat full = columns_matrix({comp[0], comp[1], comp[2], rad[0], rad[1]}, n);
    auto full_inv = full.inverse();
    if (!full_inv) return std::nullopt;
    auto decompose = [&](const Vec& v) {
        Vec out(5, Rational(0));
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < n; ++j) out[i] += full_inv->at(i, j) * v[j];
        return out;
    };

    // [c_i, c_j] = sum_k lambda^k_{ij} c_k + rho_{ij},  rho in the radical
    Rational lambda[3][3][3];
    Rational rho[3][3][2];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Vec d = decompose(bracket_coords(sc, comp[i], comp[j]));
            for (int k = 0; k < 3; ++k) lambda[k][i][j] = d[k];
            rho[i][j][0] = d[3];
            rho[i][j][1] = d[4];
        }
    // radical action of the complement directions
    RatMat rmat[3] = {RatMat(2, 2), RatMat(2, 2), RatMat(2, 2)};
    for (int i = 0; i < 3; ++i)
        for (int m = 0; m < 2; ++m) {
            Vec d = decompose(bracket_coords(sc, comp[i], rad[m]));
            if (sgn(d[0]) != 0 || sgn(d[1]) != 0 || sgn(d[2]) != 0)
                return std::nullopt;  // radical is not an ideal (cannot happen)
            rmat[i].at(0, m) = d[3];
            rmat[i].at(1, m) = d[4];
        }

    // Levi correction: find phi_i in the radical with l_i = c_i + phi_i closing
    // onto the lambda structure; linear system in 6 unknowns
    RatMat sys(6, 6);
    std::vector<Rational> rhs(6);
    int row = 0;
    for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        for (int comp_idx = 0; comp_idx < 2; ++comp_idx) {
            // rho_ij + R_i phi_j - R_j phi_i - sum_k lambda^k_ij phi_k = 0
            for (int m = 0; m < 2; ++m) {
                sys.at(row, 2 * j + m) += rmat[i].at(comp_idx, m);
                sys.at(row, 2 * i + m) -= rmat[j].at(comp_idx, m);
            }
            for (int k = 0; k < 3; ++k) sys.at(row, 2 * k + comp_idx) -= lambda[k][i][j];
            rhs[row] = -rho[i][j][comp_idx];
            ++row;
        }
    }
    auto phi = sys.solve(rhs);
    if (!phi) return std::nullopt;
    std::vector<Vec> levi(3, Vec(n, Rational(0)));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < n; ++j)
            levi[i][j] = comp[i][j] + (*phi)[2 * i] * rad[0][j] + (*phi)[2 * i + 1] * rad[1][j];

    // the corrected complement must close exactly onto lambda
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Vec expect(n, Rational(0));
            for (int k = 0; k < 3; ++k)
                for (int c = 0; c < n; ++c) expect[c] += lambda[k][i][j] * levi[k][c];
            Vec got = bracket_coords(sc, levi[i], levi[j]);
            if (got != expect) return std::nullopt;
        }

    // radical representation of the Levi factor must fill sl(2, Q)
    RatMat rep[3] = {RatMat(2, 2), RatMat(2, 2), RatMat(2, 2)};
    for (int i = 0; i < 3; ++i) {
        for (int m = 0; m < 2; ++m) {
            Vec d = decompose(bracket_coords(sc, levi[i], rad[m]));
            rep[i].at(0, m) = d[3];
            rep[i].at(1, m) = d[4];
        }
        if (sgn(rep[i].at(0, 0) + rep[i].at(1, 1)) != 0) return std::nullopt;
    }
    // solve for the standard triple: rep-combinations equal to E, H, F
    RatMat repmat(4, 3);
    for (int i = 0; i < 3; ++i) {
        repmat.at(0, i) = rep[i].at(0, 0);
        repmat.at(1, i) = rep[i].at(0, 1);
        repmat.at(2, i) = rep[i].at(1, 0);
        repmat.at(3, i) = rep[i].at(1, 1);
    }
    auto pull = [&](std::initializer_list<int> target) -> std::optional<Vec> {
        std::vector<Rational> tv;
        for (int v : target) tv.emplace_back(v);
        auto x = repmat.solve(tv);
        if (!x) return std::nullopt;
        // consistency: repmat * x == tv
        for (int r = 0; r < 4; ++r) {
            Rational sum(0);
            for (int c = 0; c < 3; ++c) sum += repmat.at(r, c) * (*x)[c];
            if (sum != tv[static_cast<std::size_t>(r)]) return std::nullopt;
        }
        Vec out(n, Rational(0));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < n; ++j) out[j] += (*x)[i] * levi[i][j];
        return out;
    };
    auto e = pull({0, 1, 0, 0});
    auto h = pull({1, 0, 0, -1});
    auto f = pull({0, 0, 1, 0});
    if (!e || !h || !f) return std::nullopt;

    RatMat witness = columns_matrix({*f, *h, *e, rad[0], rad[1]}, n);
    if (!witness.inverse()) return std::nullopt;
    if (!(change_of_basis(sc, witness) == a540_target())) return std::nullopt;
    return witness;
}

}  // namespace

IdentifyResult identify(const StructureConstants& sc) {
    sc.validate();
    const int n = sc.dim();
    if (n < 1 || n > 5) throw InvariantViolationError("identify supports dimensions 1..5");

    IdentifyResult res;
    res.label.dim = n;
    res.label.profile = algebra_profile(sc);

    bool all_zero = true;
    for (int i = 0; i < n && all_zero; ++i)
        for (int j = 0; j < n && all_zero; ++j)
            for (int k = 0; k < n; ++k)
                if (sgn(sc.at(k, i, j)) != 0) {
                    all_zero = false;
                    break;
                }
    if (all_zero) {
        res.label.kind = AlgebraLabel::Kind::Abelian;
        res.witness = RatMat::identity(n);
        return res;
    }

    if (n == 3) {
        if (auto w = try_heisenberg(sc)) {
            res.label.kind = AlgebraLabel::Kind::Heisenberg;
            res.witness = *w;
            return res;
        }
        if (auto r = try_a35(sc)) {
            res.label.kind = AlgebraLabel::Kind::A35;
            res.label.a = r->a;
            res.witness = r->witness;
            return res;
        }
    }
    if (n == 5) {
        if (auto w = try_a540(sc)) {
            res.label.kind = AlgebraLabel::Kind::A540;
            res.witness = *w;
            return res;
        }
    }
    res.label.kind = AlgebraLabel::Kind::Unknown;
    return res;
}

}  // namespace bsym
