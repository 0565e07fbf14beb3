#include "bsym/poly.hpp"

#include <algorithm>

#include "bsym/errors.hpp"

namespace bsym {

Monomial Monomial::of(const Atom& a, int e) {
    Monomial m;
    if (e != 0) m.factors.emplace_back(a, e);
    return m;
}

int Monomial::total_degree() const {
    int d = 0;
    for (auto& [a, e] : factors) d += e;
    return d;
}

int Monomial::exponent_of(const Atom& a) const {
    for (auto& [atom, e] : factors)
        if (atom == a) return e;
    return 0;
}

Monomial Monomial::times(const Monomial& other) const {
    Monomial out;
    out.factors.reserve(factors.size() + other.factors.size());
    auto it = factors.begin();
    auto jt = other.factors.begin();
    while (it != factors.end() && jt != other.factors.end()) {
        int c = compare(it->first, jt->first);
        if (c < 0) {
            out.factors.push_back(*it++);
        } else if (c > 0) {
            out.factors.push_back(*jt++);
        } else {
            int e = it->second + jt->second;
            if (e != 0) out.factors.emplace_back(it->first, e);
            ++it;
            ++jt;
        }
    }
    out.factors.insert(out.factors.end(), it, factors.end());
    out.factors.insert(out.factors.end(), jt, other.factors.end());
    return out;
}

std::optional<Monomial> Monomial::divided_by(const Monomial& other) const {
    Monomial out;
    auto it = factors.begin();
    for (auto& [a, e] : other.factors) {
        while (it != factors.end() && compare(it->first, a) < 0) out.factors.push_back(*it++);
        if (it == factors.end() || !(it->first == a) || it->second < e) return std::nullopt;
        if (it->second > e) out.factors.emplace_back(a, it->second - e);
        ++it;
    }
    out.factors.insert(out.factors.end(), it, factors.end());
    return out;
}

int compare(const Monomial& a, const Monomial& b) {
    // graded, then lexicographic with earlier atoms ranked higher, so x
    // leads t and u_x leads u_xx within a degree class
    if (int c = a.total_degree() - b.total_degree()) return c < 0 ? -1 : 1;
    auto it = a.factors.begin();
    auto jt = b.factors.begin();
    while (it != a.factors.end() && jt != b.factors.end()) {
        if (int c = compare(it->first, jt->first)) return c < 0 ? 1 : -1;
        if (it->second != jt->second) return it->second > jt->second ? 1 : -1;
        ++it;
        ++jt;
    }
    if (it != a.factors.end()) return 1;
    if (jt != b.factors.end()) return -1;
    return 0;
}

Poly::Poly(const Rational& c) {
    if (sgn(c) != 0) terms_.emplace(Monomial::one(), c);
}

Poly::Poly(const Atom& a) { terms_.emplace(Monomial::of(a), Rational(1)); }

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::constant_value() const {
    auto it = terms_.find(Monomial::one());
    return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly out;
    for (auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Poly Poly::operator+(const Poly& o) const {
    Poly out = *this;
    for (auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

Poly Poly::operator-(const Poly& o) const {
    Poly out = *this;
    for (auto& [m, c] : o.terms_) out.add_term(m, -c);
    return out;
}

Poly Poly::operator*(const Poly& o) const {
    Poly out;
    for (auto& [m1, c1] : terms_)
        for (auto& [m2, c2] : o.terms_) out.add_term(m1.times(m2), c1 * c2);
    return out;
}

Poly Poly::scaled(const Rational& c) const {
    Poly out;
    if (sgn(c) == 0) return out;
    for (auto& [m, coef] : terms_) out.terms_.emplace(m, coef * c);
    return out;
}

Poly Poly::pow(int e) const {
    if (e < 0) throw InvariantViolationError("Poly::pow wants a nonnegative exponent");
    Poly result(Rational(1));
    Poly base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

const std::pair<const Monomial, Rational>& Poly::leading() const {
    if (terms_.empty()) throw InvariantViolationError("leading term of zero polynomial");
    return *terms_.rbegin();
}

std::set<Atom> Poly::atoms() const {
    std::set<Atom> out;
    for (auto& [m, c] : terms_)
        for (auto& [a, e] : m.factors) out.insert(a);
    return out;
}

bool Poly::contains_atom(const Atom& a) const {
    for (auto& [m, c] : terms_)
        if (m.contains(a)) return true;
    return false;
}

bool Poly::contains_atom_if(const std::function<bool(const Atom&)>& pred) const {
    for (auto& [m, c] : terms_)
        for (auto& [a, e] : m.factors)
            if (pred(a)) return true;
    return false;
}

Monomial Poly::monomial_content() const {
    if (terms_.empty()) return Monomial::one();
    Monomial common = terms_.begin()->first;
    for (auto& [m, c] : terms_) {
        if (common.is_one()) break;
        Monomial next;
        for (auto& [a, e] : common.factors) {
            int f = m.exponent_of(a);
            if (f > 0) next.factors.emplace_back(a, std::min(e, f));
        }
        common = std::move(next);
    }
    return common;
}

Poly Poly::divided_by_monomial(const Monomial& m) const {
    Poly out;
    for (auto& [mono, c] : terms_) {
        auto q = mono.divided_by(m);
        if (!q) throw InvariantViolationError("monomial does not divide every term");
        out.terms_.emplace(*q, c);
    }
    return out;
}

std::optional<Poly> Poly::exact_divide(const Poly& dividend, const Poly& divisor) {
    if (divisor.is_zero()) return std::nullopt;
    Poly quotient;
    Poly rem = dividend;
    const auto& [dm, dc] = divisor.leading();
    while (!rem.is_zero()) {
        const auto& [rm, rc] = rem.leading();
        auto q = rm.divided_by(dm);
        if (!q) return std::nullopt;
        Rational factor = rc / dc;
        quotient.add_term(*q, factor);
        Poly sub;
        sub.add_term(*q, factor);
        rem = rem - sub * divisor;
    }
    return quotient;
}

bool Poly::operator==(const Poly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
        if (!(it->first == jt->first) || it->second != jt->second) return false;
    return true;
}

bool is_univariate_in(const Poly& p, const Atom& v) {
    for (auto& [m, c] : p.terms())
        for (auto& [a, e] : m.factors)
            if (!(a == v)) return false;
    return true;
}

namespace {

// Dense coefficient vector of a univariate polynomial in v.
std::vector<Rational> dense_coeffs(const Poly& p, const Atom& v) {
    int deg = 0;
    for (auto& [m, c] : p.terms()) deg = std::max(deg, m.exponent_of(v));
    std::vector<Rational> out(static_cast<std::size_t>(deg) + 1, Rational(0));
    for (auto& [m, c] : p.terms()) out[static_cast<std::size_t>(m.exponent_of(v))] = c;
    return out;
}

Poly from_dense(const std::vector<Rational>& coeffs, const Atom& v) {
    Poly out;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (sgn(coeffs[i]) != 0) out.add_term(Monomial::of(v, static_cast<int>(i)), coeffs[i]);
    return out;
}

void trim(std::vector<Rational>& c) {
    while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
}

}  // namespace

Poly univariate_gcd(const Poly& a, const Poly& b, const Atom& v) {
    std::vector<Rational> ca = dense_coeffs(a, v), cb = dense_coeffs(b, v);
    trim(ca);
    trim(cb);
    while (!cb.empty()) {
        // remainder of ca / cb
        while (ca.size() >= cb.size() && !ca.empty()) {
            Rational f = ca.back() / cb.back();
            std::size_t shift = ca.size() - cb.size();
            for (std::size_t i = 0; i < cb.size(); ++i) ca[shift + i] -= f * cb[i];
            trim(ca);
        }
        std::swap(ca, cb);
    }
    trim(ca);
    if (ca.empty()) return Poly(Rational(0));
    Rational lead = ca.back();
    for (auto& c : ca) c /= lead;  // monic
    return from_dense(ca, v);
}

}  // namespace bsym
