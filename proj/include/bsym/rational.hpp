#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace bsym {

// Exact arbitrary-precision rational. All symbolic coefficient arithmetic
// goes through this type; no floating point enters symbolic paths.
using Rational = mpq_class;

inline Rational rat(long n, long d = 1) {
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline Rational rat_from_string(const std::string& s) {
    Rational q(s);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline int sign(const Rational& q) { return sgn(q); }

inline Rational rat_pow(const Rational& base, long e) {
    Rational r;
    if (e >= 0) {
        mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), static_cast<unsigned long>(e));
    } else {
        mpz_pow_ui(r.get_num_mpz_t(), base.get_den().get_mpz_t(), static_cast<unsigned long>(-e));
        mpz_pow_ui(r.get_den_mpz_t(), base.get_num().get_mpz_t(), static_cast<unsigned long>(-e));
    }
    r.canonicalize();
    return r;
}

// Exact square root when the argument is a perfect square of a rational.
inline std::optional<Rational> rat_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    if (mpz_perfect_square_p(q.get_num().get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(q.get_den().get_mpz_t()) == 0) return std::nullopt;
    Rational r;
    mpz_sqrt(r.get_num_mpz_t(), q.get_num().get_mpz_t());
    mpz_sqrt(r.get_den_mpz_t(), q.get_den().get_mpz_t());
    r.canonicalize();
    return r;
}

}  // namespace bsym
