#pragma once

// Exact rational arithmetic helpers on top of GMP's mpq_class.
// mpq_class is kept canonical by GMP (gcd 1, positive denominator),
// which is exactly the invariant we need; everything here is small
// utilities the rest of the library shares.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace kc {

using Int = mpz_class;
using Rational = mpq_class;

inline Int floor_q(const Rational& q) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return f;
}

inline Int ceil_q(const Rational& q) {
    Int c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return c;
}

// q mod m reduced into [0, m), m > 0
inline Rational mod_q(const Rational& q, const Rational& m) {
    Rational r = q - m * Rational(floor_q(q / m));
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Int pow_int(unsigned long base, unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

inline Rational pow6(long e) {
    if (e >= 0) return Rational(pow_int(6, static_cast<unsigned long>(e)));
    return Rational(1, pow_int(6, static_cast<unsigned long>(-e)));
}

// a-valuation |q|_a = -n_a where q = prod p^{n_p}; a must be prime, q != 0.
long valuation(const Rational& q, unsigned long a);

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

}  // namespace kc
