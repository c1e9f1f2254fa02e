#pragma once

// Exact points of the form  offset + coeff * alpha  used for circle
// computations (phase recovery cells, fiber cut sets, orbit gaps). For a
// rational angle the coefficient folds into the offset; for a surd angle
// the pair keeps comparisons exact.

#include "kc/angle.hpp"
#include "kc/rational.hpp"

namespace kc {

struct LinearValue {
    Rational off;
    Int coeff;

    LinearValue() : off(0), coeff(0) {}
    explicit LinearValue(Rational o) : off(std::move(o)), coeff(0) {}
    LinearValue(Rational o, Int c) : off(std::move(o)), coeff(std::move(c)) {}
};

inline LinearValue linear_sub(const LinearValue& a, const LinearValue& b) {
    return {a.off - b.off, a.coeff - b.coeff};
}

inline LinearValue linear_add(const LinearValue& a, const LinearValue& b) {
    return {a.off + b.off, a.coeff + b.coeff};
}

inline int linear_sign(const Angle& alpha, const LinearValue& v) {
    if (v.coeff == 0) return sgn(v.off);
    if (alpha.is_rational()) return sgn(v.off + Rational(v.coeff) * alpha.rational());
    return (alpha * Rational(v.coeff) + v.off).sign();
}

inline int linear_cmp(const Angle& alpha, const LinearValue& a, const LinearValue& b) {
    return linear_sign(alpha, linear_sub(a, b));
}

// reduce v into [0, circ)
inline LinearValue linear_mod(const Angle& alpha, const LinearValue& v, const Rational& circ) {
    Int k = floor_affine_q(alpha, Rational(v.coeff) / circ, v.off / circ);
    return {v.off - Rational(k) * circ, v.coeff};
}

inline double linear_to_double(const Angle& alpha, const LinearValue& v) {
    return mpq_get_d(v.off.get_mpq_t()) + mpz_get_d(v.coeff.get_mpz_t()) * alpha.to_double();
}

inline Rational linear_rational(const Angle& alpha, const LinearValue& v) {
    if (v.coeff == 0) return v.off;
    if (!alpha.is_rational())
        throw std::domain_error("linear_rational: surd angle");
    return v.off + Rational(v.coeff) * alpha.rational();
}

}  // namespace kc
