#pragma once

// Adaptive-precision evaluation of rational combinations of logarithms,
// the conjugacy phi(x) = (log x + log 3)/log 6, and the rounding map
// rnd_alpha. Values have the form
//
//     c0 + (sum_i c_i * log b_i + sum_j s_j * log(p_j + q_j*sqrt(d_j))) / log 6
//
// with all coefficients rational and b_i positive integers. Whether such a
// value equals a given rational is decidable: refine the integer bases to a
// pairwise-coprime set (logs of multiplicatively independent integers are
// linearly independent over Q) and note that log(p + q*sqrt(d)) with
// p, q != 0 never enters a rational relation with them. Numeric bounds come
// from MPFR interval arithmetic, starting at 64 bits and doubling on
// ambiguity up to a hard cap of 4096 bits.

#include "kc/angle.hpp"
#include "kc/rational.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace kc {

struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EndpointAmbiguity : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class LogLinear {
public:
    LogLinear() = default;
    explicit LogLinear(const Rational& c) : const_(c) {}

    // k * log(arg) / log 6, arg a positive rational
    static LogLinear log_term(const Rational& arg, const Rational& k);
    // (log a + log 3) / log 6 for an exact angle a > 0
    static LogLinear phi_of(const Angle& a);

    LogLinear& operator+=(const LogLinear& o);
    LogLinear operator+(const LogLinear& o) const;
    LogLinear& operator-=(const LogLinear& o);

    const Rational& constant() const { return const_; }

    // exact test: does the value equal this rational?
    bool equals_rational(const Rational& r) const;

    // enclosure [lo, hi] as doubles at >= 128 bits internal precision
    void approx(double* lo, double* hi) const;

    // strict floor: fails with EndpointAmbiguity when the value is exactly
    // an integer, PrecisionExhausted when 4096 bits cannot separate it
    Int floor_strict() const;

private:
    void add_integer_log(const Int& base, const Rational& coeff);

    Rational const_;
    std::map<Int, Rational> int_logs_;  // base >= 2 -> coeff (over log 6)
    struct SurdLog {
        Int p, q, d;  // log(p + q*sqrt(d)), p,q != 0, value > 1 not required
        Rational coeff;
    };
    std::vector<SurdLog> surd_logs_;
};

// phi(x) = (log x + log 3)/log 6 for x in [1/3, 2]; inverse is 6^y/3
double phi_conjugacy(const Angle& x);
double phi_inverse(double y);

// rnd_alpha: the unique n with x in (n - log3/log6 - log(alpha)/log6,
//                                   n + log2/log6 - log(alpha)/log6),
// i.e. the strict floor of x + phi(alpha)
Int rnd_alpha(const Angle& alpha, const Rational& x);
Int rnd_alpha(const Angle& alpha, const LogLinear& x);

}  // namespace kc
