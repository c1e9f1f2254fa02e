#pragma once

// Exact row angles: rationals and real quadratic surds (p + q*sqrt(d))/r.
// Both kinds admit exact comparison and exact floors by pure integer
// arithmetic, and are closed under the maps x -> 2x and x -> x/3 that
// drive the angle dynamics. No floating point on any exact path.

#include "kc/rational.hpp"

#include <iosfwd>
#include <string>

namespace kc {

class Angle {
public:
    Angle() : p_(0), q_(0), d_(0), r_(1) {}
    explicit Angle(const Rational& v);
    explicit Angle(long v) : Angle(Rational(v)) {}

    // (p + q*sqrt(d))/r, d > 0 (made square-free), r != 0
    static Angle surd(Int p, Int q, Int d, Int r);

    // accepts "p/q", "p", "(p+q*sqrt(d))/r", "sqrt(d)/r", "(p-q*sqrt(d))/r"
    static Angle parse(const std::string& s);

    bool is_rational() const { return q_ == 0; }
    Rational rational() const;  // throws if surd

    const Int& surd_p() const { return p_; }
    const Int& surd_q() const { return q_; }
    const Int& surd_d() const { return d_; }
    const Int& surd_r() const { return r_; }

    Angle operator+(const Rational& s) const;
    Angle operator-(const Rational& s) const;
    Angle operator*(const Rational& s) const;
    Angle operator-() const;
    // requires o rational, *this rational, or matching d
    Angle operator+(const Angle& o) const;
    Angle operator-(const Angle& o) const;

    // sign of *this - v
    int compare(const Rational& v) const;
    // sign of *this - o; requires o rational, *this rational, or equal d
    int compare(const Angle& o) const;

    bool operator==(const Angle& o) const;
    bool operator!=(const Angle& o) const { return !(*this == o); }
    bool operator<(const Angle& o) const { return compare(o) < 0; }

    Int floor() const;
    int sign() const;

    double to_double() const;
    std::string str() const;  // exact round-trip format

private:
    void canonicalize();

    // value = (p + q*sqrt(d))/r; q == 0 means rational p/r (d kept 0)
    Int p_, q_, d_, r_;
};

std::ostream& operator<<(std::ostream& os, const Angle& a);

// floor(n*alpha + t), exact for both angle kinds
Int floor_affine(const Angle& alpha, const Int& n, const Rational& t);
// ceil via the contract ceil(x) = -floor(-x)
Int ceil_affine(const Angle& alpha, const Int& n, const Rational& t);
// floor(b*alpha + a) with rational b
Int floor_affine_q(const Angle& alpha, const Rational& b, const Rational& a);

}  // namespace kc
