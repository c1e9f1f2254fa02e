#include "kc/angle.hpp"

#include <cmath>

#include <cctype>
#include <ostream>
#include <sstream>

namespace kc {

long valuation(const Rational& q, unsigned long a) {
    if (q == 0) throw std::domain_error("valuation: q must be nonzero");
    if (a < 2) throw std::domain_error("valuation: a must be prime");
    Int n = q.get_num();
    Int d = q.get_den();
    long e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), a)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), a);
        ++e;
    }
    while (mpz_divisible_ui_p(d.get_mpz_t(), a)) {
        mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), a);
        --e;
    }
    return -e;
}

Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational: '" + s + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Angle::Angle(const Rational& v) : p_(v.get_num()), q_(0), d_(0), r_(v.get_den()) {}

Angle Angle::surd(Int p, Int q, Int d, Int r) {
    if (r == 0) throw std::invalid_argument("Angle: zero denominator");
    if (q != 0 && d <= 0) throw std::invalid_argument("Angle: sqrt argument must be positive");
    Angle a;
    a.p_ = std::move(p);
    a.q_ = std::move(q);
    a.d_ = std::move(d);
    a.r_ = std::move(r);
    a.canonicalize();
    return a;
}

void Angle::canonicalize() {
    if (r_ < 0) { p_ = -p_; q_ = -q_; r_ = -r_; }
    if (q_ != 0) {
        // pull square factors out of d (trial division; larger d is
        // accepted as already square-free)
        Int f = 2;
        Int cap = 1000000;
        while (f * f <= d_ && f <= cap) {
            Int sq = f * f;
            while (mpz_divisible_p(d_.get_mpz_t(), sq.get_mpz_t())) {
                d_ /= sq;
                q_ *= f;
            }
            f += 1;
        }
        if (d_ == 1) { p_ += q_; q_ = 0; }
    }
    if (q_ == 0) {
        d_ = 0;
        Int g = gcd(p_, r_);
        if (g > 1) { p_ /= g; r_ /= g; }
        if (p_ == 0) r_ = 1;
    } else {
        Int g = gcd(gcd(p_, q_), r_);
        if (g > 1) { p_ /= g; q_ /= g; r_ /= g; }
    }
}

Rational Angle::rational() const {
    if (!is_rational()) throw std::domain_error("Angle: not rational");
    Rational v(p_, r_);
    v.canonicalize();
    return v;
}

Angle Angle::operator+(const Rational& s) const {
    Angle a = *this;
    a.p_ = p_ * s.get_den() + s.get_num() * r_;
    a.q_ = q_ * s.get_den();
    a.r_ = r_ * s.get_den();
    a.canonicalize();
    return a;
}

Angle Angle::operator-(const Rational& s) const { return *this + Rational(-s); }

Angle Angle::operator*(const Rational& s) const {
    Angle a = *this;
    a.p_ = p_ * s.get_num();
    a.q_ = q_ * s.get_num();
    a.r_ = r_ * s.get_den();
    a.canonicalize();
    return a;
}

Angle Angle::operator-() const {
    Angle a = *this;
    a.p_ = -p_;
    a.q_ = -q_;
    return a;
}

Angle Angle::operator+(const Angle& o) const {
    if (o.is_rational()) return *this + o.rational();
    if (is_rational()) return o + rational();
    if (d_ != o.d_)
        throw std::domain_error("Angle: cannot add surds over different sqrt bases");
    Angle a;
    a.p_ = p_ * o.r_ + o.p_ * r_;
    a.q_ = q_ * o.r_ + o.q_ * r_;
    a.d_ = d_;
    a.r_ = r_ * o.r_;
    a.canonicalize();
    return a;
}

Angle Angle::operator-(const Angle& o) const { return *this + (-o); }

namespace {
// sign of A + B*sqrt(d) with d square-free positive (so sqrt(d) irrational
// unless B == 0)
int sign_linear_surd(const Int& A, const Int& B, const Int& d) {
    if (B == 0) return sgn(A);
    if (A == 0) return sgn(B);
    if (sgn(A) == sgn(B)) return sgn(A);
    // opposite signs: compare A^2 with B^2*d
    Int lhs = A * A;
    Int rhs = B * B * d;
    if (A > 0)  // A > 0, B < 0: positive iff A^2 > B^2 d
        return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
    // A < 0, B > 0: positive iff B^2 d > A^2
    return rhs > lhs ? 1 : (rhs < lhs ? -1 : 0);
}
}  // namespace

int Angle::compare(const Rational& v) const {
    // (p + q sqrt d)/r - a/b: sign of (p b - a r) + q b sqrt(d)
    Int A = p_ * v.get_den() - v.get_num() * r_;
    Int B = q_ * v.get_den();
    if (q_ == 0) return sgn(A);
    return sign_linear_surd(A, B, d_);
}

int Angle::compare(const Angle& o) const {
    if (o.is_rational()) return compare(o.rational());
    if (is_rational()) return -o.compare(rational());
    if (d_ != o.d_)
        throw std::domain_error("Angle: cannot compare surds over different sqrt bases");
    // (p1 + q1 s)/r1 vs (p2 + q2 s)/r2, r1,r2 > 0
    Int A = p_ * o.r_ - o.p_ * r_;
    Int B = q_ * o.r_ - o.q_ * r_;
    return sign_linear_surd(A, B, d_);
}

bool Angle::operator==(const Angle& o) const {
    return p_ == o.p_ && q_ == o.q_ && d_ == o.d_ && r_ == o.r_;
}

int Angle::sign() const {
    return sign_linear_surd(p_, q_, d_ == 0 ? Int(1) : d_);
}

Int Angle::floor() const {
    if (is_rational()) {
        Int f;
        mpz_fdiv_q(f.get_mpz_t(), p_.get_mpz_t(), r_.get_mpz_t());
        return f;
    }
    // estimate floor((p + q sqrt d)/r) with integer sqrt, then fix up exactly
    Int s2 = q_ * q_ * d_;
    Int s = sqrt(s2);  // floor(|q| sqrt d)
    Int num_lo = (q_ > 0) ? Int(p_ + s) : Int(p_ - s - 1);
    Int k;
    mpz_fdiv_q(k.get_mpz_t(), num_lo.get_mpz_t(), r_.get_mpz_t());
    // value - k in [0,1)?
    while (compare(Rational(k)) < 0) k -= 1;
    while (compare(Rational(k + 1)) >= 0) k += 1;
    return k;
}

double Angle::to_double() const {
    double v = mpz_get_d(p_.get_mpz_t());
    if (q_ != 0) v += mpz_get_d(q_.get_mpz_t()) * std::sqrt(mpz_get_d(d_.get_mpz_t()));
    return v / mpz_get_d(r_.get_mpz_t());
}

std::string Angle::str() const {
    if (is_rational()) {
        Rational v = rational();
        return v.get_str();
    }
    std::ostringstream os;
    os << "(" << p_.get_str();
    if (q_ >= 0) os << "+" << q_.get_str();
    else os << "-" << Int(-q_).get_str();
    os << "*sqrt(" << d_.get_str() << "))/" << r_.get_str();
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Angle& a) { return os << a.str(); }

namespace {

// parser for the surd form; expects no whitespace inside tokens
Angle parse_surd(const std::string& s) {
    // forms: (P+Q*sqrt(D))/R, (P-Q*sqrt(D))/R, sqrt(D), sqrt(D)/R, Q*sqrt(D)/R
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;

    auto fail = [&]() -> Angle {
        throw std::invalid_argument("bad angle: '" + s + "'");
    };

    Int p = 0, q = 1, d = 0, r = 1;
    std::string body = t;
    if (!t.empty() && t[0] == '(') {
        auto close = t.rfind(')');
        if (close == std::string::npos) return fail();
        body = t.substr(1, close - 1);
        std::string rest = t.substr(close + 1);
        if (!rest.empty()) {
            if (rest[0] != '/') return fail();
            r = Int(rest.substr(1));
        }
    } else {
        auto sq = t.find("sqrt");
        auto slash = t.find('/', sq == std::string::npos ? 0 : sq);
        if (slash != std::string::npos) {
            r = Int(t.substr(slash + 1));
            body = t.substr(0, slash);
        } else {
            body = t;
        }
    }

    auto sq = body.find("sqrt(");
    if (sq == std::string::npos) return fail();
    auto close = body.find(')', sq);
    if (close == std::string::npos) return fail();
    d = Int(body.substr(sq + 5, close - sq - 5));

    std::string head = body.substr(0, sq);  // "P+Q*" or "P-Q*" or "Q*" or "" or "-"
    if (!head.empty() && head.back() == '*') head.pop_back();
    if (head.empty()) {
        p = 0; q = 1;
    } else if (head == "-") {
        p = 0; q = -1;
    } else {
        // split at the last top-level + or - (not at position 0)
        size_t split = std::string::npos;
        for (size_t i = head.size(); i-- > 1;) {
            if (head[i] == '+' || head[i] == '-') { split = i; break; }
        }
        if (split == std::string::npos) {
            p = 0; q = Int(head);
        } else {
            p = Int(head.substr(0, split));
            std::string qs = head.substr(split + 1);
            q = qs.empty() ? Int(1) : Int(qs);
            if (head[split] == '-') q = -q;
        }
    }
    return Angle::surd(p, q, d, r);
}

}  // namespace

Angle Angle::parse(const std::string& s) {
    if (s.find("sqrt") != std::string::npos) return parse_surd(s);
    return Angle(parse_rational(s));
}

Int floor_affine(const Angle& alpha, const Int& n, const Rational& t) {
    if (alpha.is_rational()) {
        Rational v = Rational(n) * alpha.rational() + t;
        return floor_q(v);
    }
    Angle v = alpha * Rational(n) + t;
    return v.floor();
}

Int ceil_affine(const Angle& alpha, const Int& n, const Rational& t) {
    return -floor_affine(-alpha, n, Rational(-t));
}

Int floor_affine_q(const Angle& alpha, const Rational& b, const Rational& a) {
    if (alpha.is_rational()) return floor_q(b * alpha.rational() + a);
    Angle v = alpha * b + a;
    return v.floor();
}

}  // namespace kc
