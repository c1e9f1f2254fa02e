#include "kc/logexpr.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

namespace kc {

namespace {

// minimal directed-rounding interval on top of mpfr
class Interval {
public:
    explicit Interval(mpfr_prec_t prec) {
        mpfr_init2(lo_, prec);
        mpfr_init2(hi_, prec);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    Interval(const Interval& o) {
        mpfr_init2(lo_, mpfr_get_prec(o.lo_));
        mpfr_init2(hi_, mpfr_get_prec(o.hi_));
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    Interval& operator=(const Interval& o) {
        if (this != &o) {
            mpfr_set(lo_, o.lo_, MPFR_RNDD);
            mpfr_set(hi_, o.hi_, MPFR_RNDU);
        }
        return *this;
    }
    ~Interval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static Interval of_rational(const Rational& q, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
        return r;
    }
    static Interval of_int(const Int& z, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
        return r;
    }

    void log_in_place() {
        // requires lo > 0
        mpfr_log(lo_, lo_, MPFR_RNDD);
        mpfr_log(hi_, hi_, MPFR_RNDU);
    }
    void sqrt_in_place() {
        mpfr_sqrt(lo_, lo_, MPFR_RNDD);
        mpfr_sqrt(hi_, hi_, MPFR_RNDU);
    }

    Interval& operator+=(const Interval& o) {
        mpfr_add(lo_, lo_, o.lo_, MPFR_RNDD);
        mpfr_add(hi_, hi_, o.hi_, MPFR_RNDU);
        return *this;
    }

    Interval mul(const Interval& o) const {
        Interval r(mpfr_get_prec(lo_));
        mpfr_t c[4];
        for (auto& t : c) mpfr_init2(t, mpfr_get_prec(lo_));
        mpfr_mul(c[0], lo_, o.lo_, MPFR_RNDD);
        mpfr_mul(c[1], lo_, o.hi_, MPFR_RNDD);
        mpfr_mul(c[2], hi_, o.lo_, MPFR_RNDD);
        mpfr_mul(c[3], hi_, o.hi_, MPFR_RNDD);
        mpfr_set(r.lo_, c[0], MPFR_RNDD);
        for (int i = 1; i < 4; ++i) mpfr_min(r.lo_, r.lo_, c[i], MPFR_RNDD);
        mpfr_mul(c[0], lo_, o.lo_, MPFR_RNDU);
        mpfr_mul(c[1], lo_, o.hi_, MPFR_RNDU);
        mpfr_mul(c[2], hi_, o.lo_, MPFR_RNDU);
        mpfr_mul(c[3], hi_, o.hi_, MPFR_RNDU);
        mpfr_set(r.hi_, c[0], MPFR_RNDU);
        for (int i = 1; i < 4; ++i) mpfr_max(r.hi_, r.hi_, c[i], MPFR_RNDU);
        for (auto& t : c) mpfr_clear(t);
        return r;
    }

    // divide by a strictly positive interval
    Interval div_pos(const Interval& o) const {
        Interval r(mpfr_get_prec(lo_));
        mpfr_t a, b;
        mpfr_init2(a, mpfr_get_prec(lo_));
        mpfr_init2(b, mpfr_get_prec(lo_));
        mpfr_div(a, lo_, o.hi_, MPFR_RNDD);
        mpfr_div(b, lo_, o.lo_, MPFR_RNDD);
        mpfr_min(r.lo_, a, b, MPFR_RNDD);
        mpfr_div(a, hi_, o.hi_, MPFR_RNDU);
        mpfr_div(b, hi_, o.lo_, MPFR_RNDU);
        mpfr_max(r.hi_, a, b, MPFR_RNDU);
        mpfr_clear(a);
        mpfr_clear(b);
        return r;
    }

    double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

    // sign of (interval - z): -1 entirely below, +1 entirely above, 0 straddles
    int cmp_int(const Int& z) const {
        if (mpfr_cmp_z(hi_, z.get_mpz_t()) < 0) return -1;
        if (mpfr_cmp_z(lo_, z.get_mpz_t()) > 0) return 1;
        return 0;
    }

    Int floor_lo() const {
        mpfr_t f;
        mpfr_init2(f, mpfr_get_prec(lo_));
        mpfr_floor(f, lo_);
        Int r;
        mpfr_get_z(r.get_mpz_t(), f, MPFR_RNDN);
        mpfr_clear(f);
        return r;
    }
    Int floor_hi() const {
        mpfr_t f;
        mpfr_init2(f, mpfr_get_prec(hi_));
        mpfr_floor(f, hi_);
        Int r;
        mpfr_get_z(r.get_mpz_t(), f, MPFR_RNDN);
        mpfr_clear(f);
        return r;
    }

private:
    mpfr_t lo_, hi_;
};

constexpr mpfr_prec_t kStartPrec = 64;
constexpr mpfr_prec_t kMaxPrec = 4096;

}  // namespace

void LogLinear::add_integer_log(const Int& base, const Rational& coeff) {
    if (base <= 0) throw std::domain_error("log of non-positive integer");
    if (base == 1 || coeff == 0) return;
    auto [it, inserted] = int_logs_.try_emplace(base, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) int_logs_.erase(it);
    }
}

LogLinear LogLinear::log_term(const Rational& arg, const Rational& k) {
    if (arg <= 0) throw std::domain_error("log of non-positive rational");
    LogLinear e;
    e.add_integer_log(arg.get_num(), k);
    e.add_integer_log(arg.get_den(), -k);
    return e;
}

LogLinear LogLinear::phi_of(const Angle& a) {
    if (a.sign() <= 0) throw std::domain_error("phi: angle must be positive");
    LogLinear e;
    e.add_integer_log(Int(3), Rational(1));
    if (a.is_rational()) {
        Rational v = a.rational();
        e.add_integer_log(v.get_num(), Rational(1));
        e.add_integer_log(v.get_den(), Rational(-1));
        return e;
    }
    // log((p + q sqrt d)/r) = log(p + q sqrt d) - log r
    e.add_integer_log(a.surd_r(), Rational(-1));
    if (a.surd_p() == 0) {
        // q sqrt(d): log q + (1/2) log d
        e.add_integer_log(a.surd_q(), Rational(1));
        e.add_integer_log(a.surd_d(), Rational(1, 2));
    } else {
        e.surd_logs_.push_back({a.surd_p(), a.surd_q(), a.surd_d(), Rational(1)});
    }
    return e;
}

LogLinear& LogLinear::operator+=(const LogLinear& o) {
    const_ += o.const_;
    for (const auto& [b, c] : o.int_logs_) add_integer_log(b, c);
    for (const auto& s : o.surd_logs_) {
        bool merged = false;
        for (auto& mine : surd_logs_) {
            if (mine.p == s.p && mine.q == s.q && mine.d == s.d) {
                mine.coeff += s.coeff;
                merged = true;
                break;
            }
        }
        if (!merged) surd_logs_.push_back(s);
    }
    return *this;
}

LogLinear LogLinear::operator+(const LogLinear& o) const {
    LogLinear r = *this;
    r += o;
    return r;
}

LogLinear& LogLinear::operator-=(const LogLinear& o) {
    LogLinear neg = o;
    neg.const_ = -neg.const_;
    for (auto& [b, c] : neg.int_logs_) c = -c;
    for (auto& s : neg.surd_logs_) s.coeff = -s.coeff;
    return (*this += neg);
}

bool LogLinear::equals_rational(const Rational& r) const {
    for (const auto& s : surd_logs_)
        if (s.coeff != 0) return false;
    // (const - r) * log6 + sum c_i log b_i == 0 ?
    std::vector<std::pair<Int, Rational>> work;
    Rational c6 = const_ - r;
    if (c6 != 0) {
        work.emplace_back(Int(2), c6);
        work.emplace_back(Int(3), c6);
    }
    for (const auto& [b, c] : int_logs_) work.emplace_back(b, c);

    // factor refinement: split entries on shared gcds until pairwise coprime,
    // merging duplicates between passes
    for (int pass = 0; pass < 10000; ++pass) {
        std::map<Int, Rational> merged;
        for (const auto& [b, c] : work) {
            if (b == 1) continue;
            auto [it, ins] = merged.try_emplace(b, c);
            if (!ins) it->second += c;
        }
        work.assign(merged.begin(), merged.end());
        bool split = false;
        for (size_t i = 0; i < work.size() && !split; ++i) {
            for (size_t j = i + 1; j < work.size() && !split; ++j) {
                Int g = gcd(work[i].first, work[j].first);
                if (g > 1 && (g != work[i].first || g != work[j].first)) {
                    auto [bi, ci] = work[i];
                    auto [bj, cj] = work[j];
                    work.erase(work.begin() + j);
                    work.erase(work.begin() + i);
                    work.emplace_back(bi / g, ci);
                    work.emplace_back(g, ci);
                    work.emplace_back(bj / g, cj);
                    work.emplace_back(g, cj);
                    split = true;
                }
            }
        }
        if (!split) break;
        if (pass == 9999) throw std::runtime_error("factor refinement did not converge");
    }
    for (const auto& [b, c] : work)
        if (b != 1 && c != 0) return false;
    return true;
}

namespace {

Interval eval_loglinear(const Rational& c0, const std::map<Int, Rational>& int_logs,
                        const std::vector<std::tuple<Int, Int, Int, Rational>>& surds,
                        mpfr_prec_t prec) {
    Interval num(prec);
    for (const auto& [b, c] : int_logs) {
        Interval lb = Interval::of_int(b, prec);
        lb.log_in_place();
        num += lb.mul(Interval::of_rational(c, prec));
    }
    for (const auto& [p, q, d, c] : surds) {
        Interval sd = Interval::of_int(d, prec);
        sd.sqrt_in_place();
        Interval v = sd.mul(Interval::of_int(q, prec));
        v += Interval::of_int(p, prec);
        v.log_in_place();
        num += v.mul(Interval::of_rational(c, prec));
    }
    Interval log6 = Interval::of_int(Int(6), prec);
    log6.log_in_place();
    Interval r = num.div_pos(log6);
    r += Interval::of_rational(c0, prec);
    return r;
}

}  // namespace

void LogLinear::approx(double* lo, double* hi) const {
    std::vector<std::tuple<Int, Int, Int, Rational>> surds;
    for (const auto& s : surd_logs_) surds.emplace_back(s.p, s.q, s.d, s.coeff);
    Interval v = eval_loglinear(const_, int_logs_, surds, 128);
    *lo = v.lo_d();
    *hi = v.hi_d();
}

Int LogLinear::floor_strict() const {
    std::vector<std::tuple<Int, Int, Int, Rational>> surds;
    for (const auto& s : surd_logs_) surds.emplace_back(s.p, s.q, s.d, s.coeff);
    for (mpfr_prec_t prec = kStartPrec; prec <= kMaxPrec; prec *= 2) {
        Interval v = eval_loglinear(const_, int_logs_, surds, prec);
        Int klo = v.floor_lo();
        Int khi = v.floor_hi();
        if (klo == khi) {
            // whole interval within [k, k+1); exclude the endpoint k itself
            if (v.cmp_int(klo) == 1) return klo;
            if (equals_rational(Rational(klo)))
                throw EndpointAmbiguity("value equals integer " + klo.get_str());
            continue;  // provably != k, refine until lo > k
        }
        if (khi == klo + 1) {
            // straddles the integer khi: exact hit?
            if (equals_rational(Rational(khi)))
                throw EndpointAmbiguity("value equals integer " + khi.get_str());
            continue;
        }
        // interval spans more than one integer: refine
    }
    throw PrecisionExhausted("floor undecided at 4096 bits");
}

double phi_conjugacy(const Angle& x) {
    if (x.compare(Rational(1, 3)) < 0 || x.compare(Rational(2)) > 0)
        throw std::domain_error("phi: angle outside [1/3, 2]");
    if (x.is_rational()) {
        if (x.rational() == Rational(1, 3)) return 0.0;
        if (x.rational() == Rational(2)) return 1.0;
    }
    double lo, hi;
    LogLinear::phi_of(x).approx(&lo, &hi);
    return 0.5 * (lo + hi);
}

double phi_inverse(double y) {
    if (y < 0.0 || y > 1.0) throw std::domain_error("phi_inverse: y outside [0, 1]");
    return std::exp(y * std::log(6.0)) / 3.0;
}

Int rnd_alpha(const Angle& alpha, const LogLinear& x) {
    LogLinear v = x + LogLinear::phi_of(alpha);
    try {
        return v.floor_strict();
    } catch (const EndpointAmbiguity&) {
        throw EndpointAmbiguity("rnd_alpha: x lies on an interval endpoint");
    }
}

Int rnd_alpha(const Angle& alpha, const Rational& x) {
    return rnd_alpha(alpha, LogLinear(x));
}

}  // namespace kc
