#include "kc/bounds.hpp"

#include "kc/logexpr.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

namespace kc {

CutSet cut_set_X(const Angle& alpha, int m, int n) {
    if (m < 0 || n < 0) throw std::invalid_argument("cut_set_X: negative parameters");
    CutSet cs;
    cs.alpha = alpha;
    cs.level = 0;
    Int two_m = pow_int(2, static_cast<unsigned long>(m));
    for (long i = 0; i <= n; ++i) {
        for (Int k = 0; k < two_m; ++k) {
            Rational off(k, two_m);
            off.canonicalize();
            LinearValue v(std::move(off), Int(-i));
            cs.points.push_back(linear_mod(alpha, v, Rational(1)));
        }
    }
    auto cmp = [&](const LinearValue& a, const LinearValue& b) {
        return linear_cmp(alpha, a, b) < 0;
    };
    std::sort(cs.points.begin(), cs.points.end(), cmp);
    cs.points.erase(std::unique(cs.points.begin(), cs.points.end(),
                                [&](const LinearValue& a, const LinearValue& b) {
                                    return linear_cmp(alpha, a, b) == 0;
                                }),
                    cs.points.end());
    return cs;
}

LinearValue coarseness(const CutSet& c) {
    Rational circ = pow6(c.level);
    if (c.points.empty()) throw std::invalid_argument("coarseness: empty cut set");
    if (c.points.size() == 1) return LinearValue(circ);
    LinearValue best;
    bool have = false;
    for (size_t i = 0; i < c.points.size(); ++i) {
        LinearValue gap;
        if (i + 1 < c.points.size()) {
            gap = linear_sub(c.points[i + 1], c.points[i]);
        } else {
            gap = linear_sub(c.points[0], c.points[i]);
            gap.off += circ;  // wrap-around
        }
        if (!have || linear_cmp(c.alpha, gap, best) < 0) {
            best = gap;
            have = true;
        }
    }
    return best;
}

GWitness g_membership(const Angle& alpha, const GSpec& spec) {
    if (spec.a < 1 || spec.b <= 0) throw std::invalid_argument("g_membership: bad spec");
    Rational radius = 1 / spec.b;
    GWitness w{true, Rational(0)};
    bool have = false;
    Angle best_dist;  // |alpha - best|
    for (Int q = 1; q <= spec.a; ++q) {
        // nearest p >= 0 to q*alpha
        Int p = floor_affine_q(alpha, Rational(q), Rational(1, 2));  // round(q alpha)
        if (p < 0) p = 0;
        for (Int pc = (p > 0 ? Int(p - 1) : Int(0)); pc <= p + 1; ++pc) {
            Rational frac(pc, q);
            frac.canonicalize();
            Angle diff = alpha - frac;
            if (diff.sign() < 0) diff = -diff;
            if (!have || diff.compare(best_dist) < 0) {
                best_dist = diff;
                w.fraction = frac;
                have = true;
            }
        }
    }
    // member iff min distance > 1/b
    w.member = best_dist.compare(radius) > 0;
    return w;
}

namespace {

// all fractions with denominator <= n in [lo, hi], sorted
std::vector<Rational> fractions_upto(long n, const Rational& lo, const Rational& hi) {
    std::vector<Rational> out;
    for (long q = 1; q <= n; ++q) {
        Int pl = ceil_q(lo * q) - 1;
        Int ph = floor_q(hi * q) + 1;
        for (Int p = pl; p <= ph; ++p) {
            Rational f(p, q);
            f.canonicalize();
            out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<std::pair<Rational, Rational>> farey_intervals(long n, const Rational& lo,
                                                           const Rational& hi) {
    if (n < 1) throw std::invalid_argument("farey_intervals: n >= 1 required");
    if (lo > hi) throw std::invalid_argument("farey_intervals: empty range");
    // pad by one mesh step so clipped end cells are present
    std::vector<Rational> fr = fractions_upto(n, lo - Rational(1, n), hi + Rational(1, n));
    std::vector<std::pair<Rational, Rational>> out;
    for (size_t i = 0; i + 1 < fr.size(); ++i) {
        const Rational& a = fr[i];
        const Rational& b = fr[i + 1];
        if (a <= hi && b > lo) out.emplace_back(a, b);  // [a,b) meets [lo,hi]
    }
    return out;
}

Rational farey_floor(const Rational& x, const Int& N) {
    if (N < 1) throw std::invalid_argument("farey_floor: N >= 1 required");
    if (x.get_den() <= N) return x;
    // continued fraction convergents of x with denominator cap
    Int a0 = floor_q(x);
    Rational frac = x - Rational(a0);
    // p_{-1}/q_{-1} = 1/0, p_0/q_0 = a0/1
    Int p_prev = 1, q_prev = 0, p = a0, q = 1;
    Rational rest = frac;
    bool below = true;  // convergents alternate: even index below x
    while (rest != 0) {
        Rational inv = 1 / rest;
        Int a = floor_q(inv);
        rest = inv - Rational(a);
        Int p_next = a * p + p_prev;
        Int q_next = a * q + q_prev;
        if (q_next > N) {
            // best semiconvergent with denominator <= N
            Int t = (N - q_prev) / q;
            Int ps = t * p + p_prev;
            Int qs = t * q + q_prev;
            // the convergent p/q and semiconvergent ps/qs lie on opposite
            // sides of x; pick the one below
            Rational conv(p, q), semi(ps, qs);
            conv.canonicalize();
            if (qs > 0) semi.canonicalize();
            Rational best = (conv <= x) ? conv : semi;
            if (qs > 0 && semi <= x && semi > best) best = semi;
            return best;
        }
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
        below = !below;
    }
    Rational r(p, q);
    r.canonicalize();
    return r <= x ? r : Rational(floor_q(x));
}

Rational farey_next(const Rational& x, const Int& N) {
    // smallest fraction > x with denominator <= N
    Rational fl = farey_floor(x, N);
    Int a = fl.get_num(), b = fl.get_den();
    if (fl < x) {
        // next after fl could still be <= x only if it equals x; x has
        // denominator > N in that case, so strict inequality is preserved
    }
    // successor of a/b in the Farey sequence F_N: solve b p - a q = 1 with
    // q <= N maximal
    Int q0;
    if (mpz_invert(q0.get_mpz_t(), Int(-a).get_mpz_t(), b.get_mpz_t()) == 0) {
        // b == 1: successor of an integer a is (aN + 1)/N
        Rational r(a * N + 1, N);
        r.canonicalize();
        return r;
    }
    // q ≡ -a^{-1} mod b gives b | (1 + a q)
    Int q = q0 + ((N - q0) / b) * b;
    Int p = (1 + a * q) / b;
    Rational r(p, q);
    r.canonicalize();
    if (r <= x) throw std::logic_error("farey_next: successor not above x");
    return r;
}

namespace {

struct GapTracker {
    const Angle& alpha;
    Rational circ;
    std::set<LinearValue, std::function<bool(const LinearValue&, const LinearValue&)>> pts;
    std::multiset<LinearValue, std::function<bool(const LinearValue&, const LinearValue&)>> gaps;

    explicit GapTracker(const Angle& a, Rational c)
        : alpha(a),
          circ(std::move(c)),
          pts([this](const LinearValue& x, const LinearValue& y) {
              return linear_cmp(alpha, x, y) < 0;
          }),
          gaps([this](const LinearValue& x, const LinearValue& y) {
              return linear_cmp(alpha, x, y) < 0;
          }) {}

    // returns false if the point was already present
    bool insert(const LinearValue& v) {
        if (pts.empty()) {
            pts.insert(v);
            gaps.insert(LinearValue(circ));
            return true;
        }
        auto [it, fresh] = pts.insert(v);
        if (!fresh) return false;
        auto nxt = std::next(it);
        auto prv = (it == pts.begin()) ? std::prev(pts.end()) : std::prev(it);
        LinearValue lo = *prv, hi = (nxt == pts.end()) ? *pts.begin() : *nxt;
        if (pts.size() >= 2) {
            LinearValue old_gap = linear_sub(hi, lo);
            if (pts.size() == 2) old_gap = LinearValue(circ);
            if (linear_sign(alpha, old_gap) <= 0) old_gap.off += circ;
            auto g = gaps.find(old_gap);
            if (g != gaps.end()) gaps.erase(g);
            LinearValue g1 = linear_sub(v, lo);
            if (linear_sign(alpha, g1) <= 0) g1.off += circ;
            LinearValue g2 = linear_sub(hi, v);
            if (linear_sign(alpha, g2) <= 0) g2.off += circ;
            gaps.insert(g1);
            gaps.insert(g2);
        }
        return true;
    }

    const LinearValue& max_gap() const { return *gaps.rbegin(); }
};

}  // namespace

long density_time_circ(const Angle& alpha, const Rational& circ, const LinearValue& ell,
                       long cap) {
    if (linear_sign(alpha, ell) <= 0)
        throw std::invalid_argument("density_time: ell must be positive");
    GapTracker tracker(alpha, circ);
    LinearValue two_ell = ell;
    two_ell.off *= 2;
    two_ell.coeff *= 2;
    for (long n = 1; n <= cap; ++n) {
        // add point (n-1)*alpha mod circ
        LinearValue v;
        if (alpha.is_rational()) {
            v = LinearValue(mod_q(Rational(n - 1) * alpha.rational(), circ));
        } else {
            v = linear_mod(alpha, LinearValue(Rational(0), Int(n - 1)), circ);
        }
        bool fresh = tracker.insert(v);
        // ell-dense (closed) iff max gap <= 2*ell
        if (linear_cmp(alpha, tracker.max_gap(), two_ell) <= 0) return n;
        if (!fresh) return kDensityCapExceeded;  // rational orbit closed short of density
    }
    return kDensityCapExceeded;
}

long density_time(const Angle& alpha, int level, const Rational& ell, long cap) {
    return density_time_circ(alpha, pow6(level), LinearValue(ell), cap);
}

long density_time(const Angle& alpha, int level, const LinearValue& ell, long cap) {
    return density_time_circ(alpha, pow6(level), ell, cap);
}

LinearValue orbit_min_gap(const Angle& alpha, const Rational& circ, long count) {
    std::vector<LinearValue> pts;
    pts.reserve(static_cast<size_t>(count) + 1);
    for (long k = 0; k <= count; ++k) {
        if (alpha.is_rational()) {
            pts.emplace_back(mod_q(Rational(k) * alpha.rational(), circ));
        } else {
            pts.push_back(linear_mod(alpha, LinearValue(Rational(0), Int(k)), circ));
        }
    }
    auto cmp = [&](const LinearValue& a, const LinearValue& b) {
        return linear_cmp(alpha, a, b) < 0;
    };
    std::sort(pts.begin(), pts.end(), cmp);
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [&](const LinearValue& a, const LinearValue& b) {
                              return linear_cmp(alpha, a, b) == 0;
                          }),
              pts.end());
    if (pts.size() < 2) return LinearValue(circ);
    LinearValue best;
    bool have = false;
    for (size_t i = 0; i < pts.size(); ++i) {
        LinearValue gap;
        if (i + 1 < pts.size()) {
            gap = linear_sub(pts[i + 1], pts[i]);
        } else {
            gap = linear_sub(pts[0], pts[i]);
            gap.off += circ;
        }
        if (!have || linear_cmp(alpha, gap, best) < 0) {
            best = gap;
            have = true;
        }
    }
    return best;
}

std::pair<long, long> f_inverse_power(const Angle& alpha, long j) {
    if (j < 0) throw std::invalid_argument("f_inverse_power: j >= 0 required");
    if (j == 0) return {0, 0};
    Int b = rnd_alpha(alpha, LogLinear::log_term(Rational(3), Rational(j)));
    long bl = static_cast<long>(b.get_si());
    long a = j - bl;
    // exponents must return the angle to [1/3, 2]
    Rational scale = Rational(pow_int(3, static_cast<unsigned long>(a))) /
                     Rational(pow_int(2, static_cast<unsigned long>(bl)));
    Angle back = alpha * scale;
    if (back.compare(Rational(1, 3)) < 0 || back.compare(Rational(2)) > 0)
        throw std::logic_error("f_inverse_power: exponents leave [1/3,2]");
    return {a, bl};
}

Angle f_inverse_orbit(const Angle& alpha, long j) {
    Angle a = alpha;
    for (long i = 0; i < j; ++i) a = f_angle_inverse(a);
    return a;
}

GoodAngleWindow good_angle_window(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("good_angle_window: m, n >= 1");
    if (m > 2 || n > 4)
        throw ResourceError("good_angle_window: supported desk range is m <= 2, n <= 4");
    GoodAngleWindow gw;
    long a_l = (1L << m) * n;
    gw.a = a_l;
    gw.b = Rational(pow_int(2, static_cast<unsigned long>(2 * m + 2))) * n * n;
    gw.c = pow6(m) * gw.b;
    gw.d = pow6(4 * m + 3) * n * n * n * n;
    Int cN(gw.c.get_num());  // c is an integer by construction
    Rational rb = 1 / gw.b, rd = 1 / gw.d;
    Rational min_width = 2 * rd;

    for (const auto& [lo, hi] : farey_intervals(a_l, Rational(1, 3), Rational(2))) {
        // inside an F_a cell the only denominator-<= a fractions are the
        // endpoints; stay 1/b clear of them and walk F_c gaps until one
        // admits a 2/d-wide strip
        Rational walk_lo = lo + rb;
        Rational walk_hi = hi - rb;
        if (walk_lo >= walk_hi)
            throw std::logic_error("good_angle_window: big exclusions swallow the cell");
        Rational f = farey_floor(walk_lo, cN);
        bool found = false;
        while (!found) {
            Rational g = farey_next(f, cN);
            Rational s_lo = std::max(Rational(f + rd), walk_lo);
            Rational s_hi = std::min(Rational(g - rd), walk_hi);
            if (s_hi - s_lo >= min_width) {
                gw.certificates.push_back({lo, hi, s_lo, s_hi});
                found = true;
            }
            if (g >= walk_hi && !found)
                throw std::logic_error(
                    "good_angle_window: no 2/d-wide subinterval found (fatness violated)");
            f = g;
        }
    }
    return gw;
}

WaitingTimeReport verify_waiting_time(const Angle& alpha, int m, int n, const Rational& b,
                                      const Rational& c, long cap) {
    Int a1((1L << m) * static_cast<long>(n));
    GWitness w1 = g_membership(alpha, {a1, b});
    Rational a2q = pow6(m) * b;
    if (!is_integer(a2q))
        throw std::invalid_argument("verify_waiting_time: 6^m b must be an integer");
    GWitness w2 = g_membership(alpha, {a2q.get_num(), c});
    if (!w1.member || !w2.member) {
        std::string which;
        if (!w1.member)
            which += "G^(2^m n, b) fails (witness " + w1.fraction.get_str() + ") ";
        if (!w2.member)
            which += "G^(6^m b, c) fails (witness " + w2.fraction.get_str() + ")";
        throw PreconditionViolation("verify_waiting_time: " + which);
    }
    WaitingTimeReport rep;
    CutSet cs = cut_set_X(alpha, m, n);
    rep.kappa = coarseness(cs);
    rep.kappa_approx = linear_to_double(alpha, rep.kappa);
    rep.density_steps = density_time(alpha, m, rep.kappa, cap);
    rep.bound = pow6(m) * c;
    rep.pass = rep.density_steps != kDensityCapExceeded &&
               Rational(rep.density_steps) <= rep.bound;
    return rep;
}

long max_cells_budget() {
    if (const char* env = std::getenv("KC_MAX_CELLS")) {
        long v = std::atol(env);
        if (v > 0) return v;
    }
    return 100000000L;
}

RecurrenceReport empirical_recurrence(const Window& config, const SkewState& s,
                                      long horizon_rows, long horizon_cols, Rounding mode) {
    RecurrenceReport rep;
    rep.config_rows = config.height;
    rep.config_cols = config.width;
    rep.horizon_rows = horizon_rows;
    rep.horizon_cols = horizon_cols;
    if (horizon_rows < config.height || horizon_cols < config.width)
        throw std::invalid_argument("empirical_recurrence: horizon smaller than config");
    if (horizon_rows * horizon_cols > max_cells_budget())
        throw ResourceError("empirical_recurrence: horizon exceeds KC_MAX_CELLS");

    rep.config_legal = validate_window(config).valid();
    long mm = config.height, nn = config.width;
    rep.bound_cols = pow6(5 * mm + 3) * Rational(pow_int(static_cast<unsigned long>(nn), 4));

    Window strip = k_map(s, mode, 0, horizon_rows - 1, 0, horizon_cols - 1);
    ParameterVectors pv = expand_parameters(s, 0, horizon_rows - 1);

    Rational wb = Rational(pow_int(2, static_cast<unsigned long>(2 * mm + 2))) *
                  Rational(nn) * Rational(nn);
    Rational wc = pow6(mm) * wb;
    Rational wd = pow6(4 * mm + 3) * Rational(pow_int(static_cast<unsigned long>(nn), 4));
    Int wa((1L << mm) * nn);

    for (long r = 0; r + mm <= horizon_rows; ++r) {
        long first = -1, last = -1, max_gap = 0;
        for (long c0 = 0; c0 + nn <= horizon_cols; ++c0) {
            bool hit = true;
            for (long dr = 0; dr < mm && hit; ++dr)
                for (long dc = 0; dc < nn && hit; ++dc)
                    if (strip.at(r + dr, c0 + dc) !=
                        config.at(config.row_lo() + dr, config.col_lo() + dc))
                        hit = false;
            if (hit) {
                ++rep.occurrences;
                if (first < 0) first = c0;
                if (last >= 0) max_gap = std::max(max_gap, c0 - last);
                last = c0;
            }
        }
        if (first >= 0) rep.row_hits.emplace_back(r, first, max_gap);
        // certified rows: base-row angle in W_{n x m} = G^{a,b} n G^{c,d}
        const Angle& ar = pv.angle(r);
        bool certified = false;
        if (!is_integer(wc)) {
            certified = false;
        } else if (g_membership(ar, {wa, wb}).member &&
                   g_membership(ar, {wc.get_num(), wd}).member) {
            certified = true;
        }
        if (certified) {
            rep.certified_rows.push_back(r);
            if (first >= 0 && Rational(max_gap) > rep.bound_cols) rep.pass = false;
        }
    }
    return rep;
}

IrrationalityScan irrationality_witness_scan(long q_max) {
    if (q_max < 2 || q_max > 1000000)
        throw std::invalid_argument("irrationality_witness_scan: q_max in [2, 10^6]");
    IrrationalityScan scan;
    scan.q_max = q_max;
    scan.all_ok = true;
    scan.min_product = -1.0;

    mpfr_prec_t prec = 256;
    mpfr_t theta_lo, theta_hi, l6_lo, l6_hi, t1, t2, t3;
    mpfr_inits2(prec, theta_lo, theta_hi, l6_lo, l6_hi, t1, t2, t3, (mpfr_ptr) nullptr);
    mpfr_set_ui(t1, 2, MPFR_RNDN);
    mpfr_log(t1, t1, MPFR_RNDD);  // log2 lo
    mpfr_set_ui(t2, 6, MPFR_RNDN);
    mpfr_log(l6_hi, t2, MPFR_RNDU);
    mpfr_log(l6_lo, t2, MPFR_RNDD);
    mpfr_div(theta_lo, t1, l6_hi, MPFR_RNDD);
    mpfr_set_ui(t1, 2, MPFR_RNDN);
    mpfr_log(t1, t1, MPFR_RNDU);
    mpfr_div(theta_hi, t1, l6_lo, MPFR_RNDU);

    mpq_class exponent(143, 10);
    mpfr_t expo;
    mpfr_init2(expo, prec);
    mpfr_set_q(expo, exponent.get_mpq_t(), MPFR_RNDN);  // 14.3 exactly

    for (long q = 2; q <= q_max; ++q) {
        // nearest p to q*theta
        mpfr_mul_ui(t1, theta_lo, static_cast<unsigned long>(q), MPFR_RNDD);
        mpfr_round(t2, t1);
        Int p;
        mpfr_get_z(p.get_mpz_t(), t2, MPFR_RNDN);
        // distance |theta - p/q|, lower bound
        mpq_class pq(p, q);
        pq.canonicalize();
        mpfr_set_q(t1, pq.get_mpq_t(), MPFR_RNDN);
        mpfr_sub(t2, theta_lo, t1, MPFR_RNDD);
        mpfr_sub(t3, theta_hi, t1, MPFR_RNDU);
        // enclosure [t2, t3]; |.| lower bound
        mpfr_t dist_lo;
        mpfr_init2(dist_lo, prec);
        if (mpfr_sgn(t2) >= 0) {
            mpfr_set(dist_lo, t2, MPFR_RNDD);
        } else if (mpfr_sgn(t3) <= 0) {
            mpfr_neg(dist_lo, t3, MPFR_RNDD);
        } else {
            mpfr_set_zero(dist_lo, 1);
        }
        // bound (1/log6) q^{-14.3}, upper bound
        mpfr_set_ui(t1, static_cast<unsigned long>(q), MPFR_RNDN);
        mpfr_pow(t1, t1, expo, MPFR_RNDD);  // q^{14.3} lo
        mpfr_mul(t2, t1, l6_lo, MPFR_RNDD);
        mpfr_ui_div(t3, 1, t2, MPFR_RNDU);  // upper bound of (1/log6) q^{-14.3}
        bool ok = mpfr_cmp(dist_lo, t3) >= 0;
        if (!ok) scan.all_ok = false;

        // product lower bound: dist_lo * q^{14.3}_lo * log6_lo
        mpfr_mul(t1, t1, dist_lo, MPFR_RNDD);
        mpfr_mul(t1, t1, l6_lo, MPFR_RNDD);
        double product = mpfr_get_d(t1, MPFR_RNDD);
        if (scan.min_product < 0 || product < scan.min_product) scan.min_product = product;

        double dist_d = mpfr_get_d(dist_lo, MPFR_RNDD);
        bool conv = dist_d < 1.0 / (2.0 * static_cast<double>(q) * static_cast<double>(q));
        if (conv || q == 2 || !ok) {
            IrrationalityRow row;
            row.q = q;
            row.p = p;
            row.distance = dist_d;
            mpfr_ui_div(t3, 1, t2, MPFR_RNDU);
            row.bound = mpfr_get_d(t3, MPFR_RNDU);
            row.product = product;
            row.convergent = conv;
            row.ok = ok;
            scan.rows.push_back(row);
        }
        mpfr_clear(dist_lo);
    }
    mpfr_clears(theta_lo, theta_hi, l6_lo, l6_hi, t1, t2, t3, (mpfr_ptr) nullptr);
    mpfr_clear(expo);
    return scan;
}

long f_orbit_density_steps(const Angle& x, const Rational& ell, long cap) {
    if (ell <= 0) throw std::invalid_argument("f_orbit_density_steps: ell > 0 required");
    // sorted orbit points in [1/3, 2]; interval metric: ends within ell,
    // interior gaps within 2*ell
    std::vector<Angle> pts;
    Angle cur = x;
    Rational lo13(1, 3);
    Rational two_ell = 2 * ell;
    auto less = [](const Angle& a, const Angle& b) { return a.compare(b) < 0; };
    for (long n = 1; n <= cap; ++n) {
        auto it = std::lower_bound(pts.begin(), pts.end(), cur, less);
        if (it == pts.end() || !(*it == cur)) pts.insert(it, cur);
        bool dense = (pts.front() - lo13).compare(ell) <= 0 &&
                     ((-pts.back()) + Rational(2)).compare(ell) <= 0;
        for (size_t i = 0; i + 1 < pts.size() && dense; ++i) {
            if ((pts[i + 1] - pts[i]).compare(two_ell) > 0) dense = false;
        }
        if (dense) return n;
        cur = f_angle(cur);
    }
    return kDensityCapExceeded;
}

}  // namespace kc
