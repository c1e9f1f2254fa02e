#pragma once

// Cut sets and fiber partitions, coarseness, Diophantine G-sets, Farey
// intervals, density times, and the desk-scale waiting-time machinery.
//
// Configuration convention: an m x n configuration sits at rows 0..m-1 and
// columns 1..n, so the level-0 fiber cut set of the refining partition is
// exactly {-i*alpha + k/2^m mod 1 : 0 <= i <= n, 0 <= k < 2^m}.

#include "kc/circle.hpp"
#include "kc/construction.hpp"

#include <functional>
#include <vector>

namespace kc {

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CutSet {
    Angle alpha;
    int level = 0;                   // circle R/(6^level Z)
    std::vector<LinearValue> points; // sorted, distinct mod 6^level
};

// level-0 representative of the fiber cut set of X_{m,n}
CutSet cut_set_X(const Angle& alpha, int m, int n);

// minimum circular gap; the full circumference for a single point
LinearValue coarseness(const CutSet& c);

struct GSpec {
    Int a;       // denominator bound
    Rational b;  // exclusion radius 1/b
};

struct GWitness {
    bool member;
    Rational fraction;  // nearest (or violating) p/q with q <= a
};

// alpha in G^{a,b}: |alpha - p/q| > 1/b for all p/q with q <= a
GWitness g_membership(const Angle& alpha, const GSpec& spec);

// consecutive Farey fractions of denominator <= n meeting [lo, hi]
std::vector<std::pair<Rational, Rational>> farey_intervals(long n, const Rational& lo,
                                                           const Rational& hi);

// largest fraction <= x (resp. smallest >= x) with denominator <= N
Rational farey_floor(const Rational& x, const Int& N);
Rational farey_next(const Rational& x, const Int& N);  // strictly greater

constexpr long kDensityCapExceeded = -1;

// smallest n <= cap with {0, alpha, ..., (n-1)alpha mod circ} ell-dense
// (every circle point within ell of the orbit, closed condition)
long density_time_circ(const Angle& alpha, const Rational& circ, const LinearValue& ell,
                       long cap);
long density_time(const Angle& alpha, int level, const Rational& ell, long cap);
long density_time(const Angle& alpha, int level, const LinearValue& ell, long cap);

// minimum circular gap of {0, alpha, ..., count*alpha mod circ}
LinearValue orbit_min_gap(const Angle& alpha, const Rational& circ, long count);

// Lemma f^{-j}: f^{-j}(alpha) = (3^a/2^b) alpha with a+b=j,
// b = rnd_alpha(j log3/log6); cross-checkable against iterated f inverses
std::pair<long, long> f_inverse_power(const Angle& alpha, long j);
Angle f_inverse_orbit(const Angle& alpha, long j);  // j literal applications

struct FatCertificate {
    Rational cell_lo, cell_hi;  // the Farey-a interval
    Rational sub_lo, sub_hi;    // certified subinterval of G^{a,b} n G^{c,d}
};

struct GoodAngleWindow {
    Int a;
    Rational b, c, d;
    std::vector<FatCertificate> certificates;  // one per Farey cell meeting [1/3,2]
};

// W_{n x m} parameters and an explicit 2/d-wide certificate per Farey cell
GoodAngleWindow good_angle_window(int m, int n);

struct WaitingTimeReport {
    LinearValue kappa;
    double kappa_approx;
    long density_steps;
    Rational bound;  // 6^m c
    bool pass;
};

WaitingTimeReport verify_waiting_time(const Angle& alpha, int m, int n, const Rational& b,
                                      const Rational& c, long cap = 10000000);

struct RecurrenceReport {
    long config_rows = 0, config_cols = 0;
    long horizon_rows = 0, horizon_cols = 0;
    bool config_legal = false;
    long occurrences = 0;
    // per row-offset: first hit column and max gap between consecutive hits
    std::vector<std::tuple<long, long, long>> row_hits;  // (row, first_col, max_gap)
    Rational bound_cols;   // 6^{5m+3} n^4
    std::vector<long> certified_rows;
    bool pass = true;      // certified rows respect the bound
};

RecurrenceReport empirical_recurrence(const Window& config, const SkewState& s,
                                      long horizon_rows, long horizon_cols,
                                      Rounding mode = Rounding::floor);

struct IrrationalityRow {
    Int q, p;
    double distance;       // |log2/log6 - p/q|
    double bound;          // (1/log6) q^{-14.3}
    double product;        // distance * q^{14.3} * log6
    bool convergent;       // |theta - p/q| < 1/(2q^2)
    bool ok;               // distance >= bound, certified by directed rounding
};

struct IrrationalityScan {
    std::vector<IrrationalityRow> rows;  // convergent rows plus q = 2
    double min_product = 0.0;
    bool all_ok = false;
    long q_max = 0;
};

IrrationalityScan irrationality_witness_scan(long q_max);

// f-orbit density: steps until the orbit of x under f is ell-dense in
// [1/3,2] (interval metric), capped
long f_orbit_density_steps(const Angle& x, const Rational& ell, long cap);

long max_cells_budget();  // KC_MAX_CELLS, default 10^8

}  // namespace kc
