#include "kc/construction.hpp"

#include <sstream>

namespace kc {

namespace {

// alpha_{i+1}/alpha_i, exact; throws unless the ratio is 2 or 1/3
Rational lambda_between(const Angle& a, const Angle& b, long index) {
    if (b == a * Rational(2)) return Rational(2);
    if (b == a * Rational(1, 3)) return Rational(1, 3);
    std::ostringstream os;
    os << "angle ratio at row " << index << " not in {1/3, 2}: " << a.str() << " -> "
       << b.str();
    throw std::invalid_argument(os.str());
}

bool in_closed(const Angle& a, const Rational& lo, const Rational& hi) {
    return a.compare(lo) >= 0 && a.compare(hi) <= 0;
}

// Lifted phases tau_i = Lambda_i * (t_from + u) for rows [from, to]; u is an
// integer resolved mod 3^k by the tripling-step congruences (the z^(3) datum
// of the W^{-1} construction restricted to this range).
std::vector<Rational> resolve_lifts(const ParameterVectors& p, long from, long to) {
    Int u = 0;
    Int pow3 = 1;
    Rational lam_prod(1);  // Lambda_m = alpha_m / alpha_from
    for (long m = from; m < to; ++m) {
        Rational lam = lambda_between(p.angle(m), p.angle(m + 1), m);
        if (lam == Rational(1, 3)) {
            // constraint: Lambda_m (t_from + u) + (Lambda_m 3^k) v == 3 t_{m+1}  mod 3
            Rational P = lam_prod * Rational(pow3);
            if (!is_integer(P))
                throw CrtInconsistency("lift resolution: multiplier chain out of sync");
            Rational rho_q = Rational(3) * p.phase(m + 1) -
                             lam_prod * (p.phase(from) + Rational(u));
            if (!is_integer(rho_q))
                throw CrtInconsistency("lift resolution: phases violate the BC property");
            Int rho;
            mpz_fdiv_r_ui(rho.get_mpz_t(), rho_q.get_num().get_mpz_t(), 3);
            Int Pm;
            mpz_fdiv_r_ui(Pm.get_mpz_t(), P.get_num().get_mpz_t(), 3);
            // inverse of P mod 3: 1 -> 1, 2 -> 2
            Int v = (rho * Pm) % 3;
            u += pow3 * v;
            pow3 *= 3;
        }
        lam_prod *= lam;
    }
    std::vector<Rational> taus;
    taus.reserve(static_cast<size_t>(to - from + 1));
    Rational anchor = p.phase(from) + Rational(u);
    Rational lam_walk(1);
    taus.push_back(anchor);
    for (long m = from; m < to; ++m) {
        lam_walk *= lambda_between(p.angle(m), p.angle(m + 1), m);
        taus.push_back(lam_walk * anchor);
    }
    return taus;
}

// F(n*alpha + tau) for n in [n0, n1]; ceiling realized as -floor(-x)
std::vector<Int> floor_run(const Angle& alpha, const Rational& tau, Rounding mode, long n0,
                           long n1) {
    std::vector<Int> out;
    out.reserve(static_cast<size_t>(n1 - n0 + 1));
    bool neg = (mode == Rounding::ceiling);
    if (alpha.is_rational()) {
        Rational a = neg ? Rational(-alpha.rational()) : alpha.rational();
        Rational t = neg ? Rational(-tau) : tau;
        Rational y = Rational(n0) * a + t;
        Int f = floor_q(y);
        Rational frac = y - Rational(f);
        out.push_back(neg ? Int(-f) : f);
        for (long n = n0 + 1; n <= n1; ++n) {
            frac += a;
            Int step = floor_q(frac);
            f += step;
            frac -= Rational(step);
            out.push_back(neg ? Int(-f) : f);
        }
    } else {
        for (long n = n0; n <= n1; ++n) {
            Int f = neg ? Int(-floor_affine(-alpha, Int(n), Rational(-tau)))
                        : floor_affine(alpha, Int(n), tau);
            out.push_back(f);
        }
    }
    return out;
}

struct PreparedParams {
    ParameterVectors pv;   // rows [row_lo, row_hi + 1]
    Angle below;           // alpha_{row_lo - 1}, for the bottom priming rule
};

PreparedParams prepare(const ConstructionSpec& spec, std::vector<std::string>* warnings) {
    PreparedParams out;
    if (std::holds_alternative<SkewState>(spec.params)) {
        const auto& s = std::get<SkewState>(spec.params);
        out.pv = expand_parameters(s, spec.row_lo, spec.row_hi + 1, spec.variant_branch,
                                   warnings);
        // the priming rule needs only the angle of the row below the rect
        try {
            out.below = f_angle_inverse(out.pv.angle(spec.row_lo), spec.variant_branch);
        } catch (const AngleOutOfRange&) {
            // 2 (default branch) has no preimage in [1/3,2] other than the
            // branch point 1 itself, which never primes
            out.below = Angle(Rational(1));
            if (warnings)
                warnings->push_back("row below the rect sits at the branch point; bottom 0' rule idle");
        }
        return out;
    }
    const auto& given = std::get<ParameterVectors>(spec.params);
    if (given.lo > spec.row_lo - 1 || given.hi < spec.row_hi + 1)
        throw InsufficientRange(
            "basic_construct: parameter vectors must cover rows [rect.lo-1, rect.hi+1]");
    if (auto v = check_bc_property(given)) {
        std::ostringstream os;
        os << "basic_construct: BC property violated at row " << v->index << ": " << v->what;
        throw std::invalid_argument(os.str());
    }
    out.below = given.angle(spec.row_lo - 1);
    out.pv.lo = spec.row_lo;
    out.pv.hi = spec.row_hi + 1;
    for (long i = out.pv.lo; i <= out.pv.hi; ++i) {
        out.pv.angles.push_back(given.angle(i));
        out.pv.phases.push_back(given.phase(i));
    }
    return out;
}

template <typename CellSink>
void construct_cells(const ConstructionSpec& spec, std::vector<std::string>* warnings,
                     CellSink&& sink) {
    if (spec.row_lo > spec.row_hi || spec.col_lo > spec.col_hi)
        throw std::invalid_argument("basic_construct: empty rect");
    PreparedParams prep = prepare(spec, warnings);
    const ParameterVectors& pv = prep.pv;

    std::vector<Rational> taus = resolve_lifts(pv, pv.lo, pv.hi);
    long rows = spec.row_hi - spec.row_lo + 1;
    long cols = spec.col_hi - spec.col_lo + 1;

    // one floor run per parameter row; row m's tops reuse run m+1
    std::vector<std::vector<Int>> runs;
    runs.reserve(static_cast<size_t>(rows) + 1);
    for (long i = 0; i <= rows; ++i) {
        runs.push_back(floor_run(pv.angle(pv.lo + i), taus[static_cast<size_t>(i)],
                                 spec.rounding, spec.col_lo - 1, spec.col_hi));
    }

    Rational lo13(1, 3), hi12(1, 2);
    for (long i = 0; i < rows; ++i) {
        long m = spec.row_lo + i;
        const Angle& am = pv.angle(m);
        const Angle& below = (i == 0) ? prep.below : pv.angle(m - 1);
        Rational lam = lambda_between(am, pv.angle(m + 1), m);
        Rational side_c(0);
        if (spec.rounding == Rounding::ceiling)
            side_c = (lam == Rational(2)) ? Rational(-1) : Rational(2, 3);
        bool prime_bottom = in_closed(below, lo13, hi12);
        bool prime_top = in_closed(am, lo13, hi12);
        if (warnings) {
            if (below.compare(lo13) == 0 || below.compare(hi12) == 0) {
                std::ostringstream os;
                os << "row " << m << ": 0' rule hits interval endpoint below (alpha_{m-1} = "
                   << below.str() << ")";
                warnings->push_back(os.str());
            }
        }
        const auto& fm = runs[static_cast<size_t>(i)];
        const auto& fu = runs[static_cast<size_t>(i) + 1];
        for (long j = 0; j < cols; ++j) {
            size_t x = static_cast<size_t>(j);      // index of col-1 in the run
            size_t y = static_cast<size_t>(j) + 1;  // index of col
            CellLabels cell;
            cell.row = m;
            cell.col = spec.col_lo + j;
            cell.multiplier = lam;
            cell.bottom = static_cast<int>(Int(fm[y] - fm[x]).get_si());
            cell.top = static_cast<int>(Int(fu[y] - fu[x]).get_si());
            cell.left = lam * Rational(fm[x]) - Rational(fu[x]) + side_c;
            cell.right = lam * Rational(fm[y]) - Rational(fu[y]) + side_c;
            cell.bottom_primed = (cell.bottom == 0) && prime_bottom;
            cell.top_primed = (cell.top == 0) && prime_top;
            sink(cell);
        }
    }
}

}  // namespace

std::optional<BcViolation> check_bc_property(const ParameterVectors& p) {
    Rational third(1, 3);
    for (long i = p.lo; i <= p.hi; ++i) {
        if (p.angle(i).compare(third) < 0 || p.angle(i).compare(Rational(2)) > 0)
            return BcViolation{i, "angle outside [1/3, 2]"};
        if (p.phase(i) < 0 || p.phase(i) >= 1)
            return BcViolation{i, "phase outside [0, 1)"};
    }
    for (long i = p.lo; i < p.hi; ++i) {
        Rational lam;
        if (p.angle(i + 1) == p.angle(i) * Rational(2)) {
            Rational d = Rational(2) * p.phase(i) - p.phase(i + 1);
            if (!is_integer(d))
                return BcViolation{i, "doubling step: 2 t_i != t_{i+1} mod 1"};
        } else if (p.angle(i + 1) == p.angle(i) * third) {
            Rational d = Rational(3) * p.phase(i + 1) - p.phase(i);
            if (!is_integer(d))
                return BcViolation{i, "tripling step: t_i != 3 t_{i+1} mod 1"};
        } else {
            return BcViolation{i, "angle ratio not in {1/3, 2}"};
        }
    }
    return std::nullopt;
}

std::vector<CellLabels> sweep_cell_labels(const ConstructionSpec& spec,
                                          std::vector<std::string>* warnings) {
    std::vector<CellLabels> out;
    construct_cells(spec, warnings, [&](const CellLabels& c) { out.push_back(c); });
    return out;
}

Window basic_construct(const ConstructionSpec& spec, const TileSet& ts,
                       std::vector<std::string>* warnings) {
    Window w;
    w.origin_row = spec.row_lo;
    w.origin_col = spec.col_lo;
    w.height = spec.row_hi - spec.row_lo + 1;
    w.width = spec.col_hi - spec.col_lo + 1;
    w.ids.assign(static_cast<size_t>(w.width * w.height), -1);
    construct_cells(spec, warnings, [&](const CellLabels& c) {
        Tile t;
        t.multiplier = c.multiplier;
        t.bottom = c.bottom_primed ? Label::primed_zero() : Label::plain(c.bottom);
        t.top = c.top_primed ? Label::primed_zero() : Label::plain(c.top);
        t.left = c.left;
        t.right = c.right;
        auto id = ts.find(t);
        if (!id) {
            std::ostringstream os;
            os << "no matching tile at (" << c.row << "," << c.col << "): " << t.str();
            throw NoMatchingTile(os.str());
        }
        w.at(c.row, c.col) = *id;
    });
    return w;
}

ParameterVectors expand_parameters(const SkewState& s, long lo, long hi, bool variant_branch,
                                   std::vector<std::string>* warnings) {
    if (lo > hi) throw std::invalid_argument("expand_parameters: empty row range");
    if (s.alpha_coeff != 0)
        throw std::domain_error("expand_parameters: surd level-0 phases not supported");
    auto note_one = [&](long row, const Angle& a) {
        if (warnings && a.compare(Rational(1)) == 0) {
            std::ostringstream os;
            os << "orbit passes through angle 1 at row " << row << " ("
               << (variant_branch ? "variant" : "default") << " branch applied)";
            warnings->push_back(os.str());
        }
    };

    std::vector<Angle> angles(static_cast<size_t>(hi - lo + 1));
    std::vector<Rational> phases(static_cast<size_t>(hi - lo + 1));
    auto store = [&](long row, const SkewState& st) {
        if (row >= lo && row <= hi) {
            angles[static_cast<size_t>(row - lo)] = st.alpha;
            phases[static_cast<size_t>(row - lo)] = st.phase.level(0);
        }
    };

    SkewState cur = s;
    note_one(0, cur.alpha);
    store(0, cur);
    for (long i = 1; i <= hi; ++i) {
        cur = fhat(cur, variant_branch);
        note_one(i, cur.alpha);
        store(i, cur);
    }
    cur = s;
    for (long i = -1; i >= lo; --i) {
        cur = fhat_inverse(cur, variant_branch);
        note_one(i, cur.alpha);
        store(i, cur);
    }

    ParameterVectors p;
    p.lo = lo;
    p.hi = hi;
    p.angles = std::move(angles);
    p.phases = std::move(phases);
    return p;
}

SkewState recover_parameters(const ParameterVectors& p, int target_depth) {
    if (p.lo > 0 || p.hi < 0)
        throw InsufficientRange("recover_parameters: range must contain row 0");
    if (auto v = check_bc_property(p)) {
        std::ostringstream os;
        os << "recover_parameters: BC property violated at row " << v->index << ": "
           << v->what;
        throw std::invalid_argument(os.str());
    }

    // Lambda_i = alpha_i / alpha_0; the 3-valuations grow along triplings
    // above row 0, the 2-valuations along halvings below
    std::vector<long> j3{0};  // j3[i]: first row with i triplings below it
    {
        Rational lam_prod(1);
        for (long m = 0; m < p.hi && static_cast<int>(j3.size()) <= target_depth; ++m) {
            Rational lam = lambda_between(p.angle(m), p.angle(m + 1), m);
            if (lam == Rational(1, 3)) j3.push_back(m + 1);
        }
    }
    std::vector<long> j2{0};  // j2[i]: first |row| below 0 with i halvings
    {
        for (long m = 0; m > p.lo && static_cast<int>(j2.size()) <= target_depth; --m) {
            Rational lam = lambda_between(p.angle(m - 1), p.angle(m), m - 1);
            if (lam == Rational(2)) j2.push_back(-(m - 1));
        }
    }
    if (static_cast<int>(j3.size()) <= target_depth)
        throw InsufficientRange("recover_parameters: not enough triplings above row 0");
    if (static_cast<int>(j2.size()) <= target_depth)
        throw InsufficientRange("recover_parameters: not enough halvings below row 0");

    auto lambda_at = [&](long row) {
        Rational lam_prod(1);
        if (row >= 0) {
            for (long m = 0; m < row; ++m)
                lam_prod *= lambda_between(p.angle(m), p.angle(m + 1), m);
        } else {
            for (long m = 0; m > row; --m)
                lam_prod /= lambda_between(p.angle(m - 1), p.angle(m), m - 1);
        }
        return lam_prod;
    };

    // z^(3): solve Lambda^(3)_j z == t^(3)_j mod 1 level by level
    std::vector<Rational> z3(static_cast<size_t>(target_depth) + 1);
    z3[0] = p.phase(0);
    Int pow3 = 1;
    for (int j = 1; j <= target_depth; ++j) {
        pow3 *= 3;
        Rational lam = lambda_at(j3[static_cast<size_t>(j)]);
        const Rational& t = p.phase(j3[static_cast<size_t>(j)]);
        int hits = 0;
        Rational pick;
        for (int r = 0; r < 3; ++r) {
            Rational cand = z3[static_cast<size_t>(j - 1)] + Rational(r) * Rational(pow3) / 3;
            if (is_integer(lam * cand - t)) {
                ++hits;
                pick = cand;
            }
        }
        if (hits != 1)
            throw CrtInconsistency("recover_parameters: 3-adic level " + std::to_string(j) +
                                   " has " + std::to_string(hits) + " solutions");
        z3[static_cast<size_t>(j)] = pick;
    }

    // z^(2) analogously below row 0
    std::vector<Rational> z2(static_cast<size_t>(target_depth) + 1);
    z2[0] = p.phase(0);
    Int pow2 = 1;
    for (int j = 1; j <= target_depth; ++j) {
        pow2 *= 2;
        Rational lam = lambda_at(-j2[static_cast<size_t>(j)]);
        const Rational& t = p.phase(-j2[static_cast<size_t>(j)]);
        int hits = 0;
        Rational pick;
        for (int r = 0; r < 2; ++r) {
            Rational cand = z2[static_cast<size_t>(j - 1)] + Rational(r) * Rational(pow2) / 2;
            if (is_integer(lam * cand - t)) {
                ++hits;
                pick = cand;
            }
        }
        if (hits != 1)
            throw CrtInconsistency("recover_parameters: 2-adic level " + std::to_string(j) +
                                   " has " + std::to_string(hits) + " solutions");
        z2[static_cast<size_t>(j)] = pick;
    }

    // merge by CRT: z_i = z3_i mod 3^i and z2_i mod 2^i, z_i in [0, 6^i)
    std::vector<Rational> levels(static_cast<size_t>(target_depth) + 1);
    levels[0] = p.phase(0);
    Int p3 = 1, p2 = 1;
    for (int i = 1; i <= target_depth; ++i) {
        p3 *= 3;
        p2 *= 2;
        Rational diff = z2[static_cast<size_t>(i)] - z3[static_cast<size_t>(i)];
        if (!is_integer(diff))
            throw CrtInconsistency("recover_parameters: fractional CRT mismatch");
        Int d = diff.get_num();
        Int inv;
        if (mpz_invert(inv.get_mpz_t(), p3.get_mpz_t(), p2.get_mpz_t()) == 0)
            throw CrtInconsistency("recover_parameters: 3^i not invertible mod 2^i");
        Int w;
        mpz_fdiv_r(w.get_mpz_t(), Int(d * inv).get_mpz_t(), p2.get_mpz_t());
        levels[static_cast<size_t>(i)] = z3[static_cast<size_t>(i)] + Rational(p3 * w);
    }
    try {
        TorusPoint t(levels);  // constructor re-checks consistency
        return SkewState(p.angle(0), t);
    } catch (const std::invalid_argument& e) {
        throw CrtInconsistency(std::string("recover_parameters: ") + e.what());
    }
}

Window k_map(const SkewState& s, Rounding mode, long row_lo, long row_hi, long col_lo,
             long col_hi, bool variant_branch, const TileSet& ts,
             std::vector<std::string>* warnings) {
    ConstructionSpec spec;
    spec.params = s;
    spec.rounding = mode;
    spec.row_lo = row_lo;
    spec.row_hi = row_hi;
    spec.col_lo = col_lo;
    spec.col_hi = col_hi;
    spec.variant_branch = variant_branch;
    return basic_construct(spec, ts, warnings);
}

}  // namespace kc
