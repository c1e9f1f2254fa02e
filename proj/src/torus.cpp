#include "kc/torus.hpp"

#include <sstream>

namespace kc {

TorusPoint::TorusPoint(std::vector<Rational> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw std::invalid_argument("TorusPoint: need at least level 0");
    for (size_t i = 0; i < levels_.size(); ++i) {
        levels_[i] = mod_q(levels_[i], pow6(static_cast<long>(i)));
    }
    if (!consistent()) throw std::invalid_argument("TorusPoint: inconsistent levels");
}

TorusPoint TorusPoint::zero(int depth) {
    TorusPoint t;
    t.levels_.assign(static_cast<size_t>(depth) + 1, Rational(0));
    return t;
}

TorusPoint TorusPoint::from_value(int depth, const Rational& v) {
    TorusPoint t;
    t.levels_.clear();
    for (int i = 0; i <= depth; ++i) t.levels_.push_back(mod_q(v, pow6(i)));
    return t;
}

bool TorusPoint::consistent() const {
    for (size_t i = 0; i + 1 < levels_.size(); ++i) {
        Rational lo = levels_[i];
        Rational hi = mod_q(levels_[i + 1], pow6(static_cast<long>(i)));
        if (lo != hi) return false;
    }
    return true;
}

std::string TorusPoint::serialize() const {
    std::ostringstream os;
    os << depth();
    for (const auto& l : levels_) os << ";" << l.get_str();
    return os.str();
}

TorusPoint TorusPoint::deserialize(const std::string& s) {
    std::istringstream is(s);
    std::string tok;
    if (!std::getline(is, tok, ';')) throw std::invalid_argument("TorusPoint: empty");
    int depth = std::stoi(tok);
    std::vector<Rational> levels;
    while (std::getline(is, tok, ';')) levels.push_back(parse_rational(tok));
    if (static_cast<int>(levels.size()) != depth + 1)
        throw std::invalid_argument("TorusPoint: depth/levels mismatch");
    return TorusPoint(std::move(levels));
}

TorusPoint scalar_multiply(const TorusPoint& t, Scalar a) {
    std::vector<Rational> out;
    switch (a) {
        case Scalar::two:
        case Scalar::three: {
            Rational m(a == Scalar::two ? 2 : 3);
            out.reserve(t.depth() + 1);
            for (int i = 0; i <= t.depth(); ++i)
                out.push_back(mod_q(m * t.level(i), pow6(i)));
            break;
        }
        case Scalar::half:
        case Scalar::third: {
            // M_{1/a}(t_0, t_1, ...) = M_{6/a}(t_1/6, t_2/6, ...)
            if (t.depth() < 1)
                throw DepthExhausted("scalar_multiply: depth 0 cannot be divided");
            Rational div(a == Scalar::half ? 2 : 3);
            out.reserve(t.depth());
            for (int i = 1; i <= t.depth(); ++i)
                out.push_back(mod_q(t.level(i) / div, pow6(i - 1)));
            break;
        }
    }
    return TorusPoint(std::move(out));
}

TorusPoint scalar_add(const TorusPoint& t, const Rational& r) {
    std::vector<Rational> out;
    out.reserve(t.depth() + 1);
    for (int i = 0; i <= t.depth(); ++i) out.push_back(mod_q(t.level(i) + r, pow6(i)));
    return TorusPoint(std::move(out));
}

TorusPoint torus_add(const TorusPoint& a, const TorusPoint& b) {
    if (a.depth() != b.depth())
        throw std::invalid_argument("torus_add: depth mismatch");
    std::vector<Rational> out;
    out.reserve(a.depth() + 1);
    for (int i = 0; i <= a.depth(); ++i)
        out.push_back(mod_q(a.level(i) + b.level(i), pow6(i)));
    return TorusPoint(std::move(out));
}

namespace {
void require_in_range(const Angle& a) {
    if (a.compare(Rational(1, 3)) < 0 || a.compare(Rational(2)) > 0)
        throw AngleOutOfRange("angle outside [1/3, 2]: " + a.str());
}
}  // namespace

Angle f_angle(const Angle& a, bool variant_branch) {
    require_in_range(a);
    int cmp1 = a.compare(Rational(1));
    bool doubling = variant_branch ? (cmp1 <= 0) : (cmp1 < 0);
    return doubling ? a * Rational(2) : a * Rational(1, 3);
}

Angle f_angle_inverse(const Angle& a, bool variant_branch) {
    require_in_range(a);
    // doubling branch image is [2/3,2) (variant: [2/3,2]); tripling branch
    // image is [1/3,2/3] (variant: (1/3,2/3]); at the seam 2/3 both 1/3 and
    // 2 are preimages; we take the doubling preimage 1/3, whose backward
    // orbit continues (2 has no further preimage under the default branch)
    int cmp23 = a.compare(Rational(2, 3));
    if (cmp23 < 0) {
        if (variant_branch && a.compare(Rational(1, 3)) == 0)
            throw AngleOutOfRange("f_angle_inverse: 1/3 has no preimage under the variant branch");
        return a * Rational(3);
    }
    if (a.compare(Rational(2)) == 0 && !variant_branch)
        throw AngleOutOfRange("f_angle_inverse: 2 has no preimage under the default branch");
    return a * Rational(1, 2);
}

SkewState fhat(const SkewState& s, bool variant_branch) {
    require_in_range(s.alpha);
    if (s.alpha_coeff != 0)
        throw std::domain_error("fhat: surd level-0 phases not supported");
    int cmp1 = s.alpha.compare(Rational(1));
    bool doubling = variant_branch ? (cmp1 <= 0) : (cmp1 < 0);
    SkewState r;
    if (doubling) {
        r.alpha = s.alpha * Rational(2);
        r.phase = scalar_multiply(s.phase, Scalar::two);
    } else {
        r.alpha = s.alpha * Rational(1, 3);
        r.phase = scalar_multiply(s.phase, Scalar::third);
    }
    return r;
}

SkewState fhat_inverse(const SkewState& s, bool variant_branch) {
    require_in_range(s.alpha);
    if (s.alpha_coeff != 0)
        throw std::domain_error("fhat_inverse: surd level-0 phases not supported");
    SkewState r;
    r.alpha = f_angle_inverse(s.alpha, variant_branch);
    // a preimage in the tripling domain means the forward step divided by 3
    bool tripling = variant_branch ? (r.alpha.compare(Rational(1)) > 0)
                                   : (r.alpha.compare(Rational(1)) >= 0);
    r.phase = scalar_multiply(s.phase, tripling ? Scalar::three : Scalar::half);
    return r;
}

SkewState that(const SkewState& s) {
    SkewState r = s;
    if (s.alpha.is_rational()) {
        r.phase = scalar_add(s.phase, s.alpha.rational());
        return r;
    }
    if (s.phase.depth() != 0)
        throw std::domain_error("that: surd angle phases supported at level 0 only");
    // level-0 value is surd_off + alpha_coeff * alpha; adding alpha and
    // reducing mod 1 adjusts the rational part by an integer
    Int coeff = s.alpha_coeff + 1;
    Rational base = (s.alpha_coeff == 0) ? s.phase.level(0) : s.surd_off;
    Int k = floor_affine(s.alpha, coeff, base);
    r.phase = TorusPoint::zero(0);
    r.surd_off = base - Rational(k);
    r.alpha_coeff = coeff;
    return r;
}

}  // namespace kc
