#pragma once

// Finite truncations of the inverse limit of the circles R/(6^n Z), the
// scalar maps M_a and A_r on them, and the skew-product generators.
//
// A point is stored as levels (t_0, ..., t_K) with t_i in [0, 6^i) and the
// consistency condition t_i = t_{i+1} mod 6^i. The depth K is an explicit
// budget: dividing by 2 or 3 costs one level, so every consumer must ask
// for the depth it needs up front.

#include "kc/angle.hpp"
#include "kc/rational.hpp"

#include <string>
#include <vector>

namespace kc {

struct DepthExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AngleOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Scalar { two, three, half, third };

class TorusPoint {
public:
    TorusPoint() : levels_(1, Rational(0)) {}
    explicit TorusPoint(std::vector<Rational> levels);

    static TorusPoint zero(int depth);
    // lift of a single value v in [0, 6^depth): t_i = v mod 6^i
    static TorusPoint from_value(int depth, const Rational& v);

    int depth() const { return static_cast<int>(levels_.size()) - 1; }
    const Rational& level(int i) const { return levels_.at(i); }
    const std::vector<Rational>& levels() const { return levels_; }

    bool consistent() const;

    bool operator==(const TorusPoint& o) const { return levels_ == o.levels_; }
    bool operator!=(const TorusPoint& o) const { return !(*this == o); }

    // "depth;t0;t1;..." with exact rationals
    std::string serialize() const;
    static TorusPoint deserialize(const std::string& s);

private:
    std::vector<Rational> levels_;
};

TorusPoint scalar_multiply(const TorusPoint& t, Scalar a);
TorusPoint scalar_add(const TorusPoint& t, const Rational& r);
// level-wise addition (the group law)
TorusPoint torus_add(const TorusPoint& a, const TorusPoint& b);

struct SkewState {
    Angle alpha;
    TorusPoint phase;
    // surd level-0 extension: when alpha_coeff != 0 (depth-0, surd angle
    // only) the actual level-0 phase is surd_off + alpha_coeff * alpha,
    // kept reduced into [0,1)
    Int alpha_coeff = 0;
    Rational surd_off = Rational(0);

    SkewState() = default;
    SkewState(Angle a, TorusPoint t) : alpha(std::move(a)), phase(std::move(t)) {}

    bool operator==(const SkewState& o) const {
        return alpha == o.alpha && phase == o.phase && alpha_coeff == o.alpha_coeff &&
               surd_off == o.surd_off;
    }
};

// the fiber map f on angles; variant selects the (1,2] branch split
Angle f_angle(const Angle& a, bool variant_branch = false);
Angle f_angle_inverse(const Angle& a, bool variant_branch = false);

// skew extension: (2a, 2t) on [1/3,1), (a/3, t/3) on [1,2]
SkewState fhat(const SkewState& s, bool variant_branch = false);
SkewState fhat_inverse(const SkewState& s, bool variant_branch = false);

// T-hat: phase advanced by alpha, angle unchanged
SkewState that(const SkewState& s);

}  // namespace kc
