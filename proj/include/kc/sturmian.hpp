#pragma once

// Rotation (Sturmian) words, balancedness, angle/phase recovery and the
// straddle-word scan. A rotation word has symbols
//     x_i = F(i*alpha + t) - F((i-1)*alpha + t)
// where F is floor or ceiling; everything here is computed exactly.

#include "kc/angle.hpp"
#include "kc/circle.hpp"
#include "kc/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kc {

enum class Rounding { floor, ceiling };

struct Word {
    std::vector<int> symbols;
    long base_index = 1;  // position of the first symbol

    long size() const { return static_cast<long>(symbols.size()); }
    int at_pos(long i) const { return symbols.at(static_cast<size_t>(i - base_index)); }

    bool operator==(const Word& o) const {
        return symbols == o.symbols && base_index == o.base_index;
    }

    // "@base:digits", e.g. "@1:1212"
    std::string serialize() const;
    static Word deserialize(const std::string& s);
};

Word rotation_word(const Angle& alpha, const Rational& t, Rounding mode, long i_from,
                   long i_to);

struct BalanceResult {
    bool balanced = true;
    // on failure: equal-length factors with symbol sums differing by >= 2
    Word witness_u, witness_v;
};
BalanceResult is_balanced(const Word& w);

struct UnbalancedWord : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// closed rational interval guaranteed to contain the angle of every
// bi-infinite rotation sequence with w as a factor; width <= 2/len(w)
struct RatInterval {
    Rational lo, hi;
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
};
RatInterval estimate_angle(const Word& w);

// The exact set of phases t for which rotation_word(alpha, t, mode,
// w.base_index .. w.base_index + len - 1) == w. Cells are half-open:
// [lo, hi) within [0,1) for floor, (lo, hi] within (0,1] for ceiling.
struct PhaseCell {
    LinearValue lo, hi;
};
std::vector<PhaseCell> phase_interval(const Word& w, const Angle& alpha, Rounding mode);

// Index of a misaligned straddle pair: length-4 factors (top_i..top_{i+3},
// bottom_i..bottom_{i+3}), each of straddle shape (ends equal, middles
// distinct), whose middle inequalities point in opposite directions.
std::optional<long> detect_misaligned_straddle(const Word& top, const Word& bottom);

}  // namespace kc
