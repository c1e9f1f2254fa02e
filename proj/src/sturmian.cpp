#include "kc/sturmian.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace kc {

std::string Word::serialize() const {
    std::ostringstream os;
    os << "@" << base_index << ":";
    for (int s : symbols) {
        if (s < 0 || s > 9) throw std::domain_error("Word: symbol out of digit range");
        os << s;
    }
    return os.str();
}

Word Word::deserialize(const std::string& s) {
    if (s.empty() || s[0] != '@') throw std::invalid_argument("Word: expected '@'");
    auto colon = s.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("Word: expected ':'");
    Word w;
    w.base_index = std::stol(s.substr(1, colon - 1));
    for (size_t i = colon + 1; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw std::invalid_argument("Word: bad digit");
        w.symbols.push_back(s[i] - '0');
    }
    return w;
}

Word rotation_word(const Angle& alpha, const Rational& t, Rounding mode, long i_from,
                   long i_to) {
    if (i_from > i_to) throw std::invalid_argument("rotation_word: empty range");
    Word w;
    w.base_index = i_from;
    w.symbols.reserve(static_cast<size_t>(i_to - i_from + 1));
    auto F = [&](long i) {
        return mode == Rounding::floor ? floor_affine(alpha, Int(i), t)
                                       : ceil_affine(alpha, Int(i), t);
    };
    Int prev = F(i_from - 1);
    for (long i = i_from; i <= i_to; ++i) {
        Int cur = F(i);
        w.symbols.push_back(static_cast<int>(Int(cur - prev).get_si()));
        prev = cur;
    }
    return w;
}

BalanceResult is_balanced(const Word& w) {
    const auto& s = w.symbols;
    long n = w.size();
    if (n == 0) return {};
    // prefix sums; for every factor length track min and max window sums
    std::vector<long> pre(static_cast<size_t>(n) + 1, 0);
    for (long i = 0; i < n; ++i) pre[i + 1] = pre[i] + s[static_cast<size_t>(i)];
    for (long len = 1; len <= n; ++len) {
        long best = 0, worst = 0;  // start indices
        for (long i = 0; i + len <= n; ++i) {
            long sum = pre[i + len] - pre[i];
            if (sum > pre[best + len] - pre[best]) best = i;
            if (sum < pre[worst + len] - pre[worst]) worst = i;
        }
        long hi = pre[best + len] - pre[best];
        long lo = pre[worst + len] - pre[worst];
        if (hi - lo > 1) {
            BalanceResult r;
            r.balanced = false;
            r.witness_u.base_index = w.base_index + best;
            r.witness_u.symbols.assign(s.begin() + best, s.begin() + best + len);
            r.witness_v.base_index = w.base_index + worst;
            r.witness_v.symbols.assign(s.begin() + worst, s.begin() + worst + len);
            return r;
        }
    }
    return {};
}

RatInterval estimate_angle(const Word& w) {
    BalanceResult b = is_balanced(w);
    if (!b.balanced)
        throw UnbalancedWord("estimate_angle: word is not balanced: " + w.serialize());
    long n = w.size();
    if (n == 0) throw std::invalid_argument("estimate_angle: empty word");
    long sum = 0;
    for (int s : w.symbols) sum += s;
    // any containing rotation sequence satisfies |sum - n*alpha| <= 1
    Rational lo(sum - 1, n), hi(sum + 1, n);
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

std::vector<PhaseCell> phase_interval(const Word& w, const Angle& alpha, Rounding mode) {
    if (w.size() == 0) throw std::invalid_argument("phase_interval: empty word");
    long i_from = w.base_index;
    long i_to = w.base_index + w.size() - 1;

    // the word as a function of t changes only where some i*alpha + t
    // crosses an integer, i.e. at t = -i*alpha mod 1
    std::vector<LinearValue> cuts;
    for (long i = i_from - 1; i <= i_to; ++i) {
        LinearValue v(Rational(0), Int(-i));
        cuts.push_back(linear_mod(alpha, v, Rational(1)));
    }
    cuts.emplace_back(Rational(0), Int(0));
    auto cmp = [&](const LinearValue& a, const LinearValue& b) {
        return linear_cmp(alpha, a, b) < 0;
    };
    std::sort(cuts.begin(), cuts.end(), cmp);
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [&](const LinearValue& a, const LinearValue& b) {
                               return linear_cmp(alpha, a, b) == 0;
                           }),
               cuts.end());

    // evaluate the word on each cell: floor words are right-continuous in t
    // (evaluate at the left endpoint, cells [p_k, p_{k+1})); ceiling words are
    // left-continuous (evaluate at the right endpoint, cells (p_k, p_{k+1}])
    auto word_at = [&](const LinearValue& t) {
        std::vector<int> sym;
        sym.reserve(static_cast<size_t>(w.size()));
        auto F = [&](long i) -> Int {
            if (mode == Rounding::floor)
                return floor_affine_q(alpha, Rational(Int(i) + t.coeff), t.off);
            return Int(-floor_affine_q(alpha, Rational(Int(-Int(i) - t.coeff)), Rational(-t.off)));
        };
        Int prev = F(i_from - 1);
        for (long i = i_from; i <= i_to; ++i) {
            Int cur = F(i);
            sym.push_back(static_cast<int>(Int(cur - prev).get_si()));
            prev = cur;
        }
        return sym;
    };

    std::vector<PhaseCell> out;
    size_t k = cuts.size();
    for (size_t idx = 0; idx < k; ++idx) {
        LinearValue lo = cuts[idx];
        LinearValue hi = (idx + 1 < k) ? cuts[idx + 1]
                                       : LinearValue(cuts[0].off + 1, cuts[0].coeff);
        bool match;
        if (mode == Rounding::floor) {
            match = (word_at(lo) == w.symbols);
        } else {
            match = (word_at(hi) == w.symbols);
        }
        if (match) {
            if (!out.empty() && linear_cmp(alpha, out.back().hi, lo) == 0) {
                out.back().hi = hi;  // merge adjacent equal cells
            } else {
                out.push_back({lo, hi});
            }
        }
    }
    return out;
}

std::optional<long> detect_misaligned_straddle(const Word& top, const Word& bottom) {
    if (top.size() != bottom.size())
        throw std::invalid_argument("detect_misaligned_straddle: length mismatch");
    const auto& t = top.symbols;
    const auto& b = bottom.symbols;
    for (size_t i = 0; i + 3 < t.size(); ++i) {
        bool t_straddle = t[i] == t[i + 3] && t[i + 1] != t[i + 2];
        bool b_straddle = b[i] == b[i + 3] && b[i + 1] != b[i + 2];
        if (t_straddle && b_straddle &&
            (t[i + 1] - t[i + 2]) * (b[i + 1] - b[i + 2]) < 0) {
            return top.base_index + static_cast<long>(i);
        }
    }
    return std::nullopt;
}

}  // namespace kc
