#include "kc/tiles.hpp"

#include "kc/construction.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace kc {

Label Label::plain(int v) {
    if (v < 0 || v > 2) throw std::invalid_argument("Label: value outside {0,1,2}");
    return Label(v == 0 ? 0 : v + 1);
}

Label Label::primed_zero() { return Label(1); }

std::string Label::str() const {
    switch (code_) {
        case 0: return "0";
        case 1: return "0'";
        case 2: return "1";
        default: return "2";
    }
}

Label Label::parse(const std::string& s) {
    if (s == "0") return plain(0);
    if (s == "0'") return primed_zero();
    if (s == "1") return plain(1);
    if (s == "2") return plain(2);
    throw std::invalid_argument("Label: bad token '" + s + "'");
}

bool Tile::operator<(const Tile& o) const {
    if (multiplier != o.multiplier) return multiplier < o.multiplier;
    if (bottom != o.bottom) return bottom < o.bottom;
    if (left != o.left) return left < o.left;
    if (top != o.top) return top < o.top;
    return right < o.right;
}

std::string Tile::str() const {
    std::ostringstream os;
    os << multiplier.get_str() << ";" << bottom.str() << ";" << left.get_str() << ";"
       << top.str() << ";" << right.get_str();
    return os.str();
}

bool check_multiplier(const Tile& t) {
    return t.multiplier * Rational(t.bottom.numeric()) + t.left ==
           Rational(t.top.numeric()) + t.right;
}

TileSet::TileSet(std::vector<Tile> tiles) : tiles_(std::move(tiles)) {
    std::sort(tiles_.begin(), tiles_.end());
    tiles_.erase(std::unique(tiles_.begin(), tiles_.end()), tiles_.end());
}

std::optional<int> TileSet::find(const Tile& t) const {
    auto it = std::lower_bound(tiles_.begin(), tiles_.end(), t);
    if (it != tiles_.end() && *it == t) return static_cast<int>(it - tiles_.begin());
    return std::nullopt;
}

std::string TileSet::export_table() const {
    std::ostringstream os;
    for (int i = 0; i < size(); ++i) os << i << ";" << tiles_[static_cast<size_t>(i)].str() << "\n";
    return os.str();
}

const TileSet& TileSet::canonical() {
    static const TileSet instance = derive_tileset();
    return instance;
}

TileSet derive_tileset() {
    // Sweep the construction's raw cell labels over parameters covering all
    // four row-type angle ranges, both rounding modes, and phases that
    // exercise every carry and priming case.
    std::vector<Tile> found;
    for (int an = 1; an <= 48; ++an) {
        Rational alpha0(an, 24);  // 1/24 steps across (0, 2]
        if (alpha0 < Rational(1, 3) || alpha0 > 2) continue;
        for (int tn = 0; tn < 8; ++tn) {
            Rational t0(tn, 8);
            for (Rounding mode : {Rounding::floor, Rounding::ceiling}) {
                SkewState s(Angle(alpha0), TorusPoint::from_value(4, t0));
                ConstructionSpec spec;
                spec.params = s;
                spec.rounding = mode;
                spec.row_lo = 0;
                spec.row_hi = 2;
                spec.col_lo = -4;
                spec.col_hi = 4;
                for (const CellLabels& c : sweep_cell_labels(spec)) {
                    Tile t;
                    t.multiplier = c.multiplier;
                    t.bottom = c.bottom_primed ? Label::primed_zero() : Label::plain(c.bottom);
                    t.top = c.top_primed ? Label::primed_zero() : Label::plain(c.top);
                    t.left = c.left;
                    t.right = c.right;
                    found.push_back(t);
                }
            }
        }
    }
    TileSet ts(std::move(found));
    if (ts.size() != 13)
        throw std::runtime_error("derive_tileset: sweep produced " +
                                 std::to_string(ts.size()) + " tiles, expected 13");
    return ts;
}

std::string Window::serialize() const {
    std::ostringstream os;
    os << width << " " << height << " " << origin_row << " " << origin_col << "\n";
    for (long r = 0; r < height; ++r) {
        for (long c = 0; c < width; ++c) {
            if (c) os << " ";
            os << ids[static_cast<size_t>(r * width + c)];
        }
        os << "\n";
    }
    return os.str();
}

Window Window::deserialize(const std::string& s) {
    std::istringstream is(s);
    Window w;
    if (!(is >> w.width >> w.height >> w.origin_row >> w.origin_col))
        throw std::invalid_argument("Window: bad header");
    if (w.width <= 0 || w.height <= 0) throw std::invalid_argument("Window: bad size");
    w.ids.resize(static_cast<size_t>(w.width * w.height));
    for (auto& id : w.ids)
        if (!(is >> id)) throw std::invalid_argument("Window: truncated ids");
    int extra;
    if (is >> extra) throw std::invalid_argument("Window: trailing data");
    return w;
}

ValidationReport validate_window(const Window& w, const TileSet& ts) {
    ValidationReport rep;
    for (long r = w.row_lo(); r <= w.row_hi(); ++r) {
        for (long c = w.col_lo(); c <= w.col_hi(); ++c) {
            const Tile& t = ts.tile(w.at(r, c));
            if (c < w.col_hi()) {
                const Tile& right = ts.tile(w.at(r, c + 1));
                if (t.right != right.left)
                    rep.violations.push_back(
                        {r, c, true,
                         "right " + t.right.get_str() + " vs left " + right.left.get_str()});
            }
            if (r < w.row_hi()) {
                const Tile& above = ts.tile(w.at(r + 1, c));
                if (t.top != above.bottom)
                    rep.violations.push_back({r, c, false,
                                              "top " + t.top.str() + " vs bottom " +
                                                  above.bottom.str()});
            }
        }
    }
    return rep;
}

std::vector<std::vector<int>> project_bottom(const Window& w, const TileSet& ts) {
    std::vector<std::vector<int>> grid;
    grid.reserve(static_cast<size_t>(w.height));
    for (long r = w.row_lo(); r <= w.row_hi(); ++r) {
        std::vector<int> row;
        row.reserve(static_cast<size_t>(w.width));
        for (long c = w.col_lo(); c <= w.col_hi(); ++c)
            row.push_back(ts.tile(w.at(r, c)).bottom.numeric());
        grid.push_back(std::move(row));
    }
    return grid;
}

Word bottom_word(const Window& w, long row, const TileSet& ts) {
    Word out;
    out.base_index = w.col_lo();
    for (long c = w.col_lo(); c <= w.col_hi(); ++c)
        out.symbols.push_back(ts.tile(w.at(row, c)).bottom.numeric());
    return out;
}

Word top_word(const Window& w, long row, const TileSet& ts) {
    Word out;
    out.base_index = w.col_lo();
    for (long c = w.col_lo(); c <= w.col_hi(); ++c)
        out.symbols.push_back(ts.tile(w.at(row, c)).top.numeric());
    return out;
}

std::string row_type_name(RowType t) {
    switch (t) {
        case RowType::one_third: return "1/3";
        case RowType::two_one: return "2.1";
        case RowType::two_two_t: return "2.2t";
        default: return "2.2b";
    }
}

namespace {

Rational row_multiplier(const Window& w, long row, const TileSet& ts) {
    Rational m = ts.tile(w.at(row, w.col_lo())).multiplier;
    for (long c = w.col_lo() + 1; c <= w.col_hi(); ++c)
        if (ts.tile(w.at(row, c)).multiplier != m)
            throw std::runtime_error("row has mixed multipliers (invalid window)");
    return m;
}

}  // namespace

RowType classify_row(const Window& w, long row, const TileSet& ts) {
    Rational m = row_multiplier(w, row, ts);
    if (m == Rational(1, 3)) return RowType::one_third;

    bool below = w.contains(row - 1, w.col_lo());
    bool above = w.contains(row + 1, w.col_lo());
    if (below && above) {
        Rational mb = row_multiplier(w, row - 1, ts);
        Rational ma = row_multiplier(w, row + 1, ts);
        Rational third(1, 3);
        if (mb == third && ma == third) return RowType::two_one;
        if (mb == third && ma == 2) return RowType::two_two_b;
        if (mb == 2 && ma == third) return RowType::two_two_t;
        throw std::runtime_error("three consecutive type-2 rows (invalid window)");
    }

    // angle ranges from the row-type proposition, when decisive
    RatInterval est = estimate_angle(bottom_word(w, row, ts));
    if (est.lo > Rational(1, 2) && est.hi < Rational(2, 3)) return RowType::two_one;
    if (est.hi < Rational(1, 2)) return RowType::two_two_b;
    if (est.lo > Rational(2, 3) && est.hi < 1) return RowType::two_two_t;
    throw InsufficientContext("classify_row: type-2 row needs both vertical neighbors");
}

namespace {

bool in_type_subset(const Tile& t, RowType ty) {
    Rational third(1, 3);
    switch (ty) {
        case RowType::one_third:
            return t.multiplier == third;
        case RowType::two_one:
            return t.multiplier == 2 && !t.bottom.primed() && !t.top.primed() &&
                   t.top.numeric() >= 1;
        case RowType::two_two_b:
            return t.multiplier == 2 && !t.bottom.primed() &&
                   (t.top.primed() || t.top.numeric() == 1);
        case RowType::two_two_t:
            return t.multiplier == 2 && (t.bottom.primed() || t.bottom.numeric() == 1) &&
                   !t.top.primed() && t.top.numeric() >= 1;
    }
    return false;
}

}  // namespace

std::vector<std::vector<int>> enumerate_row_fillings(const Word& top, const Word& bottom,
                                                     RowType hint, const TileSet& ts) {
    if (top.size() != bottom.size())
        throw std::invalid_argument("enumerate_row_fillings: length mismatch");
    long n = top.size();
    std::vector<std::vector<int>> candidates(static_cast<size_t>(n));
    for (long k = 0; k < n; ++k) {
        for (int id = 0; id < ts.size(); ++id) {
            const Tile& t = ts.tile(id);
            if (in_type_subset(t, hint) &&
                t.top.numeric() == top.symbols[static_cast<size_t>(k)] &&
                t.bottom.numeric() == bottom.symbols[static_cast<size_t>(k)])
                candidates[static_cast<size_t>(k)].push_back(id);
        }
    }
    std::vector<std::vector<int>> out;
    std::vector<int> path;
    auto dfs = [&](auto&& self, long k) -> void {
        if (k == n) {
            out.push_back(path);
            return;
        }
        for (int id : candidates[static_cast<size_t>(k)]) {
            if (k > 0 && ts.tile(path.back()).right != ts.tile(id).left) continue;
            path.push_back(id);
            self(self, k + 1);
            path.pop_back();
        }
    };
    dfs(dfs, 0);
    return out;
}

std::vector<std::vector<std::pair<int, int>>> enumerate_stacked_fillings(
    const Word& top, const Word& bottom, const TileSet& ts) {
    if (top.size() != bottom.size())
        throw std::invalid_argument("enumerate_stacked_fillings: length mismatch");
    long n = top.size();
    using Pair = std::pair<int, int>;  // (lower 2.2b id, upper 2.2t id)
    std::vector<std::vector<Pair>> candidates(static_cast<size_t>(n));
    for (long k = 0; k < n; ++k) {
        for (int lo = 0; lo < ts.size(); ++lo) {
            const Tile& lt = ts.tile(lo);
            if (!in_type_subset(lt, RowType::two_two_b) ||
                lt.bottom.numeric() != bottom.symbols[static_cast<size_t>(k)])
                continue;
            for (int up = 0; up < ts.size(); ++up) {
                const Tile& ut = ts.tile(up);
                if (!in_type_subset(ut, RowType::two_two_t) ||
                    ut.top.numeric() != top.symbols[static_cast<size_t>(k)])
                    continue;
                if (lt.top != ut.bottom) continue;  // exact, primes included
                candidates[static_cast<size_t>(k)].push_back({lo, up});
            }
        }
    }
    std::vector<std::vector<Pair>> out;
    std::vector<Pair> path;
    auto dfs = [&](auto&& self, long k) -> void {
        if (k == n) {
            out.push_back(path);
            return;
        }
        for (const Pair& pr : candidates[static_cast<size_t>(k)]) {
            if (k > 0) {
                const Pair& prev = path.back();
                if (ts.tile(prev.first).right != ts.tile(pr.first).left) continue;
                if (ts.tile(prev.second).right != ts.tile(pr.second).left) continue;
            }
            path.push_back(pr);
            self(self, k + 1);
            path.pop_back();
        }
    };
    dfs(dfs, 0);
    return out;
}

}  // namespace kc
