#pragma once

// The 13-tile Kari-Culik set, Wang adjacency validation, the bottom-label
// projection, row typing and the row-filling (Phi_2) enumerations.
//
// Horizontal labels are exact rationals; vertical labels live in
// {0, 0', 1, 2} where 0' is a distinct symbol for adjacency but collapses
// to 0 under projection and in the multiplier identity.

#include "kc/rational.hpp"
#include "kc/sturmian.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kc {

class Label {
public:
    Label() : code_(0) {}
    static Label plain(int v);  // 0, 1 or 2
    static Label primed_zero();

    int numeric() const { return code_ <= 1 ? 0 : code_ - 1; }
    bool primed() const { return code_ == 1; }

    bool operator==(const Label& o) const { return code_ == o.code_; }
    bool operator!=(const Label& o) const { return code_ != o.code_; }
    bool operator<(const Label& o) const { return code_ < o.code_; }  // 0 < 0' < 1 < 2

    std::string str() const;
    static Label parse(const std::string& s);

private:
    explicit Label(int code) : code_(code) {}
    int code_;  // 0 -> "0", 1 -> "0'", 2 -> "1", 3 -> "2"
};

struct Tile {
    Rational multiplier;  // 1/3 or 2
    Label bottom;
    Rational left;
    Label top;
    Rational right;

    bool operator==(const Tile& o) const {
        return multiplier == o.multiplier && bottom == o.bottom && left == o.left &&
               top == o.top && right == o.right;
    }
    bool operator<(const Tile& o) const;  // canonical order
    std::string str() const;
};

// lambda * bottom + left == top + right, primes read as 0
bool check_multiplier(const Tile& t);

class TileSet {
public:
    explicit TileSet(std::vector<Tile> tiles);

    int size() const { return static_cast<int>(tiles_.size()); }
    const Tile& tile(int id) const { return tiles_.at(static_cast<size_t>(id)); }
    std::optional<int> find(const Tile& t) const;

    // "id;multiplier;bottom;left;top;right" per line
    std::string export_table() const;

    // the canonical 13-tile set, derived once by sweeping the Basic
    // Construction over a covering parameter grid
    static const TileSet& canonical();

private:
    std::vector<Tile> tiles_;
};

// sweep-based derivation; throws if the sweep does not yield exactly 13 tiles
TileSet derive_tileset();

struct Window {
    long width = 0, height = 0;
    long origin_row = 0, origin_col = 0;  // coordinates of ids[0]
    std::vector<int> ids;                 // row-major, rows ascending

    long row_lo() const { return origin_row; }
    long row_hi() const { return origin_row + height - 1; }
    long col_lo() const { return origin_col; }
    long col_hi() const { return origin_col + width - 1; }
    bool contains(long r, long c) const {
        return r >= row_lo() && r <= row_hi() && c >= col_lo() && c <= col_hi();
    }
    int at(long r, long c) const {
        return ids.at(static_cast<size_t>((r - origin_row) * width + (c - origin_col)));
    }
    int& at(long r, long c) {
        return ids.at(static_cast<size_t>((r - origin_row) * width + (c - origin_col)));
    }

    bool operator==(const Window& o) const {
        return width == o.width && height == o.height && origin_row == o.origin_row &&
               origin_col == o.origin_col && ids == o.ids;
    }

    // header "width height origin_row origin_col", then row-major ids
    std::string serialize() const;
    static Window deserialize(const std::string& s);
};

struct EdgeViolation {
    long row, col;        // cell whose right/top edge mismatches
    bool horizontal;      // true: (row,col)-(row,col+1); false: (row,col)-(row+1,col)
    std::string what;
};

struct ValidationReport {
    std::vector<EdgeViolation> violations;
    bool valid() const { return violations.empty(); }
};

ValidationReport validate_window(const Window& w, const TileSet& ts = TileSet::canonical());

// Phi: bottom labels with 0' collapsed, row-major by ascending row
std::vector<std::vector<int>> project_bottom(const Window& w,
                                             const TileSet& ts = TileSet::canonical());
Word bottom_word(const Window& w, long row, const TileSet& ts = TileSet::canonical());
Word top_word(const Window& w, long row, const TileSet& ts = TileSet::canonical());

enum class RowType { one_third, two_one, two_two_t, two_two_b };
std::string row_type_name(RowType t);

struct InsufficientContext : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Neighbor multipliers decide when both neighbors are present; otherwise the
// row's bottom-angle estimate is used when it is decisive.
RowType classify_row(const Window& w, long row, const TileSet& ts = TileSet::canonical());

// All single-row tile sequences of the hinted type whose tops/bottoms project
// to the given words and whose side labels chain left to right.
std::vector<std::vector<int>> enumerate_row_fillings(const Word& top, const Word& bottom,
                                                     RowType hint,
                                                     const TileSet& ts = TileSet::canonical());

// Stacked type-2.2 queries: `top` is the top word of the upper (2.2t) row and
// `bottom` the bottom word of the lower (2.2b) row; fillings are columns of
// vertically matched (lower, upper) tile pairs chaining on both rows.
std::vector<std::vector<std::pair<int, int>>> enumerate_stacked_fillings(
    const Word& top, const Word& bottom, const TileSet& ts = TileSet::canonical());

}  // namespace kc
