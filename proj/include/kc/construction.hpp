#pragma once

// The Basic Construction and the parameter maps W / W^{-1} / K.
//
// Angle convention: lambda_i = alpha_{i+1}/alpha_i in {1/3, 2}, matching the
// multiplier identity and lambda*alpha(r_0) = alpha(r_1). Phase rules:
// t_{i+1} = 2 t_i mod 1 on doubling steps, t_i = 3 t_{i+1} mod 1 on tripling
// steps.
//
// Cell labels are computed from *lifted* phases tau_i == t_i (mod 1) chosen
// so that tau_{i+1} = lambda_i * tau_i holds exactly across the whole row
// range; the residue of tau mod 3 at each tripling step is determined by the
// given phase vector (equivalently by the deeper torus levels). With the lift
// in hand every cell is
//
//     bottom = F(n a_m + tau_m)     - F((n-1) a_m + tau_m)
//     top    = F(n a_{m+1} + tau_{m+1}) - F((n-1) a_{m+1} + tau_{m+1})
//     left   = lam*F((n-1) a_m + tau_m) - F((n-1) a_{m+1} + tau_{m+1}) + C
//     right  = lam*F(n a_m + tau_m)     - F(n a_{m+1} + tau_{m+1})     + C
//
// with F = floor or ceiling and C = 0 for floor, C = 2/3 (lam=1/3) or -1
// (lam=2) for ceiling. A computed 0 becomes 0' on the bottom when
// alpha_{m-1} is in [1/3,1/2] and on the top when alpha_m is.

#include "kc/sturmian.hpp"
#include "kc/tiles.hpp"
#include "kc/torus.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace kc {

struct ParameterVectors {
    long lo = 0, hi = -1;  // inclusive row range
    std::vector<Angle> angles;
    std::vector<Rational> phases;  // in [0,1)

    long rows() const { return hi - lo + 1; }
    const Angle& angle(long i) const { return angles.at(static_cast<size_t>(i - lo)); }
    const Rational& phase(long i) const { return phases.at(static_cast<size_t>(i - lo)); }
};

struct BcViolation {
    long index;
    std::string what;
};

// nullopt when the vectors satisfy the BC property
std::optional<BcViolation> check_bc_property(const ParameterVectors& p);

struct ConstructionSpec {
    std::variant<ParameterVectors, SkewState> params;
    Rounding rounding = Rounding::floor;
    long row_lo = 0, row_hi = 0, col_lo = 0, col_hi = 0;  // inclusive rect
    bool variant_branch = false;  // f doubles on [1/3,1] and triples on (1,2]
};

struct NoMatchingTile : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CrtInconsistency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CellLabels {
    long row, col;
    int bottom, top;  // numeric values
    bool bottom_primed, top_primed;
    Rational left, right;
    Rational multiplier;
};

Window basic_construct(const ConstructionSpec& spec,
                       const TileSet& ts = TileSet::canonical(),
                       std::vector<std::string>* warnings = nullptr);

// raw labels without tile matching; used by the tile-set sweep
std::vector<CellLabels> sweep_cell_labels(const ConstructionSpec& spec,
                                          std::vector<std::string>* warnings = nullptr);

// W: (alpha_i, t_i) = (id x proj_0) fhat^i (alpha, t) over rows [lo, hi]
ParameterVectors expand_parameters(const SkewState& s, long lo, long hi,
                                   bool variant_branch = false,
                                   std::vector<std::string>* warnings = nullptr);

// W^{-1}: rebuild the torus point to the given depth from a BC vector whose
// range exposes target_depth triplings above row 0 and halvings below
SkewState recover_parameters(const ParameterVectors& p, int target_depth);

// K: expand then construct rows [row_lo, row_hi] x cols [col_lo, col_hi]
Window k_map(const SkewState& s, Rounding mode, long row_lo, long row_hi, long col_lo,
             long col_hi, bool variant_branch = false,
             const TileSet& ts = TileSet::canonical(),
             std::vector<std::string>* warnings = nullptr);

}  // namespace kc
