#pragma once

// Deterministic image emitters: tiling windows as SVG/PPM/ASCII and
// parameter-space partition rasters as PPM.

#include "kc/bounds.hpp"
#include "kc/tiles.hpp"

#include <string>

namespace kc {

enum class ImageFormat { svg, ppm, ascii };
enum class ColorBy { tile_id, bottom_symbol, multiplier };

struct RenderOptions {
    ImageFormat format = ImageFormat::svg;
    int cell_px = 16;  // <= 256
    ColorBy color_by = ColorBy::tile_id;
};

std::string render_window(const Window& w, const RenderOptions& opts,
                          const TileSet& ts = TileSet::canonical());

// Raster of [1/3,2] x [0, y_max) colored by the Phi-symbol grid (rows
// 0..m-1, columns 1..n) of fhat^iterates applied to (alpha, t), with t the
// level-`level` truncation of the pixel's y value. For (m,n) = (1,1) this is
// the symbol at the zero position. Output is a binary PPM (P6).
std::string render_partition(int m, int n, int iterates, int level, int width, int height,
                             const Rational& y_max);

// exact per-column color-run helper used to cross-check partition rasters:
// the Phi-grid at one (alpha, y) sample
std::string partition_cell_key(const Angle& alpha, const Rational& y, int m, int n,
                               int iterates, int level);

}  // namespace kc
