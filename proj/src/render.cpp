#include "kc/render.hpp"

#include "kc/construction.hpp"

#include <array>
#include <sstream>

namespace kc {

namespace {

struct Rgb {
    unsigned char r, g, b;
};

constexpr std::array<Rgb, 13> kTilePalette = {{{230, 25, 75},
                                               {60, 180, 75},
                                               {255, 225, 25},
                                               {0, 130, 200},
                                               {245, 130, 48},
                                               {145, 30, 180},
                                               {70, 240, 240},
                                               {240, 50, 230},
                                               {210, 245, 60},
                                               {250, 190, 212},
                                               {0, 128, 128},
                                               {220, 190, 255},
                                               {170, 110, 40}}};

constexpr std::array<Rgb, 3> kSymbolPalette = {{{38, 70, 83}, {42, 157, 143}, {233, 196, 106}}};

Rgb cell_color(const Tile& t, int id, ColorBy by) {
    switch (by) {
        case ColorBy::tile_id:
            return kTilePalette[static_cast<size_t>(id % 13)];
        case ColorBy::bottom_symbol:
            return kSymbolPalette[static_cast<size_t>(t.bottom.numeric())];
        case ColorBy::multiplier:
            return t.multiplier == Rational(2) ? Rgb{90, 90, 200} : Rgb{200, 120, 60};
    }
    return {0, 0, 0};
}

char ascii_cell(const Tile& t, int id, ColorBy by) {
    switch (by) {
        case ColorBy::tile_id:
            return static_cast<char>(id < 10 ? '0' + id : 'a' + (id - 10));
        case ColorBy::bottom_symbol:
            return static_cast<char>('0' + t.bottom.numeric());
        case ColorBy::multiplier:
            return t.multiplier == Rational(2) ? '2' : '/';
    }
    return '?';
}

std::string hex_color(Rgb c) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
    return buf;
}

}  // namespace

std::string render_window(const Window& w, const RenderOptions& opts, const TileSet& ts) {
    if (opts.cell_px < 1 || opts.cell_px > 256)
        throw std::invalid_argument("render_window: cell_px must be in [1, 256]");
    std::ostringstream os;
    long W = w.width, H = w.height;
    // math rows ascend upward; images scan top to bottom
    switch (opts.format) {
        case ImageFormat::ascii: {
            for (long r = w.row_hi(); r >= w.row_lo(); --r) {
                for (long c = w.col_lo(); c <= w.col_hi(); ++c) {
                    int id = w.at(r, c);
                    os << ascii_cell(ts.tile(id), id, opts.color_by);
                }
                os << "\n";
            }
            return os.str();
        }
        case ImageFormat::svg: {
            long px = opts.cell_px;
            os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W * px
               << "\" height=\"" << H * px << "\">\n";
            for (long r = w.row_hi(); r >= w.row_lo(); --r) {
                long yy = (w.row_hi() - r) * px;
                for (long c = w.col_lo(); c <= w.col_hi(); ++c) {
                    long xx = (c - w.col_lo()) * px;
                    int id = w.at(r, c);
                    os << "<rect x=\"" << xx << "\" y=\"" << yy << "\" width=\"" << px
                       << "\" height=\"" << px << "\" fill=\""
                       << hex_color(cell_color(ts.tile(id), id, opts.color_by)) << "\"/>\n";
                }
            }
            os << "</svg>\n";
            return os.str();
        }
        case ImageFormat::ppm: {
            long px = opts.cell_px;
            long iw = W * px, ih = H * px;
            os << "P6\n" << iw << " " << ih << "\n255\n";
            std::string body;
            body.reserve(static_cast<size_t>(iw * ih * 3));
            for (long y = 0; y < ih; ++y) {
                long r = w.row_hi() - (y / px);
                for (long x = 0; x < iw; ++x) {
                    long c = w.col_lo() + (x / px);
                    int id = w.at(r, c);
                    Rgb col = cell_color(ts.tile(id), id, opts.color_by);
                    body.push_back(static_cast<char>(col.r));
                    body.push_back(static_cast<char>(col.g));
                    body.push_back(static_cast<char>(col.b));
                }
            }
            os << body;
            return os.str();
        }
    }
    throw std::logic_error("render_window: unknown format");
}

std::string partition_cell_key(const Angle& alpha, const Rational& y, int m, int n,
                               int iterates, int level) {
    int depth = level + iterates + m;
    SkewState s(alpha, TorusPoint::from_value(depth, mod_q(y, pow6(level))));
    for (int i = 0; i < iterates; ++i) s = fhat(s);
    ParameterVectors pv = expand_parameters(s, 0, m);
    std::string key;
    for (int r = 0; r < m; ++r) {
        const Angle& ar = pv.angle(r);
        const Rational& tr = pv.phase(r);
        Int prev = floor_affine(ar, Int(0), tr);
        for (int c = 1; c <= n; ++c) {
            Int cur = floor_affine(ar, Int(c), tr);
            key += static_cast<char>('0' + static_cast<int>(Int(cur - prev).get_si()));
            prev = cur;
        }
    }
    return key;
}

std::string render_partition(int m, int n, int iterates, int level, int width, int height,
                             const Rational& y_max) {
    if (level > 3 || iterates > 6 || m < 1 || n < 1 || m > 3 || n > 4)
        throw ResourceError("render_partition: desk-scale parameters exceeded");
    if (width < 1 || height < 1 || static_cast<long>(width) * height > 4000000)
        throw ResourceError("render_partition: raster too large");
    std::ostringstream os;
    os << "P6\n" << width << " " << height << "\n255\n";
    std::string body;
    body.reserve(static_cast<size_t>(width) * height * 3);
    Rational span = Rational(2) - Rational(1, 3);
    for (int py = 0; py < height; ++py) {
        // image top row = largest y
        Rational yfrac(2 * (height - 1 - py) + 1, 2 * height);
        yfrac.canonicalize();
        Rational y = y_max * yfrac;
        for (int px = 0; px < width; ++px) {
            Rational xfrac(2 * px + 1, 2 * width);
            xfrac.canonicalize();
            Rational ax = Rational(1, 3) + span * xfrac;
            std::string key = partition_cell_key(Angle(ax), y, m, n, iterates, level);
            // stable small palette keyed by the symbol grid
            unsigned h = 0;
            for (char ch : key) h = h * 3 + static_cast<unsigned>(ch - '0');
            Rgb col;
            if (key.size() == 1) {
                col = kSymbolPalette[h % 3];
            } else {
                col = Rgb{static_cast<unsigned char>(37 + (h * 73) % 219),
                          static_cast<unsigned char>(29 + (h * 151) % 227),
                          static_cast<unsigned char>(41 + (h * 101) % 211)};
            }
            body.push_back(static_cast<char>(col.r));
            body.push_back(static_cast<char>(col.g));
            body.push_back(static_cast<char>(col.b));
        }
    }
    os << body;
    return os.str();
}

}  // namespace kc
