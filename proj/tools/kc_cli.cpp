// kc: generate, verify and render Sturmian Kari-Culik windows, and run the
// return-time bound reports.
//
// Exit codes: 0 ok, 1 invalid window, 2 construction error, 3 parse error,
// 4 usage error.

#include "kc/bounds.hpp"
#include "kc/construction.hpp"
#include "kc/logexpr.hpp"
#include "kc/render.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitConstruction = 2;
constexpr int kExitParse = 3;
constexpr int kExitUsage = 4;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& out, const std::string& data) {
    if (out.empty() || out == "-") {
        std::cout << data;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << data;
}

kc::TorusPoint parse_phase(const std::string& phase, int depth) {
    if (phase.find(';') != std::string::npos) return kc::TorusPoint::deserialize(phase);
    kc::Rational t = kc::parse_rational(phase);
    return kc::TorusPoint::from_value(depth, t);
}

struct RectFlags {
    long r0 = 0, r1 = 0, c0 = 0, c1 = 0;
};

RectFlags parse_rect(const std::string& s) {
    RectFlags r;
    if (std::sscanf(s.c_str(), "%ld:%ld:%ld:%ld", &r.r0, &r.r1, &r.c0, &r.c1) != 4)
        throw ParseError("bad --rect, expected r0:r1:c0:c1");
    if (r.r0 > r.r1 || r.c0 > r.c1) throw ParseError("bad --rect, empty rectangle");
    return r;
}

kc::Rounding parse_rounding(const std::string& s) {
    if (s == "floor") return kc::Rounding::floor;
    if (s == "ceil" || s == "ceiling") return kc::Rounding::ceiling;
    throw ParseError("bad --rounding, expected floor|ceil");
}

int cmd_generate(const std::string& alpha_s, const std::string& phase_s, int depth,
                 const std::string& rounding_s, const std::string& rect_s, bool variant,
                 const std::string& out) {
    kc::Angle alpha = kc::Angle::parse(alpha_s);
    kc::TorusPoint phase = parse_phase(phase_s, depth);
    RectFlags rect = parse_rect(rect_s);
    kc::Rounding mode = parse_rounding(rounding_s);
    kc::SkewState s(alpha, phase);
    std::vector<std::string> warnings;
    kc::Window w =
        kc::k_map(s, mode, rect.r0, rect.r1, rect.c0, rect.c1, variant,
                  kc::TileSet::canonical(), &warnings);
    for (const auto& msg : warnings) std::cerr << "warning: " << msg << "\n";
    write_output(out, w.serialize());
    return kc::validate_window(w).valid() ? kExitOk : kExitInvalid;
}

int cmd_verify(const std::string& path) {
    kc::Window w = kc::Window::deserialize(read_file(path));
    kc::ValidationReport rep = kc::validate_window(w);
    if (rep.valid()) {
        std::cout << "valid " << w.width << "x" << w.height << "\n";
        // straddle scan across adjacent rows
        for (long r = w.row_lo(); r <= w.row_hi(); ++r) {
            auto top = kc::top_word(w, r);
            auto bottom = kc::bottom_word(w, r);
            if (auto idx = kc::detect_misaligned_straddle(top, bottom)) {
                std::cout << "misaligned straddle at row " << r << " col " << *idx << "\n";
                return kExitInvalid;
            }
        }
        return kExitOk;
    }
    for (const auto& v : rep.violations) {
        std::cout << "violation at (" << v.row << "," << v.col << ") "
                  << (v.horizontal ? "horizontal" : "vertical") << ": " << v.what << "\n";
    }
    return kExitInvalid;
}

kc::ColorBy parse_color_by(const std::string& s) {
    if (s == "tile_id") return kc::ColorBy::tile_id;
    if (s == "bottom_symbol") return kc::ColorBy::bottom_symbol;
    if (s == "multiplier") return kc::ColorBy::multiplier;
    throw ParseError("bad --color-by");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sturmian Kari-Culik tiling toolkit"};
    app.require_subcommand(1);
    unsigned long seed = 1;
    app.add_option("--seed", seed, "seed for randomized sweeps");

    // tileset
    auto* tileset = app.add_subcommand("tileset", "export the canonical 13-tile table");
    std::string tileset_out;
    tileset->add_option("--out", tileset_out, "output path (default stdout)");

    // generate
    auto* gen = app.add_subcommand("generate", "construct a window from (alpha, phase)");
    std::string g_alpha = "3/2", g_phase = "0", g_rounding = "floor", g_rect = "0:0:1:8",
                g_out;
    int g_depth = 8;
    bool g_variant = false;
    gen->add_option("--alpha", g_alpha, "row-0 angle, e.g. 3/2 or (1+1*sqrt(2))/2");
    gen->add_option("--phase", g_phase, "rational or torus serialization d;t0;t1;...");
    gen->add_option("--depth", g_depth, "torus depth when --phase is a plain rational");
    gen->add_option("--rounding", g_rounding, "floor|ceil");
    gen->add_option("--rect", g_rect, "r0:r1:c0:c1 inclusive");
    gen->add_flag("--variant", g_variant, "use the f branch split [1/3,1] / (1,2]");
    gen->add_option("--out", g_out, "output path (default stdout)");

    // verify
    auto* ver = app.add_subcommand("verify", "validate a window file");
    std::string v_path;
    ver->add_option("path", v_path, "window file")->required();

    // render
    auto* ren = app.add_subcommand("render", "render a window file");
    std::string r_path, r_format = "svg", r_color = "tile_id", r_out;
    int r_cellpx = 16;
    ren->add_option("path", r_path, "window file")->required();
    ren->add_option("--format", r_format, "svg|ppm|ascii");
    ren->add_option("--cell-px", r_cellpx, "cell size in pixels");
    ren->add_option("--color-by", r_color, "tile_id|bottom_symbol|multiplier");
    ren->add_option("--out", r_out, "output path (default stdout)");

    // partition
    auto* part = app.add_subcommand("partition", "raster a parameter-space partition");
    int p_m = 1, p_n = 1, p_iter = 0, p_level = 0, p_w = 300, p_h = 300;
    std::string p_ymax = "1", p_out;
    part->add_option("--m", p_m, "config rows");
    part->add_option("--n", p_n, "config cols");
    part->add_option("--iterates", p_iter, "fhat pullback iterations");
    part->add_option("--level", p_level, "torus truncation level");
    part->add_option("--width", p_w, "raster width");
    part->add_option("--height", p_h, "raster height");
    part->add_option("--ymax", p_ymax, "top of the y range");
    part->add_option("--out", p_out, "output path (default stdout)");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "return-time bound reports");
    bounds->require_subcommand(1);

    auto* wt = bounds->add_subcommand("waiting-time", "kappa, D and 6^m c for one angle");
    int wt_m = 1, wt_n = 1;
    std::string wt_alpha;
    long wt_cap = 10000000;
    wt->add_option("--m", wt_m)->required();
    wt->add_option("--n", wt_n)->required();
    wt->add_option("--alpha", wt_alpha, "angle; default samples a certified one");
    wt->add_option("--cap", wt_cap, "orbit cap");

    auto* rec = bounds->add_subcommand("recurrence", "horizontal recurrence scan");
    std::string rec_config, rec_alpha, rec_phase = "0";
    int rec_depth = 8;
    long rec_rows = 2, rec_cols = 100000;
    rec->add_option("--config", rec_config, "config window file")->required();
    rec->add_option("--alpha", rec_alpha)->required();
    rec->add_option("--phase", rec_phase);
    rec->add_option("--depth", rec_depth);
    rec->add_option("--rows", rec_rows);
    rec->add_option("--cols", rec_cols);

    auto* gs = bounds->add_subcommand("gscan", "G-set membership / W certificates");
    int gs_m = 0, gs_n = 0;
    std::string gs_alpha;
    long gs_a = 0;
    std::string gs_b;
    gs->add_option("--m", gs_m, "W_{n x m} certificate table");
    gs->add_option("--n", gs_n);
    gs->add_option("--alpha", gs_alpha, "single membership query");
    gs->add_option("--a", gs_a);
    gs->add_option("--b", gs_b);

    auto* irr = bounds->add_subcommand("irr-scan", "log2/log6 irrationality inequality");
    long irr_qmax = 100;
    irr->add_option("--qmax", irr_qmax);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*tileset) {
            write_output(tileset_out, kc::TileSet::canonical().export_table());
            return kExitOk;
        }
        if (*gen)
            return cmd_generate(g_alpha, g_phase, g_depth, g_rounding, g_rect, g_variant,
                                g_out);
        if (*ver) return cmd_verify(v_path);
        if (*ren) {
            kc::Window w = kc::Window::deserialize(read_file(r_path));
            kc::RenderOptions opts;
            if (r_format == "svg") opts.format = kc::ImageFormat::svg;
            else if (r_format == "ppm") opts.format = kc::ImageFormat::ppm;
            else if (r_format == "ascii") opts.format = kc::ImageFormat::ascii;
            else throw ParseError("bad --format");
            opts.cell_px = r_cellpx;
            opts.color_by = parse_color_by(r_color);
            write_output(r_out, kc::render_window(w, opts));
            return kExitOk;
        }
        if (*part) {
            write_output(p_out, kc::render_partition(p_m, p_n, p_iter, p_level, p_w, p_h,
                                                     kc::parse_rational(p_ymax)));
            return kExitOk;
        }
        if (*wt) {
            kc::GoodAngleWindow gw = kc::good_angle_window(wt_m, wt_n);
            kc::Angle alpha;
            if (!wt_alpha.empty()) {
                alpha = kc::Angle::parse(wt_alpha);
            } else {
                const auto& cert = gw.certificates.at(gw.certificates.size() / 2);
                alpha = kc::Angle((cert.sub_lo + cert.sub_hi) / 2);
            }
            kc::WaitingTimeReport rep =
                kc::verify_waiting_time(alpha, wt_m, wt_n, gw.b, gw.d, wt_cap);
            std::cout << "alpha=" << alpha.str() << "\n";
            std::cout << "kappa=" << rep.kappa_approx << "\n";
            std::cout << "density_steps=" << rep.density_steps << "\n";
            std::cout << "bound=" << rep.bound.get_str() << "\n";
            std::cout << "pass=" << (rep.pass ? 1 : 0) << "\n";
            return rep.pass ? kExitOk : kExitInvalid;
        }
        if (*rec) {
            kc::Window config = kc::Window::deserialize(read_file(rec_config));
            kc::SkewState s(kc::Angle::parse(rec_alpha), parse_phase(rec_phase, rec_depth));
            kc::RecurrenceReport rep =
                kc::empirical_recurrence(config, s, rec_rows, rec_cols);
            std::cout << "config=" << rep.config_rows << "x" << rep.config_cols << "\n";
            std::cout << "legal=" << (rep.config_legal ? 1 : 0) << "\n";
            std::cout << "occurrences=" << rep.occurrences << "\n";
            std::cout << "bound_cols=" << rep.bound_cols.get_str() << "\n";
            for (const auto& [row, first, gap] : rep.row_hits)
                std::cout << "row=" << row << " first=" << first << " max_gap=" << gap
                          << "\n";
            std::cout << "pass=" << (rep.pass ? 1 : 0) << "\n";
            return rep.pass ? kExitOk : kExitInvalid;
        }
        if (*gs) {
            if (!gs_alpha.empty()) {
                if (gs_a < 1 || gs_b.empty()) throw ParseError("gscan needs --a and --b");
                kc::GWitness w = kc::g_membership(kc::Angle::parse(gs_alpha),
                                                  {kc::Int(gs_a), kc::parse_rational(gs_b)});
                std::cout << "member=" << (w.member ? 1 : 0)
                          << " witness=" << w.fraction.get_str() << "\n";
                return kExitOk;
            }
            if (gs_m >= 1 && gs_n >= 1) {
                kc::GoodAngleWindow gw = kc::good_angle_window(gs_m, gs_n);
                std::cout << "a=" << gw.a.get_str() << " b=" << gw.b.get_str()
                          << " c=" << gw.c.get_str() << " d=" << gw.d.get_str() << "\n";
                for (const auto& c : gw.certificates)
                    std::cout << "cell=[" << c.cell_lo.get_str() << "," << c.cell_hi.get_str()
                              << ") sub=[" << c.sub_lo.get_str() << "," << c.sub_hi.get_str()
                              << "]\n";
                return kExitOk;
            }
            throw ParseError("gscan needs --alpha with --a/--b, or --m/--n");
        }
        if (*irr) {
            kc::IrrationalityScan scan = kc::irrationality_witness_scan(irr_qmax);
            std::cout << "q_max=" << scan.q_max << "\n";
            std::cout << "min_product=" << scan.min_product << "\n";
            for (const auto& row : scan.rows)
                std::cout << "q=" << row.q.get_str() << " p=" << row.p.get_str()
                          << " dist=" << row.distance << " bound=" << row.bound
                          << " product=" << row.product << (row.convergent ? " convergent" : "")
                          << (row.ok ? "" : " VIOLATION") << "\n";
            std::cout << "all_ok=" << (scan.all_ok ? 1 : 0) << "\n";
            return scan.all_ok ? kExitOk : kExitInvalid;
        }
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const kc::DepthExhausted& e) {
        std::cerr << "construction error: " << e.what() << "\n";
        return kExitConstruction;
    } catch (const kc::AngleOutOfRange& e) {
        std::cerr << "construction error: " << e.what() << "\n";
        return kExitConstruction;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConstruction;
    }
    return kExitOk;
}
