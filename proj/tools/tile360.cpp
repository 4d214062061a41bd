// Command-line surface over the tile360 library: projection conversion,
// re-tiling, visible-tile selection, viewport extraction, stitching,
// quality metrics, and full session replay.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "tile360/tile360.hpp"

namespace {

namespace fs = std::filesystem;
using namespace t360;

// Bad flag values exit with the usage code (2) rather than the runtime
// error code (1).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::pair<int, int> parse_pair(const std::string& s, char sep, const std::string& what) {
    const size_t x = s.find(sep);
    try {
        if (x == std::string::npos) throw std::invalid_argument(s);
        size_t p1 = 0, p2 = 0;
        const int a = std::stoi(s.substr(0, x), &p1);
        const int b = std::stoi(s.substr(x + 1), &p2);
        if (p1 != x || p2 != s.size() - x - 1) throw std::invalid_argument(s);
        return {a, b};
    } catch (const std::exception&) {
        throw UsageError("invalid " + what + " '" + s + "' (expected <A>" + sep + "<B>)");
    }
}

std::pair<double, double> parse_fov_deg(const std::string& s) {
    const size_t x = s.find('x');
    try {
        if (x == std::string::npos) throw std::invalid_argument(s);
        size_t p1 = 0, p2 = 0;
        const double a = std::stod(s.substr(0, x), &p1);
        const double b = std::stod(s.substr(x + 1), &p2);
        if (p1 != x || p2 != s.size() - x - 1) throw std::invalid_argument(s);
        return {a, b};
    } catch (const std::exception&) {
        throw UsageError("invalid fov '" + s + "' (expected <X>x<Y> in degrees)");
    }
}

// erp:WxH | cmp:WxH | gnomonic:WxH:FXxFY (fov in degrees)
ProjectionGeometry parse_proj(const std::string& spec) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        const size_t colon = spec.find(':', start);
        parts.push_back(spec.substr(start, colon - start));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    try {
        if (parts.size() == 2 && (parts[0] == "erp" || parts[0] == "cmp")) {
            const auto [w, h] = parse_pair(parts[1], 'x', "dimensions");
            return parts[0] == "erp" ? ProjectionGeometry::erp(w, h) : ProjectionGeometry::cmp(w, h);
        }
        if (parts.size() == 3 && parts[0] == "gnomonic") {
            const auto [w, h] = parse_pair(parts[1], 'x', "dimensions");
            const auto [fx, fy] = parse_fov_deg(parts[2]);
            return ProjectionGeometry::gnomonic(w, h, deg_to_rad(fx), deg_to_rad(fy));
        }
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError("invalid projection '" + spec + "': " + e.what());
    }
    throw UsageError("invalid projection '" + spec + "' (erp:WxH | cmp:WxH | gnomonic:WxH:FXxFY)");
}

SampleFilter parse_filter_flag(const std::string& name) {
    try {
        return parse_filter(name);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

std::string tile_file(const fs::path& dir, int id) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "tile_%03d", id);
    for (const char* ext : {".ppm", ".pgm"}) {
        const fs::path p = dir / (std::string(buf) + ext);
        if (fs::exists(p)) return p.string();
    }
    return "";
}

void write_tile(const fs::path& dir, int id, const Frame& f) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "tile_%03d", id);
    write_netpbm((dir / (std::string(buf) + (f.channels == 1 ? ".pgm" : ".ppm"))).string(), f);
}

struct ConvertArgs {
    std::string in, out, from, to, filter = "nearest";
};

struct RetileArgs {
    std::string in, out, frame, from, to;
};

struct SelectArgs {
    std::string proj, tiles, fov, vp;
    double yaw = 0.0, pitch = 0.0, roll = 0.0;
    int stride = 0;
};

struct ExtractArgs {
    std::string in, out, proj, fov, vp, filter = "nearest";
    double yaw = 0.0, pitch = 0.0, roll = 0.0;
};

struct StitchArgs {
    std::string in, out, tiles, frame;
    int channels = 0;
};

struct MetricsArgs {
    std::string ref, recv;
};

int run_convert(const ConvertArgs& a) {
    const ProjectionGeometry src_g = parse_proj(a.from);
    const ProjectionGeometry dst_g = parse_proj(a.to);
    const SampleFilter filter = parse_filter_flag(a.filter);
    const Frame out = convert_projection(read_netpbm(a.in), src_g, dst_g, filter);
    write_netpbm(a.out, out);
    return 0;
}

int run_retile(const RetileArgs& a) {
    const auto [w, h] = parse_pair(a.frame, 'x', "frame dimensions");
    const auto [fc, fr] = parse_pair(a.from, 'x', "tiling");
    const auto [tc, tr] = parse_pair(a.to, 'x', "tiling");
    const TilingScheme from{fc, fr, w, h}, to{tc, tr, w, h};
    validate_scheme(from);
    validate_scheme(to);
    std::map<int, Frame> tiles;
    for (int id = 0; id < from.tile_count(); ++id) {
        const std::string path = tile_file(a.in, id);
        if (path.empty()) throw std::runtime_error("retile: missing tile " + std::to_string(id) + " in " + a.in);
        tiles.emplace(id, read_netpbm(path));
    }
    fs::create_directories(a.out);
    for (const auto& [id, tile] : retile(tiles, from, to)) write_tile(a.out, id, tile);
    return 0;
}

int run_select(const SelectArgs& a) {
    const ProjectionGeometry g = parse_proj(a.proj);
    const auto [cols, rows] = parse_pair(a.tiles, 'x', "tiling");
    const TilingScheme scheme{cols, rows, g.width, g.height};
    validate_scheme(scheme);
    const auto [fx, fy] = parse_fov_deg(a.fov);
    const Fov fov{deg_to_rad(fx), deg_to_rad(fy)};
    const Frustum frustum = make_frustum(fov);
    const ProjectionGeometry vp_geom = a.vp.empty()
                                           ? default_selection_raster(g, fov)
                                           : [&] {
                                                 const auto [vw, vh] = parse_pair(a.vp, 'x', "viewport");
                                                 return ProjectionGeometry::gnomonic(vw, vh, fov.x, fov.y);
                                             }();
    const Mat3 r = rotation_matrix({deg_to_rad(a.yaw), deg_to_rad(a.pitch), deg_to_rad(a.roll)});
    const int stride = a.stride > 0 ? a.stride : default_border_stride(scheme);
    for (int id : visible_tiles(frustum, scheme, g, vp_geom, r, stride)) std::cout << id << "\n";
    return 0;
}

int run_extract(const ExtractArgs& a) {
    const ProjectionGeometry g = parse_proj(a.proj);
    const auto [fx, fy] = parse_fov_deg(a.fov);
    const auto [vw, vh] = parse_pair(a.vp, 'x', "viewport");
    const ProjectionGeometry vp_geom = ProjectionGeometry::gnomonic(vw, vh, deg_to_rad(fx), deg_to_rad(fy));
    const Orientation o{deg_to_rad(a.yaw), deg_to_rad(a.pitch), deg_to_rad(a.roll)};
    const Frame out = extract_viewport(read_netpbm(a.in), g, o, vp_geom, parse_filter_flag(a.filter));
    write_netpbm(a.out, out);
    return 0;
}

int run_stitch(const StitchArgs& a) {
    const auto [w, h] = parse_pair(a.frame, 'x', "frame dimensions");
    const auto [cols, rows] = parse_pair(a.tiles, 'x', "tiling");
    const TilingScheme scheme{cols, rows, w, h};
    validate_scheme(scheme);
    if (a.channels != 0 && a.channels != 1 && a.channels != 3)
        throw UsageError("--channels must be 1 or 3");
    std::map<int, Frame> tiles;
    for (int id = 0; id < scheme.tile_count(); ++id) {
        const std::string path = tile_file(a.in, id);
        if (!path.empty()) tiles.emplace(id, read_netpbm(path));
    }
    const int channels = a.channels != 0 ? a.channels : (tiles.empty() ? 3 : tiles.begin()->second.channels);
    write_netpbm(a.out, stitch(tiles, scheme, channels));
    return 0;
}

int run_metrics(const MetricsArgs& a) {
    const double m = mse(read_netpbm(a.ref), read_netpbm(a.recv));
    std::cout << "mse=" << detail::fmt_double(m) << "\n"
              << "psnr_db=" << detail::fmt_double(psnr(m)) << "\n";
    return 0;
}

int run_replay_cmd(const std::string& config_path) {
    const SessionConfig cfg = load_session_config(config_path);
    const ReplayResult res = run_replay(cfg);
    std::cout << "replayed " << res.rows.size() << " frames -> " << cfg.output_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tiled 360-degree video geometry toolkit"};
    app.require_subcommand(1);

    ConvertArgs conv;
    auto* c_conv = app.add_subcommand("convert", "Convert a frame between projections");
    c_conv->add_option("--in", conv.in, "input netpbm frame")->required();
    c_conv->add_option("--out", conv.out, "output netpbm frame")->required();
    c_conv->add_option("--from", conv.from, "source projection (erp:WxH|cmp:WxH|gnomonic:WxH:FXxFY)")->required();
    c_conv->add_option("--to", conv.to, "destination projection")->required();
    c_conv->add_option("--filter", conv.filter, "nearest|bilinear (default nearest)");

    RetileArgs ret;
    auto* c_ret = app.add_subcommand("retile", "Reorganize tiles into another grid");
    c_ret->add_option("--in", ret.in, "directory with tile_NNN.ppm/.pgm")->required();
    c_ret->add_option("--out", ret.out, "output directory")->required();
    c_ret->add_option("--frame", ret.frame, "frame dimensions WxH")->required();
    c_ret->add_option("--from", ret.from, "source grid CxR")->required();
    c_ret->add_option("--to", ret.to, "destination grid CxR")->required();

    SelectArgs sel;
    auto* c_sel = app.add_subcommand("select-tiles", "List tiles visible in the field of view");
    c_sel->add_option("--proj", sel.proj, "projection (erp:WxH|cmp:WxH)")->required();
    c_sel->add_option("--tiles", sel.tiles, "grid CxR")->required();
    c_sel->add_option("--fov", sel.fov, "field of view XxY, degrees")->required();
    c_sel->add_option("--yaw", sel.yaw, "yaw, degrees");
    c_sel->add_option("--pitch", sel.pitch, "pitch, degrees");
    c_sel->add_option("--roll", sel.roll, "roll, degrees");
    c_sel->add_option("--vp", sel.vp, "viewport raster WxH (default: derived from projection)");
    c_sel->add_option("--stride", sel.stride, "border sampling stride in pixels (default: auto)");

    ExtractArgs ext;
    auto* c_ext = app.add_subcommand("extract-viewport", "Render the viewport for an orientation");
    c_ext->add_option("--in", ext.in, "input projection frame")->required();
    c_ext->add_option("--out", ext.out, "output viewport frame")->required();
    c_ext->add_option("--proj", ext.proj, "projection (erp:WxH|cmp:WxH)")->required();
    c_ext->add_option("--fov", ext.fov, "field of view XxY, degrees")->required();
    c_ext->add_option("--vp", ext.vp, "viewport dimensions WxH")->required();
    c_ext->add_option("--yaw", ext.yaw, "yaw, degrees");
    c_ext->add_option("--pitch", ext.pitch, "pitch, degrees");
    c_ext->add_option("--roll", ext.roll, "roll, degrees");
    c_ext->add_option("--filter", ext.filter, "nearest|bilinear (default nearest)");

    StitchArgs sti;
    auto* c_sti = app.add_subcommand("stitch", "Reassemble a frame from tiles (missing tiles are black)");
    c_sti->add_option("--in", sti.in, "directory with tile_NNN.ppm/.pgm")->required();
    c_sti->add_option("--out", sti.out, "output netpbm frame")->required();
    c_sti->add_option("--tiles", sti.tiles, "grid CxR")->required();
    c_sti->add_option("--frame", sti.frame, "frame dimensions WxH")->required();
    c_sti->add_option("--channels", sti.channels, "1|3 when no tile files exist (default 3)");

    MetricsArgs met;
    auto* c_met = app.add_subcommand("metrics", "MSE and PSNR between two frames");
    c_met->add_option("--ref", met.ref, "reference frame")->required();
    c_met->add_option("--recv", met.recv, "received frame")->required();

    std::string replay_config;
    auto* c_rep = app.add_subcommand("replay", "Replay a recorded session from a JSON config");
    c_rep->add_option("--config", replay_config, "session config JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help/--version
        app.exit(e);
        return 2;
    }

    try {
        if (c_conv->parsed()) return run_convert(conv);
        if (c_ret->parsed()) return run_retile(ret);
        if (c_sel->parsed()) return run_select(sel);
        if (c_ext->parsed()) return run_extract(ext);
        if (c_sti->parsed()) return run_stitch(sti);
        if (c_met->parsed()) return run_metrics(met);
        if (c_rep->parsed()) return run_replay_cmd(replay_config);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
