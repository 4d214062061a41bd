#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tile360/metrics.hpp"
#include "tile360/netpbm.hpp"
#include "tile360/stitcher.hpp"
#include "tile360/tiling.hpp"
#include "tile360/trace.hpp"
#include "tile360/viewport.hpp"

#include <json.hpp>

namespace t360 {

// A replayable streaming session: projection + tiling of the content,
// the user's field of view and display raster, recorded head motion, and
// the reference/received tile frame trees.
struct SessionConfig {
    ProjectionGeometry projection;
    TilingScheme tiling;
    Fov fov;                       // radians
    ProjectionGeometry viewport;   // gnomonic raster of the display
    std::string head_trace_path;
    std::string reference_tiles_root;
    std::string received_tiles_root;
    std::string availability_path;  // empty: every tile available
    std::string output_dir;
    SampleFilter filter = SampleFilter::Nearest;
};

struct ReplayRow {
    FrameMetric metric;
    std::set<int> visible;  // selected by the frustum
    std::set<int> used;     // visible and available; what was stitched
};

struct ReplayResult {
    std::vector<ReplayRow> rows;
    std::string metrics_csv_path;
};

namespace detail {

inline std::string tile_dir_name(int id) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "tile_%03d", id);
    return buf;
}

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

inline const nlohmann::json& json_field(const nlohmann::json& j, const std::string& key,
                                        const std::string& where) {
    const auto it = j.find(key);
    if (it == j.end()) throw std::runtime_error(where + ": missing field '" + key + "'");
    return *it;
}

}  // namespace detail

// Loads and validates a session config. Relative paths resolve against
// the config file's directory; angles are degrees in the file. The output
// directory is created if absent.
inline SessionConfig load_session_config(const std::string& config_path) {
    namespace fs = std::filesystem;
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error(config_path + ": cannot open");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error(config_path + ": bad JSON: " + e.what());
    }
    const std::string where = config_path;
    const fs::path base = fs::path(config_path).parent_path();
    const auto resolve = [&](const std::string& p) {
        return (fs::path(p).is_absolute() ? fs::path(p) : base / p).lexically_normal().string();
    };

    SessionConfig cfg;
    {
        const auto& pj = detail::json_field(j, "projection", where);
        const std::string kind = detail::json_field(pj, "kind", where).get<std::string>();
        const int w = detail::json_field(pj, "width", where).get<int>();
        const int h = detail::json_field(pj, "height", where).get<int>();
        if (kind == "erp") cfg.projection = ProjectionGeometry::erp(w, h);
        else if (kind == "cmp") cfg.projection = ProjectionGeometry::cmp(w, h);
        else throw std::runtime_error(where + ": projection kind must be erp or cmp");
    }
    {
        const auto& tj = detail::json_field(j, "tiling", where);
        cfg.tiling = {detail::json_field(tj, "cols", where).get<int>(),
                      detail::json_field(tj, "rows", where).get<int>(), cfg.projection.width,
                      cfg.projection.height};
        validate_scheme(cfg.tiling);
    }
    {
        const auto& fj = detail::json_field(j, "fov_deg", where);
        cfg.fov = {deg_to_rad(detail::json_field(fj, "x", where).get<double>()),
                   deg_to_rad(detail::json_field(fj, "y", where).get<double>())};
        const auto& vj = detail::json_field(j, "viewport", where);
        cfg.viewport = ProjectionGeometry::gnomonic(detail::json_field(vj, "width", where).get<int>(),
                                                    detail::json_field(vj, "height", where).get<int>(),
                                                    cfg.fov.x, cfg.fov.y);
    }
    cfg.head_trace_path = resolve(detail::json_field(j, "head_trace", where).get<std::string>());
    cfg.reference_tiles_root = resolve(detail::json_field(j, "reference_tiles", where).get<std::string>());
    cfg.received_tiles_root = resolve(detail::json_field(j, "received_tiles", where).get<std::string>());
    if (j.contains("availability_schedule"))
        cfg.availability_path = resolve(j["availability_schedule"].get<std::string>());
    cfg.output_dir = resolve(detail::json_field(j, "output_dir", where).get<std::string>());
    cfg.filter = parse_filter(j.value("filter", std::string("nearest")));

    if (!fs::is_regular_file(cfg.head_trace_path))
        throw std::runtime_error(where + ": head_trace does not exist: " + cfg.head_trace_path);
    if (!fs::is_directory(cfg.reference_tiles_root))
        throw std::runtime_error(where + ": reference_tiles is not a directory: " + cfg.reference_tiles_root);
    if (!fs::is_directory(cfg.received_tiles_root))
        throw std::runtime_error(where + ": received_tiles is not a directory: " + cfg.received_tiles_root);
    if (!cfg.availability_path.empty() && !fs::is_regular_file(cfg.availability_path))
        throw std::runtime_error(where + ": availability_schedule does not exist: " + cfg.availability_path);
    fs::create_directories(cfg.output_dir);
    return cfg;
}

// Replays a session: per trace row, select visible tiles, stitch the
// received tiles that are both visible and available, extract the
// viewport, and score it against the reference viewport. Writes the
// viewport frames plus metrics.csv; output is byte-reproducible.
inline ReplayResult run_replay(const SessionConfig& cfg) {
    namespace fs = std::filesystem;
    const auto trace = parse_head_trace(cfg.head_trace_path);
    const int n_tiles = cfg.tiling.tile_count();

    std::vector<TileSource> ref_sources;
    ref_sources.reserve(static_cast<size_t>(n_tiles));
    for (int id = 0; id < n_tiles; ++id)
        ref_sources.push_back({id, (fs::path(cfg.reference_tiles_root) / detail::tile_dir_name(id)).string(),
                               0, -1});
    TileSequenceReader ref_reader(std::move(ref_sources));

    const int n_frames = ref_reader.frame_count();
    if (static_cast<int>(trace.size()) < n_frames)
        throw std::runtime_error("trace shorter than sequence (" + std::to_string(trace.size()) +
                                 " rows, " + std::to_string(n_frames) + " frames)");
    if (static_cast<int>(trace.size()) > n_frames)
        throw std::runtime_error("trace longer than sequence (" + std::to_string(trace.size()) + " rows, " +
                                 std::to_string(n_frames) + " frames)");

    const Availability avail = cfg.availability_path.empty()
                                   ? Availability(n_frames, n_tiles)
                                   : parse_availability(cfg.availability_path, n_frames, n_tiles);

    const Frustum frustum = make_frustum(cfg.fov);
    const int stride = default_border_stride(cfg.tiling);
    std::vector<std::string> recv_exts(static_cast<size_t>(n_tiles));

    const std::string csv_path = (fs::path(cfg.output_dir) / "metrics.csv").string();
    std::ofstream csv(csv_path, std::ios::trunc);
    if (!csv) throw std::runtime_error(csv_path + ": cannot open for writing");
    csv << "frame,n_visible,visible_ids,viewport_mse,mean_tile_mse,psnr_db\n";

    ReplayResult result;
    result.metrics_csv_path = csv_path;

    for (int t = 0; t < n_frames; ++t) {
        const auto ref_tiles = ref_reader.next();
        const int channels = ref_tiles->begin()->second.channels;

        const Orientation o{deg_to_rad(trace[static_cast<size_t>(t)].yaw_deg),
                            deg_to_rad(trace[static_cast<size_t>(t)].pitch_deg),
                            deg_to_rad(trace[static_cast<size_t>(t)].roll_deg)};
        const Mat3 r = rotation_matrix(o);

        ReplayRow row;
        row.visible = visible_tiles(frustum, cfg.tiling, cfg.projection, cfg.viewport, r, stride);
        for (int id : row.visible)
            if (avail.available(t, id)) row.used.insert(id);

        std::map<int, Frame> recv_tiles;
        for (int id : row.used) {
            const fs::path dir = fs::path(cfg.received_tiles_root) / detail::tile_dir_name(id);
            auto& ext = recv_exts[static_cast<size_t>(id)];
            if (ext.empty()) ext = detail::detect_frame_ext(dir, 0);
            const fs::path file = dir / detail::frame_file_name(t, ext);
            try {
                recv_tiles.emplace(id, read_netpbm(file.string()));
            } catch (const std::exception& e) {
                throw std::runtime_error("frame " + std::to_string(t) + ": " + e.what());
            }
        }

        const Frame ref_proj = stitch(*ref_tiles, cfg.tiling, channels);
        const Frame recv_proj = stitch(recv_tiles, cfg.tiling, channels);
        const Frame ref_vp = extract_viewport(ref_proj, cfg.projection, o, cfg.viewport, cfg.filter);
        const Frame recv_vp = extract_viewport(recv_proj, cfg.projection, o, cfg.viewport, cfg.filter);

        row.metric.frame_index = t;
        row.metric.viewport_mse = mse(recv_vp, ref_vp);
        row.metric.psnr_db = psnr(row.metric.viewport_mse);
        row.metric.mean_tile_mse = row.used.empty()
                                       ? std::numeric_limits<double>::quiet_NaN()
                                       : mean_tile_mse(*ref_tiles, recv_tiles, row.used);

        char vp_name[32];
        std::snprintf(vp_name, sizeof(vp_name), "viewport_%06d.%s", t, channels == 1 ? "pgm" : "ppm");
        write_netpbm((fs::path(cfg.output_dir) / vp_name).string(), recv_vp);

        csv << t << "," << row.visible.size() << ",";
        bool first = true;
        for (int id : row.visible) {
            if (!first) csv << ";";
            csv << id;
            first = false;
        }
        csv << "," << detail::fmt_double(row.metric.viewport_mse) << ","
            << detail::fmt_double(row.metric.mean_tile_mse) << ","
            << detail::fmt_double(row.metric.psnr_db) << "\n";
        result.rows.push_back(std::move(row));
    }
    csv.close();
    if (!csv) throw std::runtime_error(csv_path + ": write failed");
    return result;
}

}  // namespace t360
