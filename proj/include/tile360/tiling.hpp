#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tile360/frame.hpp"
#include "tile360/projection.hpp"

namespace t360 {

// Uniform MxN grid over a projection frame. Tile ids are row-major from
// the top-left; grids that do not divide the frame evenly are rejected.
struct TilingScheme {
    int cols = 1;
    int rows = 1;
    int frame_width = 0;
    int frame_height = 0;

    int tile_width() const { return frame_width / cols; }
    int tile_height() const { return frame_height / rows; }
    int tile_count() const { return cols * rows; }
};

struct TileRect {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;
};

inline void validate_scheme(const TilingScheme& s) {
    if (s.cols < 1 || s.rows < 1)
        throw std::invalid_argument("tiling: cols and rows must be >= 1");
    if (s.frame_width < 1 || s.frame_height < 1)
        throw std::invalid_argument("tiling: bad frame dimensions");
    if (s.frame_width % s.cols != 0 || s.frame_height % s.rows != 0)
        throw std::invalid_argument("tiling: " + std::to_string(s.cols) + "x" + std::to_string(s.rows) +
                                    " does not divide " + std::to_string(s.frame_width) + "x" +
                                    std::to_string(s.frame_height) + " evenly");
}

inline TileRect tile_rect(const TilingScheme& s, int id) {
    validate_scheme(s);
    if (id < 0 || id >= s.tile_count())
        throw std::out_of_range("tile id " + std::to_string(id) + " out of range");
    const int tw = s.tile_width(), th = s.tile_height();
    return {(id % s.cols) * tw, (id / s.cols) * th, tw, th};
}

// Matches the default stride used by visible-tile selection.
inline int default_border_stride(const TilingScheme& s) {
    return std::max(1, std::min(s.tile_width(), s.tile_height()) / 16);
}

// Sphere directions of the tile's perimeter pixel centers, sampled every
// `stride` pixels along each edge; the four corners are always included.
inline std::vector<Vec3> tile_border_points(const TilingScheme& s, int id, const ProjectionGeometry& g,
                                            int stride) {
    if (stride < 1) throw std::invalid_argument("tile_border_points: stride must be >= 1");
    if (g.width != s.frame_width || g.height != s.frame_height)
        throw std::invalid_argument("tile_border_points: geometry does not match tiling scheme");
    const TileRect r = tile_rect(s, id);
    const int x0 = r.x, x1 = r.x + r.width - 1;
    const int y0 = r.y, y1 = r.y + r.height - 1;

    std::set<std::pair<int, int>> pixels;
    for (int x = x0; x <= x1; x += stride) {
        pixels.insert({x, y0});
        pixels.insert({x, y1});
    }
    for (int y = y0; y <= y1; y += stride) {
        pixels.insert({x0, y});
        pixels.insert({x1, y});
    }
    pixels.insert({x0, y0});
    pixels.insert({x1, y0});
    pixels.insert({x0, y1});
    pixels.insert({x1, y1});

    std::vector<Vec3> points;
    points.reserve(pixels.size());
    for (const auto& [x, y] : pixels)
        points.push_back(image_to_sphere(g, {static_cast<double>(x), static_cast<double>(y)}));
    return points;
}

namespace detail {

inline Frame crop_rect(const Frame& src, const TileRect& r) {
    Frame out(r.width, r.height, src.channels);
    const size_t row_bytes = static_cast<size_t>(r.width) * static_cast<size_t>(src.channels);
    for (int y = 0; y < r.height; ++y) {
        const std::uint8_t* s = &src.at(r.x, r.y + y, 0);
        std::uint8_t* d = &out.at(0, y, 0);
        std::copy(s, s + row_bytes, d);
    }
    return out;
}

inline void blit_rect(Frame& dst, const TileRect& r, const Frame& tile) {
    const size_t row_bytes = static_cast<size_t>(r.width) * static_cast<size_t>(dst.channels);
    for (int y = 0; y < r.height; ++y) {
        const std::uint8_t* s = &tile.at(0, y, 0);
        std::uint8_t* d = &dst.at(r.x, r.y + y, 0);
        std::copy(s, s + row_bytes, d);
    }
}

}  // namespace detail

inline std::map<int, Frame> split(const Frame& frame, const TilingScheme& s) {
    validate_scheme(s);
    if (frame.width != s.frame_width || frame.height != s.frame_height)
        throw std::invalid_argument("split: frame does not match tiling scheme");
    std::map<int, Frame> tiles;
    for (int id = 0; id < s.tile_count(); ++id) tiles.emplace(id, detail::crop_rect(frame, tile_rect(s, id)));
    return tiles;
}

// Reassembles the full frame from a complete tile set, then re-partitions
// it. All source tiles must be present; bit-exact.
inline std::map<int, Frame> retile(const std::map<int, Frame>& tiles, const TilingScheme& from,
                                   const TilingScheme& to) {
    validate_scheme(from);
    validate_scheme(to);
    if (from.frame_width != to.frame_width || from.frame_height != to.frame_height)
        throw std::invalid_argument("retile: schemes cover different frame dimensions");

    int channels = 0;
    for (int id = 0; id < from.tile_count(); ++id) {
        const auto it = tiles.find(id);
        if (it == tiles.end())
            throw std::invalid_argument("retile: missing tile " + std::to_string(id));
        const TileRect r = tile_rect(from, id);
        const Frame& tile = it->second;
        if (tile.width != r.width || tile.height != r.height)
            throw std::invalid_argument("retile: tile " + std::to_string(id) + " has wrong dimensions");
        if (channels == 0) channels = tile.channels;
        if (tile.channels != channels)
            throw std::invalid_argument("retile: tile " + std::to_string(id) + " has mixed channels");
    }

    Frame full(from.frame_width, from.frame_height, channels);
    for (const auto& [id, tile] : tiles) detail::blit_rect(full, tile_rect(from, id), tile);
    return split(full, to);
}

}  // namespace t360
