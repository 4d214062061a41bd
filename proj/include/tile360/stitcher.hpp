#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tile360/frame.hpp"
#include "tile360/netpbm.hpp"
#include "tile360/tiling.hpp"

namespace t360 {

// Reassembles a projection frame from the provided tiles. Rects of absent
// tiles stay zero (black).
inline Frame stitch(const std::map<int, Frame>& tiles, const TilingScheme& s, int channels) {
    validate_scheme(s);
    if (channels != 1 && channels != 3) throw std::invalid_argument("stitch: channels must be 1 or 3");
    Frame out(s.frame_width, s.frame_height, channels);
    for (const auto& [id, tile] : tiles) {
        const TileRect r = tile_rect(s, id);  // throws for out-of-range ids
        if (tile.width != r.width || tile.height != r.height || tile.channels != channels)
            throw std::invalid_argument("stitch: tile " + std::to_string(id) +
                                        " does not match its rect dimensions");
        detail::blit_rect(out, r, tile);
    }
    return out;
}

namespace detail {

inline std::string frame_file_name(int index, const std::string& ext) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "frame_%06d", index);
    return std::string(buf) + ext;
}

// Frame files follow the frame_%06d convention, one netpbm file per frame.
inline std::string detect_frame_ext(const std::filesystem::path& dir, int index) {
    for (const char* ext : {".ppm", ".pgm"}) {
        if (std::filesystem::exists(dir / frame_file_name(index, ext))) return ext;
    }
    throw std::runtime_error(dir.string() + ": no " + frame_file_name(index, ".ppm") + " or .pgm");
}

}  // namespace detail

// One tile's on-disk frame sequence. frame_count < 0 probes the directory
// for consecutive files starting at first_frame.
struct TileSource {
    int tile_id = 0;
    std::string directory;
    int first_frame = 0;
    int frame_count = -1;
};

// Synchronous iteration over the frame sequences of several tiles. All
// sources must expose the same number of frames; per-tile dimensions must
// stay constant over time.
class TileSequenceReader {
  public:
    explicit TileSequenceReader(std::vector<TileSource> sources) : sources_(std::move(sources)) {
        namespace fs = std::filesystem;
        for (auto& src : sources_) {
            const fs::path dir(src.directory);
            if (!fs::is_directory(dir))
                throw std::runtime_error("tile " + std::to_string(src.tile_id) + ": " + src.directory +
                                         " is not a directory");
            exts_.push_back(detail::detect_frame_ext(dir, src.first_frame));
            int count = 0;
            if (src.frame_count >= 0) {
                for (int i = 0; i < src.frame_count; ++i) {
                    if (!fs::exists(dir / detail::frame_file_name(src.first_frame + i, exts_.back())))
                        throw std::runtime_error("tile " + std::to_string(src.tile_id) +
                                                 ": missing frame " + std::to_string(src.first_frame + i));
                }
                count = src.frame_count;
            } else {
                while (fs::exists(dir / detail::frame_file_name(src.first_frame + count, exts_.back())))
                    ++count;
            }
            if (frame_count_ < 0) {
                frame_count_ = count;
            } else if (count != frame_count_) {
                throw std::runtime_error("inconsistent frame counts (" + std::to_string(frame_count_) +
                                         " vs " + std::to_string(count) + " for tile " +
                                         std::to_string(src.tile_id) + ")");
            }
        }
        if (frame_count_ < 0) frame_count_ = 0;  // zero sources
    }

    int frame_count() const { return frame_count_; }

    // Frames for every source at the next time index, keyed by tile id.
    std::optional<std::map<int, Frame>> next() {
        if (pos_ >= frame_count_) return std::nullopt;
        std::map<int, Frame> frames;
        for (size_t i = 0; i < sources_.size(); ++i) {
            const auto& src = sources_[i];
            const std::filesystem::path path =
                std::filesystem::path(src.directory) / detail::frame_file_name(src.first_frame + pos_, exts_[i]);
            Frame f = [&] {
                try {
                    return read_netpbm(path.string());
                } catch (const std::exception& e) {
                    throw std::runtime_error("frame " + std::to_string(pos_) + ": " + e.what());
                }
            }();
            if (dims_.size() <= i) dims_.push_back({f.width, f.height, f.channels});
            const auto& d = dims_[i];
            if (f.width != d[0] || f.height != d[1] || f.channels != d[2])
                throw std::runtime_error("tile " + std::to_string(src.tile_id) + " frame " +
                                         std::to_string(pos_) + ": dimensions changed");
            frames.emplace(src.tile_id, std::move(f));
        }
        ++pos_;
        return frames;
    }

  private:
    std::vector<TileSource> sources_;
    std::vector<std::string> exts_;
    std::vector<std::array<int, 3>> dims_;
    int frame_count_ = -1;
    int pos_ = 0;
};

inline TileSequenceReader open_sequence(std::vector<TileSource> sources) {
    return TileSequenceReader(std::move(sources));
}

}  // namespace t360
