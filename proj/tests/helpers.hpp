#pragma once

// Shared test utilities: seeded generators, synthetic frames, temp dirs,
// and the exhaustive per-pixel tile-selection oracle the sampled selector
// is checked against.

#include <atomic>
#include <filesystem>
#include <random>
#include <set>
#include <string>

#include <unistd.h>

#include "tile360/tile360.hpp"

namespace t360::test {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Vec3 random_unit(std::mt19937_64& g) {
    std::normal_distribution<double> n(0.0, 1.0);
    while (true) {
        const Vec3 v{n(g), n(g), n(g)};
        const double norm = v.norm();
        if (norm > 1e-6) return {v.x / norm, v.y / norm, v.z / norm};
    }
}

inline Orientation random_orientation(std::mt19937_64& g) {
    std::uniform_real_distribution<double> full(-kPi, kPi);
    std::uniform_real_distribution<double> half(-kPi / 2.0, kPi / 2.0);
    return {full(g), half(g), full(g)};
}

inline Frame random_frame(std::mt19937_64& g, int w, int h, int ch) {
    Frame f(w, h, ch);
    std::uniform_int_distribution<int> d(0, 255);
    for (auto& s : f.samples) s = static_cast<std::uint8_t>(d(g));
    return f;
}

// Exhaustive selection: a tile is needed iff any of its pixel centers
// maps into the rotated frustum. Ground truth for visible_tiles.
inline std::set<int> oracle_visible_tiles(const Frustum& f, const TilingScheme& s,
                                          const ProjectionGeometry& g, const Mat3& r) {
    const Frustum fr = rotate_frustum(f, r);
    std::set<int> out;
    for (int id = 0; id < s.tile_count(); ++id) {
        const TileRect rect = tile_rect(s, id);
        bool hit = false;
        for (int y = rect.y; y < rect.y + rect.height && !hit; ++y) {
            for (int x = rect.x; x < rect.x + rect.width && !hit; ++x) {
                hit = contains(fr, image_to_sphere(g, {static_cast<double>(x), static_cast<double>(y)}));
            }
        }
        if (hit) out.insert(id);
    }
    return out;
}

class TempDir {
  public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("tile360_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string str(const std::string& rel = "") const {
        return rel.empty() ? path_.string() : (path_ / rel).string();
    }

  private:
    std::filesystem::path path_;
};

}  // namespace t360::test
