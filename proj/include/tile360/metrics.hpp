#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "tile360/frame.hpp"

namespace t360 {

// PSNR reported for a zero-MSE frame (keeps CSV values finite).
inline constexpr double kPsnrSaturatedDb = 99.0;

// Mean squared sample difference. Accumulated in integers, divided once,
// so the result is deterministic. RGB frames average across channels.
inline double mse(const Frame& a, const Frame& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("mse: frame shapes differ");
    std::uint64_t acc = 0;
    const size_t n = a.samples.size();
    for (size_t i = 0; i < n; ++i) {
        const long d = static_cast<long>(a.samples[i]) - static_cast<long>(b.samples[i]);
        acc += static_cast<std::uint64_t>(d * d);
    }
    return static_cast<double>(acc) / static_cast<double>(n);
}

inline double psnr(double mse_value, double max_value = 255.0) {
    if (mse_value < 0.0) throw std::invalid_argument("psnr: negative mse");
    if (mse_value == 0.0) return kPsnrSaturatedDb;
    return 10.0 * std::log10(max_value * max_value / mse_value);
}

// Unweighted mean of per-tile MSE over the `used` set.
inline double mean_tile_mse(const std::map<int, Frame>& ref_tiles, const std::map<int, Frame>& recv_tiles,
                            const std::set<int>& used) {
    if (used.empty()) throw std::invalid_argument("mean_tile_mse: empty tile set");
    double sum = 0.0;
    for (int id : used) {
        const auto ref = ref_tiles.find(id);
        const auto recv = recv_tiles.find(id);
        if (ref == ref_tiles.end() || recv == recv_tiles.end())
            throw std::invalid_argument("mean_tile_mse: tile " + std::to_string(id) + " missing");
        sum += mse(ref->second, recv->second);
    }
    return sum / static_cast<double>(used.size());
}

// Per-frame quality record produced by session replay.
struct FrameMetric {
    int frame_index = 0;
    double viewport_mse = 0.0;
    double mean_tile_mse = 0.0;  // NaN when no tile was used
    double psnr_db = 0.0;
};

}  // namespace t360
