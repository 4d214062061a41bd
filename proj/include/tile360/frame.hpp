#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace t360 {

// 8-bit raster, row-major, channel-interleaved. channels is 1 (grayscale)
// or 3 (RGB).
struct Frame {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::uint8_t> samples;

    Frame() = default;
    Frame(int w, int h, int ch, std::uint8_t fill = 0)
        : width(w), height(h), channels(ch) {
        if (w < 1 || h < 1 || (ch != 1 && ch != 3))
            throw std::invalid_argument("frame: bad dimensions " + std::to_string(w) + "x" +
                                        std::to_string(h) + "x" + std::to_string(ch));
        samples.assign(static_cast<size_t>(w) * static_cast<size_t>(h) * static_cast<size_t>(ch), fill);
    }

    std::uint8_t& at(int x, int y, int c = 0) {
        return samples[(static_cast<size_t>(y) * static_cast<size_t>(width) + static_cast<size_t>(x)) *
                           static_cast<size_t>(channels) +
                       static_cast<size_t>(c)];
    }
    const std::uint8_t& at(int x, int y, int c = 0) const {
        return samples[(static_cast<size_t>(y) * static_cast<size_t>(width) + static_cast<size_t>(x)) *
                           static_cast<size_t>(channels) +
                       static_cast<size_t>(c)];
    }

    bool same_shape(const Frame& o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }

    bool operator==(const Frame& o) const {
        return same_shape(o) && samples == o.samples;
    }
};

}  // namespace t360
