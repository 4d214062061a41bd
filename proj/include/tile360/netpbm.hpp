#pragma once

#include <cctype>
#include <fstream>
#include <stdexcept>
#include <string>

#include "tile360/frame.hpp"

namespace t360 {

namespace detail {

// Next token after whitespace and '#' comments.
inline std::string pnm_token(std::istream& in, const std::string& path) {
    std::string tok;
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    while (c != EOF && !std::isspace(c)) {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    }
    if (tok.empty()) throw std::runtime_error(path + ": truncated netpbm header");
    return tok;
}

inline int pnm_int(std::istream& in, const std::string& path) {
    const std::string tok = pnm_token(in, path);
    try {
        size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(path + ": bad netpbm header field '" + tok + "'");
    }
}

}  // namespace detail

// Binary netpbm: P5 (grayscale) and P6 (RGB), maxval 255 only.
inline Frame read_netpbm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open");

    const std::string magic = detail::pnm_token(in, path);
    int channels = 0;
    if (magic == "P5") channels = 1;
    else if (magic == "P6") channels = 3;
    else throw std::runtime_error(path + ": unsupported netpbm magic '" + magic + "'");

    const int w = detail::pnm_int(in, path);
    const int h = detail::pnm_int(in, path);
    const int maxval = detail::pnm_int(in, path);
    if (w < 1 || h < 1) throw std::runtime_error(path + ": bad netpbm dimensions");
    if (maxval != 255) throw std::runtime_error(path + ": unsupported maxval " + std::to_string(maxval));
    // The single whitespace byte after maxval was consumed by the tokenizer.

    Frame f(w, h, channels);
    in.read(reinterpret_cast<char*>(f.samples.data()), static_cast<std::streamsize>(f.samples.size()));
    if (in.gcount() != static_cast<std::streamsize>(f.samples.size()))
        throw std::runtime_error(path + ": truncated netpbm payload");
    return f;
}

inline void write_netpbm(const std::string& path, const Frame& f) {
    if (f.channels != 1 && f.channels != 3)
        throw std::invalid_argument(path + ": netpbm supports 1 or 3 channels");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << (f.channels == 1 ? "P5" : "P6") << "\n" << f.width << " " << f.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(f.samples.data()), static_cast<std::streamsize>(f.samples.size()));
    if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace t360
