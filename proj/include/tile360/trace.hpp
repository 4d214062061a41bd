#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace t360 {

// One recorded head orientation. Degrees at the file boundary; replay
// converts to radians.
struct HeadTraceRow {
    int frame_index = 0;
    double yaw_deg = 0.0;
    double pitch_deg = 0.0;
    double roll_deg = 0.0;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

inline bool starts_numeric(const std::string& s) {
    const size_t i = s.find_first_not_of(" \t");
    if (i == std::string::npos) return false;
    return std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '-' || s[i] == '+' || s[i] == '.';
}

inline double csv_double(const std::string& field, const std::string& where) {
    try {
        size_t pos = 0;
        const double v = std::stod(field, &pos);
        while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos]))) ++pos;
        if (pos != field.size()) throw std::invalid_argument(field);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(where + ": non-numeric field '" + field + "'");
    }
}

inline int csv_int(const std::string& field, const std::string& where) {
    const double v = csv_double(field, where);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) throw std::runtime_error(where + ": expected integer, got '" + field + "'");
    return i;
}

}  // namespace detail

// CSV columns: frame,yaw_deg,pitch_deg,roll_deg. An optional header line
// is skipped. Frame indices must run 0,1,2,... with no gaps.
inline std::vector<HeadTraceRow> parse_head_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::vector<HeadTraceRow> rows;
    std::string line;
    int line_no = 0;
    bool first_content_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = path + ":line " + std::to_string(line_no);
        if (first_content_line && !detail::starts_numeric(line)) {
            first_content_line = false;  // header
            continue;
        }
        first_content_line = false;
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != 4)
            throw std::runtime_error(where + ": expected 4 fields, got " + std::to_string(fields.size()));
        HeadTraceRow row;
        row.frame_index = detail::csv_int(fields[0], where);
        row.yaw_deg = detail::csv_double(fields[1], where);
        row.pitch_deg = detail::csv_double(fields[2], where);
        row.roll_deg = detail::csv_double(fields[3], where);
        const int expected = static_cast<int>(rows.size());
        if (row.frame_index < expected)
            throw std::runtime_error(where + ": duplicate or out-of-order frame index " +
                                     std::to_string(row.frame_index));
        if (row.frame_index > expected)
            throw std::runtime_error(where + ": gap in frame indices (expected " + std::to_string(expected) +
                                     ", got " + std::to_string(row.frame_index) + ")");
        rows.push_back(row);
    }
    if (rows.empty()) throw std::runtime_error(path + ": empty trace");
    return rows;
}

// Per-frame, per-tile availability flags. Rows are frame,tile_id,available
// with available in {0,1}; pairs without a row default to available.
class Availability {
  public:
    Availability(int n_frames, int n_tiles)
        : n_tiles_(n_tiles), flags_(static_cast<size_t>(n_frames) * static_cast<size_t>(n_tiles), 1) {}

    void set(int frame, int tile, bool available) {
        flags_[static_cast<size_t>(frame) * static_cast<size_t>(n_tiles_) + static_cast<size_t>(tile)] =
            available ? 1 : 0;
    }
    bool available(int frame, int tile) const {
        return flags_[static_cast<size_t>(frame) * static_cast<size_t>(n_tiles_) + static_cast<size_t>(tile)] !=
               0;
    }

  private:
    int n_tiles_;
    std::vector<std::uint8_t> flags_;
};

inline Availability parse_availability(const std::string& path, int n_frames, int n_tiles) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    Availability avail(n_frames, n_tiles);
    std::string line;
    int line_no = 0;
    bool first_content_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = path + ":line " + std::to_string(line_no);
        if (first_content_line && !detail::starts_numeric(line)) {
            first_content_line = false;
            continue;
        }
        first_content_line = false;
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != 3)
            throw std::runtime_error(where + ": expected 3 fields, got " + std::to_string(fields.size()));
        const int frame = detail::csv_int(fields[0], where);
        const int tile = detail::csv_int(fields[1], where);
        const int flag = detail::csv_int(fields[2], where);
        if (frame < 0 || frame >= n_frames)
            throw std::runtime_error(where + ": frame " + std::to_string(frame) + " out of range");
        if (tile < 0 || tile >= n_tiles)
            throw std::runtime_error(where + ": tile " + std::to_string(tile) + " out of range");
        if (flag != 0 && flag != 1)
            throw std::runtime_error(where + ": available must be 0 or 1");
        avail.set(frame, tile, flag == 1);
    }
    return avail;
}

}  // namespace t360
