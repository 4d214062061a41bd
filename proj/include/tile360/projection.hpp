#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "tile360/frame.hpp"
#include "tile360/geometry.hpp"
#include "tile360/parallel.hpp"

namespace t360 {

enum class ProjectionKind { Erp, Cmp, Gnomonic };

// Pixel position in index units: integer value = pixel center, pixel i
// covers [i-0.5, i+0.5). Sub-pixel values address resample positions.
struct PixelCoord {
    double u = 0.0;
    double v = 0.0;
};

struct ProjectionGeometry {
    ProjectionKind kind = ProjectionKind::Erp;
    int width = 0;
    int height = 0;
    double fov_x = 0.0;  // gnomonic only, radians
    double fov_y = 0.0;

    static ProjectionGeometry erp(int w, int h) {
        if (w < 1 || h < 1) throw std::invalid_argument("erp: bad dimensions");
        return {ProjectionKind::Erp, w, h, 0.0, 0.0};
    }
    static ProjectionGeometry cmp(int w, int h) {
        if (w < 1 || h < 1 || w % 3 != 0 || h % 2 != 0)
            throw std::invalid_argument("cmp: width must divide by 3 and height by 2");
        return {ProjectionKind::Cmp, w, h, 0.0, 0.0};
    }
    static ProjectionGeometry gnomonic(int w, int h, double fov_x, double fov_y) {
        if (w < 1 || h < 1) throw std::invalid_argument("gnomonic: bad dimensions");
        if (!(fov_x > 0.0 && fov_x < kPi) || !(fov_y > 0.0 && fov_y < kPi))
            throw std::invalid_argument("gnomonic: fov must be in (0, pi) per axis");
        return {ProjectionKind::Gnomonic, w, h, fov_x, fov_y};
    }
};

namespace detail {

// Cubemap layout: 3 columns x 2 rows of W/3 x H/2 faces.
//   row 0: front(+z)  right(+x)  back(-z)
//   row 1: left(-x)   top(+y)    bottom(-y)
// Within a face, u grows along the local +x' axis and v along -y'. Pixel
// (u,v) maps to normalize(n + a*x' + b*y') with a = 2(u+0.5)/fw - 1 and
// b = 1 - 2(v+0.5)/fh. The local frames keep the horizontal ring
// front->right->back->left continuous and stick top/bottom to the front
// face's upper/lower edges.
struct CmpFace {
    Vec3 n, xp, yp;
};

inline const std::array<CmpFace, 6>& cmp_faces() {
    static const std::array<CmpFace, 6> faces = {{
        {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}},    // front
        {{1, 0, 0}, {0, 0, -1}, {0, 1, 0}},   // right
        {{0, 0, -1}, {-1, 0, 0}, {0, 1, 0}},  // back
        {{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}},   // left
        {{0, 1, 0}, {1, 0, 0}, {0, 0, -1}},   // top
        {{0, -1, 0}, {1, 0, 0}, {0, 0, 1}},   // bottom
    }};
    return faces;
}

}  // namespace detail

inline Vec3 image_to_sphere(const ProjectionGeometry& g, const PixelCoord& p) {
    if (!(p.u >= 0.0 && p.u < g.width && p.v >= 0.0 && p.v < g.height))
        throw std::out_of_range("pixel outside projection");
    switch (g.kind) {
        case ProjectionKind::Erp: {
            const double theta = 2.0 * kPi * (p.u + 0.5) / g.width - kPi;
            const double phi = kPi / 2.0 - kPi * (p.v + 0.5) / g.height;
            return spherical_to_cartesian({theta, phi});
        }
        case ProjectionKind::Cmp: {
            const int fw = g.width / 3, fh = g.height / 2;
            const int fc = std::min(2, static_cast<int>(p.u) / fw);
            const int fr = std::min(1, static_cast<int>(p.v) / fh);
            const auto& face = detail::cmp_faces()[static_cast<size_t>(fr * 3 + fc)];
            const double a = 2.0 * (p.u - fc * fw + 0.5) / fw - 1.0;
            const double b = 1.0 - 2.0 * (p.v - fr * fh + 0.5) / fh;
            return (face.n + face.xp * a + face.yp * b).normalized();
        }
        case ProjectionKind::Gnomonic: {
            const double m = (2.0 * (p.u + 0.5) / g.width - 1.0) * std::tan(g.fov_x / 2.0);
            const double n = (1.0 - 2.0 * (p.v + 0.5) / g.height) * std::tan(g.fov_y / 2.0);
            return Vec3{m, n, 1.0}.normalized();
        }
    }
    throw std::logic_error("unreachable projection kind");
}

// Inverse mapping. Gnomonic returns nullopt for directions behind the
// plane or beyond the field of view; ERP and CMP are total.
inline std::optional<PixelCoord> sphere_to_image(const ProjectionGeometry& g, const Vec3& v) {
    switch (g.kind) {
        case ProjectionKind::Erp: {
            const SphericalCoord s = cartesian_to_spherical(v);
            double u = (s.azimuth + kPi) * g.width / (2.0 * kPi) - 0.5;
            if (u < 0.0) u += g.width;  // azimuth wraps
            double row = (kPi / 2.0 - s.elevation) * g.height / kPi - 0.5;
            row = std::clamp(row, 0.0, g.height - 0.5);
            return PixelCoord{u, row};
        }
        case ProjectionKind::Cmp: {
            const int fw = g.width / 3, fh = g.height / 2;
            const auto& faces = detail::cmp_faces();
            int best = 0;
            double best_dot = faces[0].n.dot(v);
            for (int i = 1; i < 6; ++i) {
                const double d = faces[static_cast<size_t>(i)].n.dot(v);
                if (d > best_dot) {
                    best_dot = d;
                    best = i;
                }
            }
            const auto& face = faces[static_cast<size_t>(best)];
            const double a = std::clamp(face.xp.dot(v) / best_dot, -1.0, 1.0);
            const double b = std::clamp(face.yp.dot(v) / best_dot, -1.0, 1.0);
            const double ul = std::clamp((a + 1.0) * fw / 2.0 - 0.5, 0.0, fw - 0.5);
            const double vl = std::clamp((1.0 - b) * fh / 2.0 - 0.5, 0.0, fh - 0.5);
            return PixelCoord{(best % 3) * fw + ul, (best / 3) * fh + vl};
        }
        case ProjectionKind::Gnomonic: {
            if (v.z <= 0.0) return std::nullopt;  // behind the viewport plane
            const double tx = std::tan(g.fov_x / 2.0), ty = std::tan(g.fov_y / 2.0);
            const double m = v.x / v.z, n = v.y / v.z;
            if (std::abs(m) > tx || std::abs(n) > ty) return std::nullopt;
            const double u = std::clamp((m / tx + 1.0) * g.width / 2.0 - 0.5, 0.0, g.width - 0.5);
            const double row = std::clamp((1.0 - n / ty) * g.height / 2.0 - 0.5, 0.0, g.height - 0.5);
            return PixelCoord{u, row};
        }
    }
    throw std::logic_error("unreachable projection kind");
}

enum class SampleFilter { Nearest, Bilinear };

inline SampleFilter parse_filter(const std::string& name) {
    if (name == "nearest") return SampleFilter::Nearest;
    if (name == "bilinear") return SampleFilter::Bilinear;
    throw std::invalid_argument("unknown filter '" + name + "' (nearest|bilinear)");
}

namespace detail {

// Column/row resolution for sample kernels. ERP wraps horizontally; CMP
// clamps to the face holding the sample position; everything else clamps
// to the frame.
struct SampleBounds {
    int col_lo, col_hi;  // inclusive clamp range
    int row_lo, row_hi;
    int wrap_width;  // >0: wrap columns modulo this instead of clamping
};

inline SampleBounds sample_bounds(const ProjectionGeometry& g, const PixelCoord& pos) {
    if (g.kind == ProjectionKind::Erp)
        return {0, g.width - 1, 0, g.height - 1, g.width};
    if (g.kind == ProjectionKind::Cmp) {
        const int fw = g.width / 3, fh = g.height / 2;
        const int pu = std::clamp(static_cast<int>(std::floor(pos.u + 0.5)), 0, g.width - 1);
        const int pv = std::clamp(static_cast<int>(std::floor(pos.v + 0.5)), 0, g.height - 1);
        const int fc = pu / fw, fr = pv / fh;
        return {fc * fw, fc * fw + fw - 1, fr * fh, fr * fh + fh - 1, 0};
    }
    return {0, g.width - 1, 0, g.height - 1, 0};
}

inline int resolve_col(int c, const SampleBounds& b) {
    if (b.wrap_width > 0) {
        c %= b.wrap_width;
        if (c < 0) c += b.wrap_width;
        return c;
    }
    return std::clamp(c, b.col_lo, b.col_hi);
}

inline int resolve_row(int r, const SampleBounds& b) { return std::clamp(r, b.row_lo, b.row_hi); }

inline void sample_frame(const Frame& src, const ProjectionGeometry& g, const PixelCoord& pos,
                         SampleFilter filter, std::uint8_t* out) {
    const SampleBounds b = sample_bounds(g, pos);
    if (filter == SampleFilter::Nearest) {
        const int c = resolve_col(static_cast<int>(std::floor(pos.u + 0.5)), b);
        const int r = resolve_row(static_cast<int>(std::floor(pos.v + 0.5)), b);
        for (int ch = 0; ch < src.channels; ++ch) out[ch] = src.at(c, r, ch);
        return;
    }
    const double fu = std::floor(pos.u), fv = std::floor(pos.v);
    const double du = pos.u - fu, dv = pos.v - fv;
    const int c0 = resolve_col(static_cast<int>(fu), b);
    const int c1 = resolve_col(static_cast<int>(fu) + 1, b);
    const int r0 = resolve_row(static_cast<int>(fv), b);
    const int r1 = resolve_row(static_cast<int>(fv) + 1, b);
    for (int ch = 0; ch < src.channels; ++ch) {
        const double top = src.at(c0, r0, ch) * (1.0 - du) + src.at(c1, r0, ch) * du;
        const double bot = src.at(c0, r1, ch) * (1.0 - du) + src.at(c1, r1, ch) * du;
        const double val = top * (1.0 - dv) + bot * dv;
        out[ch] = static_cast<std::uint8_t>(std::clamp<long>(std::lround(val), 0, 255));
    }
}

}  // namespace detail

// Resamples src into dst_g's raster: each destination pixel center becomes
// a ray in dst_g, is rotated into world space, and samples src where the
// ray lands. Rays outside a gnomonic source's field produce zeros.
// Parallel over rows; output is bit-identical for any thread count.
inline Frame resample_projection(const Frame& src, const ProjectionGeometry& src_g,
                                 const ProjectionGeometry& dst_g, const Mat3& world_from_local,
                                 SampleFilter filter) {
    if (src.width != src_g.width || src.height != src_g.height)
        throw std::invalid_argument("resample: frame does not match source geometry");
    Frame dst(dst_g.width, dst_g.height, src.channels);
    parallel_for(static_cast<size_t>(dst_g.height), [&](size_t row) {
        const int v = static_cast<int>(row);
        std::uint8_t* line = &dst.at(0, v, 0);
        for (int u = 0; u < dst_g.width; ++u) {
            const Vec3 local = image_to_sphere(dst_g, {static_cast<double>(u), static_cast<double>(v)});
            const Vec3 world = world_from_local * local;
            const auto pos = sphere_to_image(src_g, world);
            std::uint8_t* px = line + static_cast<size_t>(u) * static_cast<size_t>(src.channels);
            if (!pos) {
                for (int ch = 0; ch < src.channels; ++ch) px[ch] = 0;
            } else {
                detail::sample_frame(src, src_g, *pos, filter, px);
            }
        }
    });
    return dst;
}

inline Frame convert_projection(const Frame& src, const ProjectionGeometry& src_g,
                                const ProjectionGeometry& dst_g, SampleFilter filter) {
    return resample_projection(src, src_g, dst_g, Mat3::identity(), filter);
}

}  // namespace t360
