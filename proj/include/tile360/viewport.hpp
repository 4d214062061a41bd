#pragma once

#include <array>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "tile360/geometry.hpp"
#include "tile360/projection.hpp"
#include "tile360/tiling.hpp"

namespace t360 {

// Horizontal/vertical field of view, radians.
struct Fov {
    double x = 0.0;
    double y = 0.0;
};

// Four planes through the sphere origin bounding the field of view.
// Normals point outward; a direction is inside when every dot product is
// <= 0. Order: left, right, top, bottom.
struct Frustum {
    std::array<Vec3, 4> normals;
};

inline Frustum make_frustum(const Fov& fov) {
    if (!(fov.x > 0.0 && fov.x < kPi) || !(fov.y > 0.0 && fov.y < kPi))
        throw std::invalid_argument("frustum: fov must be in (0, pi) per axis");
    const double hx = fov.x / 2.0, hy = fov.y / 2.0;
    Frustum f;
    f.normals[0] = {-std::cos(hx), 0.0, -std::sin(hx)};
    f.normals[1] = {std::cos(hx), 0.0, -std::sin(hx)};
    f.normals[2] = {0.0, std::cos(hy), -std::sin(hy)};
    f.normals[3] = {0.0, -std::cos(hy), -std::sin(hy)};
    return f;
}

inline Frustum rotate_frustum(const Frustum& f, const Mat3& r) {
    Frustum out;
    for (size_t i = 0; i < 4; ++i) out.normals[i] = r * f.normals[i];
    return out;
}

// Boundary-inclusive membership: a single pixel on a plane still counts.
inline bool contains(const Frustum& f, const Vec3& p) {
    for (const Vec3& n : f.normals)
        if (n.dot(p) > 0.0) return false;
    return true;
}

// Sampling raster used for viewport-side tile selection when the caller
// has no display raster: roughly twice the source projection's pixel
// density across the field of view.
inline ProjectionGeometry default_selection_raster(const ProjectionGeometry& g, const Fov& fov) {
    const int w = std::max(16, 2 * static_cast<int>(std::lround(g.width * fov.x / (2.0 * kPi))));
    const int h = std::max(16, 2 * static_cast<int>(std::lround(g.height * fov.y / kPi)));
    return ProjectionGeometry::gnomonic(w, h, fov.x, fov.y);
}

// Tiles needed to cover the rotated frustum. Two complementary passes:
//  (a) tile border pixel centers, sampled every `stride` pixels, tested
//      against the frustum — cheap and catches every tile the frustum
//      edge crosses;
//  (b) viewport raster rays mapped into the projection; each landing
//      votes for tiles by testing the actual pixel centers around it.
//      This catches tiles that strictly contain the viewport, which
//      border sampling alone misses.
// Every reported tile owns at least one pixel center inside the frustum,
// so the result is a subset of (and in practice equal to) the exhaustive
// per-pixel test.
inline std::set<int> visible_tiles(const Frustum& f, const TilingScheme& s, const ProjectionGeometry& g,
                                   const ProjectionGeometry& vp_geom, const Mat3& r, int stride) {
    validate_scheme(s);
    if (g.width != s.frame_width || g.height != s.frame_height)
        throw std::invalid_argument("visible_tiles: geometry does not match tiling scheme");
    if (vp_geom.kind != ProjectionKind::Gnomonic)
        throw std::invalid_argument("visible_tiles: viewport geometry must be gnomonic");

    const Frustum fr = rotate_frustum(f, r);
    const int tw = s.tile_width(), th = s.tile_height();
    std::vector<char> marked(static_cast<size_t>(s.tile_count()), 0);

    for (int id = 0; id < s.tile_count(); ++id) {
        for (const Vec3& p : tile_border_points(s, id, g, stride)) {
            if (contains(fr, p)) {
                marked[static_cast<size_t>(id)] = 1;
                break;
            }
        }
    }

    const bool wrap_u = g.kind == ProjectionKind::Erp;
    auto vote = [&](int pu, int pv) {
        if (pv < 0 || pv >= g.height) return;
        if (pu < 0 || pu >= g.width) {
            if (!wrap_u) return;
            pu %= g.width;
            if (pu < 0) pu += g.width;
        }
        const int id = (pv / th) * s.cols + pu / tw;
        if (marked[static_cast<size_t>(id)]) return;
        if (contains(fr, image_to_sphere(g, {static_cast<double>(pu), static_cast<double>(pv)})))
            marked[static_cast<size_t>(id)] = 1;
    };

    for (int y = 0; y < vp_geom.height; ++y) {
        for (int x = 0; x < vp_geom.width; ++x) {
            const Vec3 local = image_to_sphere(vp_geom, {static_cast<double>(x), static_cast<double>(y)});
            const auto pos = sphere_to_image(g, r * local);
            if (!pos) continue;
            const int pu = static_cast<int>(std::floor(pos->u + 0.5));
            const int pv = static_cast<int>(std::floor(pos->v + 0.5));
            for (int dv = -1; dv <= 1; ++dv)
                for (int du = -1; du <= 1; ++du) vote(pu + du, pv + dv);
        }
    }

    std::set<int> out;
    for (int id = 0; id < s.tile_count(); ++id)
        if (marked[static_cast<size_t>(id)]) out.insert(id);
    return out;
}

// Renders the user's view: viewport pixel -> gnomonic ray -> head
// rotation -> sample the projection where the ray lands.
inline Frame extract_viewport(const Frame& proj, const ProjectionGeometry& g, const Orientation& o,
                              const ProjectionGeometry& vp_geom, SampleFilter filter) {
    if (vp_geom.kind != ProjectionKind::Gnomonic)
        throw std::invalid_argument("extract_viewport: viewport geometry must be gnomonic");
    return resample_projection(proj, g, vp_geom, rotation_matrix(o), filter);
}

}  // namespace t360
