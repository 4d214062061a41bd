#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "tile360/geometry.hpp"

using namespace t360;
using Catch::Approx;

namespace {

// Independent oracle: plain-array Y-X-Z product, no shared code with Mat3.
void oracle_yxz_apply(double yaw, double pitch, double roll, const double in[3], double out[3]) {
    const double cy = std::cos(yaw), sy = std::sin(yaw);
    const double cp = std::cos(pitch), sp = std::sin(pitch);
    const double cr = std::cos(roll), sr = std::sin(roll);
    const double ry[3][3] = {{cy, 0, sy}, {0, 1, 0}, {-sy, 0, cy}};
    const double rx[3][3] = {{1, 0, 0}, {0, cp, sp}, {0, -sp, cp}};
    const double rz[3][3] = {{cr, sr, 0}, {-sr, cr, 0}, {0, 0, 1}};
    double tmp[3][3] = {}, full[3][3] = {};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) tmp[i][j] += rx[i][k] * rz[k][j];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) full[i][j] += ry[i][k] * tmp[k][j];
    for (int i = 0; i < 3; ++i) out[i] = full[i][0] * in[0] + full[i][1] * in[1] + full[i][2] * in[2];
}

void check_close(const Vec3& got, const Vec3& want, double tol = 1e-9) {
    CHECK(got.x == Approx(want.x).margin(tol));
    CHECK(got.y == Approx(want.y).margin(tol));
    CHECK(got.z == Approx(want.z).margin(tol));
}

}  // namespace

TEST_CASE("spherical_to_cartesian axes") {
    check_close(spherical_to_cartesian({0.0, 0.0}), {0, 0, 1}, 1e-12);
    check_close(spherical_to_cartesian({kPi / 2, 0.0}), {1, 0, 0}, 1e-12);
    check_close(spherical_to_cartesian({0.0, kPi / 2}), {0, 1, 0}, 1e-12);
}

TEST_CASE("cartesian_to_spherical axes and pole convention") {
    auto s = cartesian_to_spherical({0, 0, 1});
    CHECK(s.azimuth == Approx(0.0).margin(1e-12));
    CHECK(s.elevation == Approx(0.0).margin(1e-12));

    s = cartesian_to_spherical({0, 1, 0});
    CHECK(s.azimuth == 0.0);  // azimuth defined as 0 at the poles
    CHECK(s.elevation == Approx(kPi / 2).margin(1e-12));

    s = cartesian_to_spherical({-1, 0, 0});
    CHECK(s.azimuth == Approx(-kPi / 2).margin(1e-12));
    CHECK(s.elevation == Approx(0.0).margin(1e-12));
}

TEST_CASE("rotation_matrix basics") {
    const Mat3 id = rotation_matrix({0, 0, 0});
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) CHECK(id(r, c) == Approx(r == c ? 1.0 : 0.0).margin(1e-12));

    check_close(rotation_matrix({kPi / 2, 0, 0}) * Vec3{0, 0, 1}, {1, 0, 0}, 1e-12);
    check_close(rotation_matrix({0, kPi / 2, 0}) * Vec3{0, 0, 1}, {0, 1, 0}, 1e-12);
    check_close(rotation_matrix({0, 0, kPi / 2}) * Vec3{0, 1, 0}, {1, 0, 0}, 1e-12);
}

TEST_CASE("yaw then pitch moves front to zenith") {
    // rotation_matrix(yaw=pi/2, pitch=pi/2) * (0,0,1) — cross-checked
    // against the plain-array oracle.
    const Vec3 got = rotation_matrix({kPi / 2, kPi / 2, 0}) * Vec3{0, 0, 1};
    check_close(got, {0, 1, 0});

    const double in[3] = {0, 0, 1};
    double want[3];
    oracle_yxz_apply(kPi / 2, kPi / 2, 0, in, want);
    check_close(got, {want[0], want[1], want[2]});
}

TEST_CASE("rotation matches oracle on random orientations") {
    auto g = t360::test::rng(101);
    for (int i = 0; i < 200; ++i) {
        const Orientation o = t360::test::random_orientation(g);
        const Vec3 v = t360::test::random_unit(g);
        const Vec3 got = rotation_matrix(o) * v;
        const double in[3] = {v.x, v.y, v.z};
        double want[3];
        oracle_yxz_apply(o.yaw, o.pitch, o.roll, in, want);
        check_close(got, {want[0], want[1], want[2]});
    }
}

TEST_CASE("rotate basics") {
    check_close(rotate(Mat3::identity(), {0, 0, 1}), {0, 0, 1}, 0.0);
    check_close(rotate(rotation_matrix({kPi, 0, 0}), {0, 0, 1}), {0, 0, -1}, 1e-12);

    auto g = t360::test::rng(7);
    for (int i = 0; i < 100; ++i) {
        const Vec3 v = t360::test::random_unit(g);
        const Mat3 r = rotation_matrix(t360::test::random_orientation(g));
        CHECK((r * v).norm() == Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("spherical round trip, 1000 samples") {
    auto g = t360::test::rng(42);
    std::uniform_real_distribution<double> az(-kPi, kPi);
    std::uniform_real_distribution<double> el(-kPi / 2 + 1e-6, kPi / 2 - 1e-6);
    for (int i = 0; i < 1000; ++i) {
        const SphericalCoord s = make_spherical(az(g), el(g));
        const SphericalCoord back = cartesian_to_spherical(spherical_to_cartesian(s));
        CHECK(back.azimuth == Approx(s.azimuth).margin(1e-9));
        CHECK(back.elevation == Approx(s.elevation).margin(1e-9));
    }
}

TEST_CASE("rotation matrices are orthonormal with det +1, 1000 samples") {
    auto g = t360::test::rng(43);
    for (int i = 0; i < 1000; ++i) {
        const Mat3 r = rotation_matrix(t360::test::random_orientation(g));
        const Mat3 rtr = r.transpose() * r;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) REQUIRE(rtr(a, b) == Approx(a == b ? 1.0 : 0.0).margin(1e-9));
        REQUIRE(r.det() == Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("transpose inverts the rotation") {
    auto g = t360::test::rng(44);
    for (int i = 0; i < 200; ++i) {
        const Mat3 r = rotation_matrix(t360::test::random_orientation(g));
        const Vec3 v = t360::test::random_unit(g);
        check_close(rotate(r.transpose(), rotate(r, v)), v);
    }
}

TEST_CASE("pure yaw preserves elevation") {
    auto g = t360::test::rng(45);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int i = 0; i < 200; ++i) {
        const Vec3 v = t360::test::random_unit(g);
        const Vec3 rotated = rotation_matrix({angle(g), 0, 0}) * v;
        CHECK(cartesian_to_spherical(rotated).elevation ==
              Approx(cartesian_to_spherical(v).elevation).margin(1e-9));
    }
}

TEST_CASE("wrap_pi range") {
    CHECK(wrap_pi(kPi) == Approx(-kPi).margin(1e-12));
    CHECK(wrap_pi(-kPi) == Approx(-kPi).margin(1e-12));
    CHECK(wrap_pi(3 * kPi) == Approx(-kPi).margin(1e-9));
    CHECK(wrap_pi(0.25) == Approx(0.25).margin(1e-12));
    auto g = t360::test::rng(46);
    std::uniform_real_distribution<double> any(-50.0, 50.0);
    for (int i = 0; i < 500; ++i) {
        const double w = wrap_pi(any(g));
        CHECK(w >= -kPi);
        CHECK(w < kPi);
    }
}
