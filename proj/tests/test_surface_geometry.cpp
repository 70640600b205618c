// Pseudo-normals, orientation, welded meshes and curvature.

#include "isograph/fixtures.hpp"
#include "isograph/surface_geometry.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace isograph;

namespace {

// |D| * sum(continuous) - |C| * sum(disperse), with integer corners.
IVec3 pairwise_sum(const std::array<IVec3, 8>& corners, std::uint8_t disperse)
{
    IVec3 out{0, 0, 0};
    for (int d = 0; d < 8; ++d) {
        if (!((disperse >> d) & 1)) continue;
        for (int c = 0; c < 8; ++c) {
            if ((disperse >> c) & 1) continue;
            for (int a = 0; a < 3; ++a) out[std::size_t(a)] += corners[std::size_t(c)][std::size_t(a)] - corners[std::size_t(d)][std::size_t(a)];
        }
    }
    return out;
}

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    return v.empty() ? 0.0 : v[v.size() / 2];
}

struct Extracted {
    IsoSurface surf;
    ComponentDecomposition comps;
    OrientationReport orient;
};

Extracted extract(const NodeLabeling& labels, const CuboidPartition& part, double c = 0.5)
{
    Extracted e;
    e.surf = extract_grid(labels, part, c);
    e.comps = decompose_components(e.surf);
    e.orient = orient_surface(e.surf, e.comps);
    return e;
}

} // namespace

TEST_CASE("double sum and closed form agree on every mixed corner pattern")
{
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::int64_t> u(-50, 50);
    for (int trial = 0; trial < 20; ++trial) {
        std::array<IVec3, 8> corners;
        IVec3 o{u(rng), u(rng), u(rng)};
        IVec3 ext{1 + (u(rng) + 50) % 9, 1 + (u(rng) + 50) % 9, 1 + (u(rng) + 50) % 9};
        for (int c = 0; c < 8; ++c) {
            auto off = cube::corner_offset(c);
            for (int a = 0; a < 3; ++a) corners[std::size_t(c)][std::size_t(a)] = o[std::size_t(a)] + off[std::size_t(a)] * ext[std::size_t(a)];
        }
        for (int m = 1; m < 255; ++m) {
            auto mask = std::uint8_t(m);
            IVec3 ds = pseudo_normal_double_sum(corners, mask);
            CHECK(ds == pseudo_normal_closed_form(corners, mask));
            CHECK(ds == pairwise_sum(corners, mask));
            IVec3 flipped = pseudo_normal_double_sum(corners, std::uint8_t(~mask));
            for (int a = 0; a < 3; ++a) CHECK(flipped[std::size_t(a)] == -ds[std::size_t(a)]);
        }
    }
}

TEST_CASE("pseudo-normal of a single disperse corner")
{
    std::array<Vec3, 8> corners;
    for (int c = 0; c < 8; ++c) corners[std::size_t(c)] = cube::unit_corner(c);
    auto pn = pseudo_normal(corners, 0x01);
    CHECK(pn.p.isApprox(Vec3(4, 4, 4)));
    CHECK_FALSE(pn.degenerate);
    auto checker = pseudo_normal(corners, std::uint8_t((1u << 0) | (1u << 3) | (1u << 5) | (1u << 6)));
    CHECK(checker.degenerate);
    CHECK(checker.p.norm() == doctest::Approx(0.0));
    CHECK_THROWS_AS(pseudo_normal(corners, 0x00), NoInterfaceError);
    CHECK_THROWS_AS(pseudo_normal(corners, 0xFF), NoInterfaceError);
}

TEST_CASE("sphere is closed, outward and of genus zero")
{
    CuboidPartition part;
    auto f = fixtures::sphere(24, part);
    auto e = extract(label_vertices(f, part), part);
    REQUIRE(e.comps.components.size() == 1);
    CHECK(e.orient.inconsistent_lines == 0);
    std::size_t inward = 0;
    for (std::size_t p = 0; p < e.surf.paths.size(); ++p) {
        Vec3 a = path_area_vector(e.surf, p);
        if (a.dot(e.surf.paths[p].center - Vec3::Constant(0.5)) <= 0.0) ++inward;
    }
    CHECK(inward == 0);
    auto mesh = build_mesh(e.surf, e.comps);
    CHECK(mesh.euler_characteristic() == 2);
    CHECK(mesh.component_count == 1);
    // Divergence theorem on the welded mesh against the enclosed volume.
    double vol = 0.0;
    for (const auto& t : mesh.triangles)
        vol += mesh.vertices[t[0]].dot(mesh.vertices[t[1]].cross(mesh.vertices[t[2]])) / 6.0;
    CHECK(vol == doctest::Approx(enclosed_volume(label_vertices(f, part), part, 0.5)).epsilon(1e-9));
    CHECK(vol == doctest::Approx(4.0 / 3.0 * M_PI * 0.027).epsilon(0.03));
}

TEST_CASE("regions list one or two triangles per ring path")
{
    CuboidPartition part;
    auto f = fixtures::sphere(16, part);
    auto e = extract(label_vertices(f, part), part);
    std::size_t regions = 0;
    for (std::uint32_t p = 0; p < e.surf.points.size(); p += 7) {
        for (const auto& ring : neighbor_rings(p, e.surf, e.comps)) {
            auto reg = surface_region(e.surf, e.comps, ring);
            std::size_t want = 0;
            for (auto pid : ring.paths) {
                const auto& path = e.surf.paths[pid];
                want += path.size() == 3 || path.kind == PathKind::Outer ? 1 : 2;
            }
            CHECK(reg.triangles.size() == want);
            CHECK(reg.outer_apex.size() == want);
            CHECK(reg.closed);
            for (const auto& t : reg.triangles) CHECK(t[0] == e.surf.points[p].position);
            ++regions;
        }
    }
    CHECK(regions > 0);
}

TEST_CASE("curvature of a fan on a unit sphere")
{
    const double theta = 0.05;
    std::vector<std::array<Vec3, 3>> tris;
    const Vec3 top(0, 0, 1);
    const int n = 6;
    for (int i = 0; i < n; ++i) {
        double a = 2 * M_PI * i / n;
        double b = 2 * M_PI * (i + 1) / n;
        Vec3 x(std::sin(theta) * std::cos(a), std::sin(theta) * std::sin(a), std::cos(theta));
        Vec3 y(std::sin(theta) * std::cos(b), std::sin(theta) * std::sin(b), std::cos(theta));
        tris.push_back({top, x, y});
    }
    for (auto scheme : {CurvatureScheme::MixedCotangent, CurvatureScheme::OneThirdCotangent}) {
        auto est = mean_curvature(top, tris, top, scheme);
        REQUIRE(est.valid);
        CHECK(est.mean_curvature == doctest::Approx(2.0).epsilon(0.01));
    }
    // Without outer apexes the conormal sum over the fan boundary equals the gradient of the fan area.
    auto conormal = mean_curvature(top, tris, top, CurvatureScheme::Conormal);
    auto region = mean_curvature(top, tris, top, CurvatureScheme::RegionCotangent);
    CHECK(conormal.mean_curvature == doctest::Approx(region.mean_curvature).epsilon(1e-10));
    auto flipped = mean_curvature(top, tris, -top, CurvatureScheme::MixedCotangent);
    CHECK(flipped.mean_curvature == doctest::Approx(-2.0).epsilon(0.01));
}

TEST_CASE("planar interface has zero curvature")
{
    CuboidPartition part;
    auto f = fixtures::slab(12, part, 0.3, 0.7);
    auto e = extract(label_vertices(f, part), part);
    std::size_t checked = 0;
    for (std::uint32_t p = 0; p < e.surf.points.size(); ++p) {
        if (point_on_boundary(e.surf, p)) continue;
        auto est = point_curvature(e.surf, e.comps, p);
        if (!est.valid) continue;
        CHECK(std::abs(est.mean_curvature) < 1e-9);
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("cylinder curvature approaches one over the radius")
{
    const double radius = 0.3;
    std::vector<double> errors;
    for (std::int64_t n : {16, 32}) {
        CuboidPartition part = fixtures::unit_grid(n);
        NodeLabeling labels;
        labels.vertex_dims = part.vertex_dims();
        labels.labels.resize(std::size_t(part.vertex_count()));
        for (std::int64_t v = 0; v < part.vertex_count(); ++v) {
            Vec3 x = part.vertex_position(part.vertex_index(v));
            double r = std::hypot(x[0] - 0.5, x[1] - 0.5);
            labels.labels[std::size_t(v)] = std::clamp(0.5 + (radius - r) * double(n) * 0.25, 0.0, 1.0);
        }
        auto e = extract(labels, part);
        std::vector<double> err;
        for (std::uint32_t p = 0; p < e.surf.points.size(); ++p) {
            if (point_on_boundary(e.surf, p)) continue;
            auto est = point_curvature(e.surf, e.comps, p);
            if (est.valid) err.push_back(std::abs(est.mean_curvature - 1.0 / radius) * radius);
        }
        REQUIRE(!err.empty());
        errors.push_back(median(err));
    }
    MESSAGE("median relative error 16^3 " << errors[0] << " 32^3 " << errors[1]);
    CHECK(errors[1] < 0.2);
}

TEST_CASE("mesh export carries normals and per-triangle components")
{
    CuboidPartition part;
    auto f = fixtures::two_spheres(16, part);
    auto e = extract(label_vertices(f, part), part);
    MeshOptions opt;
    opt.curvature = true;
    auto mesh = build_mesh(e.surf, e.comps, opt);
    CHECK(mesh.component_count == 2);
    CHECK(mesh.normals.size() == mesh.vertices.size());
    CHECK(mesh.curvature.size() == mesh.vertices.size());
    CHECK(mesh.component.size() == mesh.triangles.size());
    for (const auto& nrm : mesh.normals) CHECK(nrm.norm() == doctest::Approx(1.0));
    CHECK(mesh.euler_characteristic(0) == 2);
    CHECK(mesh.euler_characteristic(1) == 2);
}
