// Per-cell iso-paths against the brute-force cycle reference, and grid extraction.

#include "isograph/fixtures.hpp"
#include "isograph/isopath_extract.hpp"
#include "isograph/rewrite_rules.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <chrono>

using namespace isograph;

TEST_CASE("edge interpolation")
{
    Vec3 a(0, 0, 0);
    Vec3 b(2, 0, 0);
    auto p = interpolate_edge(a, b, 0.0, 1.0, 0.25);
    REQUIRE(p);
    CHECK(p->position.isApprox(Vec3(0.5, 0, 0)));
    auto q = interpolate_edge(a, b, 1.0, 0.0, 0.25);
    REQUIRE(q);
    CHECK(q->position.isApprox(Vec3(1.5, 0, 0)));
    auto at_node = interpolate_edge(a, b, 0.5, 1.0, 0.5);
    REQUIRE(at_node);
    CHECK(at_node->position.isApprox(a));
    CHECK_FALSE(interpolate_edge(a, b, 0.7, 0.9, 0.5));
    CHECK_FALSE(interpolate_edge(a, b, 0.1, 0.3, 0.5));
    CHECK_FALSE(interpolate_edge(a, b, 0.3, 0.3, 0.5));
}

TEST_CASE("all signatures match the cycle reference")
{
    auto t0 = std::chrono::steady_clock::now();
    int mismatches = 0;
    for (int code = 0; code < kSignatureCount; ++code) {
        StateMask s = strip_mask(mask_from_code(std::uint16_t(code)), 0);
        auto os = oracle::strip(oracle::decode(code));
        std::vector<oracle::Cycle> got;
        for (const auto& p : cell_topology(s).paths) got.emplace_back(p.points.begin(), p.points.end());
        if (oracle::canonical_multiset(got) != oracle::canonical_multiset(oracle::cycles(os))) {
            ++mismatches;
            MESSAGE("mismatch at code " << code);
        }
        for (const auto& p : cell_topology(s).paths) {
            CHECK(p.size() >= 3);
            CHECK(p.size() <= 12);
        }
        CHECK(cell_topology(s).paths.size() <= 4);
    }
    CHECK(mismatches == 0);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(secs < 10.0);
}

TEST_CASE("three disperse nodes on a face give a pentagon")
{
    StateMask m;
    m.disperse = 0b0000'0111;
    auto cls = classify_graph(m);
    CHECK(cls.l_count() == 0);
    CHECK(cls.regular);
    auto path = irreducible_path(m);
    CHECK(path.size() == 5);
    auto ex = inner_isopath(LabeledCuboidGraph::from_mask(m));
    REQUIRE(ex.paths.size() == 1);
    CHECK(ex.paths[0].size() == 5);
    CHECK(ex.elements[0].triangles.size() == 5);
}

TEST_CASE("seven disperse nodes give a triangle")
{
    StateMask m;
    m.disperse = 0xFE;
    auto ex = inner_isopath(LabeledCuboidGraph::from_mask(m));
    REQUIRE(ex.paths.size() == 1);
    CHECK(ex.paths[0].size() == 3);
    CHECK(ex.elements[0].triangles.size() == 1);
    // Every crossing is the midpoint of an edge leaving corner 0.
    for (const auto& pt : ex.points) CHECK(pt.position.norm() == doctest::Approx(0.5));
}

TEST_CASE("reducible input is rejected by the inner path")
{
    StateMask m;
    m.disperse = std::uint8_t((1u << 0) | (1u << 7));
    CHECK_THROWS_AS(irreducible_path(m), ContractError);
}

TEST_CASE("iso-points lie on their edges at the interpolated position")
{
    CuboidPartition part;
    auto f = fixtures::random_fractions(6, 99, part);
    auto labels = label_vertices(f, part);
    const double c = 0.47;
    auto surf = extract_grid(labels, part, c);
    REQUIRE(!surf.points.empty());
    for (const auto& p : surf.points) {
        std::int64_t v = keys::vertex_of(p.key);
        Vec3 x0 = part.vertex_position(part.vertex_index(v));
        if (keys::is_node(p.key)) {
            CHECK(p.position.isApprox(x0));
            CHECK(surf.labels[std::size_t(v)] == c);
            continue;
        }
        Index3 w = part.vertex_index(v);
        w[keys::axis_of(p.key)] += 1;
        Vec3 x1 = part.vertex_position(w);
        double f0 = surf.labels[std::size_t(v)];
        double f1 = surf.labels[std::size_t(part.vertex_id(w))];
        CHECK(((f0 > c) != (f1 > c)));
        double t = (c - f0) / (f1 - f0);
        CHECK((p.position - (x0 + t * (x1 - x0))).norm() < 1e-12);
    }
    for (const auto& path : surf.paths) {
        CHECK(path.size() >= 3);
        CHECK(path.faces.size() == path.size());
    }
}

TEST_CASE("extraction does not depend on the thread count")
{
    CuboidPartition part;
    auto f = fixtures::random_fractions(12, 5, part);
    auto labels = label_vertices(f, part);
    ExtractOptions one;
    ExtractOptions four;
    four.threads = 4;
    auto a = extract_grid(labels, part, 0.5, one);
    auto b = extract_grid(labels, part, 0.5, four);
    REQUIRE(a.points.size() == b.points.size());
    REQUIRE(a.paths.size() == b.paths.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].key == b.points[i].key);
        CHECK(a.points[i].position == b.points[i].position);
    }
    for (std::size_t i = 0; i < a.paths.size(); ++i) CHECK(a.paths[i].points == b.paths[i].points);
}

TEST_CASE("constant labeling has no paths")
{
    CuboidPartition part = fixtures::unit_grid(3);
    NodeLabeling labels;
    labels.vertex_dims = part.vertex_dims();
    labels.labels.assign(std::size_t(part.vertex_count()), 0.8);
    auto surf = extract_grid(labels, part, 0.5);
    CHECK(surf.paths.empty());
    CHECK(surf.points.empty());
}
