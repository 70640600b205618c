// Signature enumeration and the topological checks on small sample sizes.

#include "isograph/topo_verify.hpp"

#include <doctest.h>

#include <set>

using namespace isograph;

TEST_CASE("signature enumeration")
{
    auto all = enumerate_signatures();
    REQUIRE(all.size() == 6561);
    CHECK(all.front().mask.disperse == 0);
    CHECK(all.front().mask.iso == 0);
    CHECK(all.back().mask.disperse == 0xFF);
    std::set<std::uint16_t> codes;
    for (const auto& s : all) codes.insert(code_from_mask(s.mask));
    CHECK(codes.size() == 6561);
    // The embedded center cell realizes its code.
    auto e = embed_signature(187);
    const auto& part = e.partition;
    StateMask m;
    for (int c = 0; c < 8; ++c) {
        auto o = cube::corner_offset(c);
        double f = e.labels.at(part.vertex_id({1 + o[0], 1 + o[1], 1 + o[2]}));
        if (f > 0.5) m.disperse |= std::uint8_t(1u << c);
        else if (f == 0.5) m.iso |= std::uint8_t(1u << c);
    }
    CHECK(code_from_mask(m) == 187);
    for (std::int64_t v = 0; v < part.vertex_count(); ++v) {
        auto p = part.vertex_index(v);
        bool center = p[0] >= 1 && p[0] <= 2 && p[1] >= 1 && p[1] <= 2 && p[2] >= 1 && p[2] <= 2;
        if (!center) CHECK(e.labels.at(v) == 0.0);
    }
}

TEST_CASE("random rings and fields are reproducible")
{
    CHECK(random_ring(1, 5) == random_ring(1, 5));
    CHECK(random_ring(1, 5) != random_ring(1, 6));
    CuboidPartition a;
    CuboidPartition b;
    CHECK(random_field(3, 2, 6, a).labels == random_field(3, 2, 6, b).labels);
}

TEST_CASE("per-signature checks")
{
    for (auto check : {check_cell_path_bound, check_irreducible_single_path, check_trivial_l_face_pairs,
                       check_diagonal_pairs, check_singular_faces, check_l_face_table, check_signature_connectivity}) {
        auto r = check();
        INFO(r.id << ": " << r.detail << " " << r.counterexample);
        CHECK(r.passed());
        CHECK(r.cases > 0);
    }
}

TEST_CASE("sampled checks and the report")
{
    VerifyOptions opt;
    opt.ring_samples = 2000;
    opt.random_fields = 3;
    opt.field_size = 8;
    auto rep = check_all(opt);
    CHECK(rep.ok());
    CHECK(rep.checks.size() == 10);
    REQUIRE(rep.find("edge-parity") != nullptr);
    CHECK(rep.find("edge-parity")->cases >= 65536 + 6561 + 2000);
    CHECK(rep.find("no-such-check") == nullptr);
    CHECK(rep.to_text().find("PASS") != std::string::npos);
}
