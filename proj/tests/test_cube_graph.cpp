// State codes, face classes and the S-rule table.

#include "isograph/rewrite_rules.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace isograph;

namespace {

StateMask from_oracle(const oracle::States& s)
{
    StateMask m;
    for (int c = 0; c < 8; ++c) {
        if (s[c] == oracle::Dis) m.disperse |= std::uint8_t(1u << c);
        else if (s[c] == oracle::Iso) m.iso |= std::uint8_t(1u << c);
    }
    return m;
}

// L-faces recounted from corner coordinates: two disperse nodes on one diagonal of the face,
// two continuous nodes on the other.
struct OracleL {
    int count = 0;
    int trivial = 0;
    std::vector<int> axes;
};

OracleL oracle_l_faces(const oracle::States& s)
{
    OracleL out;
    int axis = 0;
    for (const auto& f : oracle::faces()) {
        int nd = 0;
        for (int c : f) nd += s[c] == oracle::Dis;
        bool d02 = s[f[0]] == oracle::Dis && s[f[2]] == oracle::Dis;
        bool d13 = s[f[1]] == oracle::Dis && s[f[3]] == oracle::Dis;
        if (nd == 2 && (d02 || d13)) {
            ++out.count;
            int a = d02 ? 1 : 0;
            if (s[f[a]] == oracle::Iso && s[f[a + 2]] == oracle::Iso) ++out.trivial;
            out.axes.push_back(axis / 2);
        }
        ++axis;
    }
    return out;
}

} // namespace

TEST_CASE("state codes round trip over all signatures")
{
    for (int code = 0; code < kSignatureCount; ++code) {
        StateMask m = mask_from_code(std::uint16_t(code));
        CHECK(from_oracle(oracle::decode(code)) == m);
        REQUIRE(code_from_mask(m) == code);
        CHECK((m.disperse & m.iso) == 0);
    }
    CHECK(mask_from_code(0).disperse == 0);
    CHECK(mask_from_code(6560).disperse == 0xFF);
}

TEST_CASE("corner and face tables")
{
    for (int c = 0; c < 8; ++c) {
        auto o = cube::corner_offset(c);
        CHECK(4 * o[0] + 2 * o[1] + o[2] == c);
        CHECK(std::popcount(cube::neighbor_mask(c)) == 3);
    }
    for (int f = 0; f < cube::kFaces; ++f) {
        CHECK(std::popcount(cube::face_mask(f)) == 4);
        for (int c : cube::kFaceTable[f]) CHECK(cube::corner_offset(c)[cube::face_axis(f)] == cube::face_side(f));
        // Consecutive face corners share a cube edge.
        for (int i = 0; i < 4; ++i)
            CHECK(cube::edge_between(cube::kFaceTable[f][i], cube::kFaceTable[f][(i + 1) % 4]) >= 0);
    }
    for (int e = 0; e < cube::kEdges; ++e) {
        const auto& ed = cube::kEdgeTable[e];
        CHECK((ed.a ^ ed.b) == cube::axis_bit(ed.axis));
        CHECK(oracle::edge_id(ed.a, ed.b) == 8 + e);
    }
}

TEST_CASE("face classes agree with a coordinate recount")
{
    for (int code = 0; code < kSignatureCount; ++code) {
        auto s = oracle::decode(code);
        StateMask m = mask_from_code(std::uint16_t(code));
        auto cls = classify_graph(m);
        auto o = oracle_l_faces(s);
        REQUIRE(cls.l_count() == o.count);
        int trivial = 0;
        for (const auto& lf : cls.l_faces) trivial += lf.trivial;
        CHECK(trivial == o.trivial);
        CHECK(cls.disperse_count == int(std::count(s.begin(), s.end(), oracle::Dis)));
    }
    StateMask m;
    m.disperse = cube::face_mask(0);
    CHECK(classify_face(m, 0) == FaceClass::DisperseFace);
    CHECK(classify_face(m, 1) == FaceClass::ContinuousFace);
    // Three disperse nodes and one iso node on a face.
    m.disperse = 0b0000'0111;
    m.iso = 0b0000'0001 << 3;
    int f = 0;
    for (int k = 0; k < cube::kFaces; ++k)
        if ((cube::face_mask(k) & 0x0F) == cube::face_mask(k)) f = k;
    CHECK(classify_face(m, f) == FaceClass::SingularFace);
    m.iso = 0;
    CHECK(classify_face(m, f) == FaceClass::RegularFace);
}

TEST_CASE("S-rule table")
{
    // (D, |L|) -> rule and count, with D=4 |L|=2 split by parallel L-faces.
    std::map<std::pair<int, int>, std::pair<RuleKind, int>> table = {
        {{2, 1}, {RuleKind::S1, 1}}, {{3, 1}, {RuleKind::S1, 1}}, {{3, 3}, {RuleKind::S1, 2}},
        {{4, 6}, {RuleKind::S1, 3}}, {{5, 1}, {RuleKind::S3, 1}}, {{5, 3}, {RuleKind::S1, 1}},
        {{6, 1}, {RuleKind::S3, 1}},
    };
    std::set<std::pair<int, int>> seen;
    int checked = 0;
    for (int code = 0; code < kSignatureCount; ++code) {
        auto s = oracle::strip(oracle::decode(code));
        StateMask m = from_oracle(s);
        auto cls = classify_graph(m);
        if (!cls.regular || !cls.reducible || cls.l_count() == 0) continue;
        auto o = oracle_l_faces(s);
        int d = cls.disperse_count;
        seen.insert({d, o.count});
        auto choice = select_s_rule(cls);
        ++checked;
        if (d == 4 && o.count == 2) {
            bool parallel = o.axes[0] == o.axes[1];
            CHECK(choice.kind == (parallel ? RuleKind::S2 : RuleKind::S1));
            CHECK(choice.count == 1);
            continue;
        }
        auto it = table.find({d, o.count});
        REQUIRE_MESSAGE(it != table.end(), "code " << code);
        CHECK(choice.kind == it->second.first);
        CHECK(choice.count == it->second.second);
    }
    CHECK(checked > 0);
    // Every row of the table occurs among the stripped signatures.
    for (const auto& [key, rule] : table) CHECK(seen.count(key) == 1);
    CHECK(seen.count({4, 2}) == 1);

    GraphClassification bad;
    bad.disperse_count = 4;
    bad.l_faces = {LFace{0, false}};
    CHECK_THROWS_AS(select_s_rule(bad), ContractError);
}

TEST_CASE("four isolated disperse corners decompose into three S1 pieces")
{
    StateMask m;
    m.disperse = std::uint8_t((1u << 0) | (1u << 3) | (1u << 5) | (1u << 6));
    auto cls = classify_graph(m);
    CHECK(cls.l_count() == 6);
    auto dec = decompose(LabeledCuboidGraph::from_mask(m));
    CHECK(dec.pieces.size() == 3);
    for (const auto& p : dec.pieces) {
        CHECK(p.kind == RuleKind::S1);
        CHECK(p.graph.label.size() == 8);
    }
    auto rest = classify_graph(state_mask(dec.rest));
    CHECK(rest.disperse_count == 1);
    CHECK_FALSE(rest.reducible);
}

TEST_CASE("diagonal pairs without L-faces")
{
    StateMask two;
    two.disperse = std::uint8_t((1u << 0) | (1u << 7));
    CHECK(classify_graph(two).diagonal);
    CHECK(select_s_rule(classify_graph(two)).kind == RuleKind::S1);
    StateMask six;
    six.disperse = std::uint8_t(~two.disperse);
    CHECK(classify_graph(six).diagonal);
    CHECK(select_s_rule(classify_graph(six)).kind == RuleKind::S3);
}

TEST_CASE("decomposition terminates on every regular signature")
{
    int regular = 0;
    for (int code = 0; code < kSignatureCount; ++code) {
        StateMask m = strip_mask(mask_from_code(std::uint16_t(code)), 0);
        auto cls = classify_graph(m);
        if (!cls.regular) continue;
        ++regular;
        GraphDecomposition dec;
        REQUIRE_NOTHROW(dec = decompose(LabeledCuboidGraph::from_mask(m)));
        CHECK(dec.pieces.size() <= 3);
        auto rest = classify_graph(state_mask(dec.rest));
        CHECK_FALSE(rest.reducible);
    }
    CHECK(regular > 1000);
}

TEST_CASE("stripping matches the reference")
{
    for (int code = 0; code < kSignatureCount; ++code) {
        StateMask got = strip_mask(mask_from_code(std::uint16_t(code)), 0);
        CHECK(got == from_oracle(oracle::strip(oracle::decode(code))));
        CHECK_FALSE(has_strip_pattern(got));
    }
}
