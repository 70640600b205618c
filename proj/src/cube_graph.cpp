// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#include "isograph/cube_graph.hpp"
#include "isograph/rewrite_rules.hpp"

namespace isograph {

const char* to_string(FaceClass f)
{
    switch (f) {
    case FaceClass::DisperseFace: return "disperse";
    case FaceClass::ContinuousFace: return "continuous";
    case FaceClass::RegularFace: return "regular";
    case FaceClass::SingularFace: return "singular";
    case FaceClass::TrivialLFace: return "trivial-L";
    case FaceClass::NonTrivialLFace: return "non-trivial-L";
    }
    return "?";
}

namespace cube {

std::vector<int> faces_containing(std::uint8_t p, std::uint8_t q)
{
    auto mask_of = [](std::uint8_t x) -> std::uint8_t {
        if (point_is_corner(x)) return std::uint8_t(1u << x);
        const auto& e = kEdgeTable[x - 8];
        return std::uint8_t((1u << e.a) | (1u << e.b));
    };
    std::uint8_t need = mask_of(p) | mask_of(q);
    std::vector<int> out;
    for (int f = 0; f < kFaces; ++f)
        if ((face_mask(f) & need) == need) out.push_back(f);
    return out;
}

} // namespace cube

LabeledCuboidGraph LabeledCuboidGraph::from_states(const std::array<NodeState, 8>& states)
{
    LabeledCuboidGraph g;
    g.iso_level = 0.5;
    for (int c = 0; c < 8; ++c) {
        g.position[c] = cube::unit_corner(c);
        switch (states[c]) {
        case NodeState::Sub: g.label[c] = 0.0; break;
        case NodeState::Iso: g.label[c] = 0.5; break;
        case NodeState::Disperse: g.label[c] = 1.0; break;
        }
    }
    return g;
}

LabeledCuboidGraph LabeledCuboidGraph::from_mask(StateMask m)
{
    std::array<NodeState, 8> s{};
    for (int c = 0; c < 8; ++c) s[c] = m.state(c);
    return from_states(s);
}

std::array<NodeState, 8> classify_nodes(const LabeledCuboidGraph& g)
{
    std::array<NodeState, 8> s{};
    for (int c = 0; c < 8; ++c) {
        double f = g.label[c];
        s[c] = f > g.iso_level ? NodeState::Disperse : (f == g.iso_level ? NodeState::Iso : NodeState::Sub);
    }
    return s;
}

StateMask state_mask(const LabeledCuboidGraph& g)
{
    StateMask m;
    for (int c = 0; c < 8; ++c) {
        if (g.label[c] > g.iso_level) m.disperse |= std::uint8_t(1u << c);
        else if (g.label[c] == g.iso_level) m.iso |= std::uint8_t(1u << c);
    }
    return m;
}

FaceClass classify_face(StateMask m, int face)
{
    const auto& fc = cube::kFaceTable[face];
    int nd = std::popcount(std::uint8_t(m.disperse & cube::face_mask(face)));
    if (nd == 4) return FaceClass::DisperseFace;
    if (nd == 0) return FaceClass::ContinuousFace;
    auto is_d = [&](int c) { return (m.disperse >> c) & 1; };
    auto is_i = [&](int c) { return (m.iso >> c) & 1; };
    if (nd == 3) {
        for (int c : fc)
            if (!is_d(c) && is_i(c)) return FaceClass::SingularFace;
        return FaceClass::RegularFace;
    }
    if (nd == 2) {
        for (int q = 0; q < 2; ++q) {
            if (is_d(fc[q]) && is_d(fc[q + 2])) {
                bool trivial = is_i(fc[q + 1]) && is_i(fc[(q + 3) % 4]);
                return trivial ? FaceClass::TrivialLFace : FaceClass::NonTrivialLFace;
            }
        }
    }
    return FaceClass::RegularFace;
}

FaceClass classify_face(const LabeledCuboidGraph& g, int face) { return classify_face(state_mask(g), face); }

bool GraphClassification::l_faces_parallel() const
{
    return l_faces.size() == 2 && cube::face_axis(l_faces[0].face) == cube::face_axis(l_faces[1].face);
}

GraphClassification classify_graph(StateMask m)
{
    GraphClassification cls;
    cls.disperse_count = m.disperse_count();
    cls.disperse_graph = cls.disperse_count == 8;
    cls.continuous_graph = cls.disperse_count == 0;
    for (int f = 0; f < cube::kFaces; ++f) {
        FaceClass fc = classify_face(m, f);
        if (fc == FaceClass::TrivialLFace || fc == FaceClass::NonTrivialLFace)
            cls.l_faces.push_back(LFace{f, fc == FaceClass::TrivialLFace});
        else if (fc == FaceClass::SingularFace)
            cls.singular_faces.push_back(f);
    }
    if (cls.l_faces.empty()) {
        if (cls.disperse_count == 2 || cls.disperse_count == 6) {
            std::uint8_t pair = cls.disperse_count == 2 ? m.disperse : m.continuous();
            int a = std::countr_zero(unsigned(pair));
            int b = 31 - std::countl_zero(unsigned(pair));
            cls.diagonal = (a ^ b) == 7;
        }
    }
    cls.reducible = !cls.disperse_graph && !cls.continuous_graph && (!cls.l_faces.empty() || cls.diagonal);
    cls.regular = !cls.disperse_graph && !cls.continuous_graph && !has_strip_pattern(m);
    return cls;
}

GraphClassification classify_graph(const LabeledCuboidGraph& g) { return classify_graph(state_mask(g)); }

std::uint16_t code_from_mask(StateMask m)
{
    std::uint16_t code = 0;
    std::uint16_t p = 1;
    for (int c = 0; c < 8; ++c) {
        code = std::uint16_t(code + p * std::uint16_t(m.state(c)));
        p = std::uint16_t(p * 3);
    }
    return code;
}

StateMask mask_from_code(std::uint16_t code)
{
    StateMask m;
    for (int c = 0; c < 8; ++c) {
        int s = code % 3;
        code = std::uint16_t(code / 3);
        if (s == 2) m.disperse |= std::uint8_t(1u << c);
        else if (s == 1) m.iso |= std::uint8_t(1u << c);
    }
    return m;
}

ConfigSignature signature(StateMask m)
{
    ConfigSignature s;
    s.code = code_from_mask(m);
    s.disperse_count = m.disperse_count();
    s.l_count = classify_graph(m).l_count();
    return s;
}

ConfigSignature signature(const LabeledCuboidGraph& g) { return signature(state_mask(g)); }

} // namespace isograph
