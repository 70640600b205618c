// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#ifndef ISOGRAPH_CUBE_GRAPH_HPP
#define ISOGRAPH_CUBE_GRAPH_HPP

/// \file cube_graph.hpp
/// Per-cell labeled cuboid graph: node states, face taxonomy, signatures
/// and the structural predicates used by rule selection.
///
/// Corner numbering: corner c has offsets (di, dj, dk) = (c>>2 & 1, c>>1 & 1, c & 1),
/// i.e. corners are enumerated (i,j,k)-lexicographically. Local iso-point ids 0..7
/// denote corners, 8..19 denote the twelve edges.

#include "isograph/common.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

namespace isograph {

enum class NodeState : std::uint8_t { Sub = 0, Iso = 1, Disperse = 2 };

enum class FaceClass : std::uint8_t {
    DisperseFace,
    ContinuousFace,
    RegularFace,
    SingularFace,
    TrivialLFace,
    NonTrivialLFace,
};

const char* to_string(FaceClass f);

namespace cube {

inline constexpr int kCorners = 8;
inline constexpr int kEdges = 12;
inline constexpr int kFaces = 6;

/// Bit that flips corner index along axis a (0 = i, 1 = j, 2 = k).
constexpr int axis_bit(int axis) { return 4 >> axis; }

constexpr std::array<int, 3> corner_offset(int c) { return {(c >> 2) & 1, (c >> 1) & 1, c & 1}; }

struct Edge {
    int a;
    int b;
    int axis;
};

constexpr std::array<Edge, kEdges> make_edges()
{
    std::array<Edge, kEdges> edges{};
    int n = 0;
    for (int axis = 0; axis < 3; ++axis)
        for (int c = 0; c < kCorners; ++c)
            if (!(c & axis_bit(axis))) edges[n++] = Edge{c, c | axis_bit(axis), axis};
    return edges;
}

inline constexpr std::array<Edge, kEdges> kEdgeTable = make_edges();

/// Face f = 2*axis + side; corners listed in cyclic order around the face.
constexpr std::array<std::array<int, 4>, kFaces> make_faces()
{
    std::array<std::array<int, 4>, kFaces> faces{};
    for (int axis = 0; axis < 3; ++axis) {
        int u = axis == 0 ? 1 : 0;
        int v = axis == 2 ? 1 : 2;
        for (int side = 0; side < 2; ++side) {
            int base = side ? axis_bit(axis) : 0;
            faces[2 * axis + side] = {base, base | axis_bit(u), base | axis_bit(u) | axis_bit(v),
                                      base | axis_bit(v)};
        }
    }
    return faces;
}

inline constexpr std::array<std::array<int, 4>, kFaces> kFaceTable = make_faces();

constexpr int face_axis(int f) { return f / 2; }
constexpr int face_side(int f) { return f % 2; }

constexpr std::uint8_t face_mask(int f)
{
    std::uint8_t m = 0;
    for (int c : kFaceTable[f]) m |= std::uint8_t(1u << c);
    return m;
}

constexpr std::uint8_t neighbor_mask(int c)
{
    return std::uint8_t((1u << (c ^ 4)) | (1u << (c ^ 2)) | (1u << (c ^ 1)));
}

/// Local edge index joining two adjacent corners, or -1.
constexpr int edge_between(int a, int b)
{
    for (int e = 0; e < kEdges; ++e)
        if ((kEdgeTable[e].a == a && kEdgeTable[e].b == b) || (kEdgeTable[e].a == b && kEdgeTable[e].b == a))
            return e;
    return -1;
}

/// Local iso-point ids.
constexpr std::uint8_t corner_point(int c) { return std::uint8_t(c); }
constexpr std::uint8_t edge_point(int e) { return std::uint8_t(8 + e); }
constexpr bool point_is_corner(std::uint8_t p) { return p < 8; }

/// Faces of the cell that contain both local points (at most two).
std::vector<int> faces_containing(std::uint8_t p, std::uint8_t q);

/// Position of a corner inside the unit cube.
inline Vec3 unit_corner(int c)
{
    auto o = corner_offset(c);
    return Vec3(o[0], o[1], o[2]);
}

} // namespace cube

/// Compact per-cell node states: a bit per corner for disperse and iso nodes.
struct StateMask {
    std::uint8_t disperse = 0;
    std::uint8_t iso = 0;

    std::uint8_t continuous() const { return std::uint8_t(~disperse); }
    std::uint8_t sub() const { return std::uint8_t(~(disperse | iso)); }
    int disperse_count() const { return std::popcount(disperse); }
    NodeState state(int c) const
    {
        if (disperse >> c & 1) return NodeState::Disperse;
        if (iso >> c & 1) return NodeState::Iso;
        return NodeState::Sub;
    }
    bool operator==(const StateMask&) const = default;
};

/// Labeled cuboid graph of one grid cell.
struct LabeledCuboidGraph {
    std::array<Vec3, 8> position{};
    std::array<double, 8> label{};
    double iso_level = 0.5;
    Index3 cell{0, 0, 0};
    /// Corners whose labels were saturated by a rewrite rule.
    std::uint8_t rewritten = 0;

    /// Unit cube graph at iso-level 0.5 realising the given states with labels 0, 0.5, 1.
    static LabeledCuboidGraph from_states(const std::array<NodeState, 8>& states);
    static LabeledCuboidGraph from_mask(StateMask m);
};

/// Snaps a label to exactly c when it lies within tau of c.
inline double snap_label(double f, double c, double tau) { return (f - c <= tau && c - f <= tau) ? c : f; }

std::array<NodeState, 8> classify_nodes(const LabeledCuboidGraph& g);
StateMask state_mask(const LabeledCuboidGraph& g);

FaceClass classify_face(StateMask m, int face);
FaceClass classify_face(const LabeledCuboidGraph& g, int face);

struct LFace {
    int face = 0;
    bool trivial = false;
};

struct GraphClassification {
    int disperse_count = 0;
    std::vector<LFace> l_faces;
    std::vector<int> singular_faces;
    bool disperse_graph = false;
    bool continuous_graph = false;
    /// Neither disperse nor continuous and free of T- and F-patterns.
    bool regular = false;
    bool reducible = false;
    /// Reducible without L-faces: two disperse (D=2) or two continuous (D=6) nodes on a space diagonal.
    bool diagonal = false;

    int l_count() const { return int(l_faces.size()); }
    bool l_faces_parallel() const;
};

GraphClassification classify_graph(StateMask m);
GraphClassification classify_graph(const LabeledCuboidGraph& g);

/// Base-3 state code: code = sum state(c) * 3^c with Sub=0, Iso=1, Disperse=2.
struct ConfigSignature {
    std::uint16_t code = 0;
    int disperse_count = 0;
    int l_count = 0;
};

inline constexpr int kSignatureCount = 6561;

ConfigSignature signature(const LabeledCuboidGraph& g);
ConfigSignature signature(StateMask m);
StateMask mask_from_code(std::uint16_t code);
std::uint16_t code_from_mask(StateMask m);

} // namespace isograph

#endif
