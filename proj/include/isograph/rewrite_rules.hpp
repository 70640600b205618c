// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#ifndef ISOGRAPH_REWRITE_RULES_HPP
#define ISOGRAPH_REWRITE_RULES_HPP

/// \file rewrite_rules.hpp
/// T-, F-, S- and C-rules as label rewrites on a private copy of a cell,
/// pattern detection, rule selection and decomposition into irreducible pieces.

#include "isograph/cube_graph.hpp"

#include <array>
#include <optional>
#include <vector>

namespace isograph {

enum class RuleKind : std::uint8_t { T1, T2, F1, F2, S1, S2, S3, C1, C2, C3 };

const char* to_string(RuleKind k);

/// q0 sends labels above c to 0, q1 sends labels at or below c to 1.
enum class Relabel : std::uint8_t { Q0, Q1 };

struct RewriteRule {
    RuleKind kind = RuleKind::T1;
    /// Node set W of the matched subgraph (C-rules: the face's corners).
    std::uint8_t targets = 0;
    Relabel relabel = Relabel::Q1;
};

enum class PatternId : std::uint8_t {
    T1Sub,
    T2Sub,
    F1Graph,
    F2Graph,
    S1Sub,
    S2Sub,
    S3Sub,
    G1,
    G2,
    G3,
    GHat1,
    GHat2,
};

const char* to_string(PatternId p);

struct SubgraphPattern {
    PatternId id = PatternId::T1Sub;
    std::uint8_t nodes = 0;
    /// Face shared with the neighbor cell for F2 matches, otherwise -1.
    int neighbor_face = -1;
};

/// Labels of the face-adjacent cell's four nodes opposite each face.
/// An empty entry means the face lies on the domain boundary.
struct FaceNeighbors {
    std::array<std::optional<std::array<double, 4>>, 6> far;
};

/// True if the cell (without neighbor information) contains a T1, T2 or F1 pattern.
bool has_strip_pattern(StateMask m);

/// Faces that are entirely iso-nodes while the cell's other four nodes are disperse.
std::uint8_t f2_candidate_faces(StateMask m);

std::vector<SubgraphPattern> find_patterns(const LabeledCuboidGraph& g, const FaceNeighbors& neighbors);

/// The basic positive (g1, g2, g3) and basic zero (g^1, g^2) subgraphs present in g.
std::vector<SubgraphPattern> basic_subgraphs(const LabeledCuboidGraph& g);

RewriteRule rule_for(const SubgraphPattern& p);

/// Rewrites the labels of rule.targets. Throws ContractError when the pattern is absent
/// and the targets are not already saturated by an earlier application of the same rule.
LabeledCuboidGraph apply_rule(const LabeledCuboidGraph& g, const RewriteRule& rule);

/// Mask-level strip. f2_faces marks faces whose neighbor's far nodes are all disperse.
StateMask strip_mask(StateMask m, std::uint8_t f2_faces);

LabeledCuboidGraph strip_singular_and_isolated(const LabeledCuboidGraph& g, const FaceNeighbors& neighbors);

struct SRuleChoice {
    RuleKind kind = RuleKind::S1;
    int count = 0;
};

/// Rule selection for removing L-faces and for the L-free diagonal cases.
SRuleChoice select_s_rule(const GraphClassification& cls);

/// An S-cuboid graph: the matched S-subgraph embedded in an otherwise continuous
/// (S1, S2) or disperse (S3) cell.
struct SCuboidGraph {
    RuleKind kind = RuleKind::S1;
    std::uint8_t nodes = 0;
    LabeledCuboidGraph graph;
};

struct GraphDecomposition {
    std::vector<SCuboidGraph> pieces;
    LabeledCuboidGraph rest;
    Index3 cell{0, 0, 0};
    /// L-faces of the input whose resolution joins the disperse nodes across the face.
    std::uint8_t joined_l_faces = 0;
};

GraphDecomposition decompose(const LabeledCuboidGraph& g);

} // namespace isograph

#endif
