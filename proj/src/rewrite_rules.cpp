// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#include "isograph/rewrite_rules.hpp"

#include <algorithm>
#include <string>

namespace isograph {

const char* to_string(RuleKind k)
{
    static constexpr const char* names[] = {"T1", "T2", "F1", "F2", "S1", "S2", "S3", "C1", "C2", "C3"};
    return names[int(k)];
}

const char* to_string(PatternId p)
{
    static constexpr const char* names[] = {"T1sub", "T2sub", "F1graph", "F2graph", "S1sub", "S2sub",
                                            "S3sub", "g1",    "g2",      "g3",      "ghat1", "ghat2"};
    return names[int(p)];
}

namespace {

using cube::neighbor_mask;

constexpr std::uint8_t bit(int c) { return std::uint8_t(1u << c); }

bool subset(std::uint8_t a, std::uint8_t b) { return (a & ~b) == 0; }

std::uint8_t t1_nodes(StateMask m)
{
    std::uint8_t out = 0;
    for (int c = 0; c < 8; ++c)
        if ((m.iso & bit(c)) && subset(neighbor_mask(c), m.disperse)) out |= bit(c);
    return out;
}

struct PairMatch {
    int a;
    int b;
    std::uint8_t subgraph;
};

std::vector<PairMatch> t2_pairs(StateMask m)
{
    std::vector<PairMatch> out;
    for (const auto& e : cube::kEdgeTable) {
        if (!(m.iso & bit(e.a)) || !(m.iso & bit(e.b))) continue;
        std::uint8_t pair = bit(e.a) | bit(e.b);
        std::uint8_t ring = std::uint8_t((neighbor_mask(e.a) | neighbor_mask(e.b)) & ~pair);
        if (!subset(ring, m.disperse)) continue;
        std::uint8_t far = std::uint8_t(~(ring | pair) & m.disperse);
        if (!far) continue;
        int first_far = std::countr_zero(unsigned(far));
        out.push_back(PairMatch{e.a, e.b, std::uint8_t(pair | ring | bit(first_far))});
    }
    return out;
}

bool is_f1(StateMask m)
{
    if (std::popcount(m.iso) != 4 || std::uint8_t(m.iso | m.disperse) != 0xFF) return false;
    for (int c = 0; c < 8; ++c)
        if ((m.iso & bit(c)) && std::popcount(std::uint8_t(neighbor_mask(c) & m.iso)) != 1) return false;
    return true;
}

std::uint8_t s1_nodes(StateMask m)
{
    std::uint8_t out = 0;
    for (int c = 0; c < 8; ++c)
        if ((m.disperse & bit(c)) && subset(neighbor_mask(c), m.continuous())) out |= bit(c);
    return out;
}

std::vector<PairMatch> s2_pairs(StateMask m)
{
    std::vector<PairMatch> out;
    for (const auto& e : cube::kEdgeTable) {
        if (!(m.disperse & bit(e.a)) || !(m.disperse & bit(e.b))) continue;
        std::uint8_t pair = bit(e.a) | bit(e.b);
        std::uint8_t ring = std::uint8_t((neighbor_mask(e.a) | neighbor_mask(e.b)) & ~pair);
        if (!subset(ring, m.continuous())) continue;
        out.push_back(PairMatch{e.a, e.b, std::uint8_t(pair | ring)});
    }
    return out;
}

std::uint8_t s3_nodes(StateMask m)
{
    std::uint8_t out = 0;
    for (int c = 0; c < 8; ++c)
        if ((m.sub() & bit(c)) && subset(neighbor_mask(c), m.disperse)) out |= bit(c);
    return out;
}

bool far_all_disperse(const std::optional<std::array<double, 4>>& far, double c)
{
    if (!far) return false;
    return std::all_of(far->begin(), far->end(), [c](double f) { return f > c; });
}

std::uint8_t f2_matching_faces(const LabeledCuboidGraph& g, const FaceNeighbors& nb)
{
    std::uint8_t faces = 0;
    for (int f = 0; f < cube::kFaces; ++f)
        if (far_all_disperse(nb.far[f], g.iso_level)) faces |= bit(f);
    return faces;
}

void sort_patterns(std::vector<SubgraphPattern>& out)
{
    std::stable_sort(out.begin(), out.end(), [](const SubgraphPattern& a, const SubgraphPattern& b) {
        if (a.id != b.id) return a.id < b.id;
        return std::countr_zero(unsigned(a.nodes)) < std::countr_zero(unsigned(b.nodes));
    });
}

std::vector<SubgraphPattern> local_patterns(StateMask m)
{
    std::vector<SubgraphPattern> out;
    std::uint8_t t1 = t1_nodes(m);
    for (int c = 0; c < 8; ++c)
        if (t1 & bit(c)) out.push_back({PatternId::T1Sub, std::uint8_t(bit(c) | neighbor_mask(c))});
    for (const auto& p : t2_pairs(m)) out.push_back({PatternId::T2Sub, p.subgraph});
    if (is_f1(m)) out.push_back({PatternId::F1Graph, 0xFF});
    std::uint8_t s1 = s1_nodes(m);
    for (int c = 0; c < 8; ++c)
        if (s1 & bit(c)) out.push_back({PatternId::S1Sub, std::uint8_t(bit(c) | neighbor_mask(c))});
    for (const auto& p : s2_pairs(m)) out.push_back({PatternId::S2Sub, p.subgraph});
    std::uint8_t s3 = s3_nodes(m);
    for (int c = 0; c < 8; ++c)
        if (s3 & bit(c)) out.push_back({PatternId::S3Sub, std::uint8_t(bit(c) | neighbor_mask(c))});
    return out;
}

/// The node of an S1/S3/T1 subgraph whose state differs from its three neighbors.
int pattern_center(std::uint8_t nodes)
{
    for (int c = 0; c < 8; ++c)
        if ((nodes & bit(c)) && subset(neighbor_mask(c), nodes)) return c;
    return -1;
}

} // namespace

bool has_strip_pattern(StateMask m) { return t1_nodes(m) || !t2_pairs(m).empty() || is_f1(m); }

std::uint8_t f2_candidate_faces(StateMask m)
{
    std::uint8_t out = 0;
    for (int f = 0; f < cube::kFaces; ++f)
        if (m.iso == cube::face_mask(f) && m.disperse == std::uint8_t(~cube::face_mask(f))) out |= bit(f);
    return out;
}

std::vector<SubgraphPattern> find_patterns(const LabeledCuboidGraph& g, const FaceNeighbors& neighbors)
{
    StateMask m = state_mask(g);
    std::vector<SubgraphPattern> out = local_patterns(m);
    std::uint8_t f2 = std::uint8_t(f2_candidate_faces(m) & f2_matching_faces(g, neighbors));
    for (int f = 0; f < cube::kFaces; ++f)
        if (f2 & bit(f)) out.push_back({PatternId::F2Graph, 0xFF, f});
    sort_patterns(out);
    return out;
}

std::vector<SubgraphPattern> basic_subgraphs(const LabeledCuboidGraph& g)
{
    StateMask m = state_mask(g);
    std::vector<SubgraphPattern> out;
    for (const auto& p : local_patterns(m)) {
        switch (p.id) {
        case PatternId::S1Sub: out.push_back({PatternId::G1, p.nodes}); break;
        case PatternId::S2Sub: out.push_back({PatternId::G2, p.nodes}); break;
        case PatternId::S3Sub: out.push_back({PatternId::G3, p.nodes}); break;
        case PatternId::T1Sub: out.push_back({PatternId::GHat1, p.nodes}); break;
        case PatternId::T2Sub: out.push_back({PatternId::GHat2, p.nodes}); break;
        default: break;
        }
    }
    sort_patterns(out);
    return out;
}

RewriteRule rule_for(const SubgraphPattern& p)
{
    switch (p.id) {
    case PatternId::T1Sub:
    case PatternId::GHat1: return {RuleKind::T1, p.nodes, Relabel::Q1};
    case PatternId::T2Sub:
    case PatternId::GHat2: return {RuleKind::T2, p.nodes, Relabel::Q1};
    case PatternId::F1Graph: return {RuleKind::F1, p.nodes, Relabel::Q1};
    case PatternId::F2Graph: return {RuleKind::F2, p.nodes, Relabel::Q1};
    case PatternId::S1Sub:
    case PatternId::G1: return {RuleKind::S1, p.nodes, Relabel::Q0};
    case PatternId::S2Sub:
    case PatternId::G2: return {RuleKind::S2, p.nodes, Relabel::Q0};
    case PatternId::S3Sub:
    case PatternId::G3: return {RuleKind::S3, p.nodes, Relabel::Q1};
    }
    throw ContractError("unknown pattern id");
}

namespace {

LabeledCuboidGraph relabel(const LabeledCuboidGraph& g, std::uint8_t targets, Relabel q)
{
    LabeledCuboidGraph out = g;
    for (int c = 0; c < 8; ++c) {
        if (!(targets & bit(c))) continue;
        if (q == Relabel::Q0 && g.label[c] > g.iso_level) {
            out.label[c] = 0.0;
            out.rewritten |= bit(c);
        } else if (q == Relabel::Q1 && g.label[c] <= g.iso_level) {
            out.label[c] = 1.0;
            out.rewritten |= bit(c);
        }
    }
    return out;
}

bool rule_pattern_present(const LabeledCuboidGraph& g, const RewriteRule& rule)
{
    StateMask m = state_mask(g);
    PatternId want{};
    switch (rule.kind) {
    case RuleKind::T1: want = PatternId::T1Sub; break;
    case RuleKind::T2: want = PatternId::T2Sub; break;
    case RuleKind::F1: want = PatternId::F1Graph; break;
    case RuleKind::F2: return rule.targets == 0xFF && f2_candidate_faces(m) != 0;
    case RuleKind::S1: want = PatternId::S1Sub; break;
    case RuleKind::S2: want = PatternId::S2Sub; break;
    case RuleKind::S3: want = PatternId::S3Sub; break;
    default: return false;
    }
    for (const auto& p : local_patterns(m))
        if (p.id == want && p.nodes == rule.targets) return true;
    return false;
}

} // namespace

LabeledCuboidGraph apply_rule(const LabeledCuboidGraph& g, const RewriteRule& rule)
{
    if (rule.kind == RuleKind::C1 || rule.kind == RuleKind::C2 || rule.kind == RuleKind::C3) {
        int face = -1;
        for (int f = 0; f < cube::kFaces; ++f)
            if (cube::face_mask(f) == rule.targets) face = f;
        if (face < 0 || classify_face(g, face) != FaceClass::RegularFace)
            throw ContractError("C-rule target is not a regular face");
        int nd = std::popcount(std::uint8_t(state_mask(g).disperse & rule.targets));
        if (int(rule.kind) - int(RuleKind::C1) + 1 != nd)
            throw ContractError("C-rule kind does not match the face's disperse count");
        return g;
    }
    if (rule_pattern_present(g, rule)) return relabel(g, rule.targets, rule.relabel);
    LabeledCuboidGraph again = relabel(g, rule.targets, rule.relabel);
    if (again.label == g.label) return g;
    throw ContractError(std::string("pattern for rule ") + to_string(rule.kind) + " is not present");
}

StateMask strip_mask(StateMask m, std::uint8_t f2_faces)
{
    bool f_pattern = is_f1(m) || (f2_candidate_faces(m) & f2_faces);
    if (f_pattern) {
        m.disperse = std::uint8_t(m.disperse | m.iso);
        m.iso = 0;
        return m;
    }
    for (;;) {
        std::uint8_t t1 = t1_nodes(m);
        if (!t1) break;
        m.disperse |= t1;
        m.iso = std::uint8_t(m.iso & ~t1);
    }
    for (;;) {
        auto pairs = t2_pairs(m);
        if (pairs.empty()) break;
        std::uint8_t p = std::uint8_t(bit(pairs.front().a) | bit(pairs.front().b));
        m.disperse |= p;
        m.iso = std::uint8_t(m.iso & ~p);
    }
    return m;
}

LabeledCuboidGraph strip_singular_and_isolated(const LabeledCuboidGraph& g, const FaceNeighbors& neighbors)
{
    StateMask m = state_mask(g);
    StateMask s = strip_mask(m, f2_matching_faces(g, neighbors));
    LabeledCuboidGraph out = g;
    std::uint8_t changed = std::uint8_t(s.disperse & ~m.disperse);
    for (int c = 0; c < 8; ++c)
        if (changed & bit(c)) out.label[c] = 1.0;
    out.rewritten |= changed;
    return out;
}

SRuleChoice select_s_rule(const GraphClassification& cls)
{
    const int d = cls.disperse_count;
    const int l = cls.l_count();
    if (l == 0) {
        if (cls.diagonal && d == 2) return {RuleKind::S1, 1};
        if (cls.diagonal && d == 6) return {RuleKind::S3, 1};
    } else {
        switch (d) {
        case 2:
            if (l == 1) return {RuleKind::S1, 1};
            break;
        case 3:
            if (l == 1) return {RuleKind::S1, 1};
            if (l == 3) return {RuleKind::S1, 2};
            break;
        case 4:
            if (l == 2) return cls.l_faces_parallel() ? SRuleChoice{RuleKind::S2, 1} : SRuleChoice{RuleKind::S1, 1};
            if (l == 6) return {RuleKind::S1, 3};
            break;
        case 5:
            if (l == 1) return {RuleKind::S3, 1};
            if (l == 3) return {RuleKind::S1, 1};
            break;
        case 6:
            if (l == 1) return {RuleKind::S3, 1};
            break;
        default: break;
        }
    }
    throw ContractError("configuration outside the S-rule table (D=" + std::to_string(d) +
                        ", |L|=" + std::to_string(l) + ")");
}

namespace {

SubgraphPattern first_match(StateMask m, RuleKind kind)
{
    PatternId want = kind == RuleKind::S1 ? PatternId::S1Sub : kind == RuleKind::S2 ? PatternId::S2Sub : PatternId::S3Sub;
    for (const auto& p : local_patterns(m))
        if (p.id == want) return p;
    throw ContractError(std::string("no ") + to_string(kind) + "-subgraph to apply");
}

LabeledCuboidGraph embed_piece(const LabeledCuboidGraph& g, const SubgraphPattern& p, RuleKind kind)
{
    LabeledCuboidGraph piece = g;
    double fill = kind == RuleKind::S3 ? 1.0 : 0.0;
    for (int c = 0; c < 8; ++c)
        if (!(p.nodes & bit(c))) piece.label[c] = fill;
    return piece;
}

} // namespace

GraphDecomposition decompose(const LabeledCuboidGraph& g)
{
    GraphDecomposition out;
    out.cell = g.cell;
    LabeledCuboidGraph cur = g;
    const GraphClassification initial = classify_graph(g);
    for (int round = 0; round < 4; ++round) {
        GraphClassification cls = classify_graph(cur);
        if (!cls.reducible) break;
        SRuleChoice choice = select_s_rule(cls);
        for (int n = 0; n < choice.count; ++n) {
            StateMask m = state_mask(cur);
            SubgraphPattern p = first_match(m, choice.kind);
            out.pieces.push_back(SCuboidGraph{choice.kind, p.nodes, embed_piece(cur, p, choice.kind)});
            if (choice.kind == RuleKind::S3) {
                int s = pattern_center(p.nodes);
                for (const auto& lf : initial.l_faces)
                    if (cube::face_mask(lf.face) & bit(s)) out.joined_l_faces |= bit(lf.face);
            }
            cur = apply_rule(cur, rule_for(p));
        }
        if (out.pieces.size() > 3) throw ContractError("decomposition exceeded three S-cuboid graphs");
    }
    out.rest = cur;
    return out;
}

} // namespace isograph
