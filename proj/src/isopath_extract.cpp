// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#include "isograph/isopath_extract.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace isograph {

const char* to_string(PathOrigin o)
{
    static constexpr const char* names[] = {"S1", "S2", "S3", "rest", "outer"};
    return names[int(o)];
}

std::optional<IsoPoint> interpolate_edge(const Vec3& x0, const Vec3& x1, double f0, double f1, double c)
{
    IsoPoint p;
    p.f0 = f0;
    p.f1 = f1;
    if (f0 == c && c < f1) {
        p.position = x0;
        p.iso_node = true;
        return p;
    }
    if (f1 == c && c < f0) {
        p.position = x1;
        p.iso_node = true;
        return p;
    }
    if ((f0 < c && c < f1) || (f1 < c && c < f0)) {
        p.position = x0 + (x1 - x0) * ((c - f0) / (f1 - f0));
        return p;
    }
    return std::nullopt;
}

namespace {

constexpr std::uint8_t bit(int c) { return std::uint8_t(1u << c); }

bool is_crossing(StateMask m, int e)
{
    const auto& ed = cube::kEdgeTable[e];
    return ((m.disperse >> ed.a) & 1) != ((m.disperse >> ed.b) & 1);
}

int continuous_end(StateMask m, int e)
{
    const auto& ed = cube::kEdgeTable[e];
    return (m.disperse >> ed.a) & 1 ? ed.b : ed.a;
}

std::uint8_t crossing_point(StateMask m, int e)
{
    int c = continuous_end(m, e);
    return (m.iso >> c) & 1 ? cube::corner_point(c) : cube::edge_point(e);
}

Vec3 unit_point(std::uint8_t p)
{
    if (cube::point_is_corner(p)) return cube::unit_corner(p);
    const auto& e = cube::kEdgeTable[p - 8];
    return 0.5 * (cube::unit_corner(e.a) + cube::unit_corner(e.b));
}

Vec3 face_disperse_centroid(std::uint8_t disperse, int face)
{
    Vec3 sum = Vec3::Zero();
    int n = 0;
    for (int c : cube::kFaceTable[face])
        if ((disperse >> c) & 1) {
            sum += cube::unit_corner(c);
            ++n;
        }
    return sum / double(n);
}

/// An iso-line between two crossing edges on a face; degenerate when both share a point.
struct Link {
    std::uint8_t e0;
    std::uint8_t e1;
    std::uint8_t face;
    std::uint8_t disperse;
};

/// C-rule iso-lines of every regular face plus the zero-length links of singular faces.
std::vector<Link> face_links(StateMask m)
{
    std::vector<Link> links;
    for (int f = 0; f < cube::kFaces; ++f) {
        FaceClass fc = classify_face(m, f);
        if (fc != FaceClass::RegularFace && fc != FaceClass::SingularFace) continue;
        const auto& corners = cube::kFaceTable[f];
        std::uint8_t found[4];
        int n = 0;
        for (int i = 0; i < 4; ++i) {
            int e = cube::edge_between(corners[i], corners[(i + 1) % 4]);
            if (is_crossing(m, e)) found[n++] = std::uint8_t(e);
        }
        if (n != 2) throw ContractError("face " + std::to_string(f) + " has " + std::to_string(n) + " crossing edges");
        links.push_back(Link{found[0], found[1], std::uint8_t(f), std::uint8_t(m.disperse & cube::face_mask(f))});
    }
    return links;
}

struct Step {
    int link;
    bool forward;
};

std::vector<std::vector<Step>> link_cycles(const std::vector<Link>& links)
{
    std::array<std::array<int, 2>, cube::kEdges> adj{};
    std::array<int, cube::kEdges> deg{};
    for (auto& a : adj) a = {-1, -1};
    for (int i = 0; i < int(links.size()); ++i) {
        for (std::uint8_t e : {links[i].e0, links[i].e1}) {
            if (deg[e] == 2) throw ContractError("crossing edge " + std::to_string(e) + " carries more than two iso-lines");
            adj[e][std::size_t(deg[e]++)] = i;
        }
    }
    for (int e = 0; e < cube::kEdges; ++e)
        if (deg[e] == 1) throw ContractError("crossing edge " + std::to_string(e) + " ends an open iso-line chain");
    std::vector<std::vector<Step>> cycles;
    std::vector<bool> used(links.size(), false);
    for (int start = 0; start < int(links.size()); ++start) {
        if (used[std::size_t(start)]) continue;
        std::vector<Step> cyc;
        int cur = start;
        std::uint8_t at = links[std::size_t(start)].e0;
        while (!used[std::size_t(cur)]) {
            used[std::size_t(cur)] = true;
            const Link& l = links[std::size_t(cur)];
            bool fwd = l.e0 == at;
            cyc.push_back({cur, fwd});
            at = fwd ? l.e1 : l.e0;
            cur = adj[at][0] == cur ? adj[at][1] : adj[at][0];
        }
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

/// Orients a cycle with disperse corners on the right of each iso-line seen from outside the cell,
/// drops zero-length links and returns the path.
LocalPath make_path(StateMask m, const std::vector<Link>& links, std::vector<Step> cyc, std::uint8_t disperse_clip)
{
    auto from_edge = [&](const Step& s) { return s.forward ? links[std::size_t(s.link)].e0 : links[std::size_t(s.link)].e1; };
    auto to_edge = [&](const Step& s) { return s.forward ? links[std::size_t(s.link)].e1 : links[std::size_t(s.link)].e0; };
    int pos = 0;
    int neg = 0;
    for (const Step& s : cyc) {
        std::uint8_t p = crossing_point(m, from_edge(s));
        std::uint8_t q = crossing_point(m, to_edge(s));
        if (p == q) continue;
        const Link& l = links[std::size_t(s.link)];
        Vec3 a = unit_point(p);
        Vec3 b = unit_point(q);
        Vec3 d = face_disperse_centroid(l.disperse, l.face);
        double side = (b - a).cross(d - a).dot(face_normal(l.face));
        (side < 0 ? neg : pos)++;
    }
    if (pos && neg) throw ContractError("iso-path orientation is inconsistent across its iso-lines");
    if (pos) {
        std::reverse(cyc.begin(), cyc.end());
        for (Step& s : cyc) s.forward = !s.forward;
    }
    LocalPath out;
    for (const Step& s : cyc) {
        std::uint8_t e0 = from_edge(s);
        std::uint8_t p = crossing_point(m, e0);
        if (p == crossing_point(m, to_edge(s))) continue;
        const Link& l = links[std::size_t(s.link)];
        out.edges.push_back(e0);
        out.points.push_back(p);
        out.faces.push_back(l.face);
        out.disperse.push_back(std::uint8_t(l.disperse & disperse_clip));
    }
    if (out.points.size() < 3) throw ContractError("iso-path has fewer than three distinct points");
    auto sorted = out.points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ContractError("iso-path visits a point twice");
    out.piece_disperse = m.disperse;
    return out;
}

std::vector<LocalPath> mask_paths(StateMask m, std::uint8_t disperse_clip)
{
    auto links = face_links(m);
    std::vector<LocalPath> out;
    for (auto& cyc : link_cycles(links)) out.push_back(make_path(m, links, std::move(cyc), disperse_clip));
    return out;
}

} // namespace

Vec3 face_normal(int face)
{
    Vec3 n = Vec3::Zero();
    n[cube::face_axis(face)] = cube::face_side(face) ? 1.0 : -1.0;
    return n;
}

LocalPath irreducible_path(StateMask m)
{
    GraphClassification cls = classify_graph(m);
    if (cls.disperse_graph || cls.continuous_graph) throw ContractError("graph has no inner iso-path");
    if (cls.reducible) throw ContractError("graph is reducible");
    auto paths = mask_paths(m, m.disperse);
    if (paths.size() != 1)
        throw ContractError("irreducible graph produced " + std::to_string(paths.size()) + " iso-paths");
    return paths.front();
}

CellTopology build_cell_topology(StateMask s)
{
    if (has_strip_pattern(s)) throw ContractError("cell still contains T- or F-patterns");
    CellTopology t;
    t.stripped = s;
    t.valid = true;
    int d = s.disperse_count();
    if (d == 0 || d == 8) return t;
    GraphClassification cls = classify_graph(s);
    for (const auto& lf : cls.l_faces) {
        t.l_faces |= bit(lf.face);
        if (!lf.trivial) t.nontrivial_l_faces |= bit(lf.face);
    }
    GraphDecomposition dec = decompose(LabeledCuboidGraph::from_mask(s));
    t.joined_faces = dec.joined_l_faces;
    for (const auto& piece : dec.pieces) {
        StateMask pm = state_mask(piece.graph);
        LocalPath p = irreducible_path(pm);
        for (auto& dm : p.disperse) dm &= s.disperse;
        p.origin = piece.kind == RuleKind::S1 ? PathOrigin::S1 : piece.kind == RuleKind::S2 ? PathOrigin::S2 : PathOrigin::S3;
        t.paths.push_back(std::move(p));
    }
    StateMask rm = state_mask(dec.rest);
    int rd = rm.disperse_count();
    if (rd > 0 && rd < 8 && !face_links(rm).empty()) {
        LocalPath p = irreducible_path(rm);
        for (auto& dm : p.disperse) dm &= s.disperse;
        p.origin = PathOrigin::Rest;
        t.paths.push_back(std::move(p));
    }
    return t;
}

const CellTopology& cell_topology(StateMask stripped)
{
    static const std::vector<CellTopology> table = [] {
        std::vector<CellTopology> tab(kSignatureCount);
        for (int code = 0; code < kSignatureCount; ++code) {
            StateMask m = mask_from_code(std::uint16_t(code));
            if (has_strip_pattern(m)) continue;
            tab[std::size_t(code)] = build_cell_topology(m);
        }
        return tab;
    }();
    const CellTopology& t = table[code_from_mask(stripped)];
    if (!t.valid) throw ContractError("cell topology requested for an unstripped signature");
    return t;
}

Vec3 local_point_position(const LabeledCuboidGraph& g, StateMask stripped, std::uint8_t crossing_edge)
{
    int c = continuous_end(stripped, crossing_edge);
    if ((stripped.iso >> c) & 1) return g.position[c];
    const auto& e = cube::kEdgeTable[crossing_edge];
    double f0 = g.label[e.a];
    double f1 = g.label[e.b];
    return g.position[e.a] + (g.position[e.b] - g.position[e.a]) * ((g.iso_level - f0) / (f1 - f0));
}

std::vector<std::array<Vec3, 3>> fan_triangles(const std::vector<Vec3>& polygon, const Vec3& center)
{
    std::vector<std::array<Vec3, 3>> tris;
    if (polygon.size() == 3) {
        tris.push_back({polygon[0], polygon[1], polygon[2]});
        return tris;
    }
    for (std::size_t i = 0; i < polygon.size(); ++i)
        tris.push_back({polygon[i], polygon[(i + 1) % polygon.size()], center});
    return tris;
}

namespace {

Vec3 mean(const std::vector<Vec3>& pts)
{
    Vec3 s = Vec3::Zero();
    for (const auto& p : pts) s += p;
    return s / double(pts.size());
}

/// Appends a local path to a per-cell extraction, welding points by local point id.
void append_local(CellExtraction& out, std::array<int, 20>& index, const LabeledCuboidGraph& g, StateMask s,
                  const LocalPath& lp, PathKind kind)
{
    IsoPath path;
    path.kind = kind;
    path.origin = lp.origin;
    path.cell = g.cell;
    path.piece_disperse = lp.piece_disperse;
    std::vector<Vec3> pos;
    for (std::size_t i = 0; i < lp.size(); ++i) {
        std::uint8_t p = lp.points[i];
        if (index[p] < 0) {
            IsoPoint ip;
            ip.key = p;
            ip.position = local_point_position(g, s, lp.edges[i]);
            ip.iso_node = cube::point_is_corner(p);
            const auto& e = cube::kEdgeTable[lp.edges[i]];
            ip.f0 = g.label[e.a];
            ip.f1 = g.label[e.b];
            index[p] = int(out.points.size());
            out.points.push_back(ip);
        }
        path.points.push_back(std::uint32_t(index[p]));
        path.faces.push_back(lp.faces[i]);
        path.disperse.push_back(lp.disperse[i]);
        pos.push_back(out.points[std::size_t(index[p])].position);
    }
    path.center = mean(pos);
    IsoElement el;
    el.path = std::uint32_t(out.paths.size());
    el.triangles = fan_triangles(pos, path.center);
    out.elements.push_back(std::move(el));
    out.paths.push_back(std::move(path));
}

LabeledCuboidGraph snapped(const LabeledCuboidGraph& g)
{
    LabeledCuboidGraph out = g;
    for (auto& f : out.label) f = snap_label(f, g.iso_level, kDefaultIsoTolerance);
    return out;
}

} // namespace

CellExtraction inner_isopath(const LabeledCuboidGraph& g)
{
    LabeledCuboidGraph sg = snapped(g);
    StateMask m = state_mask(sg);
    if (has_strip_pattern(m)) throw ContractError("graph contains T- or F-patterns");
    LocalPath lp = irreducible_path(m);
    CellExtraction out;
    std::array<int, 20> index;
    index.fill(-1);
    append_local(out, index, sg, m, lp, PathKind::Inner);
    return out;
}

CellExtraction extract_cell(const LabeledCuboidGraph& g, const FaceNeighbors& neighbors)
{
    LabeledCuboidGraph sg = snapped(g);
    StateMask m = state_mask(sg);
    std::uint8_t f2 = 0;
    for (int f = 0; f < cube::kFaces; ++f) {
        const auto& far = neighbors.far[std::size_t(f)];
        if (far && std::all_of(far->begin(), far->end(), [&](double x) { return x > g.iso_level; })) f2 |= bit(f);
    }
    StateMask s = strip_mask(m, f2);
    const CellTopology& t = cell_topology(s);
    CellExtraction out;
    std::array<int, 20> index;
    index.fill(-1);
    for (const auto& lp : t.paths) append_local(out, index, sg, s, lp, PathKind::Inner);
    return out;
}

namespace {

/// A directed iso-line of an inner path lying on a shared face, in the owner's frame.
struct FaceLine {
    std::uint64_t from;
    std::uint64_t to;
    std::uint8_t disperse;
};

/// Odd-multiplicity face lines of both sides, assembled into cycles traversed against their contributors.
std::vector<std::vector<FaceLine>> face_cycles(const std::vector<FaceLine>& lines)
{
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<const FaceLine*>> count;
    for (const auto& l : lines) count[{std::min(l.from, l.to), std::max(l.from, l.to)}].push_back(&l);
    std::vector<FaceLine> odd;
    for (auto& [key, v] : count)
        if (v.size() % 2 == 1) odd.push_back(FaceLine{v.front()->to, v.front()->from, v.front()->disperse});
    std::vector<std::vector<FaceLine>> cycles;
    if (odd.empty()) return cycles;
    std::map<std::uint64_t, std::vector<std::size_t>> out_of;
    std::map<std::uint64_t, int> in_deg;
    for (std::size_t i = 0; i < odd.size(); ++i) {
        out_of[odd[i].from].push_back(i);
        in_deg[odd[i].to]++;
    }
    for (auto& [k, v] : out_of)
        if (v.size() != 1 || in_deg[k] != 1) throw ContractError("face-resident iso-lines do not form simple cycles");
    for (auto& [k, d] : in_deg)
        if (!out_of.count(k)) throw ContractError("face-resident iso-lines do not close");
    std::vector<bool> used(odd.size(), false);
    for (std::size_t s = 0; s < odd.size(); ++s) {
        if (used[s]) continue;
        std::vector<FaceLine> cyc;
        std::size_t cur = s;
        while (!used[cur]) {
            used[cur] = true;
            cyc.push_back(odd[cur]);
            cur = out_of[odd[cur].to].front();
        }
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

} // namespace

std::optional<CellExtraction> outer_isopath(int face, const LabeledCuboidGraph& g1, const LabeledCuboidGraph& g2)
{
    const int axis = cube::face_axis(face);
    const int flip = cube::axis_bit(axis);
    LabeledCuboidGraph s1 = snapped(g1);
    LabeledCuboidGraph s2 = snapped(g2);
    StateMask m1 = state_mask(s1);
    StateMask m2 = state_mask(s2);
    const CellTopology& t1 = cell_topology(m1);
    const CellTopology& t2 = cell_topology(m2);
    if (!((t1.nontrivial_l_faces >> face) & 1) && !((t2.nontrivial_l_faces >> (face ^ 1)) & 1)) return std::nullopt;

    // Keys in g1's frame: local point id, g2's face points mapped across the face.
    auto map_point = [&](std::uint8_t p) -> std::uint8_t {
        if (cube::point_is_corner(p)) return std::uint8_t(p ^ flip);
        const auto& e = cube::kEdgeTable[p - 8];
        return cube::edge_point(cube::edge_between(e.a ^ flip, e.b ^ flip));
    };
    auto is_lattice_edge = [](std::uint8_t a, std::uint8_t b) {
        return cube::point_is_corner(a) && cube::point_is_corner(b) && std::popcount(unsigned(a ^ b)) == 1;
    };
    std::vector<FaceLine> lines;
    std::map<std::uint8_t, Vec3> position;
    auto collect = [&](const CellTopology& t, const LabeledCuboidGraph& g, int f, bool mirrored) {
        for (const auto& lp : t.paths)
            for (std::size_t i = 0; i < lp.size(); ++i) {
                if (lp.faces[i] != f) continue;
                std::size_t j = (i + 1) % lp.size();
                std::uint8_t a = lp.points[i];
                std::uint8_t b = lp.points[j];
                if (is_lattice_edge(a, b)) continue;
                std::uint8_t dm = lp.disperse[i];
                Vec3 pa = local_point_position(g, t.stripped, lp.edges[i]);
                Vec3 pb = local_point_position(g, t.stripped, lp.edges[j]);
                if (mirrored) {
                    a = map_point(a);
                    b = map_point(b);
                    std::uint8_t md = 0;
                    for (int c = 0; c < 8; ++c)
                        if ((dm >> c) & 1) md |= bit(c ^ flip);
                    dm = md;
                }
                lines.push_back(FaceLine{a, b, dm});
                position.emplace(a, pa);
                position.emplace(b, pb);
            }
    };
    collect(t1, s1, face, false);
    collect(t2, s2, face ^ 1, true);
    auto cycles = face_cycles(lines);
    if (cycles.empty()) return std::nullopt;
    CellExtraction out;
    std::array<int, 20> index;
    index.fill(-1);
    for (const auto& cyc : cycles) {
        IsoPath path;
        path.kind = PathKind::Outer;
        path.origin = PathOrigin::Outer;
        path.cell = g1.cell;
        std::vector<Vec3> pos;
        for (const auto& l : cyc) {
            std::uint8_t p = std::uint8_t(l.from);
            if (index[p] < 0) {
                IsoPoint ip;
                ip.key = p;
                ip.position = position.at(p);
                ip.iso_node = cube::point_is_corner(p);
                index[p] = int(out.points.size());
                out.points.push_back(ip);
            }
            path.points.push_back(std::uint32_t(index[p]));
            path.faces.push_back(std::uint64_t(face));
            path.disperse.push_back(l.disperse);
            pos.push_back(position.at(p));
        }
        path.center = mean(pos);
        IsoElement el;
        el.path = std::uint32_t(out.paths.size());
        el.triangles = fan_triangles(pos, path.center);
        out.elements.push_back(std::move(el));
        out.paths.push_back(std::move(path));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Grid extraction

Index3 corner_vertex(const Index3& cell, int corner)
{
    auto o = cube::corner_offset(corner);
    return {cell[0] + o[0], cell[1] + o[1], cell[2] + o[2]};
}

std::uint64_t local_face_key(const CuboidPartition& part, const Index3& cell, int face)
{
    return keys::face(part.vertex_id(corner_vertex(cell, cube::kFaceTable[face][0])), cube::face_axis(face));
}

std::vector<double> snapped_labels(const NodeLabeling& labels, double c, double tau)
{
    std::vector<double> out(labels.labels.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = snap_label(labels.labels[i], c, tau);
    return out;
}

namespace {

StateMask raw_mask(const std::vector<double>& f, const CuboidPartition& part, const Index3& cell, double c)
{
    StateMask m;
    for (int k = 0; k < 8; ++k) {
        double x = f[std::size_t(part.vertex_id(corner_vertex(cell, k)))];
        if (x > c) m.disperse |= bit(k);
        else if (x == c) m.iso |= bit(k);
    }
    return m;
}

std::uint8_t f2_faces(const std::vector<double>& f, const CuboidPartition& part, const Index3& cell, StateMask m,
                      double c)
{
    std::uint8_t cand = f2_candidate_faces(m);
    std::uint8_t out = 0;
    for (int face = 0; face < cube::kFaces; ++face) {
        if (!((cand >> face) & 1)) continue;
        const int axis = cube::face_axis(face);
        const int step = cube::face_side(face) ? 1 : -1;
        Index3 nb = cell;
        nb[std::size_t(axis)] += step;
        if (!part.contains_cell(nb)) continue;
        bool all = true;
        for (int corner : cube::kFaceTable[face]) {
            Index3 v = corner_vertex(cell, corner);
            v[std::size_t(axis)] += step;
            if (!(f[std::size_t(part.vertex_id(v))] > c)) all = false;
        }
        if (all) out |= bit(face);
    }
    return out;
}

struct RawPath {
    std::vector<std::uint64_t> keys;
    std::vector<std::uint64_t> faces;
    std::vector<std::uint8_t> disperse;
    PathKind kind = PathKind::Inner;
    PathOrigin origin = PathOrigin::Rest;
    Index3 cell{0, 0, 0};
    std::uint8_t piece_disperse = 0;
};

std::uint64_t point_key(const CuboidPartition& part, const Index3& cell, std::uint8_t p)
{
    if (cube::point_is_corner(p)) return keys::node(part.vertex_id(corner_vertex(cell, p)));
    const auto& e = cube::kEdgeTable[p - 8];
    return keys::edge(part.vertex_id(corner_vertex(cell, e.a)), e.axis);
}

RawPath raw_inner(const CuboidPartition& part, const Index3& cell, const LocalPath& lp)
{
    RawPath r;
    r.kind = PathKind::Inner;
    r.origin = lp.origin;
    r.cell = cell;
    r.piece_disperse = lp.piece_disperse;
    for (std::size_t i = 0; i < lp.size(); ++i) {
        r.keys.push_back(point_key(part, cell, lp.points[i]));
        r.faces.push_back(local_face_key(part, cell, lp.faces[i]));
        r.disperse.push_back(lp.disperse[i]);
    }
    return r;
}

bool keys_on_lattice_edge(const CuboidPartition& part, std::uint64_t a, std::uint64_t b)
{
    if (!keys::is_node(a) || !keys::is_node(b)) return false;
    Index3 va = part.vertex_index(keys::vertex_of(a));
    Index3 vb = part.vertex_index(keys::vertex_of(b));
    int diff = 0;
    for (int i = 0; i < 3; ++i) diff += int(std::abs(va[i] - vb[i]));
    return diff == 1;
}

} // namespace

std::vector<StateMask> strip_cells(const std::vector<double>& snapped, const CuboidPartition& part, double c,
                                   int threads)
{
    std::vector<StateMask> out(std::size_t(part.cell_count()));
    detail::parallel_chunks(part.cell_count(), threads, [&](int, std::int64_t b, std::int64_t e) {
        for (std::int64_t id = b; id < e; ++id) {
            Index3 cell = part.cell_index(id);
            StateMask m = raw_mask(snapped, part, cell, c);
            out[std::size_t(id)] = strip_mask(m, f2_faces(snapped, part, cell, m, c));
        }
    });
    return out;
}

std::optional<std::uint32_t> IsoSurface::find_point(std::uint64_t key) const
{
    auto it = std::lower_bound(points.begin(), points.end(), key,
                               [](const IsoPoint& p, std::uint64_t k) { return p.key < k; });
    if (it == points.end() || it->key != key) return std::nullopt;
    return std::uint32_t(it - points.begin());
}

std::vector<Vec3> IsoSurface::path_positions(std::size_t path) const
{
    std::vector<Vec3> pos;
    for (auto p : paths[path].points) pos.push_back(points[p].position);
    return pos;
}

IsoElement IsoSurface::element(std::size_t path) const
{
    IsoElement el;
    el.path = std::uint32_t(path);
    el.triangles = fan_triangles(path_positions(path), paths[path].center);
    return el;
}

LineKind IsoSurface::line_kind(std::uint32_t a, std::uint32_t b) const
{
    std::uint64_t ka = points[a].key;
    std::uint64_t kb = points[b].key;
    if (keys::is_node(ka) && keys::is_node(kb))
        return keys_on_lattice_edge(partition, ka, kb) ? LineKind::LatticeEdge : LineKind::FaceDiagonal;
    return LineKind::FaceChord;
}

std::size_t IsoSurface::triangle_count() const
{
    std::size_t n = 0;
    for (const auto& p : paths) n += p.size() == 3 ? 1 : p.size();
    return n;
}

IsoSurface extract_grid(const NodeLabeling& labels, const CuboidPartition& part, double c,
                        const ExtractOptions& options)
{
    part.validate();
    if (labels.vertex_dims != part.vertex_dims() || std::int64_t(labels.labels.size()) != part.vertex_count())
        throw InputError("labeling does not match the partition");
    if (!(c > 0.0 && c < 1.0)) throw ContractError("iso-level must lie in (0,1)");

    IsoSurface surf;
    surf.partition = part;
    surf.iso_level = c;
    const std::vector<double> f = snapped_labels(labels, c, options.iso_tolerance);
    surf.stripped = strip_cells(f, part, c, options.threads);
    surf.labels = f;
    const std::int64_t ncell = part.cell_count();
    const int nchunk = detail::chunk_count(ncell, options.threads);

    // Inner paths, chunk by chunk in cell order.
    std::vector<std::vector<RawPath>> inner(static_cast<std::size_t>(nchunk));
    std::vector<std::uint32_t> inner_count(std::size_t(ncell), 0);
    detail::parallel_chunks(ncell, options.threads, [&](int chunk, std::int64_t b, std::int64_t e) {
        auto& out = inner[std::size_t(chunk)];
        for (std::int64_t id = b; id < e; ++id) {
            const CellTopology& t = cell_topology(surf.stripped[std::size_t(id)]);
            if (t.paths.empty()) continue;
            Index3 cell = part.cell_index(id);
            for (const auto& lp : t.paths) out.push_back(raw_inner(part, cell, lp));
            inner_count[std::size_t(id)] = std::uint32_t(t.paths.size());
        }
    });
    std::vector<RawPath> inner_all;
    for (auto& v : inner)
        for (auto& r : v) inner_all.push_back(std::move(r));
    inner.clear();
    std::vector<std::size_t> first(std::size_t(ncell) + 1, 0);
    for (std::int64_t id = 0; id < ncell; ++id) first[std::size_t(id) + 1] = first[std::size_t(id)] + inner_count[std::size_t(id)];

    // Outer paths on faces shared with the upper neighbor.
    std::vector<std::vector<std::pair<std::int64_t, RawPath>>> outer(static_cast<std::size_t>(nchunk));
    detail::parallel_chunks(ncell, options.threads, [&](int chunk, std::int64_t b, std::int64_t e) {
        auto& out = outer[std::size_t(chunk)];
        for (std::int64_t id = b; id < e; ++id) {
            const CellTopology& t = cell_topology(surf.stripped[std::size_t(id)]);
            Index3 cell = part.cell_index(id);
            for (int axis = 0; axis < 3; ++axis) {
                Index3 nb = cell;
                nb[std::size_t(axis)] += 1;
                if (!part.contains_cell(nb)) continue;
                std::int64_t nid = part.cell_id(nb);
                const CellTopology& tn = cell_topology(surf.stripped[std::size_t(nid)]);
                const int face = 2 * axis + 1;
                if (!((t.nontrivial_l_faces >> face) & 1) && !((tn.nontrivial_l_faces >> (face ^ 1)) & 1)) continue;
                const std::uint64_t fkey = local_face_key(part, cell, face);
                const int flip = cube::axis_bit(axis);
                std::vector<FaceLine> lines;
                auto collect = [&](std::int64_t owner, bool mirrored) {
                    for (std::size_t pi = first[std::size_t(owner)]; pi < first[std::size_t(owner) + 1]; ++pi) {
                        const RawPath& r = inner_all[pi];
                        for (std::size_t i = 0; i < r.keys.size(); ++i) {
                            if (r.faces[i] != fkey) continue;
                            std::uint64_t a = r.keys[i];
                            std::uint64_t bb = r.keys[(i + 1) % r.keys.size()];
                            if (keys_on_lattice_edge(part, a, bb)) continue;
                            std::uint8_t dm = r.disperse[i];
                            if (mirrored) {
                                std::uint8_t md = 0;
                                for (int k = 0; k < 8; ++k)
                                    if ((dm >> k) & 1) md |= bit(k ^ flip);
                                dm = md;
                            }
                            lines.push_back(FaceLine{a, bb, dm});
                        }
                    }
                };
                collect(id, false);
                collect(nid, true);
                for (auto& cyc : face_cycles(lines)) {
                    RawPath r;
                    r.kind = PathKind::Outer;
                    r.origin = PathOrigin::Outer;
                    r.cell = cell;
                    for (const auto& l : cyc) {
                        r.keys.push_back(l.from);
                        r.faces.push_back(fkey);
                        r.disperse.push_back(l.disperse);
                    }
                    out.emplace_back(id, std::move(r));
                }
            }
        }
    });

    // Merge in cell-major order.
    std::vector<RawPath> all;
    all.reserve(inner_all.size());
    {
        std::vector<std::pair<std::int64_t, RawPath>> outer_all;
        for (auto& v : outer)
            for (auto& r : v) outer_all.push_back(std::move(r));
        std::size_t oi = 0;
        for (std::int64_t id = 0; id < ncell; ++id) {
            for (std::size_t pi = first[std::size_t(id)]; pi < first[std::size_t(id) + 1]; ++pi)
                all.push_back(std::move(inner_all[pi]));
            while (oi < outer_all.size() && outer_all[oi].first == id) all.push_back(std::move(outer_all[oi++].second));
        }
    }

    std::vector<std::uint64_t> point_keys;
    for (const auto& r : all) point_keys.insert(point_keys.end(), r.keys.begin(), r.keys.end());
    std::sort(point_keys.begin(), point_keys.end());
    point_keys.erase(std::unique(point_keys.begin(), point_keys.end()), point_keys.end());
    surf.points.resize(point_keys.size());
    for (std::size_t i = 0; i < point_keys.size(); ++i) {
        IsoPoint& p = surf.points[i];
        p.key = point_keys[i];
        const std::int64_t v = keys::vertex_of(p.key);
        const Index3 vi = part.vertex_index(v);
        const Vec3 x0 = part.vertex_position(vi);
        if (keys::is_node(p.key)) {
            p.position = x0;
            p.iso_node = true;
            p.f0 = p.f1 = f[std::size_t(v)];
            continue;
        }
        Index3 ui = vi;
        ui[std::size_t(keys::axis_of(p.key))] += 1;
        const Vec3 x1 = part.vertex_position(ui);
        p.f0 = f[std::size_t(v)];
        p.f1 = f[std::size_t(part.vertex_id(ui))];
        p.position = x0 + (x1 - x0) * ((c - p.f0) / (p.f1 - p.f0));
    }
    surf.paths.reserve(all.size());
    for (auto& r : all) {
        IsoPath path;
        path.kind = r.kind;
        path.origin = r.origin;
        path.cell = r.cell;
        path.piece_disperse = r.piece_disperse;
        path.faces = std::move(r.faces);
        path.disperse = std::move(r.disperse);
        Vec3 sum = Vec3::Zero();
        for (auto k : r.keys) {
            auto idx = std::uint32_t(std::lower_bound(point_keys.begin(), point_keys.end(), k) - point_keys.begin());
            path.points.push_back(idx);
            sum += surf.points[idx].position;
        }
        path.center = sum / double(path.points.size());
        surf.paths.push_back(std::move(path));
    }
    return surf;
}

} // namespace isograph
