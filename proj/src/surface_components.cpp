// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#include "isograph/surface_components.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace isograph {

GraphNeighborhood build_neighborhood(const Index3& cell, const CuboidPartition& part)
{
    if (!part.contains_cell(cell)) throw ContractError("cell outside the partition");
    GraphNeighborhood nb;
    nb.center = cell;
    int expected = 0;
    for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj)
            for (int dk = -1; dk <= 1; ++dk) {
                int nonzero = (di != 0) + (dj != 0) + (dk != 0);
                if (nonzero == 3) continue;
                ++expected;
                Index3 c{cell[0] + di, cell[1] + dj, cell[2] + dk};
                if (part.contains_cell(c)) nb.cells.push_back(c);
            }
    nb.truncated = int(nb.cells.size()) < expected;
    return nb;
}

namespace {

/// Coordinates of an iso-point along each axis in vertex units, or -1 where it lies strictly inside an edge.
std::array<std::int64_t, 3> point_coords(const CuboidPartition& part, std::uint64_t key)
{
    Index3 v = part.vertex_index(keys::vertex_of(key));
    std::array<std::int64_t, 3> out{v[0], v[1], v[2]};
    if (!keys::is_node(key)) out[std::size_t(keys::axis_of(key))] = -1;
    return out;
}

bool line_on_boundary(const IsoSurface& surf, std::uint32_t a, std::uint32_t b)
{
    const auto& part = surf.partition;
    auto pa = point_coords(part, surf.points[a].key);
    auto pb = point_coords(part, surf.points[b].key);
    for (int ax = 0; ax < 3; ++ax)
        for (std::int64_t plane : {std::int64_t(0), part.dims[std::size_t(ax)]})
            if (pa[std::size_t(ax)] == plane && pb[std::size_t(ax)] == plane) return true;
    return false;
}

std::vector<std::int64_t> disperse_vertices(const CuboidPartition& part, const Index3& cell, std::uint8_t mask)
{
    std::vector<std::int64_t> out;
    for (int c = 0; c < 8; ++c)
        if ((mask >> c) & 1) out.push_back(part.vertex_id(corner_vertex(cell, c)));
    return out;
}

bool share_vertex(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b)
{
    for (auto x : a)
        if (std::find(b.begin(), b.end(), x) != b.end()) return true;
    return false;
}

} // namespace

bool point_on_boundary(const IsoSurface& surf, std::uint32_t point)
{
    const auto& part = surf.partition;
    auto p = point_coords(part, surf.points[point].key);
    for (int ax = 0; ax < 3; ++ax)
        if (p[std::size_t(ax)] == 0 || p[std::size_t(ax)] == part.dims[std::size_t(ax)]) return true;
    return false;
}

std::vector<EdgeIncidenceRecord> build_line_incidence(const IsoSurface& surf)
{
    struct Entry {
        std::uint32_t a;
        std::uint32_t b;
        Incidence inc;
    };
    std::vector<Entry> entries;
    for (std::uint32_t pi = 0; pi < surf.paths.size(); ++pi) {
        const IsoPath& p = surf.paths[pi];
        for (std::uint32_t j = 0; j < p.size(); ++j) {
            std::uint32_t a = p.points[j];
            std::uint32_t b = p.points[(j + 1) % p.size()];
            Incidence inc;
            inc.path = pi;
            inc.edge = j;
            inc.face = p.faces[j];
            inc.disperse = disperse_vertices(surf.partition, p.cell, p.disperse[j]);
            entries.push_back(Entry{std::min(a, b), std::max(a, b), std::move(inc)});
        }
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    std::vector<EdgeIncidenceRecord> out;
    for (std::size_t i = 0; i < entries.size();) {
        EdgeIncidenceRecord rec;
        rec.a = entries[i].a;
        rec.b = entries[i].b;
        rec.kind = surf.line_kind(rec.a, rec.b);
        rec.boundary = line_on_boundary(surf, rec.a, rec.b);
        std::size_t j = i;
        for (; j < entries.size() && entries[j].a == rec.a && entries[j].b == rec.b; ++j)
            rec.incident.push_back(std::move(entries[j].inc));
        out.push_back(std::move(rec));
        i = j;
    }
    return out;
}

DispersePath find_disperse_path(const IsoSurface& surf, const std::vector<std::int64_t>& from,
                                const std::vector<std::int64_t>& to, const std::vector<Index3>& cells)
{
    const auto& part = surf.partition;
    DispersePath out;
    if (from.empty() || to.empty()) return out;
    for (auto v : from)
        if (std::find(to.begin(), to.end(), v) != to.end()) {
            out.vertices.push_back(v);
            return out;
        }
    // Disperse edges are taken from the stripped state of every cell of the system.
    std::unordered_map<std::int64_t, std::vector<std::int64_t>> adj;
    std::set<std::int64_t> seen_cells;
    for (const auto& c : cells) {
        if (!part.contains_cell(c) || !seen_cells.insert(part.cell_id(c)).second) continue;
        const std::uint8_t d = surf.stripped[std::size_t(part.cell_id(c))].disperse;
        for (const auto& e : cube::kEdgeTable) {
            if (!((d >> e.a) & 1) || !((d >> e.b) & 1)) continue;
            std::int64_t va = part.vertex_id(corner_vertex(c, e.a));
            std::int64_t vb = part.vertex_id(corner_vertex(c, e.b));
            adj[va].push_back(vb);
            adj[vb].push_back(va);
        }
    }
    for (auto& [v, nb] : adj) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    std::unordered_map<std::int64_t, std::int64_t> parent;
    std::deque<std::int64_t> queue;
    std::vector<std::int64_t> sorted_from(from);
    std::sort(sorted_from.begin(), sorted_from.end());
    for (auto v : sorted_from)
        if (parent.emplace(v, -1).second) queue.push_back(v);
    while (!queue.empty()) {
        std::int64_t v = queue.front();
        queue.pop_front();
        if (std::find(to.begin(), to.end(), v) != to.end()) {
            for (std::int64_t x = v; x >= 0; x = parent[x]) out.vertices.push_back(x);
            std::reverse(out.vertices.begin(), out.vertices.end());
            return out;
        }
        auto it = adj.find(v);
        if (it == adj.end()) continue;
        for (auto w : it->second)
            if (parent.emplace(w, v).second) queue.push_back(w);
    }
    return out;
}

namespace {

/// The four faces and four cells around a lattice edge in cyclic order. Cell q lies between
/// faces q and q+1. Missing faces have key 0, missing cells are flagged.
struct EdgeRing {
    std::array<std::uint64_t, 4> faces{};
    std::array<Index3, 4> cells{};
    std::array<bool, 4> present{};
};

EdgeRing edge_ring(const IsoSurface& surf, std::uint32_t a, std::uint32_t b)
{
    const auto& part = surf.partition;
    Index3 p = part.vertex_index(keys::vertex_of(surf.points[a].key));
    Index3 q = part.vertex_index(keys::vertex_of(surf.points[b].key));
    if (q < p) std::swap(p, q);
    int axis = 0;
    for (int ax = 0; ax < 3; ++ax)
        if (p[std::size_t(ax)] != q[std::size_t(ax)]) axis = ax;
    const std::size_t u = std::size_t((axis + 1) % 3);
    const std::size_t v = std::size_t((axis + 2) % 3);
    EdgeRing ring;
    const std::array<std::pair<std::size_t, int>, 4> rays = {{{u, 1}, {v, 1}, {u, -1}, {v, -1}}};
    for (std::size_t r = 0; r < 4; ++r) {
        auto [dir, sign] = rays[r];
        const int normal = int(dir == u ? v : u);
        Index3 lower = p;
        if (sign < 0) lower[dir] -= 1;
        Index3 far = p;
        far[dir] += sign;
        if (part.contains_vertex(lower) && part.contains_vertex(far))
            ring.faces[r] = keys::face(part.vertex_id(lower), normal);
    }
    const std::array<std::pair<int, int>, 4> offsets = {{{0, 0}, {-1, 0}, {-1, -1}, {0, -1}}};
    for (std::size_t c = 0; c < 4; ++c) {
        Index3 cell = p;
        cell[u] += offsets[c].first;
        cell[v] += offsets[c].second;
        ring.cells[c] = cell;
        ring.present[c] = part.contains_cell(cell);
    }
    return ring;
}

/// Partner of an incident path around a lattice edge: step through the face carrying its
/// iso-line into the next ring cell, skipping cells without a path on the edge, and take the
/// path entering through the same face.
std::int64_t ring_partner(const IsoSurface& surf, const EdgeIncidenceRecord& rec, const EdgeRing& ring,
                          std::uint32_t i)
{
    auto cell_slot = [&](const Index3& c) {
        for (std::size_t q = 0; q < 4; ++q)
            if (ring.present[q] && ring.cells[q] == c) return int(q);
        return -1;
    };
    auto face_slot = [&](std::uint64_t f) {
        for (std::size_t r = 0; r < 4; ++r)
            if (ring.faces[r] != 0 && ring.faces[r] == f) return int(r);
        return -1;
    };
    int q = cell_slot(surf.paths[rec.incident[i].path].cell);
    int r = face_slot(rec.incident[i].face);
    if (q < 0 || r < 0) return -1;
    for (int step = 0; step < 4; ++step) {
        // Face r borders cells r-1 and r.
        int next = r == q ? (q + 3) % 4 : (q + 1) % 4;
        if (!ring.present[std::size_t(next)]) return -1;
        std::int64_t found = -1;
        bool any = false;
        for (std::uint32_t j = 0; j < rec.count(); ++j) {
            if (j == i) continue;
            if (cell_slot(surf.paths[rec.incident[j].path].cell) != next) continue;
            any = true;
            if (face_slot(rec.incident[j].face) == r) {
                if (found >= 0) return -1;
                found = j;
            }
        }
        if (found >= 0) return found;
        if (any) return -1;
        q = next;
        r = r == q ? (q + 1) % 4 : q;
    }
    return -1;
}

} // namespace

bool disperse_connected(const IsoSurface& surf, const EdgeIncidenceRecord& rec, std::uint32_t i, std::uint32_t j)
{
    if (i == j) return false;
    if (rec.count() == 2) return true;
    if (rec.kind == LineKind::LatticeEdge) {
        EdgeRing ring = edge_ring(surf, rec.a, rec.b);
        return ring_partner(surf, rec, ring, i) == std::int64_t(j) && ring_partner(surf, rec, ring, j) == std::int64_t(i);
    }
    const Incidence& x = rec.incident[i];
    const Incidence& y = rec.incident[j];
    if (share_vertex(x.disperse, y.disperse)) return true;
    std::vector<Index3> cells;
    for (const Incidence* inc : {&x, &y}) {
        auto nb = build_neighborhood(surf.paths[inc->path].cell, surf.partition);
        cells.insert(cells.end(), nb.cells.begin(), nb.cells.end());
    }
    return !find_disperse_path(surf, x.disperse, y.disperse, cells).vertices.empty();
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> pair_at_edge(const EdgeIncidenceRecord& rec,
                                                                 const IsoSurface& surf)
{
    const std::uint32_t n = std::uint32_t(rec.count());
    if (n % 2) throw ContractError(fmt::format("odd incidence {} at iso-line ({}, {})", n, rec.a, rec.b));
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    if (n == 0) return out;
    if (n == 2) return {{0, 1}};
    std::vector<bool> used(n, false);
    auto take = [&](std::uint32_t i, std::uint32_t j) {
        used[i] = used[j] = true;
        out.push_back({std::min(i, j), std::max(i, j)});
    };
    if (rec.kind == LineKind::LatticeEdge) {
        EdgeRing ring = edge_ring(surf, rec.a, rec.b);
        for (std::uint32_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            std::int64_t j = ring_partner(surf, rec, ring, i);
            if (j >= 0 && !used[std::size_t(j)] && ring_partner(surf, rec, ring, std::uint32_t(j)) == std::int64_t(i))
                take(i, std::uint32_t(j));
        }
    } else {
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = i + 1; j < n && !used[i]; ++j)
                if (!used[j] && share_vertex(rec.incident[i].disperse, rec.incident[j].disperse)) take(i, j);
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = i + 1; j < n && !used[i]; ++j)
                if (!used[j] && disperse_connected(surf, rec, i, j)) take(i, j);
    }
    // Whatever remains is paired in order; the audit reports such pairs as not disperse connected.
    std::vector<std::uint32_t> rest;
    for (std::uint32_t i = 0; i < n; ++i)
        if (!used[i]) rest.push_back(i);
    for (std::size_t k = 0; k + 1 < rest.size(); k += 2) out.push_back({rest[k], rest[k + 1]});
    std::sort(out.begin(), out.end());
    return out;
}

int count_connected_matchings(const IsoSurface& surf, const EdgeIncidenceRecord& rec)
{
    const std::uint32_t n = std::uint32_t(rec.count());
    if (n % 2) return 0;
    std::vector<std::vector<bool>> conn(n, std::vector<bool>(n, false));
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) conn[i][j] = conn[j][i] = disperse_connected(surf, rec, i, j);
    std::vector<bool> used(n, false);
    std::function<int()> count = [&]() -> int {
        std::uint32_t i = 0;
        while (i < n && used[i]) ++i;
        if (i == n) return 1;
        used[i] = true;
        int total = 0;
        for (std::uint32_t j = i + 1; j < n; ++j) {
            if (used[j] || !conn[i][j]) continue;
            used[j] = true;
            total += count();
            used[j] = false;
        }
        used[i] = false;
        return total;
    };
    return count();
}

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent[b] = a;
    }
};

} // namespace

ComponentDecomposition decompose_components(const IsoSurface& surf)
{
    ComponentDecomposition out;
    out.lines = build_line_incidence(surf);
    UnionFind uf(surf.paths.size());
    std::vector<bool> open(surf.paths.size(), false);
    for (auto& rec : out.lines) {
        if (rec.count() % 2 == 0) rec.pairs = pair_at_edge(rec, surf);
        if (rec.boundary || rec.count() % 2)
            for (const auto& inc : rec.incident) open[inc.path] = true;
        for (auto [i, j] : rec.pairs) uf.unite(rec.incident[i].path, rec.incident[j].path);
    }
    out.component_of.assign(surf.paths.size(), 0);
    std::unordered_map<std::uint32_t, std::uint32_t> index;
    for (std::uint32_t p = 0; p < surf.paths.size(); ++p) {
        std::uint32_t root = uf.find(p);
        auto it = index.find(root);
        if (it == index.end()) {
            it = index.emplace(root, std::uint32_t(out.components.size())).first;
            SurfaceComponent comp;
            comp.id = std::uint32_t(out.components.size());
            out.components.push_back(comp);
        }
        auto& comp = out.components[it->second];
        comp.members.push_back(p);
        if (open[p]) comp.closed = false;
        out.component_of[p] = it->second;
    }

    out.slot_offset.assign(surf.paths.size() + 1, 0);
    for (std::size_t p = 0; p < surf.paths.size(); ++p)
        out.slot_offset[p + 1] = out.slot_offset[p] + surf.paths[p].size();
    out.partner.assign(out.slot_offset.back(), -1);
    for (const auto& rec : out.lines)
        for (auto [i, j] : rec.pairs) {
            std::size_t si = out.slot_offset[rec.incident[i].path] + rec.incident[i].edge;
            std::size_t sj = out.slot_offset[rec.incident[j].path] + rec.incident[j].edge;
            out.partner[si] = std::int64_t(sj);
            out.partner[sj] = std::int64_t(si);
        }

    out.point_offset.assign(surf.points.size() + 1, 0);
    for (const auto& p : surf.paths)
        for (auto q : p.points) out.point_offset[q + 1]++;
    for (std::size_t q = 0; q < surf.points.size(); ++q) out.point_offset[q + 1] += out.point_offset[q];
    out.point_paths.resize(out.point_offset.back());
    std::vector<std::size_t> fill(out.point_offset.begin(), out.point_offset.end() - 1);
    for (std::uint32_t pi = 0; pi < surf.paths.size(); ++pi)
        for (auto q : surf.paths[pi].points) out.point_paths[fill[q]++] = pi;
    return out;
}

std::pair<std::uint32_t, std::uint32_t> ComponentDecomposition::slot_of(std::size_t slot) const
{
    auto it = std::upper_bound(slot_offset.begin(), slot_offset.end(), slot);
    std::uint32_t path = std::uint32_t(it - slot_offset.begin() - 1);
    return {path, std::uint32_t(slot - slot_offset[path])};
}

std::vector<NeighborRing> neighbor_rings(std::uint32_t point, const IsoSurface& surf,
                                         const ComponentDecomposition& comps)
{
    const auto& idx = comps;
    std::vector<std::uint32_t> through(comps.point_paths.begin() + std::ptrdiff_t(comps.point_offset[point]),
                                       comps.point_paths.begin() + std::ptrdiff_t(comps.point_offset[point + 1]));

    auto position = [&](std::uint32_t path) {
        const auto& pts = surf.paths[path].points;
        return std::uint32_t(std::find(pts.begin(), pts.end(), point) - pts.begin());
    };
    auto other_end = [&](std::uint32_t path, std::uint32_t edge) {
        const auto& pts = surf.paths[path].points;
        std::uint32_t a = pts[edge];
        std::uint32_t b = pts[(edge + 1) % pts.size()];
        return a == point ? b : a;
    };

    std::vector<NeighborRing> rings;
    std::set<std::uint32_t> visited;
    for (std::uint32_t start : through) {
        if (visited.count(start)) continue;
        NeighborRing ring;
        ring.point = point;
        // Walk forward: leave each path through the iso-line starting at the point.
        std::uint32_t path = start;
        std::uint32_t edge = position(start);
        bool closed = false;
        for (;;) {
            visited.insert(path);
            ring.paths.push_back(path);
            ring.ring_points.push_back(other_end(path, edge));
            std::int64_t ps = idx.partner[idx.slot_offset[path] + edge];
            if (ps < 0) break;
            auto [np, ne] = idx.slot_of(std::size_t(ps));
            std::uint32_t k = position(np);
            std::uint32_t m = std::uint32_t(surf.paths[np].size());
            std::uint32_t next_edge = ne == k ? (k + m - 1) % m : k;
            if (np == start) {
                closed = next_edge == position(start);
                break;
            }
            if (visited.count(np)) break;
            path = np;
            edge = next_edge;
        }
        if (!closed) {
            // Extend backwards from the start through the iso-line ending at the point.
            std::uint32_t m0 = std::uint32_t(surf.paths[start].size());
            std::uint32_t bpath = start;
            std::uint32_t bedge = (position(start) + m0 - 1) % m0;
            std::vector<std::uint32_t> back_paths;
            std::vector<std::uint32_t> back_points;
            for (;;) {
                std::int64_t ps = idx.partner[idx.slot_offset[bpath] + bedge];
                if (ps < 0) break;
                auto [np, ne] = idx.slot_of(std::size_t(ps));
                if (visited.count(np)) break;
                std::uint32_t k = position(np);
                std::uint32_t m = std::uint32_t(surf.paths[np].size());
                std::uint32_t next_edge = ne == k ? (k + m - 1) % m : k;
                visited.insert(np);
                back_paths.push_back(np);
                back_points.push_back(other_end(np, ne));
                bpath = np;
                bedge = next_edge;
            }
            std::reverse(back_paths.begin(), back_paths.end());
            std::reverse(back_points.begin(), back_points.end());
            ring.paths.insert(ring.paths.begin(), back_paths.begin(), back_paths.end());
            ring.ring_points.insert(ring.ring_points.begin(), back_points.begin(), back_points.end());
        }
        ring.closed = closed;
        rings.push_back(std::move(ring));
    }
    return rings;
}

std::string AuditReport::to_text() const
{
    std::string out;
    for (const auto& v : violations) out += fmt::format("violation {} {}\n", v.kind, v.detail);
    out += "summary\n";
    out += fmt::format("  lines {}\n  interior_lines {}\n  boundary_lines {}\n", lines, interior_lines, boundary_lines);
    out += fmt::format("  points_checked {}\n  rings_checked {}\n  ring_min {}\n  ring_max {}\n", points_checked,
                       rings_checked, min_ring, max_ring);
    out += fmt::format("  components {}\n  violations {}\n", components, violations.size());
    for (std::size_t i = 0; i < incidence_histogram.size(); ++i)
        if (incidence_histogram[i]) out += fmt::format("  incidence_{} {}\n", i, incidence_histogram[i]);
    return out;
}

AuditReport audit_connectivity(const IsoSurface& surf, const AuditOptions& options)
{
    return audit_connectivity(surf, decompose_components(surf), options);
}

AuditReport audit_connectivity(const IsoSurface& surf, const ComponentDecomposition& comps,
                               const AuditOptions& options)
{
    AuditReport rep;
    rep.components = comps.components.size();
    auto describe = [&](const EdgeIncidenceRecord& rec) {
        return fmt::format("line {:#x}-{:#x} kind {} incidence {}", surf.points[rec.a].key, surf.points[rec.b].key,
                           int(rec.kind), rec.count());
    };
    for (const auto& rec : comps.lines) {
        ++rep.lines;
        rep.incidence_histogram[std::min<std::size_t>(rec.count(), 8)]++;
        if (rec.boundary) {
            ++rep.boundary_lines;
            continue;
        }
        ++rep.interior_lines;
        const std::size_t n = rec.count();
        if (n < 2) rep.violations.push_back({"incidence", describe(rec)});
        if (n % 2) {
            rep.violations.push_back({"parity", describe(rec)});
            continue;
        }
        bool allowed = rec.kind == LineKind::LatticeEdge ? n <= 8
                       : rec.kind == LineKind::FaceDiagonal ? n <= 4
                                                            : n == 2;
        if (!allowed) rep.violations.push_back({"incidence-kind", describe(rec)});
        if (rec.pairs.size() * 2 != n) rep.violations.push_back({"matching", describe(rec)});
        for (auto [i, j] : rec.pairs)
            if (!disperse_connected(surf, rec, i, j)) rep.violations.push_back({"pairing", describe(rec)});
        if (n >= 4) {
            // No path may be connected through a shared disperse node to a path it is not paired with.
            std::vector<std::uint32_t> mate(n);
            for (auto [i, j] : rec.pairs) {
                mate[i] = j;
                mate[j] = i;
            }
            for (std::uint32_t i = 0; i < n; ++i)
                for (std::uint32_t j = i + 1; j < n; ++j)
                    if (mate[i] != j && share_vertex(rec.incident[i].disperse, rec.incident[j].disperse))
                        rep.violations.push_back({"triple", describe(rec)});
            if (options.check_uniqueness && count_connected_matchings(surf, rec) != 1)
                rep.violations.push_back({"matching-unique", describe(rec)});
        }
    }
    if (options.check_rings) {
        rep.min_ring = 1 << 30;
        for (std::uint32_t p = 0; p < surf.points.size(); ++p) {
            if (point_on_boundary(surf, p)) continue;
            ++rep.points_checked;
            for (const auto& ring : neighbor_rings(p, surf, comps)) {
                ++rep.rings_checked;
                int n = int(ring.paths.size());
                rep.min_ring = std::min(rep.min_ring, n);
                rep.max_ring = std::max(rep.max_ring, n);
                if (!ring.closed || n < 4 || n > 8)
                    rep.violations.push_back({"ring", fmt::format("point {:#x} size {} closed {}", surf.points[p].key,
                                                                  n, ring.closed)});
            }
        }
        if (rep.rings_checked == 0) rep.min_ring = 0;
    }
    return rep;
}

} // namespace isograph
