// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#ifndef ISOGRAPH_TESTS_ORACLE_HPP
#define ISOGRAPH_TESTS_ORACLE_HPP

// Brute-force reference for the per-cell iso-path structure. It shares no code with the
// library: corners are handled as coordinate triples, faces and edges are rebuilt from
// coordinates, and cycles are found by walking face crossings.
//
// Point naming matches the library's local ids: corner x*4+y*2+z, edge 8+n with edges
// numbered by axis, then by the lower corner index.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

enum State { Sub = 0, Iso = 1, Dis = 2 };

using States = std::array<int, 8>;
using Cycle = std::vector<int>;

inline std::array<int, 3> xyz(int c) { return {(c >> 2) & 1, (c >> 1) & 1, c & 1}; }
inline int corner(int x, int y, int z) { return x * 4 + y * 2 + z; }

inline States decode(int code)
{
    States s{};
    for (int c = 0; c < 8; ++c) {
        s[c] = code % 3;
        code /= 3;
    }
    return s;
}

inline bool adjacent(int a, int b)
{
    auto p = xyz(a);
    auto q = xyz(b);
    return std::abs(p[0] - q[0]) + std::abs(p[1] - q[1]) + std::abs(p[2] - q[2]) == 1;
}

inline std::vector<int> neighbors(int c)
{
    std::vector<int> out;
    for (int d = 0; d < 8; ++d)
        if (adjacent(c, d)) out.push_back(d);
    return out;
}

inline int edge_id(int a, int b)
{
    if (a > b) std::swap(a, b);
    int n = 8;
    for (int axis = 0; axis < 3; ++axis)
        for (int c = 0; c < 8; ++c) {
            int step = 4 >> axis;
            if (c & step) continue;
            if (c == a && c + step == b) return n;
            ++n;
        }
    return -1;
}

/// Faces as cyclic corner lists, built from coordinates.
inline std::vector<std::array<int, 4>> faces()
{
    std::vector<std::array<int, 4>> out;
    for (int axis = 0; axis < 3; ++axis)
        for (int side = 0; side < 2; ++side) {
            std::array<int, 4> f{};
            const int u = (axis + 1) % 3;
            const int v = (axis + 2) % 3;
            const int uv[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
            for (int i = 0; i < 4; ++i) {
                std::array<int, 3> p{};
                p[axis] = side;
                p[u] = uv[i][0];
                p[v] = uv[i][1];
                f[i] = corner(p[0], p[1], p[2]);
            }
            out.push_back(f);
        }
    return out;
}

/// Removes isolated and singular iso-points: single iso-nodes enclosed by disperse neighbors,
/// edge pairs of iso-nodes enclosed by disperse nodes with a disperse far corner, and the
/// four-node F1 arrangement.
inline States strip(States s)
{
    auto count_iso = [&] { return int(std::count(s.begin(), s.end(), Iso)); };
    bool f1 = count_iso() == 4 && std::count(s.begin(), s.end(), Dis) == 4;
    if (f1)
        for (int c = 0; c < 8 && f1; ++c) {
            if (s[c] != Iso) continue;
            int iso_nb = 0;
            for (int d : neighbors(c)) iso_nb += s[d] == Iso;
            f1 = iso_nb == 1;
        }
    if (f1) {
        for (auto& x : s)
            if (x == Iso) x = Dis;
        return s;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (int c = 0; c < 8; ++c) {
            if (s[c] != Iso) continue;
            bool all = true;
            for (int d : neighbors(c)) all = all && s[d] == Dis;
            if (all) {
                s[c] = Dis;
                changed = true;
            }
        }
    }
    changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < 8 && !changed; ++a)
            for (int b = a + 1; b < 8 && !changed; ++b) {
                if (!adjacent(a, b) || s[a] != Iso || s[b] != Iso) continue;
                bool ring = true;
                std::set<int> used{a, b};
                for (int x : {a, b})
                    for (int d : neighbors(x)) {
                        if (d == a || d == b) continue;
                        ring = ring && s[d] == Dis;
                        used.insert(d);
                    }
                if (!ring) continue;
                bool far = false;
                for (int c = 0; c < 8; ++c)
                    if (!used.count(c) && s[c] == Dis) far = true;
                if (!far) continue;
                s[a] = s[b] = Dis;
                changed = true;
            }
    }
    return s;
}

inline int point_of(const States& s, int a, int b)
{
    int cont = s[a] == Dis ? b : a;
    return s[cont] == Iso ? cont : edge_id(a, b);
}

/// Disperse components of the cube's edge graph.
inline std::array<int, 8> disperse_components(const States& s)
{
    std::array<int, 8> comp{};
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    for (int a = 0; a < 8; ++a)
        for (int b : neighbors(a))
            if (s[a] == Dis && s[b] == Dis) comp[find(a)] = find(b);
    for (int a = 0; a < 8; ++a) comp[a] = find(a);
    return comp;
}

/// Cycles of the iso-line structure of a stripped cell, as point sequences with zero-length
/// steps removed. Every cycle is canonicalized (minimal rotation over both directions).
inline std::vector<Cycle> cycles(const States& s)
{
    // Crossing edges are the graph nodes; each face links its crossings pairwise.
    std::map<int, std::vector<int>> adj;
    auto link = [&](int e0, int e1) {
        adj[e0].push_back(e1);
        adj[e1].push_back(e0);
    };
    auto comp = disperse_components(s);
    for (const auto& f : faces()) {
        std::vector<std::pair<int, int>> cross;
        for (int i = 0; i < 4; ++i) {
            int a = f[i];
            int b = f[(i + 1) % 4];
            if ((s[a] == Dis) != (s[b] == Dis)) cross.push_back({a, b});
        }
        if (cross.size() == 2) {
            link(edge_id(cross[0].first, cross[0].second), edge_id(cross[1].first, cross[1].second));
        } else if (cross.size() == 4) {
            int da = -1;
            int db = -1;
            for (int c : f)
                if (s[c] == Dis) (da < 0 ? da : db) = c;
            bool joined = comp[da] == comp[db];
            // Pair the crossings around each continuous corner when joined, around each disperse corner otherwise.
            for (int i = 0; i < 4; ++i) {
                int c = f[i];
                bool pivot = joined ? s[c] != Dis : s[c] == Dis;
                if (!pivot) continue;
                int prev = f[(i + 3) % 4];
                int next = f[(i + 1) % 4];
                link(edge_id(prev, c), edge_id(c, next));
            }
        }
    }
    std::map<int, std::pair<int, int>> crossing_ends;
    for (int a = 0; a < 8; ++a)
        for (int b : neighbors(a))
            if (a < b) crossing_ends[edge_id(a, b)] = {a, b};
    std::set<int> seen;
    std::vector<Cycle> out;
    for (auto& [start, nb] : adj) {
        if (seen.count(start)) continue;
        std::vector<int> walk;
        int prev = -1;
        int cur = start;
        while (!seen.count(cur)) {
            seen.insert(cur);
            walk.push_back(cur);
            const auto& n = adj[cur];
            int next = n[0] != prev ? n[0] : n[1];
            if (n.size() == 2 && n[0] == n[1]) next = n[0];
            prev = cur;
            cur = next;
        }
        Cycle pts;
        for (int e : walk) {
            auto [a, b] = crossing_ends[e];
            int p = point_of(s, a, b);
            if (pts.empty() || pts.back() != p) pts.push_back(p);
        }
        while (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
        out.push_back(pts);
    }
    return out;
}

/// Minimal rotation over both traversal directions.
inline Cycle canonical(Cycle c)
{
    Cycle best;
    for (int dir = 0; dir < 2; ++dir) {
        for (std::size_t r = 0; r < c.size(); ++r) {
            Cycle rot(c.begin() + std::ptrdiff_t(r), c.end());
            rot.insert(rot.end(), c.begin(), c.begin() + std::ptrdiff_t(r));
            if (best.empty() || rot < best) best = rot;
        }
        std::reverse(c.begin(), c.end());
    }
    return best;
}

inline std::vector<Cycle> canonical_multiset(std::vector<Cycle> cs)
{
    for (auto& c : cs) c = canonical(c);
    std::sort(cs.begin(), cs.end());
    return cs;
}

} // namespace oracle

#endif
