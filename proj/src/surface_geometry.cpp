// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#include "isograph/surface_geometry.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

namespace isograph {

namespace {

template <class V>
V double_sum(const std::array<V, 8>& corners, std::uint8_t disperse, V zero)
{
    V out = zero;
    for (int j = 0; j < 8; ++j) {
        if (!((disperse >> j) & 1)) continue;
        for (int i = 0; i < 8; ++i) {
            if ((disperse >> i) & 1) continue;
            for (std::size_t a = 0; a < 3; ++a) out[a] += corners[std::size_t(i)][a] - corners[std::size_t(j)][a];
        }
    }
    return out;
}

template <class V>
V closed_form(const std::array<V, 8>& corners, std::uint8_t disperse, V zero)
{
    V all = zero;
    V dis = zero;
    const int nd = std::popcount(disperse);
    for (int i = 0; i < 8; ++i)
        for (std::size_t a = 0; a < 3; ++a) {
            all[a] += corners[std::size_t(i)][a];
            if ((disperse >> i) & 1) dis[a] += corners[std::size_t(i)][a];
        }
    V out = zero;
    for (std::size_t a = 0; a < 3; ++a) out[a] = nd * all[a] - 8 * dis[a];
    return out;
}

std::array<Vec3, 8> cell_corners(const CuboidPartition& part, const Index3& cell)
{
    std::array<Vec3, 8> out;
    for (int k = 0; k < 8; ++k) out[std::size_t(k)] = part.vertex_position(corner_vertex(cell, k));
    return out;
}

/// Direction of the iso-line between points a and b in a path: +1 when traversed a to b, -1 for b to a.
int line_direction(const IsoPath& path, std::uint32_t edge, std::uint32_t a)
{
    return path.points[edge] == a ? 1 : -1;
}

} // namespace

Vec3 pseudo_normal_double_sum(const std::array<Vec3, 8>& corners, std::uint8_t disperse)
{
    return double_sum(corners, disperse, Vec3(Vec3::Zero()));
}

Vec3 pseudo_normal_closed_form(const std::array<Vec3, 8>& corners, std::uint8_t disperse)
{
    return closed_form(corners, disperse, Vec3(Vec3::Zero()));
}

IVec3 pseudo_normal_double_sum(const std::array<IVec3, 8>& corners, std::uint8_t disperse)
{
    return double_sum(corners, disperse, IVec3{0, 0, 0});
}

IVec3 pseudo_normal_closed_form(const std::array<IVec3, 8>& corners, std::uint8_t disperse)
{
    return closed_form(corners, disperse, IVec3{0, 0, 0});
}

PseudoNormal pseudo_normal(const std::array<Vec3, 8>& corners, std::uint8_t disperse)
{
    if (disperse == 0 || disperse == 0xFF) throw NoInterfaceError("pseudo-normal needs disperse and continuous corners");
    PseudoNormal out;
    out.disperse = disperse;
    out.disperse_count = std::popcount(disperse);
    out.p = pseudo_normal_double_sum(corners, disperse);
    double scale = 0.0;
    for (const auto& c : corners) scale = std::max(scale, c.cwiseAbs().maxCoeff());
    out.degenerate = out.p.norm() <= 1e-12 * std::max(scale, 1.0) * 16.0;
    return out;
}

PseudoNormal pseudo_normal(const LabeledCuboidGraph& g)
{
    std::uint8_t mask = 0;
    for (int k = 0; k < 8; ++k)
        if (g.label[std::size_t(k)] > g.iso_level) mask |= std::uint8_t(1u << k);
    return pseudo_normal(g.position, mask);
}

PseudoNormal path_pseudo_normal(const IsoSurface& surf, std::size_t path)
{
    const IsoPath& p = surf.paths[path];
    std::uint8_t mask = p.piece_disperse;
    if (p.kind == PathKind::Outer) {
        mask = 0;
        for (auto d : p.disperse) mask |= d;
    }
    if (mask == 0 || mask == 0xFF) {
        PseudoNormal out;
        out.disperse = mask;
        out.disperse_count = std::popcount(mask);
        out.degenerate = true;
        return out;
    }
    return pseudo_normal(cell_corners(surf.partition, p.cell), mask);
}

Vec3 path_area_vector(const IsoSurface& surf, std::size_t path)
{
    Vec3 n = Vec3::Zero();
    for (const auto& t : surf.element(path).triangles) n += 0.5 * (t[1] - t[0]).cross(t[2] - t[0]);
    return n;
}

void reverse_path(IsoPath& path)
{
    const std::size_t m = path.size();
    if (m < 2) return;
    // Line j of the reversed path joins old points m-1-j and m-2-j, which is old line m-2-j.
    IsoPath r = path;
    for (std::size_t j = 0; j < m; ++j) {
        r.points[j] = path.points[m - 1 - j];
        std::size_t old = (2 * m - 2 - j) % m;
        r.faces[j] = path.faces[old];
        r.disperse[j] = path.disperse[old];
    }
    path = std::move(r);
}

OrientationReport orient_elements(const IsoSurface& surf, const ComponentDecomposition& comps)
{
    const std::size_t n = surf.paths.size();
    OrientationReport rep;
    rep.flip.assign(n, false);
    std::vector<bool> decided(n, false);
    std::vector<PseudoNormal> pn(n);
    for (std::size_t i = 0; i < n; ++i) {
        pn[i] = path_pseudo_normal(surf, i);
        if (pn[i].degenerate) continue;
        Vec3 a = path_area_vector(surf, i);
        double s = a.dot(pn[i].p);
        if (std::abs(s) <= 1e-12 * a.norm() * pn[i].p.norm()) continue;
        rep.flip[i] = s < 0.0;
        decided[i] = true;
    }
    // Breadth-first inheritance across matched iso-lines for the remaining paths.
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i)
        if (decided[i]) queue.push_back(i);
    while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        const IsoPath& p = surf.paths[i];
        for (std::uint32_t e = 0; e < p.size(); ++e) {
            std::int64_t ps = comps.partner[comps.slot_offset[i] + e];
            if (ps < 0) continue;
            auto [j, je] = comps.slot_of(std::size_t(ps));
            if (decided[j]) continue;
            // The two paths must traverse the shared line in opposite directions.
            int di = line_direction(p, e, p.points[e]) * (rep.flip[i] ? -1 : 1);
            int dj = line_direction(surf.paths[j], je, p.points[e]);
            rep.flip[j] = dj == di;
            decided[j] = true;
            ++rep.inherited;
            queue.push_back(j);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!decided[i]) ++rep.isolated;
        if (rep.flip[i]) ++rep.flipped;
    }
    for (const auto& rec : comps.lines)
        for (auto [a, b] : rec.pairs) {
            const auto& x = rec.incident[a];
            const auto& y = rec.incident[b];
            int dx = line_direction(surf.paths[x.path], x.edge, rec.a) * (rep.flip[x.path] ? -1 : 1);
            int dy = line_direction(surf.paths[y.path], y.edge, rec.a) * (rep.flip[y.path] ? -1 : 1);
            if (dx == dy) ++rep.inconsistent_lines;
        }
    for (std::size_t i = 0; i < n; ++i) {
        if (pn[i].degenerate) continue;
        for (const auto& t : surf.element(i).triangles) {
            Vec3 tn = (t[1] - t[0]).cross(t[2] - t[0]);
            if (rep.flip[i]) tn = -tn;
            if (tn.dot(pn[i].p) < 0.0) ++rep.sign_exceptions;
        }
    }
    return rep;
}

void apply_orientation(IsoSurface& surf, const OrientationReport& report)
{
    for (std::size_t i = 0; i < surf.paths.size(); ++i)
        if (report.flip[i]) reverse_path(surf.paths[i]);
}

OrientationReport orient_surface(IsoSurface& surf, ComponentDecomposition& comps)
{
    OrientationReport rep = orient_elements(surf, comps);
    if (rep.flipped > 0) {
        apply_orientation(surf, rep);
        comps = decompose_components(surf);
    }
    return rep;
}

namespace {

/// Third vertex of the mesh triangle on the far side of line `edge` of a path.
std::optional<Vec3> apex_across(const IsoSurface& surf, const ComponentDecomposition& comps, std::size_t path,
                                std::uint32_t edge)
{
    std::int64_t ps = comps.partner[comps.slot_offset[path] + edge];
    if (ps < 0) return std::nullopt;
    auto [j, je] = comps.slot_of(std::size_t(ps));
    const IsoPath& q = surf.paths[j];
    if (q.size() != 3) return q.center;
    return surf.points[q.points[(je + 2) % 3]].position;
}

} // namespace

SurfaceRegion surface_region(const IsoSurface& surf, const ComponentDecomposition& comps, const NeighborRing& ring)
{
    SurfaceRegion reg;
    reg.point = ring.point;
    reg.ring_points = ring.ring_points;
    reg.closed = ring.closed;
    const Vec3 P = surf.points[ring.point].position;
    reg.center = P;
    std::set<std::uint32_t> support_points;
    std::set<std::uint32_t> support_centers;
    for (std::uint32_t pid : ring.paths) {
        const IsoPath& path = surf.paths[pid];
        const std::size_t m = path.size();
        std::size_t k = std::size_t(std::find(path.points.begin(), path.points.end(), ring.point) - path.points.begin());
        if (k == m) continue;
        std::uint32_t prev = path.points[(k + m - 1) % m];
        std::uint32_t next = path.points[(k + 1) % m];
        const Vec3 A = surf.points[prev].position;
        const Vec3 B = surf.points[next].position;
        support_points.insert(prev);
        support_points.insert(next);
        if (m == 3) {
            reg.triangles.push_back({P, B, A});
            reg.outer_apex.push_back(apex_across(surf, comps, pid, std::uint32_t((k + 1) % m)));
        } else if (path.kind == PathKind::Outer) {
            reg.triangles.push_back({P, B, A});
            reg.outer_apex.push_back(path.center);
        } else {
            reg.triangles.push_back({P, path.center, A});
            reg.outer_apex.push_back(surf.points[path.points[(k + m - 2) % m]].position);
            reg.triangles.push_back({P, B, path.center});
            reg.outer_apex.push_back(surf.points[path.points[(k + 2) % m]].position);
            support_centers.insert(pid);
        }
        reg.normal += path_area_vector(surf, pid);
    }
    for (auto q : support_points) reg.support.push_back(surf.points[q].position);
    for (auto c : support_centers) reg.support.push_back(surf.paths[c].center);
    return reg;
}

CurvatureEstimate mean_curvature(const Vec3& center, const std::vector<std::array<Vec3, 3>>& triangles,
                                 const Vec3& normal, CurvatureScheme scheme,
                                 const std::vector<std::optional<Vec3>>& outer_apex)
{
    CurvatureEstimate est;
    Vec3 k = Vec3::Zero();
    double scale = 0.0;
    for (const auto& t : triangles) scale = std::max({scale, (t[1] - t[0]).norm(), (t[2] - t[0]).norm()});
    const double tiny = 1e-14 * scale * scale;
    auto in_plane_away = [](const Vec3& from, const Vec3& X, const Vec3& e) {
        Vec3 d = X - from;
        d -= d.dot(e) * e;
        double len = d.norm();
        return len > 0.0 ? Vec3(d / len) : Vec3(Vec3::Zero());
    };
    for (std::size_t ti = 0; ti < triangles.size(); ++ti) {
        const auto& t = triangles[ti];
        const Vec3& X = t[1];
        const Vec3& Y = t[2];
        const double area2 = (X - center).cross(Y - center).norm();
        if (area2 <= tiny) {
            ++est.excluded_triangles;
            continue;
        }
        if (scheme == CurvatureScheme::Conormal) {
            // The integrand of Gauss's theorem on the boundary edge XY.
            const Vec3 e = (Y - X).normalized();
            Vec3 nu = in_plane_away(center, X, e);
            if (ti < outer_apex.size() && outer_apex[ti]) {
                Vec3 beyond = -in_plane_away(*outer_apex[ti], X, e);
                if ((nu + beyond).norm() > 1e-12) nu = (nu + beyond).normalized();
            }
            k -= (Y - X).norm() * nu;
            est.area += area2 / 2.0;
            continue;
        }
        // cot of the angle at Y weights the edge to X, and vice versa.
        const double cot_y = (center - Y).dot(X - Y) / area2;
        const double cot_x = (center - X).dot(Y - X) / area2;
        k += cot_y * (center - X) + cot_x * (center - Y);
        if (scheme == CurvatureScheme::RegionCotangent) {
            est.area += area2 / 2.0;
        } else if (scheme == CurvatureScheme::OneThirdCotangent) {
            est.area += area2 / 6.0;
        } else {
            const double cot_p = (X - center).dot(Y - center) / area2;
            if (cot_p < 0.0) est.area += area2 / 4.0;
            else if (cot_x < 0.0 || cot_y < 0.0) est.area += area2 / 8.0;
            else est.area += ((X - center).squaredNorm() * cot_y + (Y - center).squaredNorm() * cot_x) / 8.0;
        }
    }
    const double nn = normal.norm();
    if (est.area <= 0.0 || !(nn > 0.0)) return est;
    const bool whole = scheme == CurvatureScheme::Conormal || scheme == CurvatureScheme::RegionCotangent;
    k /= whole ? est.area : 2.0 * est.area;
    est.mean_curvature = k.dot(normal / nn);
    est.valid = std::isfinite(est.mean_curvature);
    return est;
}

CurvatureEstimate mean_curvature(const SurfaceRegion& region, CurvatureScheme scheme)
{
    if (!region.closed) return {};
    return mean_curvature(region.center, region.triangles, region.normal, scheme, region.outer_apex);
}

CurvatureEstimate point_curvature(const IsoSurface& surf, const ComponentDecomposition& comps, std::uint32_t point,
                                  CurvatureScheme scheme)
{
    auto rings = neighbor_rings(point, surf, comps);
    if (rings.size() != 1 || !rings.front().closed) return {};
    return mean_curvature(surface_region(surf, comps, rings.front()), scheme);
}

CurvatureEstimate center_curvature(const IsoSurface& surf, const ComponentDecomposition& comps, std::size_t path,
                                   CurvatureScheme scheme)
{
    const IsoPath& p = surf.paths[path];
    if (p.size() <= 3) return {};
    auto pos = surf.path_positions(path);
    std::vector<std::array<Vec3, 3>> tris;
    std::vector<std::optional<Vec3>> apex;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        tris.push_back({p.center, pos[i], pos[(i + 1) % pos.size()]});
        apex.push_back(apex_across(surf, comps, path, std::uint32_t(i)));
    }
    return mean_curvature(p.center, tris, path_area_vector(surf, path), scheme, apex);
}

long SurfaceMesh::euler_characteristic() const
{
    return euler_characteristic(std::numeric_limits<std::uint32_t>::max());
}

long SurfaceMesh::euler_characteristic(std::uint32_t comp) const
{
    const bool all = comp == std::numeric_limits<std::uint32_t>::max();
    std::set<std::uint32_t> verts;
    std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
    long faces = 0;
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        if (!all && component[t] != comp) continue;
        ++faces;
        const auto& tri = triangles[t];
        for (int i = 0; i < 3; ++i) {
            std::uint32_t a = tri[std::size_t(i)];
            std::uint32_t b = tri[std::size_t((i + 1) % 3)];
            verts.insert(a);
            edges.insert({std::min(a, b), std::max(a, b)});
        }
    }
    return long(verts.size()) - long(edges.size()) + faces;
}

double SurfaceMesh::area() const
{
    double a = 0.0;
    for (const auto& t : triangles)
        a += 0.5 * (vertices[t[1]] - vertices[t[0]]).cross(vertices[t[2]] - vertices[t[0]]).norm();
    return a;
}

SurfaceMesh build_mesh(const IsoSurface& surf, const ComponentDecomposition& comps, const MeshOptions& options)
{
    SurfaceMesh mesh;
    mesh.component_count = comps.components.size();
    for (const auto& p : surf.points) mesh.vertices.push_back(p.position);
    std::vector<std::int64_t> center_vertex(surf.paths.size(), -1);
    for (std::size_t i = 0; i < surf.paths.size(); ++i) {
        const IsoPath& p = surf.paths[i];
        if (p.size() == 3) {
            mesh.triangles.push_back({p.points[0], p.points[1], p.points[2]});
            mesh.component.push_back(comps.component_of[i]);
            continue;
        }
        center_vertex[i] = std::int64_t(mesh.vertices.size());
        mesh.vertices.push_back(p.center);
        const std::uint32_t c = std::uint32_t(center_vertex[i]);
        for (std::size_t k = 0; k < p.size(); ++k) {
            mesh.triangles.push_back({p.points[k], p.points[(k + 1) % p.size()], c});
            mesh.component.push_back(comps.component_of[i]);
        }
    }
    mesh.normals.assign(mesh.vertices.size(), Vec3::Zero());
    for (const auto& t : mesh.triangles) {
        Vec3 n = (mesh.vertices[t[1]] - mesh.vertices[t[0]]).cross(mesh.vertices[t[2]] - mesh.vertices[t[0]]);
        for (auto v : t) mesh.normals[v] += n;
    }
    for (auto& n : mesh.normals) {
        double len = n.norm();
        if (len > 0.0) n /= len;
    }
    if (options.curvature) {
        mesh.has_curvature = true;
        mesh.curvature.assign(mesh.vertices.size(), std::numeric_limits<double>::quiet_NaN());
        const std::int64_t np = std::int64_t(surf.points.size());
        detail::parallel_chunks(np, options.threads, [&](int, std::int64_t b, std::int64_t e) {
            for (std::int64_t q = b; q < e; ++q) {
                if (point_on_boundary(surf, std::uint32_t(q))) continue;
                auto est = point_curvature(surf, comps, std::uint32_t(q), options.scheme);
                if (est.valid) mesh.curvature[std::size_t(q)] = est.mean_curvature;
            }
        });
        for (std::size_t i = 0; i < surf.paths.size(); ++i) {
            if (center_vertex[i] < 0) continue;
            auto est = center_curvature(surf, comps, i, options.scheme);
            if (est.valid) mesh.curvature[std::size_t(center_vertex[i])] = est.mean_curvature;
        }
    }
    return mesh;
}

} // namespace isograph
