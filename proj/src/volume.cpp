// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#include "isograph/isopath_extract.hpp"
#include "isograph/scalar_grid.hpp"

#include "parallel.hpp"

#include <cmath>

namespace isograph {

namespace {

/// Area of a planar polygon with the given unit normal.
double polygon_area(const std::vector<Vec3>& poly, const Vec3& normal)
{
    Vec3 s = Vec3::Zero();
    for (std::size_t i = 0; i < poly.size(); ++i) s += poly[i].cross(poly[(i + 1) % poly.size()]);
    return 0.5 * std::abs(s.dot(normal));
}

/// Disperse-side area of one face of a stripped cell.
double face_disperse_area(const LabeledCuboidGraph& g, const CellTopology& t, int face)
{
    const StateMask s = t.stripped;
    const auto& corners = cube::kFaceTable[face];
    std::vector<Vec3> walk;
    std::vector<Vec3> crossings;
    for (int i = 0; i < 4; ++i) {
        int a = corners[i];
        int b = corners[(i + 1) % 4];
        if ((s.disperse >> a) & 1) walk.push_back(g.position[a]);
        int e = cube::edge_between(a, b);
        if (((s.disperse >> a) & 1) != ((s.disperse >> b) & 1)) {
            Vec3 p = local_point_position(g, s, std::uint8_t(e));
            walk.push_back(p);
            crossings.push_back(p);
        }
    }
    if (walk.size() < 3) return 0.0;
    const Vec3 n = face_normal(face);
    double area = polygon_area(walk, n);
    if (((t.l_faces >> face) & 1) && !((t.joined_faces >> face) & 1)) area -= polygon_area(crossings, n);
    return area;
}

double cell_disperse_volume(const LabeledCuboidGraph& g, const CellTopology& t)
{
    const int d = t.stripped.disperse_count();
    if (d == 0) return 0.0;
    const Vec3 o = g.position[0];
    const Vec3 ext = g.position[7] - o;
    if (d == 8) return ext[0] * ext[1] * ext[2];
    double vol = 0.0;
    for (const auto& lp : t.paths) {
        std::vector<Vec3> pos;
        for (std::size_t i = 0; i < lp.size(); ++i) pos.push_back(local_point_position(g, t.stripped, lp.edges[i]) - o);
        Vec3 center = Vec3::Zero();
        for (const auto& p : pos) center += p;
        center /= double(pos.size());
        for (const auto& tri : fan_triangles(pos, center)) vol += tri[0].dot(tri[1].cross(tri[2])) / 6.0;
    }
    // Faces through the reference corner contribute nothing.
    for (int axis = 0; axis < 3; ++axis) vol += ext[axis] * face_disperse_area(g, t, 2 * axis + 1) / 3.0;
    return vol;
}

} // namespace

double enclosed_volume(const NodeLabeling& labels, const CuboidPartition& part, double c, double iso_tolerance,
                       int threads)
{
    part.validate();
    if (!(c > 0.0 && c < 1.0)) throw ContractError("iso-level must lie in (0,1)");
    if (labels.vertex_dims != part.vertex_dims() || std::int64_t(labels.labels.size()) != part.vertex_count())
        throw InputError("labeling does not match the partition");
    const std::vector<double> f = snapped_labels(labels, c, iso_tolerance);
    const std::vector<StateMask> stripped = strip_cells(f, part, c, threads);
    const std::int64_t n = part.cell_count();
    std::vector<double> partial(static_cast<std::size_t>(detail::chunk_count(n, threads)), 0.0);
    detail::parallel_chunks(n, threads, [&](int chunk, std::int64_t b, std::int64_t e) {
        double sum = 0.0;
        for (std::int64_t id = b; id < e; ++id) {
            const StateMask s = stripped[std::size_t(id)];
            if (s.disperse == 0) continue;
            const Index3 cell = part.cell_index(id);
            if (s.disperse == 0xFF) {
                sum += part.cell_volume();
                continue;
            }
            LabeledCuboidGraph g;
            g.iso_level = c;
            g.cell = cell;
            for (int k = 0; k < 8; ++k) {
                Index3 v = corner_vertex(cell, k);
                g.position[std::size_t(k)] = part.vertex_position(v);
                g.label[std::size_t(k)] = f[std::size_t(part.vertex_id(v))];
            }
            sum += cell_disperse_volume(g, cell_topology(s));
        }
        partial[std::size_t(chunk)] = sum;
    });
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

} // namespace isograph
