// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#ifndef ISOGRAPH_SCALAR_GRID_HPP
#define ISOGRAPH_SCALAR_GRID_HPP

/// \file scalar_grid.hpp
/// Cuboid partition of the domain, cell volume fractions, vertex labels and the
/// volume-conserving iso-level solve.
///
/// Cells and vertices are stored row-major: the k index varies fastest.

#include "isograph/common.hpp"

#include <cstdint>
#include <vector>

namespace isograph {

struct CuboidPartition {
    Index3 dims{1, 1, 1};
    Vec3 origin = Vec3::Zero();
    Vec3 spacing = Vec3::Ones();

    void validate() const;

    std::int64_t cell_count() const { return dims[0] * dims[1] * dims[2]; }
    Index3 vertex_dims() const { return {dims[0] + 1, dims[1] + 1, dims[2] + 1}; }
    std::int64_t vertex_count() const { return (dims[0] + 1) * (dims[1] + 1) * (dims[2] + 1); }

    std::int64_t cell_id(const Index3& c) const { return (c[0] * dims[1] + c[1]) * dims[2] + c[2]; }
    Index3 cell_index(std::int64_t id) const
    {
        return {id / (dims[1] * dims[2]), (id / dims[2]) % dims[1], id % dims[2]};
    }
    std::int64_t vertex_id(const Index3& v) const
    {
        return (v[0] * (dims[1] + 1) + v[1]) * (dims[2] + 1) + v[2];
    }
    Index3 vertex_index(std::int64_t id) const
    {
        const std::int64_t ny = dims[1] + 1;
        const std::int64_t nz = dims[2] + 1;
        return {id / (ny * nz), (id / nz) % ny, id % nz};
    }
    bool contains_cell(const Index3& c) const
    {
        return c[0] >= 0 && c[1] >= 0 && c[2] >= 0 && c[0] < dims[0] && c[1] < dims[1] && c[2] < dims[2];
    }
    bool contains_vertex(const Index3& v) const
    {
        return v[0] >= 0 && v[1] >= 0 && v[2] >= 0 && v[0] <= dims[0] && v[1] <= dims[1] && v[2] <= dims[2];
    }
    Vec3 vertex_position(const Index3& v) const
    {
        return Vec3(origin[0] + double(v[0]) * spacing[0], origin[1] + double(v[1]) * spacing[1],
                    origin[2] + double(v[2]) * spacing[2]);
    }
    /// True when the cell touches the domain boundary.
    bool is_boundary_cell(const Index3& c) const;
    /// True when the vertex lies on the domain boundary.
    bool is_boundary_vertex(const Index3& v) const;
    double cell_volume() const { return spacing[0] * spacing[1] * spacing[2]; }
};

struct VolumeFractionField {
    Index3 dims{1, 1, 1};
    std::vector<double> values;

    void validate(const CuboidPartition& part) const;
    double at(const Index3& c) const { return values[std::size_t((c[0] * dims[1] + c[1]) * dims[2] + c[2])]; }
};

struct NodeLabeling {
    Index3 vertex_dims{2, 2, 2};
    std::vector<double> labels;

    double at(std::int64_t vertex_id) const { return labels[std::size_t(vertex_id)]; }
};

struct IsoLevelSolve {
    double iso_level = 0.5;
    double residual = 0.0;
    double enclosed_volume = 0.0;
    double target_volume = 0.0;
    double epsilon = 1e-9;
    double bracket_lo = 0.0;
    double bracket_hi = 1.0;
    int iterations = 0;
    /// False when gamma jumps across zero and |gamma| < epsilon cannot be reached.
    bool attained = false;
    /// Size of the jump of gamma across the final bracket when not attained.
    double jump = 0.0;
};

struct SolveOptions {
    double epsilon = 1e-9;
    int max_iterations = 200;
    double iso_tolerance = kDefaultIsoTolerance;
    int threads = 1;
};

NodeLabeling label_vertices(const VolumeFractionField& field, const CuboidPartition& part);

/// Volume of the disperse side of the iso-surface at level c.
double enclosed_volume(const NodeLabeling& labels, const CuboidPartition& part, double c,
                       double iso_tolerance = kDefaultIsoTolerance, int threads = 1);

/// Target volume sum v(C_i)|C_i| of the field.
double target_volume(const VolumeFractionField& field, const CuboidPartition& part);

/// gamma(c) = 1 - enclosed_volume(c) / target volume.
double volume_residual(const NodeLabeling& labels, const CuboidPartition& part, double target, double c,
                       double iso_tolerance = kDefaultIsoTolerance, int threads = 1);

IsoLevelSolve solve_iso_level(const NodeLabeling& labels, const CuboidPartition& part,
                              const VolumeFractionField& field, double epsilon);
IsoLevelSolve solve_iso_level(const NodeLabeling& labels, const CuboidPartition& part,
                              const VolumeFractionField& field, const SolveOptions& options);

} // namespace isograph

#endif
