// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#ifndef ISOGRAPH_SURFACE_GEOMETRY_HPP
#define ISOGRAPH_SURFACE_GEOMETRY_HPP

/// \file surface_geometry.hpp
/// Pseudo-normals and orientation, surface regions around iso-points, discrete mean
/// curvature and the welded triangle mesh.

#include "isograph/surface_components.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace isograph {

using IVec3 = std::array<std::int64_t, 3>;

struct PseudoNormal {
    Vec3 p = Vec3::Zero();
    std::uint8_t disperse = 0;
    int disperse_count = 0;
    bool degenerate = false;
};

/// Sum over disperse j and continuous i of (C_i - D_j).
Vec3 pseudo_normal_double_sum(const std::array<Vec3, 8>& corners, std::uint8_t disperse);
/// |N_d| * (sum of all corners) - 8 * (sum of disperse corners).
Vec3 pseudo_normal_closed_form(const std::array<Vec3, 8>& corners, std::uint8_t disperse);
IVec3 pseudo_normal_double_sum(const std::array<IVec3, 8>& corners, std::uint8_t disperse);
IVec3 pseudo_normal_closed_form(const std::array<IVec3, 8>& corners, std::uint8_t disperse);

/// Throws NoInterfaceError when the mask is empty or full.
PseudoNormal pseudo_normal(const std::array<Vec3, 8>& corners, std::uint8_t disperse);
PseudoNormal pseudo_normal(const LabeledCuboidGraph& g);

/// Pseudo-normal of the piece an iso-path was extracted from, on its cell's corners.
/// Outer paths use the disperse corners of their face.
PseudoNormal path_pseudo_normal(const IsoSurface& surf, std::size_t path);

/// Sum of the fan triangle area vectors of an iso-path, following its traversal order.
Vec3 path_area_vector(const IsoSurface& surf, std::size_t path);

/// Reverses the traversal of a path, keeping per-line faces and disperse masks attached to their lines.
void reverse_path(IsoPath& path);

struct OrientationReport {
    /// Paths whose traversal must be reversed.
    std::vector<bool> flip;
    std::size_t flipped = 0;
    /// Paths with a vanishing pseudo-normal test, oriented from matched neighbors.
    std::size_t inherited = 0;
    /// Degenerate paths without any oriented neighbor.
    std::size_t isolated = 0;
    /// Fan triangles whose normal has a negative dot with their path's pseudo-normal.
    std::size_t sign_exceptions = 0;
    /// Matched iso-lines traversed in the same direction by both paths after orientation.
    std::size_t inconsistent_lines = 0;
};

/// Decides the orientation of every path. Does not modify the surface.
OrientationReport orient_elements(const IsoSurface& surf, const ComponentDecomposition& comps);

/// Applies the flips of a report. Line indices of an earlier decomposition become stale.
void apply_orientation(IsoSurface& surf, const OrientationReport& report);

/// Orients the surface and rebuilds its decomposition.
OrientationReport orient_surface(IsoSurface& surf, ComponentDecomposition& comps);

struct SurfaceRegion {
    std::uint32_t point = 0;
    Vec3 center = Vec3::Zero();
    std::vector<std::uint32_t> ring_points;
    /// Triangles of the region, each with the region's point as first vertex.
    std::vector<std::array<Vec3, 3>> triangles;
    /// Third vertex of the mesh triangle across the boundary edge of each region triangle.
    std::vector<std::optional<Vec3>> outer_apex;
    /// Neighbouring iso-points and the path centers in use.
    std::vector<Vec3> support;
    /// Sum of the oriented area vectors of the ring paths.
    Vec3 normal = Vec3::Zero();
    bool closed = false;
};

SurfaceRegion surface_region(const IsoSurface& surf, const ComponentDecomposition& comps, const NeighborRing& ring);

struct CurvatureEstimate {
    double mean_curvature = 0.0;
    double area = 0.0;
    bool valid = false;
    int excluded_triangles = 0;
};

/// Discretizations of the integral of the Laplace-Beltrami operator of x over a fan.
///
/// Conormal: Gauss's theorem over the whole region, with the conormal on each boundary edge
/// bisecting the region triangle and the mesh triangle beyond it. For a region it is divided by
/// the iso-line area of the region, for a bare fan by the fan area.
/// The cotangent schemes use the gradient of the fan area at its center, divided by the whole
/// region area, the mixed Voronoi area, or one third of the region area.
enum class CurvatureScheme : std::uint8_t { Conormal, RegionCotangent, MixedCotangent, OneThirdCotangent };

/// Mean curvature (sum of principal curvatures) at the center of a fan whose triangles all start
/// at `center`. Positive when the fan bends away from `normal`: a sphere with outward normal gives 2/R.
/// `outer_apex` is used by the conormal scheme only; missing entries fall back to the triangle's own conormal.
CurvatureEstimate mean_curvature(const Vec3& center, const std::vector<std::array<Vec3, 3>>& triangles,
                                 const Vec3& normal, CurvatureScheme scheme = CurvatureScheme::Conormal,
                                 const std::vector<std::optional<Vec3>>& outer_apex = {});
CurvatureEstimate mean_curvature(const SurfaceRegion& region, CurvatureScheme scheme = CurvatureScheme::Conormal);

/// Curvature at an iso-point with exactly one closed ring; invalid otherwise.
CurvatureEstimate point_curvature(const IsoSurface& surf, const ComponentDecomposition& comps, std::uint32_t point,
                                  CurvatureScheme scheme = CurvatureScheme::Conormal);

/// Curvature at the center of a path with more than three points, over its own fan.
CurvatureEstimate center_curvature(const IsoSurface& surf, const ComponentDecomposition& comps, std::size_t path,
                                   CurvatureScheme scheme = CurvatureScheme::Conormal);

struct SurfaceMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<std::uint32_t, 3>> triangles;
    std::vector<std::uint32_t> component;
    std::vector<Vec3> normals;
    std::vector<double> curvature;
    bool has_curvature = false;
    std::size_t component_count = 0;

    /// V - E + F over the whole mesh or one component.
    long euler_characteristic() const;
    long euler_characteristic(std::uint32_t comp) const;
    double area() const;
};

struct MeshOptions {
    bool curvature = false;
    CurvatureScheme scheme = CurvatureScheme::Conormal;
    int threads = 1;
};

/// Welded mesh of an oriented surface: iso-points first, then path centers.
SurfaceMesh build_mesh(const IsoSurface& surf, const ComponentDecomposition& comps, const MeshOptions& options = {});

} // namespace isograph

#endif
