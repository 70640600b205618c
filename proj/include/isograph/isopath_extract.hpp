// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#ifndef ISOGRAPH_ISOPATH_EXTRACT_HPP
#define ISOGRAPH_ISOPATH_EXTRACT_HPP

/// \file isopath_extract.hpp
/// Iso-point interpolation, iso-path assembly per cell and the grid-wide extraction.
///
/// Iso-lines are built between "crossing edges": cube edges joining a disperse and a
/// continuous corner. A crossing edge whose continuous end is an iso-node yields that
/// node as its iso-point, otherwise the interpolated point inside the edge.
///
/// Global iso-point keys: a lattice node v has key (v << 2) | 3, the crossing on the
/// lattice edge leaving v along axis a has key (v << 2) | a. Global face keys use the
/// face's lowest vertex and its normal axis in the same way.

#include "isograph/cube_graph.hpp"
#include "isograph/rewrite_rules.hpp"
#include "isograph/scalar_grid.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace isograph {

struct IsoPoint {
    Vec3 position = Vec3::Zero();
    std::uint64_t key = 0;
    double f0 = 0.0;
    double f1 = 0.0;
    bool iso_node = false;
};

/// Iso-point on the segment x0-x1 iff f0 <= c < f1 or f1 <= c < f0.
std::optional<IsoPoint> interpolate_edge(const Vec3& x0, const Vec3& x1, double f0, double f1, double c);

enum class PathKind : std::uint8_t { Inner, Outer };
enum class PathOrigin : std::uint8_t { S1, S2, S3, Rest, Outer };
enum class LineKind : std::uint8_t { FaceChord, FaceDiagonal, LatticeEdge };

const char* to_string(PathOrigin o);

/// A cyclically ordered iso-path inside one signature's cell frame.
struct LocalPath {
    /// Crossing cube edge of every vertex.
    std::vector<std::uint8_t> edges;
    /// Local point id (corner 0..7 or edge 8..19) of every vertex.
    std::vector<std::uint8_t> points;
    /// Face carrying the iso-line from vertex i to vertex i+1.
    std::vector<std::uint8_t> faces;
    /// Corresponding disperse corners of that iso-line.
    std::vector<std::uint8_t> disperse;
    PathOrigin origin = PathOrigin::Rest;
    /// Disperse corners of the irreducible piece the path was extracted from.
    std::uint8_t piece_disperse = 0;

    std::size_t size() const { return points.size(); }
};

/// Inner iso-paths of a stripped cell, shared by every cell with the same stripped signature.
struct CellTopology {
    StateMask stripped;
    std::vector<LocalPath> paths;
    std::uint8_t l_faces = 0;
    std::uint8_t nontrivial_l_faces = 0;
    /// L-faces whose disperse nodes are joined across the face.
    std::uint8_t joined_faces = 0;
    bool valid = false;
};

/// Builds the topology of a stripped mask. Throws ContractError for masks with T- or F-patterns.
CellTopology build_cell_topology(StateMask stripped);

/// Memoized build_cell_topology over all 6561 signatures.
const CellTopology& cell_topology(StateMask stripped);

/// Single inner path of an irreducible mask, every corner state taken from m.
/// Throws ContractError unless the C-rule iso-lines form exactly one cycle.
LocalPath irreducible_path(StateMask m);

/// Position of a local point for a cell with the given corner positions and labels.
Vec3 local_point_position(const LabeledCuboidGraph& g, StateMask stripped, std::uint8_t crossing_edge);

/// Outward unit normal of a local face in the unit cube.
Vec3 face_normal(int face);

struct IsoPath {
    std::vector<std::uint32_t> points;
    /// Global face key of the iso-line from vertex i to vertex i+1.
    std::vector<std::uint64_t> faces;
    /// Corresponding disperse corners, as a corner mask of the owning cell.
    std::vector<std::uint8_t> disperse;
    PathKind kind = PathKind::Inner;
    PathOrigin origin = PathOrigin::Rest;
    Index3 cell{0, 0, 0};
    std::uint8_t piece_disperse = 0;
    Vec3 center = Vec3::Zero();

    std::size_t size() const { return points.size(); }
};

/// Triangle fan of an iso-path: one triangle for m = 3, otherwise m triangles around the center.
struct IsoElement {
    std::uint32_t path = 0;
    std::vector<std::array<Vec3, 3>> triangles;
};

/// Result of a per-cell extraction in a local point table. Point keys are local point ids.
struct CellExtraction {
    std::vector<IsoPoint> points;
    std::vector<IsoPath> paths;
    std::vector<IsoElement> elements;
};

/// Inner iso-path of an irreducible graph. Throws ContractError for reducible or stripped-pattern input.
CellExtraction inner_isopath(const LabeledCuboidGraph& g);

/// Iso-paths of one cell: strip, decomposition, rest path.
CellExtraction extract_cell(const LabeledCuboidGraph& g, const FaceNeighbors& neighbors);

/// Face-resident path on the face shared by g1 (local face `face`) and its neighbor g2,
/// both already stripped. Returned in g1's frame.
std::optional<CellExtraction> outer_isopath(int face, const LabeledCuboidGraph& g1, const LabeledCuboidGraph& g2);

std::vector<std::array<Vec3, 3>> fan_triangles(const std::vector<Vec3>& polygon, const Vec3& center);

struct ExtractOptions {
    int threads = 1;
    double iso_tolerance = kDefaultIsoTolerance;
};

/// The iso-surface of a labeled grid: welded iso-points and all iso-paths.
struct IsoSurface {
    CuboidPartition partition;
    double iso_level = 0.5;
    /// Sorted by key.
    std::vector<IsoPoint> points;
    /// Cell-major; inner paths of a cell first, then the outer paths it owns.
    std::vector<IsoPath> paths;
    /// Stripped state mask of every cell.
    std::vector<StateMask> stripped;
    /// Vertex labels after snapping to the iso-level.
    std::vector<double> labels;

    std::optional<std::uint32_t> find_point(std::uint64_t key) const;
    std::vector<Vec3> path_positions(std::size_t path) const;
    IsoElement element(std::size_t path) const;
    LineKind line_kind(std::uint32_t a, std::uint32_t b) const;
    std::size_t triangle_count() const;
};

namespace keys {

constexpr std::uint64_t node(std::int64_t vertex) { return (std::uint64_t(vertex) << 2) | 3u; }
constexpr std::uint64_t edge(std::int64_t lower_vertex, int axis) { return (std::uint64_t(lower_vertex) << 2) | unsigned(axis); }
constexpr std::uint64_t face(std::int64_t lower_vertex, int axis) { return (std::uint64_t(lower_vertex) << 2) | unsigned(axis); }
constexpr bool is_node(std::uint64_t key) { return (key & 3u) == 3u; }
constexpr std::int64_t vertex_of(std::uint64_t key) { return std::int64_t(key >> 2); }
constexpr int axis_of(std::uint64_t key) { return int(key & 3u); }

} // namespace keys

/// Vertex of a cell corner.
Index3 corner_vertex(const Index3& cell, int corner);
std::uint64_t local_face_key(const CuboidPartition& part, const Index3& cell, int face);

/// Snapped labels and stripped masks of every cell.
std::vector<double> snapped_labels(const NodeLabeling& labels, double c, double tau);
std::vector<StateMask> strip_cells(const std::vector<double>& snapped, const CuboidPartition& part, double c,
                                   int threads = 1);

IsoSurface extract_grid(const NodeLabeling& labels, const CuboidPartition& part, double c,
                        const ExtractOptions& options = {});

} // namespace isograph

#endif
