// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#ifndef ISOGRAPH_SURFACE_COMPONENTS_HPP
#define ISOGRAPH_SURFACE_COMPONENTS_HPP

/// \file surface_components.hpp
/// Cell neighborhoods, iso-line incidence, pairing of iso-paths at shared iso-lines,
/// component decomposition and the connectivity audit.

#include "isograph/isopath_extract.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace isograph {

/// The cells sharing a face or an edge with a center cell, plus the center itself.
struct GraphNeighborhood {
    Index3 center{0, 0, 0};
    std::vector<Index3> cells;
    /// True when the center touches the domain boundary and some cells are missing.
    bool truncated = false;
};

GraphNeighborhood build_neighborhood(const Index3& cell, const CuboidPartition& part);

/// Simple open path of lattice vertices joined by edges whose endpoints are both disperse.
struct DispersePath {
    std::vector<std::int64_t> vertices;
};

/// One iso-path passing an iso-line.
struct Incidence {
    std::uint32_t path = 0;
    /// Index of the iso-line inside the path (from vertex i to vertex i+1).
    std::uint32_t edge = 0;
    std::uint64_t face = 0;
    /// Global vertex ids of the corresponding disperse nodes.
    std::vector<std::int64_t> disperse;
};

struct EdgeIncidenceRecord {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    LineKind kind = LineKind::FaceChord;
    /// The iso-line lies in the domain boundary.
    bool boundary = false;
    std::vector<Incidence> incident;
    /// Matched pairs as indices into `incident`.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;

    std::size_t count() const { return incident.size(); }
};

/// All iso-lines of the surface with their incident paths, sorted by (a, b).
std::vector<EdgeIncidenceRecord> build_line_incidence(const IsoSurface& surf);

/// Shortest disperse path between two vertex sets inside the union of the neighborhoods of the
/// given cells. Returns an empty path when none exists; a single vertex when the sets intersect.
DispersePath find_disperse_path(const IsoSurface& surf, const std::vector<std::int64_t>& from,
                                const std::vector<std::int64_t>& to, const std::vector<Index3>& cells);

/// Disperse connectedness of two incident paths at one iso-line.
bool disperse_connected(const IsoSurface& surf, const EdgeIncidenceRecord& rec, std::uint32_t i, std::uint32_t j);

/// Perfect matching of the incident paths. Throws ContractError for an odd incidence.
std::vector<std::pair<std::uint32_t, std::uint32_t>> pair_at_edge(const EdgeIncidenceRecord& rec,
                                                                 const IsoSurface& surf);

/// Number of perfect matchings of the incident paths in which every pair is disperse connected.
int count_connected_matchings(const IsoSurface& surf, const EdgeIncidenceRecord& rec);

struct SurfaceComponent {
    std::uint32_t id = 0;
    std::vector<std::uint32_t> members;
    /// No member touches a boundary iso-line.
    bool closed = true;
};

struct ComponentDecomposition {
    std::vector<SurfaceComponent> components;
    /// Component index of every path.
    std::vector<std::uint32_t> component_of;
    std::vector<EdgeIncidenceRecord> lines;
    /// Path edge slots: edge j of path p is slot slot_offset[p] + j.
    std::vector<std::size_t> slot_offset;
    /// Slot of the paired path edge across the same iso-line, or -1.
    std::vector<std::int64_t> partner;
    /// Paths through each iso-point (CSR over point indices).
    std::vector<std::size_t> point_offset;
    std::vector<std::uint32_t> point_paths;

    std::pair<std::uint32_t, std::uint32_t> slot_of(std::size_t slot) const;
};

/// Pairs every iso-line and merges paired paths. Components are ordered by their smallest member.
ComponentDecomposition decompose_components(const IsoSurface& surf);

/// Cyclic sequence of paths around an iso-point, chained through paired iso-lines.
struct NeighborRing {
    std::uint32_t point = 0;
    std::vector<std::uint32_t> paths;
    /// The iso-line shared by paths[i] and paths[i+1] ends at ring_points[i].
    std::vector<std::uint32_t> ring_points;
    bool closed = false;
};

/// All rings through an iso-point (more than one where components touch at the point).
std::vector<NeighborRing> neighbor_rings(std::uint32_t point, const IsoSurface& surf,
                                         const ComponentDecomposition& comps);

struct AuditViolation {
    std::string kind;
    std::string detail;
};

struct AuditReport {
    std::vector<AuditViolation> violations;
    std::size_t lines = 0;
    std::size_t interior_lines = 0;
    std::size_t boundary_lines = 0;
    std::size_t points_checked = 0;
    std::size_t rings_checked = 0;
    std::size_t components = 0;
    std::array<std::size_t, 9> incidence_histogram{};
    int min_ring = 0;
    int max_ring = 0;

    bool ok() const { return violations.empty(); }
    /// One violation per line, followed by a summary block.
    std::string to_text() const;
};

struct AuditOptions {
    bool check_rings = true;
    bool check_uniqueness = false;
};

AuditReport audit_connectivity(const IsoSurface& surf, const ComponentDecomposition& comps,
                               const AuditOptions& options = {});
AuditReport audit_connectivity(const IsoSurface& surf, const AuditOptions& options = {});

/// True when the iso-point lies in the domain boundary.
bool point_on_boundary(const IsoSurface& surf, std::uint32_t point);

} // namespace isograph

#endif
