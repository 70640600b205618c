// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#ifndef ISOGRAPH_FIXTURES_HPP
#define ISOGRAPH_FIXTURES_HPP

/// \file fixtures.hpp
/// Synthetic fields on the unit cube used by the tests, the verifier and the CLI.

#include "isograph/scalar_grid.hpp"

#include <cstdint>

namespace isograph::fixtures {

/// Unit cube split into n^3 cells.
CuboidPartition unit_grid(std::int64_t n);

/// Volume fractions of a ball. Cells cut by the sphere are sampled on a samples^3 lattice.
VolumeFractionField ball_fractions(const CuboidPartition& part, const Vec3& center, double radius, int samples = 8);

/// Ball of radius 0.3 at the center of the unit cube.
VolumeFractionField sphere(std::int64_t n, CuboidPartition& part, int samples = 8);

/// Two disjoint balls of radius 0.15 centered at x = 0.3 and x = 0.7.
VolumeFractionField two_spheres(std::int64_t n, CuboidPartition& part, int samples = 8);

/// Exact fractions of the slab lo <= x <= hi.
VolumeFractionField slab(std::int64_t n, CuboidPartition& part, double lo = 0.3, double hi = 0.7);

/// Independent uniform fractions in [0, 1].
VolumeFractionField random_fractions(std::int64_t n, std::uint64_t seed, CuboidPartition& part);

/// Node labels 0.5 + (R - |x - center|) * n / 4, clipped to [0, 1]: a ball of radius R
/// whose labels vary linearly with the distance across a band of four cells.
NodeLabeling distance_ball(std::int64_t n, double radius, CuboidPartition& part);

/// Two boxes of 2x2x4 cells whose only common points form one lattice edge along z.
/// Box nodes are labeled 1, the shared edge 0.5, all others 0. Grid of 8^3 cells.
NodeLabeling edge_touching_boxes(CuboidPartition& part);

} // namespace isograph::fixtures

#endif
