// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#ifndef ISOGRAPH_TOPO_VERIFY_HPP
#define ISOGRAPH_TOPO_VERIFY_HPP

/// \file topo_verify.hpp
/// Machine checks of the finite topological claims: every per-cell signature, constructed
/// and random rings of four cells around a lattice edge, and random fields.

#include "isograph/surface_components.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace isograph {

/// One per-cell signature placed at the center of a 3x3x3 block whose other nodes are all sub.
struct EmbeddedSignature {
    std::uint16_t code = 0;
    StateMask mask;
    CuboidPartition partition;
    NodeLabeling labels;
    /// Index of the center cell in the block.
    Index3 center{1, 1, 1};
};

/// Labels 0, 0.5 and 1 for sub, iso and disperse nodes at iso-level 0.5.
EmbeddedSignature embed_signature(std::uint16_t code);

/// All 6561 signatures in code order: all-sub first, all-disperse last.
std::vector<EmbeddedSignature> enumerate_signatures();

struct TheoremCheck {
    std::string id;
    /// The claim in one sentence.
    std::string claim;
    std::string domain;
    std::size_t cases = 0;
    std::size_t failures = 0;
    /// First failing case, enough to rebuild it (a signature code, a ring labeling or a field seed).
    std::string counterexample;
    std::string detail;

    bool passed() const { return failures == 0; }
};

struct VerifyOptions {
    std::uint64_t seed = 20240611;
    std::size_t ring_samples = 1000000;
    std::size_t random_fields = 100;
    std::int64_t field_size = 16;
    int threads = 1;
};

struct VerifyReport {
    std::vector<TheoremCheck> checks;
    /// Observations outside the registered checks; they do not affect ok().
    std::vector<std::string> notes;

    bool ok() const;
    const TheoremCheck* find(const std::string& id) const;
    /// One line per check, then the counterexamples.
    std::string to_text() const;
};

/// Labels of a ring of four cells (2x2x1 block) around its central lattice edge along z.
/// Both edge nodes are iso; the other 16 nodes take the given states (0 sub, 1 iso, 2 disperse)
/// in vertex order.
NodeLabeling ring_labels(const std::array<std::uint8_t, 16>& states, CuboidPartition& part);

/// States of random ring number `index` under `seed`.
std::array<std::uint8_t, 16> random_ring(std::uint64_t seed, std::size_t index);

/// Node labels of random field number `index` under `seed`: independent uniform volume fractions.
NodeLabeling random_field(std::uint64_t seed, std::size_t index, std::int64_t n, CuboidPartition& part);

// Individual checks. Each one is deterministic for fixed options.
TheoremCheck check_cell_path_bound();
TheoremCheck check_irreducible_single_path();
TheoremCheck check_trivial_l_face_pairs();
TheoremCheck check_diagonal_pairs();
TheoremCheck check_singular_faces();
TheoremCheck check_l_face_table();
TheoremCheck check_edge_parity(const VerifyOptions& options);
TheoremCheck check_signature_connectivity();
TheoremCheck check_field_connectivity(const VerifyOptions& options);
/// Random fields plus the sphere (32^3) and slab (16^3) fixtures.
TheoremCheck check_field_rings(const VerifyOptions& options);
/// Ring sizes over all embedded signatures, as text.
std::string signature_ring_note();

VerifyReport check_all(const VerifyOptions& options = {});

} // namespace isograph

#endif
