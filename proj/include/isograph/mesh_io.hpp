// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#ifndef ISOGRAPH_MESH_IO_HPP
#define ISOGRAPH_MESH_IO_HPP

/// \file mesh_io.hpp
/// Volume-fraction field files and mesh export.
///
/// Binary field layout, little endian:
///   "ISOG", u32 version, i64 nx, ny, nz,
///   version 2 only: f64 spacing[3], f64 origin[3],
///   nx*ny*nz f64 values, cell (i, j, k) at index (i*ny + j)*nz + k.
/// Version 1 files use unit spacing and a zero origin.
///
/// Text field layout, whitespace separated:
///   isog 2
///   dims nx ny nz
///   spacing sx sy sz      (optional)
///   origin ox oy oz       (optional)
///   values
///   v0 v1 ...
/// Lines starting with '#' are ignored.

#include "isograph/surface_geometry.hpp"

#include <optional>
#include <string>

namespace isograph {

struct FieldFile {
    VolumeFractionField field;
    CuboidPartition partition;
};

enum class FieldFormat : std::uint8_t { Binary, Text };

/// Reads either encoding, detected from the first bytes. Throws InputError for malformed headers,
/// truncated payloads and values outside [0, 1] (the message names the cell).
FieldFile read_field(const std::string& path);
FieldFile parse_field(const std::string& bytes);

/// Binary files are written as version 2.
void write_field(const std::string& path, const FieldFile& file, FieldFormat format = FieldFormat::Binary);
std::string encode_field(const FieldFile& file, FieldFormat format);

enum class MeshFormat : std::uint8_t { Obj, Ply };

/// "obj" or "ply", case-insensitive; nullopt otherwise.
std::optional<MeshFormat> mesh_format_from_name(const std::string& name);
/// From the extension of a path.
std::optional<MeshFormat> mesh_format_from_path(const std::string& path);

/// Written as a comment at the top of every mesh file.
struct MeshProvenance {
    double iso_level = 0.5;
    std::optional<double> epsilon;
};

/// OBJ: v, vn and f records with 1-based indices.
/// PLY: binary little endian; vertices x y z nx ny nz [curvature], faces with vertex_indices and component_id.
std::string encode_mesh(const SurfaceMesh& mesh, MeshFormat format, const MeshProvenance& provenance);
void write_mesh(const SurfaceMesh& mesh, MeshFormat format, const std::string& path, const MeshProvenance& provenance);

} // namespace isograph

#endif
