// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#include "isograph/mesh_io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace isograph {

static_assert(std::endian::native == std::endian::little, "binary formats assume a little-endian host");

namespace {

constexpr char kMagic[4] = {'I', 'S', 'O', 'G'};

class Reader {
public:
    explicit Reader(const std::string& bytes) : bytes_(bytes) {}

    template <class T>
    T take(const char* what)
    {
        if (pos_ + sizeof(T) > bytes_.size()) throw InputError(fmt::format("truncated field file: missing {}", what));
        T v;
        std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
        pos_ += sizeof(T);
        return v;
    }

    std::size_t remaining() const { return bytes_.size() - pos_; }

private:
    const std::string& bytes_;
    std::size_t pos_ = 0;
};

template <class T>
void put(std::string& out, T v)
{
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.append(buf, sizeof(T));
}

void check_dims(const Index3& dims)
{
    for (int a = 0; a < 3; ++a)
        if (dims[a] < 1 || dims[a] > (std::int64_t(1) << 20))
            throw InputError(fmt::format("invalid field dimension {} along axis {}", dims[a], a));
    if (dims[0] * dims[1] * dims[2] > (std::int64_t(1) << 31)) throw InputError("field too large");
}

FieldFile finish(const Index3& dims, const Vec3& spacing, const Vec3& origin, std::vector<double> values)
{
    FieldFile f;
    f.partition.dims = dims;
    f.partition.spacing = spacing;
    f.partition.origin = origin;
    f.partition.validate();
    f.field.dims = dims;
    f.field.values = std::move(values);
    f.field.validate(f.partition);
    return f;
}

FieldFile parse_binary(const std::string& bytes)
{
    Reader r(bytes);
    r.take<std::uint32_t>("magic");
    auto version = r.take<std::uint32_t>("version");
    if (version != 1 && version != 2) throw InputError(fmt::format("unsupported field version {}", version));
    Index3 dims;
    for (auto& d : dims) d = r.take<std::int64_t>("dimensions");
    check_dims(dims);
    Vec3 spacing = Vec3::Ones();
    Vec3 origin = Vec3::Zero();
    if (version == 2) {
        for (int a = 0; a < 3; ++a) spacing[a] = r.take<double>("spacing");
        for (int a = 0; a < 3; ++a) origin[a] = r.take<double>("origin");
    }
    const std::size_t n = std::size_t(dims[0] * dims[1] * dims[2]);
    if (r.remaining() < n * sizeof(double))
        throw InputError(fmt::format("truncated field file: {} of {} values present", r.remaining() / sizeof(double), n));
    if (r.remaining() > n * sizeof(double)) throw InputError("trailing bytes after field values");
    std::vector<double> values(n);
    for (auto& v : values) v = r.take<double>("values");
    return finish(dims, spacing, origin, std::move(values));
}

FieldFile parse_text(const std::string& bytes)
{
    std::istringstream in(bytes);
    std::string line;
    std::vector<std::string> tokens;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string t;
        while (ls >> t) tokens.push_back(t);
    }
    std::size_t pos = 0;
    auto next = [&](const char* what) -> const std::string& {
        if (pos >= tokens.size()) throw InputError(fmt::format("truncated text field: missing {}", what));
        return tokens[pos++];
    };
    auto number = [&](const char* what) {
        const std::string& t = next(what);
        try {
            std::size_t used = 0;
            double v = std::stod(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw InputError(fmt::format("malformed {} '{}' in text field", what, t));
        }
    };
    if (next("header") != "isog") throw InputError("text field must start with 'isog'");
    double version = number("version");
    if (version != 1.0 && version != 2.0) throw InputError("unsupported text field version");
    if (next("dims keyword") != "dims") throw InputError("expected 'dims' in text field");
    Index3 dims;
    for (auto& d : dims) {
        double v = number("dimension");
        if (v != std::floor(v)) throw InputError("non-integer field dimension");
        d = std::int64_t(v);
    }
    check_dims(dims);
    Vec3 spacing = Vec3::Ones();
    Vec3 origin = Vec3::Zero();
    for (;;) {
        const std::string& key = next("values keyword");
        if (key == "values") break;
        if (key == "spacing") {
            for (int a = 0; a < 3; ++a) spacing[a] = number("spacing");
        } else if (key == "origin") {
            for (int a = 0; a < 3; ++a) origin[a] = number("origin");
        } else {
            throw InputError(fmt::format("unknown key '{}' in text field", key));
        }
    }
    const std::size_t n = std::size_t(dims[0] * dims[1] * dims[2]);
    if (tokens.size() - pos < n)
        throw InputError(fmt::format("truncated text field: {} of {} values present", tokens.size() - pos, n));
    if (tokens.size() - pos > n) throw InputError("trailing tokens after field values");
    std::vector<double> values(n);
    for (auto& v : values) v = number("value");
    return finish(dims, spacing, origin, std::move(values));
}

std::string read_all(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(fmt::format("cannot open '{}'", path));
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_all(const std::string& path, const std::string& bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
    out.write(bytes.data(), std::streamsize(bytes.size()));
    if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", path));
}

std::string provenance_text(const MeshProvenance& p)
{
    std::string s = fmt::format("isograph {} iso-level {:.17g}", kVersion, p.iso_level);
    if (p.epsilon) s += fmt::format(" epsilon {:.17g}", *p.epsilon);
    return s;
}

} // namespace

FieldFile parse_field(const std::string& bytes)
{
    if (bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) == 0) return parse_binary(bytes);
    return parse_text(bytes);
}

FieldFile read_field(const std::string& path)
{
    return parse_field(read_all(path));
}

std::string encode_field(const FieldFile& file, FieldFormat format)
{
    file.partition.validate();
    file.field.validate(file.partition);
    const auto& d = file.partition.dims;
    std::string out;
    if (format == FieldFormat::Binary) {
        out.append(kMagic, 4);
        put<std::uint32_t>(out, 2);
        for (auto x : d) put<std::int64_t>(out, x);
        for (int a = 0; a < 3; ++a) put<double>(out, file.partition.spacing[a]);
        for (int a = 0; a < 3; ++a) put<double>(out, file.partition.origin[a]);
        for (double v : file.field.values) put<double>(out, v);
        return out;
    }
    const auto& s = file.partition.spacing;
    const auto& o = file.partition.origin;
    out += fmt::format("isog 2\ndims {} {} {}\nspacing {:.17g} {:.17g} {:.17g}\norigin {:.17g} {:.17g} {:.17g}\nvalues\n",
                       d[0], d[1], d[2], s[0], s[1], s[2], o[0], o[1], o[2]);
    for (std::size_t i = 0; i < file.field.values.size(); ++i)
        out += fmt::format("{:.17g}{}", file.field.values[i], (i + 1) % std::size_t(d[2]) == 0 ? '\n' : ' ');
    return out;
}

void write_field(const std::string& path, const FieldFile& file, FieldFormat format)
{
    write_all(path, encode_field(file, format));
}

std::optional<MeshFormat> mesh_format_from_name(const std::string& name)
{
    std::string n = name;
    std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    if (n == "obj") return MeshFormat::Obj;
    if (n == "ply") return MeshFormat::Ply;
    return std::nullopt;
}

std::optional<MeshFormat> mesh_format_from_path(const std::string& path)
{
    auto dot = path.rfind('.');
    if (dot == std::string::npos) return std::nullopt;
    return mesh_format_from_name(path.substr(dot + 1));
}

std::string encode_mesh(const SurfaceMesh& mesh, MeshFormat format, const MeshProvenance& provenance)
{
    const bool normals = mesh.normals.size() == mesh.vertices.size();
    std::string out;
    if (format == MeshFormat::Obj) {
        out += "# " + provenance_text(provenance) + "\n";
        out += fmt::format("# vertices {} triangles {} components {}\n", mesh.vertices.size(), mesh.triangles.size(),
                           mesh.component_count);
        for (const auto& v : mesh.vertices) out += fmt::format("v {:.17g} {:.17g} {:.17g}\n", v[0], v[1], v[2]);
        if (normals)
            for (const auto& n : mesh.normals) out += fmt::format("vn {:.17g} {:.17g} {:.17g}\n", n[0], n[1], n[2]);
        std::uint32_t comp = ~0u;
        for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
            if (t < mesh.component.size() && mesh.component[t] != comp) {
                comp = mesh.component[t];
                out += fmt::format("g component_{}\n", comp);
            }
            const auto& f = mesh.triangles[t];
            if (normals)
                out += fmt::format("f {0}//{0} {1}//{1} {2}//{2}\n", f[0] + 1, f[1] + 1, f[2] + 1);
            else
                out += fmt::format("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1);
        }
        return out;
    }
    const bool curvature = mesh.has_curvature && mesh.curvature.size() == mesh.vertices.size();
    out += "ply\nformat binary_little_endian 1.0\n";
    out += "comment " + provenance_text(provenance) + "\n";
    out += fmt::format("element vertex {}\n", mesh.vertices.size());
    out += "property double x\nproperty double y\nproperty double z\n";
    out += "property double nx\nproperty double ny\nproperty double nz\n";
    if (curvature) out += "property double curvature\n";
    out += fmt::format("element face {}\n", mesh.triangles.size());
    out += "property list uchar int vertex_indices\nproperty int component_id\nend_header\n";
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        for (int a = 0; a < 3; ++a) put<double>(out, mesh.vertices[i][a]);
        Vec3 n = normals ? mesh.normals[i] : Vec3::Zero();
        for (int a = 0; a < 3; ++a) put<double>(out, n[a]);
        if (curvature) put<double>(out, mesh.curvature[i]);
    }
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        put<std::uint8_t>(out, 3);
        for (auto v : mesh.triangles[t]) put<std::int32_t>(out, std::int32_t(v));
        put<std::int32_t>(out, t < mesh.component.size() ? std::int32_t(mesh.component[t]) : 0);
    }
    return out;
}

void write_mesh(const SurfaceMesh& mesh, MeshFormat format, const std::string& path, const MeshProvenance& provenance)
{
    write_all(path, encode_mesh(mesh, format, provenance));
}

} // namespace isograph
