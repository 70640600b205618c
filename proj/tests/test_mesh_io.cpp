// Field files and mesh export.

#include "isograph/fixtures.hpp"
#include "isograph/mesh_io.hpp"

#include <doctest.h>

#include <cstring>
#include <sstream>

using namespace isograph;

namespace {

FieldFile sample_field()
{
    FieldFile f;
    f.field = fixtures::random_fractions(3, 11, f.partition);
    f.partition.dims = {3, 3, 3};
    f.partition.spacing = Vec3(0.1, 0.2, 0.3);
    f.partition.origin = Vec3(-1.0, 0.5, 2.0);
    return f;
}

SurfaceMesh one_triangle()
{
    SurfaceMesh m;
    m.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
    m.normals = {Vec3(0, 0, 1), Vec3(0, 0, 1), Vec3(0, 0, 1)};
    m.triangles = {{0, 1, 2}};
    m.component = {0};
    m.component_count = 1;
    return m;
}

std::size_t count_prefix(const std::string& text, const std::string& prefix)
{
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) n += line.rfind(prefix, 0) == 0;
    return n;
}

} // namespace

TEST_CASE("binary field round trip is bitwise exact")
{
    FieldFile f = sample_field();
    std::string bytes = encode_field(f, FieldFormat::Binary);
    CHECK(bytes.substr(0, 4) == "ISOG");
    CHECK(bytes.size() == 4 + 4 + 3 * 8 + 6 * 8 + 27 * 8);
    FieldFile g = parse_field(bytes);
    CHECK(g.partition.dims == f.partition.dims);
    CHECK(g.partition.spacing == f.partition.spacing);
    CHECK(g.partition.origin == f.partition.origin);
    REQUIRE(g.field.values.size() == f.field.values.size());
    CHECK(std::memcmp(g.field.values.data(), f.field.values.data(), f.field.values.size() * sizeof(double)) == 0);
    CHECK(encode_field(g, FieldFormat::Binary) == bytes);
}

TEST_CASE("text and binary encodings load identically")
{
    FieldFile f = sample_field();
    FieldFile a = parse_field(encode_field(f, FieldFormat::Text));
    FieldFile b = parse_field(encode_field(f, FieldFormat::Binary));
    CHECK(a.field.values == b.field.values);
    CHECK(a.partition.spacing == b.partition.spacing);
    CHECK(a.partition.origin == b.partition.origin);
    FieldFile c = parse_field("# comment\nisog 2\ndims 1 1 2 # trailing\nvalues\n0.25 1\n");
    CHECK(c.field.values == std::vector<double>{0.25, 1.0});
    CHECK(c.partition.spacing == Vec3::Ones());
}

TEST_CASE("version 1 binary files use unit spacing")
{
    std::string bytes = "ISOG";
    auto put = [&](auto v) { bytes.append(reinterpret_cast<const char*>(&v), sizeof(v)); };
    put(std::uint32_t(1));
    put(std::int64_t(1));
    put(std::int64_t(1));
    put(std::int64_t(1));
    put(0.75);
    FieldFile f = parse_field(bytes);
    CHECK(f.partition.spacing == Vec3::Ones());
    CHECK(f.field.values[0] == 0.75);
}

TEST_CASE("malformed field input")
{
    FieldFile f = sample_field();
    std::string bytes = encode_field(f, FieldFormat::Binary);
    CHECK_THROWS_AS(parse_field(bytes.substr(0, bytes.size() - 3)), InputError);
    CHECK_THROWS_AS(parse_field(bytes.substr(0, 10)), InputError);
    CHECK_THROWS_AS(parse_field(bytes + "x"), InputError);
    CHECK_THROWS_AS(parse_field("isog 2\ndims 2 1 1\nvalues\n0.5\n"), InputError);
    CHECK_THROWS_AS(parse_field("isog 2\ndims 1 1 1\nvalues\nabc\n"), InputError);
    CHECK_THROWS_AS(parse_field("hello"), InputError);
    CHECK_THROWS_AS(parse_field("isog 2\ndims 0 1 1\nvalues\n"), InputError);
    try {
        parse_field("isog 2\ndims 1 2 1\nvalues\n0.5 1.5\n");
        FAIL("accepted a volume fraction of 1.5");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("(0,1,0)") != std::string::npos);
    }
    CHECK_THROWS_AS(read_field("/nonexistent/field.isog"), InputError);
}

TEST_CASE("OBJ of a single triangle")
{
    std::string obj = encode_mesh(one_triangle(), MeshFormat::Obj, MeshProvenance{0.5, 1e-9});
    CHECK(count_prefix(obj, "v ") == 3);
    CHECK(count_prefix(obj, "vn ") == 3);
    CHECK(count_prefix(obj, "f ") == 1);
    CHECK(obj.find("f 1//1 2//2 3//3") != std::string::npos);
    CHECK(obj.find("iso-level 0.5") != std::string::npos);
    CHECK(obj.find("epsilon") != std::string::npos);
    CHECK(encode_mesh(one_triangle(), MeshFormat::Obj, MeshProvenance{0.5, {}}).find("epsilon") == std::string::npos);
}

TEST_CASE("PLY header and payload")
{
    SurfaceMesh m = one_triangle();
    m.component = {4};
    std::string ply = encode_mesh(m, MeshFormat::Ply, MeshProvenance{0.25, {}});
    auto end = ply.find("end_header\n");
    REQUIRE(end != std::string::npos);
    std::string header = ply.substr(0, end);
    CHECK(header.find("format binary_little_endian 1.0") != std::string::npos);
    CHECK(header.find("element vertex 3") != std::string::npos);
    CHECK(header.find("element face 1") != std::string::npos);
    CHECK(header.find("property int component_id") != std::string::npos);
    CHECK(header.find("curvature") == std::string::npos);
    std::size_t body = ply.size() - end - std::strlen("end_header\n");
    CHECK(body == 3 * 6 * 8 + 1 + 3 * 4 + 4);
    std::int32_t comp = 0;
    std::memcpy(&comp, ply.data() + ply.size() - 4, 4);
    CHECK(comp == 4);
    m.curvature = {1.0, 2.0, 3.0};
    m.has_curvature = true;
    CHECK(encode_mesh(m, MeshFormat::Ply, {}).find("property double curvature") != std::string::npos);
}

TEST_CASE("mesh format names")
{
    CHECK(mesh_format_from_name("PLY") == MeshFormat::Ply);
    CHECK(mesh_format_from_name("obj") == MeshFormat::Obj);
    CHECK_FALSE(mesh_format_from_name("stl"));
    CHECK(mesh_format_from_path("out/a.b.obj") == MeshFormat::Obj);
    CHECK_FALSE(mesh_format_from_path("noext"));
}

TEST_CASE("mesh export is deterministic across thread counts")
{
    CuboidPartition part;
    auto f = fixtures::sphere(16, part);
    auto labels = label_vertices(f, part);
    std::string out[2];
    for (int t = 0; t < 2; ++t) {
        ExtractOptions eo;
        eo.threads = t ? 3 : 1;
        auto surf = extract_grid(labels, part, 0.5, eo);
        auto comps = decompose_components(surf);
        orient_surface(surf, comps);
        MeshOptions mo;
        mo.curvature = true;
        mo.threads = eo.threads;
        out[t] = encode_mesh(build_mesh(surf, comps, mo), MeshFormat::Ply, {});
    }
    CHECK(out[0] == out[1]);
}
