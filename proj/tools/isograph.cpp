// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

// isograph: iso-surface extraction from volume-fraction fields.
//
//   isograph extract <field> -o <mesh> [--iso c | --solve-volume --eps 1e-9] [--format obj|ply]
//                    [--curvature] [--threads n]
//   isograph verify [--seed s]
//   isograph stats <field> [--iso c | --solve-volume]
//   isograph fixture sphere|two-spheres|slab|random -o <field> [-n 32] [--text]
//
// Every option may also come from a plain key=value file given with --config.

#include "isograph/fixtures.hpp"
#include "isograph/mesh_io.hpp"
#include "isograph/topo_verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <iostream>

using namespace isograph;

namespace {

struct Settings {
    std::string field;
    std::string output;
    double iso = 0.5;
    bool solve = false;
    double eps = 1e-9;
    std::string format;
    bool curvature = false;
    int threads = 1;
    std::uint64_t seed = VerifyOptions{}.seed;
    std::size_t ring_samples = VerifyOptions{}.ring_samples;
    std::size_t fields = VerifyOptions{}.random_fields;
    std::string fixture;
    std::int64_t size = 32;
    bool text = false;
};

struct Level {
    double iso = 0.5;
    std::optional<double> eps;
    std::optional<IsoLevelSolve> solve;
};

Level choose_level(const Settings& s, const FieldFile& f, const NodeLabeling& labels)
{
    Level level;
    level.iso = s.iso;
    if (!s.solve) return level;
    SolveOptions opt;
    opt.epsilon = s.eps;
    opt.threads = s.threads;
    auto sol = solve_iso_level(labels, f.partition, f.field, opt);
    level.iso = sol.iso_level;
    level.eps = s.eps;
    level.solve = sol;
    return level;
}

void print_solve(const IsoLevelSolve& sol)
{
    if (sol.attained)
        fmt::print("solve: c={:.17g} gamma={:.3e} iterations={} attained\n", sol.iso_level, sol.residual, sol.iterations);
    else
        fmt::print("solve: c={:.17g} gamma={:.3e} iterations={} not attained, jump={:.3e} over [{:.17g}, {:.17g}]\n",
                   sol.iso_level, sol.residual, sol.iterations, sol.jump, sol.bracket_lo, sol.bracket_hi);
}

int run_extract(const Settings& s)
{
    auto f = read_field(s.field);
    auto labels = label_vertices(f.field, f.partition);
    auto level = choose_level(s, f, labels);
    std::optional<MeshFormat> format = s.format.empty() ? mesh_format_from_path(s.output) : mesh_format_from_name(s.format);
    if (!format) throw CLI::ValidationError("--format", "cannot infer the mesh format; use --format obj|ply");
    ExtractOptions eo;
    eo.threads = s.threads;
    auto surf = extract_grid(labels, f.partition, level.iso, eo);
    auto comps = decompose_components(surf);
    auto orient = orient_surface(surf, comps);
    MeshOptions mo;
    mo.curvature = s.curvature;
    mo.threads = s.threads;
    auto mesh = build_mesh(surf, comps, mo);
    write_mesh(mesh, *format, s.output, MeshProvenance{level.iso, level.eps});
    if (level.solve) print_solve(*level.solve);
    fmt::print("mesh: {} vertices {} triangles {} components, iso-level {:.17g}, written to {}\n", mesh.vertices.size(),
               mesh.triangles.size(), mesh.component_count, level.iso, s.output);
    if (orient.isolated || orient.inconsistent_lines)
        fmt::print("orientation: {} isolated paths, {} inconsistent lines\n", orient.isolated, orient.inconsistent_lines);
    return 0;
}

int run_stats(const Settings& s)
{
    auto f = read_field(s.field);
    auto labels = label_vertices(f.field, f.partition);
    auto level = choose_level(s, f, labels);
    ExtractOptions eo;
    eo.threads = s.threads;
    auto surf = extract_grid(labels, f.partition, level.iso, eo);
    auto comps = decompose_components(surf);
    orient_surface(surf, comps);
    auto mesh = build_mesh(surf, comps, MeshOptions{false, CurvatureScheme::Conormal, s.threads});
    const double target = target_volume(f.field, f.partition);
    const double volume = enclosed_volume(labels, f.partition, level.iso, kDefaultIsoTolerance, s.threads);
    if (level.solve) print_solve(*level.solve);
    fmt::print("iso-level {:.17g}\n", level.iso);
    fmt::print("components {}\n", comps.components.size());
    fmt::print("area {:.17g}\n", mesh.area());
    fmt::print("enclosed_volume {:.17g}\n", volume);
    fmt::print("target_volume {:.17g}\n", target);
    fmt::print("gamma {:.17g}\n", target > 0.0 ? 1.0 - volume / target : 0.0);
    return 0;
}

int run_verify(const Settings& s)
{
    VerifyOptions opt;
    opt.seed = s.seed;
    opt.threads = s.threads;
    opt.ring_samples = s.ring_samples;
    opt.random_fields = s.fields;
    auto rep = check_all(opt);
    std::fputs(rep.to_text().c_str(), stdout);
    fmt::print("{}\n", rep.ok() ? "all checks passed" : "some checks failed");
    return rep.ok() ? 0 : 1;
}

int run_fixture(const Settings& s)
{
    FieldFile f;
    if (s.fixture == "sphere") f.field = fixtures::sphere(s.size, f.partition);
    else if (s.fixture == "two-spheres") f.field = fixtures::two_spheres(s.size, f.partition);
    else if (s.fixture == "slab") f.field = fixtures::slab(s.size, f.partition);
    else f.field = fixtures::random_fractions(s.size, s.seed, f.partition);
    write_field(s.output, f, s.text ? FieldFormat::Text : FieldFormat::Binary);
    fmt::print("field: {} {}^3 written to {}\n", s.fixture, s.size, s.output);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Iso-surface extraction from volume-fraction fields on cuboid grids"};
    app.set_version_flag("--version", std::string(kVersion));
    app.set_config("--config", "", "Read option defaults from a key=value file");
    app.require_subcommand(1);

    Settings s;
    auto open_unit = CLI::Validator(
        [](std::string& v) -> std::string {
            double x = 0.0;
            try {
                x = std::stod(v);
            } catch (const std::exception&) {
                return "not a number";
            }
            return x > 0.0 && x < 1.0 ? std::string() : "iso-level must lie in the open interval (0,1)";
        },
        "in (0,1)");

    auto* iso = app.add_option("--iso", s.iso, "Iso-level c")->check(open_unit);
    auto* solve = app.add_flag("--solve-volume", s.solve, "Solve for the volume-preserving iso-level");
    iso->excludes(solve);
    app.add_option("--eps", s.eps, "Tolerance of the volume solve")->check(CLI::PositiveNumber);
    app.add_option("--format", s.format, "Mesh format")->check(CLI::IsMember({"obj", "ply"}, CLI::ignore_case));
    app.add_flag("--curvature", s.curvature, "Write per-vertex mean curvature (PLY)");
    app.add_option("--threads", s.threads, "Worker threads")->envname("ISOGRAPH_THREADS")->check(CLI::Range(1, 1024));
    app.add_option("--seed", s.seed, "Seed of the random verification cases");
    app.add_option("--ring-samples", s.ring_samples, "Random four-cell rings checked by verify");
    app.add_option("--fields", s.fields, "Random fields checked by verify");

    auto* extract = app.add_subcommand("extract", "Extract the iso-surface of a field and write a mesh")->fallthrough();
    extract->add_option("field", s.field, "Field file")->required()->check(CLI::ExistingFile);
    extract->add_option("-o,--output", s.output, "Mesh file")->required();

    auto* verify = app.add_subcommand("verify", "Run the topological checks")->fallthrough();

    auto* stats = app.add_subcommand("stats", "Print component count, area, enclosed volume and gamma")->fallthrough();
    stats->add_option("field", s.field, "Field file")->required()->check(CLI::ExistingFile);

    auto* fixture = app.add_subcommand("fixture", "Write a synthetic field on the unit cube")->fallthrough();
    fixture->add_option("name", s.fixture, "Field")->required()->check(CLI::IsMember({"sphere", "two-spheres", "slab", "random"}));
    fixture->add_option("-o,--output", s.output, "Field file")->required();
    fixture->add_option("-n,--size", s.size, "Cells per axis")->check(CLI::Range(2, 1024));
    fixture->add_flag("--text", s.text, "Write the text encoding");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*extract) return run_extract(s);
        if (*stats) return run_stats(s);
        if (*verify) return run_verify(s);
        if (*fixture) return run_fixture(s);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const InputError& e) {
        fmt::print(stderr, "input error: {}\n", e.what());
        return 2;
    } catch (const NoInterfaceError& e) {
        fmt::print(stderr, "no interface: {}\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
    return 0;
}
