// Vertex labels, enclosed volume and the volume-preserving iso-level.

#include "isograph/fixtures.hpp"
#include "isograph/scalar_grid.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace isograph;

namespace {

VolumeFractionField uniform(const CuboidPartition& part, double v)
{
    VolumeFractionField f;
    f.dims = part.dims;
    f.values.assign(std::size_t(part.cell_count()), v);
    return f;
}

// Disperse volume by sub-voxel counting for fields whose iso-surface is a set of planar
// triangles cutting single corners: a sample is disperse when it lies closer to a disperse
// vertex than the interpolated crossing on every incident axis direction.
double count_corner_tetrahedra(const CuboidPartition& part, const NodeLabeling& labels, double c, int sub)
{
    long inside = 0;
    long total = 0;
    for (std::int64_t id = 0; id < part.cell_count(); ++id) {
        Index3 cell = part.cell_index(id);
        for (int a = 0; a < sub; ++a)
            for (int b = 0; b < sub; ++b)
                for (int d = 0; d < sub; ++d) {
                    double u[3] = {(a + 0.5) / sub, (b + 0.5) / sub, (d + 0.5) / sub};
                    ++total;
                    for (int corner = 0; corner < 8; ++corner) {
                        int o[3] = {(corner >> 2) & 1, (corner >> 1) & 1, corner & 1};
                        Index3 v{cell[0] + o[0], cell[1] + o[1], cell[2] + o[2]};
                        double f = labels.at(part.vertex_id(v));
                        if (!(f > c)) continue;
                        // Crossing distance along each edge leaving this corner towards a sub corner.
                        double s = 0.0;
                        for (int ax = 0; ax < 3; ++ax) {
                            Index3 w = v;
                            w[ax] += o[ax] ? -1 : 1;
                            double g = labels.at(part.vertex_id(w));
                            double t = (f - c) / (f - g);
                            double dist = o[ax] ? 1.0 - u[ax] : u[ax];
                            s += dist / t;
                        }
                        if (s < 1.0) {
                            ++inside;
                            break;
                        }
                    }
                }
    }
    return double(inside) / double(total) * double(part.cell_count()) * part.cell_volume();
}

} // namespace

TEST_CASE("vertex label is the mean of the incident cells")
{
    CuboidPartition part = fixtures::unit_grid(2);
    VolumeFractionField f = uniform(part, 0.0);
    for (std::int64_t id = 0; id < part.cell_count(); ++id)
        if (part.cell_index(id)[0] == 1) f.values[std::size_t(id)] = 1.0;
    auto labels = label_vertices(f, part);
    CHECK(labels.at(part.vertex_id({1, 1, 1})) == doctest::Approx(0.5));

    CuboidPartition rp;
    auto rf = fixtures::random_fractions(5, 7, rp);
    auto rl = label_vertices(rf, rp);
    for (std::int64_t v = 0; v < rp.vertex_count(); ++v) {
        Index3 p = rp.vertex_index(v);
        double sum = 0.0;
        int n = 0;
        for (std::int64_t id = 0; id < rp.cell_count(); ++id) {
            Index3 c = rp.cell_index(id);
            bool touches = true;
            for (int a = 0; a < 3; ++a) touches = touches && (c[a] == p[a] || c[a] + 1 == p[a]);
            if (touches) {
                sum += rf.values[std::size_t(id)];
                ++n;
            }
        }
        CHECK(rl.at(v) == doctest::Approx(sum / n).epsilon(1e-14));
    }
}

TEST_CASE("single disperse vertex encloses an octahedron")
{
    CuboidPartition part;
    part.dims = {2, 2, 2};
    NodeLabeling labels;
    labels.vertex_dims = part.vertex_dims();
    labels.labels.assign(std::size_t(part.vertex_count()), 0.0);
    labels.labels[std::size_t(part.vertex_id({1, 1, 1}))] = 1.0;
    const double counted = count_corner_tetrahedra(part, labels, 0.5, 64);
    CHECK(counted == doctest::Approx(1.0 / 6.0).epsilon(0.02));
    CHECK(enclosed_volume(labels, part, 0.5) == doctest::Approx(counted).epsilon(0.02));
    CHECK(enclosed_volume(labels, part, 0.5) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    // Off-center level moves the crossings to t = 0.25 along each edge.
    CHECK(enclosed_volume(labels, part, 0.75) == doctest::Approx(8.0 * std::pow(0.25, 3) / 6.0).epsilon(1e-12));
    CHECK(enclosed_volume(labels, part, 0.75) ==
          doctest::Approx(count_corner_tetrahedra(part, labels, 0.75, 64)).epsilon(0.03));
}

TEST_CASE("saturated labelings enclose the whole domain or nothing")
{
    CuboidPartition part;
    part.dims = {3, 2, 4};
    part.spacing = Vec3(0.5, 1.0, 0.25);
    NodeLabeling labels;
    labels.vertex_dims = part.vertex_dims();
    labels.labels.assign(std::size_t(part.vertex_count()), 0.9);
    CHECK(enclosed_volume(labels, part, 0.5) == doctest::Approx(3 * 0.5 * 2 * 4 * 0.25));
    labels.labels.assign(std::size_t(part.vertex_count()), 0.2);
    CHECK(enclosed_volume(labels, part, 0.5) == 0.0);
    // A label equal to c is not disperse.
    labels.labels.assign(std::size_t(part.vertex_count()), 0.5);
    CHECK(enclosed_volume(labels, part, 0.5) == 0.0);
}

TEST_CASE("enclosed volume does not increase with the iso-level")
{
    int violations = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        CuboidPartition part;
        auto f = fixtures::random_fractions(4, 1000 + seed, part);
        auto labels = label_vertices(f, part);
        double prev = enclosed_volume(labels, part, 0.02);
        for (int i = 2; i <= 20; ++i) {
            double c = 0.02 + 0.96 * (i - 1) / 19.0;
            double v = enclosed_volume(labels, part, c);
            if (v > prev + 1e-12) ++violations;
            prev = v;
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("constant field has no interface")
{
    CuboidPartition part = fixtures::unit_grid(4);
    auto zero = uniform(part, 0.0);
    CHECK_THROWS_AS(solve_iso_level(label_vertices(zero, part), part, zero, 1e-9), NoInterfaceError);
}

TEST_CASE("volume solve agrees with a dense scan")
{
    CuboidPartition part;
    auto f = fixtures::random_fractions(8, 424242, part);
    auto labels = label_vertices(f, part);
    auto sol = solve_iso_level(labels, part, f, 1e-9);
    const double target = target_volume(f, part);
    CHECK(sol.target_volume == doctest::Approx(target));
    CHECK(sol.iso_level > 0.0);
    CHECK(sol.iso_level < 1.0);

    // The scan brackets every sign change of gamma; the returned level lies in one of them.
    const int n = 10000;
    std::vector<double> cs;
    std::vector<double> gs;
    for (int i = 1; i < n; ++i) {
        double c = double(i) / n;
        cs.push_back(c);
        gs.push_back(1.0 - enclosed_volume(labels, part, c) / target);
    }
    bool bracketed = false;
    for (std::size_t i = 0; i + 1 < cs.size(); ++i)
        if ((gs[i] <= 0.0) != (gs[i + 1] <= 0.0) && sol.iso_level >= cs[i] - 1.0 / n &&
            sol.iso_level <= cs[i + 1] + 1.0 / n)
            bracketed = true;
    CHECK(bracketed);
    if (sol.attained) {
        CHECK(std::abs(sol.residual) < 1e-9);
        CHECK(std::abs(volume_residual(labels, part, target, sol.iso_level)) < 1e-9);
    } else {
        CHECK(sol.jump > 0.0);
    }
}

TEST_CASE("input errors")
{
    CuboidPartition part = fixtures::unit_grid(2);
    auto f = uniform(part, 0.5);
    f.values[3] = 1.5;
    CHECK_THROWS_AS(label_vertices(f, part), InputError);
    try {
        label_vertices(f, part);
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("(0,1,1)") != std::string::npos);
    }
    f.values.pop_back();
    CHECK_THROWS_AS(label_vertices(f, part), InputError);
    CuboidPartition bad;
    bad.dims = {0, 1, 1};
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad.dims = {1, 1, 1};
    bad.spacing = Vec3(1.0, -1.0, 1.0);
    CHECK_THROWS_AS(bad.validate(), InputError);
    NodeLabeling labels = label_vertices(uniform(part, 0.5), part);
    CHECK_THROWS_AS(enclosed_volume(labels, part, 1.0), ContractError);
    CHECK_THROWS_AS(enclosed_volume(labels, part, 0.0), ContractError);
}
