// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#include "isograph/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace isograph::fixtures {

CuboidPartition unit_grid(std::int64_t n)
{
    CuboidPartition part;
    part.dims = {n, n, n};
    part.spacing = Vec3::Constant(1.0 / double(n));
    return part;
}

VolumeFractionField ball_fractions(const CuboidPartition& part, const Vec3& center, double radius, int samples)
{
    VolumeFractionField f;
    f.dims = part.dims;
    f.values.assign(std::size_t(part.cell_count()), 0.0);
    const double half_diag = 0.5 * part.spacing.norm();
    const double inv = 1.0 / double(samples);
    for (std::int64_t id = 0; id < part.cell_count(); ++id) {
        Index3 c = part.cell_index(id);
        Vec3 lo = part.vertex_position(c);
        Vec3 mid = lo + 0.5 * part.spacing;
        double r = (mid - center).norm();
        double& v = f.values[std::size_t(id)];
        if (r <= radius - half_diag) {
            v = 1.0;
            continue;
        }
        if (r >= radius + half_diag) continue;
        long inside = 0;
        for (int a = 0; a < samples; ++a)
            for (int b = 0; b < samples; ++b)
                for (int d = 0; d < samples; ++d) {
                    Vec3 p = lo + Vec3((a + 0.5) * inv * part.spacing[0], (b + 0.5) * inv * part.spacing[1],
                                       (d + 0.5) * inv * part.spacing[2]);
                    inside += (p - center).norm() < radius;
                }
        v = double(inside) / double(long(samples) * samples * samples);
    }
    return f;
}

VolumeFractionField sphere(std::int64_t n, CuboidPartition& part, int samples)
{
    part = unit_grid(n);
    return ball_fractions(part, Vec3::Constant(0.5), 0.3, samples);
}

VolumeFractionField two_spheres(std::int64_t n, CuboidPartition& part, int samples)
{
    part = unit_grid(n);
    auto a = ball_fractions(part, Vec3(0.3, 0.5, 0.5), 0.15, samples);
    auto b = ball_fractions(part, Vec3(0.7, 0.5, 0.5), 0.15, samples);
    for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] = std::min(1.0, a.values[i] + b.values[i]);
    return a;
}

VolumeFractionField slab(std::int64_t n, CuboidPartition& part, double lo, double hi)
{
    part = unit_grid(n);
    VolumeFractionField f;
    f.dims = part.dims;
    f.values.resize(std::size_t(part.cell_count()));
    const double h = part.spacing[0];
    for (std::int64_t id = 0; id < part.cell_count(); ++id) {
        double x0 = double(part.cell_index(id)[0]) * h;
        double overlap = std::max(0.0, std::min(hi, x0 + h) - std::max(lo, x0));
        f.values[std::size_t(id)] = std::min(1.0, overlap / h);
    }
    return f;
}

VolumeFractionField random_fractions(std::int64_t n, std::uint64_t seed, CuboidPartition& part)
{
    part = unit_grid(n);
    VolumeFractionField f;
    f.dims = part.dims;
    f.values.resize(std::size_t(part.cell_count()));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& x : f.values) x = u(rng);
    return f;
}

NodeLabeling distance_ball(std::int64_t n, double radius, CuboidPartition& part)
{
    part = unit_grid(n);
    NodeLabeling labels;
    labels.vertex_dims = part.vertex_dims();
    labels.labels.resize(std::size_t(part.vertex_count()));
    for (std::int64_t v = 0; v < part.vertex_count(); ++v) {
        double r = (part.vertex_position(part.vertex_index(v)) - Vec3::Constant(0.5)).norm();
        labels.labels[std::size_t(v)] = std::clamp(0.5 + (radius - r) * double(n) * 0.25, 0.0, 1.0);
    }
    return labels;
}

NodeLabeling edge_touching_boxes(CuboidPartition& part)
{
    part = unit_grid(8);
    NodeLabeling labels;
    labels.vertex_dims = part.vertex_dims();
    labels.labels.assign(std::size_t(part.vertex_count()), 0.0);
    auto in = [](std::int64_t x, std::int64_t lo, std::int64_t hi) { return x >= lo && x <= hi; };
    for (std::int64_t v = 0; v < part.vertex_count(); ++v) {
        auto p = part.vertex_index(v);
        if (!in(p[2], 2, 6)) continue;
        bool a = in(p[0], 2, 4) && in(p[1], 2, 4);
        bool b = in(p[0], 4, 6) && in(p[1], 4, 6);
        if (a && b) labels.labels[std::size_t(v)] = 0.5;
        else if (a || b) labels.labels[std::size_t(v)] = 1.0;
    }
    return labels;
}

} // namespace isograph::fixtures
