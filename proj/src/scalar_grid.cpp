// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#include "isograph/scalar_grid.hpp"

#include <cmath>
#include <string>

namespace isograph {

void CuboidPartition::validate() const
{
    for (int a = 0; a < 3; ++a) {
        if (dims[a] < 1) throw InputError("partition dimension " + std::to_string(a) + " must be at least 1");
        if (!(spacing[a] > 0.0) || !std::isfinite(spacing[a]))
            throw InputError("partition spacing " + std::to_string(a) + " must be positive and finite");
        if (!std::isfinite(origin[a])) throw InputError("partition origin must be finite");
    }
}

bool CuboidPartition::is_boundary_cell(const Index3& c) const
{
    for (int a = 0; a < 3; ++a)
        if (c[a] == 0 || c[a] == dims[a] - 1) return true;
    return false;
}

bool CuboidPartition::is_boundary_vertex(const Index3& v) const
{
    for (int a = 0; a < 3; ++a)
        if (v[a] == 0 || v[a] == dims[a]) return true;
    return false;
}

void VolumeFractionField::validate(const CuboidPartition& part) const
{
    if (dims != part.dims) throw InputError("volume fraction dimensions do not match the partition");
    if (std::int64_t(values.size()) != part.cell_count())
        throw InputError("volume fraction count " + std::to_string(values.size()) + " does not match " +
                         std::to_string(part.cell_count()) + " cells");
    for (std::size_t i = 0; i < values.size(); ++i) {
        double v = values[i];
        if (!(v >= 0.0 && v <= 1.0)) {
            Index3 c = part.cell_index(std::int64_t(i));
            throw InputError("volume fraction out of range [0,1] at cell (" + std::to_string(c[0]) + "," +
                             std::to_string(c[1]) + "," + std::to_string(c[2]) + ")");
        }
    }
}

NodeLabeling label_vertices(const VolumeFractionField& field, const CuboidPartition& part)
{
    part.validate();
    field.validate(part);
    NodeLabeling out;
    out.vertex_dims = part.vertex_dims();
    out.labels.assign(std::size_t(part.vertex_count()), 0.0);
    const auto vd = out.vertex_dims;
    for (std::int64_t i = 0; i < vd[0]; ++i)
        for (std::int64_t j = 0; j < vd[1]; ++j)
            for (std::int64_t k = 0; k < vd[2]; ++k) {
                double sum = 0.0;
                int n = 0;
                for (int di = -1; di <= 0; ++di)
                    for (int dj = -1; dj <= 0; ++dj)
                        for (int dk = -1; dk <= 0; ++dk) {
                            Index3 c{i + di, j + dj, k + dk};
                            if (!part.contains_cell(c)) continue;
                            sum += field.at(c);
                            ++n;
                        }
                out.labels[std::size_t(part.vertex_id({i, j, k}))] = sum / n;
            }
    return out;
}

double target_volume(const VolumeFractionField& field, const CuboidPartition& part)
{
    double sum = 0.0;
    for (double v : field.values) sum += v;
    return sum * part.cell_volume();
}

double volume_residual(const NodeLabeling& labels, const CuboidPartition& part, double target, double c,
                       double iso_tolerance, int threads)
{
    return 1.0 - enclosed_volume(labels, part, c, iso_tolerance, threads) / target;
}

IsoLevelSolve solve_iso_level(const NodeLabeling& labels, const CuboidPartition& part,
                              const VolumeFractionField& field, double epsilon)
{
    SolveOptions options;
    options.epsilon = epsilon;
    return solve_iso_level(labels, part, field, options);
}

IsoLevelSolve solve_iso_level(const NodeLabeling& labels, const CuboidPartition& part,
                              const VolumeFractionField& field, const SolveOptions& options)
{
    if (!(options.epsilon > 0.0)) throw ContractError("epsilon must be positive");
    IsoLevelSolve out;
    out.epsilon = options.epsilon;
    out.target_volume = target_volume(field, part);
    if (!(out.target_volume > 0.0)) throw NoInterfaceError("target disperse volume is zero");

    auto gamma = [&](double c) {
        return volume_residual(labels, part, out.target_volume, c, options.iso_tolerance, options.threads);
    };

    // gamma grows with c: more nodes fall below c and the disperse volume shrinks.
    double lo = std::nextafter(0.0, 1.0);
    double hi = std::nextafter(1.0, 0.0);
    double g_lo = gamma(lo);
    double g_hi = gamma(hi);
    auto finish = [&](double c, double g, bool attained) {
        out.iso_level = c;
        out.residual = g;
        out.enclosed_volume = (1.0 - g) * out.target_volume;
        out.bracket_lo = lo;
        out.bracket_hi = hi;
        out.attained = attained;
        if (!attained) out.jump = g_hi - g_lo;
        return out;
    };
    if (std::abs(g_lo) < options.epsilon) return finish(lo, g_lo, true);
    if (std::abs(g_hi) < options.epsilon) return finish(hi, g_hi, true);
    if (g_lo > 0.0 || g_hi < 0.0) {
        bool lo_better = std::abs(g_lo) <= std::abs(g_hi);
        return finish(lo_better ? lo : hi, lo_better ? g_lo : g_hi, false);
    }
    for (out.iterations = 0; out.iterations < options.max_iterations; ++out.iterations) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double g_mid = gamma(mid);
        if (std::abs(g_mid) < options.epsilon) return finish(mid, g_mid, true);
        if (g_mid < 0.0) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
            g_hi = g_mid;
        }
    }
    bool lo_better = std::abs(g_lo) <= std::abs(g_hi);
    return finish(lo_better ? lo : hi, lo_better ? g_lo : g_hi, false);
}

} // namespace isograph
