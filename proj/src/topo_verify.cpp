// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#include "isograph/topo_verify.hpp"

#include "isograph/fixtures.hpp"

#include "parallel.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace isograph {

namespace {

constexpr double kLabel[3] = {0.0, 0.5, 1.0};

std::string ring_string(const std::array<std::uint8_t, 16>& s)
{
    std::string out = "ring:";
    for (auto x : s) out += char('0' + x);
    return out;
}

std::size_t center_paths(const IsoSurface& surf, const Index3& cell)
{
    std::size_t n = 0;
    for (const auto& p : surf.paths)
        if (p.kind == PathKind::Inner && p.cell == cell) ++n;
    return n;
}

void fail(TheoremCheck& check, const std::string& example, const std::string& why)
{
    if (check.failures++ == 0) {
        check.counterexample = example;
        if (!why.empty()) check.detail += (check.detail.empty() ? "" : "; ") + why;
    }
}

/// Runs fn(code, surface) on every embedded signature.
template <class Fn>
void for_each_signature(TheoremCheck& check, Fn&& fn)
{
    for (int code = 0; code < kSignatureCount; ++code) {
        auto emb = embed_signature(std::uint16_t(code));
        try {
            auto surf = extract_grid(emb.labels, emb.partition, 0.5);
            fn(emb, surf);
        } catch (const std::exception& e) {
            fail(check, fmt::format("code:{}", code), e.what());
        }
    }
}

bool parity_kind(const std::string& kind)
{
    return kind == "parity" || kind == "incidence-kind" || kind == "matching" || kind == "pairing" ||
           kind == "matching-unique" || kind == "incidence" || kind == "triple";
}

struct RingTally {
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::size_t triples = 0;
    std::string first;
    std::string first_detail;
    std::array<std::size_t, 9> lattice_histogram{};
};

void audit_ring(const std::array<std::uint8_t, 16>& states, RingTally& t)
{
    CuboidPartition part;
    auto labels = ring_labels(states, part);
    ++t.cases;
    try {
        auto surf = extract_grid(labels, part, 0.5);
        auto comps = decompose_components(surf);
        for (const auto& rec : comps.lines)
            if (rec.kind == LineKind::LatticeEdge && !rec.boundary) ++t.lattice_histogram[std::min<std::size_t>(rec.count(), 8)];
        auto rep = audit_connectivity(surf, comps, AuditOptions{false, true});
        bool bad = false;
        for (const auto& v : rep.violations) {
            if (!parity_kind(v.kind)) continue;
            if (v.kind == "triple") ++t.triples;
            if (!bad && t.failures == 0) t.first_detail = v.kind + " " + v.detail;
            bad = true;
        }
        if (bad && t.failures++ == 0) t.first = ring_string(states);
    } catch (const std::exception& e) {
        if (t.failures++ == 0) {
            t.first = ring_string(states);
            t.first_detail = e.what();
        }
    }
}

void merge(RingTally& into, const RingTally& from)
{
    if (into.failures == 0 && from.failures > 0) {
        into.first = from.first;
        into.first_detail = from.first_detail;
    }
    into.cases += from.cases;
    into.failures += from.failures;
    into.triples += from.triples;
    for (std::size_t i = 0; i < into.lattice_histogram.size(); ++i) into.lattice_histogram[i] += from.lattice_histogram[i];
}

std::string histogram_text(const std::array<std::size_t, 9>& h)
{
    std::string out;
    for (std::size_t i = 0; i < h.size(); ++i)
        if (h[i]) out += fmt::format("{}N={}:{}", out.empty() ? "" : " ", i, h[i]);
    return out.empty() ? "none" : out;
}

} // namespace

EmbeddedSignature embed_signature(std::uint16_t code)
{
    EmbeddedSignature emb;
    emb.code = code;
    emb.mask = mask_from_code(code);
    emb.partition.dims = {3, 3, 3};
    emb.labels.vertex_dims = emb.partition.vertex_dims();
    emb.labels.labels.assign(std::size_t(emb.partition.vertex_count()), 0.0);
    for (int c = 0; c < 8; ++c) {
        auto v = corner_vertex(emb.center, c);
        emb.labels.labels[std::size_t(emb.partition.vertex_id(v))] = kLabel[int(emb.mask.state(c))];
    }
    return emb;
}

std::vector<EmbeddedSignature> enumerate_signatures()
{
    std::vector<EmbeddedSignature> out;
    out.reserve(kSignatureCount);
    for (int code = 0; code < kSignatureCount; ++code) out.push_back(embed_signature(std::uint16_t(code)));
    return out;
}

NodeLabeling ring_labels(const std::array<std::uint8_t, 16>& states, CuboidPartition& part)
{
    part = CuboidPartition{};
    part.dims = {2, 2, 1};
    NodeLabeling labels;
    labels.vertex_dims = part.vertex_dims();
    labels.labels.assign(std::size_t(part.vertex_count()), 0.5);
    const std::int64_t e0 = part.vertex_id({1, 1, 0});
    const std::int64_t e1 = part.vertex_id({1, 1, 1});
    std::size_t k = 0;
    for (std::int64_t v = 0; v < part.vertex_count(); ++v) {
        if (v == e0 || v == e1) continue;
        labels.labels[std::size_t(v)] = kLabel[states[k++]];
    }
    return labels;
}

std::array<std::uint8_t, 16> random_ring(std::uint64_t seed, std::size_t index)
{
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * (index + 1));
    std::uniform_int_distribution<int> pick(0, 2);
    std::array<std::uint8_t, 16> s{};
    for (auto& x : s) x = std::uint8_t(pick(rng));
    return s;
}

NodeLabeling random_field(std::uint64_t seed, std::size_t index, std::int64_t n, CuboidPartition& part)
{
    auto f = fixtures::random_fractions(n, seed + 0xD1B54A32D192ED03ULL * (index + 1), part);
    return label_vertices(f, part);
}

TheoremCheck check_cell_path_bound()
{
    TheoremCheck check{"cell-path-bound", "a cell carries at most four inner iso-paths", "6561 signatures", 0, 0, {}, {}};
    std::array<std::size_t, 5> hist{};
    for_each_signature(check, [&](const EmbeddedSignature& emb, const IsoSurface& surf) {
        ++check.cases;
        std::size_t n = center_paths(surf, emb.center);
        if (n > 4) fail(check, fmt::format("code:{}", emb.code), fmt::format("{} paths", n));
        else ++hist[n];
    });
    check.detail += fmt::format("{}paths 0:{} 1:{} 2:{} 3:{} 4:{}", check.detail.empty() ? "" : "; ", hist[0], hist[1],
                                hist[2], hist[3], hist[4]);
    return check;
}

TheoremCheck check_irreducible_single_path()
{
    TheoremCheck check{"irreducible-one-path", "an irreducible cell carries exactly one iso-path", "irreducible signatures",
                       0, 0, {}, {}};
    for_each_signature(check, [&](const EmbeddedSignature& emb, const IsoSurface& surf) {
        auto cls = classify_graph(emb.mask);
        if (!cls.regular || cls.reducible) return;
        ++check.cases;
        std::size_t n = center_paths(surf, emb.center);
        if (n != 1) fail(check, fmt::format("code:{}", emb.code), fmt::format("{} paths", n));
    });
    return check;
}

TheoremCheck check_trivial_l_face_pairs()
{
    TheoremCheck check{"trivial-l-face", "a regular cell with a trivial L-face carries exactly two inner iso-paths and one trivial L-face",
                       "regular signatures with a trivial L-face", 0, 0, {}, {}};
    for_each_signature(check, [&](const EmbeddedSignature& emb, const IsoSurface& surf) {
        auto cls = classify_graph(emb.mask);
        if (!cls.regular) return;
        int trivial = int(std::count_if(cls.l_faces.begin(), cls.l_faces.end(), [](const LFace& f) { return f.trivial; }));
        if (trivial == 0) return;
        ++check.cases;
        std::size_t n = center_paths(surf, emb.center);
        if (n != 2 || trivial != 1)
            fail(check, fmt::format("code:{}", emb.code), fmt::format("{} paths, {} trivial L-faces", n, trivial));
    });
    return check;
}

TheoremCheck check_diagonal_pairs()
{
    TheoremCheck check{"diagonal-two-paths", "two disperse (D=2) or two continuous (D=6) nodes on a space diagonal give two iso-paths",
                       "regular L-free diagonal signatures", 0, 0, {}, {}};
    for_each_signature(check, [&](const EmbeddedSignature& emb, const IsoSurface& surf) {
        auto cls = classify_graph(emb.mask);
        if (!cls.regular || !cls.diagonal) return;
        ++check.cases;
        std::size_t n = center_paths(surf, emb.center);
        if (n != 2) fail(check, fmt::format("code:{}", emb.code), fmt::format("{} paths", n));
    });
    return check;
}

TheoremCheck check_singular_faces()
{
    TheoremCheck check{"singular-faces", "a regular cell has at most three singular faces and no iso-node lies on two of them",
                       "regular signatures with a singular face", 0, 0, {}, {}};
    std::array<std::size_t, 7> hist{};
    for (int code = 0; code < kSignatureCount; ++code) {
        StateMask m = mask_from_code(std::uint16_t(code));
        auto cls = classify_graph(m);
        if (!cls.regular || cls.singular_faces.empty()) continue;
        ++check.cases;
        ++hist[cls.singular_faces.size()];
        std::set<int> iso_nodes;
        bool shared = false;
        for (int f : cls.singular_faces)
            for (int c : cube::kFaceTable[std::size_t(f)])
                if (m.state(c) != NodeState::Disperse) shared = !iso_nodes.insert(c).second || shared;
        if (cls.singular_faces.size() > 3 || shared)
            fail(check, fmt::format("code:{}", code),
                 fmt::format("{} singular faces{}", cls.singular_faces.size(), shared ? ", shared iso-node" : ""));
    }
    check.detail += fmt::format("{}faces 1:{} 2:{} 3:{}", check.detail.empty() ? "" : "; ", hist[1], hist[2], hist[3]);
    return check;
}

TheoremCheck check_l_face_table()
{
    TheoremCheck check{"l-face-table", "L-face counts per disperse count and the S-rule that removes them follow the removal table",
                       "regular signatures with L-faces", 0, 0, {}, {}};
    // (D, |L|) -> rule and application count; for D=4, |L|=2 the rule depends on parallelity.
    const std::map<std::pair<int, int>, std::pair<RuleKind, int>> table = {
        {{2, 1}, {RuleKind::S1, 1}}, {{3, 1}, {RuleKind::S1, 1}}, {{3, 3}, {RuleKind::S1, 2}},
        {{4, 2}, {RuleKind::S1, 1}}, {{4, 6}, {RuleKind::S1, 3}}, {{5, 1}, {RuleKind::S3, 1}},
        {{5, 3}, {RuleKind::S1, 1}}, {{6, 1}, {RuleKind::S3, 1}},
    };
    std::map<std::pair<int, int>, std::size_t> seen;
    for (int code = 0; code < kSignatureCount; ++code) {
        StateMask m = mask_from_code(std::uint16_t(code));
        auto cls = classify_graph(m);
        if (!cls.regular || cls.l_faces.empty()) continue;
        ++check.cases;
        const std::string ex = fmt::format("code:{}", code);
        auto key = std::make_pair(cls.disperse_count, cls.l_count());
        ++seen[key];
        auto it = table.find(key);
        if (it == table.end()) {
            fail(check, ex, fmt::format("D={} |L|={} outside the table", key.first, key.second));
            continue;
        }
        auto want = it->second;
        if (key == std::make_pair(4, 2) && cls.l_faces_parallel()) want = {RuleKind::S2, 1};
        try {
            auto choice = select_s_rule(cls);
            if (choice.kind != want.first || choice.count != want.second) {
                fail(check, ex, fmt::format("rule {}x{}, table {}x{}", to_string(choice.kind), choice.count,
                                            to_string(want.first), want.second));
                continue;
            }
            auto dec = decompose(LabeledCuboidGraph::from_mask(m));
            auto rest = classify_graph(state_mask(dec.rest));
            if (int(dec.pieces.size()) != want.second || rest.l_count() != 0)
                fail(check, ex, fmt::format("{} pieces, {} L-faces left", dec.pieces.size(), rest.l_count()));
        } catch (const std::exception& e) {
            fail(check, ex, e.what());
        }
    }
    std::string counts;
    for (auto& [k, n] : seen) counts += fmt::format("{}D{}L{}:{}", counts.empty() ? "" : " ", k.first, k.second, n);
    check.detail += (check.detail.empty() ? "" : "; ") + counts;
    return check;
}

TheoremCheck check_edge_parity(const VerifyOptions& options)
{
    TheoremCheck check{"edge-parity",
                       "a lattice-edge iso-line has incidence 0, 2, 4, 6 or 8 with a unique disperse-connected matching, and no triple line occurs",
                       "", 0, 0, {}, {}};
    RingTally binary;
    for (std::uint32_t bits = 0; bits < (1u << 16); ++bits) {
        std::array<std::uint8_t, 16> s{};
        for (int i = 0; i < 16; ++i) s[std::size_t(i)] = (bits >> i & 1) ? 2 : 0;
        audit_ring(s, binary);
    }
    // Both layers of the ring equal, every node free.
    RingTally layered;
    for (int code = 0; code < 6561; ++code) {
        std::array<std::uint8_t, 8> layer{};
        int x = code;
        for (auto& v : layer) {
            v = std::uint8_t(x % 3);
            x /= 3;
        }
        std::array<std::uint8_t, 16> s{};
        for (int i = 0; i < 8; ++i) s[std::size_t(2 * i)] = s[std::size_t(2 * i + 1)] = layer[std::size_t(i)];
        audit_ring(s, layered);
    }
    const int chunks = detail::chunk_count(std::int64_t(options.ring_samples), options.threads);
    std::vector<RingTally> parts(static_cast<std::size_t>(chunks));
    detail::parallel_chunks(std::int64_t(options.ring_samples), options.threads,
                            [&](int chunk, std::int64_t b, std::int64_t e) {
                                for (std::int64_t i = b; i < e; ++i)
                                    audit_ring(random_ring(options.seed, std::size_t(i)), parts[std::size_t(chunk)]);
                            });
    RingTally random;
    for (const auto& p : parts) merge(random, p);
    RingTally all;
    for (const auto* t : {&binary, &layered, &random}) merge(all, *t);
    check.cases = all.cases;
    check.failures = all.failures;
    check.counterexample = all.first;
    check.domain = fmt::format("{} binary rings, {} layered rings, {} random rings (seed {})", binary.cases,
                               layered.cases, random.cases, options.seed);
    check.detail = fmt::format("lattice incidence {}; triples {}", histogram_text(all.lattice_histogram), all.triples);
    if (all.failures) check.detail += "; first: " + all.first_detail;
    return check;
}

TheoremCheck check_signature_connectivity()
{
    TheoremCheck check{"signature-connectivity",
                       "in every embedded signature each interior iso-line is shared by two paths, paired uniquely, and no triple line occurs",
                       "6561 signatures", 0, 0, {}, {}};
    std::map<std::string, std::size_t> kinds;
    for_each_signature(check, [&](const EmbeddedSignature& emb, const IsoSurface& surf) {
        ++check.cases;
        auto rep = audit_connectivity(surf, AuditOptions{false, true});
        for (const auto& v : rep.violations) ++kinds[v.kind];
        if (!rep.ok())
            fail(check, fmt::format("code:{}", emb.code), rep.violations.front().kind + " " + rep.violations.front().detail);
    });
    for (auto& [k, n] : kinds) check.detail += fmt::format("{}{}:{}", check.detail.empty() ? "" : "; ", k, n);
    return check;
}

std::string signature_ring_note()
{
    std::map<int, std::size_t> sizes;
    std::size_t outside = 0;
    int first = -1;
    for (int code = 0; code < kSignatureCount; ++code) {
        auto emb = embed_signature(std::uint16_t(code));
        auto surf = extract_grid(emb.labels, emb.partition, 0.5);
        auto comps = decompose_components(surf);
        bool bad = false;
        for (std::uint32_t q = 0; q < surf.points.size(); ++q)
            for (const auto& ring : neighbor_rings(q, surf, comps)) {
                int n = int(ring.paths.size());
                ++sizes[ring.closed ? n : -n];
                bad = bad || !ring.closed || n < 4 || n > 8;
            }
        if (bad) {
            ++outside;
            if (first < 0) first = code;
        }
    }
    std::string hist;
    for (auto& [n, k] : sizes) hist += fmt::format("{}{}{}:{}", hist.empty() ? "" : " ", n < 0 ? "open" : "", std::abs(n), k);
    return fmt::format("signature rings (not a registered check): {} of {} signatures have a ring outside 4..8{}; sizes {}",
                       outside, kSignatureCount, first >= 0 ? fmt::format(", first code:{}", first) : "", hist);
}

namespace {

TheoremCheck field_audit(const VerifyOptions& options, TheoremCheck check, bool rings)
{
    std::map<std::string, std::size_t> kinds;
    std::size_t lines = 0;
    std::size_t points = 0;
    int min_ring = 0;
    int max_ring = 0;
    for (std::size_t k = 0; k < options.random_fields; ++k) {
        CuboidPartition part;
        auto labels = random_field(options.seed, k, options.field_size, part);
        ++check.cases;
        const std::string ex = fmt::format("field:seed={},index={},n={}", options.seed, k, options.field_size);
        try {
            ExtractOptions eo;
            eo.threads = options.threads;
            auto surf = extract_grid(labels, part, 0.5, eo);
            auto rep = audit_connectivity(surf, AuditOptions{rings, false});
            lines += rep.interior_lines;
            points += rep.points_checked;
            if (rep.rings_checked) {
                min_ring = min_ring == 0 ? rep.min_ring : std::min(min_ring, rep.min_ring);
                max_ring = std::max(max_ring, rep.max_ring);
            }
            bool bad = false;
            for (const auto& v : rep.violations) {
                bool relevant = rings ? v.kind == "ring" : v.kind != "ring";
                if (!relevant) continue;
                ++kinds[v.kind];
                if (!bad) fail(check, ex, v.kind + " " + v.detail);
                bad = true;
            }
        } catch (const std::exception& e) {
            fail(check, ex, e.what());
        }
    }
    check.domain = fmt::format("{} random {}^3 fields (seed {})", options.random_fields, options.field_size, options.seed);
    std::string extra = rings ? fmt::format("points {} ring sizes {}..{}", points, min_ring, max_ring)
                              : fmt::format("interior lines {}", lines);
    for (auto& [k, n] : kinds) extra += fmt::format("; {}:{}", k, n);
    check.detail = check.detail.empty() ? extra : extra + "; first: " + check.detail;
    return check;
}

} // namespace

TheoremCheck check_field_connectivity(const VerifyOptions& options)
{
    return field_audit(options,
                       {"field-connectivity", "every interior iso-line is shared by at least two iso-paths, paired uniquely, with no triple line",
                        "", 0, 0, {}, {}},
                       false);
}

TheoremCheck check_field_rings(const VerifyOptions& options)
{
    auto check = field_audit(options,
                             {"field-rings", "every interior iso-point has a closed ring of 4 to 8 iso-paths", "", 0, 0, {}, {}},
                             true);
    CuboidPartition part;
    const std::pair<const char*, VolumeFractionField> fixed[] = {
        {"sphere:32", fixtures::sphere(32, part)},
        {"slab:16", fixtures::slab(16, part)},
    };
    std::string extra;
    for (const auto& [name, field] : fixed) {
        part = fixtures::unit_grid(field.dims[0]);
        ++check.cases;
        auto surf = extract_grid(label_vertices(field, part), part, 0.5);
        auto rep = audit_connectivity(surf, AuditOptions{true, false});
        std::size_t bad = 0;
        for (const auto& v : rep.violations)
            if (v.kind == "ring" && bad++ == 0) fail(check, name, v.detail);
        extra += fmt::format("; {} points {} ring sizes {}..{}", name, rep.points_checked, rep.min_ring, rep.max_ring);
    }
    check.domain += " + sphere 32^3 + slab 16^3";
    check.detail += extra;
    return check;
}

bool VerifyReport::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const TheoremCheck& c) { return c.passed(); });
}

const TheoremCheck* VerifyReport::find(const std::string& id) const
{
    for (const auto& c : checks)
        if (c.id == id) return &c;
    return nullptr;
}

std::string VerifyReport::to_text() const
{
    std::string out;
    for (const auto& c : checks)
        out += fmt::format("{} {} cases={} failures={} | {} | {}\n", c.passed() ? "PASS" : "FAIL", c.id, c.cases,
                           c.failures, c.domain, c.detail);
    for (const auto& c : checks)
        if (!c.passed()) out += fmt::format("counterexample {} {}\n", c.id, c.counterexample);
    for (const auto& n : notes) out += "note " + n + "\n";
    return out;
}

VerifyReport check_all(const VerifyOptions& options)
{
    VerifyReport rep;
    rep.checks.push_back(check_cell_path_bound());
    rep.checks.push_back(check_irreducible_single_path());
    rep.checks.push_back(check_trivial_l_face_pairs());
    rep.checks.push_back(check_diagonal_pairs());
    rep.checks.push_back(check_singular_faces());
    rep.checks.push_back(check_l_face_table());
    rep.checks.push_back(check_signature_connectivity());
    rep.checks.push_back(check_edge_parity(options));
    rep.checks.push_back(check_field_connectivity(options));
    rep.checks.push_back(check_field_rings(options));
    rep.notes.push_back(signature_ring_note());
    return rep;
}

} // namespace isograph
