#include "onering/csr.hpp"

#include <algorithm>

#include "onering/pairs.hpp"
#include "onering/primitives.hpp"

namespace onering {

CsrAdjacency build_adjacency(const ValidatedMesh& mesh, AdjacencyMode mode, const Backend& backend)
{
    PairList pairs = expand_pairs(mesh, mode, backend);
    pairs = sort_pairs(std::move(pairs), backend);
    // (node, element) pairs are already distinct for non-degenerate elements.
    if (mode == AdjacencyMode::NodeNeighbors)
        pairs = unique_pairs(std::move(pairs), backend);

    const index_t vertex_count = mesh.vertex_count();
    std::vector<index_t> counts(vertex_count, 0);
    {
        const KeyRuns runs = reduce_by_key_ones(pairs.keys, backend);
        const std::size_t run_count = runs.unique_keys.size();
        detail::run_chunks(detail::chunk_count(backend, run_count), run_count,
                           [&](unsigned, std::size_t lo, std::size_t hi) {
                               for (std::size_t r = lo; r < hi; ++r)
                                   counts[runs.unique_keys[r]] = runs.counts[r];
                           });
    }

    CsrAdjacency out;
    out.mode = mode;
    out.vertex_count = vertex_count;
    out.offsets = exclusive_scan(counts, backend);
    out.counts = std::move(counts);
    out.indices = std::move(pairs.values);
    return out;
}

MemoryEstimate estimate_memory(const ValidatedMesh& mesh, AdjacencyMode mode)
{
    const bool node_mode = mode == AdjacencyMode::NodeNeighbors;
    const std::size_t w = index_width;
    const std::size_t pairs = node_mode ? node_pair_count(mesh.mesh()) : element_pair_count(mesh.mesh());
    const std::size_t v = mesh.vertex_count();
    const std::size_t distinct_pairs = pairs;
    const std::size_t distinct_keys = std::min(pairs, v);

    MemoryEstimate est;
    est.pair_bytes = 2 * pairs * w;
    est.helper_bytes = 4 * std::max(pairs, v) * w;
    est.output_bytes = (v + 1) * w + v * w + distinct_pairs * w;

    // Live bytes at each step of build_adjacency, in allocation order. The
    // sort holds the pairs plus one packed or unpacked copy of them.
    const std::size_t sort_phase = pairs > 1 ? 2 * est.pair_bytes : est.pair_bytes;
    const std::size_t dedup_phase = node_mode ? est.pair_bytes + 2 * distinct_pairs * w : 0;
    const std::size_t runs_phase = 2 * distinct_pairs * w + v * w + 2 * distinct_keys * w;
    const std::size_t scan_phase = 2 * distinct_pairs * w + v * w + (v + 1) * w;
    // Indices are the moved pair values, so pairs and output never coexist in
    // full; their sum is still reported as a floor.
    est.peak_bytes =
        std::max({sort_phase, dedup_phase, runs_phase, scan_phase, est.pair_bytes + est.output_bytes});
    return est;
}

std::optional<std::string> find_invariant_violation(const CsrAdjacency& adj,
                                                    std::optional<std::size_t> element_count)
{
    const std::size_t v_count = adj.vertex_count;
    if (adj.offsets.size() != v_count + 1)
        return "offsets must have vertex_count + 1 entries";
    if (adj.counts.size() != v_count)
        return "counts must have vertex_count entries";
    if (adj.offsets[0] != 0)
        return "offsets[0] must be 0";
    if (adj.offsets[v_count] != adj.indices.size())
        return "final offset must equal the number of indices";
    for (std::size_t v = 0; v < v_count; ++v) {
        if (adj.offsets[v + 1] < adj.offsets[v])
            return "offsets decrease at vertex " + std::to_string(v);
        if (adj.offsets[v + 1] - adj.offsets[v] != adj.counts[v])
            return "count disagrees with offsets at vertex " + std::to_string(v);
    }
    const std::size_t bound = adj.mode == AdjacencyMode::NodeNeighbors
                                  ? v_count
                                  : element_count.value_or(static_cast<std::size_t>(max_index) + 1);
    for (std::size_t v = 0; v < v_count; ++v) {
        const auto slice = adj.neighbors(static_cast<index_t>(v));
        for (std::size_t i = 0; i < slice.size(); ++i) {
            if (slice[i] >= bound)
                return "neighbour index out of range at vertex " + std::to_string(v);
            if (i > 0 && slice[i] <= slice[i - 1])
                return "slice of vertex " + std::to_string(v) + " is not strictly ascending";
            if (adj.mode == AdjacencyMode::NodeNeighbors && slice[i] == v)
                return "vertex " + std::to_string(v) + " lists itself";
        }
    }
    if (adj.mode == AdjacencyMode::NodeNeighbors) {
        for (std::size_t v = 0; v < v_count; ++v) {
            for (index_t u : adj.neighbors(static_cast<index_t>(v))) {
                const auto back = adj.neighbors(u);
                if (!std::binary_search(back.begin(), back.end(), static_cast<index_t>(v)))
                    return "asymmetric adjacency between " + std::to_string(v) + " and " + std::to_string(u);
            }
        }
    }
    return std::nullopt;
}

namespace {

std::string join(std::span<const index_t> values)
{
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out += ' ';
        out += std::to_string(values[i]);
    }
    return out + "]";
}

} // namespace

std::optional<std::string> describe_first_divergence(const CsrAdjacency& actual, const CsrAdjacency& expected)
{
    if (actual.mode != expected.mode)
        return std::string("mode differs: ") + std::string(to_string(actual.mode)) + " vs " +
               std::string(to_string(expected.mode));
    if (actual.vertex_count != expected.vertex_count)
        return "vertex count differs: " + std::to_string(actual.vertex_count) + " vs " +
               std::to_string(expected.vertex_count);
    if (actual.offsets.size() != expected.offsets.size() || actual.counts.size() != expected.counts.size())
        return std::string("array lengths differ");
    for (index_t v = 0; v < actual.vertex_count; ++v) {
        const auto a = actual.neighbors(v);
        const auto e = expected.neighbors(v);
        if (actual.counts[v] != expected.counts[v] || !std::equal(a.begin(), a.end(), e.begin(), e.end()))
            return "vertex " + std::to_string(v) + ": got " + join(a) + " (count " +
                   std::to_string(actual.counts[v]) + "), expected " + join(e) + " (count " +
                   std::to_string(expected.counts[v]) + ")";
    }
    if (actual != expected)
        return std::string("offsets or indices differ outside vertex slices");
    return std::nullopt;
}

} // namespace onering
