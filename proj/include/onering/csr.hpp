#ifndef ONERING_CSR_HPP
#define ONERING_CSR_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "onering/backend.hpp"
#include "onering/mesh.hpp"
#include "onering/types.hpp"

namespace onering {

/// Per-vertex neighbour lists in compressed sparse row layout. Vertex v's
/// neighbours are indices[offsets[v] .. offsets[v+1]), strictly ascending.
struct CsrAdjacency {
    AdjacencyMode mode = AdjacencyMode::NodeNeighbors;
    index_t vertex_count = 0;
    std::vector<index_t> offsets{0};
    std::vector<index_t> counts;
    std::vector<index_t> indices;

    std::span<const index_t> neighbors(index_t v) const noexcept
    {
        return std::span<const index_t>(indices).subspan(offsets[v], offsets[v + 1] - offsets[v]);
    }
    std::size_t total_neighbors() const noexcept { return indices.size(); }

    friend bool operator==(const CsrAdjacency&, const CsrAdjacency&) = default;
};

/// Byte counts of the pipeline's working set. The schedule is:
/// expand (2 pair arrays) -> sort (two 64-bit packed buffers, then the
/// sorted pair copy) -> dedup -> run lengths -> dense counts -> offsets,
/// with the sorted values array becoming the output indices.
struct MemoryEstimate {
    std::size_t pair_bytes = 0;
    std::size_t helper_bytes = 0;
    std::size_t output_bytes = 0;
    std::size_t peak_bytes = 0;

    friend bool operator==(const MemoryEstimate&, const MemoryEstimate&) = default;
};

/// Expand, sort by (key, value), drop repeated directed pairs (node mode),
/// count runs, scatter counts densely, scan to offsets.
CsrAdjacency build_adjacency(const ValidatedMesh& mesh, AdjacencyMode mode, const Backend& backend);

/// Computed from element counts and arities alone. Node mode sizes the
/// output for the undeduplicated pair count, an upper bound.
MemoryEstimate estimate_memory(const ValidatedMesh& mesh, AdjacencyMode mode);

/// First violated CSR invariant, if any. `element_count` bounds element-mode
/// indices when given.
std::optional<std::string> find_invariant_violation(const CsrAdjacency& adjacency,
                                                    std::optional<std::size_t> element_count = {});

/// Human-readable description of the first difference between two
/// adjacencies, or nullopt when they are equal.
std::optional<std::string> describe_first_divergence(const CsrAdjacency& actual, const CsrAdjacency& expected);

} // namespace onering

#endif
