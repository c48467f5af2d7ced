#ifndef ONERING_PAIRS_HPP
#define ONERING_PAIRS_HPP

#include <cstdint>
#include <vector>

#include "onering/backend.hpp"
#include "onering/mesh.hpp"
#include "onering/types.hpp"

namespace onering {

/// Two parallel integer arrays: pair i is (keys[i], values[i]).
struct PairList {
    AdjacencyMode mode = AdjacencyMode::NodeNeighbors;
    std::vector<index_t> keys;
    std::vector<index_t> values;

    std::size_t size() const noexcept { return keys.size(); }
    friend bool operator==(const PairList&, const PairList&) = default;
};

/// Directed node pairs the mesh expands to: both orientations of every
/// element edge.
std::uint64_t node_pair_count(const Mesh& mesh) noexcept;

/// One (node, element) pair per element slot.
std::uint64_t element_pair_count(const Mesh& mesh) noexcept;

/// Throws CapacityOverflow when `count` entries cannot be addressed by index_t.
void require_index_capacity(std::uint64_t count, const char* what);

/// For every element edge (a, b) in element order emits (a, b) then (b, a).
/// Each element writes a fixed slot range, so chunks never overlap.
PairList expand_node_pairs(const ValidatedMesh& mesh, const Backend& backend = Backend::serial());

/// For element e with nodes n0..nk-1 emits (n0, e) .. (nk-1, e).
PairList expand_element_pairs(const ValidatedMesh& mesh, const Backend& backend = Backend::serial());

PairList expand_pairs(const ValidatedMesh& mesh, AdjacencyMode mode,
                      const Backend& backend = Backend::serial());

} // namespace onering

#endif
