#ifndef ONERING_ORACLE_HPP
#define ONERING_ORACLE_HPP

#include <vector>

#include "onering/csr.hpp"
#include "onering/mesh.hpp"
#include "onering/types.hpp"

namespace onering {

/// Serial baseline: one growable list per vertex, filled by a single loop
/// over the elements.
struct OracleAdjacency {
    AdjacencyMode mode = AdjacencyMode::NodeNeighbors;
    std::vector<std::vector<index_t>> per_vertex;

    friend bool operator==(const OracleAdjacency&, const OracleAdjacency&) = default;
};

/// For each element edge {a, b}: append b to a's list and a to b's list
/// unless already present (linear scan), then sort every list.
OracleAdjacency oracle_node_neighbors(const ValidatedMesh& mesh);

/// Appends every element to the lists of the nodes it contains. Elements are
/// visited in ascending order, so the lists come out sorted.
OracleAdjacency oracle_element_neighbors(const ValidatedMesh& mesh);

OracleAdjacency oracle_adjacency(const ValidatedMesh& mesh, AdjacencyMode mode);

/// Flattens the per-vertex lists into CSR layout.
CsrAdjacency to_csr(const OracleAdjacency& oracle);

} // namespace onering

#endif
