#include "onering/oracle.hpp"

#include <algorithm>

#include "onering/errors.hpp"

namespace onering {

namespace {

void insert_once(std::vector<index_t>& list, index_t value)
{
    for (index_t existing : list)
        if (existing == value)
            return;
    list.push_back(value);
}

} // namespace

OracleAdjacency oracle_node_neighbors(const ValidatedMesh& mesh)
{
    OracleAdjacency out;
    out.mode = AdjacencyMode::NodeNeighbors;
    out.per_vertex.resize(mesh.vertex_count());
    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
        for_each_element_edge(mesh.kind(), mesh.element(e), [&](index_t a, index_t b) {
            insert_once(out.per_vertex[a], b);
            insert_once(out.per_vertex[b], a);
        });
    }
    for (auto& list : out.per_vertex)
        std::sort(list.begin(), list.end());
    return out;
}

OracleAdjacency oracle_element_neighbors(const ValidatedMesh& mesh)
{
    OracleAdjacency out;
    out.mode = AdjacencyMode::ElementNeighbors;
    out.per_vertex.resize(mesh.vertex_count());
    for (std::size_t e = 0; e < mesh.element_count(); ++e)
        for (index_t node : mesh.element(e))
            out.per_vertex[node].push_back(static_cast<index_t>(e));
    return out;
}

OracleAdjacency oracle_adjacency(const ValidatedMesh& mesh, AdjacencyMode mode)
{
    return mode == AdjacencyMode::NodeNeighbors ? oracle_node_neighbors(mesh) : oracle_element_neighbors(mesh);
}

CsrAdjacency to_csr(const OracleAdjacency& oracle)
{
    if (oracle.per_vertex.size() > max_index)
        throw CapacityOverflow("oracle has more vertices than the 32-bit index range allows");
    CsrAdjacency out;
    out.mode = oracle.mode;
    out.vertex_count = static_cast<index_t>(oracle.per_vertex.size());
    out.offsets.assign(1, 0);
    out.offsets.reserve(oracle.per_vertex.size() + 1);
    out.counts.reserve(oracle.per_vertex.size());
    std::uint64_t total = 0;
    for (const auto& list : oracle.per_vertex) {
        total += list.size();
        if (total > max_index)
            throw CapacityOverflow("oracle neighbour total exceeds the 32-bit index range");
        out.counts.push_back(static_cast<index_t>(list.size()));
        out.offsets.push_back(static_cast<index_t>(total));
    }
    out.indices.reserve(total);
    for (const auto& list : oracle.per_vertex)
        out.indices.insert(out.indices.end(), list.begin(), list.end());
    return out;
}

} // namespace onering
