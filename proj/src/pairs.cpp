#include "onering/pairs.hpp"

#include <string>

#include "onering/errors.hpp"

namespace onering {

std::uint64_t node_pair_count(const Mesh& mesh) noexcept
{
    if (mesh.kind == ElementKind::Tetrahedron)
        return 2 * tetrahedron_edges.size() * std::uint64_t{mesh.element_count()};
    // Ring kinds have as many edges as nodes.
    return 2 * std::uint64_t{mesh.connectivity.size()};
}

std::uint64_t element_pair_count(const Mesh& mesh) noexcept
{
    return mesh.connectivity.size();
}

void require_index_capacity(std::uint64_t count, const char* what)
{
    if (count > max_index)
        throw CapacityOverflow(std::string(what) + " needs " + std::to_string(count) +
                               " entries, more than the 32-bit index range allows");
}

namespace {

std::size_t node_slot(const Mesh& mesh, std::size_t e) noexcept
{
    if (mesh.kind == ElementKind::Tetrahedron)
        return 2 * tetrahedron_edges.size() * e;
    return 2 * std::size_t{mesh.element_offsets[e]};
}

} // namespace

PairList expand_node_pairs(const ValidatedMesh& validated, const Backend& backend)
{
    const Mesh& mesh = validated.mesh();
    const std::uint64_t count = node_pair_count(mesh);
    require_index_capacity(count, "node pair expansion");

    PairList out;
    out.mode = AdjacencyMode::NodeNeighbors;
    out.keys.resize(count);
    out.values.resize(count);

    const std::size_t elements = mesh.element_count();
    detail::run_chunks(detail::chunk_count(backend, elements), elements,
                       [&](unsigned, std::size_t first, std::size_t last) {
                           for (std::size_t e = first; e < last; ++e) {
                               std::size_t slot = node_slot(mesh, e);
                               for_each_element_edge(mesh.kind, mesh.element(e), [&](index_t a, index_t b) {
                                   out.keys[slot] = a;
                                   out.values[slot] = b;
                                   out.keys[slot + 1] = b;
                                   out.values[slot + 1] = a;
                                   slot += 2;
                               });
                           }
                       });
    return out;
}

PairList expand_element_pairs(const ValidatedMesh& validated, const Backend& backend)
{
    const Mesh& mesh = validated.mesh();
    const std::uint64_t count = element_pair_count(mesh);
    require_index_capacity(count, "element pair expansion");

    PairList out;
    out.mode = AdjacencyMode::ElementNeighbors;
    out.keys.resize(count);
    out.values.resize(count);

    const std::size_t elements = mesh.element_count();
    detail::run_chunks(detail::chunk_count(backend, elements), elements,
                       [&](unsigned, std::size_t first, std::size_t last) {
                           for (std::size_t e = first; e < last; ++e) {
                               std::size_t slot = mesh.element_offsets[e];
                               for (index_t node : mesh.element(e)) {
                                   out.keys[slot] = node;
                                   out.values[slot] = static_cast<index_t>(e);
                                   ++slot;
                               }
                           }
                       });
    return out;
}

PairList expand_pairs(const ValidatedMesh& mesh, AdjacencyMode mode, const Backend& backend)
{
    return mode == AdjacencyMode::NodeNeighbors ? expand_node_pairs(mesh, backend)
                                                : expand_element_pairs(mesh, backend);
}

} // namespace onering
