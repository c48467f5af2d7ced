#ifndef ONERING_MESH_HPP
#define ONERING_MESH_HPP

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "onering/types.hpp"

namespace onering {

/// Unstructured mesh topology. Elements are stored flat: element e owns
/// connectivity[element_offsets[e] .. element_offsets[e+1]), in the order
/// that defines its edge ring. Coordinates are carried along for file
/// round-trips and never consulted by topology operations.
struct Mesh {
    index_t vertex_count = 0;
    ElementKind kind = ElementKind::Triangle;
    std::vector<index_t> element_offsets{0};
    std::vector<index_t> connectivity;
    std::vector<double> coordinates; // xyz triples, optional

    std::size_t element_count() const noexcept
    {
        return element_offsets.empty() ? 0 : element_offsets.size() - 1;
    }

    std::span<const index_t> element(std::size_t e) const noexcept
    {
        return std::span<const index_t>(connectivity)
            .subspan(element_offsets[e], element_offsets[e + 1] - element_offsets[e]);
    }

    void add_element(std::span<const index_t> nodes);
    void add_element(std::initializer_list<index_t> nodes)
    {
        add_element(std::span<const index_t>(nodes.begin(), nodes.size()));
    }

    friend bool operator==(const Mesh&, const Mesh&) = default;
};

/// A mesh whose invariants have been checked. Only validate_mesh creates one,
/// and it cannot be modified afterwards.
class ValidatedMesh {
public:
    const Mesh& mesh() const noexcept { return mesh_; }
    const Mesh* operator->() const noexcept { return &mesh_; }

    index_t vertex_count() const noexcept { return mesh_.vertex_count; }
    std::size_t element_count() const noexcept { return mesh_.element_count(); }
    ElementKind kind() const noexcept { return mesh_.kind; }
    std::span<const index_t> element(std::size_t e) const noexcept { return mesh_.element(e); }

private:
    explicit ValidatedMesh(Mesh mesh) : mesh_(std::move(mesh)) {}
    friend ValidatedMesh validate_mesh(Mesh mesh);

    Mesh mesh_;
};

struct MeshStats {
    std::size_t vertex_count = 0;
    std::size_t element_count = 0;
    std::size_t undirected_edge_count = 0;
    std::size_t isolated_vertex_count = 0;

    friend bool operator==(const MeshStats&, const MeshStats&) = default;
};

/// Checks offsets, arity per kind, index range and distinctness.
/// Throws IndexOutOfRange, DegenerateElement, ArityMismatch or MalformedMesh.
ValidatedMesh validate_mesh(Mesh mesh);

/// (rows+1) x (cols+1) vertex grid, every cell split along the
/// lower-left/upper-right diagonal into two CCW triangles.
Mesh generate_grid(std::size_t rows, std::size_t cols);

MeshStats mesh_stats(const ValidatedMesh& mesh);

/// Required arity for fixed kinds, 0 for Polygon.
std::size_t fixed_arity(ElementKind kind) noexcept;

/// Number of undirected edges an element of this kind and arity contributes.
std::size_t edges_per_element(ElementKind kind, std::size_t arity) noexcept;

inline constexpr std::array<std::pair<std::size_t, std::size_t>, 6> tetrahedron_edges{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// Calls fn(a, b) for every edge of the element. Surface kinds yield their
/// ring (consecutive nodes with wraparound), tetrahedra their six edges.
template <class Fn>
void for_each_element_edge(ElementKind kind, std::span<const index_t> nodes, Fn&& fn)
{
    if (kind == ElementKind::Tetrahedron) {
        for (auto [i, j] : tetrahedron_edges)
            fn(nodes[i], nodes[j]);
        return;
    }
    const std::size_t n = nodes.size();
    for (std::size_t i = 0; i < n; ++i)
        fn(nodes[i], nodes[i + 1 == n ? 0 : i + 1]);
}

} // namespace onering

#endif
