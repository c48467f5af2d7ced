#include "onering/mesh.hpp"

#include <algorithm>
#include <string>

#include "onering/errors.hpp"

namespace onering {

void Mesh::add_element(std::span<const index_t> nodes)
{
    if (connectivity.size() + nodes.size() > max_index)
        throw CapacityOverflow("mesh connectivity exceeds the 32-bit index range");
    if (element_offsets.empty())
        element_offsets.push_back(0);
    connectivity.insert(connectivity.end(), nodes.begin(), nodes.end());
    element_offsets.push_back(static_cast<index_t>(connectivity.size()));
}

std::size_t fixed_arity(ElementKind kind) noexcept
{
    switch (kind) {
    case ElementKind::Triangle: return 3;
    case ElementKind::Quad: return 4;
    case ElementKind::Tetrahedron: return 4;
    case ElementKind::Polygon: return 0;
    }
    return 0;
}

std::size_t edges_per_element(ElementKind kind, std::size_t arity) noexcept
{
    return kind == ElementKind::Tetrahedron ? tetrahedron_edges.size() : arity;
}

namespace {

bool has_repeat(std::span<const index_t> nodes)
{
    if (nodes.size() <= 16) {
        for (std::size_t i = 1; i < nodes.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (nodes[i] == nodes[j])
                    return true;
        return false;
    }
    std::vector<index_t> sorted(nodes.begin(), nodes.end());
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

} // namespace

ValidatedMesh validate_mesh(Mesh mesh)
{
    const auto& offsets = mesh.element_offsets;
    if (offsets.empty() || offsets.front() != 0)
        throw MalformedMesh("element offsets must start with 0");
    if (offsets.back() != mesh.connectivity.size())
        throw MalformedMesh("last element offset does not match connectivity length");
    if (!mesh.coordinates.empty() && mesh.coordinates.size() != 3 * std::size_t{mesh.vertex_count})
        throw MalformedMesh("coordinate array must hold one xyz triple per vertex");

    const std::size_t required = fixed_arity(mesh.kind);
    for (std::size_t e = 0; e + 1 < offsets.size(); ++e) {
        if (offsets[e + 1] < offsets[e])
            throw MalformedMesh("element offsets decrease at element " + std::to_string(e));
        const auto nodes = mesh.element(e);
        if (required != 0 ? nodes.size() != required : nodes.size() < 3)
            throw ArityMismatch(e, nodes.size());
        for (std::size_t p = 0; p < nodes.size(); ++p)
            if (nodes[p] >= mesh.vertex_count)
                throw IndexOutOfRange(e, p, nodes[p]);
        if (has_repeat(nodes))
            throw DegenerateElement(e);
    }
    return ValidatedMesh(std::move(mesh));
}

Mesh generate_grid(std::size_t rows, std::size_t cols)
{
    if (rows == 0 || cols == 0)
        throw PreconditionError("grid needs at least one row and one column");
    const std::uint64_t vertices = std::uint64_t{rows + 1} * (cols + 1);
    const std::uint64_t triangles = 2 * std::uint64_t{rows} * cols;
    // Node-mode expansion emits six indices per triangle; that bound keeps
    // every later stage representable.
    if (vertices > max_index || 6 * triangles > max_index)
        throw CapacityOverflow("grid " + std::to_string(rows) + "x" + std::to_string(cols) +
                               " exceeds the 32-bit index range");

    Mesh mesh;
    mesh.kind = ElementKind::Triangle;
    mesh.vertex_count = static_cast<index_t>(vertices);
    mesh.coordinates.reserve(3 * vertices);
    for (std::size_t i = 0; i <= rows; ++i) {
        for (std::size_t j = 0; j <= cols; ++j) {
            mesh.coordinates.push_back(static_cast<double>(j));
            mesh.coordinates.push_back(static_cast<double>(i));
            mesh.coordinates.push_back(0.0);
        }
    }

    mesh.connectivity.reserve(3 * triangles);
    mesh.element_offsets.reserve(triangles + 1);
    const auto stride = static_cast<index_t>(cols + 1);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const auto v00 = static_cast<index_t>(i * stride + j);
            const index_t v01 = v00 + 1;
            const index_t v10 = v00 + stride;
            const index_t v11 = v10 + 1;
            mesh.add_element({v00, v01, v11});
            mesh.add_element({v00, v11, v10});
        }
    }
    return mesh;
}

MeshStats mesh_stats(const ValidatedMesh& mesh)
{
    MeshStats stats;
    stats.vertex_count = mesh.vertex_count();
    stats.element_count = mesh.element_count();

    std::vector<bool> used(mesh.vertex_count(), false);
    std::vector<std::uint64_t> edges;
    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
        const auto nodes = mesh.element(e);
        for (index_t v : nodes)
            used[v] = true;
        for_each_element_edge(mesh.kind(), nodes, [&](index_t a, index_t b) {
            const auto [lo, hi] = std::minmax(a, b);
            edges.push_back(std::uint64_t{lo} << 32 | hi);
        });
    }
    std::sort(edges.begin(), edges.end());
    stats.undirected_edge_count =
        static_cast<std::size_t>(std::unique(edges.begin(), edges.end()) - edges.begin());
    stats.isolated_vertex_count = static_cast<std::size_t>(std::count(used.begin(), used.end(), false));
    return stats;
}

} // namespace onering
