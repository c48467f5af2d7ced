#include "onering/types.hpp"

namespace onering {

std::string_view to_string(ElementKind kind) noexcept
{
    switch (kind) {
    case ElementKind::Triangle: return "triangle";
    case ElementKind::Quad: return "quad";
    case ElementKind::Tetrahedron: return "tetrahedron";
    case ElementKind::Polygon: return "polygon";
    }
    return "unknown";
}

std::string_view to_string(AdjacencyMode mode) noexcept
{
    return mode == AdjacencyMode::NodeNeighbors ? "nodes" : "elements";
}

} // namespace onering
