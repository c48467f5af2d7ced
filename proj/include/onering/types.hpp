#ifndef ONERING_TYPES_HPP
#define ONERING_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string_view>

namespace onering {

// Width of every vertex/element/pair index handled by the pipeline. Meshes
// whose expansion would not fit are rejected with CapacityOverflow.
using index_t = std::uint32_t;

inline constexpr std::size_t index_width = sizeof(index_t);
inline constexpr std::uint64_t max_index = std::numeric_limits<index_t>::max();

enum class ElementKind : std::uint8_t { Triangle, Quad, Tetrahedron, Polygon };

// Numeric values are the on-disk mode tag of the MESHCSR1 format.
enum class AdjacencyMode : std::uint8_t { NodeNeighbors = 0, ElementNeighbors = 1 };

std::string_view to_string(ElementKind kind) noexcept;
std::string_view to_string(AdjacencyMode mode) noexcept;

} // namespace onering

#endif
