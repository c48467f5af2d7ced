#ifndef ONERING_MESH_IO_HPP
#define ONERING_MESH_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "onering/csr.hpp"
#include "onering/mesh.hpp"

namespace onering {

/// OFF: optional "OFF" header line, "V F E" counts (E ignored), V vertex lines
/// of at least three numbers, F face lines "k i0 .. ik-1" with 0-based
/// indices. Lines starting with '#' are skipped. All-triangle files load as
/// Triangle meshes, anything else as Polygon.
ValidatedMesh load_off(std::string_view bytes);

/// OBJ: "v" and "f" records; face indices are 1-based, may carry /t/n
/// suffixes and may be negative (relative to the vertices read so far).
/// Every other record type is ignored.
ValidatedMesh load_obj(std::string_view bytes);

/// Dispatches on the file extension (.off / .obj, case-insensitive).
ValidatedMesh load_mesh_file(const std::filesystem::path& path);

std::string emit_off(const Mesh& mesh);
std::string emit_obj(const Mesh& mesh);

enum class CsrEncoding { Text, Binary };

/// MESHCSR1 document. Text: "MESHCSR1 <mode> <V> <total>" then one
/// "<v>: n0 n1 ..." line per vertex. Binary: the 8-byte magic, a mode byte,
/// V and total as u64 LE, V+1 offsets as u64 LE, total indices as u32 LE.
std::string emit_csr(const CsrAdjacency& adjacency, CsrEncoding encoding);

/// Reads exactly one MESHCSR1 document of either encoding.
CsrAdjacency parse_csr(std::string_view bytes);

/// Reads a concatenation of MESHCSR1 documents (as written by `build --mode both`).
std::vector<CsrAdjacency> parse_csr_documents(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);

} // namespace onering

#endif
