#include "onering/mesh_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

#include "onering/errors.hpp"

namespace onering {

namespace {

// ---------------------------------------------------------------- lexing

class LineReader {
public:
    explicit LineReader(std::string_view data, std::size_t pos = 0) : data_(data), pos_(pos) {}

    // Next line without its terminator ('\n', with an optional preceding '\r').
    bool next(std::string_view& line)
    {
        if (pos_ >= data_.size())
            return false;
        const std::size_t end = data_.find('\n', pos_);
        const std::size_t stop = end == std::string_view::npos ? data_.size() : end;
        line = data_.substr(pos_, stop - pos_);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        pos_ = end == std::string_view::npos ? data_.size() : end + 1;
        ++line_no_;
        return true;
    }

    std::size_t line_no() const noexcept { return line_no_; }
    std::size_t position() const noexcept { return pos_; }

private:
    std::string_view data_;
    std::size_t pos_;
    std::size_t line_no_ = 0;
};

bool is_blank(char c) noexcept
{
    return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
}

void tokenize(std::string_view line, std::vector<std::string_view>& tokens)
{
    tokens.clear();
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_blank(line[i]))
            ++i;
        const std::size_t start = i;
        while (i < line.size() && !is_blank(line[i]))
            ++i;
        if (i > start)
            tokens.push_back(line.substr(start, i - start));
    }
}

// Blank and '#' lines carry no records in either format.
bool next_record(LineReader& reader, std::vector<std::string_view>& tokens)
{
    std::string_view line;
    while (reader.next(line)) {
        tokenize(line, tokens);
        if (!tokens.empty() && tokens.front().front() != '#')
            return true;
    }
    return false;
}

std::optional<std::int64_t> to_int(std::string_view token)
{
    std::int64_t value = 0;
    const char* first = token.data();
    if (!token.empty() && token.front() == '+')
        ++first;
    const char* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last)
        return std::nullopt;
    return value;
}

std::optional<double> to_double(std::string_view token)
{
    double value = 0.0;
    const char* first = token.data();
    if (!token.empty() && token.front() == '+')
        ++first;
    const char* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last)
        return std::nullopt;
    return value;
}

std::int64_t expect_int(std::string_view token, std::size_t line, const char* what)
{
    const auto value = to_int(token);
    if (!value)
        throw SyntaxError(line, std::string("expected integer ") + what + ", got '" + std::string(token) + "'");
    return *value;
}

void read_xyz(const std::vector<std::string_view>& tokens, std::size_t first, std::size_t line,
              std::vector<double>& coordinates)
{
    if (tokens.size() < first + 3)
        throw SyntaxError(line, "vertex needs three coordinates");
    for (std::size_t i = first; i < first + 3; ++i) {
        const auto value = to_double(tokens[i]);
        if (!value)
            throw SyntaxError(line, "bad coordinate '" + std::string(tokens[i]) + "'");
        coordinates.push_back(*value);
    }
}

void finish_kind(Mesh& mesh)
{
    bool all_triangles = true;
    for (std::size_t e = 0; e < mesh.element_count() && all_triangles; ++e)
        all_triangles = mesh.element_offsets[e + 1] - mesh.element_offsets[e] == 3;
    mesh.kind = all_triangles ? ElementKind::Triangle : ElementKind::Polygon;
}

// ---------------------------------------------------------------- binary helpers

void put_u64(std::string& out, std::uint64_t value)
{
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<char>((value >> (8 * i)) & 0xff));
}

void put_u32(std::string& out, std::uint32_t value)
{
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<char>((value >> (8 * i)) & 0xff));
}

std::uint64_t get_le(std::string_view bytes, std::size_t pos, int width)
{
    std::uint64_t value = 0;
    for (int i = width - 1; i >= 0; --i)
        value = value << 8 | static_cast<unsigned char>(bytes[pos + static_cast<std::size_t>(i)]);
    return value;
}

constexpr std::string_view csr_magic = "MESHCSR1";
constexpr std::size_t csr_header_bytes = 8 + 1 + 8 + 8;

AdjacencyMode mode_from_tag(std::uint64_t tag, std::size_t line)
{
    if (tag > 1)
        throw SyntaxError(line, "CSR mode must be 0 or 1");
    return tag == 0 ? AdjacencyMode::NodeNeighbors : AdjacencyMode::ElementNeighbors;
}

void check_decoded(CsrAdjacency& adj)
{
    adj.counts.resize(adj.vertex_count);
    for (std::size_t v = 0; v < adj.vertex_count; ++v) {
        if (adj.offsets[v + 1] < adj.offsets[v])
            throw CountMismatch("CSR offsets decrease at vertex " + std::to_string(v));
        adj.counts[v] = adj.offsets[v + 1] - adj.offsets[v];
    }
    if (auto violation = find_invariant_violation(adj))
        throw CountMismatch("CSR document violates adjacency invariants: " + *violation);
}

CsrAdjacency parse_binary(std::string_view bytes, std::size_t& pos)
{
    if (bytes.size() - pos < csr_header_bytes)
        throw CountMismatch("binary CSR header truncated");
    const std::uint64_t mode_tag = static_cast<unsigned char>(bytes[pos + 8]);
    const std::uint64_t vertex_count = get_le(bytes, pos + 9, 8);
    const std::uint64_t total = get_le(bytes, pos + 17, 8);
    if (vertex_count > max_index || total > max_index)
        throw CapacityOverflow("binary CSR counts exceed the 32-bit index range");
    pos += csr_header_bytes;
    const std::uint64_t needed = (vertex_count + 1) * 8 + total * 4;
    if (bytes.size() - pos < needed)
        throw CountMismatch("binary CSR body truncated");

    CsrAdjacency adj;
    adj.mode = mode_from_tag(mode_tag, 0);
    adj.vertex_count = static_cast<index_t>(vertex_count);
    adj.offsets.resize(vertex_count + 1);
    for (std::size_t v = 0; v <= vertex_count; ++v, pos += 8) {
        const std::uint64_t offset = get_le(bytes, pos, 8);
        if (offset > total)
            throw CountMismatch("binary CSR offset beyond the index section");
        adj.offsets[v] = static_cast<index_t>(offset);
    }
    if (adj.offsets.front() != 0 || adj.offsets.back() != total)
        throw CountMismatch("binary CSR offsets do not span the index section");
    adj.indices.resize(total);
    for (std::size_t i = 0; i < total; ++i, pos += 4)
        adj.indices[i] = static_cast<index_t>(get_le(bytes, pos, 4));
    check_decoded(adj);
    return adj;
}

CsrAdjacency parse_text(std::string_view bytes, std::size_t& pos)
{
    LineReader reader(bytes, pos);
    std::string_view line;
    std::vector<std::string_view> tokens;
    if (!reader.next(line))
        throw CountMismatch("empty CSR document");
    tokenize(line, tokens);
    if (tokens.size() != 4 || tokens[0] != csr_magic)
        throw SyntaxError(1, "expected 'MESHCSR1 <mode> <vertex_count> <total_neighbors>'");
    const std::int64_t mode_tag = expect_int(tokens[1], 1, "mode");
    const std::int64_t vertex_count = expect_int(tokens[2], 1, "vertex count");
    const std::int64_t total = expect_int(tokens[3], 1, "neighbour total");
    if (mode_tag < 0 || vertex_count < 0 || total < 0)
        throw SyntaxError(1, "negative count in CSR header");
    if (static_cast<std::uint64_t>(vertex_count) > max_index || static_cast<std::uint64_t>(total) > max_index)
        throw CapacityOverflow("text CSR counts exceed the 32-bit index range");

    CsrAdjacency adj;
    adj.mode = mode_from_tag(static_cast<std::uint64_t>(mode_tag), 1);
    adj.vertex_count = static_cast<index_t>(vertex_count);
    adj.offsets.assign(1, 0);
    for (std::int64_t v = 0; v < vertex_count; ++v) {
        if (!reader.next(line))
            throw CountMismatch("text CSR ends before vertex " + std::to_string(v));
        tokenize(line, tokens);
        const std::string expected = std::to_string(v) + ":";
        if (tokens.empty() || tokens[0] != expected)
            throw SyntaxError(reader.line_no(), "expected '" + expected + "'");
        for (std::size_t i = 1; i < tokens.size(); ++i) {
            const std::int64_t idx = expect_int(tokens[i], reader.line_no(), "neighbour index");
            if (idx < 0 || static_cast<std::uint64_t>(idx) > max_index)
                throw SyntaxError(reader.line_no(), "neighbour index out of range");
            if (adj.indices.size() >= static_cast<std::uint64_t>(total))
                throw CountMismatch("text CSR lists more neighbours than its header");
            adj.indices.push_back(static_cast<index_t>(idx));
        }
        adj.offsets.push_back(static_cast<index_t>(adj.indices.size()));
    }
    if (adj.indices.size() != static_cast<std::uint64_t>(total))
        throw CountMismatch("text CSR neighbour total disagrees with its header");
    pos = reader.position();
    check_decoded(adj);
    return adj;
}

CsrAdjacency parse_one(std::string_view bytes, std::size_t& pos)
{
    if (bytes.size() - pos < csr_magic.size() + 1 || bytes.substr(pos, csr_magic.size()) != csr_magic)
        throw SyntaxError(1, "missing MESHCSR1 magic");
    const char tag = bytes[pos + csr_magic.size()];
    if (tag == ' ' || tag == '\t')
        return parse_text(bytes, pos);
    return parse_binary(bytes, pos);
}

void append_number(std::string& out, std::uint64_t value)
{
    std::array<char, 24> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    out.append(buf.data(), ptr);
}

void append_double(std::string& out, double value)
{
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    out.append(buf.data(), ptr);
}

void append_coordinates(std::string& out, const Mesh& mesh, std::size_t v)
{
    for (std::size_t k = 0; k < 3; ++k) {
        if (k)
            out.push_back(' ');
        append_double(out, mesh.coordinates.empty() ? 0.0 : mesh.coordinates[3 * v + k]);
    }
}

} // namespace

ValidatedMesh load_off(std::string_view bytes)
{
    LineReader reader(bytes);
    std::vector<std::string_view> tokens;
    if (!next_record(reader, tokens))
        throw CountMismatch("OFF file has no counts line");

    std::size_t first = 0;
    if (tokens.front() == "OFF") {
        first = 1;
        if (tokens.size() == 1 && !next_record(reader, tokens))
            throw CountMismatch("OFF file has no counts line");
        if (tokens.front() != "OFF")
            first = 0;
    }
    if (tokens.size() - first != 3)
        throw SyntaxError(reader.line_no(), "expected counts line 'V F E'");
    const std::int64_t vertices = expect_int(tokens[first], reader.line_no(), "vertex count");
    const std::int64_t faces = expect_int(tokens[first + 1], reader.line_no(), "face count");
    expect_int(tokens[first + 2], reader.line_no(), "edge count");
    if (vertices < 0 || faces < 0)
        throw SyntaxError(reader.line_no(), "negative count");
    if (static_cast<std::uint64_t>(vertices) > max_index || static_cast<std::uint64_t>(faces) > max_index)
        throw CapacityOverflow("OFF counts exceed the 32-bit index range");

    Mesh mesh;
    mesh.vertex_count = static_cast<index_t>(vertices);
    for (std::int64_t v = 0; v < vertices; ++v) {
        if (!next_record(reader, tokens))
            throw CountMismatch("OFF file declares " + std::to_string(vertices) + " vertices but has " +
                                std::to_string(v));
        read_xyz(tokens, 0, reader.line_no(), mesh.coordinates);
    }

    std::vector<index_t> nodes;
    for (std::int64_t f = 0; f < faces; ++f) {
        if (!next_record(reader, tokens))
            throw CountMismatch("OFF file declares " + std::to_string(faces) + " faces but has " +
                                std::to_string(f));
        const std::int64_t arity = expect_int(tokens[0], reader.line_no(), "face arity");
        const auto element = static_cast<std::size_t>(f);
        if (arity < 3)
            throw ArityMismatch(element, arity < 0 ? 0 : static_cast<std::size_t>(arity));
        if (static_cast<std::uint64_t>(arity) > tokens.size() - 1)
            throw SyntaxError(reader.line_no(), "face lists fewer indices than its arity");
        nodes.clear();
        for (std::size_t p = 0; p < static_cast<std::size_t>(arity); ++p) {
            const std::int64_t idx = expect_int(tokens[p + 1], reader.line_no(), "vertex index");
            if (idx < 0 || idx >= vertices)
                throw IndexOutOfRange(element, p, idx);
            nodes.push_back(static_cast<index_t>(idx));
        }
        mesh.add_element(nodes);
    }
    if (next_record(reader, tokens))
        throw CountMismatch("OFF file has records beyond its declared counts (line " +
                            std::to_string(reader.line_no()) + ")");
    finish_kind(mesh);
    return validate_mesh(std::move(mesh));
}

ValidatedMesh load_obj(std::string_view bytes)
{
    LineReader reader(bytes);
    std::vector<std::string_view> tokens;
    Mesh mesh;
    std::uint64_t vertices = 0;
    std::vector<index_t> nodes;
    while (next_record(reader, tokens)) {
        const std::size_t line = reader.line_no();
        if (tokens[0] == "v") {
            read_xyz(tokens, 1, line, mesh.coordinates);
            if (++vertices > max_index)
                throw CapacityOverflow("OBJ vertex count exceeds the 32-bit index range");
        } else if (tokens[0] == "f") {
            const std::size_t element = mesh.element_count();
            if (tokens.size() < 4)
                throw ArityMismatch(element, tokens.size() - 1);
            nodes.clear();
            for (std::size_t p = 0; p + 1 < tokens.size(); ++p) {
                std::string_view ref = tokens[p + 1];
                ref = ref.substr(0, ref.find('/'));
                const std::int64_t raw = expect_int(ref, line, "face index");
                if (raw == 0)
                    throw ZeroIndex(line);
                const std::int64_t resolved = raw > 0 ? raw - 1 : static_cast<std::int64_t>(vertices) + raw;
                if (resolved < 0 || static_cast<std::uint64_t>(resolved) >= max_index)
                    throw IndexOutOfRange(element, p, resolved);
                nodes.push_back(static_cast<index_t>(resolved));
            }
            mesh.add_element(nodes);
        }
    }
    mesh.vertex_count = static_cast<index_t>(vertices);
    finish_kind(mesh);
    return validate_mesh(std::move(mesh));
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        throw Error("failed reading " + path.string());
    return std::move(buffer).str();
}

ValidatedMesh load_mesh_file(const std::filesystem::path& path)
{
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext != ".off" && ext != ".obj")
        throw Error("unsupported mesh file extension '" + ext + "' (expected .off or .obj)");
    const std::string bytes = read_file(path);
    return ext == ".off" ? load_off(bytes) : load_obj(bytes);
}

std::string emit_off(const Mesh& mesh)
{
    std::string out = "OFF\n";
    append_number(out, mesh.vertex_count);
    out.push_back(' ');
    append_number(out, mesh.element_count());
    out += " 0\n";
    for (std::size_t v = 0; v < mesh.vertex_count; ++v) {
        append_coordinates(out, mesh, v);
        out.push_back('\n');
    }
    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
        const auto nodes = mesh.element(e);
        append_number(out, nodes.size());
        for (index_t n : nodes) {
            out.push_back(' ');
            append_number(out, n);
        }
        out.push_back('\n');
    }
    return out;
}

std::string emit_obj(const Mesh& mesh)
{
    std::string out;
    for (std::size_t v = 0; v < mesh.vertex_count; ++v) {
        out += "v ";
        append_coordinates(out, mesh, v);
        out.push_back('\n');
    }
    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
        out.push_back('f');
        for (index_t n : mesh.element(e)) {
            out.push_back(' ');
            append_number(out, std::uint64_t{n} + 1);
        }
        out.push_back('\n');
    }
    return out;
}

std::string emit_csr(const CsrAdjacency& adj, CsrEncoding encoding)
{
    std::string out;
    const auto mode_tag = static_cast<std::uint8_t>(adj.mode);
    if (encoding == CsrEncoding::Binary) {
        out.reserve(csr_header_bytes + 8 * adj.offsets.size() + 4 * adj.indices.size());
        out.append(csr_magic);
        out.push_back(static_cast<char>(mode_tag));
        put_u64(out, adj.vertex_count);
        put_u64(out, adj.indices.size());
        for (index_t offset : adj.offsets)
            put_u64(out, offset);
        for (index_t idx : adj.indices)
            put_u32(out, idx);
        return out;
    }

    out.append(csr_magic);
    out.push_back(' ');
    append_number(out, mode_tag);
    out.push_back(' ');
    append_number(out, adj.vertex_count);
    out.push_back(' ');
    append_number(out, adj.indices.size());
    out.push_back('\n');
    for (index_t v = 0; v < adj.vertex_count; ++v) {
        append_number(out, v);
        out.push_back(':');
        for (index_t n : adj.neighbors(v)) {
            out.push_back(' ');
            append_number(out, n);
        }
        out.push_back('\n');
    }
    return out;
}

CsrAdjacency parse_csr(std::string_view bytes)
{
    std::size_t pos = 0;
    CsrAdjacency adj = parse_one(bytes, pos);
    if (pos != bytes.size())
        throw CountMismatch("trailing bytes after MESHCSR1 document");
    return adj;
}

std::vector<CsrAdjacency> parse_csr_documents(std::string_view bytes)
{
    std::vector<CsrAdjacency> docs;
    std::size_t pos = 0;
    while (pos < bytes.size())
        docs.push_back(parse_one(bytes, pos));
    return docs;
}

} // namespace onering
