#include "onering/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include <json.hpp>

#include "onering/errors.hpp"
#include "onering/oracle.hpp"

namespace onering {

std::string_view to_string(BenchMode mode) noexcept
{
    switch (mode) {
    case BenchMode::Nodes: return "nodes";
    case BenchMode::Elements: return "elements";
    case BenchMode::Both: return "both";
    }
    return "unknown";
}

std::optional<BenchMode> bench_mode_from_string(std::string_view name) noexcept
{
    if (name == "nodes")
        return BenchMode::Nodes;
    if (name == "elements")
        return BenchMode::Elements;
    if (name == "both")
        return BenchMode::Both;
    return std::nullopt;
}

double median(std::vector<double> samples)
{
    if (samples.empty())
        return 0.0;
    const std::size_t mid = samples.size() / 2;
    std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(mid), samples.end());
    const double upper = samples[mid];
    if (samples.size() % 2 == 1)
        return upper;
    const double lower = *std::max_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

namespace {

std::vector<AdjacencyMode> stages(BenchMode mode)
{
    switch (mode) {
    case BenchMode::Nodes: return {AdjacencyMode::NodeNeighbors};
    case BenchMode::Elements: return {AdjacencyMode::ElementNeighbors};
    case BenchMode::Both: break;
    }
    return {AdjacencyMode::NodeNeighbors, AdjacencyMode::ElementNeighbors};
}

// Wall time of fn() in milliseconds; the result is destroyed after the clock stops.
template <class Fn>
double time_ms(Fn&& fn)
{
    const auto start = std::chrono::steady_clock::now();
    auto result = fn();
    const auto stop = std::chrono::steady_clock::now();
    (void)result;
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

std::string csv_field(const std::string& text)
{
    if (text.find_first_of(",\"\n") == std::string::npos)
        return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string one_decimal(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", value);
    return buf;
}

} // namespace

BenchRecord run_benchmark(const ValidatedMesh& mesh, BenchMode mode, unsigned worker_count, unsigned repetitions,
                          std::string mesh_name, const AdjacencyBuilder& builder)
{
    if (repetitions < 3)
        throw PreconditionError("benchmark needs at least 3 repetitions, got " + std::to_string(repetitions));
    const Backend backend = Backend::parallel(worker_count);
    const auto modes = stages(mode);

    // Warm-up doubles as the equality gate: nothing is timed unless it passes.
    for (AdjacencyMode m : modes) {
        const CsrAdjacency parallel = builder(mesh, m, backend);
        const CsrAdjacency serial = to_csr(oracle_adjacency(mesh, m));
        if (auto diff = describe_first_divergence(parallel, serial))
            throw VerificationFailed(std::string(to_string(m)) + " adjacency differs from the serial baseline: " +
                                     *diff);
    }

    std::vector<double> serial_samples;
    std::vector<double> parallel_samples;
    for (unsigned r = 0; r < repetitions; ++r) {
        double serial = 0.0;
        double parallel = 0.0;
        for (AdjacencyMode m : modes) {
            serial += time_ms([&] { return oracle_adjacency(mesh, m); });
            parallel += time_ms([&] { return builder(mesh, m, backend); });
        }
        serial_samples.push_back(serial);
        parallel_samples.push_back(parallel);
    }

    BenchRecord record;
    record.mesh_name = std::move(mesh_name);
    record.vertex_count = mesh.vertex_count();
    record.element_count = mesh.element_count();
    record.mode = mode;
    record.serial_ms = median(serial_samples);
    record.parallel_ms = median(parallel_samples);
    record.speedup = record.parallel_ms > 0.0 ? record.serial_ms / record.parallel_ms : 0.0;
    record.worker_count = backend.workers();
    record.repetitions = repetitions;
    for (AdjacencyMode m : modes)
        record.peak_bytes = std::max(record.peak_bytes, estimate_memory(mesh, m).peak_bytes);
    return record;
}

std::string emit_report(std::span<const BenchRecord> records, ReportFormat format)
{
    if (format == ReportFormat::Json) {
        nlohmann::ordered_json doc = nlohmann::ordered_json::array();
        for (const auto& r : records) {
            nlohmann::ordered_json row;
            row["mesh"] = r.mesh_name;
            row["vertices"] = r.vertex_count;
            row["elements"] = r.element_count;
            row["mode"] = std::string(to_string(r.mode));
            row["serial_ms"] = r.serial_ms;
            row["parallel_ms"] = r.parallel_ms;
            row["speedup"] = r.speedup;
            row["workers"] = r.worker_count;
            row["peak_bytes"] = r.peak_bytes;
            doc.push_back(std::move(row));
        }
        return doc.dump(2) + "\n";
    }

    std::string out = "mesh,vertices,elements,mode,serial_ms,parallel_ms,speedup,workers,peak_bytes\n";
    for (const auto& r : records) {
        out += csv_field(r.mesh_name) + ',' + std::to_string(r.vertex_count) + ',' +
               std::to_string(r.element_count) + ',' + std::string(to_string(r.mode)) + ',' +
               one_decimal(r.serial_ms) + ',' + one_decimal(r.parallel_ms) + ',' + one_decimal(r.speedup) + ',' +
               std::to_string(r.worker_count) + ',' + std::to_string(r.peak_bytes) + '\n';
    }
    return out;
}

std::vector<BenchRecord> parse_report_json(std::string_view json)
{
    std::vector<BenchRecord> records;
    try {
        const auto doc = nlohmann::json::parse(json);
        if (!doc.is_array())
            throw Error("benchmark report must be a JSON array");
        for (const auto& row : doc) {
            BenchRecord r;
            r.mesh_name = row.at("mesh").get<std::string>();
            r.vertex_count = row.at("vertices").get<std::size_t>();
            r.element_count = row.at("elements").get<std::size_t>();
            const auto mode = bench_mode_from_string(row.at("mode").get<std::string>());
            if (!mode)
                throw Error("unknown benchmark mode in report");
            r.mode = *mode;
            r.serial_ms = row.at("serial_ms").get<double>();
            r.parallel_ms = row.at("parallel_ms").get<double>();
            r.speedup = row.at("speedup").get<double>();
            r.worker_count = row.at("workers").get<unsigned>();
            r.peak_bytes = row.at("peak_bytes").get<std::size_t>();
            records.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed benchmark report: ") + e.what());
    }
    return records;
}

} // namespace onering
