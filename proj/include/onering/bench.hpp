#ifndef ONERING_BENCH_HPP
#define ONERING_BENCH_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "onering/backend.hpp"
#include "onering/csr.hpp"
#include "onering/mesh.hpp"

namespace onering {

enum class BenchMode { Nodes, Elements, Both };

std::string_view to_string(BenchMode mode) noexcept;
std::optional<BenchMode> bench_mode_from_string(std::string_view name) noexcept;

/// One timed comparison of the serial baseline against the parallel
/// pipeline. Times are medians over `repetitions` runs.
struct BenchRecord {
    std::string mesh_name;
    std::size_t vertex_count = 0;
    std::size_t element_count = 0;
    BenchMode mode = BenchMode::Both;
    double serial_ms = 0.0;
    double parallel_ms = 0.0;
    double speedup = 0.0;
    unsigned worker_count = 0;
    unsigned repetitions = 0;
    std::size_t peak_bytes = 0;
};

using AdjacencyBuilder = std::function<CsrAdjacency(const ValidatedMesh&, AdjacencyMode, const Backend&)>;

/// Times only adjacency construction: the oracle lists for the serial side,
/// `builder` on a Parallel backend for the other. One untimed warm-up run
/// compares both outputs first and throws VerificationFailed on any
/// difference. Both mode sums the two stages per repetition.
BenchRecord run_benchmark(const ValidatedMesh& mesh, BenchMode mode, unsigned worker_count, unsigned repetitions,
                          std::string mesh_name = "mesh", const AdjacencyBuilder& builder = build_adjacency);

enum class ReportFormat { Csv, Json };

/// CSV header "mesh,vertices,elements,mode,serial_ms,parallel_ms,speedup,workers,peak_bytes";
/// times and speedup are printed with one decimal. JSON uses the same field
/// names, in the same order, with full-precision numbers.
std::string emit_report(std::span<const BenchRecord> records, ReportFormat format);

/// Parses emit_report's JSON. `repetitions` is not part of the report and
/// comes back as 0.
std::vector<BenchRecord> parse_report_json(std::string_view json);

double median(std::vector<double> samples);

} // namespace onering

#endif
