// Acceptance runner: one PASS/FAIL line per criterion.
//
// Exit status is non-zero when a criterion fails, except a performance
// failure on a host with fewer than four hardware threads, where the speedup
// target is not defined; that line still reads FAIL. --strict counts it too.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "onering/bench.hpp"
#include "onering/csr.hpp"
#include "onering/mesh_io.hpp"
#include "onering/oracle.hpp"
#include "support/alloc_tracker.hpp"
#include "support/corpus.hpp"
#include "support/fuzz.hpp"

using namespace onering;
namespace alloc = onering::testing::alloc;

namespace {

using clock_type = std::chrono::steady_clock;

struct Verdict {
    bool pass = false;
    std::string detail;
    bool host_limited = false; // failed only because the machine is too small
};

const AdjacencyMode both_modes[] = {AdjacencyMode::NodeNeighbors, AdjacencyMode::ElementNeighbors};

double seconds_since(clock_type::time_point start)
{
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

std::string fmt(const char* format, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

std::vector<Backend> all_backends()
{
    return {Backend::serial(), Backend::parallel(1), Backend::parallel(2), Backend::parallel(4), Backend::parallel(8)};
}

unsigned hardware_threads()
{
    return std::max(1U, std::thread::hardware_concurrency());
}

Verdict oracle_equivalence(const std::vector<testing::NamedMesh>& corpus)
{
    const auto start = clock_type::now();
    std::size_t builds = 0;
    for (const auto& named : corpus) {
        const auto mesh = validate_mesh(named.mesh);
        for (AdjacencyMode mode : both_modes) {
            const CsrAdjacency expected = to_csr(oracle_adjacency(mesh, mode));
            const std::string text = emit_csr(expected, CsrEncoding::Text);
            const std::string bin = emit_csr(expected, CsrEncoding::Binary);
            for (const Backend& b : all_backends()) {
                const CsrAdjacency actual = build_adjacency(mesh, mode, b);
                ++builds;
                if (emit_csr(actual, CsrEncoding::Binary) != bin || emit_csr(actual, CsrEncoding::Text) != text) {
                    const auto diff = describe_first_divergence(actual, expected);
                    return {false, named.name + " " + std::string(to_string(mode)) + " workers=" +
                                       std::to_string(b.is_parallel() ? b.workers() : 0) + ": " +
                                       diff.value_or("bytes differ")};
                }
            }
        }
    }
    const double secs = seconds_since(start);
    const bool pass = corpus.size() >= 30 && secs < 60.0;
    return {pass, fmt("%zu meshes, %zu builds byte-identical to oracle in %.1f s (limit 60 s)", corpus.size(), builds,
                      secs)};
}

Verdict handshake(const std::vector<testing::NamedMesh>& corpus)
{
    for (const auto& named : corpus) {
        const auto mesh = validate_mesh(named.mesh);
        const std::size_t edges = testing::brute_force_edges(named.mesh).size();
        const std::size_t arities = named.mesh.connectivity.size();
        const auto nodes = build_adjacency(mesh, AdjacencyMode::NodeNeighbors, Backend::parallel(4));
        const auto elems = build_adjacency(mesh, AdjacencyMode::ElementNeighbors, Backend::parallel(4));
        const auto count_sum = [](const CsrAdjacency& a) {
            return std::accumulate(a.counts.begin(), a.counts.end(), std::size_t{0});
        };
        if (count_sum(nodes) != 2 * edges || mesh_stats(mesh).undirected_edge_count != edges)
            return {false, named.name + fmt(": node counts sum %zu, expected %zu", count_sum(nodes), 2 * edges)};
        if (count_sum(elems) != arities)
            return {false, named.name + fmt(": element counts sum %zu, expected %zu", count_sum(elems), arities)};
    }
    return {true, fmt("%zu meshes: node sum = 2 x edges, element sum = total arity", corpus.size())};
}

Verdict determinism()
{
    const auto mesh = validate_mesh(generate_grid(500, 500));
    std::size_t builds = 0;
    for (AdjacencyMode mode : both_modes) {
        std::string reference;
        for (unsigned workers : {1U, 2U, 4U, 8U}) {
            for (int rep = 0; rep < 10; ++rep) {
                const std::string bytes =
                    emit_csr(build_adjacency(mesh, mode, Backend::parallel(workers)), CsrEncoding::Binary);
                ++builds;
                if (reference.empty())
                    reference = bytes;
                else if (bytes != reference)
                    return {false, fmt("%s output differs at workers=%u repetition %d",
                                       std::string(to_string(mode)).c_str(), workers, rep)};
            }
        }
    }
    return {true, fmt("grid 500x500: %zu parallel builds bitwise identical (workers 1/2/4/8, both modes)", builds)};
}

Verdict performance()
{
    const unsigned cores = hardware_threads();
    const unsigned workers = std::max(4U, cores);
    const auto mesh = validate_mesh(generate_grid(940, 940));
    const BenchRecord nodes = run_benchmark(mesh, BenchMode::Nodes, workers, 5, "grid-940x940");
    const BenchRecord elems = run_benchmark(mesh, BenchMode::Elements, workers, 5, "grid-940x940");
    const double parallel_total_s = (nodes.parallel_ms + elems.parallel_ms) / 1000.0;
    const bool pass = nodes.speedup >= 2.0 && elems.speedup >= 2.0 && parallel_total_s < 10.0 &&
                      elems.speedup >= nodes.speedup;
    Verdict v{pass,
              fmt("grid 940x940, %u workers on %u hardware threads: node speedup %.2f (%.1f/%.1f ms), element "
                  "speedup %.2f (%.1f/%.1f ms), parallel total %.2f s; need both >= 2.0, total < 10 s, "
                  "element >= node",
                  workers, cores, nodes.speedup, nodes.serial_ms, nodes.parallel_ms, elems.speedup, elems.serial_ms,
                  elems.parallel_ms, parallel_total_s)};
    v.host_limited = !pass && cores < 4;
    if (v.host_limited)
        v.detail += "; host has fewer than the 4 cores this target assumes";
    return v;
}

double median_build_ms(const ValidatedMesh& mesh, int reps)
{
    std::vector<double> samples;
    for (int r = 0; r < reps; ++r) {
        const auto start = clock_type::now();
        for (AdjacencyMode mode : both_modes)
            (void)build_adjacency(mesh, mode, Backend::parallel());
        samples.push_back(seconds_since(start) * 1000.0);
    }
    return median(samples);
}

Verdict scaling()
{
    struct Size {
        std::size_t rows, cols;
    };
    const Size sizes[] = {{250, 200}, {500, 400}, {1000, 800}};
    std::vector<double> times, triangles;
    for (const Size& s : sizes) {
        const auto mesh = validate_mesh(generate_grid(s.rows, s.cols));
        (void)build_adjacency(mesh, AdjacencyMode::NodeNeighbors, Backend::parallel());
        times.push_back(median_build_ms(mesh, 5));
        triangles.push_back(2.0 * static_cast<double>(s.rows * s.cols));
    }
    bool pass = true;
    std::string detail = fmt("times %.1f / %.1f / %.1f ms for 100k / 400k / 1.6M triangles", times[0], times[1],
                             times[2]);
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        const double size_ratio = triangles[i + 1] / triangles[i];
        const double bound = 1.5 * size_ratio * (std::log(triangles[i + 1]) / std::log(triangles[i]));
        const double ratio = times[i + 1] / times[i];
        pass = pass && ratio <= bound;
        detail += fmt("; ratio %.2f (bound %.2f)", ratio, bound);
    }
    return {pass, detail};
}

Verdict memory_fidelity()
{
    const auto mesh = validate_mesh(generate_grid(940, 940));
    const MemoryEstimate est = estimate_memory(mesh, AdjacencyMode::NodeNeighbors);
    alloc::set_enabled(true);
    const std::size_t before = alloc::current_bytes();
    alloc::reset_peak();
    std::size_t measured = 0;
    {
        const CsrAdjacency adj = build_adjacency(mesh, AdjacencyMode::NodeNeighbors, Backend::parallel());
        measured = alloc::peak_bytes() - before;
    }
    alloc::set_enabled(false);
    const double rel = (static_cast<double>(est.peak_bytes) - static_cast<double>(measured)) /
                       static_cast<double>(measured);
    return {std::abs(rel) <= 0.10,
            fmt("grid 940x940 nodes: estimate %zu B, measured peak %zu B, error %+.2f%% (limit 10%%)",
                est.peak_bytes, measured, rel * 100.0)};
}

Verdict io_robustness(const std::vector<testing::NamedMesh>& corpus)
{
    std::size_t accepted = 0, rejected = 0;
    for (auto format : {testing::MeshFormat::Off, testing::MeshFormat::Obj}) {
        const auto outcome = testing::fuzz_loader(format, 20241014, 1500);
        if (!outcome.failures.empty())
            return {false, outcome.failures.front()};
        accepted += outcome.accepted;
        rejected += outcome.rejected;
    }
    std::size_t documents = 0;
    for (const auto& named : corpus) {
        const auto mesh = validate_mesh(named.mesh);
        for (AdjacencyMode mode : both_modes) {
            const CsrAdjacency adj = build_adjacency(mesh, mode, Backend::parallel(2));
            for (CsrEncoding enc : {CsrEncoding::Text, CsrEncoding::Binary}) {
                const std::string bytes = emit_csr(adj, enc);
                const CsrAdjacency back = parse_csr(bytes);
                ++documents;
                if (!(back == adj) || emit_csr(back, enc) != bytes)
                    return {false, named.name + ": CSR round trip not exact"};
            }
        }
    }
    return {true, fmt("3000 mutated OFF/OBJ inputs (%zu accepted valid, %zu typed rejections, 0 crashes); %zu CSR "
                      "round trips exact",
                      accepted, rejected, documents)};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance criteria for the one-ring adjacency library"};
    bool strict = false;
    std::vector<int> only;
    app.add_flag("--strict", strict, "Treat host-limited failures as failures");
    app.add_option("--only", only, "Run only these criterion numbers")->delimiter(',')->check(CLI::Range(1, 7));
    CLI11_PARSE(app, argc, argv);

    alloc::set_enabled(false);
    const auto corpus = testing::corpus();
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
        {"oracle equivalence", [&] { return oracle_equivalence(corpus); }},
        {"handshake invariants", [&] { return handshake(corpus); }},
        {"determinism under parallelism", determinism},
        {"desk-scale performance", performance},
        {"scaling sanity", scaling},
        {"memory estimate fidelity", memory_fidelity},
        {"mesh and CSR I/O", [&] { return io_robustness(corpus); }},
    };

    int hard_failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int number = static_cast<int>(i + 1);
        if (!only.empty() && std::find(only.begin(), only.end(), number) == only.end())
            continue;
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s AC%d %s: %s\n", v.pass ? "PASS" : "FAIL", number, criteria[i].first, v.detail.c_str());
        std::fflush(stdout);
        if (!v.pass && (strict || !v.host_limited))
            ++hard_failures;
    }
    return hard_failures == 0 ? 0 : 1;
}
