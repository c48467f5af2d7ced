#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "onering/bench.hpp"
#include "onering/csr.hpp"
#include "onering/errors.hpp"
#include "onering/mesh_io.hpp"
#include "onering/oracle.hpp"

namespace onering::cli {

namespace {

std::vector<AdjacencyMode> modes_for(const std::string& mode)
{
    if (mode == "nodes")
        return {AdjacencyMode::NodeNeighbors};
    if (mode == "elements")
        return {AdjacencyMode::ElementNeighbors};
    return {AdjacencyMode::NodeNeighbors, AdjacencyMode::ElementNeighbors};
}

void write_output(const std::string& path, const std::string& bytes, std::ostream& out)
{
    if (path == "-") {
        out << bytes;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file || !file.write(bytes.data(), static_cast<std::streamsize>(bytes.size())))
        throw Error("cannot write " + path);
}

// "RxC" -> (rows, cols)
std::pair<std::size_t, std::size_t> parse_grid(const std::string& spec)
{
    const auto x = spec.find_first_of("xX");
    auto number = [&](std::string_view text) {
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
            throw Error("grid must be given as RxC, got '" + spec + "'");
        return value;
    };
    if (x == std::string::npos)
        throw Error("grid must be given as RxC, got '" + spec + "'");
    return {number(std::string_view(spec).substr(0, x)), number(std::string_view(spec).substr(x + 1))};
}

struct BuildOptions {
    std::string input;
    std::string mode = "nodes";
    std::string backend = "parallel";
    unsigned workers = 0;
    std::string output;
    bool binary = false;
};

struct VerifyOptions {
    std::string input;
    std::string mode = "both";
    unsigned workers = 0;
};

struct BenchOptions {
    std::string input;
    std::string grid;
    std::vector<std::string> modes{"nodes", "elements"};
    unsigned workers = 0;
    unsigned reps = 5;
    std::string format = "csv";
    std::string out = "-";
};

int do_build(const BuildOptions& opt, std::ostream& out)
{
    const ValidatedMesh mesh = load_mesh_file(opt.input);
    const Backend backend = opt.backend == "serial" ? Backend::serial() : Backend::parallel(opt.workers);
    std::string bytes;
    for (AdjacencyMode m : modes_for(opt.mode))
        bytes += emit_csr(build_adjacency(mesh, m, backend), opt.binary ? CsrEncoding::Binary : CsrEncoding::Text);
    write_output(opt.output, bytes, out);
    return exit_ok;
}

int do_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err)
{
    const ValidatedMesh mesh = load_mesh_file(opt.input);
    const Backend backends[] = {Backend::serial(), Backend::parallel(opt.workers)};
    int status = exit_ok;
    for (AdjacencyMode m : modes_for(opt.mode)) {
        const CsrAdjacency expected = to_csr(oracle_adjacency(mesh, m));
        for (const Backend& backend : backends) {
            const CsrAdjacency actual = build_adjacency(mesh, m, backend);
            const std::string label = std::string(to_string(m)) + " [" +
                                      (backend.is_parallel() ? "parallel x" + std::to_string(backend.workers())
                                                             : std::string("serial")) +
                                      "]";
            if (auto diff = describe_first_divergence(actual, expected)) {
                err << label << ": MISMATCH " << *diff << '\n';
                status = exit_verification_failed;
            } else {
                out << label << ": OK (" << expected.vertex_count << " vertices, " << expected.total_neighbors()
                    << " neighbour entries)\n";
            }
        }
    }
    return status;
}

int do_bench(const BenchOptions& opt, std::ostream& out)
{
    std::string name;
    std::optional<ValidatedMesh> mesh;
    if (!opt.grid.empty()) {
        const auto [rows, cols] = parse_grid(opt.grid);
        mesh.emplace(validate_mesh(generate_grid(rows, cols)));
        name = "grid-" + std::to_string(rows) + "x" + std::to_string(cols);
    } else {
        mesh.emplace(load_mesh_file(opt.input));
        name = std::filesystem::path(opt.input).stem().string();
    }
    std::vector<BenchRecord> records;
    for (const auto& token : opt.modes) {
        const auto mode = bench_mode_from_string(token);
        if (!mode)
            throw Error("unknown benchmark mode '" + token + "' (expected nodes, elements or both)");
        records.push_back(run_benchmark(*mesh, *mode, opt.workers, opt.reps, name));
    }
    write_output(opt.out, emit_report(records, opt.format == "json" ? ReportFormat::Json : ReportFormat::Csv), out);
    return exit_ok;
}

int do_stats(const std::string& input, std::ostream& out)
{
    const ValidatedMesh mesh = load_mesh_file(input);
    const MeshStats stats = mesh_stats(mesh);
    out << "kind: " << to_string(mesh.kind()) << '\n'
        << "vertices: " << stats.vertex_count << '\n'
        << "elements: " << stats.element_count << '\n'
        << "undirected_edges: " << stats.undirected_edge_count << '\n'
        << "isolated_vertices: " << stats.isolated_vertex_count << '\n';
    return exit_ok;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"One-ring vertex adjacency for unstructured meshes", "onering"};
    app.require_subcommand(1);

    BuildOptions build;
    auto* build_cmd = app.add_subcommand("build", "Build node or element adjacency and write MESHCSR1 output");
    build_cmd->add_option("--input", build.input, "Mesh file (.off or .obj)")->required();
    build_cmd->add_option("--mode", build.mode)->check(CLI::IsMember({"nodes", "elements", "both"}));
    build_cmd->add_option("--backend", build.backend)->check(CLI::IsMember({"serial", "parallel"}));
    build_cmd->add_option("--workers", build.workers, "Worker count, 0 = all cores");
    build_cmd->add_option("--output", build.output, "Output file, '-' for stdout")->required();
    build_cmd->add_flag("--binary", build.binary, "Write the binary encoding");

    VerifyOptions verify;
    auto* verify_cmd = app.add_subcommand("verify", "Compare both pipeline backends against the serial baseline");
    verify_cmd->add_option("--input", verify.input)->required();
    verify_cmd->add_option("--mode", verify.mode)->check(CLI::IsMember({"nodes", "elements", "both"}));
    verify_cmd->add_option("--workers", verify.workers);

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "Time the parallel pipeline against the serial baseline");
    auto* bench_input = bench_cmd->add_option("--input", bench.input);
    auto* bench_grid = bench_cmd->add_option("--grid", bench.grid, "Synthetic grid RxC");
    bench_input->excludes(bench_grid);
    bench_cmd->add_option("--modes", bench.modes)->delimiter(',');
    bench_cmd->add_option("--workers", bench.workers);
    bench_cmd->add_option("--reps", bench.reps);
    bench_cmd->add_option("--format", bench.format)->check(CLI::IsMember({"csv", "json"}));
    bench_cmd->add_option("--out", bench.out);

    std::string stats_input;
    auto* stats_cmd = app.add_subcommand("stats", "Print vertex, element and edge counts");
    stats_cmd->add_option("--input", stats_input)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }

    try {
        if (build_cmd->parsed())
            return do_build(build, out);
        if (verify_cmd->parsed())
            return do_verify(verify, out, err);
        if (bench_cmd->parsed()) {
            if (bench.input.empty() && bench.grid.empty())
                throw Error("bench needs --input or --grid");
            return do_bench(bench, out);
        }
        return do_stats(stats_input, out);
    } catch (const VerificationFailed& e) {
        err << "verification failed: " << e.what() << '\n';
        return exit_verification_failed;
    } catch (const CapacityOverflow& e) {
        err << "capacity error: " << e.what() << '\n';
        return exit_capacity;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    } catch (const std::bad_alloc&) {
        err << "capacity error: out of memory\n";
        return exit_capacity;
    }
}

} // namespace onering::cli
