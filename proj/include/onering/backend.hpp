#ifndef ONERING_BACKEND_HPP
#define ONERING_BACKEND_HPP

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace onering {

enum class BackendKind { Serial, Parallel };

/// Execution policy for the pipeline primitives. Every kind and worker count
/// produces bitwise-identical results for the same input.
struct Backend {
    BackendKind kind = BackendKind::Serial;
    unsigned worker_count = 0; // Parallel only; 0 picks hardware_concurrency

    static Backend serial() noexcept { return {BackendKind::Serial, 1}; }
    static Backend parallel(unsigned workers = 0) noexcept { return {BackendKind::Parallel, workers}; }

    /// Worker count actually used: 1 for Serial, the detected core count for
    /// Parallel with worker_count == 0.
    unsigned workers() const noexcept;

    bool is_parallel() const noexcept { return kind == BackendKind::Parallel; }
};

namespace detail {

inline std::size_t chunk_begin(std::size_t n, unsigned chunks, unsigned c) noexcept
{
    return n / chunks * c + n % chunks * c / chunks;
}

/// Runs fn(c) for c in [0, chunks), chunk 0 on the calling thread. The
/// exception of the lowest failing chunk is rethrown after all have joined.
template <class Fn>
void run_indexed(unsigned chunks, Fn&& fn)
{
    if (chunks <= 1) {
        fn(0u);
        return;
    }
    std::vector<std::exception_ptr> failures(chunks);
    {
        std::vector<std::jthread> threads;
        threads.reserve(chunks - 1);
        for (unsigned c = 1; c < chunks; ++c) {
            threads.emplace_back([&, c] {
                try {
                    fn(c);
                } catch (...) {
                    failures[c] = std::current_exception();
                }
            });
        }
        try {
            fn(0u);
        } catch (...) {
            failures[0] = std::current_exception();
        }
    }
    for (auto& failure : failures)
        if (failure)
            std::rethrow_exception(failure);
}

/// Splits [0, n) into `chunks` contiguous ranges and runs fn(chunk, begin, end).
template <class Fn>
void run_chunks(unsigned chunks, std::size_t n, Fn&& fn)
{
    run_indexed(chunks, [&](unsigned c) { fn(c, chunk_begin(n, chunks, c), chunk_begin(n, chunks, c + 1)); });
}

/// Chunk count for a pass over n items: never more chunks than items.
inline unsigned chunk_count(const Backend& backend, std::size_t n) noexcept
{
    const std::size_t w = backend.workers();
    return static_cast<unsigned>(n == 0 ? 1 : (w < n ? w : n));
}

} // namespace detail

} // namespace onering

#endif
