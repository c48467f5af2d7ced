#include "onering/primitives.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <memory>
#include <utility>

#include "onering/errors.hpp"

namespace onering {

namespace {

using word_t = std::uint64_t;
using word_buffer = std::unique_ptr<word_t[]>;

struct Packing {
    unsigned value_bits = 0;
    unsigned total_bits = 0;
};

Packing packing_for(const PairList& pairs, unsigned chunks)
{
    const std::size_t n = pairs.size();
    std::vector<std::pair<index_t, index_t>> maxima(chunks, {0, 0});
    detail::run_chunks(chunks, n, [&](unsigned c, std::size_t lo, std::size_t hi) {
        index_t mk = 0, mv = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            mk = std::max(mk, pairs.keys[i]);
            mv = std::max(mv, pairs.values[i]);
        }
        maxima[c] = {mk, mv};
    });
    index_t max_key = 0, max_value = 0;
    for (auto [mk, mv] : maxima) {
        max_key = std::max(max_key, mk);
        max_value = std::max(max_value, mv);
    }
    Packing p;
    p.value_bits = static_cast<unsigned>(std::bit_width(max_value));
    p.total_bits = p.value_bits + static_cast<unsigned>(std::bit_width(max_key));
    return p;
}

void release(std::vector<index_t>& v)
{
    std::vector<index_t>().swap(v);
}

PairList sort_serial(PairList&& pairs, const Packing& packing)
{
    const std::size_t n = pairs.size();
    const unsigned vb = packing.value_bits;
    const word_t value_mask = (word_t{1} << vb) - 1;
    auto words = std::make_unique_for_overwrite<word_t[]>(n);
    for (std::size_t i = 0; i < n; ++i)
        words[i] = word_t{pairs.keys[i]} << vb | pairs.values[i];
    release(pairs.keys);
    release(pairs.values);
    std::sort(words.get(), words.get() + n);
    pairs.keys.resize(n);
    pairs.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        pairs.keys[i] = static_cast<index_t>(words[i] >> vb);
        pairs.values[i] = static_cast<index_t>(words[i] & value_mask);
    }
    return std::move(pairs);
}

constexpr unsigned max_local_digit_bits = 11;

// LSD radix sort of one MSD bucket, small enough to stay in cache. The words
// ping-pong between seg and tmp; the last pass unpacks straight into
// keys/values, which already point at the bucket's final position.
void sort_segment(word_t* seg, std::size_t m, unsigned low_bits, unsigned vb, std::vector<word_t>& tmp,
                  std::vector<index_t>& hist, index_t* keys, index_t* values)
{
    const word_t value_mask = (word_t{1} << vb) - 1;
    auto unpack_to_output = [&](const word_t* from) {
        for (std::size_t i = 0; i < m; ++i) {
            keys[i] = static_cast<index_t>(from[i] >> vb);
            values[i] = static_cast<index_t>(from[i] & value_mask);
        }
    };
    if (m < 2 || low_bits == 0) {
        unpack_to_output(seg);
        return;
    }
    const unsigned passes = (low_bits + max_local_digit_bits - 1) / max_local_digit_bits;
    const unsigned digit_bits = (low_bits + passes - 1) / passes;
    const std::size_t buckets = std::size_t{1} << digit_bits;
    const word_t mask = buckets - 1;

    hist.assign(passes * buckets, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (unsigned p = 0; p < passes; ++p)
            ++hist[p * buckets + ((seg[i] >> (p * digit_bits)) & mask)];

    unsigned active[64 / max_local_digit_bits + 1];
    unsigned active_count = 0;
    for (unsigned p = 0; p < passes; ++p) {
        index_t* h = hist.data() + p * buckets;
        index_t running = 0;
        bool trivial = false;
        for (std::size_t d = 0; d < buckets; ++d) {
            trivial = trivial || h[d] == m;
            const index_t count = h[d];
            h[d] = running;
            running += count;
        }
        if (!trivial)
            active[active_count++] = p;
    }
    if (active_count == 0) {
        unpack_to_output(seg);
        return;
    }

    if (tmp.size() < m)
        tmp.resize(m);
    word_t* x = seg;
    word_t* y = tmp.data();
    for (unsigned k = 0; k < active_count; ++k) {
        const unsigned shift = active[k] * digit_bits;
        index_t* cursor = hist.data() + active[k] * buckets;
        if (k + 1 == active_count) {
            for (std::size_t i = 0; i < m; ++i) {
                const word_t w = x[i];
                const index_t slot = cursor[(w >> shift) & mask]++;
                keys[slot] = static_cast<index_t>(w >> vb);
                values[slot] = static_cast<index_t>(w & value_mask);
            }
        } else {
            for (std::size_t i = 0; i < m; ++i) {
                const word_t w = x[i];
                y[cursor[(w >> shift) & mask]++] = w;
            }
            std::swap(x, y);
        }
    }
}

// Radix sort over (key << value_bits | value). One MSD pass on the top bits
// scatters the packed words into buckets of a few thousand; each bucket is
// then finished in cache by sort_segment, which also unpacks into the output.
// The MSD pass histograms and scatters per chunk with offsets laid out
// bucket-major then chunk-major, so it is stable and every chunk writes
// disjoint slots. Buckets are finished independently, so the split of buckets
// across workers cannot change the result. At most the input pairs plus one
// pair-sized buffer are live at once.
PairList sort_radix(PairList&& pairs, const Packing& packing, unsigned chunks)
{
    const std::size_t n = pairs.size();
    const unsigned vb = packing.value_bits;
    if (packing.total_bits == 0)
        return std::move(pairs);
    const unsigned size_bits = static_cast<unsigned>(std::bit_width(n));
    const unsigned top_bits = std::min(packing.total_bits, std::clamp(size_bits, 13U, 24U) - 12);
    const unsigned shift = packing.total_bits - top_bits;
    const std::size_t buckets = std::size_t{1} << top_bits;

    std::vector<index_t> offsets(std::size_t{chunks} * buckets, 0);
    detail::run_chunks(chunks, n, [&](unsigned c, std::size_t lo, std::size_t hi) {
        index_t* h = offsets.data() + c * buckets;
        for (std::size_t i = lo; i < hi; ++i)
            ++h[(word_t{pairs.keys[i]} << vb | pairs.values[i]) >> shift];
    });
    std::vector<std::size_t> bucket_begin(buckets + 1);
    {
        index_t running = 0;
        for (std::size_t d = 0; d < buckets; ++d) {
            bucket_begin[d] = running;
            for (unsigned c = 0; c < chunks; ++c) {
                const index_t count = offsets[c * buckets + d];
                offsets[c * buckets + d] = running;
                running += count;
            }
        }
        bucket_begin[buckets] = n;
    }

    auto words = std::make_unique_for_overwrite<word_t[]>(n);
    detail::run_chunks(chunks, n, [&](unsigned c, std::size_t lo, std::size_t hi) {
        index_t* cursor = offsets.data() + c * buckets;
        for (std::size_t i = lo; i < hi; ++i) {
            const word_t w = word_t{pairs.keys[i]} << vb | pairs.values[i];
            words[cursor[w >> shift]++] = w;
        }
    });
    release(pairs.keys);
    release(pairs.values);

    PairList out;
    out.mode = pairs.mode;
    out.keys.resize(n);
    out.values.resize(n);
    // Contiguous bucket ranges of roughly equal total size, one per chunk.
    std::vector<std::size_t> first_bucket(chunks + 1, buckets);
    first_bucket[0] = 0;
    for (unsigned c = 1; c < chunks; ++c) {
        const std::size_t target = detail::chunk_begin(n, chunks, c);
        first_bucket[c] = static_cast<std::size_t>(
            std::lower_bound(bucket_begin.begin(), bucket_begin.end() - 1, target) - bucket_begin.begin());
    }
    detail::run_indexed(chunks, [&](unsigned c) {
        std::vector<word_t> tmp;
        std::vector<index_t> hist;
        for (std::size_t d = first_bucket[c]; d < first_bucket[c + 1]; ++d) {
            const std::size_t lo = bucket_begin[d];
            sort_segment(words.get() + lo, bucket_begin[d + 1] - lo, shift, vb, tmp, hist, out.keys.data() + lo,
                         out.values.data() + lo);
        }
    });
    return out;
}

// Chunk bounds over sorted keys, each moved forward to the start of a run so
// that no run straddles two chunks.
std::vector<std::size_t> run_aligned_bounds(std::span<const index_t> keys, unsigned chunks)
{
    const std::size_t n = keys.size();
    std::vector<std::size_t> bounds(chunks + 1);
    bounds[chunks] = n;
    for (unsigned c = 1; c < chunks; ++c) {
        std::size_t b = std::max(detail::chunk_begin(n, chunks, c), bounds[c - 1]);
        while (b > 0 && b < n && keys[b] == keys[b - 1])
            ++b;
        bounds[c] = b;
    }
    return bounds;
}

// Calls emit(slot, key, first, length) for every run, after sizing the
// output via alloc(run_count).
template <class Alloc, class Emit>
void for_each_run(std::span<const index_t> keys, const Backend& backend, Alloc&& alloc, Emit&& emit)
{
    const std::size_t n = keys.size();
    if (!backend.is_parallel()) {
        std::size_t runs = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0 && keys[i] < keys[i - 1])
                throw UnsortedInput(i);
            runs += (i == 0 || keys[i] != keys[i - 1]);
        }
        alloc(runs);
        std::size_t slot = 0;
        for (std::size_t i = 0; i < n;) {
            std::size_t j = i + 1;
            while (j < n && keys[j] == keys[i])
                ++j;
            emit(slot++, keys[i], i, j - i);
            i = j;
        }
        return;
    }

    const unsigned chunks = detail::chunk_count(backend, n);
    const auto bounds = run_aligned_bounds(keys, chunks);
    std::vector<std::size_t> base(chunks + 1, 0);
    detail::run_indexed(chunks, [&](unsigned c) {
        std::size_t runs = 0;
        for (std::size_t i = bounds[c]; i < bounds[c + 1]; ++i) {
            if (i > 0 && keys[i] < keys[i - 1])
                throw UnsortedInput(i);
            runs += (i == bounds[c] || keys[i] != keys[i - 1]);
        }
        base[c + 1] = runs;
    });
    for (unsigned c = 0; c < chunks; ++c)
        base[c + 1] += base[c];
    alloc(base[chunks]);
    detail::run_indexed(chunks, [&](unsigned c) {
        std::size_t slot = base[c];
        for (std::size_t i = bounds[c]; i < bounds[c + 1];) {
            std::size_t j = i + 1;
            while (j < bounds[c + 1] && keys[j] == keys[i])
                ++j;
            emit(slot++, keys[i], i, j - i);
            i = j;
        }
    });
}

} // namespace

PairList sort_pairs(PairList&& pairs, const Backend& backend)
{
    const std::size_t n = pairs.size();
    if (pairs.values.size() != n)
        throw PreconditionError("pair list keys and values differ in length");
    if (n <= 1)
        return std::move(pairs);
    require_index_capacity(n, "pair sort");

    const unsigned chunks = detail::chunk_count(backend, n);
    const Packing packing = packing_for(pairs, chunks);
    if (!backend.is_parallel())
        return sort_serial(std::move(pairs), packing);
    return sort_radix(std::move(pairs), packing, chunks);
}

PairList sort_pairs(const PairList& pairs, const Backend& backend)
{
    return sort_pairs(PairList(pairs), backend);
}

std::vector<index_t> exclusive_scan(std::span<const index_t> counts, const Backend& backend)
{
    const std::size_t n = counts.size();
    std::vector<index_t> out(n + 1);
    if (!backend.is_parallel()) {
        std::uint64_t running = 0;
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = static_cast<index_t>(running);
            running += counts[i];
            if (running > max_index)
                throw CapacityOverflow("exclusive scan total exceeds the 32-bit index range");
        }
        out[n] = static_cast<index_t>(running);
        return out;
    }

    const unsigned chunks = detail::chunk_count(backend, n);
    std::vector<std::uint64_t> base(chunks + 1, 0);
    detail::run_chunks(chunks, n, [&](unsigned c, std::size_t lo, std::size_t hi) {
        std::uint64_t sum = 0;
        for (std::size_t i = lo; i < hi; ++i)
            sum += counts[i];
        base[c + 1] = sum;
    });
    for (unsigned c = 0; c < chunks; ++c)
        base[c + 1] += base[c];
    if (base[chunks] > max_index)
        throw CapacityOverflow("exclusive scan total exceeds the 32-bit index range");
    detail::run_chunks(chunks, n, [&](unsigned c, std::size_t lo, std::size_t hi) {
        auto running = static_cast<index_t>(base[c]);
        for (std::size_t i = lo; i < hi; ++i) {
            out[i] = running;
            running += counts[i];
        }
    });
    out[n] = static_cast<index_t>(base[chunks]);
    return out;
}

KeyRuns reduce_by_key_ones(std::span<const index_t> sorted_keys, const Backend& backend)
{
    KeyRuns runs;
    for_each_run(
        sorted_keys, backend,
        [&](std::size_t count) {
            runs.unique_keys.resize(count);
            runs.counts.resize(count);
        },
        [&](std::size_t slot, index_t key, std::size_t, std::size_t length) {
            runs.unique_keys[slot] = key;
            runs.counts[slot] = static_cast<index_t>(length);
        });
    return runs;
}

KeyFirsts first_positions_by_key(std::span<const index_t> sorted_keys, const Backend& backend)
{
    require_index_capacity(sorted_keys.size(), "first-position extraction");
    KeyFirsts firsts;
    for_each_run(
        sorted_keys, backend,
        [&](std::size_t count) {
            firsts.unique_keys.resize(count);
            firsts.first_index.resize(count);
        },
        [&](std::size_t slot, index_t key, std::size_t first, std::size_t) {
            firsts.unique_keys[slot] = key;
            firsts.first_index[slot] = static_cast<index_t>(first);
        });
    return firsts;
}

PairList unique_pairs(PairList&& sorted, const Backend& backend)
{
    const std::size_t n = sorted.size();
    index_t* k = sorted.keys.data();
    index_t* v = sorted.values.data();

    // Each chunk compacts its own range in place (writes never pass reads),
    // then the compacted blocks are slid down in chunk order.
    const unsigned chunks = backend.is_parallel() ? detail::chunk_count(backend, n) : 1;
    std::vector<std::size_t> kept(chunks, 0);
    // Predecessor of each chunk's first pair, read before anyone writes.
    std::vector<std::pair<index_t, index_t>> before(chunks);
    for (unsigned c = 1; c < chunks; ++c) {
        const std::size_t lo = detail::chunk_begin(n, chunks, c);
        before[c] = {k[lo - 1], v[lo - 1]};
    }
    detail::run_chunks(chunks, n, [&](unsigned c, std::size_t lo, std::size_t hi) {
        std::size_t slot = lo;
        auto [pk, pv] = before[c];
        bool have_prev = lo > 0;
        for (std::size_t i = lo; i < hi; ++i) {
            const index_t ki = k[i], vi = v[i];
            if (!have_prev || ki != pk || vi != pv) {
                k[slot] = ki;
                v[slot] = vi;
                ++slot;
            }
            pk = ki;
            pv = vi;
            have_prev = true;
        }
        kept[c] = slot - lo;
    });
    std::size_t total = kept[0];
    for (unsigned c = 1; c < chunks; ++c) {
        const std::size_t lo = detail::chunk_begin(n, chunks, c);
        std::memmove(k + total, k + lo, kept[c] * sizeof(index_t));
        std::memmove(v + total, v + lo, kept[c] * sizeof(index_t));
        total += kept[c];
    }
    sorted.keys.resize(total);
    sorted.values.resize(total);
    return std::move(sorted);
}

PairList unique_pairs(const PairList& sorted, const Backend& backend)
{
    const std::size_t n = sorted.size();
    const auto& k = sorted.keys;
    const auto& v = sorted.values;
    auto keep = [&](std::size_t i) { return i == 0 || k[i] != k[i - 1] || v[i] != v[i - 1]; };

    PairList out;
    out.mode = sorted.mode;
    if (!backend.is_parallel()) {
        std::size_t kept = 0;
        for (std::size_t i = 0; i < n; ++i)
            kept += keep(i);
        out.keys.resize(kept);
        out.values.resize(kept);
        for (std::size_t i = 0, slot = 0; i < n; ++i) {
            if (keep(i)) {
                out.keys[slot] = k[i];
                out.values[slot] = v[i];
                ++slot;
            }
        }
        return out;
    }

    const unsigned chunks = detail::chunk_count(backend, n);
    std::vector<std::size_t> base(chunks + 1, 0);
    detail::run_chunks(chunks, n, [&](unsigned c, std::size_t lo, std::size_t hi) {
        std::size_t kept = 0;
        for (std::size_t i = lo; i < hi; ++i)
            kept += keep(i);
        base[c + 1] = kept;
    });
    for (unsigned c = 0; c < chunks; ++c)
        base[c + 1] += base[c];
    out.keys.resize(base[chunks]);
    out.values.resize(base[chunks]);
    detail::run_chunks(chunks, n, [&](unsigned c, std::size_t lo, std::size_t hi) {
        std::size_t slot = base[c];
        for (std::size_t i = lo; i < hi; ++i) {
            if (keep(i)) {
                out.keys[slot] = k[i];
                out.values[slot] = v[i];
                ++slot;
            }
        }
    });
    return out;
}

} // namespace onering
