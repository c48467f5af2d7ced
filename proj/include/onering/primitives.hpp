#ifndef ONERING_PRIMITIVES_HPP
#define ONERING_PRIMITIVES_HPP

#include <span>
#include <vector>

#include "onering/backend.hpp"
#include "onering/pairs.hpp"
#include "onering/types.hpp"

// Data-parallel primitives behind the adjacency pipeline. Each has a plain
// serial reference path and a chunked multi-worker path; both return the
// same sequences for the same input.

namespace onering {

struct KeyRuns {
    std::vector<index_t> unique_keys;
    std::vector<index_t> counts;
    friend bool operator==(const KeyRuns&, const KeyRuns&) = default;
};

struct KeyFirsts {
    std::vector<index_t> unique_keys;
    std::vector<index_t> first_index;
    friend bool operator==(const KeyFirsts&, const KeyFirsts&) = default;
};

/// Orders pairs by (key, value). The parallel path is an LSD radix sort over
/// the pairs packed into 64-bit words; the serial path is std::sort on the
/// same words. The rvalue overload frees the input arrays as soon as they
/// have been read, so no more than two pair-sized buffers are ever live.
PairList sort_pairs(PairList&& pairs, const Backend& backend);
PairList sort_pairs(const PairList& pairs, const Backend& backend);

/// out[0] = 0, out[i] = out[i-1] + counts[i-1]; one entry longer than the
/// input. Throws CapacityOverflow when the total exceeds index_t.
std::vector<index_t> exclusive_scan(std::span<const index_t> counts, const Backend& backend);

/// Run-length encoding of non-decreasing keys (segmented sum of ones).
/// Throws UnsortedInput on a descending neighbour pair.
KeyRuns reduce_by_key_ones(std::span<const index_t> sorted_keys, const Backend& backend);

/// Position of the first occurrence of every distinct key.
/// Throws UnsortedInput on a descending neighbour pair.
KeyFirsts first_positions_by_key(std::span<const index_t> sorted_keys, const Backend& backend);

/// Drops pairs equal to their predecessor. On sorted input the result is
/// the distinct pairs in order.
PairList unique_pairs(const PairList& sorted, const Backend& backend);
/// In-place variant; keeps the input's storage.
PairList unique_pairs(PairList&& sorted, const Backend& backend);

} // namespace onering

#endif
