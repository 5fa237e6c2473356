#pragma once

// Skip sets: subsets of {1, .., l-1} containing no k consecutive integers.
// They index which depths a candidate witness omits on its way to depth l,
// and are the per-vertex annotation of the expansion tree in hk.hpp.

#include <cstdint>
#include <vector>

namespace kaccess {

using SkipSet = std::vector<int>; // elements ascending

// All valid skip sets for depth l, in lexicographic order of their element
// sequences (so the empty set comes first). Throws SizeCapError when the
// count would exceed an enumeration cap, std::invalid_argument on l < 1 or
// k < 1.
std::vector<SkipSet> enumerate_skip_sets(int l, int k);

// Count without enumerating, via the k-step Fibonacci recurrence on the
// ground-set size m = l-1:
//   c(m) = 2^m                      for m < k
//   c(m) = sum_{j=0..k-1} c(m-1-j)  otherwise
// (condition on the length j of the run starting at 1, followed by a gap).
// Throws std::overflow_error if the count exceeds 2^64-1.
std::uint64_t count_skip_sets(int l, int k);

} // namespace kaccess
