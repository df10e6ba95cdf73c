#pragma once

#include "mscale/entropy.hpp"
#include "mscale/signal.hpp"

namespace mscale::detail {

// Shared argument checks for the entropy kernels: m >= 1, finite r > 0 and
// N >= m + 2. Lives outside the fast-math translation unit so the finiteness
// test is not folded away.
void check_kernel_args(const Signal& signal, int m, double r);

enum class MatchStrategy {
  Auto,        // pick by estimated cost
  Scan,        // visit every candidate pair in the sorted window
  RangeCount,  // count with Fenwick trees, m <= 2
};

MatchCounts match_counts(const Signal& signal, int m, double r, MatchStrategy strategy);

}  // namespace mscale::detail
