#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "mscale/entropy.hpp"
#include "mscale/error.hpp"
#include "detail.hpp"

namespace mscale {
namespace detail {

void check_kernel_args(const Signal& signal, int m, double r) {
  if (m < 1) throw Error(ErrorKind::InvalidParams, "embedding dimension m must be >= 1");
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorKind::InvalidParams, "tolerance r must be positive");
  }
  if (signal.size() < static_cast<std::size_t>(m) + 2) {
    throw Error(ErrorKind::TooShort, "need at least m + 2 = " + std::to_string(m + 2) +
                                         " samples, got " + std::to_string(signal.size()));
  }
}

}  // namespace detail

namespace {

using Index = std::uint32_t;

// Templates ordered by their first sample. Every matching pair (p < q in this
// order) has keys[q] - keys[p] < r, so each template only meets a window of
// predecessors.
struct FirstAxis {
  std::vector<Index> order;
  std::vector<double> keys;
};

FirstAxis sort_first_axis(std::span<const double> x, std::size_t templates) {
  FirstAxis a;
  a.order.resize(templates);
  std::iota(a.order.begin(), a.order.end(), Index{0});
  std::stable_sort(a.order.begin(), a.order.end(), [&](Index i, Index j) { return x[i] < x[j]; });
  a.keys.resize(templates);
  for (std::size_t p = 0; p < templates; ++p) a.keys[p] = x[a.order[p]];
  return a;
}

// Pairs the scan would visit: sum over p of the window size.
std::uint64_t candidate_pairs(const FirstAxis& a, double r) {
  std::uint64_t total = 0;
  std::size_t lo = 0;
  for (std::size_t p = 0; p < a.keys.size(); ++p) {
    while (!(a.keys[p] - a.keys[lo] < r)) ++lo;
    total += p - lo;
  }
  return total;
}

MatchCounts count_by_scan(std::span<const double> x, std::size_t dim, const FirstAxis& a,
                          double r) {
  const std::size_t templates = a.keys.size();
  std::uint64_t b_m = 0;
  std::uint64_t b_m1 = 0;
  for (std::size_t p = 0; p < templates; ++p) {
    const std::size_t i = a.order[p];
    const double head = a.keys[p];
    for (std::size_t q = p + 1; q < templates && a.keys[q] - head < r; ++q) {
      const std::size_t j = a.order[q];
      bool match = true;
      for (std::size_t k = 1; k < dim; ++k) {
        if (!(std::fabs(x[i + k] - x[j + k]) < r)) {
          match = false;
          break;
        }
      }
      if (!match) continue;
      ++b_m;
      if (std::fabs(x[i + dim] - x[j + dim]) < r) ++b_m1;
    }
  }
  return MatchCounts{2 * b_m, 2 * b_m1, templates};
}

// Sample x[t + offset] of every template, sorted, plus each template's slot.
struct Axis {
  std::vector<double> values;
  std::vector<Index> slot;

  Axis(std::span<const double> x, std::size_t offset, std::size_t templates) {
    std::vector<Index> order(templates);
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index i, Index j) { return x[i + offset] < x[j + offset]; });
    values.resize(templates);
    slot.resize(templates);
    for (std::size_t s = 0; s < templates; ++s) {
      values[s] = x[order[s] + offset];
      slot[order[s]] = static_cast<Index>(s);
    }
  }

  // Slots [lo, hi) whose value v satisfies |v - y| < r, evaluated with the
  // same floating-point expression as the pairwise test.
  std::pair<Index, Index> within(double y, double r) const {
    const auto lo = std::partition_point(values.begin(), values.end(),
                                         [&](double v) { return v < y && !(y - v < r); });
    const auto hi = std::partition_point(lo, values.end(),
                                         [&](double v) { return v <= y || v - y < r; });
    return {static_cast<Index>(lo - values.begin()), static_cast<Index>(hi - values.begin())};
  }
};

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}

  void add(std::size_t i, std::int32_t delta) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }
  // Sum over [0, i).
  std::int64_t prefix(std::size_t i) const {
    std::int64_t s = 0;
    for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }
  std::int64_t range(std::size_t lo, std::size_t hi) const { return prefix(hi) - prefix(lo); }

 private:
  std::vector<std::int32_t> tree_;
};

// Index of the first element >= key in a sorted run; branch-free.
inline std::size_t lower_index(const Index* base, std::size_t len, Index key) {
  const Index* first = base;
  while (len > 1) {
    const std::size_t half = len / 2;
    first = first[half - 1] < key ? first + half : first;
    len -= half;
  }
  return static_cast<std::size_t>(first - base) + (len == 1 && *first < key ? 1 : 0);
}

// Offline 2-D Fenwick tree over a fixed point set (slot1, slot2). Each outer
// node keeps the sorted slot2 values of the points it covers and an inner
// tree over them. Points are referred to by their index t.
class Fenwick2D {
 public:
  Fenwick2D(const std::vector<Index>& slot1, const std::vector<Index>& slot2)
      : n_(slot1.size()), levels_(std::bit_width(n_)), start_(n_ + 2, 0),
        where_(n_ * levels_) {
    for (std::size_t t = 0; t < n_; ++t) {
      for (std::size_t node = slot1[t] + 1; node <= n_; node += node & (~node + 1)) {
        ++start_[node + 1];
      }
    }
    std::partial_sum(start_.begin(), start_.end(), start_.begin());
    keys_.resize(start_[n_ + 1]);
    tree_.assign(keys_.size(), 0);
    // Visiting points by increasing slot2 leaves every node list sorted.
    std::vector<Index> by_slot2(n_);
    for (std::size_t t = 0; t < n_; ++t) by_slot2[slot2[t]] = static_cast<Index>(t);
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (const Index t : by_slot2) {
      std::size_t level = 0;
      for (std::size_t node = slot1[t] + 1; node <= n_; node += node & (~node + 1), ++level) {
        where_[t * levels_ + level] = static_cast<Index>(fill[node] - start_[node]);
        keys_[fill[node]++] = slot2[t];
      }
    }
    slot1_ = &slot1;
  }

  void add(Index t, std::int32_t delta) {
    std::size_t level = 0;
    for (std::size_t node = (*slot1_)[t] + 1; node <= n_; node += node & (~node + 1), ++level) {
      const std::size_t len = start_[node + 1] - start_[node];
      std::int32_t* inner = tree_.data() + start_[node];
      for (std::size_t i = where_[t * levels_ + level] + 1; i <= len; i += i & (~i + 1)) {
        inner[i - 1] += delta;
      }
    }
  }

  // Points with slot1 in [lo1, hi1) and slot2 in [lo2, hi2).
  std::int64_t rect(Index lo1, Index hi1, Index lo2, Index hi2) const {
    return prefix(hi1, lo2, hi2) - prefix(lo1, lo2, hi2);
  }

 private:
  std::int64_t prefix(std::size_t hi1, Index lo2, Index hi2) const {
    std::int64_t s = 0;
    for (std::size_t node = hi1; node > 0; node -= node & (~node + 1)) {
      const Index* base = keys_.data() + start_[node];
      const std::size_t len = start_[node + 1] - start_[node];
      const std::size_t a = lower_index(base, len, lo2);
      const std::size_t b = a + lower_index(base + a, len - a, hi2);
      s += inner_prefix(node, b) - inner_prefix(node, a);
    }
    return s;
  }

  std::int64_t inner_prefix(std::size_t node, std::size_t i) const {
    const std::int32_t* inner = tree_.data() + start_[node];
    std::int64_t s = 0;
    for (; i > 0; i -= i & (~i + 1)) s += inner[i - 1];
    return s;
  }

  std::size_t n_;
  std::size_t levels_;
  std::vector<std::size_t> start_;  // CSR offsets, indexed by node
  std::vector<Index> keys_;
  std::vector<std::int32_t> tree_;
  std::vector<Index> where_;  // position of point t in its level-th node
  const std::vector<Index>* slot1_;
};

// Sweep over the first axis with the window as the active set; the remaining
// one or two axes are answered by range counting. Cost does not depend on how
// many pairs match. Only m <= 2.
MatchCounts count_by_ranges(std::span<const double> x, std::size_t dim, const FirstAxis& a,
                            double r) {
  const std::size_t templates = a.keys.size();
  const Axis second(x, 1, templates);
  std::uint64_t b_m = 0;
  std::uint64_t b_m1 = 0;
  std::size_t lo = 0;

  if (dim == 1) {
    Fenwick active(templates);
    for (std::size_t p = 0; p < templates; ++p) {
      for (; !(a.keys[p] - a.keys[lo] < r); ++lo) active.add(second.slot[a.order[lo]], -1);
      const Index i = a.order[p];
      const auto [l1, h1] = second.within(x[i + 1], r);
      b_m += p - lo;
      b_m1 += static_cast<std::uint64_t>(active.range(l1, h1));
      active.add(second.slot[i], +1);
    }
  } else {
    const Axis third(x, 2, templates);
    Fenwick active(templates);
    Fenwick2D active2(second.slot, third.slot);
    for (std::size_t p = 0; p < templates; ++p) {
      for (; !(a.keys[p] - a.keys[lo] < r); ++lo) {
        const Index j = a.order[lo];
        active.add(second.slot[j], -1);
        active2.add(j, -1);
      }
      const Index i = a.order[p];
      const auto [l1, h1] = second.within(x[i + 1], r);
      b_m += static_cast<std::uint64_t>(active.range(l1, h1));
      if (l1 < h1) {
        const auto [l2, h2] = third.within(x[i + 2], r);
        b_m1 += static_cast<std::uint64_t>(active2.rect(l1, h1, l2, h2));
      }
      active.add(second.slot[i], +1);
      active2.add(i, +1);
    }
  }
  return MatchCounts{2 * b_m, 2 * b_m1, templates};
}

}  // namespace

namespace detail {

MatchCounts match_counts(const Signal& signal, int m, double r, MatchStrategy strategy) {
  check_kernel_args(signal, m, r);
  const auto x = signal.samples();
  const std::size_t dim = static_cast<std::size_t>(m);
  const std::size_t templates = x.size() - dim;
  const FirstAxis axis = sort_first_axis(x, templates);

  if (strategy == MatchStrategy::Auto) {
    strategy = MatchStrategy::Scan;
    if (dim <= 2) {
      // Measured cost of range counting in units of one scanned pair: about
      // 16 T log T for m = 1 and 6 T log^2 T for m = 2.
      const double log_t = std::bit_width(templates);
      const double per_template = dim == 1 ? 16.0 * log_t : 3.0 * log_t * log_t;
      if (static_cast<double>(candidate_pairs(axis, r)) >
          per_template * static_cast<double>(templates)) {
        strategy = MatchStrategy::RangeCount;
      }
    }
  }
  if (strategy == MatchStrategy::RangeCount) {
    if (dim > 2) {
      throw Error(ErrorKind::InvalidParams, "range counting supports m <= 2 only");
    }
    return count_by_ranges(x, dim, axis, r);
  }
  return count_by_scan(x, dim, axis, r);
}

}  // namespace detail

MatchCounts sample_match_counts(const Signal& signal, int m, double r) {
  return detail::match_counts(signal, m, r, detail::MatchStrategy::Auto);
}

EntropyValue sample_entropy(const Signal& signal, int m, double r) {
  const MatchCounts counts = sample_match_counts(signal, m, r);
  if (counts.b_m == 0 || counts.b_m1 == 0) {
    return EntropyValue::undefined(UndefinedCause::NoMatches);
  }
  return EntropyValue::finite(
      -std::log(static_cast<double>(counts.b_m1) / static_cast<double>(counts.b_m)));
}

EntropyValue sample_entropy(const Signal& signal, const EntropyParams& params) {
  return sample_entropy(signal, params.m, resolve_tolerance(signal, params));
}

}  // namespace mscale
