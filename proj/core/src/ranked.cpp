#include "sorr/ranked.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "sorr/errors.hpp"

namespace sorr {

namespace {

void checkFinite(const std::vector<double>& values) {
  if (values.empty()) {
    throw ParameterError("ValueSet must hold at least one value");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw ParameterError("ValueSet entry " + std::to_string(i) +
                           " is not finite");
    }
  }
}

struct RankLess {
  std::span<const double> v;
  bool operator()(std::size_t a, std::size_t b) const {
    if (v[a] != v[b]) {
      return v[a] > v[b];
    }
    return a < b;
  }
};

inline double positivePart(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace

ValueSet::ValueSet(std::vector<double> values) : values_(std::move(values)) {
  checkFinite(values_);
}

ValueSet::ValueSet(std::initializer_list<double> values)
    : values_(values) {
  checkFinite(values_);
}

void RankedRange::validate(std::size_t n) const {
  if (!(m < k && k <= n)) {
    throw RangeError("ranked range requires 0 <= m < k <= n (m=" +
                     std::to_string(m) + ", k=" + std::to_string(k) +
                     ", n=" + std::to_string(n) + ")");
  }
}

RankedRange average_range(std::size_t n) { return {0, n}; }
RankedRange maximum_range() { return {0, 1}; }
RankedRange median_range(std::size_t n) {
  // Odd n: the single middle rank.  Even n: the two middle ranks.
  return {(n + 1) / 2 - 1, (n + 2) / 2};
}
RankedRange top_k_range(std::size_t k) { return {0, k}; }

std::vector<std::size_t> rank_order(std::span<const double> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), RankLess{values});
  return idx;
}

double kth_largest(const ValueSet& s, std::size_t j) {
  if (j < 1 || j > s.size()) {
    throw RangeError("rank j=" + std::to_string(j) + " outside 1..n (n=" +
                     std::to_string(s.size()) + ")");
  }
  std::vector<std::size_t> idx(s.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::nth_element(idx.begin(), idx.begin() + static_cast<long>(j - 1),
                   idx.end(), RankLess{s.span()});
  return s[idx[j - 1]];
}

double top_k_sum(const ValueSet& s, std::size_t k) {
  if (k > s.size()) {
    throw RangeError("k=" + std::to_string(k) + " exceeds n=" +
                     std::to_string(s.size()));
  }
  if (k == 0) {
    return 0.0;
  }
  // Select the k largest, then sum them in descending order so the result
  // does not depend on the input permutation.
  std::vector<double> v = s.values();
  const auto kth = v.begin() + static_cast<long>(k);
  if (k < v.size()) {
    std::nth_element(v.begin(), kth - 1, v.end(), std::greater<>());
  }
  std::sort(v.begin(), kth, std::greater<>());
  long double acc = 0.0L;
  for (auto it = v.begin(); it != kth; ++it) {
    acc += *it;
  }
  return static_cast<double>(acc);
}

double ranked_range_sum(const ValueSet& s, const RankedRange& r) {
  r.validate(s.size());
  return top_k_sum(s, r.k) - top_k_sum(s, r.m);
}

double aorr_value(const ValueSet& s, const RankedRange& r) {
  return ranked_range_sum(s, r) / static_cast<double>(r.width());
}

double topk_variational_objective(const ValueSet& s, std::size_t k,
                                  double lambda) {
  if (k > s.size()) {
    throw RangeError("k=" + std::to_string(k) + " exceeds n=" +
                     std::to_string(s.size()));
  }
  long double acc = static_cast<long double>(k) * lambda;
  for (double v : s.values()) {
    acc += positivePart(v - lambda);
  }
  return static_cast<double>(acc);
}

double bottom_sum_variational(const ValueSet& s, std::size_t m, double lambda) {
  if (m >= s.size()) {
    throw RangeError("m=" + std::to_string(m) + " must be below n=" +
                     std::to_string(s.size()));
  }
  long double acc = static_cast<long double>(s.size() - m) * lambda;
  for (double v : s.values()) {
    acc -= positivePart(lambda - v);
  }
  return static_cast<double>(acc);
}

double bilevel_corner_oracle(const ValueSet& s, const RankedRange& r) {
  const std::size_t n = s.size();
  r.validate(n);
  if (n > kCornerOracleMaxN) {
    throw ParameterError("corner oracle enumerates subsets; n=" +
                         std::to_string(n) + " exceeds " +
                         std::to_string(kCornerOracleMaxN));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i] < 0.0) {
      throw ParameterError("corner oracle requires non-negative values (entry " +
                           std::to_string(i) + ")");
    }
  }
  const std::size_t ones = n - r.m;
  const double width = static_cast<double>(r.width());
  double best = std::numeric_limits<double>::infinity();
  // Enumerate every q with exactly `ones` ones as a selection mask.
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(ones), true);
  std::sort(mask.begin(), mask.end());
  do {
    // The inner objective is convex piecewise linear in lambda with
    // breakpoints at the selected values; its minimum sits on one of them.
    double inner = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (!mask[j]) {
        continue;
      }
      const double lambda = s[j];
      long double acc = static_cast<long double>(width) * lambda;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask[i]) {
          acc += positivePart(s[i] - lambda);
        }
      }
      inner = std::min(inner, static_cast<double>(acc));
    }
    best = std::min(best, inner);
  } while (std::next_permutation(mask.begin(), mask.end()));
  return best;
}

}  // namespace sorr
