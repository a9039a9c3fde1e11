#pragma once

// Order-statistics primitives: top-k sums, ranked-range sums and their
// variational reformulations.  Ranks are 1-based (s_[1] is the largest);
// ties are broken by ascending original index.

#include <cstddef>
#include <span>
#include <vector>

namespace sorr {

// Immutable collection of finite reals.  Sorting always happens on copies.
class ValueSet {
 public:
  explicit ValueSet(std::vector<double> values);
  ValueSet(std::initializer_list<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  std::span<const double> span() const { return values_; }

 private:
  std::vector<double> values_;
};

// The consecutive sorted slice s_[m+1] .. s_[k].
struct RankedRange {
  std::size_t m = 0;
  std::size_t k = 1;

  // Throws RangeError unless 0 <= m < k <= n.
  void validate(std::size_t n) const;
  std::size_t width() const { return k - m; }
};

// Named special cases of the ranked range for a set of size n.
RankedRange average_range(std::size_t n);
RankedRange maximum_range();
RankedRange median_range(std::size_t n);
RankedRange top_k_range(std::size_t k);

// Indices of `values` ordered by (value descending, index ascending).
std::vector<std::size_t> rank_order(std::span<const double> values);

// The j-th largest value, 1 <= j <= n.
double kth_largest(const ValueSet& s, std::size_t j);

// Sum of the k largest values (0 <= k <= n); empty sum is 0.
double top_k_sum(const ValueSet& s, std::size_t k);

// Sum of ranks m+1..k; computed as top_k_sum(k) - top_k_sum(m).
double ranked_range_sum(const ValueSet& s, const RankedRange& r);

// Average of the ranked range.
double aorr_value(const ValueSet& s, const RankedRange& r);

// k*lambda + sum_i [s_i - lambda]_+ ; minimized at lambda = s_[k].
double topk_variational_objective(const ValueSet& s, std::size_t k,
                                  double lambda);

// (n-m)*lambda - sum_i [lambda - s_i]_+ ; maximized at lambda = s_[m]
// (lambda = max(s) when m = 0), where it equals sum_{i>m} s_[i].
double bottom_sum_variational(const ValueSet& s, std::size_t m, double lambda);

// Brute-force: minimum over binary q with exactly n-m ones of
//   min_lambda (k-m)*lambda + sum_i q_i [s_i - lambda]_+ .
// Requires non-negative values and n <= 20.
double bilevel_corner_oracle(const ValueSet& s, const RankedRange& r);

inline constexpr std::size_t kCornerOracleMaxN = 20;

}  // namespace sorr
