#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace covkit {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Canonical set-partition encoding as a restricted growth string: labels[i]
// is the first-occurrence rank of the block containing position i, so
// labels[0] == 0 and labels[i] <= 1 + max(labels[0..i-1]).
struct PartitionRgs {
  std::vector<int> labels;

  int size() const { return static_cast<int>(labels.size()); }
  int parts() const {
    return labels.empty() ? 0 : 1 + *std::max_element(labels.begin(), labels.end());
  }
  friend auto operator<=>(const PartitionRgs&, const PartitionRgs&) = default;
};

inline bool is_rgs(std::span<const int> labels) {
  int max_seen = -1;
  for (int x : labels) {
    if (x < 0 || x > max_seen + 1) return false;
    max_seen = std::max(max_seen, x);
  }
  return true;
}

inline BigInt factorial(int n) {
  if (n < 0) throw std::out_of_range("factorial: negative argument");
  BigInt acc = 1;
  for (int i = 2; i <= n; ++i) acc *= i;
  return acc;
}

inline BigInt binomial(std::int64_t n, std::int64_t r) {
  if (n < 0) throw std::out_of_range("binomial: negative n");
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  BigInt acc = 1;
  for (std::int64_t i = 0; i < r; ++i) {
    acc *= n - i;
    acc /= i + 1;  // exact: product of i+1 consecutive integers
  }
  return acc;
}

// d * (d-1) * ... * (d-r+1); equals 1 for r == 0 and 0 once the product
// crosses zero (r > d >= 0).
inline BigInt falling_factorial(std::int64_t d, int r) {
  if (r < 0) throw std::out_of_range("falling_factorial: negative r");
  BigInt acc = 1;
  for (int i = 0; i < r; ++i) acc *= d - i;
  return acc;
}

// Number of set partitions of [t], via the Bell triangle.
inline BigInt bell(int t) {
  if (t < 1 || t > 20) throw std::out_of_range("bell: t must be in [1,20]");
  std::vector<BigInt> row{1};
  for (int i = 2; i <= t; ++i) {
    std::vector<BigInt> next{row.back()};
    next.reserve(i);
    for (const BigInt& x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.back();
}

// Stirling numbers of the second kind: partitions of [t] into exactly r parts.
inline BigInt stirling2(int t, int r) {
  if (t < 1 || t > 20) throw std::out_of_range("stirling2: t must be in [1,20]");
  if (r < 1 || r > t) throw std::out_of_range("stirling2: r must be in [1,t]");
  std::vector<BigInt> prev(static_cast<std::size_t>(t) + 1), cur(static_cast<std::size_t>(t) + 1);
  prev[0] = 1;
  for (int i = 1; i <= t; ++i) {
    std::fill(cur.begin(), cur.end(), BigInt(0));
    for (int j = 1; j <= i; ++j) cur[j] = j * prev[j] + prev[j - 1];
    std::swap(prev, cur);
  }
  return prev[r];
}

// All restricted growth strings of length t with at most max_parts parts, in
// lexicographic order on the label sequence.
inline std::vector<PartitionRgs> enumerate_partitions(int t, int max_parts) {
  if (t < 1 || t > 12) throw std::out_of_range("enumerate_partitions: t must be in [1,12]");
  if (max_parts < 1) throw std::out_of_range("enumerate_partitions: max_parts must be >= 1");
  std::vector<PartitionRgs> out;
  std::vector<int> cur;
  cur.reserve(t);
  auto rec = [&](auto&& self, int used) -> void {
    if (static_cast<int>(cur.size()) == t) {
      out.push_back({cur});
      return;
    }
    const int hi = std::min(used, max_parts - 1);
    for (int label = 0; label <= hi; ++label) {
      cur.push_back(label);
      self(self, used + (label == used ? 1 : 0));
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Equality pattern of a word: each symbol replaced by its first-occurrence
// rank. Idempotent on restricted growth strings.
inline PartitionRgs word_to_rgs(std::span<const int> word) {
  PartitionRgs rgs;
  rgs.labels.reserve(word.size());
  std::vector<int> seen;
  for (int s : word) {
    auto it = std::find(seen.begin(), seen.end(), s);
    if (it == seen.end()) {
      seen.push_back(s);
      rgs.labels.push_back(static_cast<int>(seen.size()) - 1);
    } else {
      rgs.labels.push_back(static_cast<int>(it - seen.begin()));
    }
  }
  return rgs;
}

// Number of ordered words in {1..d}^t whose symbol sum is w. Zero outside
// [t, d*t].
inline BigInt weight_count(int d, int t, std::int64_t w) {
  if (d < 1 || t < 1) throw std::out_of_range("weight_count: d and t must be >= 1");
  if (w < t || w > static_cast<std::int64_t>(d) * t) return 0;
  const std::size_t excess = static_cast<std::size_t>(w - t);
  std::vector<BigInt> dp{1};
  for (int i = 1; i <= t; ++i) {
    std::vector<BigInt> next(static_cast<std::size_t>(i) * (d - 1) + 1);
    for (std::size_t e = 0; e < dp.size(); ++e) {
      if (dp[e].is_zero()) continue;
      for (int s = 0; s <= d - 1; ++s) next[e + s] += dp[e];
    }
    dp = std::move(next);
  }
  return dp[excess];
}

// Number of frequency vectors (x_1..x_d), x_i >= 0, with sum(x_i) = t and
// sum(i*x_i) = w; i.e. multisets of t symbols from {1..d} with total w.
// Companion count to weight_count for consumers that want the unordered
// solution count.
inline BigInt weight_solution_count(int d, int t, std::int64_t w) {
  if (d < 1 || t < 1) throw std::out_of_range("weight_solution_count: d and t must be >= 1");
  if (w < t || w > static_cast<std::int64_t>(d) * t) return 0;
  const std::size_t max_excess = static_cast<std::size_t>(t) * (d - 1);
  std::vector<std::vector<BigInt>> g(static_cast<std::size_t>(t) + 1,
                                     std::vector<BigInt>(max_excess + 1));
  g[0][0] = 1;
  for (int s = 1; s <= d; ++s) {
    const std::size_t step = static_cast<std::size_t>(s) - 1;
    for (int j = 1; j <= t; ++j)
      for (std::size_t e = step; e <= max_excess; ++e)
        g[j][e] += g[j - 1][e - step];
  }
  return g[t][static_cast<std::size_t>(w - t)];
}

}  // namespace covkit
