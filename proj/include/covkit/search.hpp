#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "covkit/coverage.hpp"

namespace covkit {

// Candidate rows for the exact minimization. Partition coverage depends only
// on a row's equality pattern, so the candidates are the restricted growth
// strings of length n with at most d parts (a row IS a set partition of the
// columns). Weights are not relabeling-invariant, so the weight scheme keeps
// all of {1..d}^n and leaves symmetry to the search.
inline std::vector<std::vector<int>> canonical_rows(int n, int d, SchemeKind kind) {
  if (n < 1 || d < 1) throw std::invalid_argument("canonical_rows: n and d must be >= 1");
  std::vector<std::vector<int>> rows;
  if (kind == SchemeKind::partition) {
    if (n > 8) throw limit_error("canonical_rows: partition search is capped at n = 8");
    for (PartitionRgs& p : enumerate_partitions(n, std::min(d, n)))
      rows.push_back(std::move(p.labels));
  } else {
    const BigInt total = boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(n));
    if (total > BigInt(1000000))
      throw limit_error("canonical_rows: weight search is capped at d^n = 1e6");
    std::vector<int> word(n, 0);
    while (true) {
      rows.push_back(word);
      int pos = n - 1;
      while (pos >= 0 && word[pos] == d - 1) word[pos--] = 0;
      if (pos < 0) break;
      ++word[pos];
    }
  }
  return rows;
}

struct SearchResult {
  std::optional<int> k0;
  bool proved_min = false;
  std::uint64_t nodes = 0;
  std::optional<Array> witness;  // rows sorted lexicographically
};

namespace detail {

inline int popcount_range(const std::vector<std::uint64_t>& bits, std::size_t lo,
                          std::size_t hi) {
  int count = 0;
  for (std::size_t i = lo; i < hi;) {
    const std::size_t block = i >> 6;
    const std::size_t next = std::min<std::size_t>((block + 1) << 6, hi);
    std::uint64_t word = bits[block];
    word >>= (i & 63);
    const std::size_t width = next - i;
    if (width < 64) word &= (std::uint64_t(1) << width) - 1;
    count += std::popcount(word);
    i = next;
  }
  return count;
}

struct CoverSearch {
  int num_classes = 0;
  std::size_t num_subsets = 0;
  std::size_t universe = 0;
  std::size_t blocks = 0;
  std::vector<std::vector<int>> rows;                 // deduped candidates
  std::vector<std::vector<std::uint64_t>> masks;      // candidate -> covered elements
  std::vector<std::vector<int>> covers;               // element -> candidates
  std::uint64_t nodes = 0;
  int budget = 0;
  std::vector<int> chosen;
  std::vector<int> solution;

  bool element_missing(const std::vector<std::uint64_t>& missing, std::size_t e) const {
    return missing[e >> 6] & (std::uint64_t(1) << (e & 63));
  }

  int lower_bound(const std::vector<std::uint64_t>& missing) const {
    // One row contributes exactly one class per subset, so a subset missing
    // c classes needs at least c more rows.
    int best = 0;
    for (std::size_t s = 0; s < num_subsets; ++s)
      best = std::max(best, popcount_range(missing, s * num_classes, (s + 1) * num_classes));
    return best;
  }

  bool dfs(std::vector<std::uint64_t>& missing, int remaining) {
    ++nodes;
    bool any = false;
    for (std::uint64_t w : missing) any |= (w != 0);
    if (!any) {
      solution = chosen;
      return true;
    }
    if (remaining == 0 || lower_bound(missing) > remaining) return false;

    // Fail-first: branch on the missing element with the fewest candidates.
    std::size_t pick = universe;
    std::size_t pick_covers = SIZE_MAX;
    for (std::size_t e = 0; e < universe; ++e) {
      if (!element_missing(missing, e)) continue;
      if (covers[e].size() < pick_covers) {
        pick_covers = covers[e].size();
        pick = e;
      }
    }
    if (pick == universe || pick_covers == 0) return false;

    // Candidates covering the pick, by how much of the remaining need they
    // cover; candidates with identical relevant coverage are interchangeable,
    // so only the first of each signature is explored.
    std::vector<std::pair<int, int>> order;  // (-overlap, candidate)
    for (int cand : covers[pick]) {
      int overlap = 0;
      for (std::size_t b = 0; b < blocks; ++b)
        overlap += std::popcount(masks[cand][b] & missing[b]);
      order.emplace_back(-overlap, cand);
    }
    std::sort(order.begin(), order.end());

    std::vector<std::vector<std::uint64_t>> seen_signatures;
    std::vector<std::uint64_t> signature(blocks), saved(blocks);
    for (const auto& [neg_overlap, cand] : order) {
      for (std::size_t b = 0; b < blocks; ++b) signature[b] = masks[cand][b] & missing[b];
      bool duplicate = false;
      for (const auto& s : seen_signatures) duplicate |= (s == signature);
      if (duplicate) continue;
      seen_signatures.push_back(signature);

      saved = missing;
      for (std::size_t b = 0; b < blocks; ++b) missing[b] &= ~masks[cand][b];
      chosen.push_back(cand);
      if (dfs(missing, remaining - 1)) return true;
      chosen.pop_back();
      missing = saved;
    }
    return false;
  }
};

}  // namespace detail

// Smallest k <= k_max such that some multiset of candidate rows covers every
// (t-subset, class) requirement, by iterative deepening: exhausting depth k-1
// before finding a cover at depth k is the minimality proof. At the minimal
// depth no solution repeats a row, so the repeat-free search stays complete.
inline SearchResult min_rows_exact(int n, int t, int d, SchemeKind kind, int k_max) {
  const Scheme scheme{kind, t};
  required_classes(scheme, d);  // feasibility
  if (t > n) throw std::invalid_argument("min_rows_exact: t exceeds n");

  const std::vector<std::vector<int>> all_rows = canonical_rows(n, d, kind);
  const ClassIndexer indexer(kind, t, d);
  const int nc = indexer.num_classes();

  std::vector<std::vector<int>> subsets;
  {
    std::vector<int> cols = first_subset(t);
    do {
      subsets.push_back(cols);
    } while (next_subset_colex(cols, n));
  }

  detail::CoverSearch search;
  search.num_classes = nc;
  search.num_subsets = subsets.size();
  search.universe = subsets.size() * static_cast<std::size_t>(nc);
  search.blocks = (search.universe + 63) / 64;
  if (all_rows.size() * search.blocks * 8 > std::size_t(256) << 20)
    throw limit_error("min_rows_exact: cover instance too large");

  std::map<std::vector<std::uint64_t>, int> signature_of;
  std::vector<int> word(t);
  for (const std::vector<int>& row : all_rows) {
    std::vector<std::uint64_t> mask(search.blocks, 0);
    for (std::size_t s = 0; s < subsets.size(); ++s) {
      for (int i = 0; i < t; ++i) word[i] = row[subsets[s][i]];
      const std::size_t e = s * nc + indexer.index_of_word(word);
      mask[e >> 6] |= std::uint64_t(1) << (e & 63);
    }
    if (signature_of.emplace(mask, static_cast<int>(search.rows.size())).second) {
      search.rows.push_back(row);
      search.masks.push_back(std::move(mask));
    }
  }

  search.covers.resize(search.universe);
  for (int cand = 0; cand < static_cast<int>(search.masks.size()); ++cand)
    for (std::size_t e = 0; e < search.universe; ++e)
      if (search.masks[cand][e >> 6] & (std::uint64_t(1) << (e & 63)))
        search.covers[e].push_back(cand);

  std::vector<std::uint64_t> full(search.blocks, ~std::uint64_t(0));
  if (search.universe % 64 != 0)
    full.back() = (std::uint64_t(1) << (search.universe % 64)) - 1;

  SearchResult result;
  for (int k = 1; k <= k_max; ++k) {
    std::vector<std::uint64_t> missing = full;
    search.chosen.clear();
    if (search.dfs(missing, k)) {
      result.k0 = k;
      result.proved_min = true;
      std::vector<std::vector<int>> rows;
      for (int cand : search.solution) rows.push_back(search.rows[cand]);
      std::sort(rows.begin(), rows.end());
      Array witness(k, n, d);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < n; ++c) witness.at(r, c) = rows[r][c];
      result.witness = std::move(witness);
      break;
    }
  }
  result.nodes = search.nodes;
  return result;
}

}  // namespace covkit
