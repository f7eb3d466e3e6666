#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "covkit/array.hpp"

namespace covkit {

enum class SeedRowKind { all_ones, all_d, distinct_row };

// Fixed rows laid down before the random phase; never resampled.
struct SeedRecipe {
  std::vector<SeedRowKind> rows;

  bool has(SeedRowKind kind) const {
    return std::find(rows.begin(), rows.end(), kind) != rows.end();
  }
};

// Materialize the seed rows (0-based symbols).
inline std::vector<std::vector<int>> seed_rows(const SeedRecipe& recipe, int n, int d) {
  if (n < 1 || d < 1) throw std::invalid_argument("seed_rows: n and d must be >= 1");
  std::vector<std::vector<int>> out;
  for (SeedRowKind kind : recipe.rows) {
    std::vector<int> row(n);
    switch (kind) {
      case SeedRowKind::all_ones:
        break;  // all zeros 0-based
      case SeedRowKind::all_d:
        std::fill(row.begin(), row.end(), d - 1);
        break;
      case SeedRowKind::distinct_row:
        if (d < n) throw std::invalid_argument("distinct_row seed requires d >= n");
        for (int c = 0; c < n; ++c) row[c] = c;
        break;
    }
    out.push_back(std::move(row));
  }
  return out;
}

// Seeds used by the randomized constructions: the partition scheme pins the
// one-part pattern with a constant row and, when the alphabet allows it, the
// all-distinct pattern with 1 2 ... n; the weight scheme pins the two extreme
// weights t and d*t.
inline SeedRecipe default_recipe(SchemeKind kind, std::int64_t n, int d) {
  SeedRecipe recipe;
  if (kind == SchemeKind::partition) {
    recipe.rows.push_back(SeedRowKind::all_ones);
    if (d >= n) recipe.rows.push_back(SeedRowKind::distinct_row);
  } else {
    recipe.rows.push_back(SeedRowKind::all_ones);
    if (d >= 2) recipe.rows.push_back(SeedRowKind::all_d);
  }
  return recipe;
}

// Classes guaranteed by the seed rows in every t-column projection.
inline std::vector<PatternClass> seeded_classes(const SeedRecipe& recipe, SchemeKind kind, int t,
                                                int d) {
  std::vector<PatternClass> out;
  auto add = [&out](PatternClass cls) {
    if (std::find(out.begin(), out.end(), cls) == out.end()) out.push_back(std::move(cls));
  };
  for (SeedRowKind row : recipe.rows) {
    if (kind == SchemeKind::partition) {
      if (row == SeedRowKind::all_ones || row == SeedRowKind::all_d) {
        add(PartitionRgs{std::vector<int>(t, 0)});
      } else {
        std::vector<int> labels(t);
        for (int i = 0; i < t; ++i) labels[i] = i;
        add(PartitionRgs{std::move(labels)});
      }
    } else {
      if (row == SeedRowKind::all_ones) add(WeightValue{t});
      if (row == SeedRowKind::all_d) add(WeightValue{static_cast<std::int64_t>(d) * t});
      // distinct_row pins no weight class: its projected sum varies by subset
    }
  }
  return out;
}

// Alphabet actually used for random cells. The partition scheme only needs
// enough symbols for the patterns the seeds leave open, and fewer symbols
// make every open pattern easier to hit; the weight scheme needs all of
// {1..d} to reach every weight.
inline int effective_random_alphabet(SchemeKind kind, int t, int d, const SeedRecipe& recipe) {
  if (kind == SchemeKind::weight) return d;
  const int needed = recipe.has(SeedRowKind::distinct_row) ? t - 1 : t;
  return std::min(d, std::max(2, needed));
}

}  // namespace covkit
