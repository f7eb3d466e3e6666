#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "covkit/bounds.hpp"
#include "covkit/coverage.hpp"
#include "covkit/recipes.hpp"
#include "covkit/rng.hpp"

namespace covkit {

struct ConstructParams {
  int n = 1;
  int t = 1;
  int d = 1;
  SchemeKind kind = SchemeKind::partition;
  SeedRecipe recipe;
  FillModel model = FillModel::uniform;
  int k_random = 1;
  int random_alphabet = 0;  // 0 = derive from scheme and recipe
  std::uint64_t rng_seed = 0;
  std::uint64_t max_rounds = 0;  // 0 = default 1000 * C(n,t)
  int max_restarts = 20;
};

// One column holding an equal number of each of `alphabet` symbols, in
// uniformly random order.
inline std::vector<int> balanced_column(int k, int alphabet, std::mt19937_64& rng) {
  if (alphabet < 1 || k < 1 || k % alphabet != 0)
    throw std::invalid_argument("balanced_column: k must be a positive multiple of the alphabet");
  std::vector<int> col(k);
  const int copies = k / alphabet;
  for (int i = 0; i < k; ++i) col[i] = i / copies;
  shuffle_values(col, rng);
  return col;
}

// k_random x n i.i.d. uniform symbols, drawn row-major.
inline std::vector<std::vector<int>> uniform_fill(int k_random, int n, int d,
                                                  std::mt19937_64& rng) {
  if (k_random < 0 || n < 1 || d < 1) throw std::invalid_argument("uniform_fill: bad dimensions");
  std::vector<std::vector<int>> rows(k_random, std::vector<int>(n));
  for (auto& row : rows)
    for (int c = 0; c < n; ++c) row[c] = static_cast<int>(uniform_below(rng, d));
  return rows;
}

// Every column is an independent random permutation of the multiset with
// k_random/d copies of each symbol; columns drawn left to right.
inline std::vector<std::vector<int>> balanced_fill(int k_random, int n, int d,
                                                   std::mt19937_64& rng) {
  if (n < 1 || d < 1) throw std::invalid_argument("balanced_fill: bad dimensions");
  if (k_random < 1 || k_random % d != 0)
    throw std::invalid_argument("balanced_fill: k_random must be a positive multiple of d");
  std::vector<std::vector<int>> rows(k_random, std::vector<int>(n));
  for (int c = 0; c < n; ++c) {
    const std::vector<int> col = balanced_column(k_random, d, rng);
    for (int r = 0; r < k_random; ++r) rows[r][c] = col[r];
  }
  return rows;
}

struct MtResult {
  std::optional<Array> array;  // engaged on success
  std::uint64_t rounds = 0;
  std::optional<Deficiency> last_deficiency;  // engaged on failure
};

namespace detail {

inline std::uint64_t default_max_rounds(int n, int t) {
  const BigInt cap = 1000 * binomial(n, t);
  if (cap > BigInt(std::uint64_t(1) << 62)) return std::uint64_t(1) << 62;
  return cap.convert_to<std::uint64_t>();
}

// Visit every t-subset of [0,n) that intersects `s` exactly once.
template <typename Fn>
void for_each_intersecting(const std::vector<int>& s, int n, int t, Fn fn) {
  std::vector<int> others;
  others.reserve(n - s.size());
  std::vector<char> in_s(n, 0);
  for (int c : s) in_s[c] = 1;
  for (int c = 0; c < n; ++c)
    if (!in_s[c]) others.push_back(c);

  std::vector<int> subset;
  const int ts = static_cast<int>(s.size());
  for (unsigned mask = 1; mask < (1u << ts); ++mask) {
    std::vector<int> base;
    for (int i = 0; i < ts; ++i)
      if (mask & (1u << i)) base.push_back(s[i]);
    const int need = t - static_cast<int>(base.size());
    if (need < 0 || need > static_cast<int>(others.size())) continue;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int start) -> void {
      if (static_cast<int>(pick.size()) == need) {
        subset = base;
        subset.insert(subset.end(), pick.begin(), pick.end());
        std::sort(subset.begin(), subset.end());
        fn(subset);
        return;
      }
      for (int i = start; i < static_cast<int>(others.size()); ++i) {
        pick.push_back(others[i]);
        self(self, i + 1);
        pick.pop_back();
      }
    };
    rec(rec, 0);
  }
}

}  // namespace detail

// Constructive local-lemma loop: lay down the seed rows, fill k_random rows
// at random, then repeatedly pick the colex-lowest deficient t-subset and
// resample every random cell in its columns until no subset is deficient.
// Deterministic for a fixed rng_seed.
inline MtResult moser_tardos(const ConstructParams& params) {
  const int n = params.n, t = params.t, d = params.d;
  const Scheme scheme{params.kind, t};
  required_classes(scheme, d);  // feasibility
  if (t > n) throw std::invalid_argument("moser_tardos: t exceeds n");
  if (params.k_random < 1) throw std::invalid_argument("moser_tardos: k_random must be >= 1");

  const int ra = params.random_alphabet > 0
                     ? params.random_alphabet
                     : effective_random_alphabet(params.kind, t, d, params.recipe);
  if (ra < 1 || ra > d) throw std::invalid_argument("moser_tardos: bad random alphabet");
  if (params.model == FillModel::balanced && params.k_random % ra != 0)
    throw std::invalid_argument("moser_tardos: balanced model needs k_random divisible by the fill alphabet");

  const std::vector<std::vector<int>> seeds = seed_rows(params.recipe, n, d);
  const int k_seed = static_cast<int>(seeds.size());
  const int k_total = k_seed + params.k_random;

  std::mt19937_64 rng(params.rng_seed);
  std::vector<std::vector<int>> columns(n, std::vector<int>(k_total));
  for (int r = 0; r < k_seed; ++r)
    for (int c = 0; c < n; ++c) columns[c][r] = seeds[r][c];
  {
    const std::vector<std::vector<int>> random_rows =
        params.model == FillModel::uniform ? uniform_fill(params.k_random, n, ra, rng)
                                           : balanced_fill(params.k_random, n, ra, rng);
    for (int r = 0; r < params.k_random; ++r)
      for (int c = 0; c < n; ++c) columns[c][k_seed + r] = random_rows[r][c];
  }

  const CoverageContext ctx(&columns, k_total, d, scheme);
  CoverageContext::Scratch scratch = ctx.make_scratch();
  const std::uint64_t max_rounds =
      params.max_rounds > 0 ? params.max_rounds : detail::default_max_rounds(n, t);

  std::set<std::vector<int>, ColexLess> deficient;
  {
    std::vector<int> cols = first_subset(t);
    while (true) {
      if (!ctx.subset_covered(cols, scratch)) deficient.insert(cols);
      if (!next_subset_colex(cols, n)) break;
    }
  }

  std::uint64_t rounds = 0;
  while (!deficient.empty()) {
    const std::vector<int> target = *deficient.begin();
    if (rounds >= max_rounds) {
      MtResult fail;
      fail.rounds = rounds;
      Deficiency def;
      def.columns = target;
      ctx.subset_covered(target, scratch);
      for (int idx : ctx.missing_from_scratch(scratch))
        def.missing.push_back(ctx.indexer().class_at(idx));
      fail.last_deficiency = std::move(def);
      return fail;
    }

    // Resample the random region of the target's columns, ascending.
    for (int c : target) {
      if (params.model == FillModel::uniform) {
        for (int r = k_seed; r < k_total; ++r)
          columns[c][r] = static_cast<int>(uniform_below(rng, ra));
      } else {
        const std::vector<int> col = balanced_column(params.k_random, ra, rng);
        for (int r = 0; r < params.k_random; ++r) columns[c][k_seed + r] = col[r];
      }
    }
    ++rounds;

    // Only subsets sharing a column with the target can have changed.
    detail::for_each_intersecting(target, n, t, [&](const std::vector<int>& subset) {
      if (ctx.subset_covered(subset, scratch)) {
        deficient.erase(subset);
      } else {
        deficient.insert(subset);
      }
    });
  }

  Array out(k_total, n, d);
  for (int r = 0; r < k_total; ++r)
    for (int c = 0; c < n; ++c) out.at(r, c) = columns[c][r];
  MtResult ok;
  ok.array = std::move(out);
  ok.rounds = rounds;
  return ok;
}

struct ConstructResult {
  Array array;
  Scheme scheme;
  std::uint64_t rounds = 0;
  int restarts = 0;  // index of the successful attempt
  int k_random = 0;
  int k_seed = 0;
  std::uint64_t seed = 0;
};

// Orchestration: default recipe, k_random from the local-lemma bound, then
// Moser-Tardos with escalation (+1 row per restart; +fill-alphabet rows for
// the balanced model) and a fresh derived seed per attempt.
inline ConstructResult construct(int n, int t, int d, SchemeKind kind, FillModel model,
                                 std::uint64_t seed, int max_restarts = 20) {
  const Scheme scheme{kind, t};
  const std::vector<PatternClass> required = required_classes(scheme, d);
  if (t > n) throw std::invalid_argument("construct: t exceeds n");

  const SeedRecipe recipe = default_recipe(kind, n, d);
  const std::vector<PatternClass> seeded = seeded_classes(recipe, kind, t, d);
  const int ra = effective_random_alphabet(kind, t, d, recipe);

  const bool seeds_suffice = std::all_of(required.begin(), required.end(), [&](const auto& cls) {
    return std::find(seeded.begin(), seeded.end(), cls) != seeded.end();
  });
  if (seeds_suffice) {
    const std::vector<std::vector<int>> rows = seed_rows(recipe, n, d);
    Array a(static_cast<int>(rows.size()), n, d);
    for (int r = 0; r < a.k; ++r)
      for (int c = 0; c < n; ++c) a.at(r, c) = rows[r][c];
    return {std::move(a), scheme, 0, 0, 0, a.k, seed};
  }

  std::int64_t base_k = lll_min_k(n, t, d, kind, model).k;
  if (model == FillModel::balanced && base_k % ra != 0) base_k += ra - base_k % ra;

  for (int attempt = 0; attempt <= max_restarts; ++attempt) {
    ConstructParams params;
    params.n = n;
    params.t = t;
    params.d = d;
    params.kind = kind;
    params.recipe = recipe;
    params.model = model;
    params.k_random =
        static_cast<int>(base_k) + attempt * (model == FillModel::balanced ? ra : 1);
    params.rng_seed = split_seed(seed, static_cast<std::uint64_t>(attempt));
    const MtResult result = moser_tardos(params);
    if (result.array) {
      ConstructResult out;
      out.array = *result.array;
      out.scheme = scheme;
      out.rounds = result.rounds;
      out.restarts = attempt;
      out.k_random = params.k_random;
      out.k_seed = out.array.k - params.k_random;
      out.seed = seed;
      return out;
    }
  }
  throw limit_error("construct: restarts exhausted without a covering array");
}

}  // namespace covkit
