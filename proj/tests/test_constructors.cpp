#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "covkit/construct.hpp"

using namespace covkit;

TEST_CASE("seed rows") {
  const SeedRecipe both{{SeedRowKind::all_ones, SeedRowKind::distinct_row}};
  const auto rows = seed_rows(both, 4, 4);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<int>{0, 0, 0, 0});
  CHECK(rows[1] == std::vector<int>{0, 1, 2, 3});

  const SeedRecipe extremes{{SeedRowKind::all_ones, SeedRowKind::all_d}};
  const auto wrows = seed_rows(extremes, 3, 2);
  REQUIRE(wrows.size() == 2);
  CHECK(wrows[0] == std::vector<int>{0, 0, 0});
  CHECK(wrows[1] == std::vector<int>{1, 1, 1});

  CHECK_THROWS_AS(seed_rows(SeedRecipe{{SeedRowKind::distinct_row}}, 5, 3),
                  std::invalid_argument);
}

TEST_CASE("default recipes") {
  const SeedRecipe wide = default_recipe(SchemeKind::partition, 10, 10);
  CHECK(wide.rows == std::vector<SeedRowKind>{SeedRowKind::all_ones, SeedRowKind::distinct_row});

  const SeedRecipe narrow = default_recipe(SchemeKind::partition, 10, 3);
  CHECK(narrow.rows == std::vector<SeedRowKind>{SeedRowKind::all_ones});

  const SeedRecipe weight = default_recipe(SchemeKind::weight, 10, 2);
  CHECK(weight.rows == std::vector<SeedRowKind>{SeedRowKind::all_ones, SeedRowKind::all_d});
}

TEST_CASE("seeded classes") {
  const SeedRecipe both{{SeedRowKind::all_ones, SeedRowKind::distinct_row}};
  const auto p = seeded_classes(both, SchemeKind::partition, 3, 5);
  REQUIRE(p.size() == 2);
  CHECK(std::get<PartitionRgs>(p[0]).labels == std::vector<int>{0, 0, 0});
  CHECK(std::get<PartitionRgs>(p[1]).labels == std::vector<int>{0, 1, 2});

  const SeedRecipe extremes{{SeedRowKind::all_ones, SeedRowKind::all_d}};
  const auto w = seeded_classes(extremes, SchemeKind::weight, 3, 2);
  REQUIRE(w.size() == 2);
  CHECK(std::get<WeightValue>(w[0]).w == 3);
  CHECK(std::get<WeightValue>(w[1]).w == 6);

  // a distinct row pins no weight class
  const auto none = seeded_classes(SeedRecipe{{SeedRowKind::distinct_row}},
                                   SchemeKind::weight, 3, 5);
  CHECK(none.empty());
}

TEST_CASE("uniform fill") {
  std::mt19937_64 a(42), b(42), c(43);
  const auto fill1 = uniform_fill(20, 10, 3, a);
  const auto fill2 = uniform_fill(20, 10, 3, b);
  const auto fill3 = uniform_fill(20, 10, 3, c);
  CHECK(fill1 == fill2);
  CHECK(fill1 != fill3);

  SECTION("alphabet of one") {
    std::mt19937_64 rng(1);
    for (const auto& row : uniform_fill(5, 4, 1, rng))
      for (int cell : row) CHECK(cell == 0);
  }

  SECTION("symbol frequencies look uniform on 1e5 cells") {
    std::mt19937_64 rng(21);
    const int k = 1000, n = 100, d = 4;
    std::map<int, long> counts;
    for (const auto& row : uniform_fill(k, n, d, rng))
      for (int cell : row) ++counts[cell];
    const double expect = static_cast<double>(k) * n / d;
    double chi2 = 0.0;
    for (int s = 0; s < d; ++s) {
      const double diff = counts[s] - expect;
      chi2 += diff * diff / expect;
    }
    // chi-square critical value at significance 1e-3 with d-1 = 3 dof
    CHECK(chi2 <= 16.266);
  }
}

TEST_CASE("balanced fill") {
  std::mt19937_64 a(7), b(7);
  const auto fill1 = balanced_fill(12, 6, 3, a);
  const auto fill2 = balanced_fill(12, 6, 3, b);
  CHECK(fill1 == fill2);

  SECTION("every column has exact symbol counts") {
    for (int c = 0; c < 6; ++c) {
      std::map<int, int> counts;
      for (int r = 0; r < 12; ++r) ++counts[fill1[r][c]];
      for (int s = 0; s < 3; ++s) CHECK(counts[s] == 4);
    }
  }

  SECTION("binary column weight is exactly 3m") {
    std::mt19937_64 rng(3);
    const int m = 5;
    const auto rows = balanced_fill(2 * m, 4, 2, rng);
    for (int c = 0; c < 4; ++c) {
      int sum = 0;
      for (int r = 0; r < 2 * m; ++r) sum += rows[r][c] + 1;
      CHECK(sum == 3 * m);
    }
  }

  CHECK_THROWS_AS(balanced_fill(7, 3, 2, a), std::invalid_argument);

  SECTION("balanced columns stay balanced draw after draw") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 100; ++round) {
      const auto col = balanced_column(12, 4, rng);
      std::map<int, int> counts;
      for (int v : col) ++counts[v];
      for (int s = 0; s < 4; ++s) CHECK(counts[s] == 3);
    }
  }
}

TEST_CASE("moser-tardos resampling") {
  SECTION("n = t with ample rows needs no resampling") {
    ConstructParams params;
    params.n = 3;
    params.t = 3;
    params.d = 2;
    params.kind = SchemeKind::weight;
    params.recipe = default_recipe(SchemeKind::weight, 3, 2);
    params.k_random = 40;
    params.rng_seed = 5;
    const MtResult r = moser_tardos(params);
    REQUIRE(r.array);
    CHECK(r.rounds == 0);
    CHECK(is_covering(*r.array, Scheme{SchemeKind::weight, 3}));
  }

  SECTION("succeeds at the local-lemma row count and verifies") {
    ConstructParams params;
    params.n = 20;
    params.t = 3;
    params.d = 2;
    params.kind = SchemeKind::weight;
    params.recipe = default_recipe(SchemeKind::weight, 20, 2);
    params.k_random = static_cast<int>(
        lll_min_k(20, 3, 2, SchemeKind::weight, FillModel::uniform).k);
    params.rng_seed = 99;
    const MtResult r = moser_tardos(params);
    REQUIRE(r.array);
    CHECK(is_covering(*r.array, Scheme{SchemeKind::weight, 3}));
    CHECK(oracle_is_covering(*r.array, Scheme{SchemeKind::weight, 3}));
  }

  SECTION("one random row cannot realize every pair: failure report") {
    ConstructParams params;
    params.n = 8;
    params.t = 2;
    params.d = 2;
    params.kind = SchemeKind::partition;
    params.recipe = SeedRecipe{{SeedRowKind::all_ones}};
    params.k_random = 1;
    params.rng_seed = 1;
    params.max_rounds = 2000;
    const MtResult r = moser_tardos(params);
    REQUIRE_FALSE(r.array);
    CHECK(r.rounds == 2000);
    REQUIRE(r.last_deficiency);
    CHECK(r.last_deficiency->columns.size() == 2);
    CHECK_FALSE(r.last_deficiency->missing.empty());
  }

  SECTION("explicit hybrid fill alphabet") {
    // alphabet n for the array, random phase restricted to two symbols
    ConstructParams params;
    params.n = 5;
    params.t = 3;
    params.d = 5;
    params.kind = SchemeKind::partition;
    params.recipe = default_recipe(SchemeKind::partition, 5, 5);
    params.k_random = 30;
    params.random_alphabet = 2;
    params.rng_seed = 21;
    const MtResult r = moser_tardos(params);
    REQUIRE(r.array);
    CHECK(is_covering(*r.array, Scheme{SchemeKind::partition, 3}));
    for (int row = 2; row < r.array->k; ++row)
      for (int c = 0; c < 5; ++c) CHECK(r.array->at(row, c) < 2);
  }

  SECTION("balanced resampling keeps every column balanced") {
    ConstructParams params;
    params.n = 12;
    params.t = 3;
    params.d = 2;
    params.kind = SchemeKind::weight;
    params.recipe = default_recipe(SchemeKind::weight, 12, 2);
    params.model = FillModel::balanced;
    params.k_random = 10;  // small enough to force resampling rounds
    params.rng_seed = 17;
    params.max_rounds = 200000;
    const MtResult r = moser_tardos(params);
    if (r.array) {
      for (int c = 0; c < 12; ++c) {
        int count1 = 0;
        for (int row = 2; row < r.array->k; ++row) count1 += r.array->at(row, c);
        CHECK(count1 == 5);
      }
      CHECK(is_covering(*r.array, Scheme{SchemeKind::weight, 3}));
    }
  }
}

TEST_CASE("construct") {
  SECTION("pair scheme over a binary alphabet") {
    const auto lll = lll_min_k(10, 2, 2, SchemeKind::partition, FillModel::uniform).k;
    const ConstructResult r =
        construct(10, 2, 2, SchemeKind::partition, FillModel::uniform, 4);
    CHECK(is_covering(r.array, r.scheme));
    CHECK(r.array.k <= lll + r.restarts + 1);
    CHECK(r.k_random == lll + r.restarts);
  }

  SECTION("two seed rows suffice when d = n at strength 2") {
    for (int n = 2; n <= 8; ++n) {
      const ConstructResult r =
          construct(n, 2, n, SchemeKind::partition, FillModel::uniform, 9);
      CHECK(r.array.k == 2);
      CHECK(r.rounds == 0);
      CHECK(is_covering(r.array, r.scheme));
    }
  }

  SECTION("balanced weight construction lands near the published coefficient") {
    const ConstructResult r =
        construct(64, 3, 2, SchemeKind::weight, FillModel::balanced, 11);
    CHECK(is_covering(r.array, r.scheme));
    CHECK(r.array.k <= 1.5 * (2.699 * std::log2(64.0) + 2.0));
  }

  SECTION("identical parameters and seed give byte-identical arrays") {
    const ConstructResult a = construct(15, 3, 2, SchemeKind::weight, FillModel::uniform, 31);
    const ConstructResult b = construct(15, 3, 2, SchemeKind::weight, FillModel::uniform, 31);
    CHECK(serialize_array(a.array, a.scheme) == serialize_array(b.array, b.scheme));
    const ConstructResult c = construct(15, 3, 2, SchemeKind::weight, FillModel::uniform, 32);
    CHECK(serialize_array(a.array, a.scheme) != serialize_array(c.array, c.scheme));
  }

  SECTION("outputs verify and keep their seed rows across random parameters") {
    std::mt19937_64 rng(606);
    int done = 0;
    while (done < 100) {
      const int n = 3 + static_cast<int>(uniform_below(rng, 8));
      const bool part = uniform_below(rng, 2) == 0;
      const int t = 2 + static_cast<int>(uniform_below(rng, 2));
      if (t > n) continue;
      int d;
      SchemeKind kind;
      if (part) {
        kind = SchemeKind::partition;
        d = t + static_cast<int>(uniform_below(rng, 3));
      } else {
        kind = SchemeKind::weight;
        d = 2 + static_cast<int>(uniform_below(rng, 2));
      }
      const FillModel model =
          uniform_below(rng, 4) == 0 ? FillModel::balanced : FillModel::uniform;
      if (model == FillModel::balanced && !(kind == SchemeKind::weight && t == 3 && d == 2))
        continue;  // stay on the fast exact-balanced path
      const std::uint64_t seed = rng();

      const ConstructResult r = construct(n, t, d, kind, model, seed);
      CHECK(is_covering(r.array, r.scheme));

      const SeedRecipe recipe = default_recipe(kind, n, d);
      const auto seeds = seed_rows(recipe, n, d);
      REQUIRE(r.array.k >= static_cast<int>(seeds.size()));
      for (std::size_t s = 0; s < seeds.size(); ++s)
        for (int c = 0; c < n; ++c) CHECK(r.array.at(static_cast<int>(s), c) == seeds[s][c]);
      ++done;
    }
  }

  SECTION("infeasible schemes are rejected") {
    CHECK_THROWS_AS(construct(4, 3, 2, SchemeKind::partition, FillModel::uniform, 1),
                    infeasible_error);
  }
}
