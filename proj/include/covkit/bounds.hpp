#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "covkit/coverage.hpp"
#include "covkit/recipes.hpp"
#include "covkit/rng.hpp"

namespace covkit {

enum class FillModel { uniform, balanced };

inline const char* to_string(FillModel m) {
  return m == FillModel::uniform ? "uniform" : "balanced";
}

// Which randomized partition model a bound describes: `alpha` seeds a
// distinct row (needs an alphabet that grows with n) and fills randomly over
// t-1 symbols; `beta` fills over the array's own alphabet d.
enum class BoundVariant { alpha, beta };

struct BoundReport {
  std::string name;
  double coefficient = 0.0;  // leading constant c in k <= c * lg n
  double base = 0.0;         // per-event base b: k grows like (t-1) lg n / lg b
  int t = 0;
  int d = 0;
  SchemeKind scheme = SchemeKind::partition;
  FillModel model = FillModel::uniform;
  bool estimated = false;
  std::string notes;
};

namespace detail {

inline double log2_big(const BigInt& x) {
  if (x <= 0) throw std::domain_error("log2_big: nonpositive argument");
  const unsigned b = boost::multiprecision::msb(x);
  if (b < 900) return std::log2(x.convert_to<double>());
  const BigInt shifted = x >> (b - 52);
  return static_cast<double>(b - 52) + std::log2(shifted.convert_to<double>());
}

inline double ln_big(const BigInt& x) { return log2_big(x) * std::numbers::ln2_v<double>; }

// num/den as a double for num <= den, robust to operands far beyond double
// range.
inline double ratio_to_double(const BigInt& num, const BigInt& den) {
  if (num.is_zero()) return 0.0;
  return std::exp2(log2_big(num) - log2_big(den));
}

inline double ln_rational(const BigRational& q) {
  if (q == 0) return -std::numeric_limits<double>::infinity();
  return ln_big(boost::multiprecision::numerator(q)) -
         ln_big(boost::multiprecision::denominator(q));
}

inline double xlogx(double x) { return x <= 0.0 ? 0.0 : x * std::log(x); }

}  // namespace detail

// ln P(one fixed class absent from k random rows): k * ln(1 - m/d^t) where m
// counts the words realizing the class.
inline double log_avoid_probability(const PatternClass& cls, int d, int t, std::int64_t k) {
  BigInt count;
  if (const PartitionRgs* p = std::get_if<PartitionRgs>(&cls)) {
    count = falling_factorial(d, p->parts());
  } else {
    count = weight_count(d, t, std::get<WeightValue>(cls).w);
  }
  const BigInt total = boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(t));
  const double r = detail::ratio_to_double(count, total);
  if (r >= 1.0) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(k) * std::log1p(-r);
}

inline double avoid_probability(const PatternClass& cls, int d, int t, std::int64_t k) {
  return std::exp(log_avoid_probability(cls, d, t, k));
}

struct EventProbability {
  double exact_union = 0.0;  // sum over non-seeded classes of avoid terms
  double coarse = 0.0;       // class count times the largest avoid term
  double log_exact_union = -std::numeric_limits<double>::infinity();
  double log_coarse = -std::numeric_limits<double>::infinity();
};

// P(one t-subset is deficient) for the uniform model over alphabet d, with
// classes pinned by seed rows excluded. Classes the alphabet cannot realize
// contribute a constant term (their avoid probability is 1 at every k).
inline EventProbability event_probability(SchemeKind kind, int d, int t, std::int64_t k,
                                          std::span<const PatternClass> seeded) {
  if (t < 1 || d < 1) throw std::invalid_argument("event_probability: need t >= 1, d >= 1");
  const BigInt total = boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(t));

  // (class multiplicity, realization count) per group of same-probability classes
  std::vector<std::pair<BigInt, BigInt>> groups;
  if (kind == SchemeKind::partition) {
    if (t > 20) throw std::out_of_range("event_probability: partition strength capped at 20");
    for (int r = 1; r <= t; ++r) {
      BigInt count = stirling2(t, r);
      for (const PatternClass& cls : seeded)
        if (const PartitionRgs* p = std::get_if<PartitionRgs>(&cls); p && p->parts() == r)
          count -= 1;
      if (count > 0) groups.emplace_back(count, falling_factorial(d, r));
    }
  } else {
    if (static_cast<std::int64_t>(d) * t - t + 1 > 1000000)
      throw limit_error("event_probability: too many weight classes");
    for (std::int64_t w = t; w <= static_cast<std::int64_t>(d) * t; ++w) {
      bool is_seeded = false;
      for (const PatternClass& cls : seeded)
        if (const WeightValue* v = std::get_if<WeightValue>(&cls); v && v->w == w)
          is_seeded = true;
      if (!is_seeded) groups.emplace_back(1, weight_count(d, t, w));
    }
  }

  EventProbability out;
  if (groups.empty()) {
    out.exact_union = out.coarse = 0.0;
    return out;
  }

  BigInt count_total = 0;
  double max_term = -std::numeric_limits<double>::infinity();
  std::vector<double> terms;
  for (const auto& [mult, realizations] : groups) {
    const double r = detail::ratio_to_double(realizations, total);
    const double term = r >= 1.0 ? -std::numeric_limits<double>::infinity()
                                 : static_cast<double>(k) * std::log1p(-r);
    terms.push_back(detail::ln_big(mult) + term);
    max_term = std::max(max_term, term);
    count_total += mult;
  }
  const double log_count_total = detail::ln_big(count_total);
  double peak = *std::max_element(terms.begin(), terms.end());
  if (peak == -std::numeric_limits<double>::infinity()) {
    out.log_exact_union = peak;
  } else {
    double acc = 0.0;
    for (double v : terms) acc += std::exp(v - peak);
    out.log_exact_union = peak + std::log(acc);
  }
  out.log_coarse = log_count_total + max_term;
  out.exact_union = std::exp(out.log_exact_union);
  out.coarse = std::exp(out.log_coarse);
  return out;
}

// Exact count of other t-subsets sharing at least one column:
// C(n,t) - C(n-t,t) - 1.
inline BigInt lll_dependency_count(std::int64_t n, int t) {
  if (t < 1 || n < t) throw std::invalid_argument("lll_dependency_count: need n >= t >= 1");
  return binomial(n, t) - binomial(n - t, t) - 1;
}

// --- balanced-column exact sums (binary alphabet, k = 2m rows) ---

struct BalancedPairBound {
  BigRational probability;       // 1 / C(2m, m)
  BigRational ratio_to_uniform;  // 4^m / C(2m, m): how much worse than i.i.d.
};

inline BalancedPairBound balanced_pair_probability(int m) {
  if (m < 1) throw std::out_of_range("balanced_pair_probability: m must be >= 1");
  const BigInt c = binomial(2 * m, m);
  return {BigRational(1, c), BigRational(BigInt(1) << (2 * m), c)};
}

// P(a fixed two-part pattern of three columns is missing) with m of each
// symbol per column: sum_j C(m,j)^2 C(2j,j) / C(2m,m)^2.
inline BigRational balanced_partition3_miss_probability(int m) {
  if (m < 1 || m > 200)
    throw std::out_of_range("balanced_partition3_miss_probability: m must be in [1,200]");
  BigInt num = 0;
  for (int j = 0; j <= m; ++j) {
    const BigInt b = binomial(m, j);
    num += b * b * binomial(2 * j, j);
  }
  BigInt den = binomial(2 * m, m);
  den *= den;
  return BigRational(num, den);
}

// Bound on P(a three-column set misses one of its interior weights) with m of
// each symbol per column: 2 * sum_{j >= m/2} C(m,j)^2 C(j,2j-m) / C(2m,m)^2.
inline BigRational balanced_weight3_miss_probability(int m) {
  if (m < 1 || m > 200)
    throw std::out_of_range("balanced_weight3_miss_probability: m must be in [1,200]");
  BigInt num = 0;
  for (int j = (m + 1) / 2; j <= m; ++j) {
    const BigInt b = binomial(m, j);
    num += b * b * binomial(j, 2 * j - m);
  }
  BigInt den = binomial(2 * m, m);
  den *= den;
  return BigRational(2 * num, den);
}

// --- exponential-rate maximizations ---

struct MaxResult {
  double arg = 0.0;
  double value = 0.0;
};

template <typename F>
MaxResult golden_section_max(F f, double lo, double hi, double tol = 1e-12) {
  const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - (b - a) * inv_gr;
  double d = a + (b - a) * inv_gr;
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * inv_gr;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * inv_gr;
      fd = f(d);
    }
  }
  const double x = (a + b) / 2.0;
  return {x, f(x)};
}

// Per-row exponential rate of the balanced partition sum, on (0,1) with
// endpoint limits phi(0)=1, phi(1)=4. Peaks at A=2/3 with value 9.
inline double phi(double a) {
  if (a < 0.0 || a > 1.0) throw std::domain_error("phi: argument outside [0,1]");
  if (a == 0.0) return 1.0;
  if (a == 1.0) return 4.0;
  return std::exp(detail::xlogx(2 * a) - 4 * detail::xlogx(a) - 2 * detail::xlogx(1 - a));
}

// Per-row exponential rate of the balanced weight sum, on (1/2,1] with the
// left endpoint limit psi(1/2)=4 and psi(1)=1. Peaks near A=0.637.
inline double psi(double a) {
  if (a < 0.5 || a > 1.0) throw std::domain_error("psi: argument outside [1/2,1]");
  if (a == 0.5) return 4.0;
  if (a == 1.0) return 1.0;
  return std::exp(-(detail::xlogx(a) + 3 * detail::xlogx(1 - a) + detail::xlogx(2 * a - 1)));
}

inline MaxResult maximize_phi() {
  constexpr double eps = 1e-9;
  return golden_section_max([](double a) { return phi(a); }, eps, 1.0 - eps);
}

inline MaxResult maximize_psi() {
  constexpr double eps = 1e-9;
  MaxResult interior =
      golden_section_max([](double a) { return psi(a); }, 0.5 + eps, 1.0 - eps);
  if (psi(1.0) > interior.value) return {1.0, psi(1.0)};
  return interior;
}

// --- closed-form leading coefficients ---

namespace detail {

// Base of the per-event avoid probability for the partition scheme with fill
// alphabet a: a^t / (a^t - a(a-1)); two-part patterns are the hardest to hit.
inline double partition_base(int a, int t) {
  if (a < 2) throw std::invalid_argument("partition bound needs fill alphabet >= 2");
  const BigInt total = boost::multiprecision::pow(BigInt(a), static_cast<unsigned>(t));
  const double r = ratio_to_double(falling_factorial(a, 2), total);
  return 1.0 / (1.0 - r);
}

// Base for the weight scheme: d^t / (d^t - t); the scarcest interior weight
// is realized by exactly t words.
inline double weight_base(int d, int t) {
  if (d < 2) throw std::invalid_argument("weight bound needs d >= 2");
  const BigInt total = boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(t));
  const double r = ratio_to_double(BigInt(t), total);
  return 1.0 / (1.0 - r);
}

}  // namespace detail

// Leading constant c in k0 <= c lg n for the scheme's randomized model.
inline BoundReport asymptotic_constant(SchemeKind scheme, int t, int d,
                                       FillModel model = FillModel::uniform,
                                       BoundVariant variant = BoundVariant::beta) {
  if (t < 2) throw std::invalid_argument("asymptotic_constant: t must be >= 2");
  BoundReport rep;
  rep.t = t;
  rep.scheme = scheme;
  rep.model = model;

  if (model == FillModel::balanced) {
    if (scheme == SchemeKind::weight && t == 3 && d == 2) {
      const MaxResult m = maximize_psi();
      rep.base = 16.0 / m.value;
      rep.coefficient = 4.0 / std::log2(rep.base);
      rep.d = 2;
      rep.name = "weight-balanced-t3-d2";
      rep.notes = "rate from the balanced three-column weight sum";
      return rep;
    }
    if (scheme == SchemeKind::partition && t == 3 && variant == BoundVariant::alpha) {
      const MaxResult m = maximize_phi();
      rep.base = 16.0 / m.value;
      rep.coefficient = 4.0 / std::log2(rep.base);
      rep.d = 2;
      rep.name = "partition-alpha-balanced-t3";
      rep.notes = "balanced columns match the uniform alpha coefficient";
      return rep;
    }
    throw std::invalid_argument(
        "asymptotic_constant: no closed-form balanced bound for these parameters");
  }

  if (scheme == SchemeKind::partition) {
    const int a = (variant == BoundVariant::alpha) ? t - 1 : d;
    if (variant == BoundVariant::alpha && t < 3)
      throw std::invalid_argument("alpha variant needs t >= 3");
    rep.base = detail::partition_base(a, t);
    rep.coefficient = (t - 1) / std::log2(rep.base);
    rep.d = a;
    rep.name = (variant == BoundVariant::alpha)
                   ? "partition-alpha-t" + std::to_string(t)
                   : "partition-t" + std::to_string(t) + "-d" + std::to_string(a);
    if (variant == BoundVariant::alpha)
      rep.notes = "distinct seed row; random fill over " + std::to_string(a) + " symbols";
    return rep;
  }

  rep.base = detail::weight_base(d, t);
  rep.coefficient = (t - 1) / std::log2(rep.base);
  rep.d = d;
  rep.name = "weight-t" + std::to_string(t) + "-d" + std::to_string(d);
  return rep;
}

// First-moment (union bound over all subsets) counterpart: t / lg(base).
inline BoundReport first_moment_constant(SchemeKind scheme, int t, int d,
                                         BoundVariant variant = BoundVariant::beta) {
  BoundReport rep = asymptotic_constant(scheme, t, d, FillModel::uniform, variant);
  rep.coefficient = t / std::log2(rep.base);
  rep.name = "first-moment-" + rep.name;
  if (scheme == SchemeKind::partition && variant == BoundVariant::beta && t == 3 && d == 3)
    rep.notes = "reference value 8.25 is a rounding of this constant";
  return rep;
}

// Per-class avoid bases for three columns over alphabet d, compared against
// the d=3 value 21/27. Larger alphabets help three-part patterns but never
// the binding two-part ones.
struct PartitionAlphabetComparison {
  double two_part_base = 0.0;
  double three_part_base = 0.0;
  double baseline = 21.0 / 27.0;
  bool three_part_below_baseline = false;
  bool two_part_below_baseline = false;
};

inline PartitionAlphabetComparison partition_alphabet_comparison(int d) {
  if (d < 2) throw std::invalid_argument("partition_alphabet_comparison: d must be >= 2");
  const BigInt d3 = BigInt(d) * d * d;
  const BigRational two(d3 - falling_factorial(d, 2), d3);
  const BigRational three(d3 - falling_factorial(d, 3), d3);
  const BigRational baseline(21, 27);
  PartitionAlphabetComparison out;
  out.two_part_base = two.convert_to<double>();
  out.three_part_base = three.convert_to<double>();
  out.three_part_below_baseline = three < baseline;
  out.two_part_below_baseline = two < baseline;
  return out;
}

// --- finite-n minimum k from the local lemma ---

struct LllBound {
  std::int64_t k = 0;
  bool estimated = false;  // true when the per-event probability is Monte Carlo
};

struct LllOptions {
  std::uint64_t mc_seed = 1;
  int mc_trials = 100000;
  std::int64_t max_k = 20000000;
};

namespace detail {

// Monte Carlo estimate of P(one t-subset deficient) under balanced columns
// with `k` rows over `ra` symbols. Classes are indexed over the array
// alphabet `d`; seeded classes are not required.
inline double mc_balanced_event_probability(SchemeKind kind, int t, int d, int ra, int k,
                                            std::span<const PatternClass> seeded, int trials,
                                            std::uint64_t seed) {
  const ClassIndexer indexer(kind, t, d);
  std::vector<char> needed(indexer.num_classes(), 1);
  for (const PatternClass& cls : seeded) {
    if (const PartitionRgs* p = std::get_if<PartitionRgs>(&cls)) {
      needed[indexer.index_of_word(p->labels)] = 0;
    } else {
      needed[std::get<WeightValue>(cls).w - t] = 0;
    }
  }
  int needed_total = 0;
  for (char c : needed) needed_total += c;
  if (needed_total == 0) return 0.0;

  std::vector<int> column_template(k);
  for (int i = 0; i < k; ++i) column_template[i] = i / (k / ra);
  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> cols(t, column_template);
  std::vector<int> word(t);
  std::vector<char> covered(indexer.num_classes());
  int misses = 0;
  for (int trial = 0; trial < trials; ++trial) {
    for (int c = 0; c < t; ++c) {
      cols[c] = column_template;
      shuffle_values(cols[c], rng);
    }
    std::fill(covered.begin(), covered.end(), 0);
    int found = 0;
    for (int r = 0; r < k && found < needed_total; ++r) {
      for (int i = 0; i < t; ++i) word[i] = cols[i][r];
      const int idx = indexer.index_of_word(word);
      if (needed[idx] && !covered[idx]) {
        covered[idx] = 1;
        ++found;
      }
    }
    if (found < needed_total) ++misses;
  }
  return static_cast<double>(misses) / trials;
}

}  // namespace detail

// Smallest k with e * p(k) * (delta + 1) <= 1, using the exact dependency
// count and the default seed recipe's class exclusions. The uniform model
// evaluates the exact union bound over non-seeded classes; the balanced
// binary model uses the exact column sums where the analysis exists and a
// seeded Monte Carlo estimate elsewhere (flagged `estimated`).
inline LllBound lll_min_k(std::int64_t n, int t, int d, SchemeKind kind, FillModel model,
                          const LllOptions& opt = {}) {
  if (t < 1 || n < t || d < 1) throw std::invalid_argument("lll_min_k: need n >= t >= 1, d >= 1");
  if (kind == SchemeKind::partition && d < t)
    throw infeasible_error("partition scheme infeasible: d < t");

  const SeedRecipe recipe = default_recipe(kind, n, d);
  const int ra = effective_random_alphabet(kind, t, d, recipe);
  const std::vector<PatternClass> seeded = seeded_classes(recipe, kind, t, d);
  const double ln_dep = detail::ln_big(lll_dependency_count(n, t) + 1);

  // With everything seeded one random row (or one balanced block) suffices.
  const EventProbability probe = event_probability(kind, ra, t, 1, seeded);
  if (probe.log_exact_union == -std::numeric_limits<double>::infinity())
    return {model == FillModel::balanced ? ra : 1, false};

  if (model == FillModel::uniform) {
    for (std::int64_t k = 1; k <= opt.max_k; ++k) {
      const EventProbability p = event_probability(kind, ra, t, k, seeded);
      if (1.0 + p.log_exact_union + ln_dep <= 0.0) return {k, false};
    }
    throw limit_error("lll_min_k: no k within the search cap satisfies the condition");
  }

  const bool exact_weight3 = kind == SchemeKind::weight && t == 3 && d == 2;
  const bool exact_pair = kind == SchemeKind::partition && t == 2 && ra == 2;
  const bool exact_partition3 =
      kind == SchemeKind::partition && t == 3 && ra == 2 && recipe.has(SeedRowKind::distinct_row);

  if (exact_weight3 || exact_pair || exact_partition3) {
    for (int m = 1; m <= 200; ++m) {
      double ln_p;
      if (exact_weight3) {
        ln_p = detail::ln_rational(balanced_weight3_miss_probability(m));
      } else if (exact_partition3) {
        ln_p = std::log(3.0) + detail::ln_rational(balanced_partition3_miss_probability(m));
      } else {
        ln_p = detail::ln_rational(balanced_pair_probability(m).probability);
      }
      if (1.0 + ln_p + ln_dep <= 0.0) return {2 * m, false};
    }
    throw limit_error("lll_min_k: balanced exact sums are capped at m = 200");
  }

  // No closed-form balanced analysis: estimate the per-event probability.
  auto condition = [&](std::int64_t k) {
    const double p = detail::mc_balanced_event_probability(kind, t, d, ra, static_cast<int>(k),
                                                           seeded, opt.mc_trials, opt.mc_seed);
    if (p == 0.0) return true;  // below Monte Carlo resolution
    return 1.0 + std::log(p) + ln_dep <= 0.0;
  };
  std::int64_t hi = ra;
  while (hi <= opt.max_k && !condition(hi)) hi *= 2;
  if (hi > opt.max_k) throw limit_error("lll_min_k: no k within the search cap");
  std::int64_t best = hi;
  for (std::int64_t k = std::max<std::int64_t>(ra, hi / 2); k < hi; k += ra) {
    if (condition(k)) {
      best = k;
      break;
    }
  }
  return {best, true};
}

}  // namespace covkit
