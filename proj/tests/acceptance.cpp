// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "covkit/covkit.hpp"

using namespace covkit;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, double time_limit_s,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  const auto start = std::chrono::steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (elapsed > time_limit_s) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over time limit");
  }
  if (!ok) ++failures;
  std::printf("criterion %d [%s]: %s (%.2fs%s)\n", number, label.c_str(),
              ok ? "PASS" : "FAIL", elapsed, detail.empty() ? "" : ("; " + detail).c_str());
  std::fflush(stdout);
}

bool near(double got, double expected, double tol, std::string& detail) {
  if (std::abs(got - expected) <= tol) return true;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "got %.6f, wanted %.4f +/- %.4g", got, expected, tol);
  detail += (detail.empty() ? "" : "; ") + std::string(buf);
  return false;
}

}  // namespace

int main() {
  using SK = SchemeKind;
  using BV = BoundVariant;

  criterion(1, "constant reproduction", 1.0, [](std::string& detail) {
    bool ok = true;
    ok &= near(asymptotic_constant(SK::partition, 3, 0, FillModel::uniform, BV::alpha).coefficient,
               4.818, 0.005, detail);
    ok &= near(asymptotic_constant(SK::partition, 3, 3).coefficient, 5.516, 0.005, detail);
    ok &= near(asymptotic_constant(SK::partition, 4, 0, FillModel::uniform, BV::alpha).coefficient,
               27.019, 0.005, detail);
    ok &= near(asymptotic_constant(SK::partition, 4, 4).coefficient, 43.313, 0.005, detail);
    ok &= near(asymptotic_constant(SK::weight, 3, 2).coefficient, 2.95, 0.005, detail);
    ok &= near(asymptotic_constant(SK::weight, 4, 2).coefficient, 7.23, 0.005, detail);
    ok &= near(asymptotic_constant(SK::weight, 3, 3).coefficient, 11.77, 0.005, detail);
    ok &= near(asymptotic_constant(SK::weight, 3, 2, FillModel::balanced).coefficient, 2.699,
               0.005, detail);
    ok &= near(first_moment_constant(SK::partition, 3, 0, BV::alpha).coefficient, 7.2, 0.06,
               detail);
    ok &= near(first_moment_constant(SK::partition, 3, 3).coefficient, 8.27, 0.06, detail);
    return ok;
  });

  criterion(2, "maximizer checks", 1.0, [](std::string& detail) {
    bool ok = true;
    const MaxResult phi_max = maximize_phi();
    ok &= near(phi_max.arg, 2.0 / 3.0, 1e-4, detail);
    ok &= near(phi_max.value, 9.0, 1e-6, detail);
    const MaxResult psi_max = maximize_psi();
    ok &= near(psi_max.arg, 0.637, 0.002, detail);
    ok &= near(psi_max.value, 5.73, 0.01, detail);
    return ok;
  });

  criterion(3, "table reproduction", 1.0, [](std::string& detail) {
    bool ok = true;
    const ArrayFile t1 = tables::table1();
    const ArrayFile t2 = tables::table2();
    if (!is_covering(t1.array, t1.scheme)) {
      ok = false;
      detail += "table1 fails; ";
    }
    if (!is_covering(t2.array, t2.scheme)) {
      ok = false;
      detail += "table2 fails; ";
    }
    for (int n = 2; n <= 8; ++n) {
      const ConstructResult r = construct(n, 2, n, SK::partition, FillModel::uniform, 1);
      if (r.array.k != 2 || !is_covering(r.array, r.scheme)) {
        ok = false;
        detail += "two-row construction fails at n=" + std::to_string(n) + "; ";
      }
    }
    return ok;
  });

  criterion(4, "exact minimum k0(4,3,4)=5", 60.0, [](std::string& detail) {
    const SearchResult r = min_rows_exact(4, 3, 4, SK::partition, 6);
    if (!r.k0 || *r.k0 != 5) {
      detail = "k0 != 5";
      return false;
    }
    if (!r.proved_min) {
      detail = "minimality not proved";
      return false;
    }
    if (!r.witness || !is_covering(*r.witness, Scheme{SK::partition, 3}) ||
        !oracle_is_covering(*r.witness, Scheme{SK::partition, 3})) {
      detail = "witness invalid";
      return false;
    }
    return true;
  });

  criterion(5, "differential verification, 1000 arrays", 30.0, [](std::string& detail) {
    std::mt19937_64 rng(4242);
    int disagreements = 0;
    int checked = 0;
    while (checked < 1000) {
      const int n = 1 + static_cast<int>(uniform_below(rng, 8));
      const int k = 1 + static_cast<int>(uniform_below(rng, 12));
      const int d = 1 + static_cast<int>(uniform_below(rng, 4));
      const bool part = uniform_below(rng, 2) == 0;
      const int tmax = part ? std::min(n, d) : n;
      if (tmax < 1) continue;
      const int t = 1 + static_cast<int>(uniform_below(rng, tmax));
      const Scheme s{part ? SK::partition : SK::weight, t};
      Array a(k, n, d);
      for (int& cell : a.cells) cell = static_cast<int>(uniform_below(rng, d));
      if (is_covering(a, s) != oracle_is_covering(a, s)) ++disagreements;
      ++checked;
    }
    if (disagreements > 0) {
      detail = std::to_string(disagreements) + " disagreements";
      return false;
    }
    return true;
  });

  criterion(6, "constructive LLL, weight t=3 d=2", 30.0, [](std::string& detail) {
    bool ok = true;
    for (int n : {16, 64, 256}) {
      const ConstructResult r = construct(n, 3, 2, SK::weight, FillModel::uniform, 2024);
      if (!is_covering(r.array, r.scheme)) {
        ok = false;
        detail += "n=" + std::to_string(n) + " output fails verification; ";
        continue;
      }
      const double cap = 1.5 * (2.95 * std::log2(static_cast<double>(n))) + 4.0;
      if (r.array.k > cap) {
        ok = false;
        detail += "n=" + std::to_string(n) + " used " + std::to_string(r.array.k) +
                  " rows, cap " + std::to_string(cap) + "; ";
      }
    }
    return ok;
  });

  criterion(7, "combinatorial identities", 5.0, [](std::string& detail) {
    for (int d = 1; d <= 5; ++d)
      for (int t = 1; t <= 8; ++t) {
        BigInt sum = 0;
        for (std::int64_t w = t; w <= static_cast<std::int64_t>(d) * t; ++w) {
          sum += weight_count(d, t, w);
          if (weight_count(d, t, w) !=
              weight_count(d, t, static_cast<std::int64_t>(t) * (d + 1) - w)) {
            detail = "reflection symmetry fails";
            return false;
          }
        }
        if (sum != boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(t))) {
          detail = "weight counts do not sum to d^t";
          return false;
        }
      }
    for (int t = 1; t <= 12; ++t) {
      BigInt sum = 0;
      for (int r = 1; r <= t; ++r) sum += stirling2(t, r);
      if (sum != bell(t)) {
        detail = "stirling sums disagree with bell";
        return false;
      }
    }
    const double root25 =
        std::exp(covkit::detail::ln_rational(balanced_partition3_miss_probability(100)) / 100.0);
    if (!(root25 >= 0.50 && root25 <= 0.65)) {
      detail = "partition sum root off: " + std::to_string(root25);
      return false;
    }
    const double root34 = std::exp(
        (covkit::detail::ln_rational(balanced_weight3_miss_probability(100)) - std::log(2.0)) /
        100.0);
    if (!(root34 >= 0.33 && root34 <= 0.39)) {
      detail = "weight sum root off: " + std::to_string(root34);
      return false;
    }
    return true;
  });

  criterion(8, "asymptotic convergence (property form)", 30.0, [](std::string& detail) {
    // The (1+o(1)) statements are not desk-verifiable as equalities; this
    // checks the documented convergence of the finite-n row bound instead.
    const double coef = asymptotic_constant(SK::weight, 4, 2).coefficient;
    double prev_gap = 1e9;
    for (int e : {10, 20, 30}) {
      const auto k =
          lll_min_k(std::int64_t(1) << e, 4, 2, SK::weight, FillModel::uniform).k;
      const double gap = std::abs(static_cast<double>(k) / e - coef);
      if (gap >= prev_gap) {
        detail = "gap not shrinking at n=2^" + std::to_string(e);
        return false;
      }
      prev_gap = gap;
      if (e == 30 && gap > 0.05 * coef) {
        detail = "ratio off by more than 5% at n=2^30";
        return false;
      }
    }
    return true;
  });

  if (failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  return 1;
}
