#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "ofi/combinatorics.hpp"
#include "ofi/confusion.hpp"
#include "ofi/errors.hpp"
#include "ofi/metrics.hpp"
#include "ofi/rational.hpp"

// Brute-force oracles over the full enumeration of M(n), and a runner that
// checks every closed form in ofi::combinatorics against them.
namespace ofi::verification {

// Largest n the enumeration-based checks accept (N(200) ~ 1.4M matrices).
inline constexpr std::int64_t kMaxEnumerationN = 200;

// counts[cell][x] = number of matrices in M(n) whose cell equals x.
inline std::array<std::vector<std::uint64_t>, 4> brute_force_cell_counts(std::int64_t n) {
  std::array<std::vector<std::uint64_t>, 4> counts;
  for (auto& c : counts) c.assign(static_cast<std::size_t>(n + 1), 0);
  for (const auto& cm : combinatorics::enumerate_cms(n)) {
    for (std::size_t cell = 0; cell < 4; ++cell) {
      ++counts[cell][static_cast<std::size_t>(cm.cells[cell])];
    }
  }
  return counts;
}

inline std::uint64_t brute_force_cardinality(std::int64_t n) {
  std::uint64_t count = 0;
  for ([[maybe_unused]] const auto& cm : combinatorics::enumerate_cms(n)) ++count;
  return count;
}

// Histogram of marginal_benefit over every matrix of M(n).
inline std::map<Rational, std::uint64_t> brute_force_histogram(std::int64_t n) {
  std::map<Rational, std::uint64_t> hist;
  for (const auto& cm : combinatorics::enumerate_cms(n)) {
    ++hist[marginal_benefit(BinaryConfusion{cm.tp(), cm.fn(), cm.fp(), cm.tn()})];
  }
  return hist;
}

struct Moments {
  Rational mean;
  Rational variance;
};

// Exact population mean and variance of B over M(n).
inline Moments brute_force_moments(std::int64_t n) {
  std::int64_t count = 0;
  std::int64_t sum = 0;
  std::int64_t sum_sq = 0;
  for (const auto& cm : combinatorics::enumerate_cms(n)) {
    const std::int64_t d = cm.fp() - cm.fn();
    ++count;
    sum += d;
    sum_sq += d * d;
  }
  const Rational mean(sum, n * count);
  return Moments{mean, Rational(sum_sq, n * n * count) - mean * mean};
}

enum class Identity {
  Cardinality,
  CellCounts,
  CountSum,
  CountIncrement,
  DistributionTotal,
  DistributionMatchesEnumeration,
  Symmetry,
  ModeAtZero,
  MeanZero,
  Variance,
};

inline constexpr std::array kAllIdentities = {
    Identity::Cardinality,       Identity::CellCounts,
    Identity::CountSum,          Identity::CountIncrement,
    Identity::DistributionTotal, Identity::DistributionMatchesEnumeration,
    Identity::Symmetry,          Identity::ModeAtZero,
    Identity::MeanZero,          Identity::Variance,
};

inline const char* describe(Identity id) {
  switch (id) {
    case Identity::Cardinality: return "|M(n)| = (n+1)(n+2)(n+3)/6";
    case Identity::CellCounts: return "per-cell count of x = (n-x+1)?";
    case Identity::CountSum: return "sum_x C(x;n) = N(n)";
    case Identity::CountIncrement: return "C(x;n+1) - C(x;n) = n-x+2";
    case Identity::DistributionTotal: return "distribution total = N(n)";
    case Identity::DistributionMatchesEnumeration: return "counted distribution = enumerated histogram";
    case Identity::Symmetry: return "counts[s] = counts[-s]";
    case Identity::ModeAtZero: return "unique mode at 0";
    case Identity::MeanZero: return "mean of B = 0";
    case Identity::Variance: return "variance of B = (n+4)/(10n)";
  }
  return "?";
}

// Outcome of every identity for a single n, in kAllIdentities order.
using CaseResult = std::array<bool, kAllIdentities.size()>;

inline CaseResult check_case(std::int64_t n) {
  namespace cb = combinatorics;
  CaseResult ok{};
  auto set = [&](Identity id, bool value) { ok[static_cast<std::size_t>(id)] = value; };

  set(Identity::Cardinality, brute_force_cardinality(n) == cb::total_combinations(n));

  const auto cells = brute_force_cell_counts(n);
  const auto cells_next = brute_force_cell_counts(n + 1);
  bool counts_ok = true;
  bool increment_ok = true;
  for (std::size_t cell = 0; cell < 4; ++cell) {
    for (std::int64_t x = 0; x <= n; ++x) {
      const auto ux = static_cast<std::size_t>(x);
      counts_ok = counts_ok && cells[cell][ux] == cb::count_value(x, n);
      const auto observed = cells_next[cell][ux] - cells[cell][ux];
      increment_ok = increment_ok && observed == static_cast<std::uint64_t>(n - x + 2) &&
                     observed == cb::count_increment(x, n);
    }
  }
  set(Identity::CellCounts, counts_ok);
  set(Identity::CountIncrement, increment_ok);
  set(Identity::CountSum, cb::count_sum_identity(n));

  const auto dist = cb::marginal_benefit_distribution(n);
  set(Identity::DistributionTotal, dist.total() == cb::total_combinations(n));
  set(Identity::DistributionMatchesEnumeration, dist.as_map() == brute_force_histogram(n));

  bool symmetric = true;
  bool mode_ok = true;
  const auto at_zero = dist.count_at_difference(0);
  for (std::int64_t d = 1; d <= n; ++d) {
    symmetric = symmetric && dist.count_at_difference(d) == dist.count_at_difference(-d);
    mode_ok = mode_ok && dist.count_at_difference(d) < at_zero &&
              dist.count_at_difference(-d) < at_zero;
  }
  set(Identity::Symmetry, symmetric);
  set(Identity::ModeAtZero, mode_ok);

  const auto moments = brute_force_moments(n);
  set(Identity::MeanZero, moments.mean == 0);
  set(Identity::Variance, moments.variance == cb::b_stats(n).variance);
  return ok;
}

struct IdentityReport {
  Identity identity;
  bool passed = true;
  std::vector<std::int64_t> failing_n;
};

// Runs check_case for every n in [n_min, n_max], spread over `workers`
// threads. Output does not depend on the worker count.
inline std::vector<IdentityReport> run(std::int64_t n_min, std::int64_t n_max,
                                       unsigned workers = 1) {
  if (n_min < 1 || n_max < n_min) throw ConfigError("need 1 <= n_min <= n_max");
  if (n_max > kMaxEnumerationN) {
    throw ConfigError("n_max " + std::to_string(n_max) + " exceeds the enumeration limit " +
                      std::to_string(kMaxEnumerationN));
  }
  const auto cases = static_cast<std::size_t>(n_max - n_min + 1);
  std::vector<CaseResult> results(cases);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cases; i = next++) {
      results[i] = check_case(n_min + static_cast<std::int64_t>(i));
    }
  };
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(cases));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }

  std::vector<IdentityReport> reports;
  for (std::size_t k = 0; k < kAllIdentities.size(); ++k) {
    IdentityReport r{kAllIdentities[k], true, {}};
    for (std::size_t i = 0; i < cases; ++i) {
      if (!results[i][k]) {
        r.passed = false;
        r.failing_n.push_back(n_min + static_cast<std::int64_t>(i));
      }
    }
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace ofi::verification
