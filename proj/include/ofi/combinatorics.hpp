#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ofi/errors.hpp"
#include "ofi/rational.hpp"

// Counting results over M(n), the set of all confusion matrices with n
// samples, and the distribution of marginal benefit B = (FP - FN) / n over it.
namespace ofi::combinatorics {

// The w-th triangular number, w(w+1)/2 (Knuth's "termial", written w?).
constexpr std::uint64_t termial(std::uint64_t w) noexcept { return w * (w + 1) / 2; }

// One element of M(n). Cells are (TP, FN, FP, TN).
struct CmVector {
  std::array<std::int64_t, 4> cells{};

  constexpr std::int64_t tp() const noexcept { return cells[0]; }
  constexpr std::int64_t fn() const noexcept { return cells[1]; }
  constexpr std::int64_t fp() const noexcept { return cells[2]; }
  constexpr std::int64_t tn() const noexcept { return cells[3]; }
  constexpr std::int64_t n() const noexcept { return cells[0] + cells[1] + cells[2] + cells[3]; }

  friend bool operator==(const CmVector&, const CmVector&) = default;
};

// Lazy range over M(n), lexicographic in (TP, FN, FP) with TN implied.
// Restricting TP to [tp_first, tp_last] gives disjoint slices that together
// cover M(n), for callers that want to split the work.
class CmRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = CmVector;
    using difference_type = std::ptrdiff_t;
    using pointer = const CmVector*;
    using reference = const CmVector&;

    iterator() = default;

    reference operator*() const noexcept { return current_; }
    pointer operator->() const noexcept { return &current_; }

    iterator& operator++() noexcept {
      auto& c = current_.cells;
      if (c[0] + c[1] + c[2] < n_) {
        ++c[2];
      } else if (c[0] + c[1] < n_) {
        ++c[1];
        c[2] = 0;
      } else {
        ++c[0];
        c[1] = 0;
        c[2] = 0;
        if (c[0] > tp_last_) done_ = true;
      }
      c[3] = n_ - c[0] - c[1] - c[2];
      return *this;
    }

    void operator++(int) noexcept { ++*this; }

    friend bool operator==(const iterator& it, std::default_sentinel_t) noexcept {
      return it.done_;
    }

   private:
    friend class CmRange;
    iterator(std::int64_t n, std::int64_t tp_first, std::int64_t tp_last)
        : n_(n), tp_last_(tp_last), done_(tp_first > tp_last) {
      current_.cells = {tp_first, 0, 0, n - tp_first};
    }

    CmVector current_{};
    std::int64_t n_ = 0;
    std::int64_t tp_last_ = -1;
    bool done_ = true;
  };

  CmRange(std::int64_t n, std::int64_t tp_first, std::int64_t tp_last)
      : n_(n), tp_first_(tp_first), tp_last_(tp_last) {}

  iterator begin() const { return iterator(n_, tp_first_, tp_last_); }
  std::default_sentinel_t end() const noexcept { return {}; }

 private:
  std::int64_t n_;
  std::int64_t tp_first_;
  std::int64_t tp_last_;
};

inline void require_positive_n(std::int64_t n) {
  if (n < 1) throw DomainError("n must be >= 1, got " + std::to_string(n));
}

inline CmRange enumerate_cms(std::int64_t n) {
  require_positive_n(n);
  return CmRange(n, 0, n);
}

// Slice of M(n) with TP in [tp_first, tp_last].
inline CmRange enumerate_cms(std::int64_t n, std::int64_t tp_first, std::int64_t tp_last) {
  require_positive_n(n);
  if (tp_first < 0 || tp_last > n) throw DomainError("TP slice outside [0, n]");
  return CmRange(n, tp_first, tp_last);
}

inline void require_value_in_range(std::int64_t x, std::int64_t n) {
  require_positive_n(n);
  if (x < 0 || x > n) {
    throw DomainError("value " + std::to_string(x) + " outside [0, " + std::to_string(n) + "]");
  }
}

// C(x; n): how many matrices in M(n) hold the value x in any one fixed cell.
// The other three cells share n - x samples, so stars and bars gives
// binom(n - x + 2, 2) = (n - x + 1)?.
inline std::uint64_t count_value(std::int64_t x, std::int64_t n) {
  require_value_in_range(x, n);
  return termial(static_cast<std::uint64_t>(n - x + 1));
}

// N(n) = |M(n)| = binom(n + 3, 3).
inline std::uint64_t total_combinations(std::int64_t n) {
  require_positive_n(n);
  const auto m = static_cast<std::uint64_t>(n);
  return (m + 1) * (m + 2) * (m + 3) / 6;
}

// Sum over x of C(x; n) equals N(n).
inline bool count_sum_identity(std::int64_t n) {
  std::uint64_t sum = 0;
  for (std::int64_t x = 0; x <= n; ++x) sum += count_value(x, n);
  return sum == total_combinations(n);
}

// C(x; n + 1) - C(x; n), which is n - x + 2.
inline std::uint64_t count_increment(std::int64_t x, std::int64_t n) {
  require_value_in_range(x, n);
  return count_value(x, n + 1) - count_value(x, n);
}

// Multiplicity of every marginal-benefit score over M(n). Scores are
// (FP - FN) / n, so they are indexed internally by the difference
// d = FP - FN in [-n, n].
class ScoreDistribution {
 public:
  ScoreDistribution(std::int64_t n, std::vector<std::uint64_t> by_difference)
      : n_(n), counts_(std::move(by_difference)) {
    require_positive_n(n);
    if (counts_.size() != static_cast<std::size_t>(2 * n + 1)) {
      throw DomainError("distribution needs 2n + 1 difference slots");
    }
  }

  std::int64_t n() const noexcept { return n_; }

  // Multiplicity of the score d / n.
  std::uint64_t count_at_difference(std::int64_t d) const {
    if (d < -n_ || d > n_) return 0;
    return counts_[static_cast<std::size_t>(d + n_)];
  }

  // Multiplicity of an exact score; zero for scores that cannot occur.
  std::uint64_t count(const Rational& score) const {
    const Rational scaled = score * n_;
    if (scaled.denominator() != 1) return 0;
    return count_at_difference(scaled.numerator());
  }

  std::uint64_t total() const noexcept {
    std::uint64_t sum = 0;
    for (auto c : counts_) sum += c;
    return sum;
  }

  // Score with the largest multiplicity; the smallest such score on ties.
  Rational mode() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < counts_.size(); ++i) {
      if (counts_[i] > counts_[best]) best = i;
    }
    return Rational(static_cast<std::int64_t>(best) - n_, n_);
  }

  // Non-zero entries keyed by exact score, ascending.
  std::map<Rational, std::uint64_t> as_map() const {
    std::map<Rational, std::uint64_t> out;
    for (std::int64_t d = -n_; d <= n_; ++d) {
      if (auto c = count_at_difference(d); c != 0) out.emplace(Rational(d, n_), c);
    }
    return out;
  }

  const std::vector<std::uint64_t>& by_difference() const noexcept { return counts_; }

  friend bool operator==(const ScoreDistribution&, const ScoreDistribution&) = default;

 private:
  std::int64_t n_;
  std::vector<std::uint64_t> counts_;
};

// Counts (FP, FN) pairs instead of enumerating M(n): once FP and FN are fixed,
// TP + TN = n - FP - FN can be split n - FP - FN + 1 ways. O(n^2).
inline ScoreDistribution marginal_benefit_distribution(std::int64_t n) {
  require_positive_n(n);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(2 * n + 1), 0);
  for (std::int64_t fp = 0; fp <= n; ++fp) {
    for (std::int64_t fn = 0; fp + fn <= n; ++fn) {
      counts[static_cast<std::size_t>(fp - fn + n)] += static_cast<std::uint64_t>(n - fp - fn + 1);
    }
  }
  return ScoreDistribution(n, std::move(counts));
}

// Population moments of B over M(n).
struct BStats {
  std::int64_t n = 0;
  Rational mean;
  Rational variance;
  double std = 0.0;
};

// sigma^2 = (n + 4) / (10 n). Constant time.
inline Rational b_variance(std::int64_t n) {
  require_positive_n(n);
  return Rational(n + 4, 10 * n);
}

inline double b_std(std::int64_t n) { return std::sqrt(to_double(b_variance(n))); }

inline BStats b_stats(std::int64_t n) {
  return BStats{n, Rational(0), b_variance(n), b_std(n)};
}

// Limit of b_std(n) as n grows.
inline double b_std_limit() { return 1.0 / std::sqrt(10.0); }

// Standard deviation of the symmetric triangular distribution on [-1, 1].
inline double triangular_reference_std() { return 1.0 / std::sqrt(6.0); }

struct NonTriangularWitness {
  std::int64_t n = 0;
  Rational variance;  // exact variance of B
  double actual_std = 0.0;
  double triangular_std = 0.0;

  double gap() const noexcept { return std::abs(actual_std - triangular_std); }

  // Exact: compares the variance with the triangular variance 1/6. The two
  // coincide at n = 6, where (n + 4) / (10 n) = 1/6.
  bool distinct() const { return variance != Rational(1, 6); }
};

// If B were triangular on [-1, 1] its standard deviation would be 1/sqrt(6)
// at every n. The actual value decreases toward 1/sqrt(10), so the two agree
// for at most one n.
inline NonTriangularWitness non_triangular_witness(std::int64_t n) {
  return NonTriangularWitness{n, b_variance(n), b_std(n), triangular_reference_std()};
}

}  // namespace ofi::combinatorics
