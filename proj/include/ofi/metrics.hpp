#pragma once

#include <optional>
#include <ostream>
#include <string_view>

#include "ofi/confusion.hpp"
#include "ofi/errors.hpp"
#include "ofi/rational.hpp"

// Group-level benefit metrics, the objective fairness index (OFI) and
// disparate impact (DI). The positive prediction is taken to be the
// beneficial one; flip the data first when it is not.
namespace ofi {

// b = (TP + FP) / n, the positive-prediction rate.
inline Rational benefit(const BinaryConfusion& cm) {
  require_nonempty(cm);
  return Rational(cm.predicted_positives(), cm.n());
}

// E[b] = (TP + FN) / n, the positive-label rate.
inline Rational expected_benefit(const BinaryConfusion& cm) {
  require_nonempty(cm);
  return Rational(cm.positives(), cm.n());
}

// B = b - E[b] = (FP - FN) / n. Negative means the group received less benefit
// than its labels warrant.
inline Rational marginal_benefit(const BinaryConfusion& cm) {
  require_nonempty(cm);
  return Rational(cm.fp - cm.fn, cm.n());
}

// OFI = B_i - B_j, in [-2, 2]. Zero means the decision procedure treats both
// groups objectively.
inline Rational ofi(const BinaryConfusion& first, const BinaryConfusion& second) {
  require_nonempty(first, "first group");
  require_nonempty(second, "second group");
  return marginal_benefit(first) - marginal_benefit(second);
}

// Disparate impact with its two undefined cases kept distinct.
class DiScore {
 public:
  enum class Kind {
    Finite,
    // Comparison group has no positive predictions but the first group does.
    UndefinedZeroDenominator,
    // Neither group has positive predictions. Read as DI = 1 (equal rates).
    UndefinedContextualOne,
  };

  static DiScore finite(Rational value) { return DiScore(Kind::Finite, value); }
  static DiScore undefined_zero_denominator() {
    return DiScore(Kind::UndefinedZeroDenominator, Rational(0));
  }
  static DiScore undefined_contextual_one() {
    return DiScore(Kind::UndefinedContextualOne, Rational(1));
  }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }

  // The finite value, or the contextual 1. Empty for a zero denominator.
  std::optional<Rational> value() const {
    if (kind_ == Kind::UndefinedZeroDenominator) return std::nullopt;
    return value_;
  }

  friend bool operator==(const DiScore&, const DiScore&) = default;

 private:
  DiScore(Kind kind, Rational value) : kind_(kind), value_(value) {}

  Kind kind_;
  Rational value_;
};

inline std::string_view to_string(DiScore::Kind kind) {
  switch (kind) {
    case DiScore::Kind::Finite: return "finite";
    case DiScore::Kind::UndefinedZeroDenominator: return "undefined_zero_denominator";
    case DiScore::Kind::UndefinedContextualOne: return "undefined_contextual_one";
  }
  return "?";
}

inline std::ostream& operator<<(std::ostream& os, const DiScore& di) {
  if (di.is_finite()) return os << to_fraction_string(*di.value());
  return os << to_string(di.kind());
}

// DI = (P-hat_i / n_i) / (P-hat_j / n_j).
inline DiScore disparate_impact(const BinaryConfusion& first, const BinaryConfusion& second) {
  require_nonempty(first, "first group");
  require_nonempty(second, "second group");
  const Rational rate_first(first.predicted_positives(), first.n());
  const Rational rate_second(second.predicted_positives(), second.n());
  if (rate_second == 0) {
    return rate_first == 0 ? DiScore::undefined_contextual_one()
                           : DiScore::undefined_zero_denominator();
  }
  return DiScore::finite(rate_first / rate_second);
}

enum class BiasVerdict { BiasTowardFirst, BiasTowardSecond, NoBiasIndicated, Undefined };

inline std::string_view to_string(BiasVerdict v) {
  switch (v) {
    case BiasVerdict::BiasTowardFirst: return "bias_toward_first";
    case BiasVerdict::BiasTowardSecond: return "bias_toward_second";
    case BiasVerdict::NoBiasIndicated: return "no_bias_indicated";
    case BiasVerdict::Undefined: return "undefined";
  }
  return "?";
}

inline std::ostream& operator<<(std::ostream& os, BiasVerdict v) { return os << to_string(v); }

inline bool indicates_bias(BiasVerdict v) noexcept {
  return v == BiasVerdict::BiasTowardFirst || v == BiasVerdict::BiasTowardSecond;
}

// Closed acceptance band for DI. The legal default is [4/5, 5/4].
struct DiBand {
  Rational low{4, 5};
  Rational high{5, 4};

  void validate() const {
    if (low <= 0 || high <= 0) throw ConfigError("DI band limits must be positive");
    if (low > high) throw ConfigError("DI band low limit exceeds high limit");
  }

  friend bool operator==(const DiBand&, const DiBand&) = default;
};

inline const Rational kDefaultOfiThreshold{3, 10};

inline BiasVerdict four_fifths_verdict(const DiScore& di, const DiBand& band = {}) {
  band.validate();
  switch (di.kind()) {
    case DiScore::Kind::UndefinedZeroDenominator: return BiasVerdict::Undefined;
    case DiScore::Kind::UndefinedContextualOne: return BiasVerdict::NoBiasIndicated;
    case DiScore::Kind::Finite: break;
  }
  const Rational v = *di.value();
  if (v > band.high) return BiasVerdict::BiasTowardFirst;
  if (v < band.low) return BiasVerdict::BiasTowardSecond;
  return BiasVerdict::NoBiasIndicated;
}

// |value| == threshold is inside the no-bias band.
inline BiasVerdict ofi_verdict(const Rational& value,
                               const Rational& threshold = kDefaultOfiThreshold) {
  if (threshold <= 0) throw ConfigError("OFI threshold must be positive");
  if (value > threshold) return BiasVerdict::BiasTowardFirst;
  if (value < -threshold) return BiasVerdict::BiasTowardSecond;
  return BiasVerdict::NoBiasIndicated;
}

}  // namespace ofi
