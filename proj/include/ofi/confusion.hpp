#pragma once

#include <cstdint>
#include <ostream>

#include "ofi/errors.hpp"

namespace ofi {

// Binary confusion matrix for one group. Cell order everywhere in this
// library is (TP, FN, FP, TN).
struct BinaryConfusion {
  std::int64_t tp = 0;
  std::int64_t fn = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;

  constexpr std::int64_t n() const noexcept { return tp + fn + fp + tn; }

  // P, N, P-hat, N-hat.
  constexpr std::int64_t positives() const noexcept { return tp + fn; }
  constexpr std::int64_t negatives() const noexcept { return fp + tn; }
  constexpr std::int64_t predicted_positives() const noexcept { return tp + fp; }
  constexpr std::int64_t predicted_negatives() const noexcept { return fn + tn; }

  constexpr bool valid() const noexcept { return tp >= 0 && fn >= 0 && fp >= 0 && tn >= 0; }

  BinaryConfusion& operator+=(const BinaryConfusion& o) noexcept {
    tp += o.tp;
    fn += o.fn;
    fp += o.fp;
    tn += o.tn;
    return *this;
  }

  friend BinaryConfusion operator+(BinaryConfusion a, const BinaryConfusion& b) noexcept {
    a += b;
    return a;
  }

  friend bool operator==(const BinaryConfusion&, const BinaryConfusion&) = default;

  friend std::ostream& operator<<(std::ostream& os, const BinaryConfusion& cm) {
    return os << "(tp=" << cm.tp << ", fn=" << cm.fn << ", fp=" << cm.fp << ", tn=" << cm.tn
              << ")";
  }
};

// Throws DomainError on a negative cell and EmptyGroupError when n == 0.
// `which` names the group in the error message.
inline void require_nonempty(const BinaryConfusion& cm, const char* which = "") {
  if (!cm.valid()) throw DomainError("confusion matrix cells must be non-negative");
  if (cm.n() < 1) throw EmptyGroupError(which);
}

}  // namespace ofi
