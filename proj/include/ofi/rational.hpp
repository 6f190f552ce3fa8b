#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ofi/errors.hpp"

namespace ofi {

// Exact fraction of 64-bit integers, always in lowest terms with a positive
// denominator. Arithmetic runs in 128 bits and throws DomainError if the
// reduced result no longer fits.
class Rational {
 public:
  constexpr Rational() noexcept = default;
  constexpr Rational(std::int64_t value) noexcept : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

  constexpr std::int64_t numerator() const noexcept { return num_; }
  constexpr std::int64_t denominator() const noexcept { return den_; }

  Rational operator-() const { return from_wide(-static_cast<Wide>(num_), den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_,
                     static_cast<Wide>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(static_cast<Wide>(a.num_) * b.num_, static_cast<Wide>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw DomainError("rational division by zero");
    return from_wide(static_cast<Wide>(a.num_) * b.den_, static_cast<Wide>(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend constexpr bool operator==(const Rational&, const Rational&) = default;
  friend constexpr std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    const Wide lhs = static_cast<Wide>(a.num_) * b.den_;
    const Wide rhs = static_cast<Wide>(b.num_) * a.den_;
    return lhs < rhs ? std::strong_ordering::less
                     : (lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  using Wide = __int128;

  static Wide gcd(Wide a, Wide b) noexcept {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const Wide t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational from_wide(Wide num, Wide den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const Wide g = gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr Wide lo = std::numeric_limits<std::int64_t>::min();
    constexpr Wide hi = std::numeric_limits<std::int64_t>::max();
    if (num < lo || num > hi || den > hi) throw DomainError("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  void assign(std::int64_t num, std::int64_t den) { *this = from_wide(num, den); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline Rational abs(const Rational& r) { return r < 0 ? -r : r; }

// "num/den", or just "num" for integers.
inline std::string to_fraction_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Exact decimal rendering, rounding half away from zero. Never goes through a
// double, so 3/8 renders as 0.38 and -1/18 as -0.06 on every platform.
inline std::string to_decimal_string(const Rational& r, int places = 2) {
  __int128 scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const __int128 num = r.numerator();
  const __int128 den = r.denominator();
  const __int128 mag = num < 0 ? -num : num;
  const __int128 scaled = (2 * mag * scale + den) / (2 * den);

  const auto whole = static_cast<std::uint64_t>(scaled / scale);
  const auto frac = static_cast<std::uint64_t>(scaled % scale);
  std::string out = (num < 0 && scaled != 0) ? "-" : "";
  out += std::to_string(whole);
  if (places > 0) {
    std::string digits = std::to_string(frac);
    out += '.';
    out += std::string(static_cast<std::size_t>(places) - digits.size(), '0');
    out += digits;
  }
  return out;
}

// Reads "a/b", an integer, or an exact decimal such as "0.3" or "-1.25".
// Throws std::invalid_argument on anything else.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  };
  auto to_int = [&](std::string_view s, std::int64_t& out) {
    if (s.starts_with('+')) s.remove_prefix(1);
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
  };

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t num = 0;
    std::int64_t den = 0;
    if (!to_int(text.substr(0, slash), num) || !to_int(text.substr(slash + 1), den) || den == 0) {
      return fail();
    }
    return Rational(num, den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 17 || frac.find_first_not_of("0123456789") != frac.npos) {
      return fail();
    }
    std::string whole(text.substr(0, dot));
    const bool negative = whole.starts_with('-');
    if (whole.empty() || whole == "-" || whole == "+") whole += '0';
    std::int64_t w = 0;
    std::int64_t f = 0;
    if (!to_int(whole, w) || !to_int(frac, f)) return fail();
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const Rational magnitude = Rational(negative ? -w : w) + Rational(f, scale);
    return negative ? -magnitude : magnitude;
  }
  std::int64_t v = 0;
  if (!to_int(text, v)) return fail();
  return Rational(v);
}

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << to_fraction_string(r);
}

}  // namespace ofi
