#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "capgeo/errors.hpp"

namespace capgeo {

// Exact rational number with a reduced, positive denominator. Keypoint
// values are kept as rationals so equality never depends on float rounding.
class Rational {
public:
  Rational() = default;

  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw Error("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  static Rational from_int(std::int64_t v) { return Rational(v, 1); }

  // Accepts an integer, a fraction "a/b", or a terminating decimal.
  // Anything else (symbolic values, exponents, overlong digit runs)
  // returns nullopt and should be kept as expression text.
  static std::optional<Rational> parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  // Canonical text: "n" when integral, "n/d" otherwise.
  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace capgeo
