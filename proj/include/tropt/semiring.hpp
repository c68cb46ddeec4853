#pragma once

/**
 * @file semiring.hpp
 * @brief Idempotent-semifield scalars.
 *
 * The solver's algebra is exact max-plus: addition is maximum, multiplication
 * is arithmetic addition, the zero element is -infinity and the unit is 0.
 * A floating min-times instance is provided alongside for testing the
 * semifield laws against a second model; it takes no part in solving.
 */

#include <algorithm>
#include <cctype>
#include <cmath>
#include <compare>
#include <limits>
#include <string>
#include <string_view>

#include "tropt/errors.hpp"
#include "tropt/rational.hpp"

namespace tropt {

/// Max-plus scalar: the zero element or a finite rational.
class TropicalValue {
 public:
  TropicalValue() = default;  // the zero element
  explicit TropicalValue(Rat value) : finite_(true), value_(std::move(value)) {}

  static TropicalValue zero() { return TropicalValue(); }
  static TropicalValue one() { return TropicalValue(Rat(0)); }
  static TropicalValue finite(Rat value) { return TropicalValue(std::move(value)); }

  bool is_zero() const { return !finite_; }
  bool is_finite() const { return finite_; }

  const Rat& rat() const {
    if (!finite_) throw std::logic_error("rat() called on the tropical zero");
    return value_;
  }

  friend bool operator==(const TropicalValue& a, const TropicalValue& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }

  /// Total order: zero below every finite value, finite values by magnitude.
  friend std::strong_ordering operator<=>(const TropicalValue& a, const TropicalValue& b) {
    if (!a.finite_ && !b.finite_) return std::strong_ordering::equal;
    if (!a.finite_) return std::strong_ordering::less;
    if (!b.finite_) return std::strong_ordering::greater;
    return a.value_ <=> b.value_;
  }

  std::string str() const { return finite_ ? value_.str() : "-inf"; }

  static TropicalValue parse(std::string_view text) {
    size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    if (text.substr(b, e - b) == "-inf") return zero();
    return TropicalValue(Rat::parse(text));
  }

 private:
  bool finite_ = false;
  Rat value_;
};

inline TropicalValue oplus(const TropicalValue& a, const TropicalValue& b) {
  return a < b ? b : a;
}

inline TropicalValue otimes(const TropicalValue& a, const TropicalValue& b) {
  if (a.is_zero() || b.is_zero()) return TropicalValue::zero();
  return TropicalValue(a.rat() + b.rat());
}

inline TropicalValue inverse(const TropicalValue& a) {
  if (a.is_zero()) throw Error(ErrorCode::InverseOfZero, "the tropical zero has no inverse");
  return TropicalValue(-a.rat());
}

/// Rational power: the product of exponent and value in ordinary arithmetic.
/// Powers of the zero element are defined for positive exponents only.
inline TropicalValue rpow(const TropicalValue& a, const Rat& r) {
  if (a.is_zero()) {
    if (r.sign() <= 0) {
      throw Error(ErrorCode::ZeroToNonpositivePower,
                  "zero element raised to exponent " + r.str());
    }
    return TropicalValue::zero();
  }
  return TropicalValue(r * a.rat());
}

inline TropicalValue operator+(const TropicalValue& a, const TropicalValue& b) {
  return oplus(a, b);
}

inline TropicalValue operator*(const TropicalValue& a, const TropicalValue& b) {
  return otimes(a, b);
}

/// a <= b in the order induced by idempotent addition (a + b == b).
inline bool induced_leq(const TropicalValue& a, const TropicalValue& b) {
  return oplus(a, b) == b;
}

// ---------------------------------------------------------------------------
// Semifield instances for the algebraic-law tests.
// ---------------------------------------------------------------------------

/// Exact max-plus instance.
struct MaxPlus {
  static constexpr const char* name = "max-plus";
  using Value = TropicalValue;

  static Value zero() { return TropicalValue::zero(); }
  static Value one() { return TropicalValue::one(); }
  static Value add(const Value& a, const Value& b) { return oplus(a, b); }
  static Value mul(const Value& a, const Value& b) { return otimes(a, b); }
  static Value inv(const Value& a) { return inverse(a); }
  static bool close(const Value& a, const Value& b) { return a == b; }
};

/// Floating min-times instance over the positive reals; the zero element is
/// +infinity and the unit is 1. Law tests compare with tolerance 1e-12.
struct MinTimes {
  static constexpr const char* name = "min-times";
  using Value = double;
  static constexpr double tolerance = 1e-12;

  static Value zero() { return std::numeric_limits<double>::infinity(); }
  static Value one() { return 1.0; }
  static Value add(Value a, Value b) { return a < b ? a : b; }
  static Value mul(Value a, Value b) { return a * b; }
  static Value inv(Value a) { return 1.0 / a; }
  static bool close(Value a, Value b) {
    if (a == b) return true;  // covers both infinite
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= tolerance * std::max(1.0, scale);
  }
};

}  // namespace tropt
