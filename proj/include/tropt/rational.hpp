#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational scalar used for all tropical arithmetic.
 *
 * Values are kept as reduced fractions with a positive denominator. The
 * common case lives in a pair of int64 fields; results that do not fit are
 * promoted to arbitrary-precision integers, so no operation ever overflows
 * or rounds.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <string_view>

#include "tropt/errors.hpp"

namespace tropt {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline u128 abs128(i128 v) {
  return v < 0 ? u128(0) - static_cast<u128>(v) : static_cast<u128>(v);
}

inline u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline BigInt big_from_i128(i128 v) {
  const u128 mag = abs128(v);
  BigInt r = static_cast<std::uint64_t>(mag >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(mag & ~std::uint64_t(0));
  return v < 0 ? BigInt(-r) : r;
}

inline bool fits_i64(i128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace detail

class Rat {
 public:
  Rat() = default;
  Rat(std::int64_t n) : num_(n) {}  // NOLINT: implicit from integers
  Rat(int n) : num_(n) {}  // NOLINT

  Rat(std::int64_t n, std::int64_t d) {
    if (d == 0) throw Error(ErrorCode::ZeroDenominator, "rational with denominator 0");
    *this = make128(n, d);
  }

  static Rat from_big(BigInt n, BigInt d) {
    if (d == 0) throw Error(ErrorCode::ZeroDenominator, "rational with denominator 0");
    return make_big(std::move(n), std::move(d));
  }

  /// Exact value of an IEEE double (every finite double is a rational).
  static Rat from_double(double v) {
    if (!std::isfinite(v)) throw Error(ErrorCode::ParseError, "non-finite number");
    if (v == 0.0) return Rat();
    int exp = 0;
    const double m = std::frexp(v, &exp);
    const auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    const int shift = exp - 53;
    if (shift >= 0) return make_big(BigInt(mant) << shift, BigInt(1));
    return make_big(BigInt(mant), BigInt(1) << -shift);
  }

  /// Accepts "3", "-7", "3/2", "1.5", "-0.25".
  static Rat parse(std::string_view text);

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_integer() const { return big_ ? big_->den == 1 : den_ == 1; }
  int sign() const {
    if (big_) return big_->num < 0 ? -1 : (big_->num > 0 ? 1 : 0);
    return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0);
  }

  BigInt num() const { return big_ ? big_->num : BigInt(num_); }
  BigInt den() const { return big_ ? big_->den : BigInt(den_); }

  /// Largest integer not above the value.
  BigInt floor() const {
    BigInt n = num(), d = den();
    BigInt q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
  }

  Rat operator-() const {
    if (!big_) {
      Rat r;
      r.num_ = -num_;
      r.den_ = den_;
      return r;
    }
    return make_big(-big_->num, big_->den);
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) {
        std::int64_t s = 0;
        if (!__builtin_add_overflow(a.num_, b.num_, &s)) {
          Rat r;
          r.num_ = s;
          return r;
        }
      }
      const detail::i128 n = detail::i128(a.num_) * b.den_ + detail::i128(b.num_) * a.den_;
      const detail::i128 d = detail::i128(a.den_) * b.den_;
      return make128(n, d);
    }
    return make_big(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
  }

  friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }

  friend Rat operator*(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_) {
      return make128(detail::i128(a.num_) * b.num_, detail::i128(a.den_) * b.den_);
    }
    return make_big(a.num() * b.num(), a.den() * b.den());
  }

  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero rational");
    if (!a.big_ && !b.big_) {
      return make128(detail::i128(a.num_) * b.den_, detail::i128(a.den_) * b.num_);
    }
    return make_big(a.num() * b.den(), a.den() * b.num());
  }

  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    return a.num() == b.num() && a.den() == b.den();
  }

  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == b.den_) return a.num_ <=> b.num_;
      const detail::i128 lhs = detail::i128(a.num_) * b.den_;
      const detail::i128 rhs = detail::i128(b.num_) * a.den_;
      return lhs < rhs ? std::strong_ordering::less
                       : (lhs > rhs ? std::strong_ordering::greater
                                    : std::strong_ordering::equal);
    }
    const BigInt lhs = a.num() * b.den();
    const BigInt rhs = b.num() * a.den();
    return lhs < rhs ? std::strong_ordering::less
                     : (lhs > rhs ? std::strong_ordering::greater
                                  : std::strong_ordering::equal);
  }

  /// "p" for integers, "p/q" otherwise.
  std::string str() const {
    if (is_integer()) return num().str();
    return num().str() + "/" + den().str();
  }

  /// Decimal rendering, exact when terminating, otherwise rounded to
  /// `significant` digits. Used for CSV export.
  std::string decimal(int significant = 15) const;

 private:
  struct Big {
    BigInt num;
    BigInt den;  // > 0
  };

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;                // > 0, coprime with num_ when big_ empty
  std::shared_ptr<const Big> big_;      // non-null iff value exceeds int64 range

  static Rat make128(detail::i128 n, detail::i128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) return Rat();
    const detail::u128 g = detail::gcd128(detail::abs128(n), static_cast<detail::u128>(d));
    n /= static_cast<detail::i128>(g);
    d /= static_cast<detail::i128>(g);
    if (detail::fits_i64(n) && detail::fits_i64(d)) {
      Rat r;
      r.num_ = static_cast<std::int64_t>(n);
      r.den_ = static_cast<std::int64_t>(d);
      return r;
    }
    return make_big(detail::big_from_i128(n), detail::big_from_i128(d));
  }

  static Rat make_big(BigInt n, BigInt d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) return Rat();
    BigInt g = boost::multiprecision::gcd(n < 0 ? BigInt(-n) : n, d);
    if (g != 1) {
      n /= g;
      d /= g;
    }
    static const BigInt kMin = BigInt(std::numeric_limits<std::int64_t>::min());
    static const BigInt kMax = BigInt(std::numeric_limits<std::int64_t>::max());
    if (n >= kMin && n <= kMax && d <= kMax) {
      Rat r;
      r.num_ = n.convert_to<std::int64_t>();
      r.den_ = d.convert_to<std::int64_t>();
      return r;
    }
    Rat r;
    r.big_ = std::make_shared<const Big>(Big{std::move(n), std::move(d)});
    return r;
  }
};

inline Rat Rat::parse(std::string_view text) {
  auto fail = [&]() -> Error {
    return Error(ErrorCode::ParseError, "bad rational literal '" + std::string(text) + "'");
  };
  size_t begin = 0, end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  std::string_view body = text.substr(begin, end - begin);
  if (body.empty()) throw fail();

  auto parse_int = [&](std::string_view s) -> BigInt {
    bool neg = false;
    size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
      neg = s[0] == '-';
      i = 1;
    }
    if (i >= s.size()) throw fail();
    BigInt v = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw fail();
      v = v * 10 + (s[i] - '0');
    }
    return neg ? BigInt(-v) : v;
  };

  const size_t slash = body.find('/');
  if (slash != std::string_view::npos) {
    if (slash == 0 || slash + 1 >= body.size()) throw fail();
    BigInt n = parse_int(body.substr(0, slash));
    BigInt d = parse_int(body.substr(slash + 1));
    if (d == 0) throw Error(ErrorCode::ZeroDenominator, "zero denominator in '" + std::string(text) + "'");
    return make_big(std::move(n), std::move(d));
  }

  const size_t dot = body.find('.');
  if (dot == std::string_view::npos) return make_big(parse_int(body), 1);

  std::string_view head = body.substr(0, dot);
  std::string_view tail = body.substr(dot + 1);
  if (tail.empty()) throw fail();
  bool neg = false;
  if (!head.empty() && (head[0] == '+' || head[0] == '-')) {
    neg = head[0] == '-';
    head = head.substr(1);
  }
  if (head.empty() && tail.empty()) throw fail();
  BigInt n = 0;
  for (char c : head) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw fail();
    n = n * 10 + (c - '0');
  }
  BigInt d = 1;
  for (char c : tail) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw fail();
    n = n * 10 + (c - '0');
    d *= 10;
  }
  if (neg) n = -n;
  return make_big(std::move(n), std::move(d));
}

inline std::string Rat::decimal(int significant) const {
  if (is_zero()) return "0";
  BigInt n = num(), d = den();
  const bool neg = n < 0;
  if (neg) n = -n;

  BigInt q = n / d;
  BigInt r = n % d;
  std::string int_part = q.str();
  int sig = q == 0 ? 0 : static_cast<int>(int_part.size());

  std::string frac;
  bool rounded_up = false;
  while (r != 0) {
    if (sig >= significant) {
      // peek one more digit to decide rounding
      r *= 10;
      rounded_up = (r / d) >= 5;
      break;
    }
    r *= 10;
    const BigInt digit = r / d;
    r %= d;
    frac.push_back(static_cast<char>('0' + digit.convert_to<int>()));
    if (digit != 0 || sig > 0) ++sig;
  }

  if (rounded_up) {
    int i = static_cast<int>(frac.size()) - 1;
    for (; i >= 0; --i) {
      if (frac[i] != '9') {
        ++frac[i];
        break;
      }
      frac[i] = '0';
    }
    if (i < 0) int_part = BigInt(q + 1).str();
  }
  while (!frac.empty() && frac.back() == '0') frac.pop_back();

  std::string out = neg ? "-" : "";
  out += int_part;
  if (!frac.empty()) {
    out += '.';
    out += frac;
  }
  return out;
}

}  // namespace tropt
