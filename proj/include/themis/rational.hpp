#ifndef THEMIS_RATIONAL_HPP
#define THEMIS_RATIONAL_HPP

#include <cstdint>
#include <cstdio>
#include <string>

#include "themis/errors.hpp"

namespace themis {

/// Exact rational on 64-bit components. All intermediates go through
/// __int128 and results are gcd-reduced; anything that cannot be
/// renormalized into 64 bits raises OverflowError instead of drifting.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) throw ContractError("rational: zero denominator");
    normalize(numerator, denominator);
  }
  // NOLINTNEXTLINE: implicit conversion from integers is intended
  Rational(std::int64_t value) : num_(value), den_(1) {}
  Rational(std::uint64_t value) {
    if (value > static_cast<std::uint64_t>(INT64_MAX))
      throw OverflowError("rational: value exceeds 64-bit signed range");
    num_ = static_cast<std::int64_t>(value);
    den_ = 1;
  }
  Rational(int value) : num_(value), den_(1) {}

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator+(const Rational& o) const {
    __int128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
    __int128 d = i128(den_) * o.den_;
    return from128(n, d);
  }
  Rational operator-(const Rational& o) const {
    __int128 n = i128(num_) * o.den_ - i128(o.num_) * den_;
    __int128 d = i128(den_) * o.den_;
    return from128(n, d);
  }
  Rational operator*(const Rational& o) const {
    return from128(i128(num_) * o.num_, i128(den_) * o.den_);
  }
  Rational operator/(const Rational& o) const {
    if (o.num_ == 0) throw ContractError("rational: division by zero");
    return from128(i128(num_) * o.den_, i128(den_) * o.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  bool operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const {
    return i128(num_) * o.den_ < i128(o.num_) * den_;
  }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// Fixed 4-decimal rendering, ties rounded half-to-even. Used for all
  /// report and CSV output so exports stay bit-stable across platforms.
  std::string dec4() const {
    bool neg = num_ < 0;
    unsigned __int128 n = neg ? -(__int128)num_ : (__int128)num_;
    unsigned __int128 d = (unsigned __int128)den_;
    unsigned __int128 scaled = n * 10000u;
    unsigned __int128 q = scaled / d;
    unsigned __int128 r = scaled % d;
    if (2 * r > d || (2 * r == d && (q & 1u))) ++q;
    unsigned long long whole = (unsigned long long)(q / 10000u);
    unsigned long long frac = (unsigned long long)(q % 10000u);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%s%llu.%04llu", neg && q != 0 ? "-" : "",
                  whole, frac);
    return buf;
  }

 private:
  static __int128 i128(std::int64_t v) { return static_cast<__int128>(v); }

  static Rational from128(__int128 n, __int128 d) {
    Rational r;
    r.normalize128(n, d);
    return r;
  }

  void normalize(std::int64_t n, std::int64_t d) {
    normalize128(static_cast<__int128>(n), static_cast<__int128>(d));
  }

  void normalize128(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw OverflowError("rational: value exceeds 64-bit range");
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  std::int64_t num_;
  std::int64_t den_;  // > 0, gcd(num_, den_) == 1
};

}  // namespace themis

#endif
