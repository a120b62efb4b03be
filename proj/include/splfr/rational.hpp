// Copyright 2026 The splfr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace splfr {

/// Arbitrary-precision rational, used where binomials of a few hundred
/// elements show up (virtual-user curves, subpacketization bounds).
using big_int = boost::multiprecision::cpp_int;
using big_rational = boost::multiprecision::cpp_rational;

class rational_overflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Exact rational over 64-bit integers. Always kept in lowest terms with a
/// positive denominator. Every operation checks for overflow and throws
/// rational_overflow instead of wrapping.
class rational {
 public:
  constexpr rational() = default;
  constexpr rational(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
  rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
    if (d == 0) throw std::domain_error("rational: zero denominator");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// "p/q", or "p" when the value is an integer.
  std::string str() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend rational operator+(const rational& a, const rational& b) {
    const std::int64_t g = std::gcd(a.den_, b.den_);
    const std::int64_t bd = b.den_ / g;
    return from_wide(wide(a.num_) * bd + wide(b.num_) * (a.den_ / g),
                     wide(a.den_) * bd);
  }
  friend rational operator-(const rational& a, const rational& b) {
    return a + (-b);
  }
  friend rational operator*(const rational& a, const rational& b) {
    const std::int64_t g1 = std::gcd(a.num_, b.den_);
    const std::int64_t g2 = std::gcd(b.num_, a.den_);
    const std::int64_t s1 = g1 == 0 ? 1 : g1;
    const std::int64_t s2 = g2 == 0 ? 1 : g2;
    return from_wide(wide(a.num_ / s1) * (b.num_ / s2),
                     wide(a.den_ / s2) * (b.den_ / s1));
  }
  friend rational operator/(const rational& a, const rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational: division by zero");
    rational inv;
    inv.num_ = b.num_ < 0 ? -b.den_ : b.den_;
    inv.den_ = b.num_ < 0 ? -b.num_ : b.num_;
    return a * inv;
  }
  rational operator-() const {
    if (num_ == INT64_MIN) throw rational_overflow("rational: negation");
    rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  rational& operator+=(const rational& o) { return *this = *this + o; }
  rational& operator-=(const rational& o) { return *this = *this - o; }
  rational& operator*=(const rational& o) { return *this = *this * o; }
  rational& operator/=(const rational& o) { return *this = *this / o; }

  friend bool operator==(const rational& a, const rational& b) = default;
  friend std::strong_ordering operator<=>(const rational& a,
                                          const rational& b) {
    return wide(a.num_) * b.den_ <=> wide(b.num_) * a.den_;
  }

  friend std::ostream& operator<<(std::ostream& os, const rational& r) {
    return os << r.str();
  }

 private:
  using wide = __int128;

  static rational from_wide(wide n, wide d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    wide a = n < 0 ? -n : n;
    wide b = d;
    while (b != 0) {
      wide t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    if (n > INT64_MAX || n < -INT64_MAX || d > INT64_MAX)
      throw rational_overflow("rational: 64-bit overflow");
    rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  void normalize() {
    if (den_ < 0) {
      if (num_ == INT64_MIN || den_ == INT64_MIN)
        throw rational_overflow("rational: normalize");
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline rational abs(const rational& r) { return r < 0 ? -r : r; }

inline big_rational to_big(const rational& r) {
  return big_rational(big_int(r.num()), big_int(r.den()));
}

inline std::string exact_string(const rational& r) { return r.str(); }

inline std::string exact_string(const big_rational& r) {
  const big_int n = boost::multiprecision::numerator(r);
  const big_int d = boost::multiprecision::denominator(r);
  return d == 1 ? n.str() : n.str() + "/" + d.str();
}

inline double to_double(const rational& r) { return r.to_double(); }
inline double to_double(const big_rational& r) {
  return r.convert_to<double>();
}

}  // namespace splfr
