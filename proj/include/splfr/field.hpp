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

#include <array>
#include <charconv>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace splfr {

/// Raw field symbol. Only meaningful together with the field_context that
/// produced it; the value is always in [0, q).
using symbol = std::uint32_t;
using symbol_vector = std::vector<symbol>;

class field_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

constexpr bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Carry-less product of two polynomials over GF(2), reduced modulo `poly`
/// of degree `m`. Slow path, only used while building tables.
constexpr std::uint32_t poly_mulmod(std::uint32_t a, std::uint32_t b,
                                    std::uint32_t poly, unsigned m) {
  std::uint32_t r = 0;
  while (b != 0) {
    if (b & 1u) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & (1u << m)) a ^= poly;
  }
  return r;
}

constexpr unsigned poly_degree(std::uint32_t p) {
  unsigned d = 0;
  while (p >>= 1) ++d;
  return d;
}

constexpr std::uint32_t poly_mod(std::uint32_t a, std::uint32_t b) {
  const unsigned db = poly_degree(b);
  while (a != 0 && poly_degree(a) >= db) a ^= b << (poly_degree(a) - db);
  return a;
}

/// Irreducible iff no polynomial of degree 1..m/2 divides it.
constexpr bool is_irreducible(std::uint32_t poly, unsigned m) {
  if (poly_degree(poly) != m || m == 0) return false;
  for (std::uint32_t d = 2; d < (1u << (m / 2 + 1)); ++d)
    if (poly_mod(poly, d) == 0) return false;
  return true;
}

// x+1, x^2+x+1, x^3+x+1, x^4+x+1, x^5+x^2+1, x^6+x+1, x^7+x^3+1,
// x^8+x^4+x^3+x^2+1. All primitive.
inline constexpr std::array<std::uint32_t, 9> kDefaultPoly = {
    0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11D};

struct field_tables {
  std::uint32_t order = 0;
  bool binary = false;
  unsigned degree = 1;
  std::uint32_t poly = 0;
  // Binary extension only: exp has 2(q-1) entries so log sums need no mod.
  std::vector<std::uint16_t> log;
  std::vector<std::uint16_t> exp;
};

}  // namespace detail

/// Descriptor of GF(q): either a prime field or GF(2^m) with a fixed
/// irreducible polynomial. Immutable and cheap to copy; copies share tables.
class field_context {
 public:
  static constexpr std::uint32_t kMaxPrime = 1u << 16;

  static field_context prime(std::uint32_t p) {
    if (p > kMaxPrime || !detail::is_prime(p))
      throw field_error("field order must be a prime <= 65536, got " +
                        std::to_string(p));
    auto t = std::make_shared<detail::field_tables>();
    t->order = p;
    t->degree = 1;
    return field_context(std::move(t));
  }

  /// GF(2^m), 1 <= m <= 8. `poly` is the modulus bitmask including the x^m
  /// term; it must be irreducible of degree m.
  static field_context binary(unsigned m,
                              std::optional<std::uint32_t> poly = {}) {
    if (m < 1 || m > 8)
      throw field_error("binary extension degree must be in [1, 8]");
    const std::uint32_t p = poly.value_or(detail::kDefaultPoly[m]);
    if (!detail::is_irreducible(p, m))
      throw field_error("polynomial is not irreducible of degree " +
                        std::to_string(m));
    auto t = std::make_shared<detail::field_tables>();
    t->order = 1u << m;
    t->binary = true;
    t->degree = m;
    t->poly = p;
    build_log_tables(*t);
    return field_context(std::move(t));
  }

  /// Parses `p:<prime>` or `b:<m>[:poly=<hex>]`.
  static field_context parse(std::string_view spec) {
    auto to_u32 = [&](std::string_view s, int base) {
      std::uint32_t v = 0;
      if (s.starts_with("0x") || s.starts_with("0X")) s.remove_prefix(2);
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
      if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw field_error("malformed field spec '" + std::string(spec) + "'");
      return v;
    };
    if (spec.starts_with("p:")) return prime(to_u32(spec.substr(2), 10));
    if (spec.starts_with("b:")) {
      std::string_view rest = spec.substr(2);
      const auto colon = rest.find(':');
      if (colon == std::string_view::npos)
        return binary(to_u32(rest, 10));
      std::string_view opt = rest.substr(colon + 1);
      if (!opt.starts_with("poly="))
        throw field_error("malformed field spec '" + std::string(spec) + "'");
      return binary(to_u32(rest.substr(0, colon), 10),
                    to_u32(opt.substr(5), 16));
    }
    throw field_error("malformed field spec '" + std::string(spec) + "'");
  }

  std::uint32_t order() const { return t_->order; }
  bool is_binary() const { return t_->binary; }
  unsigned degree() const { return t_->degree; }
  std::uint32_t polynomial() const { return t_->poly; }

  /// Canonical spec string, parseable by parse().
  std::string spec() const {
    if (!t_->binary) return "p:" + std::to_string(t_->order);
    char buf[16];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, t_->poly, 16);
    return "b:" + std::to_string(t_->degree) + ":poly=" + std::string(buf, end);
  }

  bool contains(symbol a) const { return a < t_->order; }

  symbol add(symbol a, symbol b) const {
    if (t_->binary) return a ^ b;
    const std::uint32_t s = a + b;
    return s >= t_->order ? s - t_->order : s;
  }
  symbol neg(symbol a) const {
    if (t_->binary || a == 0) return a;
    return t_->order - a;
  }
  symbol sub(symbol a, symbol b) const { return add(a, neg(b)); }
  symbol mul(symbol a, symbol b) const {
    if (a == 0 || b == 0) return 0;
    if (t_->binary) return t_->exp[t_->log[a] + t_->log[b]];
    return static_cast<symbol>(static_cast<std::uint64_t>(a) * b % t_->order);
  }
  symbol inv(symbol a) const {
    if (a == 0) throw field_error("inverse of zero");
    if (t_->binary) return t_->exp[(t_->order - 1 - t_->log[a]) % (t_->order - 1)];
    // Fermat: a^(p-2).
    std::uint64_t base = a, acc = 1;
    for (std::uint32_t e = t_->order - 2; e != 0; e >>= 1) {
      if (e & 1u) acc = acc * base % t_->order;
      base = base * base % t_->order;
    }
    return static_cast<symbol>(acc);
  }

  /// Σ u_i · w_i.
  symbol dot(std::span<const symbol> u, std::span<const symbol> w) const {
    if (u.size() != w.size()) throw field_error("dot: length mismatch");
    symbol acc = 0;
    for (std::size_t i = 0; i < u.size(); ++i) acc = add(acc, mul(u[i], w[i]));
    return acc;
  }

  /// y += a · x, element-wise.
  void axpy(std::span<symbol> y, symbol a, std::span<const symbol> x) const {
    if (y.size() != x.size()) throw field_error("axpy: length mismatch");
    if (a == 0) return;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = add(y[i], mul(a, x[i]));
  }

  /// y += x, element-wise.
  void add_into(std::span<symbol> y, std::span<const symbol> x) const {
    if (y.size() != x.size()) throw field_error("add_into: length mismatch");
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = add(y[i], x[i]);
  }

  /// y -= x, element-wise.
  void sub_into(std::span<symbol> y, std::span<const symbol> x) const {
    if (y.size() != x.size()) throw field_error("sub_into: length mismatch");
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = sub(y[i], x[i]);
  }

  friend bool operator==(const field_context& a, const field_context& b) {
    return a.t_ == b.t_ || (a.t_->order == b.t_->order &&
                            a.t_->binary == b.t_->binary &&
                            a.t_->poly == b.t_->poly);
  }

 private:
  explicit field_context(std::shared_ptr<const detail::field_tables> t)
      : t_(std::move(t)) {}

  static void build_log_tables(detail::field_tables& t) {
    const std::uint32_t q = t.order;
    t.log.assign(q, 0);
    t.exp.assign(2 * (q - 1), 0);
    if (q == 2) {
      t.exp = {1, 1};
      return;
    }
    // The default polynomials are primitive, but an override only has to be
    // irreducible, so search for a generator of the multiplicative group.
    for (std::uint32_t g = 2; g < q; ++g) {
      std::uint32_t x = 1;
      std::uint32_t period = 0;
      do {
        x = detail::poly_mulmod(x, g, t.poly, t.degree);
        ++period;
      } while (x != 1);
      if (period != q - 1) continue;
      x = 1;
      for (std::uint32_t i = 0; i < q - 1; ++i) {
        t.exp[i] = t.exp[i + q - 1] = static_cast<std::uint16_t>(x);
        t.log[x] = static_cast<std::uint16_t>(i);
        x = detail::poly_mulmod(x, g, t.poly, t.degree);
      }
      return;
    }
    throw field_error("no multiplicative generator found");
  }

  std::shared_ptr<const detail::field_tables> t_;
};

/// A symbol bound to its field. Arithmetic between elements of different
/// fields throws field_error.
class field_element {
 public:
  field_element(field_context ctx, symbol value)
      : ctx_(std::move(ctx)), value_(value) {
    if (!ctx_.contains(value_))
      throw field_error("value " + std::to_string(value) +
                        " outside GF(" + std::to_string(ctx_.order()) + ")");
  }

  symbol value() const { return value_; }
  const field_context& context() const { return ctx_; }

  field_element operator+(const field_element& o) const {
    check(o);
    return {ctx_, ctx_.add(value_, o.value_)};
  }
  field_element operator-(const field_element& o) const {
    check(o);
    return {ctx_, ctx_.sub(value_, o.value_)};
  }
  field_element operator*(const field_element& o) const {
    check(o);
    return {ctx_, ctx_.mul(value_, o.value_)};
  }
  field_element operator-() const { return {ctx_, ctx_.neg(value_)}; }
  field_element inv() const { return {ctx_, ctx_.inv(value_)}; }

  friend bool operator==(const field_element& a, const field_element& b) {
    return a.ctx_ == b.ctx_ && a.value_ == b.value_;
  }

 private:
  void check(const field_element& o) const {
    if (!(ctx_ == o.ctx_)) throw field_error("field context mismatch");
  }

  field_context ctx_;
  symbol value_;
};

/// Σ u_i · w_i over bound elements; all elements must share one field.
inline field_element dot(std::span<const field_element> u,
                         std::span<const field_element> w) {
  if (u.size() != w.size()) throw field_error("dot: length mismatch");
  if (u.empty()) throw field_error("dot: empty vectors carry no field");
  field_element acc(u.front().context(), 0);
  for (std::size_t i = 0; i < u.size(); ++i) acc = acc + u[i] * w[i];
  return acc;
}

}  // namespace splfr
