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

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "splfr/engine.hpp"
#include "splfr/rational.hpp"

namespace splfr {

// Exact independence auditing. Every random quantity is enumerated, so all
// probabilities are count / total and I(A; B) = 0 is certified by the
// factorization identity count(a, b) · total = count(a) · count(b) for every
// (a, b) in supp(A) x supp(B). No logarithms are evaluated.

class audit_budget_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class demand_space { full, unit };

struct audit_config {
  pda array;
  unsigned n_files = 2;
  std::size_t file_length = 0;
  field_context field;
  scheme_mode mode = scheme_mode::splfr;
  demand_space demands = demand_space::full;
  std::uint64_t budget = std::uint64_t{1} << 26;
};

struct audit_report {
  std::string kind;
  bool pass = false;
  std::uint64_t atoms = 0;
  std::uint64_t checked_identities = 0;
  std::uint64_t violations = 0;
  /// Exact lower bound on the audited mutual information in bits, via
  /// Pinsker: I >= 2·TV^2 nats >= 2·TV^2 bits. Zero iff independent.
  big_rational information_lower_bound = 0;
  std::optional<std::string> counterexample;
  std::vector<unsigned> subset;  // 1-based, privacy audits only
  /// Security audits also test I(W; X) = 0 on its own, the condition that
  /// secure-only schemes meet while leaking the demands.
  bool files_only_pass = true;
  std::uint64_t files_only_violations = 0;
};

struct vector_hash {
  std::size_t operator()(const symbol_vector& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (symbol x : v) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Count table over tuple-valued outcomes; every atom has equal weight.
class exact_distribution {
 public:
  void add(const symbol_vector& outcome, std::uint64_t count = 1) {
    counts_[outcome] += count;
    total_ += count;
  }
  std::uint64_t total() const { return total_; }
  std::uint64_t count(const symbol_vector& outcome) const {
    auto it = counts_.find(outcome);
    return it == counts_.end() ? 0 : it->second;
  }
  const std::unordered_map<symbol_vector, std::uint64_t, vector_hash>& table()
      const {
    return counts_;
  }

 private:
  std::unordered_map<symbol_vector, std::uint64_t, vector_hash> counts_;
  std::uint64_t total_ = 0;
};

/// Split of outcome coordinates into the two sides of I(A; B).
struct partition {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
};

struct information_report {
  bool zero = true;
  std::uint64_t checked_identities = 0;
  std::uint64_t violated_identities = 0;
  big_rational lower_bound_bits = 0;
};

namespace detail {

inline symbol_vector project(const symbol_vector& v,
                             const std::vector<std::size_t>& coords) {
  symbol_vector out;
  out.reserve(coords.size());
  for (auto c : coords) out.push_back(v.at(c));
  return out;
}

/// Accumulates factorization identities of one conditional slice.
struct identity_tally {
  std::uint64_t checked = 0;
  std::uint64_t violated = 0;
  big_int l1 = 0;  // Σ |c(a,b)·T - c(a)·c(b)|

  void check(std::uint64_t joint, std::uint64_t total, std::uint64_t left,
             std::uint64_t right) {
    const unsigned __int128 lhs = static_cast<unsigned __int128>(joint) * total;
    const unsigned __int128 rhs = static_cast<unsigned __int128>(left) * right;
    ++checked;
    if (lhs != rhs) {
      ++violated;
      const unsigned __int128 d = lhs > rhs ? lhs - rhs : rhs - lhs;
      l1 += big_int(static_cast<std::uint64_t>(d >> 64)) << 64;
      l1 += big_int(static_cast<std::uint64_t>(d));
    }
  }

  /// 2·TV^2 with TV = l1 / (2 T^2).
  big_rational pinsker(std::uint64_t total) const {
    const big_int t2 = big_int(total) * total;
    const big_rational tv(l1, 2 * t2);
    return 2 * tv * tv;
  }
};

inline information_report independence_of(
    const std::unordered_map<symbol_vector, std::uint64_t, vector_hash>& joint,
    std::size_t split) {
  std::unordered_map<symbol_vector, std::uint64_t, vector_hash> ma, mb;
  std::uint64_t total = 0;
  for (const auto& [k, c] : joint) {
    ma[symbol_vector(k.begin(), k.begin() + split)] += c;
    mb[symbol_vector(k.begin() + split, k.end())] += c;
    total += c;
  }
  identity_tally tally;
  for (const auto& [a, ca] : ma) {
    for (const auto& [b, cb] : mb) {
      symbol_vector key = a;
      key.insert(key.end(), b.begin(), b.end());
      auto it = joint.find(key);
      tally.check(it == joint.end() ? 0 : it->second, total, ca, cb);
    }
  }
  information_report r;
  r.checked_identities = tally.checked;
  r.violated_identities = tally.violated;
  r.zero = tally.violated == 0;
  r.lower_bound_bits = tally.pinsker(total);
  return r;
}

/// Mixed-radix counter.
class odometer {
 public:
  explicit odometer(std::vector<std::uint32_t> radix)
      : radix_(std::move(radix)), digits_(radix_.size(), 0) {}
  const std::vector<std::uint32_t>& digits() const { return digits_; }
  bool next() {
    for (std::size_t i = 0; i < digits_.size(); ++i) {
      if (++digits_[i] < radix_[i]) return true;
      digits_[i] = 0;
    }
    return false;
  }

 private:
  std::vector<std::uint32_t> radix_;
  std::vector<std::uint32_t> digits_;
};

inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp,
                                 std::uint64_t budget) {
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > budget) throw audit_budget_exceeded("atom count exceeds budget");
  }
  return static_cast<std::uint64_t>(acc);
}

inline std::string join(const symbol_vector& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

/// Enumerates the secret part of an atom: (V, p, d) for a fixed library.
class secret_space {
 public:
  explicit secret_space(const audit_config& c) : c_(c) {
    const auto& a = c.array;
    len_ = c.file_length / a.f();
    const std::uint32_t q = c.field.order();
    if (uses_security_keys(c.mode))
      for (std::size_t i = 0; i < a.s() * len_; ++i) radix_.push_back(q);
    if (uses_privacy_keys(c.mode))
      for (std::size_t i = 0; i < std::size_t{a.k()} * c.n_files; ++i)
        radix_.push_back(q);
    demand_radix_start_ = radix_.size();
    if (c.demands == demand_space::full) {
      for (std::size_t i = 0; i < std::size_t{a.k()} * c.n_files; ++i)
        radix_.push_back(q);
    } else {
      for (unsigned k = 0; k < a.k(); ++k) radix_.push_back(c.n_files);
    }
  }

  const std::vector<std::uint32_t>& radix() const { return radix_; }

  std::pair<randomness, demand_set> decode(
      const std::vector<std::uint32_t>& digits) const {
    const auto& a = c_.array;
    std::size_t pos = 0;
    randomness r;
    r.security_keys.assign(a.s(), symbol_vector(len_, 0));
    r.privacy_vectors.assign(a.k(), symbol_vector(c_.n_files, 0));
    if (uses_security_keys(c_.mode))
      for (auto& v : r.security_keys)
        for (auto& x : v) x = digits[pos++];
    if (uses_privacy_keys(c_.mode))
      for (auto& v : r.privacy_vectors)
        for (auto& x : v) x = digits[pos++];
    demand_set d(a.k(), symbol_vector(c_.n_files, 0));
    if (c_.demands == demand_space::full) {
      for (auto& v : d)
        for (auto& x : v) x = digits[pos++];
    } else {
      for (auto& v : d) v[digits[pos++]] = 1;
    }
    return {std::move(r), std::move(d)};
  }

 private:
  const audit_config& c_;
  std::size_t len_ = 0;
  std::size_t demand_radix_start_ = 0;
  std::vector<std::uint32_t> radix_;
};

inline void validate_config(const audit_config& c) {
  if (c.file_length == 0 || c.file_length % c.array.f() != 0)
    throw scheme_error("file length must be a positive multiple of F");
  if (c.n_files < 1) throw scheme_error("need at least one file");
}

/// Calls fn(library) for every library realisation, W outermost.
inline void for_each_library(const audit_config& c,
                             const std::function<void(const library&)>& fn) {
  odometer od(std::vector<std::uint32_t>(c.n_files * c.file_length,
                                         c.field.order()));
  do {
    std::vector<symbol_vector> files(c.n_files);
    const auto& dg = od.digits();
    for (unsigned n = 0; n < c.n_files; ++n)
      files[n].assign(dg.begin() + n * c.file_length,
                      dg.begin() + (n + 1) * c.file_length);
    fn(library(c.field, std::move(files)));
  } while (od.next());
}

inline void for_each_secret(
    const secret_space& space,
    const std::function<void(const randomness&, const demand_set&)>& fn) {
  odometer od(space.radix());
  do {
    auto [r, d] = space.decode(od.digits());
    fn(r, d);
  } while (od.next());
}

inline symbol_vector flatten(const delivery_payload& x) {
  symbol_vector out;
  for (const auto& q : x.coeff_vectors) out.insert(out.end(), q.begin(), q.end());
  for (const auto& y : x.blocks) out.insert(out.end(), y.begin(), y.end());
  return out;
}

inline void append(symbol_vector& out, const demand_set& d) {
  for (const auto& v : d) out.insert(out.end(), v.begin(), v.end());
}

inline void append(symbol_vector& out, const user_cache& z) {
  for (const auto& row : z.rows) {
    for (const auto& p : row.packets) out.insert(out.end(), p.begin(), p.end());
    out.insert(out.end(), row.superposition_key.begin(),
               row.superposition_key.end());
  }
}

inline std::string describe_atom(const library& lib, const randomness& r,
                                 const demand_set& d) {
  std::ostringstream os;
  os << "W=[";
  for (unsigned n = 0; n < lib.n_files(); ++n) {
    symbol_vector f(lib.file(n).begin(), lib.file(n).end());
    os << (n ? ";" : "") << join(f);
  }
  os << "] V=[";
  for (std::size_t s = 0; s < r.security_keys.size(); ++s)
    os << (s ? ";" : "") << join(r.security_keys[s]);
  os << "] p=[";
  for (std::size_t k = 0; k < r.privacy_vectors.size(); ++k)
    os << (k ? ";" : "") << join(r.privacy_vectors[k]);
  os << "] d=[";
  for (std::size_t k = 0; k < d.size(); ++k) os << (k ? ";" : "") << join(d[k]);
  os << "]";
  return os.str();
}

}  // namespace detail

/// Number of equally likely atoms (W, V, p, d) of the joint model. Keys that
/// the mode removes contribute a single (zero) value. Throws
/// audit_budget_exceeded past the budget.
inline std::uint64_t atom_count(const audit_config& c) {
  detail::validate_config(c);
  const std::uint64_t q = c.field.order();
  const auto& a = c.array;
  std::uint64_t exp = std::uint64_t{c.n_files} * c.file_length;
  if (uses_security_keys(c.mode)) exp += a.s() * (c.file_length / a.f());
  if (uses_privacy_keys(c.mode)) exp += std::uint64_t{a.k()} * c.n_files;
  if (c.demands == demand_space::full) exp += std::uint64_t{a.k()} * c.n_files;
  const std::uint64_t base = detail::checked_pow(q, exp, c.budget);
  const std::uint64_t dem =
      c.demands == demand_space::unit
          ? detail::checked_pow(c.n_files, a.k(), c.budget)
          : 1;
  const unsigned __int128 total = static_cast<unsigned __int128>(base) * dem;
  if (total > c.budget) throw audit_budget_exceeded("atom count exceeds budget");
  return static_cast<std::uint64_t>(total);
}

/// Hook to corrupt the broadcast before users decode; used for mutation tests.
using payload_tamper = std::function<void(delivery_payload&)>;

/// Every user recovers Σ_n d_{k,n} W_n for every atom. The decoder only sees
/// (Z_k, d_k, X), so exact agreement certifies H(W̄_{d_k} | X, d_k, Z_k) = 0.
inline audit_report audit_correctness(const audit_config& c,
                                      const payload_tamper& tamper = {}) {
  audit_report rep;
  rep.kind = "correctness";
  rep.atoms = atom_count(c);
  const detail::secret_space space(c);
  detail::for_each_library(c, [&](const library& lib) {
    detail::for_each_secret(space, [&](const randomness& r, const demand_set& d) {
      if (rep.counterexample) return;
      const scheme_state st = place(c.array, lib, r, c.mode);
      delivery_payload x = deliver(st, d);
      if (tamper) tamper(x);
      for (unsigned k = 0; k < c.array.k(); ++k) {
        ++rep.checked_identities;
        if (decode(st, k, x, d[k]) != lib.combine(d[k])) {
          ++rep.violations;
          rep.counterexample = "user " + std::to_string(k + 1) + " at " +
                               detail::describe_atom(lib, r, d);
          return;
        }
      }
    });
  });
  rep.pass = rep.violations == 0;
  return rep;
}

/// I(W, d; X) = 0. Two passes: the X marginal first, then one slice per
/// (W, d) comparing the conditional X-table against the marginal. The
/// slices of one W are also summed to test I(W; X) = 0 alone.
inline audit_report audit_security(const audit_config& c) {
  audit_report rep;
  rep.kind = "security";
  rep.atoms = atom_count(c);
  const detail::secret_space space(c);

  // Split the secret radix into the randomness part and the demand part so
  // (W, d) can be held fixed while (V, p) vary.
  std::vector<std::uint32_t> rnd_radix, dem_radix;
  {
    const auto& r = space.radix();
    std::size_t n_dem = c.demands == demand_space::full
                            ? std::size_t{c.array.k()} * c.n_files
                            : c.array.k();
    rnd_radix.assign(r.begin(), r.end() - n_dem);
    dem_radix.assign(r.end() - n_dem, r.end());
  }
  auto secret_of = [&](const std::vector<std::uint32_t>& rd,
                       const std::vector<std::uint32_t>& dd) {
    std::vector<std::uint32_t> all = rd;
    all.insert(all.end(), dd.begin(), dd.end());
    return space.decode(all);
  };

  std::unordered_map<symbol_vector, std::uint64_t, vector_hash> marginal;
  std::uint64_t total = 0;
  detail::for_each_library(c, [&](const library& lib) {
    detail::odometer dem(dem_radix);
    do {
      detail::odometer rnd(rnd_radix);
      do {
        auto [r, d] = secret_of(rnd.digits(), dem.digits());
        ++marginal[detail::flatten(deliver(place(c.array, lib, r, c.mode), d))];
        ++total;
      } while (rnd.next());
    } while (dem.next());
  });

  detail::identity_tally tally, files_tally;
  detail::for_each_library(c, [&](const library& lib) {
    std::unordered_map<symbol_vector, std::uint64_t, vector_hash> w_slice;
    std::uint64_t w_total = 0;
    detail::odometer dem(dem_radix);
    do {
      std::unordered_map<symbol_vector, std::uint64_t, vector_hash> slice;
      std::uint64_t slice_total = 0;
      randomness last_r;
      demand_set last_d;
      detail::odometer rnd(rnd_radix);
      do {
        auto [r, d] = secret_of(rnd.digits(), dem.digits());
        ++slice[detail::flatten(deliver(place(c.array, lib, r, c.mode), d))];
        ++slice_total;
        last_r = std::move(r);
        last_d = std::move(d);
      } while (rnd.next());
      const std::uint64_t before = tally.violated;
      for (const auto& [x, cx] : marginal) {
        auto it = slice.find(x);
        tally.check(it == slice.end() ? 0 : it->second, total, slice_total, cx);
      }
      if (tally.violated != before && !rep.counterexample)
        rep.counterexample = "X depends on (W, d) at " +
                             detail::describe_atom(lib, last_r, last_d);
      for (const auto& [x, cx] : slice) w_slice[x] += cx;
      w_total += slice_total;
    } while (dem.next());
    for (const auto& [x, cx] : marginal) {
      auto it = w_slice.find(x);
      files_tally.check(it == w_slice.end() ? 0 : it->second, total, w_total, cx);
    }
  });
  rep.files_only_violations = files_tally.violated;
  rep.files_only_pass = files_tally.violated == 0;
  rep.checked_identities = tally.checked;
  rep.violations = tally.violated;
  rep.information_lower_bound = tally.pinsker(total);
  rep.pass = rep.violations == 0;
  return rep;
}

/// I(d_{[K]\S}; X, d_S, Z_S | W) = 0 for the 0-based colluding `subset`.
/// W is the outer loop; each W-slice is checked for independence on its own
/// and the Pinsker bounds are averaged over W.
inline audit_report audit_privacy(const audit_config& c,
                                  const std::vector<unsigned>& subset) {
  audit_report rep;
  rep.kind = "privacy";
  rep.atoms = atom_count(c);
  std::vector<bool> colluding(c.array.k(), false);
  if (subset.empty()) throw std::invalid_argument("colluding subset is empty");
  for (unsigned u : subset) {
    if (u >= c.array.k()) throw std::invalid_argument("user out of range");
    colluding[u] = true;
    rep.subset.push_back(u + 1);
  }
  std::vector<unsigned> others;
  for (unsigned k = 0; k < c.array.k(); ++k)
    if (!colluding[k]) others.push_back(k);
  if (others.empty()) {
    rep.pass = true;
    return rep;
  }

  const detail::secret_space space(c);
  std::uint64_t n_slices = 0;
  big_rational bound = 0;
  detail::for_each_library(c, [&](const library& lib) {
    ++n_slices;
    std::unordered_map<symbol_vector, std::uint64_t, vector_hash> joint;
    std::size_t split = 0;
    std::optional<std::string> witness;
    detail::for_each_secret(space, [&](const randomness& r, const demand_set& d) {
      const scheme_state st = place(c.array, lib, r, c.mode);
      symbol_vector key;
      for (unsigned k : others) key.insert(key.end(), d[k].begin(), d[k].end());
      split = key.size();
      const auto x = detail::flatten(deliver(st, d));
      key.insert(key.end(), x.begin(), x.end());
      for (unsigned k = 0; k < c.array.k(); ++k) {
        if (!colluding[k]) continue;
        key.insert(key.end(), d[k].begin(), d[k].end());
        detail::append(key, st.cache(k));
      }
      ++joint[key];
      if (!witness) witness = detail::describe_atom(lib, r, d);
    });
    const auto slice = detail::independence_of(joint, split);
    rep.checked_identities += slice.checked_identities;
    rep.violations += slice.violated_identities;
    bound += slice.lower_bound_bits;
    if (!slice.zero && !rep.counterexample)
      rep.counterexample = "demands of other users leak in the slice of " +
                           *witness;
  });
  rep.information_lower_bound = bound / n_slices;
  rep.pass = rep.violations == 0;
  return rep;
}

/// I(A; B) for a table whose outcome coordinates are split by `part`.
/// Exact zero test plus a Pinsker lower bound when nonzero.
inline information_report mutual_information_bits(const exact_distribution& dist,
                                                  const partition& part) {
  std::unordered_map<symbol_vector, std::uint64_t, vector_hash> joint;
  for (const auto& [outcome, c] : dist.table()) {
    symbol_vector key = detail::project(outcome, part.left);
    const auto right = detail::project(outcome, part.right);
    key.insert(key.end(), right.begin(), right.end());
    joint[key] += c;
  }
  return detail::independence_of(joint, part.left.size());
}

}  // namespace splfr
