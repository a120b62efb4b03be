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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "splfr/combinatorics.hpp"
#include "splfr/pda.hpp"
#include "splfr/rational.hpp"

namespace splfr {

/// (memory, load) in units of files.
template <class Q>
struct basic_point {
  Q m;
  Q r;
  friend bool operator==(const basic_point&, const basic_point&) = default;
};

/// Piecewise-linear convex load curve given by its corner points, strictly
/// increasing in memory. Evaluation interpolates linearly (memory sharing).
template <class Q>
class basic_curve {
 public:
  basic_curve() = default;
  explicit basic_curve(std::vector<basic_point<Q>> corners)
      : corners_(std::move(corners)) {}

  const std::vector<basic_point<Q>>& corners() const { return corners_; }
  const Q& min_memory() const { return corners_.front().m; }
  const Q& max_memory() const { return corners_.back().m; }

  Q operator()(const Q& m) const {
    if (corners_.empty() || m < corners_.front().m || m > corners_.back().m)
      throw std::domain_error("curve evaluated outside its memory range");
    auto it = std::lower_bound(
        corners_.begin(), corners_.end(), m,
        [](const basic_point<Q>& p, const Q& x) { return p.m < x; });
    if (it->m == m) return it->r;
    const auto& b = *it;
    const auto& a = *(it - 1);
    return Q(a.r + (b.r - a.r) * (m - a.m) / (b.m - a.m));
  }

  /// Corners whose memory lies in [lo, hi].
  std::vector<basic_point<Q>> corners_in(const Q& lo, const Q& hi) const {
    std::vector<basic_point<Q>> out;
    for (const auto& p : corners_)
      if (p.m >= lo && p.m <= hi) out.push_back(p);
    return out;
  }

 private:
  std::vector<basic_point<Q>> corners_;
};

using curve_point = basic_point<rational>;
using tradeoff_curve = basic_curve<rational>;
using big_point = basic_point<big_rational>;
using big_curve = basic_curve<big_rational>;

/// Lower convex hull of the points, left to right. Points on a straight
/// segment between two others are dropped; for repeated memory values the
/// smallest load wins.
template <class Q>
basic_curve<Q> lower_convex_envelope(std::vector<basic_point<Q>> pts) {
  if (pts.empty()) throw std::invalid_argument("envelope of no points");
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.m < b.m || (a.m == b.m && a.r < b.r);
  });
  std::vector<basic_point<Q>> hull;
  for (auto& p : pts) {
    if (!hull.empty() && hull.back().m == p.m) continue;
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const Q cross = Q((b.m - a.m) * (p.r - a.r) - (b.r - a.r) * (p.m - a.m));
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(std::move(p));
  }
  return basic_curve<Q>(std::move(hull));
}

/// (1 + t(N-1)/K, (K-t)/(t+1)) for t in [0, K].
template <class Q = rational>
std::vector<basic_point<Q>> man_points(unsigned n, unsigned k) {
  if (n < 2 || k < 1) throw std::invalid_argument("man_points: N >= 2, K >= 1");
  std::vector<basic_point<Q>> out;
  for (unsigned t = 0; t <= k; ++t)
    out.push_back({Q(1) + Q(std::int64_t{t} * (n - 1)) / Q(k),
                   Q(k - t) / Q(t + 1)});
  return out;
}

/// (tN/K, (K-t)/(t+1)) for t in [0, K]: the uncoded-placement points.
template <class Q = rational>
std::vector<basic_point<Q>> uncoded_points(unsigned n, unsigned k) {
  if (n < 1 || k < 1) throw std::invalid_argument("uncoded_points: N, K >= 1");
  std::vector<basic_point<Q>> out;
  for (unsigned t = 0; t <= k; ++t)
    out.push_back({Q(std::int64_t{t} * n) / Q(k), Q(k - t) / Q(t + 1)});
  return out;
}

/// R_MAN: envelope of man_points.
inline tradeoff_curve man_curve(unsigned n, unsigned k) {
  return lower_convex_envelope(man_points(n, k));
}

/// r_MAN: envelope of uncoded_points.
inline tradeoff_curve uncoded_curve(unsigned n, unsigned k) {
  return lower_convex_envelope(uncoded_points(n, k));
}

namespace detail {
inline void require_memory(unsigned n, const rational& m) {
  if (n < 2) throw std::domain_error("N must be >= 2");
  if (m < 1 || m > rational(n))
    throw std::domain_error("memory " + m.str() + " outside [1, N]");
}
}  // namespace detail

/// Load floor of any PDA-based scheme: K(N-M) / (N-1+K(M-1)).
inline rational pda_lower_bound(unsigned n, unsigned k, const rational& m) {
  detail::require_memory(n, m);
  return rational(k) * (rational(n) - m) /
         (rational(n - 1) + rational(k) * (m - 1));
}

/// One cut-set term L_u(M) = (uN - u^2 M) / (N - 1).
inline rational cutset_term(unsigned n, unsigned u, const rational& m) {
  const std::int64_t uu = u;
  return (rational(uu * n) - rational(uu * uu) * m) / rational(n - 1);
}

/// max over u in [1, min(floor(N/2), K)] of L_u(M), floored at 0.
inline rational cutset_bound(unsigned n, unsigned k, const rational& m) {
  detail::require_memory(n, m);
  rational best = 0;
  for (unsigned u = 1; u <= std::min(n / 2, k); ++u)
    best = std::max(best, cutset_term(n, u, m));
  return best;
}

/// f(M) = (1/4)(N/(N-1))(N/M - M/N) on [N/(2 floor(N/2) + 1), N].
inline rational f_bound(unsigned n, const rational& m) {
  if (n < 2) throw std::domain_error("N must be >= 2");
  const rational lo(n, 2 * (n / 2) + 1);
  if (m < lo || m > rational(n))
    throw std::domain_error("memory " + m.str() + " outside f's domain");
  const rational nn(n);
  return rational(1, 4) * nn / rational(n - 1) * (nn / m - m / nn);
}

enum class curve_scheme {
  splfr,
  security_key,
  privacy_key_pfr,
  privacy_key_plfr,
  yma,
  wsjtc,
  virtual_users,
};

inline std::string_view scheme_tag(curve_scheme s) {
  switch (s) {
    case curve_scheme::splfr: return "splfr";
    case curve_scheme::security_key: return "seckey";
    case curve_scheme::privacy_key_pfr: return "privkey-pfr";
    case curve_scheme::privacy_key_plfr: return "privkey-plfr";
    case curve_scheme::yma: return "yma";
    case curve_scheme::wsjtc: return "wsjtc";
    case curve_scheme::virtual_users: return "virtual";
  }
  return "?";
}

inline curve_scheme parse_scheme(std::string_view tag) {
  for (auto s : {curve_scheme::splfr, curve_scheme::security_key,
                 curve_scheme::privacy_key_pfr, curve_scheme::privacy_key_plfr,
                 curve_scheme::yma, curve_scheme::wsjtc,
                 curve_scheme::virtual_users})
    if (scheme_tag(s) == tag) return s;
  throw std::invalid_argument("unknown scheme '" + std::string(tag) + "'");
}

namespace detail {

/// (C(K, t+1) - C(K - D, t+1)) / C(K, t), the load after removing the
/// redundant signals of D distinct demands.
inline big_rational distinct_demand_load(unsigned k, unsigned distinct,
                                         unsigned t) {
  return big_rational(big_binomial(k, t + 1) - big_binomial(k - distinct, t + 1),
                      big_binomial(k, t));
}

}  // namespace detail

/// Corner points of the known-scheme curves (envelope applied). The
/// privacy-key rows also get the trivial point (0, N).
inline big_curve scheme_curve(curve_scheme scheme, unsigned n, unsigned k) {
  if (n < 1 || k < 1) throw std::invalid_argument("scheme_curve: N, K >= 1");
  using Q = big_rational;
  std::vector<big_point> pts;
  const Q nn(n);
  switch (scheme) {
    case curve_scheme::splfr:
    case curve_scheme::security_key:
      if (n < 2) throw std::invalid_argument("secure schemes need N >= 2");
      pts = man_points<Q>(n, k);
      break;
    case curve_scheme::yma:
    case curve_scheme::wsjtc:
      for (unsigned t = 0; t <= k; ++t)
        pts.push_back({Q(std::int64_t{t} * n) / k,
                       detail::distinct_demand_load(k, std::min(n, k), t)});
      break;
    case curve_scheme::privacy_key_plfr:
    case curve_scheme::privacy_key_pfr: {
      const unsigned distinct = scheme == curve_scheme::privacy_key_plfr
                                    ? std::min(n, k)
                                    : std::min(n - 1, k);
      for (unsigned t = 0; t <= k; ++t)
        pts.push_back({Q(1) + Q(std::int64_t{t} * (n - 1)) / k,
                       detail::distinct_demand_load(k, distinct, t)});
      pts.push_back({Q(0), nn});
      break;
    }
    case curve_scheme::virtual_users: {
      const unsigned kn = k * n;
      for (unsigned t = 0; t <= kn; ++t)
        pts.push_back({Q(t) / k,
                       Q(big_binomial(kn, t + 1) - big_binomial(kn - n, t + 1),
                         big_binomial(kn, t))});
      break;
    }
  }
  return lower_convex_envelope(std::move(pts));
}

/// True when the two curves agree on [lo, hi]. Both are piecewise linear,
/// so agreement at every breakpoint of either curve in the interval (and at
/// its ends) is equivalent to agreement everywhere.
template <class Q>
bool curves_coincide(const basic_curve<Q>& a, const basic_curve<Q>& b,
                     const Q& lo, const Q& hi) {
  std::vector<Q> xs{lo, hi};
  for (const auto* c : {&a, &b})
    for (const auto& p : c->corners_in(lo, hi)) xs.push_back(p.m);
  for (const auto& x : xs)
    if (a(x) != b(x)) return false;
  return true;
}

/// Sorted, deduplicated evaluation grid: lo + j/density inside the interval,
/// plus every extra point inside it.
inline std::vector<rational> memory_grid(const rational& lo, const rational& hi,
                                         unsigned density,
                                         const std::vector<rational>& extras,
                                         bool include_lo, bool include_hi) {
  std::set<rational> pts;
  auto inside = [&](const rational& x) {
    return (x > lo || (include_lo && x == lo)) &&
           (x < hi || (include_hi && x == hi));
  };
  // Grid anchored at integers so all (N, K) share the same lattice.
  const std::int64_t start = static_cast<std::int64_t>(
      std::floor(lo.to_double() * density)) - 1;
  for (std::int64_t j = start;; ++j) {
    const rational x(j, density);
    if (x > hi) break;
    if (inside(x)) pts.insert(x);
  }
  for (const auto& x : extras)
    if (inside(x)) pts.insert(x);
  return {pts.begin(), pts.end()};
}

/// Breakpoints N/(2u+1) and N/(2u-1), u in [1, floor(N/2)], of the cut-set
/// interval partition.
inline std::vector<rational> cutset_breakpoints(unsigned n) {
  std::vector<rational> out;
  for (unsigned u = 1; u <= n / 2; ++u) {
    out.emplace_back(n, 2 * u + 1);
    out.emplace_back(n, 2 * u - 1);
  }
  return out;
}

struct ratio_extreme {
  rational value;
  rational at;
  std::optional<rational> threshold;
  bool strict = false;  // value must be < threshold rather than <=
  bool applicable = false;

  bool pass() const {
    if (!applicable || !threshold) return true;
    return strict ? value < *threshold : value <= *threshold;
  }
};

struct ratio_report {
  unsigned n = 0, k = 0, density = 0;
  std::size_t grid_points = 0;
  ratio_extreme slope;     // max R_MAN(M)(M-1)/(N-M) on (1, N), <= 1
  ratio_extreme vs_uncoded;     // max R_MAN/r_MAN on [1, N), N >= K >= 2
  ratio_extreme gap;        // max R_MAN/f on [2, N), N < K, < 8
  ratio_extreme cutset;     // max R_MAN/cut-set on [1, N)

  bool pass() const {
    return slope.pass() && vs_uncoded.pass() && gap.pass() && cutset.pass();
  }
};

/// Threshold on R_MAN/r_MAN for N >= K >= 2, when one is known.
inline std::optional<rational> uncoded_ratio_threshold(unsigned n, unsigned k) {
  if (k < 2 || n < k) return std::nullopt;
  if (n >= k + 2) return rational(2);
  if (n == k + 1) return rational(5, 2);
  if (k >= 3) return rational(3);
  return std::nullopt;
}

inline ratio_report ratio_checks(unsigned n, unsigned k, unsigned density = 1000) {
  if (n < 2 || k < 1 || density < 1)
    throw std::invalid_argument("ratio_checks: N >= 2, K >= 1, density >= 1");
  ratio_report rep;
  rep.n = n;
  rep.k = k;
  rep.density = density;
  const tradeoff_curve big_r = man_curve(n, k);
  const tradeoff_curve small_r = uncoded_curve(n, k);
  const rational nn(n);

  std::vector<rational> extras;
  for (const auto& p : big_r.corners()) extras.push_back(p.m);
  for (const auto& p : small_r.corners()) extras.push_back(p.m);
  for (const auto& x : cutset_breakpoints(n)) extras.push_back(x);
  extras.push_back(rational(2));

  auto update = [](ratio_extreme& e, const rational& v, const rational& at) {
    if (!e.applicable || v > e.value) {
      e.value = v;
      e.at = at;
      e.applicable = true;
    }
  };

  const auto grid = memory_grid(1, nn, density, extras, true, false);
  rep.grid_points = grid.size();
  const bool uncoded_on = n >= k && k >= 2;
  const bool gap_on = n < k && n > 2;
  for (const auto& m : grid) {
    const rational rm = big_r(m);
    if (m > 1) update(rep.slope, rm * (m - 1) / (nn - m), m);
    if (uncoded_on) update(rep.vs_uncoded, rm / small_r(m), m);
    if (gap_on && m >= 2) update(rep.gap, rm / f_bound(n, m), m);
    update(rep.cutset, rm / cutset_bound(n, k, m), m);
  }
  rep.slope.threshold = rational(1);
  rep.vs_uncoded.threshold = uncoded_ratio_threshold(n, k);
  rep.gap.threshold = rational(8);
  rep.gap.strict = true;
  return rep;
}

struct subpacketization_report {
  unsigned k = 0, t = 0;
  std::uint64_t b_man = 0;
  std::uint64_t b_lsub = 0;
  rational r_man;
  rational r_lsub;
  bool load_identity = false;  // R_MAN = t/(t+1) · R_Lsub
  double stirling_factor = 0;  // for display only
  bool stirling_holds = false; // B_MAN >= factor · B_Lsub, proven exactly
};

namespace detail {

/// Rational lower bounds on e^{1/3} (Taylor partial sum) and pi.
inline big_rational e_third_lower() {
  big_rational sum = 0, term = 1;
  for (int i = 0; i < 8; ++i) {
    sum += term;
    term = term / 3 / (i + 1);
  }
  return sum;
}
inline big_rational pi_lower() { return big_rational(314159265, 100000000); }

}  // namespace detail

/// Compares the MAN and low-subpacketization PDAs at equal memory, t | K.
/// The Stirling-factor inequality is checked on squares with rational lower
/// bounds for pi and e^{1/3}, which over-estimates the factor, so a pass
/// proves the inequality.
inline subpacketization_report subpacketization_compare(unsigned k, unsigned t) {
  if (t < 2 || t + 1 > k || k % t != 0)
    throw std::invalid_argument("subpacketization_compare: t in [2, K-1], t | K");
  subpacketization_report rep;
  rep.k = k;
  rep.t = t;
  const lsub_params lsub = lsub_parameters(k, t);
  rep.b_man = binomial(k, t);
  rep.b_lsub = lsub.subpacketization;
  rep.r_man = rational(k - t, t + 1);
  rep.r_lsub = lsub.load;
  rep.load_identity = rep.r_man == rational(t, t + 1) * rep.r_lsub;

  const unsigned a = std::max(t, k - t);
  using Q = big_rational;
  const Q kt = Q(k) / t;
  const Q ka = Q(k) / a;
  Q upper_sq = kt * kt * kt;
  for (unsigned i = 0; i < 2 * a; ++i) upper_sq *= ka;
  upper_sq /= 2 * detail::pi_lower() * detail::e_third_lower() * (k - t);
  const Q lhs = Q(rep.b_man) * rep.b_man;
  const Q rhs = upper_sq * rep.b_lsub * rep.b_lsub;
  rep.stirling_holds = lhs >= rhs;
  rep.stirling_factor =
      std::pow(static_cast<double>(k) / t, 1.5) *
      std::pow(static_cast<double>(k) / a, static_cast<double>(a)) /
      (std::exp(1.0 / 6) * std::sqrt(2 * std::numbers::pi * (k - t)));
  return rep;
}

struct bounds_report {
  unsigned n = 0, k = 0;
  bool pda_bound_equality = true;      // pda_lower_bound(M_t) == R_t, all t
  bool achievable_above_pda = true;   // R_MAN >= pda_lower_bound on grid
  bool f_below_cutset = true;         // f <= cut-set on grid of [1, N]
  bool f_touches_cutset = true;       // f = L_u at N/(2u+1), N/(2u-1)
  std::size_t grid_points = 0;

  bool pass() const {
    return pda_bound_equality && achievable_above_pda && f_below_cutset &&
           f_touches_cutset;
  }
};

inline bounds_report bounds_check(unsigned n, unsigned k, unsigned density = 1000) {
  if (n < 2 || k < 1) throw std::invalid_argument("bounds_check: N >= 2, K >= 1");
  bounds_report rep;
  rep.n = n;
  rep.k = k;
  for (const auto& p : man_points(n, k))
    if (pda_lower_bound(n, k, p.m) != p.r) rep.pda_bound_equality = false;
  const tradeoff_curve rman = man_curve(n, k);
  std::vector<rational> extras;
  for (const auto& p : rman.corners()) extras.push_back(p.m);
  for (const auto& x : cutset_breakpoints(n)) extras.push_back(x);
  const auto grid = memory_grid(1, rational(n), density, extras, true, true);
  rep.grid_points = grid.size();
  for (const auto& m : grid) {
    if (rman(m) < pda_lower_bound(n, k, m)) rep.achievable_above_pda = false;
    if (f_bound(n, m) > cutset_bound(n, n, m)) rep.f_below_cutset = false;
  }
  for (unsigned u = 1; u <= n / 2; ++u) {
    for (const rational x : {rational(n, 2 * u + 1), rational(n, 2 * u - 1)}) {
      if (f_bound(n, x) != cutset_term(n, u, x)) rep.f_touches_cutset = false;
    }
  }
  return rep;
}

}  // namespace splfr
