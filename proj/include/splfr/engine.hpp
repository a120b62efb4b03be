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

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "splfr/field.hpp"
#include "splfr/pda.hpp"
#include "splfr/rational.hpp"

namespace splfr {

class scheme_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Which keys the scheme keeps. Removing security keys gives a private-only
/// scheme, removing privacy keys a secure-only one, removing both the plain
/// PDA linear-function scheme.
enum class scheme_mode { splfr, plfr, slfr, lfr };

constexpr bool uses_security_keys(scheme_mode m) {
  return m == scheme_mode::splfr || m == scheme_mode::slfr;
}
constexpr bool uses_privacy_keys(scheme_mode m) {
  return m == scheme_mode::splfr || m == scheme_mode::plfr;
}

inline std::string_view to_string(scheme_mode m) {
  switch (m) {
    case scheme_mode::splfr: return "splfr";
    case scheme_mode::plfr: return "plfr";
    case scheme_mode::slfr: return "slfr";
    case scheme_mode::lfr: return "lfr";
  }
  return "?";
}

inline scheme_mode parse_mode(std::string_view s) {
  if (s == "splfr") return scheme_mode::splfr;
  if (s == "plfr") return scheme_mode::plfr;
  if (s == "slfr") return scheme_mode::slfr;
  if (s == "lfr") return scheme_mode::lfr;
  throw scheme_error("unknown mode '" + std::string(s) + "'");
}

/// Deterministic symbol source. Uses rejection sampling on a 64-bit
/// Mersenne twister so streams are identical across standard libraries.
class symbol_rng {
 public:
  explicit symbol_rng(std::uint64_t seed) : gen_(seed) {}

  symbol uniform(std::uint32_t q) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % q;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return static_cast<symbol>(x % q);
  }

  symbol_vector vector(const field_context& ctx, std::size_t len) {
    symbol_vector v(len);
    for (auto& x : v) x = uniform(ctx.order());
    return v;
  }

 private:
  std::mt19937_64 gen_;
};

/// N files of B symbols each over one field.
class library {
 public:
  library(field_context ctx, std::vector<symbol_vector> files)
      : ctx_(std::move(ctx)), files_(std::move(files)) {
    if (files_.empty()) throw scheme_error("library needs at least one file");
    for (const auto& f : files_) {
      if (f.size() != files_.front().size())
        throw scheme_error("library files differ in length");
      for (symbol x : f)
        if (!ctx_.contains(x)) throw scheme_error("file symbol outside field");
    }
  }

  static library random(const field_context& ctx, unsigned n_files,
                        std::size_t length, symbol_rng& rng) {
    std::vector<symbol_vector> files;
    for (unsigned n = 0; n < n_files; ++n)
      files.push_back(rng.vector(ctx, length));
    return library(ctx, std::move(files));
  }

  const field_context& field() const { return ctx_; }
  unsigned n_files() const { return static_cast<unsigned>(files_.size()); }
  std::size_t file_length() const { return files_.front().size(); }
  std::span<const symbol> file(unsigned n) const { return files_.at(n); }

  /// Packet i (0-based) of file n when files are cut into `f` packets.
  std::span<const symbol> packet(unsigned n, unsigned i, unsigned f) const {
    const std::size_t len = file_length() / f;
    return file(n).subspan(i * len, len);
  }

  /// Σ_n coeffs[n] · W_n.
  symbol_vector combine(std::span<const symbol> coeffs) const {
    if (coeffs.size() != files_.size())
      throw scheme_error("coefficient vector length differs from N");
    symbol_vector out(file_length(), 0);
    for (unsigned n = 0; n < n_files(); ++n) ctx_.axpy(out, coeffs[n], files_[n]);
    return out;
  }

 private:
  field_context ctx_;
  std::vector<symbol_vector> files_;
};

/// Cuts a file into `f` contiguous packets of equal length.
inline std::vector<symbol_vector> split(std::span<const symbol> file,
                                        unsigned f) {
  if (f == 0 || file.size() % f != 0)
    throw scheme_error("file length " + std::to_string(file.size()) +
                       " is not divisible by F=" + std::to_string(f));
  const std::size_t len = file.size() / f;
  std::vector<symbol_vector> out;
  for (unsigned i = 0; i < f; ++i)
    out.emplace_back(file.begin() + i * len, file.begin() + (i + 1) * len);
  return out;
}

/// Server randomness: one security key per ordinary symbol (B/F symbols
/// each) and one privacy vector per user (N symbols each).
struct randomness {
  std::vector<symbol_vector> security_keys;
  std::vector<symbol_vector> privacy_vectors;

  static randomness generate(const field_context& ctx, unsigned s, unsigned k,
                             unsigned n_files, std::size_t packet_length,
                             symbol_rng& rng) {
    randomness r;
    for (unsigned i = 0; i < s; ++i)
      r.security_keys.push_back(rng.vector(ctx, packet_length));
    for (unsigned j = 0; j < k; ++j)
      r.privacy_vectors.push_back(rng.vector(ctx, n_files));
    return r;
  }

  friend bool operator==(const randomness&, const randomness&) = default;
};

/// Cache row of one user: the N uncoded packets of a starred row, or the
/// single superposition key V_s + T_{i,k} of an ordinary cell.
struct cache_row {
  std::vector<symbol_vector> packets;
  symbol_vector superposition_key;

  bool is_uncoded() const { return !packets.empty(); }
  friend bool operator==(const cache_row&, const cache_row&) = default;
};

struct user_cache {
  std::vector<cache_row> rows;

  std::size_t size_in_symbols() const {
    std::size_t total = 0;
    for (const auto& r : rows) {
      for (const auto& p : r.packets) total += p.size();
      total += r.superposition_key.size();
    }
    return total;
  }
  friend bool operator==(const user_cache&, const user_cache&) = default;
};

/// Public broadcast: coefficient vectors q_k = p_k + d_k and the S blocks.
struct delivery_payload {
  std::vector<symbol_vector> coeff_vectors;
  std::vector<symbol_vector> blocks;

  friend bool operator==(const delivery_payload&,
                         const delivery_payload&) = default;
};

using demand_set = std::vector<symbol_vector>;

namespace detail {

inline symbol_vector combine_packets(const library& lib, unsigned row,
                                     unsigned f,
                                     std::span<const symbol> coeffs) {
  const auto& ctx = lib.field();
  symbol_vector out(lib.file_length() / f, 0);
  for (unsigned n = 0; n < lib.n_files(); ++n)
    ctx.axpy(out, coeffs[n], lib.packet(n, row, f));
  return out;
}

}  // namespace detail

class scheme_state;
inline scheme_state place(const pda& array, const library& lib, randomness rnd,
                   scheme_mode mode);
inline scheme_state update_round(const scheme_state& st, const demand_set& demands,
                          std::vector<symbol_vector> fresh_keys,
                          std::vector<symbol> local_coeffs);

/// Placed scheme. Immutable; produced by place() or update_round().
class scheme_state {
 public:
  const pda& array() const { return pda_; }
  const library& files() const { return lib_; }
  const randomness& keys() const { return rnd_; }
  scheme_mode mode() const { return mode_; }
  const field_context& field() const { return lib_.field(); }
  const user_cache& cache(unsigned user) const { return caches_.at(user); }
  const std::vector<user_cache>& caches() const { return caches_; }
  std::size_t packet_length() const { return lib_.file_length() / pda_.f(); }

 private:
  friend scheme_state place(const pda&, const library&, randomness,
                            scheme_mode);
  friend scheme_state update_round(const scheme_state&, const demand_set&,
                                   std::vector<symbol_vector>,
                                   std::vector<symbol>);
  scheme_state(pda a, library l, randomness r, scheme_mode m,
               std::vector<user_cache> c)
      : pda_(std::move(a)), lib_(std::move(l)), rnd_(std::move(r)), mode_(m),
        caches_(std::move(c)) {}

  pda pda_;
  library lib_;
  randomness rnd_;
  scheme_mode mode_;
  std::vector<user_cache> caches_;
};

/// T_{i,j} = Σ_n p_{j,n} · W_{n,i}; only defined on non-star cells.
inline symbol_vector privacy_key(const scheme_state& st, unsigned row,
                                 unsigned user) {
  if (st.array().at(row, user).is_star())
    throw scheme_error("privacy key requested for a star cell");
  return detail::combine_packets(st.files(), row, st.array().f(),
                                 st.keys().privacy_vectors.at(user));
}

/// Fills every user's cache: uncoded packets on starred rows, the
/// superposition V_{a_{i,k}} + T_{i,k} elsewhere. Keys removed by `mode`
/// are replaced by zeros before placement.
inline scheme_state place(const pda& array, const library& lib, randomness rnd,
                          scheme_mode mode) {
  const auto& ctx = lib.field();
  if (lib.file_length() % array.f() != 0)
    throw scheme_error("file length " + std::to_string(lib.file_length()) +
                       " is not divisible by F=" + std::to_string(array.f()));
  const std::size_t len = lib.file_length() / array.f();
  if (rnd.security_keys.size() != array.s() ||
      rnd.privacy_vectors.size() != array.k())
    throw scheme_error("randomness shape does not match the PDA");
  for (auto& v : rnd.security_keys) {
    if (v.size() != len) throw scheme_error("security key length != B/F");
    if (!uses_security_keys(mode)) std::fill(v.begin(), v.end(), 0);
  }
  for (auto& p : rnd.privacy_vectors) {
    if (p.size() != lib.n_files())
      throw scheme_error("privacy vector length != N");
    if (!uses_privacy_keys(mode)) std::fill(p.begin(), p.end(), 0);
  }
  for (const auto* group : {&rnd.security_keys, &rnd.privacy_vectors})
    for (const auto& v : *group)
      for (symbol x : v)
        if (!ctx.contains(x)) throw scheme_error("key symbol outside field");

  std::vector<user_cache> caches(array.k());
  for (unsigned k = 0; k < array.k(); ++k) {
    auto& rows = caches[k].rows;
    rows.resize(array.f());
    for (unsigned i = 0; i < array.f(); ++i) {
      const pda_entry e = array.at(i, k);
      if (e.is_star()) {
        for (unsigned n = 0; n < lib.n_files(); ++n) {
          auto p = lib.packet(n, i, array.f());
          rows[i].packets.emplace_back(p.begin(), p.end());
        }
      } else {
        symbol_vector key = detail::combine_packets(lib, i, array.f(),
                                                    rnd.privacy_vectors[k]);
        ctx.add_into(key, rnd.security_keys[e.symbol() - 1]);
        rows[i].superposition_key = std::move(key);
      }
    }
  }
  return scheme_state(array, lib, std::move(rnd), mode, std::move(caches));
}

/// q_k = p_k + d_k and Y_s = V_s + Σ_{a_{i,j}=s} Σ_n q_{j,n} · W_{n,i}.
inline delivery_payload deliver(const scheme_state& st,
                                const demand_set& demands) {
  const auto& a = st.array();
  const auto& ctx = st.field();
  if (demands.size() != a.k())
    throw scheme_error("expected " + std::to_string(a.k()) + " demands");
  delivery_payload out;
  for (unsigned k = 0; k < a.k(); ++k) {
    if (demands[k].size() != st.files().n_files())
      throw scheme_error("demand vector length != N");
    symbol_vector q = st.keys().privacy_vectors[k];
    for (std::size_t n = 0; n < q.size(); ++n) {
      if (!ctx.contains(demands[k][n]))
        throw scheme_error("demand symbol outside field");
      q[n] = ctx.add(q[n], demands[k][n]);
    }
    out.coeff_vectors.push_back(std::move(q));
  }
  for (std::uint32_t s = 1; s <= a.s(); ++s) {
    symbol_vector y = st.keys().security_keys[s - 1];
    for (const auto& [i, j] : a.occurrences(s))
      ctx.add_into(y, detail::combine_packets(st.files(), i, a.f(),
                                              out.coeff_vectors[j]));
    out.blocks.push_back(std::move(y));
  }
  return out;
}

/// Recovers Σ_n d_n · W_n for `user` from its own cache, its demand and the
/// public payload. The PDA is public; nothing else of the server state is
/// consulted.
inline symbol_vector decode(const pda& a, unsigned user,
                            const user_cache& cache, const field_context& ctx,
                            const delivery_payload& payload,
                            std::span<const symbol> demand) {
  if (user >= a.k()) throw scheme_error("user index out of range");
  if (payload.blocks.size() != a.s() || payload.coeff_vectors.size() != a.k())
    throw scheme_error("payload does not match the PDA");
  if (cache.rows.size() != a.f()) throw scheme_error("cache does not match the PDA");

  // Packet length and N come from any starred row; a user with no star still
  // learns the length from its keys.
  std::size_t len = 0;
  for (const auto& r : cache.rows)
    len = r.is_uncoded() ? r.packets.front().size() : r.superposition_key.size();
  for (const auto& q : payload.coeff_vectors)
    if (q.size() != demand.size())
      throw scheme_error("coefficient vector length differs from demand");
  for (const auto& y : payload.blocks)
    if (y.size() != len) throw scheme_error("block length differs from packet");

  auto combine_cached = [&](unsigned row, std::span<const symbol> coeffs) {
    const auto& packets = cache.rows[row].packets;
    if (packets.size() != coeffs.size())
      throw scheme_error("cached row does not hold N packets");
    symbol_vector out(len, 0);
    for (std::size_t n = 0; n < packets.size(); ++n)
      ctx.axpy(out, coeffs[n], packets[n]);
    return out;
  };

  symbol_vector file;
  file.reserve(len * a.f());
  for (unsigned h = 0; h < a.f(); ++h) {
    const pda_entry e = a.at(h, user);
    symbol_vector piece;
    if (e.is_star()) {
      piece = combine_cached(h, demand);
    } else {
      const std::uint32_t s = e.symbol();
      piece = payload.blocks[s - 1];
      ctx.sub_into(piece, cache.rows[h].superposition_key);
      for (const auto& [i, j] : a.occurrences(s)) {
        if (j == user) continue;
        // PDA condition b) puts a star at (i, user).
        ctx.sub_into(piece, combine_cached(i, payload.coeff_vectors[j]));
      }
    }
    file.insert(file.end(), piece.begin(), piece.end());
  }
  return file;
}

inline symbol_vector decode(const scheme_state& st, unsigned user,
                            const delivery_payload& payload,
                            std::span<const symbol> demand) {
  return decode(st.array(), user, st.cache(user), st.field(), payload, demand);
}

/// Performance of one placed-and-delivered instance.
struct measurement {
  rational memory;           // cached symbols / B
  rational load;             // S / F, the large-B load
  std::uint64_t tx_symbols;  // S·B/F block symbols + K·N coefficient symbols
  std::uint64_t block_symbols;
  std::uint64_t coefficient_symbols;
  /// Random symbols drawn by the server; the budget in bits is this many
  /// times log2(q).
  std::uint64_t randomness_symbols;
  std::uint32_t field_order;

  double randomness_bits() const {
    return static_cast<double>(randomness_symbols) *
           std::log2(static_cast<double>(field_order));
  }
  std::string randomness_bits_expr() const {
    return std::to_string(randomness_symbols) + "*log2(" +
           std::to_string(field_order) + ")";
  }
};

inline measurement measure(const scheme_state& st,
                           const delivery_payload& payload) {
  const auto& a = st.array();
  const std::uint64_t b = st.files().file_length();
  const std::uint64_t n = st.files().n_files();
  std::size_t cached = 0;
  for (const auto& c : st.caches()) cached = std::max(cached, c.size_in_symbols());
  std::uint64_t blocks = 0;
  for (const auto& y : payload.blocks) blocks += y.size();
  std::uint64_t coeffs = 0;
  for (const auto& q : payload.coeff_vectors) coeffs += q.size();
  const std::uint64_t sec = uses_security_keys(st.mode()) ? a.s() * b / a.f() : 0;
  const std::uint64_t priv = uses_privacy_keys(st.mode()) ? n * a.k() : 0;
  return {rational(static_cast<std::int64_t>(cached), static_cast<std::int64_t>(b)),
          rational(a.s(), a.f()),
          blocks + coeffs,
          blocks,
          coeffs,
          sec + priv,
          st.field().order()};
}

/// User-side cache refresh after a delivery round: every coded row gets
/// V^u_{a_{i,k}} + c · W̄_{d,i} added, using the user's decoded file and the
/// public fresh keys.
inline user_cache refresh_cache(const pda& a, unsigned user,
                                const user_cache& cache,
                                const field_context& ctx,
                                std::span<const symbol> decoded_file,
                                const std::vector<symbol_vector>& fresh_keys,
                                symbol local_coeff) {
  if (fresh_keys.size() != a.s())
    throw scheme_error("expected one fresh key per ordinary symbol");
  if (decoded_file.size() % a.f() != 0)
    throw scheme_error("decoded file length not divisible by F");
  const std::size_t len = decoded_file.size() / a.f();
  user_cache out = cache;
  for (unsigned i = 0; i < a.f(); ++i) {
    const pda_entry e = a.at(i, user);
    if (e.is_star()) continue;
    auto& key = out.rows[i].superposition_key;
    const auto& fresh = fresh_keys[e.symbol() - 1];
    if (fresh.size() != len) throw scheme_error("fresh key length != B/F");
    ctx.add_into(key, fresh);
    ctx.axpy(key, local_coeff, decoded_file.subspan(i * len, len));
  }
  return out;
}

/// One multi-round key update. Each user decodes the current round, then
/// refreshes its coded rows; the server's keys move to V + V^u and
/// p_k + c_k · d_k. Components that `mode` removes stay zero.
inline scheme_state update_round(const scheme_state& st,
                                 const demand_set& demands,
                                 std::vector<symbol_vector> fresh_keys,
                                 std::vector<symbol> local_coeffs) {
  const auto& a = st.array();
  const auto& ctx = st.field();
  if (fresh_keys.size() != a.s() || local_coeffs.size() != a.k())
    throw scheme_error("update shape does not match the PDA");
  if (!uses_security_keys(st.mode()))
    for (auto& v : fresh_keys) std::fill(v.begin(), v.end(), 0);
  if (!uses_privacy_keys(st.mode()))
    std::fill(local_coeffs.begin(), local_coeffs.end(), 0);

  const delivery_payload payload = deliver(st, demands);
  randomness next = st.keys();
  for (unsigned s = 0; s < a.s(); ++s) {
    if (fresh_keys[s].size() != st.packet_length())
      throw scheme_error("fresh key length != B/F");
    ctx.add_into(next.security_keys[s], fresh_keys[s]);
  }
  for (unsigned k = 0; k < a.k(); ++k)
    ctx.axpy(next.privacy_vectors[k], local_coeffs[k], demands[k]);

  std::vector<user_cache> refreshed;
  for (unsigned k = 0; k < a.k(); ++k) {
    const auto decoded = decode(st, k, payload, demands[k]);
    refreshed.push_back(refresh_cache(a, k, st.cache(k), ctx, decoded,
                                      fresh_keys, local_coeffs[k]));
  }
  return scheme_state(a, st.files(), std::move(next), st.mode(),
                      std::move(refreshed));
}

/// d_k = e_{(k mod N)}: user k asks for file k, wrapping when K > N.
inline demand_set unit_demands(unsigned k_users, unsigned n_files) {
  demand_set d(k_users, symbol_vector(n_files, 0));
  for (unsigned k = 0; k < k_users; ++k) d[k][k % n_files] = 1;
  return d;
}

inline demand_set random_demands(const field_context& ctx, unsigned k_users,
                                 unsigned n_files, symbol_rng& rng) {
  demand_set d;
  for (unsigned k = 0; k < k_users; ++k) d.push_back(rng.vector(ctx, n_files));
  return d;
}

}  // namespace splfr
