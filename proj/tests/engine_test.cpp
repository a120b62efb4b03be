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

#include <gtest/gtest.h>

#include <vector>

#include "splfr/combinatorics.hpp"
#include "splfr/engine.hpp"

namespace splfr {
namespace {

const pda& toy() {
  static const pda a = parse_pda("PDA K=3 F=3\n* 1 2\n1 * 3\n2 3 *\n");
  return a;
}

// Σ_n d_n · W_n computed straight from the plaintext files.
symbol_vector direct(const library& lib, const symbol_vector& d) {
  const auto& f = lib.field();
  symbol_vector out(lib.file_length(), 0);
  for (unsigned n = 0; n < lib.n_files(); ++n)
    for (std::size_t b = 0; b < out.size(); ++b)
      out[b] = f.add(out[b], f.mul(d[n], lib.file(n)[b]));
  return out;
}

struct instance {
  library lib;
  randomness rnd;
};

instance make(const pda& a, const field_context& f, unsigned n, std::size_t b,
              std::uint64_t seed) {
  symbol_rng rng(seed);
  auto lib = library::random(f, n, b, rng);
  auto rnd = randomness::generate(f, a.s(), a.k(), n, b / a.f(), rng);
  return {std::move(lib), std::move(rnd)};
}

TEST(Engine, SplitIntoPackets) {
  const symbol_vector file{1, 0, 1};
  const auto parts = split(file, 3);
  ASSERT_EQ(parts.size(), 3u);
  for (unsigned i = 0; i < 3; ++i) EXPECT_EQ(parts[i], symbol_vector{file[i]});
  EXPECT_THROW(split(file, 2), scheme_error);
  EXPECT_THROW(split(file, 0), scheme_error);
}

TEST(Engine, ModeFlags) {
  EXPECT_TRUE(uses_security_keys(scheme_mode::splfr));
  EXPECT_TRUE(uses_privacy_keys(scheme_mode::splfr));
  EXPECT_FALSE(uses_security_keys(scheme_mode::plfr));
  EXPECT_FALSE(uses_privacy_keys(scheme_mode::slfr));
  for (auto m : {scheme_mode::splfr, scheme_mode::plfr, scheme_mode::slfr, scheme_mode::lfr})
    EXPECT_EQ(parse_mode(to_string(m)), m);
  EXPECT_THROW(parse_mode("sfr"), scheme_error);
}

TEST(Engine, RngIsDeterministicAndInRange) {
  symbol_rng a(11), b(11);
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.uniform(3);
    EXPECT_EQ(x, b.uniform(3));
    EXPECT_LT(x, 3u);
  }
}

TEST(Engine, ToyCachesMatchLayout) {
  const auto f = field_context::prime(2);
  auto [lib, rnd] = make(toy(), f, 4, 3, 7);
  const auto st = place(toy(), lib, rnd, scheme_mode::splfr);
  // User 1: all four files' first packets, then T_{2,1}+V_1 and T_{3,1}+V_2.
  const auto& z1 = st.cache(0);
  ASSERT_EQ(z1.rows.size(), 3u);
  ASSERT_TRUE(z1.rows[0].is_uncoded());
  for (unsigned n = 0; n < 4; ++n)
    EXPECT_EQ(z1.rows[0].packets[n], symbol_vector{lib.file(n)[0]});
  for (auto [row, sym] : {std::pair{1u, 1u}, std::pair{2u, 2u}}) {
    ASSERT_FALSE(z1.rows[row].is_uncoded());
    // T_{i,1} = XOR of the packets W_{n,i} selected by p_1.
    symbol t = 0;
    for (unsigned n = 0; n < 4; ++n)
      if (rnd.privacy_vectors[0][n]) t ^= lib.file(n)[row];
    EXPECT_EQ(privacy_key(st, row, 0), symbol_vector{t});
    EXPECT_EQ(z1.rows[row].superposition_key,
              symbol_vector{t ^ rnd.security_keys[sym - 1][0]});
  }
  for (unsigned k = 0; k < 3; ++k) EXPECT_EQ(st.cache(k).size_in_symbols(), 6u);
  EXPECT_THROW(privacy_key(st, 0, 0), scheme_error);
}

TEST(Engine, ToySignalsAndDecoding) {
  const auto f = field_context::prime(2);
  auto [lib, rnd] = make(toy(), f, 4, 3, 19);
  const auto st = place(toy(), lib, rnd, scheme_mode::splfr);
  const auto d = unit_demands(3, 4);
  const auto x = deliver(st, d);
  ASSERT_EQ(x.blocks.size(), 3u);
  // Y_1 = V_1 + (W_{1,2} + T_{2,1}) + (W_{2,1} + T_{1,2}).
  const symbol y1 = rnd.security_keys[0][0] ^ lib.file(0)[1] ^ privacy_key(st, 1, 0)[0] ^
                    lib.file(1)[0] ^ privacy_key(st, 0, 1)[0];
  EXPECT_EQ(x.blocks[0], symbol_vector{y1});
  for (unsigned k = 0; k < 3; ++k) {
    symbol_vector q = rnd.privacy_vectors[k];
    q[k] ^= 1;
    EXPECT_EQ(x.coeff_vectors[k], q);
  }
  const auto w1 = decode(st, 0, x, d[0]);
  EXPECT_EQ(w1, symbol_vector(lib.file(0).begin(), lib.file(0).end()));
  for (unsigned k = 0; k < 3; ++k) EXPECT_EQ(decode(st, k, x, d[k]), direct(lib, d[k]));

  const auto m = measure(st, x);
  EXPECT_EQ(m.memory, rational(2));
  EXPECT_EQ(m.load, rational(1));
  EXPECT_EQ(m.tx_symbols, 15u);
  EXPECT_EQ(m.block_symbols, 3u);
  EXPECT_EQ(m.coefficient_symbols, 12u);
  EXPECT_EQ(m.randomness_symbols, 3u + 12u);
  EXPECT_DOUBLE_EQ(m.randomness_bits(), 15.0);
}

TEST(Engine, DecodeUsesOnlyCachePayloadAndDemand) {
  const auto f = field_context::prime(3);
  const pda a = man_pda(4, 2);
  auto [lib, rnd] = make(a, f, 3, 12, 5);
  const auto st = place(a, lib, rnd, scheme_mode::splfr);
  symbol_rng rng(1);
  const auto d = random_demands(f, 4, 3, rng);
  const auto x = deliver(st, d);
  for (unsigned k = 0; k < 4; ++k) {
    const user_cache z = st.cache(k);
    const delivery_payload copy = x;
    EXPECT_EQ(decode(a, k, z, f, copy, d[k]), direct(lib, d[k]));
  }
}

TEST(Engine, DecodeMatchesDirectCombinationRandomized) {
  int runs = 0;
  for (unsigned n = 2; n <= 5; ++n)
    for (unsigned k = 2; k <= 4; ++k)
      for (std::uint32_t q : {2u, 3u})
        for (unsigned t = 0; t <= k; ++t) {
          const pda a = man_pda(k, t);
          const auto f = field_context::prime(q);
          for (std::uint64_t seed = 0; seed < 6; ++seed) {
            const std::size_t b = a.f() * (1 + seed % 2);
            auto [lib, rnd] = make(a, f, n, b, seed * 7919 + n * 31 + k);
            for (auto mode : {scheme_mode::splfr, scheme_mode::plfr, scheme_mode::slfr,
                              scheme_mode::lfr}) {
              const auto st = place(a, lib, rnd, mode);
              symbol_rng rng(seed);
              const auto d = random_demands(f, k, n, rng);
              const auto x = deliver(st, d);
              for (unsigned u = 0; u < k; ++u)
                ASSERT_EQ(decode(st, u, x, d[u]), direct(lib, d[u]))
                    << "N=" << n << " K=" << k << " q=" << q << " t=" << t;
              ++runs;
            }
          }
        }
  EXPECT_GT(runs, 1000);
}

TEST(Engine, BinaryExtensionFieldDecodes) {
  const auto f = field_context::binary(4);
  const pda a = man_pda(5, 2);
  auto [lib, rnd] = make(a, f, 3, 20, 3);
  const auto st = place(a, lib, rnd, scheme_mode::splfr);
  symbol_rng rng(4);
  const auto d = random_demands(f, 5, 3, rng);
  const auto x = deliver(st, d);
  for (unsigned u = 0; u < 5; ++u) EXPECT_EQ(decode(st, u, x, d[u]), direct(lib, d[u]));
}

TEST(Engine, LfrModeDegeneratesToPlainPlacement) {
  const auto f = field_context::prime(2);
  auto [lib, rnd] = make(toy(), f, 4, 3, 1);
  const auto st = place(toy(), lib, rnd, scheme_mode::lfr);
  for (unsigned k = 0; k < 3; ++k)
    for (const auto& row : st.cache(k).rows)
      if (!row.is_uncoded()) { EXPECT_EQ(row.superposition_key, symbol_vector(1, 0)); }
  const auto d = unit_demands(3, 4);
  const auto x = deliver(st, d);
  for (unsigned k = 0; k < 3; ++k) EXPECT_EQ(x.coeff_vectors[k], d[k]);
  EXPECT_EQ(measure(st, x).randomness_symbols, 0u);
}

TEST(Engine, SlfrSendsDemandsInTheClear) {
  const auto f = field_context::prime(3);
  const pda a = man_pda(3, 1);
  auto [lib, rnd] = make(a, f, 4, 3, 2);
  const auto st = place(a, lib, rnd, scheme_mode::slfr);
  const auto d = unit_demands(3, 4);
  const auto x = deliver(st, d);
  for (unsigned k = 0; k < 3; ++k) EXPECT_EQ(x.coeff_vectors[k], d[k]);
  EXPECT_EQ(st.keys().security_keys, rnd.security_keys);
  EXPECT_EQ(measure(st, x).randomness_symbols, 3u);
}

TEST(Engine, PlfrDropsSecurityKeys) {
  const auto f = field_context::prime(2);
  auto [lib, rnd] = make(toy(), f, 4, 3, 2);
  const auto st = place(toy(), lib, rnd, scheme_mode::plfr);
  for (const auto& v : st.keys().security_keys) EXPECT_EQ(v, symbol_vector(1, 0));
  EXPECT_EQ(st.keys().privacy_vectors, rnd.privacy_vectors);
  EXPECT_EQ(measure(st, deliver(st, unit_demands(3, 4))).randomness_symbols, 12u);
}

TEST(Engine, RandomnessBudgetOfManArrays) {
  const auto f = field_context::binary(2);
  for (unsigned k = 2; k <= 5; ++k)
    for (unsigned t = 0; t <= k; ++t) {
      const pda a = man_pda(k, t);
      const unsigned n = 3;
      const std::size_t b = 2 * a.f();
      auto [lib, rnd] = make(a, f, n, b, k * 10 + t);
      const auto st = place(a, lib, rnd, scheme_mode::splfr);
      const auto m = measure(st, deliver(st, unit_demands(k, n)));
      const std::uint64_t expected = binomial(k, t + 1) * b / binomial(k, t) + n * k;
      EXPECT_EQ(m.randomness_symbols, expected);
      EXPECT_DOUBLE_EQ(m.randomness_bits(), 2.0 * static_cast<double>(expected));
      EXPECT_EQ(m.randomness_bits_expr(), std::to_string(expected) + "*log2(4)");
      EXPECT_EQ(m.memory, rational(1) + rational(t * (n - 1), k));
      EXPECT_EQ(m.load, rational(k - t, t + 1));
    }
}

TEST(Engine, ShapeErrors) {
  const auto f = field_context::prime(2);
  auto [lib, rnd] = make(toy(), f, 4, 3, 1);
  randomness short_keys = rnd;
  short_keys.security_keys.pop_back();
  EXPECT_THROW(place(toy(), lib, short_keys, scheme_mode::splfr), scheme_error);
  symbol_rng rng(1);
  const auto odd = library::random(f, 4, 4, rng);
  EXPECT_THROW(place(toy(), odd, rnd, scheme_mode::splfr), scheme_error);
  const auto st = place(toy(), lib, rnd, scheme_mode::splfr);
  EXPECT_THROW(deliver(st, unit_demands(2, 4)), scheme_error);
  EXPECT_THROW(deliver(st, unit_demands(3, 3)), scheme_error);
  demand_set bad = unit_demands(3, 4);
  bad[0][0] = 2;
  EXPECT_THROW(deliver(st, bad), scheme_error);
  EXPECT_THROW(library(f, {{0, 1}, {1}}), scheme_error);
  EXPECT_THROW(library(f, {{0, 2}}), scheme_error);
}

// Three rounds of key updates: each refreshed state must equal a fresh
// placement with the accumulated keys, and every round must decode.
TEST(Engine, MultiRoundUpdateMatchesFreshPlacement) {
  for (auto mode : {scheme_mode::splfr, scheme_mode::plfr, scheme_mode::slfr, scheme_mode::lfr}) {
    for (std::uint32_t q : {2u, 5u}) {
      const auto f = field_context::prime(q);
      const pda a = man_pda(4, 2);
      const unsigned n = 3;
      auto [lib, rnd] = make(a, f, n, 12, q + 100);
      auto st = place(a, lib, rnd, mode);
      randomness acc = st.keys();
      symbol_rng rng(q);
      for (int round = 0; round < 3; ++round) {
        const auto d = random_demands(f, 4, n, rng);
        const auto x = deliver(st, d);
        for (unsigned u = 0; u < 4; ++u) ASSERT_EQ(decode(st, u, x, d[u]), direct(lib, d[u]));
        std::vector<symbol_vector> fresh;
        for (unsigned s = 0; s < a.s(); ++s) fresh.push_back(rng.vector(f, 2));
        std::vector<symbol> c;
        for (unsigned u = 0; u < 4; ++u) c.push_back(rng.uniform(q));
        if (uses_security_keys(mode))
          for (unsigned s = 0; s < a.s(); ++s) f.add_into(acc.security_keys[s], fresh[s]);
        if (uses_privacy_keys(mode))
          for (unsigned u = 0; u < 4; ++u) f.axpy(acc.privacy_vectors[u], c[u], d[u]);
        st = update_round(st, d, fresh, c);
        const auto scratch = place(a, lib, acc, mode);
        ASSERT_EQ(st.keys(), scratch.keys());
        ASSERT_EQ(st.caches(), scratch.caches()) << "round " << round;
      }
      const auto d = unit_demands(4, n);
      const auto x = deliver(st, d);
      for (unsigned u = 0; u < 4; ++u) EXPECT_EQ(decode(st, u, x, d[u]), direct(lib, d[u]));
    }
  }
}

TEST(Engine, RefreshRejectsWrongShapes) {
  const auto f = field_context::prime(2);
  auto [lib, rnd] = make(toy(), f, 4, 3, 1);
  const auto st = place(toy(), lib, rnd, scheme_mode::splfr);
  const auto d = unit_demands(3, 4);
  EXPECT_THROW(update_round(st, d, {}, {1, 1, 1}), scheme_error);
  EXPECT_THROW(update_round(st, d, {{1}, {1}, {1}}, {1}), scheme_error);
  EXPECT_THROW(update_round(st, d, {{1, 1}, {1, 1}, {1, 1}}, {1, 1, 1}), scheme_error);
}

}  // namespace
}  // namespace splfr
