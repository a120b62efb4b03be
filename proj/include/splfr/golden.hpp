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
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "splfr/engine.hpp"
#include "splfr/pda.hpp"

namespace splfr {

/// The 2-regular (3,3,1,3) array used by the worked toy example.
inline constexpr const char* kToyPdaText =
    "PDA K=3 F=3\n"
    "* 1 2\n"
    "1 * 3\n"
    "2 3 *\n";

struct golden_report {
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, bool>> checks;
  rational memory;
  rational load;
  std::uint64_t tx_symbols = 0;

  bool pass() const {
    for (const auto& [name, ok] : checks)
      if (!ok) return false;
    return !checks.empty();
  }
};

/// Runs the toy walkthrough (N=4 files over GF(2), B=3, K=3 users) with
/// the given seed and checks every step against its closed form.
inline golden_report golden_toy(std::uint64_t seed = 7) {
  golden_report rep;
  rep.seed = seed;
  auto check = [&](std::string name, bool ok) {
    rep.checks.emplace_back(std::move(name), ok);
  };

  const pda a = parse_pda(kToyPdaText);
  check("pda parameters (3,3,1,3)",
        a.k() == 3 && a.f() == 3 && a.z() == 1 && a.s() == 3);
  check("pda is 2-regular", regularity(a) == std::optional<unsigned>(2));
  check("man_pda(3,1) matches up to relabeling",
        canonical_relabel(man_pda(3, 1)) == canonical_relabel(a));

  const auto gf2 = field_context::prime(2);
  const unsigned n_files = 4;
  const std::size_t b = 3;
  symbol_rng rng(seed);
  const library lib = library::random(gf2, n_files, b, rng);
  randomness rnd = randomness::generate(gf2, a.s(), a.k(), n_files, b / a.f(), rng);
  const scheme_state st = place(a, lib, rnd, scheme_mode::splfr);

  // Cache table: user k holds W_{[4],k} uncoded and the keys T_{i,k} + V_s
  // at the listed (row, symbol) cells (1-based).
  constexpr std::array<std::array<std::pair<unsigned, std::uint32_t>, 2>, 3>
      kCodedCells = {{{{{2, 1}, {3, 2}}}, {{{1, 1}, {3, 3}}}, {{{1, 2}, {2, 3}}}}};
  bool layout = true;
  for (unsigned k = 0; k < 3; ++k) {
    const auto& rows = st.cache(k).rows;
    layout &= rows[k].is_uncoded() && rows[k].packets.size() == n_files;
    for (unsigned n = 0; n < n_files && layout; ++n)
      layout &= std::equal(rows[k].packets[n].begin(), rows[k].packets[n].end(),
                           lib.packet(n, k, 3).begin());
    for (auto [row, sym] : kCodedCells[k]) {
      const unsigned i = row - 1;
      layout &= !rows[i].is_uncoded() && a.at(i, k) == pda_entry::ordinary(sym);
      symbol_vector expect = privacy_key(st, i, k);
      gf2.add_into(expect, st.keys().security_keys[sym - 1]);
      layout &= rows[i].superposition_key == expect;
    }
  }
  check("cache layout matches the cache table", layout);
  check("cache size is 6 packets per user",
        st.cache(0).size_in_symbols() == 6 && st.cache(1).size_in_symbols() == 6 &&
            st.cache(2).size_in_symbols() == 6);

  const demand_set units = unit_demands(3, n_files);
  const delivery_payload x = deliver(st, units);
  // Y_1 = V_1 + (W_{1,2} + T_{2,1}) + (W_{2,1} + T_{1,2}), and likewise for
  // Y_2 over cells (1,3),(3,1) and Y_3 over (2,3),(3,2).
  constexpr std::array<std::array<unsigned, 4>, 3> kSignals = {
      {{2, 1, 1, 2}, {3, 1, 1, 3}, {3, 2, 2, 3}}};
  bool signals = x.blocks.size() == 3;
  for (unsigned s = 0; s < 3 && signals; ++s) {
    const auto [i1, j1, i2, j2] = kSignals[s];
    symbol_vector y = st.keys().security_keys[s];
    auto add_term = [&](unsigned row, unsigned user) {
      const auto p = lib.packet(user - 1, row - 1, 3);
      gf2.add_into(y, p);
      gf2.add_into(y, privacy_key(st, row - 1, user - 1));
    };
    add_term(i1, j1);
    add_term(i2, j2);
    signals &= y == x.blocks[s];
  }
  check("signals Y_1..Y_3 match their closed forms", signals);

  bool decoded = true;
  for (unsigned k = 0; k < 3; ++k)
    decoded &= decode(st, k, x, units[k]) ==
               symbol_vector(lib.file(k).begin(), lib.file(k).end());
  check("every user decodes its file", decoded);

  const measurement meas = measure(st, x);
  rep.memory = meas.memory;
  rep.load = meas.load;
  rep.tx_symbols = meas.tx_symbols;
  check("(M, R) = (2, 1)", meas.memory == 2 && meas.load == 1);
  check("15 transmitted symbols", meas.tx_symbols == 15);

  // Every one of the 2^12 demand tuples over GF(2)^4.
  bool all = true;
  for (std::uint32_t code = 0; code < (1u << 12) && all; ++code) {
    demand_set d(3, symbol_vector(n_files, 0));
    for (unsigned k = 0; k < 3; ++k)
      for (unsigned n = 0; n < n_files; ++n) d[k][n] = (code >> (4 * k + n)) & 1u;
    const delivery_payload xd = deliver(st, d);
    for (unsigned k = 0; k < 3; ++k)
      all &= decode(st, k, xd, d[k]) == lib.combine(d[k]);
  }
  check("all 4096 demand tuples decode", all);
  return rep;
}

}  // namespace splfr
