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

// Places, delivers and decodes the 3-user toy instance, printing each step.

#include <cstdio>
#include <string>

#include "splfr/engine.hpp"
#include "splfr/golden.hpp"

namespace {

std::string bits(const splfr::symbol_vector& v) {
  std::string s;
  for (auto x : v) s += std::to_string(x);
  return s;
}

}  // namespace

int main() {
  using namespace splfr;
  const pda a = parse_pda(kToyPdaText);
  const auto f = field_context::prime(2);
  symbol_rng rng(7);
  const auto lib = library::random(f, 4, 3, rng);
  const auto st = place(a, lib, randomness::generate(f, a.s(), a.k(), 4, 1, rng),
                        scheme_mode::splfr);

  std::printf("%s\n", render_pda(a).c_str());
  for (unsigned n = 0; n < 4; ++n)
    std::printf("W%u = %s\n", n + 1, bits({lib.file(n).begin(), lib.file(n).end()}).c_str());
  for (unsigned k = 0; k < a.k(); ++k) {
    std::printf("user %u cache:", k + 1);
    for (const auto& row : st.cache(k).rows) {
      if (row.is_uncoded()) {
        std::printf(" [");
        for (const auto& p : row.packets) std::printf("%s", bits(p).c_str());
        std::printf("]");
      } else {
        std::printf(" key:%s", bits(row.superposition_key).c_str());
      }
    }
    std::printf("\n");
  }

  const auto d = unit_demands(a.k(), 4);
  const auto x = deliver(st, d);
  for (unsigned s = 0; s < a.s(); ++s)
    std::printf("Y%u = %s\n", s + 1, bits(x.blocks[s]).c_str());
  for (unsigned k = 0; k < a.k(); ++k)
    std::printf("user %u decodes %s\n", k + 1, bits(decode(st, k, x, d[k])).c_str());

  const auto m = measure(st, x);
  std::printf("M = %s, R = %s, %llu symbols sent\n", m.memory.str().c_str(),
              m.load.str().c_str(), static_cast<unsigned long long>(m.tx_symbols));
  return 0;
}
