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

// Prints the MAN corner points next to the PDA and cut-set lower bounds.
// Usage: demo_tradeoff_table [N] [K]

#include <cstdio>
#include <cstdlib>

#include "splfr/tradeoff.hpp"

int main(int argc, char** argv) {
  using namespace splfr;
  const unsigned n = argc > 1 ? static_cast<unsigned>(std::atoi(argv[1])) : 4;
  const unsigned k = argc > 2 ? static_cast<unsigned>(std::atoi(argv[2])) : 3;
  if (n < 2 || k < 1) {
    std::fprintf(stderr, "need N >= 2 and K >= 1\n");
    return 2;
  }
  std::printf("%4s %10s %10s %10s %10s\n", "t", "M", "R_MAN", "pda-bound", "cut-set");
  unsigned t = 0;
  for (const auto& p : man_points(n, k))
    std::printf("%4u %10s %10s %10s %10s\n", t++, p.m.str().c_str(), p.r.str().c_str(),
                pda_lower_bound(n, k, p.m).str().c_str(),
                cutset_bound(n, k, p.m).str().c_str());
  return 0;
}
