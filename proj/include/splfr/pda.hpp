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
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "splfr/combinatorics.hpp"
#include "splfr/rational.hpp"

namespace splfr {

/// One cell of a placement delivery array: the star, or an ordinary symbol
/// in [1, S]. The star is its own tag, never the integer 0.
class pda_entry {
 public:
  static constexpr pda_entry star() { return pda_entry(0); }
  static pda_entry ordinary(std::uint32_t s) {
    if (s == 0) throw std::invalid_argument("ordinary symbols are 1-based");
    return pda_entry(s);
  }

  constexpr bool is_star() const { return sym_ == 0; }
  std::uint32_t symbol() const {
    if (is_star()) throw std::logic_error("star entry has no symbol");
    return sym_;
  }

  friend constexpr bool operator==(pda_entry, pda_entry) = default;

 private:
  constexpr explicit pda_entry(std::uint32_t s) : sym_(s) {}
  std::uint32_t sym_;
};

using pda_grid = std::vector<std::vector<pda_entry>>;

class pda_error : public std::invalid_argument {
 public:
  enum class code {
    empty_grid,
    ragged_grid,
    unequal_star_count,
    missing_symbol,
    collision_same_row_or_column,
    missing_star_pair,
  };

  pda_error(code c, const std::string& what)
      : std::invalid_argument(what), code_(c) {}
  code which() const { return code_; }

 private:
  code code_;
};

class pda_parse_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class pda;
inline pda validate(pda_grid grid);

/// A validated (K, F, Z, S) placement delivery array. Rows are packets
/// (F of them), columns are users (K). Indices are 0-based in the API;
/// ordinary symbols stay 1-based.
class pda {
 public:
  unsigned k() const { return k_; }
  unsigned f() const { return f_; }
  unsigned z() const { return z_; }
  unsigned s() const { return s_; }

  pda_entry at(unsigned row, unsigned col) const { return grid_[row][col]; }
  const pda_grid& grid() const { return grid_; }

  /// (row, col) cells holding ordinary symbol s, ordered by row.
  const std::vector<std::pair<unsigned, unsigned>>& occurrences(
      std::uint32_t s) const {
    return occurrences_.at(s - 1);
  }

  /// Number of non-star cells, K(F - Z).
  std::uint64_t ordinary_count() const {
    return static_cast<std::uint64_t>(k_) * (f_ - z_);
  }

  friend bool operator==(const pda& a, const pda& b) {
    return a.grid_ == b.grid_;
  }

 private:
  friend pda validate(pda_grid grid);
  pda() = default;

  unsigned k_ = 0, f_ = 0, z_ = 0, s_ = 0;
  pda_grid grid_;
  std::vector<std::vector<std::pair<unsigned, unsigned>>> occurrences_;
};

/// Checks every PDA condition and derives (K, F, Z, S). S is the largest
/// ordinary symbol; every symbol in [1, S] must occur.
inline pda validate(pda_grid grid) {
  using E = pda_error::code;
  if (grid.empty() || grid.front().empty())
    throw pda_error(E::empty_grid, "PDA grid is empty");
  const auto f = static_cast<unsigned>(grid.size());
  const auto k = static_cast<unsigned>(grid.front().size());
  for (const auto& row : grid)
    if (row.size() != k) throw pda_error(E::ragged_grid, "PDA grid is ragged");

  std::optional<unsigned> z;
  for (unsigned j = 0; j < k; ++j) {
    unsigned stars = 0;
    for (unsigned i = 0; i < f; ++i) stars += grid[i][j].is_star();
    if (z && *z != stars)
      throw pda_error(E::unequal_star_count,
                      "column " + std::to_string(j + 1) + " has " +
                          std::to_string(stars) + " stars, expected " +
                          std::to_string(*z));
    z = stars;
  }

  std::uint32_t s = 0;
  for (const auto& row : grid)
    for (auto e : row)
      if (!e.is_star()) s = std::max(s, e.symbol());

  std::vector<std::vector<std::pair<unsigned, unsigned>>> occ(s);
  for (unsigned i = 0; i < f; ++i)
    for (unsigned j = 0; j < k; ++j)
      if (!grid[i][j].is_star()) occ[grid[i][j].symbol() - 1].emplace_back(i, j);

  for (std::uint32_t sym = 1; sym <= s; ++sym) {
    const auto& cells = occ[sym - 1];
    if (cells.empty())
      throw pda_error(E::missing_symbol,
                      "symbol " + std::to_string(sym) + " does not occur");
    for (std::size_t a = 0; a < cells.size(); ++a) {
      for (std::size_t b = a + 1; b < cells.size(); ++b) {
        const auto [i1, j1] = cells[a];
        const auto [i2, j2] = cells[b];
        if (i1 == i2 || j1 == j2)
          throw pda_error(E::collision_same_row_or_column,
                          "symbol " + std::to_string(sym) +
                              " repeats in a row or column");
        if (!grid[i1][j2].is_star() || !grid[i2][j1].is_star())
          throw pda_error(E::missing_star_pair,
                          "symbol " + std::to_string(sym) +
                              " lacks the star pair at rows " +
                              std::to_string(i1 + 1) + "," +
                              std::to_string(i2 + 1));
      }
    }
  }

  pda out;
  out.k_ = k;
  out.f_ = f;
  out.z_ = *z;
  out.s_ = s;
  out.grid_ = std::move(grid);
  out.occurrences_ = std::move(occ);
  return out;
}

/// g when every ordinary symbol occurs exactly g times; empty when the
/// multiplicities differ or there are no ordinary symbols.
inline std::optional<unsigned> regularity(const pda& a) {
  if (a.s() == 0) return std::nullopt;
  const auto g = a.occurrences(1).size();
  for (std::uint32_t s = 2; s <= a.s(); ++s)
    if (a.occurrences(s).size() != g) return std::nullopt;
  return static_cast<unsigned>(g);
}

/// The Maddah-Ali–Niesen array for K users and parameter t. Row i is the
/// i-th t-subset of users in lexicographic order; the symbol of a non-star
/// cell is 1 + the lexicographic rank of the (t+1)-subset row ∪ {column}.
inline pda man_pda(unsigned k, unsigned t) {
  if (k == 0) throw std::invalid_argument("man_pda: K must be positive");
  if (t > k) throw std::invalid_argument("man_pda: t must be in [0, K]");
  const auto rows = subsets_lex(k, t);
  pda_grid grid(rows.size(), std::vector<pda_entry>(k, pda_entry::star()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    for (unsigned j = 0; j < k; ++j) {
      if (std::binary_search(row.begin(), row.end(), j)) continue;
      auto ext = row;
      ext.insert(std::upper_bound(ext.begin(), ext.end(), j), j);
      grid[i][j] = pda_entry::ordinary(
          static_cast<std::uint32_t>(subset_rank_lex(ext, k) + 1));
    }
  }
  return validate(std::move(grid));
}

/// Relabels ordinary symbols by first occurrence in row-major order, so two
/// arrays that differ only in symbol naming compare equal.
inline pda canonical_relabel(const pda& a) {
  std::map<std::uint32_t, std::uint32_t> relabel;
  pda_grid grid = a.grid();
  for (auto& row : grid)
    for (auto& e : row) {
      if (e.is_star()) continue;
      auto [it, fresh] = relabel.try_emplace(
          e.symbol(), static_cast<std::uint32_t>(relabel.size() + 1));
      e = pda_entry::ordinary(it->second);
    }
  return validate(std::move(grid));
}

struct memory_load_pair {
  rational memory;
  rational load;
};

/// Memory-load pair (1 + Z(N-1)/F, S/F) of the scheme built on `a`.
inline memory_load_pair memory_load(const pda& a, unsigned n_files) {
  if (n_files < 2) throw std::invalid_argument("memory_load: N must be >= 2");
  const std::int64_t f = a.f();
  return {rational(1) + rational(std::int64_t{a.z()} * (n_files - 1), f),
          rational(a.s(), f)};
}

struct symbol_bound {
  rational bound;  // nF / (KF + F - n), n = K(F - Z)
  bool tight;      // S equals the bound
  /// n/F ordinary entries in every row and every symbol occurring n/S
  /// times. Necessary for tightness, not sufficient.
  bool structural_equality;
};

inline symbol_bound symbol_count_bound(const pda& a) {
  const std::int64_t n = static_cast<std::int64_t>(a.ordinary_count());
  const std::int64_t f = a.f();
  const std::int64_t k = a.k();
  const rational bound(n * f, k * f + f - n);

  bool structural = true;
  if (n % f != 0) {
    structural = false;
  } else {
    for (const auto& row : a.grid()) {
      const auto ordinary = std::count_if(row.begin(), row.end(),
                                          [](pda_entry e) { return !e.is_star(); });
      if (ordinary != n / f) structural = false;
    }
  }
  if (a.s() != 0) {
    if (n % a.s() != 0) {
      structural = false;
    } else {
      for (std::uint32_t s = 1; s <= a.s(); ++s)
        if (static_cast<std::int64_t>(a.occurrences(s).size()) != n / a.s())
          structural = false;
    }
  }
  return {bound, rational(a.s()) == bound, structural};
}

/// Smallest F of an F x K array with g-1 stars per row, every symbol
/// occurring g times and the PDA pair conditions: C(K, g-1).
inline std::uint64_t min_subpacketization(unsigned k, unsigned g) {
  if (g < 2 || k < g)
    throw std::invalid_argument("min_subpacketization: need K >= g >= 2");
  return binomial(k, g - 1);
}

struct lsub_params {
  rational memory_coeff;  // M = 1 + memory_coeff * (N - 1)
  rational load;
  std::uint64_t subpacketization;
};

/// Parameters of the low-subpacketization PDA family for K users at memory
/// index t. Needs K > 2, t in [2, K-1] and t | K or (K - t) | K.
inline lsub_params lsub_parameters(unsigned k, unsigned t) {
  if (k <= 2 || t < 2 || t > k - 1 || (k % t != 0 && k % (k - t) != 0))
    throw std::invalid_argument(
        "lsub_parameters: need K > 2, t in [2, K-1], t | K or (K-t) | K");
  const unsigned m = std::min(t, k - t);
  // (t/K) (K/m)^m; K/m is an integer under the divisibility condition.
  const std::uint64_t r = k / m;
  unsigned __int128 power = 1;
  for (unsigned i = 0; i < m; ++i) {
    power *= r;
    if (power > UINT64_MAX) throw std::overflow_error("lsub_parameters");
  }
  const unsigned __int128 num = power * t;
  if (num % k != 0) throw std::logic_error("lsub_parameters: non-integral F");
  return {rational(t, k), rational(k - t, t),
          static_cast<std::uint64_t>(num / k)};
}

/// Text format: `PDA K=<k> F=<f>` then F rows of K tokens (`*` or a
/// positive decimal symbol).
inline std::string render_pda(const pda& a) {
  std::ostringstream os;
  os << "PDA K=" << a.k() << " F=" << a.f() << '\n';
  for (const auto& row : a.grid()) {
    for (unsigned j = 0; j < row.size(); ++j) {
      if (j) os << ' ';
      if (row[j].is_star())
        os << '*';
      else
        os << row[j].symbol();
    }
    os << '\n';
  }
  return os.str();
}

inline pda parse_pda(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw pda_parse_error("missing PDA header");
  unsigned k = 0, f = 0;
  {
    std::istringstream hs(line);
    std::string magic, kt, ft, extra;
    if (!(hs >> magic >> kt >> ft) || (hs >> extra) || magic != "PDA" ||
        !kt.starts_with("K=") || !ft.starts_with("F="))
      throw pda_parse_error("malformed header: '" + line + "'");
    try {
      std::size_t pos = 0;
      k = static_cast<unsigned>(std::stoul(kt.substr(2), &pos));
      if (pos != kt.size() - 2) throw pda_parse_error("");
      f = static_cast<unsigned>(std::stoul(ft.substr(2), &pos));
      if (pos != ft.size() - 2) throw pda_parse_error("");
    } catch (const std::exception&) {
      throw pda_parse_error("malformed header: '" + line + "'");
    }
    if (k == 0 || f == 0) throw pda_parse_error("K and F must be positive");
  }
  pda_grid grid;
  for (unsigned i = 0; i < f; ++i) {
    if (!next_line())
      throw pda_parse_error("expected " + std::to_string(f) + " rows, got " +
                            std::to_string(i));
    std::istringstream rs(line);
    std::vector<pda_entry> row;
    std::string tok;
    while (rs >> tok) {
      if (tok == "*") {
        row.push_back(pda_entry::star());
        continue;
      }
      if (tok.find_first_not_of("0123456789") != std::string::npos)
        throw pda_parse_error("bad token '" + tok + "' in row " +
                              std::to_string(i + 1));
      unsigned long v = 0;
      try {
        v = std::stoul(tok);
      } catch (const std::exception&) {
        throw pda_parse_error("bad token '" + tok + "'");
      }
      if (v == 0 || v > UINT32_MAX)
        throw pda_parse_error("symbols must be positive, row " +
                              std::to_string(i + 1));
      row.push_back(pda_entry::ordinary(static_cast<std::uint32_t>(v)));
    }
    if (row.size() != k)
      throw pda_parse_error("row " + std::to_string(i + 1) + " has " +
                            std::to_string(row.size()) + " tokens, expected " +
                            std::to_string(k));
    grid.push_back(std::move(row));
  }
  if (next_line()) throw pda_parse_error("trailing content after last row");
  return validate(std::move(grid));
}

}  // namespace splfr
