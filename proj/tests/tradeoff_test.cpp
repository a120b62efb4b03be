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

#include <filesystem>
#include <fstream>
#include <string>

#include "splfr/plot.hpp"
#include "splfr/tradeoff.hpp"

namespace splfr {
namespace {

using pts = std::vector<curve_point>;

TEST(Rational, ArithmeticAndOverflow) {
  EXPECT_EQ(rational(6, -4), rational(-3, 2));
  EXPECT_EQ(rational(1, 3) + rational(1, 6), rational(1, 2));
  EXPECT_EQ(rational(2, 3) * rational(9, 4), rational(3, 2));
  EXPECT_EQ(rational(1) / rational(-3), rational(-1, 3));
  EXPECT_LT(rational(1, 3), rational(1, 2));
  EXPECT_EQ(rational(7, 2).str(), "7/2");
  EXPECT_EQ(rational(4, 2).str(), "2");
  EXPECT_THROW(rational(1, 0), std::domain_error);
  EXPECT_THROW(rational(1) / rational(0), std::domain_error);
  EXPECT_THROW(rational(INT64_MAX) + rational(1), rational_overflow);
  EXPECT_THROW(rational(INT64_MAX / 2 + 1) * rational(2), rational_overflow);
  EXPECT_EQ(exact_string(to_big(rational(-5, 7))), "-5/7");
}

TEST(Tradeoff, ManPointsSmall) {
  EXPECT_EQ(man_points(2, 2), (pts{{1, 2}, {rational(3, 2), rational(1, 2)}, {2, 0}}));
  EXPECT_EQ(man_curve(2, 2).corners(), man_points(2, 2));
  for (unsigned k = 1; k <= 6; ++k) {
    EXPECT_EQ(man_points(5, k).front(), (curve_point{1, rational(k)}));
    EXPECT_EQ(man_points(5, k).back(), (curve_point{5, 0}));
  }
}

TEST(Tradeoff, UncodedPoints) {
  EXPECT_EQ(uncoded_points(4, 2)[1], (curve_point{2, rational(1, 2)}));
  EXPECT_EQ(uncoded_points(4, 2).front(), (curve_point{0, 2}));
  EXPECT_EQ(uncoded_points(4, 2).back(), (curve_point{4, 0}));
}

TEST(Tradeoff, EveryManPointIsACorner) {
  for (unsigned k = 1; k <= 20; ++k)
    for (unsigned n : {2u, 3u, 7u, 20u}) EXPECT_EQ(man_curve(n, k).corners(), man_points(n, k));
}

TEST(Tradeoff, EnvelopeDropsCollinearAndDominated) {
  const auto c = lower_convex_envelope(pts{{0, 2}, {1, 1}, {2, 0}});
  EXPECT_EQ(c.corners(), (pts{{0, 2}, {2, 0}}));
  const auto d = lower_convex_envelope(pts{{2, 0}, {0, 4}, {1, 3}, {1, 1}, {1, 2}});
  EXPECT_EQ(d.corners(), (pts{{0, 4}, {1, 1}, {2, 0}}));
  EXPECT_THROW(lower_convex_envelope(pts{}), std::invalid_argument);
}

TEST(Tradeoff, CurveEvaluation) {
  const auto c = man_curve(2, 2);
  EXPECT_EQ(c(1), rational(2));
  EXPECT_EQ(c(rational(5, 4)), rational(5, 4));
  EXPECT_EQ(c(rational(7, 4)), rational(1, 4));
  EXPECT_THROW(c(rational(1, 2)), std::domain_error);
  EXPECT_THROW(c(3), std::domain_error);
}

TEST(Tradeoff, PdaLowerBoundMeetsManPoints) {
  for (unsigned k = 1; k <= 20; ++k)
    for (unsigned n : {2u, k, 2 * k}) {
      if (n < 2) continue;
      for (const auto& p : man_points(n, k)) EXPECT_EQ(pda_lower_bound(n, k, p.m), p.r);
      EXPECT_EQ(pda_lower_bound(n, k, 1), rational(k));
      EXPECT_EQ(pda_lower_bound(n, k, rational(n)), rational(0));
    }
  EXPECT_THROW(pda_lower_bound(3, 2, rational(1, 2)), std::domain_error);
  EXPECT_THROW(pda_lower_bound(3, 2, 4), std::domain_error);
}

TEST(Tradeoff, CutsetBound) {
  for (rational m : {rational(1), rational(3, 2), rational(2)})
    EXPECT_EQ(cutset_bound(2, 2, m), rational(2) - m);
  EXPECT_EQ(cutset_bound(10, 10, 1), rational(25, 9));
  EXPECT_EQ(cutset_term(10, 5, 1), rational(25, 9));
  EXPECT_EQ(cutset_bound(10, 2, 1), rational(16, 9));
  for (unsigned n = 2; n <= 12; ++n) EXPECT_EQ(cutset_bound(n, n, rational(n)), rational(0));
}

TEST(Tradeoff, FBound) {
  for (unsigned n = 2; n <= 20; ++n) {
    EXPECT_EQ(f_bound(n, rational(n)), rational(0));
    for (unsigned u = 1; u <= n / 2; ++u) {
      const rational m(n, 2 * u + 1);
      EXPECT_EQ(f_bound(n, m), rational(n, n - 1) * rational(u * (u + 1), 2 * u + 1));
      EXPECT_EQ(f_bound(n, m), cutset_term(n, u, m));
    }
  }
  EXPECT_THROW(f_bound(4, rational(1, 2)), std::domain_error);
}

TEST(Tradeoff, BoundsConsistency) {
  for (unsigned n = 2; n <= 20; ++n)
    for (unsigned k : {1u, 2u, n, n + 3}) {
      const auto b = bounds_check(n, k, 200);
      EXPECT_TRUE(b.pass()) << n << "," << k;
    }
}

TEST(Tradeoff, TableCurves) {
  for (unsigned n = 2; n <= 8; ++n)
    for (unsigned k = 1; k <= 8; ++k) {
      const auto sec = scheme_curve(curve_scheme::security_key, n, k);
      EXPECT_EQ(sec.corners(), man_points<big_rational>(n, k));
      const auto v = scheme_curve(curve_scheme::virtual_users, n, k);
      EXPECT_EQ(v.corners().back(), (big_point{n, 0}));
      EXPECT_EQ(scheme_curve(curve_scheme::yma, n, k).corners(),
                scheme_curve(curve_scheme::wsjtc, n, k).corners());
    }
  const auto yma = scheme_curve(curve_scheme::yma, 2, 2);
  EXPECT_EQ(yma(1), big_rational(1, 2));
  const auto plfr = scheme_curve(curve_scheme::privacy_key_plfr, 4, 3);
  EXPECT_EQ(plfr.corners().front(), (big_point{0, 4}));
  EXPECT_EQ(parse_scheme("privkey-pfr"), curve_scheme::privacy_key_pfr);
  EXPECT_THROW(parse_scheme("nope"), std::invalid_argument);
  for (auto s : {curve_scheme::splfr, curve_scheme::security_key, curve_scheme::privacy_key_pfr,
                 curve_scheme::privacy_key_plfr, curve_scheme::yma, curve_scheme::wsjtc,
                 curve_scheme::virtual_users})
    EXPECT_EQ(parse_scheme(scheme_tag(s)), s);
}

TEST(Tradeoff, CurveCoincidencesLargeN) {
  const big_rational lo = 1, hi = 30;
  const auto sp = scheme_curve(curve_scheme::splfr, 30, 10);
  EXPECT_EQ(sp.corners(), scheme_curve(curve_scheme::security_key, 30, 10).corners());
  for (auto s : {curve_scheme::privacy_key_pfr, curve_scheme::privacy_key_plfr}) {
    const auto c = scheme_curve(s, 30, 10);
    EXPECT_TRUE(curves_coincide(sp, c, lo, hi));
    EXPECT_EQ(c.corners_in(lo, hi), sp.corners());
  }
}

TEST(Tradeoff, CurveCoincidencesSmallN) {
  const unsigned n = 10, k = 30;
  const big_rational from = 1 + big_rational(k - n + 1) * (n - 1) / k;
  const auto sp = scheme_curve(curve_scheme::splfr, n, k);
  for (auto s : {curve_scheme::privacy_key_pfr, curve_scheme::privacy_key_plfr}) {
    const auto c = scheme_curve(s, n, k);
    EXPECT_TRUE(curves_coincide(sp, c, from, big_rational(n)));
    EXPECT_FALSE(curves_coincide(sp, c, big_rational(1), big_rational(n)));
  }
}

TEST(Tradeoff, RatioExamples) {
  const auto two = ratio_checks(2, 2);
  EXPECT_EQ(two.cutset.value, rational(2));
  EXPECT_EQ(two.cutset.at, rational(1));
  EXPECT_TRUE(two.pass());
  const auto six = ratio_checks(6, 3);
  EXPECT_TRUE(six.vs_uncoded.applicable);
  EXPECT_LE(six.vs_uncoded.value, rational(2));
  const auto gap = ratio_checks(4, 8);
  EXPECT_TRUE(gap.gap.applicable);
  EXPECT_LT(gap.gap.value, rational(8));
  EXPECT_FALSE(gap.vs_uncoded.applicable);
  for (unsigned n : {5u, 10u})
    for (unsigned k : {3u, 5u, 12u}) {
      const auto r = ratio_checks(n, k, 100);
      EXPECT_LE(r.slope.value, rational(1));
      EXPECT_TRUE(r.pass());
    }
}

TEST(Tradeoff, UncodedRatioThresholds) {
  EXPECT_EQ(uncoded_ratio_threshold(6, 3), rational(2));
  EXPECT_EQ(uncoded_ratio_threshold(4, 3), rational(5, 2));
  EXPECT_EQ(uncoded_ratio_threshold(3, 3), rational(3));
  EXPECT_FALSE(uncoded_ratio_threshold(2, 2));
  EXPECT_FALSE(uncoded_ratio_threshold(2, 3));
}

TEST(Tradeoff, MemoryGrid) {
  const auto g = memory_grid(1, 2, 4, {rational(4, 3)}, true, false);
  EXPECT_EQ(g, (std::vector<rational>{1, rational(5, 4), rational(4, 3), rational(3, 2),
                                      rational(7, 4)}));
  EXPECT_EQ(cutset_breakpoints(4),
            (std::vector<rational>{rational(4, 3), 4, rational(4, 5), rational(4, 3)}));
}

TEST(Tradeoff, SubpacketizationExamples) {
  auto r = subpacketization_compare(4, 2);
  EXPECT_EQ(r.b_man, 6u);
  EXPECT_EQ(r.b_lsub, 2u);
  EXPECT_EQ(r.r_man, rational(2, 3));
  EXPECT_EQ(r.r_lsub, rational(1));
  EXPECT_TRUE(r.load_identity);
  EXPECT_TRUE(r.stirling_holds);
  r = subpacketization_compare(6, 3);
  EXPECT_EQ(r.b_man, 20u);
  EXPECT_EQ(r.b_lsub, 4u);
  r = subpacketization_compare(6, 2);
  EXPECT_EQ(r.r_man, rational(4, 3));
  EXPECT_EQ(r.r_lsub, rational(2));
  EXPECT_TRUE(r.load_identity);
  EXPECT_THROW(subpacketization_compare(6, 4), std::invalid_argument);
  EXPECT_THROW(subpacketization_compare(6, 1), std::invalid_argument);
}

TEST(Tradeoff, StirlingFactorBoundsAreOnTheSafeSide) {
  EXPECT_LT(to_double(detail::pi_lower()), std::numbers::pi);
  EXPECT_LT(to_double(detail::e_third_lower()), std::exp(1.0 / 3));
  EXPECT_GT(to_double(detail::e_third_lower()), std::exp(1.0 / 3) - 1e-6);
  for (unsigned k = 3; k <= 12; ++k)
    for (unsigned t = 2; t < k; ++t)
      if (k % t == 0) {
        const auto r = subpacketization_compare(k, t);
        EXPECT_TRUE(r.stirling_holds);
        EXPECT_GE(static_cast<double>(r.b_man), r.stirling_factor * r.b_lsub);
      }
}

TEST(Plot, EmitCurvesWritesFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "splfr_plot_test";
  std::filesystem::remove_all(dir);
  const std::vector<curve_scheme> schemes{curve_scheme::splfr, curve_scheme::yma,
                                          curve_scheme::virtual_users};
  const auto out = emit_curves(3, 4, schemes, dir);
  std::size_t corners = 0;
  for (auto s : schemes) corners += scheme_curve(s, 3, 4).corners().size();
  EXPECT_EQ(out.curve_rows, corners);
  std::ifstream csv(out.csv);
  std::string line;
  std::size_t lines = 0;
  std::getline(csv, line);
  EXPECT_EQ(line, "scheme,M,R,M_exact,R_exact");
  while (std::getline(csv, line)) ++lines;
  EXPECT_EQ(lines, corners);
  std::ifstream svg(out.svg);
  std::getline(svg, line);
  EXPECT_NE(line.find("<svg"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(out.bounds_csv));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace splfr
