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

#include "splfr/audit.hpp"

namespace splfr {
namespace {

audit_config small(scheme_mode mode, demand_space space = demand_space::full) {
  return {man_pda(2, 1), 2, 2, field_context::prime(2), mode, space};
}

TEST(Audit, AtomCount) {
  EXPECT_EQ(atom_count(small(scheme_mode::splfr)), 8192u);
  // q^{NB + S·B/F + KN} · N^K with unit demands.
  EXPECT_EQ(atom_count(small(scheme_mode::splfr, demand_space::unit)), 2048u);
  EXPECT_EQ(atom_count(small(scheme_mode::lfr)), 256u);
  auto c = small(scheme_mode::splfr);
  c.budget = 8191;
  EXPECT_THROW(atom_count(c), audit_budget_exceeded);
  EXPECT_THROW(audit_security(c), audit_budget_exceeded);
  c.budget = 8192;
  EXPECT_EQ(atom_count(c), 8192u);
}

TEST(Audit, CorrectnessPasses) {
  for (auto mode : {scheme_mode::splfr, scheme_mode::plfr, scheme_mode::slfr, scheme_mode::lfr}) {
    const auto r = audit_correctness(small(mode));
    EXPECT_TRUE(r.pass) << to_string(mode);
    EXPECT_EQ(r.violations, 0u);
    EXPECT_FALSE(r.counterexample);
  }
  EXPECT_EQ(audit_correctness(small(scheme_mode::splfr)).checked_identities, 2u * 8192u);
}

TEST(Audit, CorruptedBroadcastIsCaught) {
  const auto r = audit_correctness(small(scheme_mode::splfr), [](delivery_payload& x) {
    x.blocks[0][0] ^= 1;
  });
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.counterexample);
  EXPECT_NE(r.counterexample->find("user"), std::string::npos);
  const auto q = audit_correctness(small(scheme_mode::splfr), [](delivery_payload& x) {
    x.coeff_vectors[1][0] ^= 1;
  });
  EXPECT_FALSE(q.pass);
}

TEST(Audit, SecurityHoldsWithBothKeys) {
  const auto r = audit_security(small(scheme_mode::splfr));
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.files_only_pass);
  EXPECT_EQ(r.information_lower_bound, 0);
  EXPECT_EQ(r.atoms, 8192u);
}

// Without privacy keys q_k = d_k is public: the files stay hidden but the
// demands do not, so only the file-only condition holds.
TEST(Audit, SecureOnlyModeHidesFilesNotDemands) {
  const auto r = audit_security(small(scheme_mode::slfr));
  EXPECT_TRUE(r.files_only_pass);
  EXPECT_EQ(r.files_only_violations, 0u);
  EXPECT_FALSE(r.pass);
}

TEST(Audit, AllStarArrayIsSecure) {
  const audit_config c{validate({{pda_entry::star(), pda_entry::star()}}), 2, 1,
                       field_context::prime(3), scheme_mode::splfr, demand_space::full};
  EXPECT_TRUE(audit_security(c).pass);
}

TEST(Audit, SecurityFailsWithoutKeys) {
  for (auto mode : {scheme_mode::lfr, scheme_mode::plfr}) {
    const auto r = audit_security(small(mode));
    EXPECT_FALSE(r.pass) << to_string(mode);
    EXPECT_FALSE(r.files_only_pass) << to_string(mode);
    EXPECT_GT(r.violations, 0u);
    EXPECT_GT(r.information_lower_bound, 0);
    EXPECT_TRUE(r.counterexample);
  }
}

TEST(Audit, PrivacyHoldsForEveryCoalition) {
  for (auto mode : {scheme_mode::splfr, scheme_mode::plfr}) {
    for (const std::vector<unsigned>& s : {std::vector<unsigned>{0}, {1}, {0, 1}}) {
      const auto r = audit_privacy(small(mode), s);
      EXPECT_TRUE(r.pass) << to_string(mode);
      EXPECT_EQ(r.information_lower_bound, 0);
    }
  }
  const auto three = audit_config{man_pda(3, 1), 2, 3, field_context::prime(2),
                                  scheme_mode::splfr, demand_space::unit};
  for (const std::vector<unsigned>& s : {std::vector<unsigned>{0}, {1, 2}, {0, 2}})
    EXPECT_TRUE(audit_privacy(three, s).pass);
}

TEST(Audit, PrivacyFailsWithoutPrivacyKeys) {
  const auto r = audit_privacy(small(scheme_mode::slfr), {0});
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.information_lower_bound, 0);
  EXPECT_EQ(r.subset, std::vector<unsigned>{1});
  EXPECT_TRUE(r.counterexample);
  EXPECT_FALSE(audit_privacy(small(scheme_mode::lfr, demand_space::unit), {1}).pass);
}

TEST(Audit, FullCoalitionIsTriviallyPrivate) {
  const auto r = audit_privacy(small(scheme_mode::lfr), {0, 1});
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.checked_identities, 0u);
}

TEST(Audit, PrivacyArgumentErrors) {
  EXPECT_THROW(audit_privacy(small(scheme_mode::splfr), {}), std::invalid_argument);
  EXPECT_THROW(audit_privacy(small(scheme_mode::splfr), {2}), std::invalid_argument);
}

TEST(Audit, ConfigErrors) {
  auto c = small(scheme_mode::splfr);
  c.file_length = 3;
  EXPECT_ANY_THROW(atom_count(c));
}

// Four equally likely atoms over two binary coordinates.
exact_distribution four_atoms(std::initializer_list<symbol_vector> atoms) {
  exact_distribution d;
  for (const auto& a : atoms) d.add(a);
  return d;
}

TEST(Audit, MutualInformationOfIndependentPair) {
  const auto d = four_atoms({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  const auto r = mutual_information_bits(d, {{0}, {1}});
  EXPECT_TRUE(r.zero);
  EXPECT_EQ(r.checked_identities, 4u);
  EXPECT_EQ(r.lower_bound_bits, 0);
}

TEST(Audit, MutualInformationOfCopiedBit) {
  const auto d = four_atoms({{0, 0}, {0, 0}, {1, 1}, {1, 1}});
  const auto r = mutual_information_bits(d, {{0}, {1}});
  EXPECT_FALSE(r.zero);
  EXPECT_EQ(r.violated_identities, 4u);
  // TV = 1/2, so the Pinsker floor is 2·(1/2)^2 = 1/2 bit (true value 1).
  EXPECT_EQ(r.lower_bound_bits, big_rational(1, 2));
}

TEST(Audit, MutualInformationIgnoresUnusedCoordinates) {
  const auto d = four_atoms({{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  EXPECT_TRUE(mutual_information_bits(d, {{0}, {1}}).zero);
  EXPECT_FALSE(mutual_information_bits(d, {{0, 1}, {2}}).zero);
  EXPECT_EQ(d.total(), 4u);
  EXPECT_EQ(d.count({1, 1, 0}), 1u);
  EXPECT_EQ(d.count({1, 1, 1}), 0u);
}

}  // namespace
}  // namespace splfr
