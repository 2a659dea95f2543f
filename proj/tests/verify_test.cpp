/*
 * Copyright 2026 The shapwa Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "shapwa/verify.hpp"

#include <gtest/gtest.h>

namespace shapwa {
namespace {

TEST(VerifySuiteTest, SeededSuitePasses) {
  verify::SuiteConfig cfg;
  cfg.instances = 50;
  for (const auto& p : verify::run_suite(cfg)) {
    EXPECT_TRUE(p.passed()) << p.name << ": " << p.counterexample.value_or("");
    EXPECT_EQ(p.checked, 50u) << p.name;
  }
}

// Harness sanity: an engine that is off by one on every baseline value.
TEST(VerifySuiteTest, CorruptedEngineFailsWithCounterexample) {
  verify::EngineHooks broken;
  broken.loc_b = [](const Wa& f, const Word& w, std::size_t i, const Word& r) {
    return loc_b_shap(f, w, i, r) + Rational(1);
  };
  verify::SuiteConfig cfg;
  cfg.instances = 5;
  auto results = verify::run_suite(cfg, broken);
  ASSERT_EQ(results.size(), 6u);
  EXPECT_TRUE(results[0].passed());
  ASSERT_FALSE(results[1].passed());
  EXPECT_NE(results[1].counterexample->find("engine="), std::string::npos);
  EXPECT_NE(results[1].counterexample->find("wa(dim="), std::string::npos);
  EXPECT_FALSE(results[4].passed());
}

TEST(VerifySuiteTest, Deterministic) {
  verify::EngineHooks broken;
  broken.glo_i = [](const Wa&, std::size_t, std::size_t, const Hmm&) { return Rational(7); };
  verify::SuiteConfig cfg;
  cfg.instances = 3;
  cfg.seed = 11;
  EXPECT_EQ(verify::run_suite(cfg, broken)[2].counterexample, verify::run_suite(cfg, broken)[2].counterexample);
}

TEST(CertificateTest, WmgExample) {
  Wmg g({1, 1}, 2);
  auto c = verify::certify_wmg_sigmoid(g, wmg_to_sigmoid(g, 1));
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.verdict, "not dummy; φ_b > ε");
  auto r = verify::certify_wmg_rnn(g, wmg_to_rnnrelu_instance(g, 1));
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.phi, "1/2");
  Wmg d({0, 3, 1}, 2);
  auto c2 = verify::certify_wmg_sigmoid(d, wmg_to_sigmoid(d, 1));
  EXPECT_TRUE(c2.holds);
  EXPECT_EQ(c2.verdict, "dummy; φ_b ≤ ε");
}

TEST(CertificateTest, SatAndCsp) {
  CnfFormula sat(2, {{1, 2}, {-1}});
  CnfFormula unsat(1, {{1}, {-1}});
  auto a = verify::certify_sat(sat, sat_to_ensemble(sat));
  auto b = verify::certify_sat(unsat, sat_to_ensemble(unsat));
  EXPECT_TRUE(a.holds);
  EXPECT_TRUE(b.holds);
  EXPECT_EQ(b.phi, "0");
  CspInstance inst(Alphabet("01"), {"00", "11"}, 1);
  auto c = verify::certify_csp(inst, csp_to_rnn(inst));
  EXPECT_TRUE(c.holds);
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_EQ(*c.witness, "01");
}

}  // namespace
}  // namespace shapwa
