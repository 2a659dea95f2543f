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

#include "shapwa/shap.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "shapwa/builders.hpp"
#include "shapwa/oracle.hpp"
#include "shapwa/patterns.hpp"
#include "shapwa/random.hpp"
#include "test_support.hpp"

namespace shapwa {
namespace {

using testing::all_words;
using testing::and_wa;
using testing::q;

const Alphabet kBits("01");
const Alphabet kBitsHash = Alphabet::with_placeholder(kBits);

TEST(BuildAwiTest, Examples) {
  Alphabet ab("ab");
  Wa a = build_A_wi(ab, "ab", 1);
  EXPECT_EQ(eval(a, Word("#b")), q(1, 2));
  EXPECT_EQ(eval(a, Word("ab")), 0);
  EXPECT_EQ(eval(a, Word("a#")), 0);
  EXPECT_EQ(eval(a, Word("b#")), 0);
}

TEST(BuildAwiTest, SumsToOneAndMatchesCoalitionWeight) {
  for (auto layout : {AwiLayout::kCompact, AwiLayout::kPerCount}) {
    for (const auto& w : all_words(kBits, 3)) {
      for (std::size_t i = 1; i <= 3; ++i) {
        Wa a = build_A_wi(kBits, w, i, layout);
        Rational total = 0;
        for (const auto& p : all_words(kBitsHash, 3)) {
          Rational v = eval(a, p);
          EXPECT_EQ(v, coalition_weight(p, w, i)) << p << " " << w << " " << i;
          total += v;
        }
        EXPECT_EQ(total, 1);
      }
    }
  }
}

TEST(BuildAwiTest, Sizes) {
  for (std::size_t n = 1; n <= 8; ++n) {
    Word w(n, '1');
    EXPECT_EQ(build_A_wi(kBits, w, 1).dim(), (n + 1) * (n + 2) / 2);
    EXPECT_LE(build_A_wi(kBits, w, 1, AwiLayout::kPerCount).dim(), n * (n + 1) * (n + 1));
  }
}

TEST(BuildAwiTest, Errors) {
  EXPECT_THROW(build_A_wi(kBits, "01", 0), DomainError);
  EXPECT_THROW(build_A_wi(kBits, "01", 3), DomainError);
  EXPECT_THROW(build_A_wi(kBits, "0x", 1), DomainError);
}

TEST(BuildAinTest, Examples) {
  Alphabet ab("ab");
  Wa a = build_A_in(ab, 1, 2);
  EXPECT_EQ(a.arity(), 2u);
  EXPECT_EQ(eval(a, std::vector<Word>{"#b", "ab"}), q(1, 2));
  EXPECT_EQ(eval(a, std::vector<Word>{"ab", "ab"}), 0);
  EXPECT_EQ(eval(a, std::vector<Word>{"#a", "ab"}), 0);
}

TEST(BuildAinTest, MatchesLocalWeightPointwise) {
  for (std::size_t i = 1; i <= 3; ++i) {
    Wa a = build_A_in(kBits, i, 3);
    for (const auto& w : all_words(kBits, 3)) {
      Rational total = 0;
      for (const auto& p : all_words(kBitsHash, 3)) {
        Rational v = eval(a, {p, w});
        EXPECT_EQ(v, coalition_weight(p, w, i));
        total += v;
      }
      EXPECT_EQ(total, 1);
    }
  }
  EXPECT_THROW(build_A_in(kBits, 4, 3), DomainError);
}

TEST(BuildTwTest, Examples) {
  Wa t = build_T_w(kBits, "1111");
  EXPECT_EQ(eval(t, {"0#0#", "1100", "1110"}), 1);
  EXPECT_EQ(eval(t, {"0#0#", "1100", "0110"}), 0);
  EXPECT_EQ(t.dim(), 5u);
}

TEST(BuildTwTest, ExhaustiveAgainstDo) {
  const Word w = "10";
  Wa t = build_T_w(kBits, w);
  std::vector<Wa> ti{build_T_wi(kBits, w, 1), build_T_wi(kBits, w, 2)};
  for (const auto& p : all_words(kBitsHash, 2)) {
    for (const auto& wp : all_words(kBits, 2)) {
      for (const auto& u : all_words(kBits, 2)) {
        EXPECT_EQ(eval(t, {p, wp, u}), do_op(p, wp, w) == u ? 1 : 0);
        for (std::size_t i = 1; i <= 2; ++i) {
          EXPECT_EQ(eval(ti[i - 1], {p, wp, u}), do_op(swap(p, w[i - 1], i), wp, w) == u ? 1 : 0);
        }
      }
    }
  }
}

TEST(BuildTTest, Examples) {
  Wa t = build_T(kBits);
  EXPECT_EQ(t.dim(), 1u);
  EXPECT_EQ(eval(t, {"##", "01", "01", "11"}), 1);
  EXPECT_EQ(eval(t, {"##", "01", "11", "11"}), 0);
  for (std::size_t i = 1; i <= 5; ++i) EXPECT_EQ(build_T_i(kBits, i, 5).dim(), i + 1);
  // Position i of u must equal w_i whatever w'_i is.
  Wa t1 = build_T_i(kBits, 1, 2);
  EXPECT_EQ(eval(t1, {"#0", "00", "10", "10"}), 1);
  EXPECT_EQ(eval(t1, {"#0", "00", "00", "10"}), 0);
}

TEST(BuildTTest, ExhaustiveAgainstTw) {
  Wa t = build_T(kBits);
  std::vector<Wa> ti{build_T_i(kBits, 1, 2), build_T_i(kBits, 2, 2)};
  for (const auto& w : all_words(kBits, 2)) {
    Wa tw = build_T_w(kBits, w);
    std::vector<Wa> twi{build_T_wi(kBits, w, 1), build_T_wi(kBits, w, 2)};
    for (const auto& p : all_words(kBitsHash, 2)) {
      for (const auto& wp : all_words(kBits, 2)) {
        for (const auto& u : all_words(kBits, 2)) {
          EXPECT_EQ(eval(t, {p, wp, u, w}), eval(tw, {p, wp, u}));
          for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(eval(ti[i], {p, wp, u, w}), eval(twi[i], {p, wp, u}));
        }
      }
    }
  }
}

TEST(PointHmmTest, Examples) {
  Hmm h = build_point_hmm(kBits, "101");
  EXPECT_EQ(h.dim(), 4u);
  Rational total = 0;
  for (const auto& w : all_words(kBits, 3)) {
    Rational p = h.prefix_probability(w);
    EXPECT_EQ(p, w == "101" ? 1 : 0);
    total += p;
  }
  EXPECT_EQ(total, 1);
  EXPECT_EQ(pi0(h.wa(), 3), 1);
  EXPECT_EQ(h.prefix_probability("1010"), q(1, 2));
}

TEST(LocalInterventionalTest, Examples) {
  Hmm u = uniform_hmm(kBits);
  Wa and2 = and_wa(2);
  EXPECT_EQ(loc_i_shap(and2, "11", 1, u), q(3, 8));
  EXPECT_EQ(loc_i_shap(and2, "11", 2, u), q(3, 8));
  Wa c = constant_wa<Rational>({kBits}, q(7, 3));
  for (std::size_t i = 1; i <= 3; ++i) EXPECT_EQ(loc_i_shap(c, "010", i, u), 0);
}

TEST(LocalInterventionalTest, Errors) {
  Hmm u = uniform_hmm(kBits);
  Wa and2 = and_wa(2);
  EXPECT_THROW(loc_i_shap(and2, "11", 3, u), DomainError);
  EXPECT_THROW(loc_i_shap(and2, "11", 0, u), DomainError);
  EXPECT_THROW(loc_i_shap(and2, "1x", 1, u), DomainError);
  EXPECT_THROW(loc_i_shap(and2, "11", 1, uniform_hmm(Alphabet("ab"))), DomainError);
}

TEST(GlobalInterventionalTest, Examples) {
  Hmm u = uniform_hmm(kBits);
  EXPECT_EQ(glo_i_shap(and_wa(2), 1, 2, u), 0);
  EXPECT_EQ(glo_i_shap(constant_wa<Rational>({kBits}, q(5)), 2, 3, u), 0);
  EXPECT_THROW(glo_i_shap(and_wa(2), 3, 2, u), DomainError);
}

TEST(LocalBaselineTest, Examples) {
  Wa and2 = and_wa(2);
  EXPECT_EQ(loc_b_shap(and2, "11", 1, "00"), q(1, 2));
  for (std::size_t i = 1; i <= 2; ++i) EXPECT_EQ(loc_b_shap(and2, "10", i, "10"), 0);
  EXPECT_THROW(loc_b_shap(and2, "11", 1, "000"), DomainError);
}

TEST(GlobalBaselineTest, Examples) {
  Wa and2 = and_wa(2);
  Hmm at_11 = build_point_hmm(kBits, "11");
  EXPECT_EQ(glo_b_shap(and2, 1, 2, "00", at_11), loc_b_shap(and2, "11", 1, "00"));
  EXPECT_EQ(glo_b_shap(constant_wa<Rational>({kBits}, q(2)), 1, 2, "01", uniform_hmm(kBits)), 0);
  EXPECT_THROW(glo_b_shap(and2, 1, 2, "000", at_11), DomainError);
}

// Baseline equals interventional under the point distribution on the
// reference.
TEST(EngineIdentityTest, BaselineIsInterventionalAtPoint) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    Wa f = random_wa(rng, kBits, 3);
    Word w = rng.word(kBits, n), ref = rng.word(kBits, n);
    const std::size_t i = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(n)));
    EXPECT_EQ(loc_i_shap(f, w, i, build_point_hmm(kBits, ref)), loc_b_shap(f, w, i, ref));
    EXPECT_EQ(glo_b_shap(f, i, n, ref, build_point_hmm(kBits, w)), loc_b_shap(f, w, i, ref));
  }
}

TEST(EngineOracleTest, AllFourVariantsMatch) {
  Rng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const Alphabet sigma = trial % 3 == 2 ? Alphabet("abc") : kBits;
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, sigma.size() == 3 ? 3 : 4));
    Wa f = random_wa(rng, sigma, static_cast<std::size_t>(rng.uniform(1, 3)));
    Hmm d = random_hmm(rng, sigma, static_cast<std::size_t>(rng.uniform(1, 3)));
    Word w = rng.word(sigma, n), ref = rng.word(sigma, n);
    const std::size_t i = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(n)));
    auto model = oracle::wa_model(f);
    auto table = oracle::hmm_distribution(d, n);
    oracle::Context<Rational> interventional{oracle::Variant::kInterventional, "", &table};
    oracle::Context<Rational> baseline{oracle::Variant::kBaseline, ref, nullptr};
    EXPECT_EQ(loc_i_shap(f, w, i, d), oracle::shap_local(model, w, i, interventional));
    EXPECT_EQ(loc_b_shap(f, w, i, ref), oracle::shap_local(model, w, i, baseline));
    EXPECT_EQ(glo_i_shap(f, i, n, d), oracle::shap_global(model, i, interventional, table));
    EXPECT_EQ(glo_b_shap(f, i, n, ref, d), oracle::shap_global(model, i, baseline, table));
  }
}

TEST(EngineOptionsTest, AllSettingsAgree) {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    Wa f = random_wa(rng, kBits, 3);
    Hmm d = random_hmm(rng, kBits, 2);
    Word w = rng.word(kBits, n);
    const std::size_t i = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(n)));
    const Rational local = loc_i_shap(f, w, i, d);
    const Rational global = glo_i_shap(f, i, n, d);
    for (auto layout : {AwiLayout::kCompact, AwiLayout::kPerCount}) {
      for (bool fuse : {true, false}) {
        for (bool trimmed : {true, false}) {
          EngineOptions opt{layout, fuse, trimmed};
          EXPECT_EQ(loc_i_shap(f, w, i, d, opt), local);
          EXPECT_EQ(glo_i_shap(f, i, n, d, opt), global);
        }
      }
    }
  }
}

TEST(EngineFloatTest, MatchesExactWithinRounding) {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    Wa f = random_wa(rng, kBits, 3);
    Hmm d = random_hmm(rng, kBits, 2);
    Word w = rng.word(kBits, n), ref = rng.word(kBits, n);
    const std::size_t i = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(n)));
    auto fd = cast_wa<double>(f);
    auto dd = cast_hmm<double>(d);
    EXPECT_NEAR(loc_i_shap(fd, w, i, dd), loc_i_shap(f, w, i, d).get_d(), 1e-9);
    EXPECT_NEAR(glo_i_shap(fd, i, n, dd), glo_i_shap(f, i, n, d).get_d(), 1e-9);
    EXPECT_NEAR(loc_b_shap(fd, w, i, ref), loc_b_shap(f, w, i, ref).get_d(), 1e-9);
    EXPECT_NEAR(glo_b_shap(fd, i, n, ref, dd), glo_b_shap(f, i, n, ref, d).get_d(), 1e-9);
  }
}

// sum_i phi_i = f(w) - E[f] for 0/1 models under the uniform distribution.
TEST(EngineEfficiencyTest, UniformDistribution) {
  Rng rng(41);
  Hmm u = uniform_hmm(kBits);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 5));
    Wa f = random_boolean_wa(rng, kBits, static_cast<std::size_t>(rng.uniform(1, 4)));
    Word w = rng.word(kBits, n);
    Rational total = 0;
    for (std::size_t i = 1; i <= n; ++i) total += loc_i_shap(f, w, i, u);
    long ones = 0;
    for (const auto& x : all_words(kBits, n)) ones += eval(f, x) == 1;
    EXPECT_EQ(total, eval(f, w) - q(ones, 1L << n));
  }
}

}  // namespace
}  // namespace shapwa
