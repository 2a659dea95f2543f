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

#include "shapwa/gadgets.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "shapwa/oracle.hpp"
#include "shapwa/random_models.hpp"
#include "test_support.hpp"

namespace shapwa {
namespace {

using testing::all_words;
using testing::q;

const Alphabet kBits("01");

double sigmoid_phi(const GadgetInstance& g) {
  const auto& net = std::get<SigmoidNet>(g.model);
  oracle::Model<double> f = [&net](const Word& x) { return net.evaluate(x); };
  oracle::Context<double> base{oracle::Variant::kBaseline, g.reference, nullptr};
  return oracle::shap_local(oracle::memoize(f), g.input, g.feature, base);
}

Rational exact_phi(const oracle::Model<Rational>& f, const GadgetInstance& g) {
  oracle::Context<Rational> base{oracle::Variant::kBaseline, g.reference, nullptr};
  return oracle::shap_local(oracle::memoize(f), g.input, g.feature, base);
}

TEST(SigmoidGadgetTest, Threshold) {
  auto t = sigmoid_threshold(2);
  EXPECT_EQ(t.c_n, 2);
  EXPECT_EQ(t.epsilon, q(1, 3));
  EXPECT_EQ(sigmoid_threshold(1).c_n, 1);
  EXPECT_EQ(sigmoid_threshold(5).c_n, 5 * 6);
  EXPECT_EQ(sigmoid_threshold(8).c_n, 8 * 35);
  EXPECT_NEAR(t.gain_log_n, 2.0 * std::log(2.0), 1e-15);
  EXPECT_GT(t.gain, t.gain_epsilon);
  // c_n is the reciprocal of the smallest Shapley weight.
  for (std::size_t n = 1; n <= 10; ++n) {
    Rational smallest = 1;
    for (std::size_t s = 0; s < n; ++s) {
      Rational w(factorial(s) * factorial(n - s - 1), factorial(n));
      w.canonicalize();
      if (w < smallest) smallest = w;
    }
    EXPECT_EQ(Rational(1) / smallest, Rational(min_weight_denominator(n)));
  }
}

TEST(SigmoidGadgetTest, Examples) {
  auto dummy = wmg_to_sigmoid(Wmg({0, 1}, 1), 1);
  EXPECT_EQ(dummy.input, "11");
  EXPECT_EQ(dummy.reference, "00");
  EXPECT_LE(sigmoid_phi(dummy), dummy.threshold->epsilon.get_d());
  auto pivotal = wmg_to_sigmoid(Wmg({1, 1}, 2), 1);
  EXPECT_GT(sigmoid_phi(pivotal), pivotal.threshold->epsilon.get_d());
}

// Squashing with 2 log((1 - eps) / eps) leaves the pivotal player of
// <2, (1, 1), 2> below eps: phi_b = 5/18 < 1/3.
TEST(SigmoidGadgetTest, EpsilonGainMissesPivotalPlayer) {
  auto g = wmg_to_sigmoid(Wmg({1, 1}, 2), 1);
  const auto& net = std::get<SigmoidNet>(g.model);
  g.model = SigmoidNet(net.weights(), net.bias(), g.threshold->gain_epsilon);
  EXPECT_NEAR(sigmoid_phi(g), 5.0 / 18.0, 1e-12);
  EXPECT_LT(sigmoid_phi(g), g.threshold->epsilon.get_d());
}

TEST(SigmoidGadgetTest, DummyIffBelowThresholdSmallGames) {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<long> w(n, 0);
    while (true) {
      long total = 0;
      for (long x : w) total += x;
      for (long quota = 1; quota <= std::max(1L, total); ++quota) {
        Wmg g(w, quota);
        for (std::size_t i = 1; i <= n; ++i) {
          auto inst = wmg_to_sigmoid(g, i);
          const double phi = sigmoid_phi(inst), eps = inst.threshold->epsilon.get_d();
          EXPECT_EQ(oracle::dummy_check(g, i), phi <= eps);
          EXPECT_GT(std::abs(phi - eps), 1e-9);
        }
      }
      std::size_t k = 0;
      while (k < n && w[k] == 3) w[k++] = 0;
      if (k == n) break;
      ++w[k];
    }
  }
}

TEST(RnnGadgetTest, Examples) {
  RnnRelu r = wmg_to_rnnrelu(Wmg({1, 1, 1}, 2));
  EXPECT_EQ(r.dim(), 5u);
  EXPECT_EQ(r.evaluate("110"), 1);
  EXPECT_EQ(r.evaluate("100"), 0);
  EXPECT_EQ(wmg_to_rnnrelu(Wmg({2, 1}, 1)).evaluate("00"), 0);
  EXPECT_EQ(wmg_to_rnnrelu(Wmg({2, 1}, 0)).evaluate("00"), 1);
}

TEST(RnnGadgetTest, SimulatesGameAndDetectsDummies) {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 6));
    Wmg g = random_wmg(rng, n, 4);
    RnnRelu r = wmg_to_rnnrelu(g);
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
      Word x(n, '0');
      for (std::size_t j = 0; j < n; ++j) {
        if (mask >> j & 1UL) x[j] = '1';
      }
      EXPECT_EQ(r.evaluate(x), g.wins(mask) ? 1 : 0);
    }
    for (std::size_t i = 1; i <= n; ++i) {
      auto inst = wmg_to_rnnrelu_instance(g, i);
      Rational phi = exact_phi([&r](const Word& x) { return r.evaluate(x); }, inst);
      EXPECT_EQ(oracle::dummy_check(g, i), phi == 0);
    }
  }
}

oracle::Model<Rational> ensemble_model(const GadgetInstance& g) {
  const auto& e = std::get<TreeEnsemble>(g.model);
  return [&e](const Word& x) { return e.evaluate(x); };
}

TEST(SatGadgetTest, Examples) {
  auto g = sat_to_ensemble(CnfFormula(1, {{1}}));
  const auto& e = std::get<TreeEnsemble>(g.model);
  EXPECT_EQ(e.trees().size(), 1u);
  EXPECT_EQ(e.mode(), EnsembleMode::kVote);
  EXPECT_EQ(e.evaluate("11"), 1);
  EXPECT_EQ(e.evaluate("10"), 0);
  EXPECT_EQ(g.feature, 2u);
  EXPECT_GT(exact_phi(ensemble_model(g), g), 0);

  auto unsat = sat_to_ensemble(CnfFormula(1, {{1}, {-1}}));
  EXPECT_EQ(std::get<TreeEnsemble>(unsat.model).trees().size(), 3u);
  EXPECT_EQ(exact_phi(ensemble_model(unsat), unsat), 0);
  EXPECT_THROW(sat_to_ensemble(CnfFormula(2, {})), DomainError);
}

TEST(SatGadgetTest, SemanticsAndSatisfiability) {
  Rng rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 6));
    CnfFormula phi = random_cnf(rng, n, m);
    auto g = sat_to_ensemble(phi);
    const auto& e = std::get<TreeEnsemble>(g.model);
    EXPECT_EQ(e.trees().size(), 2 * m - 1);
    for (const auto& x : all_words(kBits, n + 1)) {
      unsigned long a = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (x[j] == '1') a |= 1UL << j;
      }
      EXPECT_EQ(e.evaluate(x), (x[n] == '1' && phi.satisfied_by(a)) ? 1 : 0);
    }
    EXPECT_EQ(oracle::sat_brute(phi), exact_phi(ensemble_model(g), g) > 0);
  }
}

TEST(SatGadgetTest, TautologicalAndRepeatedLiterals) {
  auto g = sat_to_ensemble(CnfFormula(2, {{1, -1, 2}, {2, 2, 2}}));
  const auto& e = std::get<TreeEnsemble>(g.model);
  EXPECT_EQ(e.evaluate("011"), 1);
  EXPECT_EQ(e.evaluate("001"), 0);
  EXPECT_EQ(e.evaluate("110"), 0);
}

TEST(CspGadgetTest, CellExamples) {
  RnnRelu c = csp_construct(kBits, "11", 1);
  EXPECT_EQ(c.dim(), 3u);
  EXPECT_EQ(c.hidden("00")[1], 1);
  EXPECT_EQ(c.hidden("11")[1], 0);
  EXPECT_THROW(csp_construct(kBits, "11", 3), DomainError);
}

TEST(CspGadgetTest, CellPrefixAndTerminalProperties) {
  Rng rng(7);
  const Alphabet abc("abc");
  for (int trial = 0; trial < 20; ++trial) {
    const Alphabet& sigma = trial % 2 ? abc : kBits;
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, sigma.size() == 3 ? 3 : 4));
    Word w = rng.word(sigma, n);
    const std::size_t k = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n)));
    RnnRelu c = csp_construct(sigma, w, k);
    for (const auto& u : all_words(sigma, n)) {
      for (std::size_t s = 1; s < n; ++s) {
        EXPECT_EQ(c.hidden(u.substr(0, s))[s - 1], Rational(static_cast<long>(oracle::hamming(w.substr(0, s), u.substr(0, s)))));
      }
      long d = static_cast<long>(oracle::hamming(w, u)) - static_cast<long>(k);
      EXPECT_EQ(c.hidden(u)[n - 1], Rational(std::max(0L, d)));
    }
  }
}

TEST(CspGadgetTest, ConcatenationExamples) {
  RnnRelu r = csp_to_rnn(CspInstance(kBits, {"00", "11"}, 1));
  EXPECT_EQ(r.evaluate("01"), 1);
  EXPECT_EQ(r.evaluate("10"), 1);
  EXPECT_EQ(r.evaluate("00"), 0);
  RnnRelu none = csp_to_rnn(CspInstance(kBits, {"00", "11"}, 0));
  EXPECT_TRUE(oracle::empty_brute([&none](const Word& x) { return none.evaluate(x); }, kBits, 2));
  RnnRelu all = csp_to_rnn(CspInstance(kBits, {"0110"}, 4));
  for (const auto& x : all_words(kBits, 4)) EXPECT_EQ(all.evaluate(x), 1);
}

TEST(CspGadgetTest, EmptyIffNoClosestString) {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 3));
    std::vector<Word> strings;
    for (std::size_t k = 0; k < m; ++k) strings.push_back(rng.word(kBits, n));
    CspInstance inst(kBits, strings, static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n))));
    RnnRelu r = csp_to_rnn(inst);
    for (const auto& x : all_words(kBits, n)) {
      bool close = true;
      for (const auto& s : strings) close = close && oracle::hamming(s, x) <= inst.radius;
      EXPECT_EQ(r.evaluate(x), close ? 1 : 0);
    }
    EXPECT_EQ(oracle::empty_brute([&r](const Word& x) { return r.evaluate(x); }, kBits, n),
              !oracle::csp_brute(inst).has_value());
  }
}

}  // namespace
}  // namespace shapwa
