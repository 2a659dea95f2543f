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

#include "shapwa/wa.hpp"

#include <gtest/gtest.h>

#include "shapwa/builders.hpp"
#include "shapwa/dfa.hpp"
#include "shapwa/hmm.hpp"
#include "shapwa/random.hpp"
#include "test_support.hpp"

namespace shapwa {
namespace {

using testing::all_words;
using testing::q;

const Alphabet kBits("01");

Wa two_state_example() {
  Wa a({kBits}, {q(1), q(0)}, {q(0), q(1)});
  SparseMatrix<Rational> m(2, 2);
  m.set(0, 1, q(1));
  a.set_transition("1", m);
  return a;
}

TEST(EvalTest, ConstantAutomatonReturnsItsValue) {
  Wa c = constant_wa<Rational>({kBits}, q(7, 3));
  for (std::size_t len = 0; len <= 3; ++len) {
    for (const auto& w : all_words(kBits, len)) EXPECT_EQ(eval(c, w), q(7, 3));
  }
}

TEST(EvalTest, EmptyWordGivesAlphaDotBeta) {
  Wa a({kBits}, {q(2), q(3)}, {q(5), q(-1)});
  EXPECT_EQ(eval(a, ""), q(7));
}

TEST(EvalTest, HandComputedTwoStateProducts) {
  Wa a = two_state_example();
  EXPECT_EQ(eval(a, "1"), q(1));
  EXPECT_EQ(eval(a, "0"), q(0));
  EXPECT_EQ(eval(a, "11"), q(0));
}

TEST(EvalTest, RejectsBadSymbolAndLengthMismatch) {
  Wa a = two_state_example();
  EXPECT_THROW(eval(a, "2"), DomainError);
  Wa t2({kBits, kBits}, {q(1)}, {q(1)});
  EXPECT_THROW(eval(t2, std::vector<Word>{"01", "0"}), DomainError);
  EXPECT_THROW(eval(t2, std::vector<Word>{"01"}), DomainError);
}

TEST(AddTest, ConstantsAdd) {
  Wa s = add(constant_wa<Rational>({kBits}, q(2)), constant_wa<Rational>({kBits}, q(3)));
  EXPECT_EQ(s.dim(), 2u);
  for (const auto& w : all_words(kBits, 3)) EXPECT_EQ(eval(s, w), q(5));
}

TEST(AddTest, ZeroIsIdentity) {
  Rng rng(1);
  Wa a = random_wa(rng, kBits, 3);
  Wa s = add(a, zero_wa<Rational>({kBits}));
  for (std::size_t len = 0; len <= 4; ++len) {
    for (const auto& w : all_words(kBits, len)) EXPECT_EQ(eval(s, w), eval(a, w));
  }
}

TEST(AddTest, PointwiseOnRandomPair) {
  Rng rng(2);
  Wa a = random_wa(rng, kBits, 2);
  Wa b = random_wa(rng, kBits, 2);
  EXPECT_EQ(eval(add(a, b), "01"), eval(a, "01") + eval(b, "01"));
}

TEST(AddTest, RejectsAlphabetMismatch) {
  EXPECT_THROW(add(constant_wa<Rational>({kBits}, q(1)), constant_wa<Rational>({Alphabet("ab")}, q(1))),
               DomainError);
}

TEST(ScaleTest, ZeroOneAndHalf) {
  Rng rng(3);
  Wa a = random_wa(rng, kBits, 3);
  for (std::size_t len = 0; len <= 4; ++len) {
    for (const auto& w : all_words(kBits, len)) {
      EXPECT_EQ(eval(scale(q(0), a), w), q(0));
      EXPECT_EQ(eval(scale(q(1), a), w), eval(a, w));
    }
  }
  EXPECT_EQ(eval(scale(q(1, 2), constant_wa<Rational>({kBits}, q(3))), "0110"), q(3, 2));
}

TEST(KronTest, ConstantsMultiply) {
  Wa p = kron(constant_wa<Rational>({kBits}, q(2)), constant_wa<Rational>({kBits}, q(3)));
  for (const auto& w : all_words(kBits, 2)) EXPECT_EQ(eval(p, w), q(6));
}

TEST(KronTest, ConstantOneIsIdentity) {
  Rng rng(4);
  Wa a = random_wa(rng, kBits, 3);
  Wa p = kron(a, constant_wa<Rational>({kBits}, q(1)));
  for (std::size_t len = 0; len <= 4; ++len) {
    for (const auto& w : all_words(kBits, len)) EXPECT_EQ(eval(p, w), eval(a, w));
  }
}

TEST(KronTest, ExhaustiveMixedProduct) {
  Rng rng(5);
  Wa a = random_wa(rng, kBits, 2);
  Wa b = random_wa(rng, kBits, 3);
  Wa p = kron(a, b);
  EXPECT_EQ(p.dim(), 6u);
  for (std::size_t len = 0; len <= 3; ++len) {
    for (const auto& w : all_words(kBits, len)) EXPECT_EQ(eval(p, w), eval(a, w) * eval(b, w));
  }
}

// Two-tape automaton with random matrices over both tapes.
Wa random_two_tape(Rng& rng, const Alphabet& s1, const Alphabet& s2, std::size_t dim) {
  std::vector<Rational> alpha(dim), beta(dim);
  for (auto& x : alpha) x = rng.rational();
  for (auto& x : beta) x = rng.rational();
  Wa t({s1, s2}, alpha, beta);
  for (std::size_t k = 0; k < t.tuple_count(); ++k) {
    SparseMatrix<Rational> m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        if (rng.chance(2, 3)) m.set(r, c, rng.rational());
      }
    }
    t.set_transition(k, m);
  }
  return t;
}

TEST(ProjectTest, MarginalizingIgnoredTapeUnderUniform) {
  Rng rng(6);
  Wa inner = random_wa(rng, kBits, 2);
  // Matrices depend only on the second tape.
  Wa t({kBits, kBits}, inner.alpha(), inner.beta());
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) t.set_transition(a * 2 + b, *inner.transition(b));
  }
  Wa g = project(1, uniform_hmm(kBits).wa(), t);
  EXPECT_EQ(g.arity(), 1u);
  for (std::size_t len = 0; len <= 3; ++len) {
    for (const auto& w : all_words(kBits, len)) EXPECT_EQ(eval(g, w), eval(inner, w));
  }
}

TEST(ProjectTest, PointMassSiftsTheTape) {
  Rng rng(7);
  Wa t = random_two_tape(rng, kBits, kBits, 2);
  const Word w0 = "101";
  Wa g = project(1, build_point_hmm(kBits, w0).wa(), t);
  for (const auto& w : all_words(kBits, 3)) {
    EXPECT_EQ(eval(g, w), eval(t, std::vector<Word>{w0, w}));
  }
}

TEST(ProjectTest, ExhaustiveDefiningSum) {
  Rng rng(8);
  const Alphabet ab("ab");
  Wa t = random_two_tape(rng, kBits, ab, 2);
  Wa a = random_wa(rng, ab, 2);
  Wa g = project(2, a, t);
  EXPECT_EQ(g.dim(), 4u);
  EXPECT_EQ(g.alphabet(0), kBits);
  for (std::size_t len = 0; len <= 3; ++len) {
    for (const auto& w : all_words(kBits, len)) {
      Rational expect = 0;
      for (const auto& v : all_words(ab, len)) expect += eval(a, v) * eval(t, std::vector<Word>{w, v});
      EXPECT_EQ(eval(g, w), expect) << w;
    }
  }
}

TEST(ProjectTest, RejectsBadIndexAndAlphabet) {
  Rng rng(9);
  Wa t = random_two_tape(rng, kBits, kBits, 1);
  Wa a = random_wa(rng, kBits, 1);
  EXPECT_THROW(project(3, a, t), DomainError);
  EXPECT_THROW(project(0, a, t), DomainError);
  EXPECT_THROW(project(1, random_wa(rng, Alphabet("ab"), 1), t), DomainError);
}

TEST(Pi1Test, UniformAgainstOneIsOne) {
  EXPECT_EQ(pi1(uniform_hmm(kBits).wa(), constant_wa<Rational>({kBits}, q(1)), 4), q(1));
}

TEST(Pi1Test, PointMassSifts) {
  Rng rng(10);
  Wa b = random_wa(rng, kBits, 3);
  EXPECT_EQ(pi1(build_point_hmm(kBits, "0110").wa(), b, 4), eval(b, "0110"));
}

TEST(Pi1Test, MatchesExplicitSumOverSigmaSquared) {
  Rng rng(11);
  Wa a = random_wa(rng, kBits, 3);
  Wa b = random_wa(rng, kBits, 2);
  Rational expect = 0;
  for (const auto& w : all_words(kBits, 2)) expect += eval(a, w) * eval(b, w);
  EXPECT_EQ(pi1(a, b, 2), expect);
}

TEST(Pi0Test, HmmSumsToOne) {
  Rng rng(12);
  Hmm h = random_hmm(rng, kBits, 3);
  for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(pi0(h.wa(), n), q(1));
}

TEST(Pi0Test, ZeroAndConstant) {
  EXPECT_EQ(pi0(zero_wa<Rational>({kBits}), 3), q(0));
  const Alphabet abc("abc");
  for (std::size_t len = 0; len <= 3; ++len) {
    Rational expect = 0;
    for (const auto& w : all_words(abc, len)) expect += eval(constant_wa<Rational>({abc}, q(5, 2)), w);
    EXPECT_EQ(pi0(constant_wa<Rational>({abc}, q(5, 2)), len), expect);
    Rational closed = q(5, 2);
    for (std::size_t k = 0; k < len; ++k) closed *= 3;
    EXPECT_EQ(expect, closed);
  }
}

TEST(ContractTest, ThreeFactorsOverTwoTapesMatchBruteForce) {
  Rng rng(13);
  Wa t = random_two_tape(rng, kBits, kBits, 2);
  Wa u = random_two_tape(rng, kBits, kBits, 2);
  Wa d = random_wa(rng, kBits, 2);
  Rational got = contract<Rational>({{&t, {0, 1}}, {&u, {1, 0}}, {&d, {1}}}, {kBits, kBits}, 3);
  Rational expect = 0;
  for (const auto& x : all_words(kBits, 3)) {
    for (const auto& y : all_words(kBits, 3)) {
      expect += eval(t, std::vector<Word>{x, y}) * eval(u, std::vector<Word>{y, x}) * eval(d, y);
    }
  }
  EXPECT_EQ(got, expect);
}

TEST(TrimTest, PreservesFunctionAndShrinks) {
  Rng rng(14);
  Wa a = random_wa(rng, kBits, 3);
  // Pad with an unreachable state.
  Wa padded = add(a, Wa({kBits}, {q(0)}, {q(1)}));
  Wa t = trim(padded);
  EXPECT_LE(t.dim(), a.dim());
  for (std::size_t len = 0; len <= 4; ++len) {
    for (const auto& w : all_words(kBits, len)) EXPECT_EQ(eval(t, w), eval(a, w));
  }
}

TEST(PointwiseAlgebraTest, ExhaustiveOverTernaryAlphabet) {
  Rng rng(15);
  const Alphabet abc("abc");
  for (int trial = 0; trial < 3; ++trial) {
    Wa a = random_wa(rng, abc, 2);
    Wa b = random_wa(rng, abc, 2);
    Rational c = rng.rational();
    Wa s = add(a, b), p = kron(a, b), m = scale(c, a);
    EXPECT_EQ(s.dim(), 4u);
    EXPECT_EQ(p.dim(), 4u);
    for (std::size_t len = 0; len <= 3; ++len) {
      Rational sum_a = 0, sum_ab = 0;
      for (const auto& w : all_words(abc, len)) {
        EXPECT_EQ(eval(s, w), eval(a, w) + eval(b, w));
        EXPECT_EQ(eval(p, w), eval(a, w) * eval(b, w));
        EXPECT_EQ(eval(m, w), c * eval(a, w));
        sum_a += eval(a, w);
        sum_ab += eval(a, w) * eval(b, w);
      }
      EXPECT_EQ(pi0(a, len), sum_a);
      EXPECT_EQ(pi1(a, b, len), sum_ab);
    }
  }
}

TEST(DfaToWaTest, AcceptsExactlyAb) {
  const Alphabet ab("ab");
  Dfa d({ab}, 3, 0);
  d.add_transition(0, "a", 1);
  d.add_transition(1, "b", 2);
  d.set_final(2);
  Wa a = dfa_to_wa(d);
  EXPECT_EQ(a.dim(), 3u);
  int ones = 0, total = 0;
  for (std::size_t len = 0; len <= 2; ++len) {
    for (const auto& w : all_words(ab, len)) {
      Rational v = eval(a, w);
      EXPECT_EQ(v, q(w == "ab" ? 1 : 0)) << w;
      ones += v == 1;
      ++total;
    }
  }
  EXPECT_EQ(ones, 1);
  EXPECT_EQ(total, 7);
}

TEST(DfaToWaTest, NoFinalsMeansZero) {
  Dfa d({kBits}, 2, 0);
  d.add_transition(0, "0", 1);
  d.add_transition(1, "1", 0);
  Wa a = dfa_to_wa(d);
  for (std::size_t len = 0; len <= 3; ++len) {
    for (const auto& w : all_words(kBits, len)) EXPECT_EQ(eval(a, w), q(0));
  }
}

TEST(DfaToWaTest, TwoTapeFigureAutomaton) {
  // Σ1 = {a,b,c}, Σ2 = {0,1}; q0 loops on (a,0) and moves to q1 on (b,1);
  // q1 loops on (b,1) and moves to q2 on (a,0); q2 loops on (c,1) and
  // returns to q1 on (b,1); q1 accepts.
  Dfa d({Alphabet("abc"), kBits}, 3, 0);
  d.add_transition(0, "a0", 0);
  d.add_transition(0, "b1", 1);
  d.add_transition(1, "b1", 1);
  d.add_transition(1, "a0", 2);
  d.add_transition(2, "c1", 2);
  d.add_transition(2, "b1", 1);
  d.set_final(1);
  Wa a = dfa_to_wa(d);
  EXPECT_EQ(eval(a, std::vector<Word>{"b", "1"}), q(1));
  EXPECT_EQ(eval(a, std::vector<Word>{"a", "0"}), q(0));
  EXPECT_TRUE(d.accepts({"b", "1"}));
  EXPECT_FALSE(d.accepts({"a", "0"}));
  EXPECT_EQ(eval(a, std::vector<Word>{"abacb", "01011"}), q(1));
}

TEST(DfaTest, RejectsNondeterminism) {
  Dfa d({kBits}, 2, 0);
  d.add_transition(0, "0", 1);
  EXPECT_THROW(d.add_transition(0, "0", 0), DomainError);
}

TEST(AlphabetTest, RejectsDuplicatesAndPlaceholder) {
  EXPECT_THROW(Alphabet("aa"), DomainError);
  EXPECT_THROW(Alphabet("a#"), DomainError);
  EXPECT_THROW(Alphabet(""), DomainError);
  EXPECT_EQ(Alphabet::with_placeholder(kBits).symbols(), "01#");
}

TEST(ScalarTest, ParsesRationalForms) {
  EXPECT_EQ(parse_rational("3/6"), q(1, 2));
  EXPECT_EQ(parse_rational("-4"), q(-4));
  EXPECT_EQ(parse_rational("0.125"), q(1, 8));
  EXPECT_EQ(parse_rational("-1.5"), q(-3, 2));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_EQ(format_rational(q(-2, 4)), "-1/2");
}

TEST(DoubleModeTest, CastAutomatonEvaluatesApproximately) {
  Rng rng(16);
  Wa a = random_wa(rng, kBits, 3);
  BasicWa<double> d = cast_wa<double>(a);
  for (const auto& w : all_words(kBits, 3)) EXPECT_NEAR(eval(d, w), eval(a, w).get_d(), 1e-12);
}

}  // namespace
}  // namespace shapwa
