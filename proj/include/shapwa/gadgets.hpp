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

// Hardness reductions emitted as runnable models: dummy player to
// sigmoid and ReLU-RNN baseline SHAP, 3-SAT to vote-ensemble baseline
// SHAP, closest string to ReLU-RNN emptiness.

#ifndef SHAPWA_GADGETS_HPP_
#define SHAPWA_GADGETS_HPP_

#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "shapwa/alphabet.hpp"
#include "shapwa/error.hpp"
#include "shapwa/games.hpp"
#include "shapwa/networks.hpp"
#include "shapwa/scalar.hpp"
#include "shapwa/sparse_matrix.hpp"
#include "shapwa/tabular.hpp"

namespace shapwa {

using GadgetModel = std::variant<SigmoidNet, RnnRelu, TreeEnsemble>;

// Threshold data of the sigmoid reduction.
struct SigmoidThreshold {
  Integer c_n;            // N * C(N-1, floor((N-1)/2))
  Rational epsilon;       // 1 / (1 + c_n)
  Rational delta;         // epsilon / 4, the output slack of each neuron value
  double gain = 0;        // 2 log((1 - delta) / delta), used by the model
  double gain_epsilon = 0;  // 2 log((1 - epsilon) / epsilon); too small, see below
  double gain_log_n = 0;    // 2 log N
};

struct GadgetInstance {
  GadgetModel model;
  std::size_t feature = 0;  // 1-based
  Word input;
  Word reference;
  std::optional<SigmoidThreshold> threshold;
};

// The smallest Shapley weight over n players is 1 / c_n.
inline Integer min_weight_denominator(std::size_t n) {
  if (n == 0) throw DomainError("weighted majority game needs at least one player");
  return Integer(static_cast<unsigned long>(n)) * binomial(n - 1, (n - 1) / 2);
}

inline SigmoidThreshold sigmoid_threshold(std::size_t n) {
  SigmoidThreshold t;
  t.c_n = min_weight_denominator(n);
  t.epsilon = Rational(Integer(1), Integer(1 + t.c_n));
  t.epsilon.canonicalize();
  t.delta = t.epsilon / 4;
  const double d = t.delta.get_d(), e = t.epsilon.get_d();
  t.gain = 2.0 * std::log((1.0 - d) / d);
  t.gain_epsilon = 2.0 * std::log((1.0 - e) / e);
  t.gain_log_n = 2.0 * std::log(static_cast<double>(n));
  return t;
}

// f(x) = sigmoid(gain * (sum_j n_j x_j - q + 1/2)). Winning inputs score at
// least 1 - delta and losing ones at most delta, so a dummy player has
// |phi_b| <= delta < epsilon. f is monotone, so a player pivotal for some
// coalition gets phi_b >= (1 - 2 delta) / c_n = epsilon + 1 / (2 c_n (1 + c_n)).
// With gain_epsilon instead, N = 2,
// n = (1, 1), q = 2 gives phi_b = 5/18 < epsilon = 1/3.
inline GadgetInstance wmg_to_sigmoid(const Wmg& g, std::size_t i) {
  const std::size_t n = g.players();
  if (i < 1 || i > n) throw DomainError("player index out of range");
  std::vector<Rational> w;
  for (long x : g.weights) w.emplace_back(x);
  Rational bias = Rational(-g.quota) + Rational(1, 2);
  SigmoidThreshold t = sigmoid_threshold(n);
  return GadgetInstance{SigmoidNet(std::move(w), bias, t.gain), i, Word(n, '1'), Word(n, '0'), t};
}

// Shift register of partial vote sums: after reading x, coordinate N+1
// holds sum_j n_j x_j and N+2 the constant 1.
inline RnnRelu wmg_to_rnnrelu(const Wmg& g) {
  const std::size_t n = g.players();
  if (n == 0) throw DomainError("weighted majority game needs at least one player");
  const std::size_t d = n + 2;
  std::vector<Rational> h(d, Rational(0));
  h[d - 1] = 1;
  SparseMatrix<Rational> w(d, d);
  for (std::size_t j = 0; j < n; ++j) w.set(j + 1, j, Rational(1));
  w.set(d - 1, d - 1, Rational(1));
  std::vector<Rational> v0(d, Rational(0)), v1(d, Rational(0));
  for (std::size_t k = 0; k < n; ++k) v1[k + 1] = g.weights[k];
  std::vector<Rational> out(d, Rational(0));
  out[n] = 1;
  out[d - 1] = -g.quota;
  return RnnRelu(Alphabet("01"), std::move(h), std::move(w), {std::move(v0), std::move(v1)}, std::move(out));
}

inline GadgetInstance wmg_to_rnnrelu_instance(const Wmg& g, std::size_t i) {
  const std::size_t n = g.players();
  if (i < 1 || i > n) throw DomainError("player index out of range");
  return GadgetInstance{wmg_to_rnnrelu(g), i, Word(n, '1'), Word(n, '0'), std::nullopt};
}

namespace detail {

// Tree over features 1..n+1 (0-based 0..n): 1 iff x_{n+1} = 1 and x
// satisfies the clause.
inline DecisionTree clause_tree(const std::vector<int>& clause, std::size_t n) {
  const Alphabet bits("01");
  std::vector<TreeNode> nodes;
  auto leaf = [&](int v) {
    TreeNode t;
    t.value = v;
    nodes.push_back(t);
    return nodes.size() - 1;
  };
  // Distinct literals; a variable with both signs makes the clause true.
  std::vector<int> lits;
  std::set<int> seen;
  bool tautology = false;
  for (int lit : clause) {
    if (seen.count(-lit)) tautology = true;
    if (seen.insert(lit).second) lits.push_back(lit);
  }
  nodes.push_back(TreeNode{});  // root placeholder
  const std::size_t zero = leaf(0), one = leaf(1);
  std::size_t next = zero;
  if (tautology) {
    next = one;
  } else {
    for (auto it = lits.rbegin(); it != lits.rend(); ++it) {
      TreeNode t;
      t.feature = static_cast<std::size_t>(std::abs(*it)) - 1;
      t.children = *it > 0 ? std::vector<std::size_t>{next, one} : std::vector<std::size_t>{one, next};
      nodes.push_back(t);
      next = nodes.size() - 1;
    }
  }
  nodes[0].feature = n;
  nodes[0].children = {zero, next};
  return DecisionTree(bits, n + 1, std::move(nodes));
}

}  // namespace detail

// m clause trees and m-1 constant-0 trees, unit weights, vote mode. The
// vote is nonnegative iff every clause tree says 1, so f(x) = 1 iff
// x_{n+1} = 1 and x_{1..n} satisfies the formula.
inline GadgetInstance sat_to_ensemble(const CnfFormula& phi) {
  const std::size_t m = phi.clauses.size();
  if (m == 0) throw DomainError("formula needs at least one clause");
  const std::size_t n = phi.variables;
  std::vector<DecisionTree> trees;
  for (const auto& c : phi.clauses) trees.push_back(detail::clause_tree(c, n));
  for (std::size_t k = 0; k + 1 < m; ++k) trees.push_back(DecisionTree::leaf(Alphabet("01"), n + 1, Rational(0)));
  std::vector<Rational> weights(trees.size(), Rational(1));
  TreeEnsemble e(std::move(trees), std::move(weights), EnsembleMode::kVote);
  return GadgetInstance{std::move(e), n + 1, Word(n + 1, '1'), Word(n + 1, '0'), std::nullopt};
}

// Cell with h[s] = d_H(w_{1:s}, w'_{1:s}) after s steps and, after |w|
// steps, h[n] = ReLU(d_H(w, w') - k). Coordinate n+1 is the constant 1.
// The output vector is -e_n.
inline RnnRelu csp_construct(const Alphabet& sigma, const Word& w, std::size_t k) {
  const std::size_t n = w.size();
  if (n == 0) throw DomainError("closest-string cell needs a non-empty string");
  if (k > n) throw DomainError("radius " + std::to_string(k) + " exceeds string length " + std::to_string(n));
  sigma.require_word(w);
  const std::size_t d = n + 1;
  std::vector<Rational> h(d, Rational(0));
  h[n] = 1;
  SparseMatrix<Rational> m(d, d);
  for (std::size_t j = 0; j + 1 < n; ++j) m.set(j + 1, j, Rational(1));
  m.set(n - 1, n, Rational(-static_cast<long>(k)));
  m.set(n, n, Rational(1));
  std::vector<std::vector<Rational>> emb;
  for (char s : sigma.symbols()) {
    std::vector<Rational> v(d, Rational(0));
    for (std::size_t l = 0; l < n; ++l) v[l] = w[l] != s ? 1 : 0;
    emb.push_back(std::move(v));
  }
  std::vector<Rational> out(d, Rational(0));
  out[n - 1] = -1;
  return RnnRelu(sigma, std::move(h), std::move(m), std::move(emb), std::move(out));
}

// Block-diagonal cells, one per string; score = 1/2 - sum_i ReLU(d_i - k),
// so f(w') = 1 iff every string is within distance k of w'.
inline RnnRelu csp_to_rnn(const CspInstance& inst) {
  const std::size_t n = inst.length(), c = n + 1, m = inst.strings.size();
  const std::size_t d = m * c;
  std::vector<Rational> h(d, Rational(0)), out(d, Rational(0));
  SparseMatrix<Rational> w(d, d);
  std::vector<std::vector<Rational>> emb(inst.alphabet.size(), std::vector<Rational>(d, Rational(0)));
  for (std::size_t b = 0; b < m; ++b) {
    RnnRelu cell = csp_construct(inst.alphabet, inst.strings[b], inst.radius);
    const std::size_t off = b * c;
    for (std::size_t r = 0; r < c; ++r) {
      h[off + r] = cell.h_init()[r];
      for (const auto& e : cell.recurrence().row(r)) w.set(off + r, off + e.col, e.value);
      for (std::size_t s = 0; s < emb.size(); ++s) emb[s][off + r] = cell.embeddings()[s][r];
    }
    out[off + n - 1] = -1;
  }
  out[n] = Rational(1, 2);
  return RnnRelu(inst.alphabet, std::move(h), std::move(w), std::move(emb), std::move(out));
}

}  // namespace shapwa

#endif  // SHAPWA_GADGETS_HPP_
