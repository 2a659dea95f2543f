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

// Compilers from tabular models to 1-tape automata and from feature
// distributions to HMMs. A tabular input x is read as the word
// sequentialize(x, order); model and distribution must share the order.

#ifndef SHAPWA_FRONTENDS_HPP_
#define SHAPWA_FRONTENDS_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "shapwa/distributions.hpp"
#include "shapwa/error.hpp"
#include "shapwa/hmm.hpp"
#include "shapwa/tabular.hpp"
#include "shapwa/wa.hpp"

namespace shapwa {

// Sum over leaves of value * (chain automaton of the leaf's path
// constraints); n+1 states per leaf with a nonzero value.
inline Wa dt_to_wa(const DecisionTree& tree, const std::vector<std::size_t>& order) {
  const std::size_t n = tree.num_features();
  if (order.size() != n) throw DomainError("order does not cover the tree's features");
  require_permutation(order);
  const Alphabet& sigma = tree.domain();
  std::vector<std::vector<int>> paths;
  std::vector<Rational> values;
  tree.for_each_path([&](const std::vector<int>& c, const Rational& v) {
    if (sgn(v) == 0) return;
    paths.push_back(c);
    values.push_back(v);
  });
  if (paths.empty()) return zero_wa<Rational>({sigma});
  const std::size_t dim = paths.size() * (n + 1);
  std::vector<Rational> alpha(dim, Rational(0)), beta(dim, Rational(0));
  std::vector<SparseMatrix<Rational>> m(sigma.size(), SparseMatrix<Rational>(dim, dim));
  for (std::size_t k = 0; k < paths.size(); ++k) {
    const std::size_t base = k * (n + 1);
    alpha[base] = values[k];
    beta[base + n] = 1;
    for (std::size_t t = 0; t < n; ++t) {
      int need = paths[k][order[t]];
      for (std::size_t s = 0; s < sigma.size(); ++s) {
        if (need < 0 || static_cast<std::size_t>(need) == s) m[s].set(base + t, base + t + 1, Rational(1));
      }
    }
  }
  Wa out({sigma}, std::move(alpha), std::move(beta));
  for (std::size_t s = 0; s < sigma.size(); ++s) out.set_transition(s, std::move(m[s]));
  return out;
}

inline Wa ensemble_reg_to_wa(const TreeEnsemble& e, const std::vector<std::size_t>& order) {
  if (e.mode() != EnsembleMode::kRegression) {
    throw Unsupported(
        "vote-classification ensembles cannot be compiled: SHAP for them is computationally "
        "hard (NP-hard for baseline SHAP), so no polynomial automaton exists unless P = NP");
  }
  Wa total = scale(e.weights()[0], dt_to_wa(e.trees()[0], order));
  for (std::size_t k = 1; k < e.trees().size(); ++k) {
    total = add(total, scale(e.weights()[k], dt_to_wa(e.trees()[k], order)));
  }
  return total;
}

// Two rails over positions 0..n: rail 0 has added nothing yet, rail 1 has
// added exactly one weight. Leaving rail 0 at step t adds w[order[t]][x].
// The intercept is a separate constant block.
inline Wa linear_to_wa(const LinearModel& model, const std::vector<std::size_t>& order) {
  const std::size_t n = model.num_features();
  if (order.size() != n) throw DomainError("order does not cover the linear model's features");
  require_permutation(order);
  const Alphabet& sigma = model.domain();
  auto id = [](std::size_t t, std::size_t rail) { return 2 * t + rail; };
  const std::size_t dim = 2 * (n + 1);
  std::vector<Rational> alpha(dim, Rational(0)), beta(dim, Rational(0));
  alpha[id(0, 0)] = 1;
  beta[id(n, 1)] = 1;
  std::vector<SparseMatrix<Rational>> m(sigma.size(), SparseMatrix<Rational>(dim, dim));
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t s = 0; s < sigma.size(); ++s) {
      m[s].set(id(t, 0), id(t + 1, 0), Rational(1));
      m[s].set(id(t, 0), id(t + 1, 1), model.weights()[order[t]][s]);
      m[s].set(id(t, 1), id(t + 1, 1), Rational(1));
    }
  }
  Wa rails({sigma}, std::move(alpha), std::move(beta));
  for (std::size_t s = 0; s < sigma.size(); ++s) rails.set_transition(s, std::move(m[s]));
  return add(rails, constant_wa<Rational>({sigma}, model.intercept()));
}

namespace detail {

inline std::vector<std::size_t> order_or_identity(const std::vector<std::size_t>& order, std::size_t n) {
  if (order.empty()) return identity_order(n);
  if (order.size() != n) throw DomainError("order does not cover the distribution's features");
  require_permutation(order);
  return order;
}

}  // namespace detail

// Prefix tree of the sequentialized dataset: one hidden state per distinct
// non-empty prefix, emitting its last symbol; the move from prefix u to
// u·s has probability N(u·s)/N(u). An empty order means the identity.
inline HmmVec emp_to_hmmvec(const Dataset& data, const std::vector<std::size_t>& order_in = {}) {
  const Alphabet& sigma = data.alphabet();
  const std::size_t n = data.num_features();
  const auto order = detail::order_or_identity(order_in, n);
  std::map<Word, long> count;
  for (const auto& raw : data.rows()) {
    const Word row = sequentialize(raw, order);
    for (std::size_t len = 1; len <= n; ++len) ++count[row.substr(0, len)];
  }
  std::map<Word, std::size_t> state;
  for (const auto& [prefix, c] : count) state.emplace(prefix, state.size());
  const std::size_t m = state.size();
  const long total = static_cast<long>(data.rows().size());
  std::vector<Rational> initial(m, Rational(0));
  SparseMatrix<Rational> tr(m, m), em(m, sigma.size());
  for (const auto& [prefix, id] : state) {
    em.set(id, sigma.require(prefix.back()), Rational(1));
    if (prefix.size() == 1) {
      Rational p(count[prefix], total);
      p.canonicalize();
      initial[id] = p;
    }
    if (prefix.size() == n) {
      tr.set(id, id, Rational(1));
      continue;
    }
    for (char c : sigma.symbols()) {
      auto it = count.find(prefix + c);
      if (it == count.end()) continue;
      Rational p(it->second, count[prefix]);
      p.canonicalize();
      tr.set(id, state[prefix + c], p);
    }
  }
  return HmmVec(sigma, order, std::move(initial), std::vector<SparseMatrix<Rational>>(n, tr),
                std::vector<SparseMatrix<Rational>>(n, em));
}

// State (h, t) means hidden state h before emitting position t; the block
// t = n absorbs with uniform emissions, so prefix probabilities at length n
// equal the sequence model's probabilities of sequentialize(x, order).
inline Hmm hmmvec_to_hmm(const HmmVec& v) {
  const Alphabet& sigma = v.alphabet();
  const std::size_t m = v.dim(), n = v.num_features();
  auto id = [m](std::size_t h, std::size_t t) { return t * m + h; };
  const std::size_t dim = m * (n + 1);
  std::vector<Rational> initial(dim, Rational(0));
  for (std::size_t h = 0; h < m; ++h) initial[id(h, 0)] = v.initial()[h];
  SparseMatrix<Rational> tr(dim, dim), em(dim, sigma.size());
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t h = 0; h < m; ++h) {
      for (const auto& e : v.transitions()[t].row(h)) tr.set(id(h, t), id(e.col, t + 1), e.value);
      for (const auto& e : v.emissions()[t].row(h)) em.set(id(h, t), e.col, e.value);
    }
  }
  Rational uniform(1, static_cast<long>(sigma.size()));
  uniform.canonicalize();
  for (std::size_t h = 0; h < m; ++h) {
    tr.set(id(h, n), id(h, n), Rational(1));
    for (std::size_t s = 0; s < sigma.size(); ++s) em.set(id(h, n), s, uniform);
  }
  return Hmm(sigma, std::move(initial), std::move(tr), std::move(em));
}

inline HmmVec ind_to_hmmvec(const IndDist& p, const std::vector<std::size_t>& order_in = {}) {
  const std::size_t n = p.num_features();
  const auto order = detail::order_or_identity(order_in, n);
  std::vector<SparseMatrix<Rational>> em;
  for (std::size_t t = 0; t < n; ++t) {
    SparseMatrix<Rational> e(1, p.alphabet().size());
    for (std::size_t s = 0; s < p.alphabet().size(); ++s) e.set(0, s, p.marginals()[order[t]][s]);
    em.push_back(std::move(e));
  }
  return HmmVec(p.alphabet(), order, {Rational(1)},
                std::vector<SparseMatrix<Rational>>(n, SparseMatrix<Rational>::identity(1)), std::move(em));
}

// Hidden state = current symbol, emitted with probability 1.
inline Hmm markov_to_hmm(const MarkovDist& mk) {
  const std::size_t k = mk.alphabet().size();
  return Hmm(mk.alphabet(), mk.initial(), mk.transition(), SparseMatrix<Rational>::identity(k));
}

// Hidden state = class; it never changes and emits feature j by cond[j].
inline HmmVec nb_to_hmmvec(const NaiveBayes& nb, const std::vector<std::size_t>& order_in = {}) {
  const std::size_t n = nb.num_features(), c = nb.prior().size();
  const auto order = detail::order_or_identity(order_in, n);
  std::vector<SparseMatrix<Rational>> em;
  for (std::size_t t = 0; t < n; ++t) em.push_back(nb.conditionals()[order[t]]);
  return HmmVec(nb.alphabet(), order, nb.prior(),
                std::vector<SparseMatrix<Rational>>(n, SparseMatrix<Rational>::identity(c)), std::move(em));
}

}  // namespace shapwa

#endif  // SHAPWA_FRONTENDS_HPP_
