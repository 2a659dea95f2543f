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

// Seeded generators for tabular models, distributions and source
// problems of the gadgets.

#ifndef SHAPWA_RANDOM_MODELS_HPP_
#define SHAPWA_RANDOM_MODELS_HPP_

#include <algorithm>
#include <cstddef>
#include <vector>

#include "shapwa/distributions.hpp"
#include "shapwa/games.hpp"
#include "shapwa/random.hpp"
#include "shapwa/tabular.hpp"

namespace shapwa {

namespace detail {

inline std::size_t grow_tree(Rng& rng, const Alphabet& domain, std::vector<char>& used,
                             std::vector<TreeNode>& nodes, std::size_t max_nodes, bool binary_leaves) {
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < used.size(); ++j) {
    if (!used[j]) free.push_back(j);
  }
  const bool room = nodes.size() + 1 + domain.size() <= max_nodes;
  if (free.empty() || !room || (!nodes.empty() && rng.chance(1, 3))) {
    TreeNode leaf;
    leaf.value = binary_leaves ? Rational(rng.uniform(0, 1)) : rng.rational(3, 2);
    nodes.push_back(leaf);
    return nodes.size() - 1;
  }
  const std::size_t id = nodes.size();
  nodes.emplace_back();
  const std::size_t f = free[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(free.size()) - 1))];
  nodes[id].feature = f;
  used[f] = 1;
  std::vector<std::size_t> children;
  for (std::size_t d = 0; d < domain.size(); ++d) {
    // Leave one node for each remaining sibling.
    const std::size_t reserve = domain.size() - d - 1;
    children.push_back(grow_tree(rng, domain, used, nodes, max_nodes - reserve, binary_leaves));
  }
  used[f] = 0;
  nodes[id].children = std::move(children);
  return id;
}

}  // namespace detail

// Random tree with at most max_nodes nodes (at least 1 + |domain|).
inline DecisionTree random_tree(Rng& rng, const Alphabet& domain, std::size_t n, std::size_t max_nodes,
                                bool binary_leaves = false) {
  std::vector<TreeNode> nodes;
  std::vector<char> used(n, 0);
  detail::grow_tree(rng, domain, used, nodes, max_nodes, binary_leaves);
  return DecisionTree(domain, n, std::move(nodes));
}

inline TreeEnsemble random_ensemble(Rng& rng, const Alphabet& domain, std::size_t n, std::size_t max_trees,
                                    std::size_t max_nodes) {
  const std::size_t k = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_trees)));
  std::vector<DecisionTree> trees;
  std::vector<Rational> weights;
  for (std::size_t t = 0; t < k; ++t) {
    trees.push_back(random_tree(rng, domain, n, max_nodes));
    weights.push_back(rng.rational(3, 2));
  }
  return TreeEnsemble(std::move(trees), std::move(weights), EnsembleMode::kRegression);
}

inline LinearModel random_linear(Rng& rng, const Alphabet& domain, std::size_t n) {
  std::vector<std::vector<Rational>> w(n);
  for (auto& row : w) {
    for (std::size_t d = 0; d < domain.size(); ++d) row.push_back(rng.rational(3, 3));
  }
  return LinearModel(domain, std::move(w), rng.rational(3, 2));
}

inline std::vector<std::size_t> random_order(Rng& rng, std::size_t n) {
  auto order = identity_order(n);
  for (std::size_t t = n; t > 1; --t) {
    std::swap(order[t - 1], order[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(t) - 1))]);
  }
  return order;
}

inline HmmVec random_hmmvec(Rng& rng, const Alphabet& sigma, std::size_t n, std::size_t dim,
                            std::vector<std::size_t> order) {
  std::vector<SparseMatrix<Rational>> tr, em;
  for (std::size_t t = 0; t < n; ++t) {
    tr.push_back(random_stochastic(rng, dim, dim));
    em.push_back(random_stochastic(rng, dim, sigma.size()));
  }
  return HmmVec(sigma, std::move(order), rng.distribution(dim, 1, 3), std::move(tr), std::move(em));
}

inline Dataset random_dataset(Rng& rng, const Alphabet& sigma, std::size_t n, std::size_t max_rows) {
  const std::size_t rows = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_rows)));
  std::vector<Word> data;
  for (std::size_t r = 0; r < rows; ++r) data.push_back(rng.word(sigma, n));
  return Dataset(sigma, std::move(data));
}

// Clauses of exactly `width` literals over variables 1..n.
inline CnfFormula random_cnf(Rng& rng, std::size_t n, std::size_t m, std::size_t width = 3) {
  std::vector<std::vector<int>> clauses(m);
  for (auto& c : clauses) {
    for (std::size_t k = 0; k < width; ++k) {
      int v = static_cast<int>(rng.uniform(1, static_cast<long>(n)));
      c.push_back(rng.chance(1, 2) ? v : -v);
    }
  }
  return CnfFormula(n, std::move(clauses));
}

inline Wmg random_wmg(Rng& rng, std::size_t n, long max_weight) {
  std::vector<long> w(n);
  long total = 0;
  for (auto& x : w) {
    x = rng.uniform(0, max_weight);
    total += x;
  }
  return Wmg(std::move(w), rng.uniform(1, std::max(1L, total)));
}

}  // namespace shapwa

#endif  // SHAPWA_RANDOM_MODELS_HPP_
