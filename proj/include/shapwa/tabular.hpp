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

// Tabular models over n features with values in a shared domain. An input
// x is a Word with x[j] the value of feature j+1.

#ifndef SHAPWA_TABULAR_HPP_
#define SHAPWA_TABULAR_HPP_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "shapwa/alphabet.hpp"
#include "shapwa/error.hpp"
#include "shapwa/scalar.hpp"

namespace shapwa {

namespace detail {

inline void require_input(const Alphabet& domain, std::size_t n, const Word& x) {
  if (x.size() != n) {
    throw DomainError("input has " + std::to_string(x.size()) + " features, model expects " +
                      std::to_string(n));
  }
  domain.require_word(x);
}

}  // namespace detail

struct TreeNode {
  static constexpr std::size_t kLeaf = static_cast<std::size_t>(-1);
  // 0-based feature tested here, or kLeaf.
  std::size_t feature = kLeaf;
  // One child per domain value, in domain order.
  std::vector<std::size_t> children;
  Rational value;
};

// Decision tree (or decision DAG) with rational leaf values.
class DecisionTree {
 public:
  DecisionTree(Alphabet domain, std::size_t num_features, std::vector<TreeNode> nodes,
               std::size_t root = 0)
      : domain_(std::move(domain)), n_(num_features), nodes_(std::move(nodes)), root_(root) {
    if (nodes_.empty() || root_ >= nodes_.size()) throw DomainError("decision tree has no root");
    for (const auto& node : nodes_) {
      if (node.feature == TreeNode::kLeaf) continue;
      if (node.feature >= n_) throw DomainError("decision tree tests a feature out of range");
      if (node.children.size() != domain_.size()) {
        throw DomainError("decision tree node needs one child per domain value");
      }
      for (auto c : node.children) {
        if (c >= nodes_.size()) throw DomainError("decision tree child index out of range");
      }
    }
    std::vector<char> on_path(n_, 0), on_stack(nodes_.size(), 0);
    check(root_, on_path, on_stack);
  }

  static DecisionTree leaf(Alphabet domain, std::size_t num_features, Rational value) {
    TreeNode node;
    node.value = std::move(value);
    return DecisionTree(std::move(domain), num_features, {node});
  }

  const Alphabet& domain() const { return domain_; }
  std::size_t num_features() const { return n_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::size_t root() const { return root_; }

  Rational evaluate(const Word& x) const {
    detail::require_input(domain_, n_, x);
    std::size_t v = root_;
    while (nodes_[v].feature != TreeNode::kLeaf) {
      v = nodes_[v].children[domain_.require(x[nodes_[v].feature])];
    }
    return nodes_[v].value;
  }

  // Calls visit(constraint, value) once per root-to-leaf path, where
  // constraint[j] is the required value index of feature j or -1.
  void for_each_path(const std::function<void(const std::vector<int>&, const Rational&)>& visit) const {
    std::vector<int> constraint(n_, -1);
    walk(root_, constraint, visit);
  }

 private:
  void check(std::size_t v, std::vector<char>& on_path, std::vector<char>& on_stack) const {
    if (on_stack[v]) throw DomainError("decision tree contains a cycle");
    const auto& node = nodes_[v];
    if (node.feature == TreeNode::kLeaf) return;
    if (on_path[node.feature]) {
      throw DomainError("feature " + std::to_string(node.feature + 1) +
                        " is tested twice on one root-to-leaf path");
    }
    on_path[node.feature] = 1;
    on_stack[v] = 1;
    for (auto c : node.children) check(c, on_path, on_stack);
    on_stack[v] = 0;
    on_path[node.feature] = 0;
  }

  void walk(std::size_t v, std::vector<int>& constraint,
            const std::function<void(const std::vector<int>&, const Rational&)>& visit) const {
    const auto& node = nodes_[v];
    if (node.feature == TreeNode::kLeaf) {
      visit(constraint, node.value);
      return;
    }
    for (std::size_t d = 0; d < node.children.size(); ++d) {
      constraint[node.feature] = static_cast<int>(d);
      walk(node.children[d], constraint, visit);
    }
    constraint[node.feature] = -1;
  }

  Alphabet domain_;
  std::size_t n_;
  std::vector<TreeNode> nodes_;
  std::size_t root_;
};

enum class EnsembleMode { kRegression, kVote };

// Weighted tree ensemble. Regression: sum_k w_k f_k(x). Vote: each tree
// votes +1 for class 1 and -1 for class 0; the output is 1 iff the
// weighted vote is >= 0.
class TreeEnsemble {
 public:
  TreeEnsemble(std::vector<DecisionTree> trees, std::vector<Rational> weights, EnsembleMode mode)
      : trees_(std::move(trees)), weights_(std::move(weights)), mode_(mode) {
    if (trees_.empty()) throw DomainError("ensemble has no trees");
    if (trees_.size() != weights_.size()) throw DomainError("ensemble needs one weight per tree");
    for (const auto& t : trees_) {
      if (t.domain() != trees_[0].domain() || t.num_features() != trees_[0].num_features()) {
        throw DomainError("ensemble trees disagree on domain or feature count");
      }
      if (mode_ == EnsembleMode::kVote) {
        for (const auto& node : t.nodes()) {
          if (node.feature == TreeNode::kLeaf && node.value != 0 && node.value != 1) {
            throw DomainError("vote ensembles need leaf labels 0 or 1");
          }
        }
      }
    }
  }

  const std::vector<DecisionTree>& trees() const { return trees_; }
  const std::vector<Rational>& weights() const { return weights_; }
  EnsembleMode mode() const { return mode_; }
  const Alphabet& domain() const { return trees_[0].domain(); }
  std::size_t num_features() const { return trees_[0].num_features(); }

  Rational evaluate(const Word& x) const {
    Rational s = 0;
    for (std::size_t k = 0; k < trees_.size(); ++k) {
      Rational v = trees_[k].evaluate(x);
      if (mode_ == EnsembleMode::kVote) v = 2 * v - 1;
      s += weights_[k] * v;
    }
    if (mode_ == EnsembleMode::kVote) return sgn(s) >= 0 ? Rational(1) : Rational(0);
    return s;
  }

 private:
  std::vector<DecisionTree> trees_;
  std::vector<Rational> weights_;
  EnsembleMode mode_;
};

// f(x) = sum_j w[j][x_j] + b. Feature values absent from a feature's own
// domain carry weight 0.
class LinearModel {
 public:
  LinearModel(Alphabet domain, std::vector<std::vector<Rational>> weights, Rational intercept)
      : domain_(std::move(domain)), weights_(std::move(weights)), intercept_(std::move(intercept)) {
    for (const auto& row : weights_) {
      if (row.size() != domain_.size()) throw DomainError("linear model needs one weight per domain value");
    }
  }

  const Alphabet& domain() const { return domain_; }
  std::size_t num_features() const { return weights_.size(); }
  const std::vector<std::vector<Rational>>& weights() const { return weights_; }
  const Rational& intercept() const { return intercept_; }

  Rational evaluate(const Word& x) const {
    detail::require_input(domain_, weights_.size(), x);
    Rational s = intercept_;
    for (std::size_t j = 0; j < x.size(); ++j) s += weights_[j][domain_.require(x[j])];
    return s;
  }

 private:
  Alphabet domain_;
  std::vector<std::vector<Rational>> weights_;
  Rational intercept_;
};

// Word whose t-th symbol is feature order[t] of x.
inline Word sequentialize(const Word& x, const std::vector<std::size_t>& order) {
  if (order.size() != x.size()) throw DomainError("order length differs from input length");
  Word s(x.size(), ' ');
  for (std::size_t t = 0; t < order.size(); ++t) s[t] = x.at(order[t]);
  return s;
}

// Inverse of sequentialize.
inline Word desequentialize(const Word& s, const std::vector<std::size_t>& order) {
  if (order.size() != s.size()) throw DomainError("order length differs from word length");
  Word x(s.size(), ' ');
  for (std::size_t t = 0; t < order.size(); ++t) x.at(order[t]) = s[t];
  return x;
}

inline std::vector<std::size_t> identity_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  for (std::size_t t = 0; t < n; ++t) order[t] = t;
  return order;
}

inline void require_permutation(const std::vector<std::size_t>& order) {
  std::vector<char> seen(order.size(), 0);
  for (auto j : order) {
    if (j >= order.size() || seen[j]) throw DomainError("feature order is not a permutation");
    seen[j] = 1;
  }
}

// Sequence position (1-based) at which feature j (1-based) is read.
inline std::size_t position_of_feature(std::size_t j, const std::vector<std::size_t>& order) {
  for (std::size_t t = 0; t < order.size(); ++t) {
    if (order[t] + 1 == j) return t + 1;
  }
  throw DomainError("feature " + std::to_string(j) + " out of range 1.." + std::to_string(order.size()));
}

}  // namespace shapwa

#endif  // SHAPWA_TABULAR_HPP_
