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

// Feature distributions over fixed-length inputs, each with its direct
// probability formula.

#ifndef SHAPWA_DISTRIBUTIONS_HPP_
#define SHAPWA_DISTRIBUTIONS_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "shapwa/alphabet.hpp"
#include "shapwa/error.hpp"
#include "shapwa/hmm.hpp"
#include "shapwa/scalar.hpp"
#include "shapwa/sparse_matrix.hpp"
#include "shapwa/tabular.hpp"

namespace shapwa {

// Non-stationary HMM over n features read in the order `order`: step t
// emits feature order[t] from emissions[t] and then moves by
// transitions[t].
class HmmVec {
 public:
  HmmVec(Alphabet alphabet, std::vector<std::size_t> order, std::vector<Rational> initial,
         std::vector<SparseMatrix<Rational>> transitions, std::vector<SparseMatrix<Rational>> emissions)
      : alphabet_(std::move(alphabet)),
        order_(std::move(order)),
        initial_(std::move(initial)),
        transitions_(std::move(transitions)),
        emissions_(std::move(emissions)) {
    const std::size_t n = order_.size();
    const std::size_t m = initial_.size();
    require_permutation(order_);
    if (m == 0) throw DomainError("HMM needs at least one hidden state");
    if (transitions_.size() != n || emissions_.size() != n) {
      throw DomainError("HMM sequence model needs one transition and emission matrix per position");
    }
    detail::require_stochastic_vector(initial_, "initial distribution");
    for (std::size_t t = 0; t < n; ++t) {
      if (transitions_[t].rows() != m || transitions_[t].cols() != m) {
        throw DomainError("transition matrix " + std::to_string(t + 1) + " has wrong shape");
      }
      if (emissions_[t].rows() != m || emissions_[t].cols() != alphabet_.size()) {
        throw DomainError("emission matrix " + std::to_string(t + 1) + " has wrong shape");
      }
      detail::require_stochastic_rows(transitions_[t], "transition matrix " + std::to_string(t + 1));
      detail::require_stochastic_rows(emissions_[t], "emission matrix " + std::to_string(t + 1));
    }
  }

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_features() const { return order_.size(); }
  std::size_t dim() const { return initial_.size(); }
  const std::vector<std::size_t>& order() const { return order_; }
  const std::vector<Rational>& initial() const { return initial_; }
  const std::vector<SparseMatrix<Rational>>& transitions() const { return transitions_; }
  const std::vector<SparseMatrix<Rational>>& emissions() const { return emissions_; }

  // P(x) for a feature-indexed input x.
  Rational probability(const Word& x) const {
    detail::require_input(alphabet_, order_.size(), x);
    std::vector<Rational> v = initial_;
    for (std::size_t t = 0; t < order_.size(); ++t) {
      std::size_t s = alphabet_.require(x[order_[t]]);
      std::vector<Rational> next(v.size(), Rational(0));
      for (std::size_t h = 0; h < v.size(); ++h) {
        if (sgn(v[h]) == 0) continue;
        Rational e = emissions_[t].at(h, s);
        if (sgn(e) == 0) continue;
        Rational ve = v[h] * e;
        for (const auto& tr : transitions_[t].row(h)) next[tr.col] += ve * tr.value;
      }
      v.swap(next);
    }
    Rational total = 0;
    for (const auto& p : v) total += p;
    return total;
  }

 private:
  Alphabet alphabet_;
  std::vector<std::size_t> order_;
  std::vector<Rational> initial_;
  std::vector<SparseMatrix<Rational>> transitions_;
  std::vector<SparseMatrix<Rational>> emissions_;
};

// Empirical distribution of a list of equal-length rows.
class Dataset {
 public:
  Dataset(Alphabet alphabet, std::vector<Word> rows) : alphabet_(std::move(alphabet)), rows_(std::move(rows)) {
    if (rows_.empty()) throw DomainError("dataset is empty");
    for (const auto& r : rows_) {
      if (r.size() != rows_[0].size()) throw DomainError("dataset rows differ in length");
      alphabet_.require_word(r);
    }
    if (rows_[0].empty()) throw DomainError("dataset rows are empty");
  }

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Word>& rows() const { return rows_; }
  std::size_t num_features() const { return rows_[0].size(); }

  Rational probability(const Word& x) const {
    detail::require_input(alphabet_, num_features(), x);
    long count = 0;
    for (const auto& r : rows_) count += r == x;
    Rational q(count, static_cast<long>(rows_.size()));
    q.canonicalize();
    return q;
  }

 private:
  Alphabet alphabet_;
  std::vector<Word> rows_;
};

// Independent features: P(x) = prod_j p(j, x_j).
class IndDist {
 public:
  IndDist(Alphabet alphabet, std::vector<std::vector<Rational>> marginals)
      : alphabet_(std::move(alphabet)), marginals_(std::move(marginals)) {
    if (marginals_.empty()) throw DomainError("independent distribution has no features");
    for (std::size_t j = 0; j < marginals_.size(); ++j) {
      if (marginals_[j].size() != alphabet_.size()) {
        throw DomainError("marginal " + std::to_string(j + 1) + " needs one entry per symbol");
      }
      detail::require_stochastic_vector(marginals_[j], "marginal " + std::to_string(j + 1));
    }
  }

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_features() const { return marginals_.size(); }
  const std::vector<std::vector<Rational>>& marginals() const { return marginals_; }

  Rational probability(const Word& x) const {
    detail::require_input(alphabet_, marginals_.size(), x);
    Rational p = 1;
    for (std::size_t j = 0; j < x.size(); ++j) p *= marginals_[j][alphabet_.require(x[j])];
    return p;
  }

 private:
  Alphabet alphabet_;
  std::vector<std::vector<Rational>> marginals_;
};

// First-order Markov chain over symbols: P(w) = pi[w_1] prod T[w_{t-1}, w_t].
class MarkovDist {
 public:
  MarkovDist(Alphabet alphabet, std::vector<Rational> initial, SparseMatrix<Rational> transition)
      : alphabet_(std::move(alphabet)), initial_(std::move(initial)), transition_(std::move(transition)) {
    if (initial_.size() != alphabet_.size()) throw DomainError("Markov initial vector needs one entry per symbol");
    if (transition_.rows() != alphabet_.size() || transition_.cols() != alphabet_.size()) {
      throw DomainError("Markov transition matrix has wrong shape");
    }
    detail::require_stochastic_vector(initial_, "Markov initial distribution");
    detail::require_stochastic_rows(transition_, "Markov transition matrix");
  }

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Rational>& initial() const { return initial_; }
  const SparseMatrix<Rational>& transition() const { return transition_; }

  Rational probability(const Word& w) const {
    alphabet_.require_word(w);
    if (w.empty()) return Rational(1);
    Rational p = initial_[alphabet_.require(w[0])];
    for (std::size_t t = 1; t < w.size() && sgn(p) != 0; ++t) {
      p *= transition_.at(alphabet_.require(w[t - 1]), alphabet_.require(w[t]));
    }
    return p;
  }

 private:
  Alphabet alphabet_;
  std::vector<Rational> initial_;
  SparseMatrix<Rational> transition_;
};

// Features independent given a latent class y:
// P(x) = sum_y prior[y] prod_j cond[j](y, x_j).
class NaiveBayes {
 public:
  NaiveBayes(Alphabet alphabet, std::vector<Rational> prior, std::vector<SparseMatrix<Rational>> conditionals)
      : alphabet_(std::move(alphabet)), prior_(std::move(prior)), conditionals_(std::move(conditionals)) {
    if (conditionals_.empty()) throw DomainError("naive Bayes model has no features");
    detail::require_stochastic_vector(prior_, "class prior");
    for (std::size_t j = 0; j < conditionals_.size(); ++j) {
      if (conditionals_[j].rows() != prior_.size() || conditionals_[j].cols() != alphabet_.size()) {
        throw DomainError("conditional table " + std::to_string(j + 1) + " has wrong shape");
      }
      detail::require_stochastic_rows(conditionals_[j], "conditional table " + std::to_string(j + 1));
    }
  }

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_features() const { return conditionals_.size(); }
  const std::vector<Rational>& prior() const { return prior_; }
  const std::vector<SparseMatrix<Rational>>& conditionals() const { return conditionals_; }

  Rational probability(const Word& x) const {
    detail::require_input(alphabet_, conditionals_.size(), x);
    Rational total = 0;
    for (std::size_t y = 0; y < prior_.size(); ++y) {
      Rational p = prior_[y];
      for (std::size_t j = 0; j < x.size() && sgn(p) != 0; ++j) p *= conditionals_[j].at(y, alphabet_.require(x[j]));
      total += p;
    }
    return total;
  }

 private:
  Alphabet alphabet_;
  std::vector<Rational> prior_;
  std::vector<SparseMatrix<Rational>> conditionals_;
};

}  // namespace shapwa

#endif  // SHAPWA_DISTRIBUTIONS_HPP_
