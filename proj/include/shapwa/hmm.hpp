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

#ifndef SHAPWA_HMM_HPP_
#define SHAPWA_HMM_HPP_

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "shapwa/alphabet.hpp"
#include "shapwa/error.hpp"
#include "shapwa/sparse_matrix.hpp"
#include "shapwa/wa.hpp"

namespace shapwa {

namespace detail {

template <class T>
bool is_unit_sum(const T& s) {
  if constexpr (ScalarTraits<T>::kExact) {
    return s == 1;
  } else {
    return std::abs(s - 1.0) <= 1e-9;
  }
}

template <class T>
void require_stochastic_vector(const std::vector<T>& v, const std::string& what) {
  T s = ScalarTraits<T>::zero();
  for (const auto& x : v) {
    if (x < 0) throw DomainError(what + " has a negative entry");
    s += x;
  }
  if (!is_unit_sum(s)) throw DomainError(what + " does not sum to 1");
}

template <class T>
void require_stochastic_rows(const SparseMatrix<T>& m, const std::string& what) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& e : m.row(r)) {
      if (e.value < 0) throw DomainError(what + " has a negative entry in row " + std::to_string(r + 1));
    }
    if (!is_unit_sum(m.row_sum(r))) {
      throw DomainError(what + " row " + std::to_string(r + 1) + " does not sum to 1");
    }
  }
}

}  // namespace detail

// Stationary hidden Markov model <initial, transition, emission>. The
// sequence model emits from the current state and then moves, so
//   P(w) = initial^T * prod_j (Diag(O[:, w_j]) * T) * 1
// is the probability that a generated sequence starts with w. It is kept
// alongside its 1-tape automaton with matrices Diag(O[:, s]) * T and an
// all-ones final vector.
template <class T>
class BasicHmm {
 public:
  BasicHmm(Alphabet alphabet, std::vector<T> initial, SparseMatrix<T> transition,
           SparseMatrix<T> emission)
      : alphabet_(std::move(alphabet)),
        initial_(std::move(initial)),
        transition_(std::move(transition)),
        emission_(std::move(emission)),
        wa_(build(alphabet_, initial_, transition_, emission_)) {}

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t dim() const { return initial_.size(); }
  const std::vector<T>& initial() const { return initial_; }
  const SparseMatrix<T>& transition() const { return transition_; }
  const SparseMatrix<T>& emission() const { return emission_; }
  const BasicWa<T>& wa() const { return wa_; }

  T prefix_probability(const Word& w) const { return eval(wa_, w); }

 private:
  static BasicWa<T> build(const Alphabet& sigma, const std::vector<T>& initial,
                          const SparseMatrix<T>& transition, const SparseMatrix<T>& emission) {
    const std::size_t n = initial.size();
    if (n == 0) throw DomainError("HMM needs at least one hidden state");
    if (transition.rows() != n || transition.cols() != n) {
      throw DomainError("HMM transition matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    if (emission.rows() != n || emission.cols() != sigma.size()) {
      throw DomainError("HMM emission matrix must be " + std::to_string(n) + "x" +
                        std::to_string(sigma.size()));
    }
    detail::require_stochastic_vector(initial, "HMM initial distribution");
    detail::require_stochastic_rows(transition, "HMM transition matrix");
    detail::require_stochastic_rows(emission, "HMM emission matrix");
    BasicWa<T> wa({sigma}, initial, std::vector<T>(n, ScalarTraits<T>::one()));
    for (std::size_t s = 0; s < sigma.size(); ++s) {
      SparseMatrix<T> m(n, n);
      for (std::size_t h = 0; h < n; ++h) {
        T o = emission.at(h, s);
        if (ScalarTraits<T>::is_zero(o)) continue;
        typename SparseMatrix<T>::Row row;
        for (const auto& e : transition.row(h)) row.push_back({e.col, o * e.value});
        m.assign_row(h, std::move(row));
      }
      wa.set_transition(s, std::move(m));
    }
    return wa;
  }

  Alphabet alphabet_;
  std::vector<T> initial_;
  SparseMatrix<T> transition_;
  SparseMatrix<T> emission_;
  BasicWa<T> wa_;
};

using Hmm = BasicHmm<Rational>;

// One state emitting every symbol with probability 1/|Σ|.
template <class T = Rational>
BasicHmm<T> uniform_hmm(const Alphabet& sigma) {
  SparseMatrix<T> o(1, sigma.size());
  T p = ScalarTraits<T>::one() / T(static_cast<long>(sigma.size()));
  for (std::size_t s = 0; s < sigma.size(); ++s) o.set(0, s, p);
  return BasicHmm<T>(sigma, {ScalarTraits<T>::one()}, SparseMatrix<T>::identity(1), std::move(o));
}

template <class U>
BasicHmm<U> cast_hmm(const Hmm& h) {
  std::vector<U> init;
  for (const auto& x : h.initial()) init.push_back(ScalarTraits<U>::from_rational(x));
  return BasicHmm<U>(h.alphabet(), std::move(init), h.transition().template cast<U>(),
                     h.emission().template cast<U>());
}

}  // namespace shapwa

#endif  // SHAPWA_HMM_HPP_
