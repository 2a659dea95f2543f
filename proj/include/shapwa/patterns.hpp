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

// Coalitions of sequence positions written as patterns over Σ ∪ {#}:
// a fixed symbol marks a present position, '#' an absent one.

#ifndef SHAPWA_PATTERNS_HPP_
#define SHAPWA_PATTERNS_HPP_

#include <algorithm>
#include <cstddef>
#include <string>

#include "shapwa/alphabet.hpp"
#include "shapwa/error.hpp"
#include "shapwa/scalar.hpp"

namespace shapwa {

using Pattern = std::string;

inline std::size_t placeholder_count(const Pattern& p) {
  return static_cast<std::size_t>(std::count(p.begin(), p.end(), kPlaceholder));
}

// p with position i (1-based) set to sigma.
inline Pattern swap(const Pattern& p, char sigma, std::size_t i) {
  if (i < 1 || i > p.size()) {
    throw DomainError("swap: position " + std::to_string(i) + " out of range 1.." +
                      std::to_string(p.size()));
  }
  if (sigma == kPlaceholder) throw DomainError("swap: cannot write the placeholder");
  Pattern out = p;
  out[i - 1] = sigma;
  return out;
}

// u_j = w'_j where p_j = '#', u_j = w_j elsewhere.
inline Word do_op(const Pattern& p, const Word& w_prime, const Word& w) {
  if (p.size() != w_prime.size() || p.size() != w.size()) {
    throw DomainError("do: pattern and words differ in length");
  }
  Word u = w;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] == kPlaceholder) u[j] = w_prime[j];
  }
  return u;
}

// w is in the language of p.
inline bool matches(const Word& w, const Pattern& p) {
  if (w.size() != p.size()) throw DomainError("matches: word and pattern differ in length");
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] != kPlaceholder && p[j] != w[j]) return false;
  }
  return true;
}

// Shapley weight of the coalition encoded by p for position i:
// (k-1)! (n-k)! / n! with k = |p|_#, provided w matches p and p_i = '#'.
inline Rational coalition_weight(const Pattern& p, const Word& w, std::size_t i) {
  if (p.size() != w.size()) throw DomainError("coalition_weight: length mismatch");
  if (i < 1 || i > w.size()) throw DomainError("coalition_weight: index out of range");
  if (p[i - 1] != kPlaceholder || !matches(w, p)) return Rational(0);
  const unsigned long n = w.size();
  const unsigned long k = placeholder_count(p);
  Rational q(Integer(factorial(k - 1) * factorial(n - k)), factorial(n));
  q.canonicalize();
  return q;
}

// Number of patterns with k placeholders that match a word of length n and
// hide position i: choose the other k-1 hidden positions among n-1.
inline Integer count_Lik(std::size_t n, std::size_t i, std::size_t k) {
  if (i < 1 || i > n) throw DomainError("count_Lik: index out of range");
  if (k < 1 || k > n) throw DomainError("count_Lik: k must lie in 1..n");
  return binomial(n - 1, k - 1);
}

}  // namespace shapwa

#endif  // SHAPWA_PATTERNS_HPP_
