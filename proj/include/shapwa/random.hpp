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

// Seeded instance generators. Draws use raw mt19937_64 output so that a
// seed yields the same instances on every standard library.

#ifndef SHAPWA_RANDOM_HPP_
#define SHAPWA_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "shapwa/alphabet.hpp"
#include "shapwa/hmm.hpp"
#include "shapwa/scalar.hpp"
#include "shapwa/wa.hpp"

namespace shapwa {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
  }

  bool chance(long num, long den) { return uniform(0, den - 1) < num; }

  // Small signed rational: numerator in [-max_num, max_num], denominator
  // in [1, max_den].
  Rational rational(long max_num = 3, long max_den = 3) {
    Rational q(uniform(-max_num, max_num), uniform(1, max_den));
    q.canonicalize();
    return q;
  }

  Word word(const Alphabet& sigma, std::size_t n) {
    Word w;
    for (std::size_t k = 0; k < n; ++k) w += sigma.symbol(static_cast<std::size_t>(uniform(0, static_cast<long>(sigma.size()) - 1)));
    return w;
  }

  // Probability vector of length n with small positive integer weights;
  // entries are zeroed with probability zero_num/zero_den (one entry is
  // always kept).
  std::vector<Rational> distribution(std::size_t n, long zero_num = 0, long zero_den = 1) {
    std::vector<long> weight(n);
    long total = 0;
    for (auto& x : weight) {
      x = chance(zero_num, zero_den) ? 0 : uniform(1, 4);
      total += x;
    }
    if (total == 0) {
      weight[static_cast<std::size_t>(uniform(0, static_cast<long>(n) - 1))] = 1;
      total = 1;
    }
    std::vector<Rational> out;
    for (long x : weight) {
      Rational q(x, total);
      q.canonicalize();
      out.push_back(q);
    }
    return out;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// 1-tape automaton with random sparse rational entries.
inline Wa random_wa(Rng& rng, const Alphabet& sigma, std::size_t dim, long density_pct = 60) {
  std::vector<Rational> alpha(dim), beta(dim);
  for (auto& x : alpha) x = rng.chance(density_pct, 100) ? rng.rational() : Rational(0);
  for (auto& x : beta) x = rng.chance(density_pct, 100) ? rng.rational() : Rational(0);
  Wa out({sigma}, alpha, beta);
  for (std::size_t s = 0; s < sigma.size(); ++s) {
    SparseMatrix<Rational> m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        if (rng.chance(density_pct, 100)) m.set(r, c, rng.rational());
      }
    }
    out.set_transition(s, std::move(m));
  }
  return out;
}

// 1-tape automaton whose values are 0/1: the indicator of a random
// complete DFA.
inline Wa random_boolean_wa(Rng& rng, const Alphabet& sigma, std::size_t dim) {
  std::vector<Rational> alpha(dim, Rational(0)), beta(dim, Rational(0));
  alpha[0] = 1;
  for (auto& x : beta) x = rng.chance(1, 2) ? 1 : 0;
  Wa out({sigma}, alpha, beta);
  for (std::size_t s = 0; s < sigma.size(); ++s) {
    SparseMatrix<Rational> m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) m.set(r, static_cast<std::size_t>(rng.uniform(0, static_cast<long>(dim) - 1)), Rational(1));
    out.set_transition(s, std::move(m));
  }
  return out;
}

inline SparseMatrix<Rational> random_stochastic(Rng& rng, std::size_t rows, std::size_t cols,
                                                long zero_num = 1, long zero_den = 3) {
  SparseMatrix<Rational> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto p = rng.distribution(cols, zero_num, zero_den);
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, p[c]);
  }
  return m;
}

inline Hmm random_hmm(Rng& rng, const Alphabet& sigma, std::size_t dim) {
  return Hmm(sigma, rng.distribution(dim, 1, 3), random_stochastic(rng, dim, dim),
             random_stochastic(rng, dim, sigma.size()));
}

}  // namespace shapwa

#endif  // SHAPWA_RANDOM_HPP_
