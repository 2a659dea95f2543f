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

// Source problems of the hardness gadgets.

#ifndef SHAPWA_GAMES_HPP_
#define SHAPWA_GAMES_HPP_

#include <cstddef>
#include <cstdlib>
#include <string>
#include <vector>

#include "shapwa/alphabet.hpp"
#include "shapwa/error.hpp"

namespace shapwa {

// Weighted majority game: coalition S wins iff sum_{j in S} n_j >= q.
struct Wmg {
  std::vector<long> weights;
  long quota = 0;

  Wmg() = default;
  Wmg(std::vector<long> w, long q) : weights(std::move(w)), quota(q) {
    for (long x : weights) {
      if (x < 0) throw DomainError("voting powers must be non-negative");
    }
  }

  std::size_t players() const { return weights.size(); }

  // Bit j of mask set means player j+1 is in the coalition.
  bool wins(unsigned long mask) const {
    long s = 0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
      if (mask >> j & 1UL) s += weights[j];
    }
    return s >= quota;
  }
};

// CNF over variables 1..n; literal +v / -v.
struct CnfFormula {
  std::size_t variables = 0;
  std::vector<std::vector<int>> clauses;

  CnfFormula() = default;
  CnfFormula(std::size_t n, std::vector<std::vector<int>> cs) : variables(n), clauses(std::move(cs)) {
    for (const auto& c : clauses) {
      for (int lit : c) {
        if (lit == 0 || static_cast<std::size_t>(std::abs(lit)) > variables) {
          throw DomainError("literal " + std::to_string(lit) + " out of range");
        }
      }
    }
  }

  // Bit v-1 of assignment is the value of variable v.
  bool satisfied_by(unsigned long assignment) const {
    for (const auto& c : clauses) {
      bool sat = false;
      for (int lit : c) {
        bool value = assignment >> (std::abs(lit) - 1) & 1UL;
        if ((lit > 0) == value) {
          sat = true;
          break;
        }
      }
      if (!sat) return false;
    }
    return true;
  }
};

// Closest string: is there a word within Hamming distance k of every
// string?
struct CspInstance {
  Alphabet alphabet;
  std::vector<Word> strings;
  std::size_t radius = 0;

  CspInstance(Alphabet a, std::vector<Word> s, std::size_t k)
      : alphabet(std::move(a)), strings(std::move(s)), radius(k) {
    if (strings.empty()) throw DomainError("closest-string instance needs at least one string");
    for (const auto& w : strings) {
      if (w.size() != strings[0].size()) throw DomainError("closest-string strings differ in length");
      alphabet.require_word(w);
    }
  }

  std::size_t length() const { return strings[0].size(); }
};

}  // namespace shapwa

#endif  // SHAPWA_GAMES_HPP_
