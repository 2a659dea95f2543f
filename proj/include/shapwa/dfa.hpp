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

#ifndef SHAPWA_DFA_HPP_
#define SHAPWA_DFA_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "shapwa/alphabet.hpp"
#include "shapwa/error.hpp"
#include "shapwa/wa.hpp"

namespace shapwa {

// Deterministic automaton over N synchronized tapes with a partial
// transition function. States are 0..size()-1.
class Dfa {
 public:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  Dfa(std::vector<Alphabet> alphabets, std::size_t states, std::size_t initial)
      : alphabets_(std::move(alphabets)), states_(states), initial_(initial), finals_(states, false) {
    if (alphabets_.empty()) throw DomainError("DFA needs at least one tape");
    if (states == 0 || initial >= states) throw DomainError("DFA initial state out of range");
    tuples_ = 1;
    for (const auto& a : alphabets_) tuples_ *= a.size();
    delta_.assign(tuples_, std::vector<std::size_t>(states, kNone));
  }

  std::size_t arity() const { return alphabets_.size(); }
  std::size_t size() const { return states_; }
  std::size_t initial() const { return initial_; }
  const std::vector<Alphabet>& alphabets() const { return alphabets_; }
  std::size_t tuple_count() const { return tuples_; }
  bool is_final(std::size_t q) const { return finals_.at(q); }

  std::vector<std::size_t> tuple_symbols(std::size_t t) const {
    std::vector<std::size_t> out(alphabets_.size());
    for (std::size_t k = alphabets_.size(); k-- > 0;) {
      out[k] = t % alphabets_[k].size();
      t /= alphabets_[k].size();
    }
    return out;
  }

  std::string tuple_string(std::size_t t) const {
    auto idx = tuple_symbols(t);
    std::string s;
    for (std::size_t k = 0; k < idx.size(); ++k) s += alphabets_[k].symbol(idx[k]);
    return s;
  }

  void set_final(std::size_t q, bool final = true) { finals_.at(q) = final; }

  void add_transition(std::size_t from, std::size_t tuple, std::size_t to) {
    if (from >= states_ || to >= states_) throw DomainError("DFA state out of range");
    if (tuple >= tuples_) throw DomainError("DFA symbol tuple out of range");
    std::size_t& slot = delta_[tuple][from];
    if (slot != kNone && slot != to) throw DomainError("DFA transition is not deterministic");
    slot = to;
  }

  // One character per tape.
  void add_transition(std::size_t from, const std::string& symbols, std::size_t to) {
    if (symbols.size() != arity()) throw DomainError("symbol tuple has wrong arity");
    std::size_t t = 0;
    for (std::size_t k = 0; k < arity(); ++k) t = t * alphabets_[k].size() + alphabets_[k].require(symbols[k]);
    add_transition(from, t, to);
  }

  std::size_t next(std::size_t from, std::size_t tuple) const { return delta_[tuple][from]; }

  bool accepts(const std::vector<Word>& tapes) const {
    if (tapes.size() != arity()) throw DomainError("wrong number of tapes for DFA");
    const std::size_t len = tapes.front().size();
    std::size_t q = initial_;
    for (std::size_t j = 0; j < len; ++j) {
      std::size_t t = 0;
      for (std::size_t k = 0; k < arity(); ++k) {
        if (tapes[k].size() != len) throw DomainError("words on different tapes differ in length");
        t = t * alphabets_[k].size() + alphabets_[k].require(tapes[k][j]);
      }
      q = delta_[t][q];
      if (q == kNone) return false;
    }
    return finals_[q];
  }

 private:
  std::vector<Alphabet> alphabets_;
  std::size_t states_;
  std::size_t initial_;
  std::vector<bool> finals_;
  std::size_t tuples_ = 1;
  std::vector<std::vector<std::size_t>> delta_;
};

// 0/1 indicator automaton of the accepted language, one state per DFA
// state.
template <class T = Rational>
BasicWa<T> dfa_to_wa(const Dfa& d) {
  std::vector<T> alpha(d.size(), ScalarTraits<T>::zero());
  std::vector<T> beta(d.size(), ScalarTraits<T>::zero());
  alpha[d.initial()] = ScalarTraits<T>::one();
  for (std::size_t q = 0; q < d.size(); ++q) {
    if (d.is_final(q)) beta[q] = ScalarTraits<T>::one();
  }
  BasicWa<T> out(d.alphabets(), std::move(alpha), std::move(beta));
  for (std::size_t t = 0; t < d.tuple_count(); ++t) {
    SparseMatrix<T> m(d.size(), d.size());
    bool any = false;
    for (std::size_t q = 0; q < d.size(); ++q) {
      std::size_t to = d.next(q, t);
      if (to != Dfa::kNone) {
        m.set(q, to, ScalarTraits<T>::one());
        any = true;
      }
    }
    if (any) out.set_transition(t, std::move(m));
  }
  return out;
}

}  // namespace shapwa

#endif  // SHAPWA_DFA_HPP_
