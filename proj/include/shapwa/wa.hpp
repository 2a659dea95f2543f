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

// N-tape weighted automata over a scalar field and their algebra:
// evaluation, sum, scaling, Kronecker product, projection of one tape
// against a 1-tape automaton, and full contractions.
//
// Tape and feature indices in the public API are 1-based, matching the
// way features are numbered on the command line.

#ifndef SHAPWA_WA_HPP_
#define SHAPWA_WA_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "shapwa/alphabet.hpp"
#include "shapwa/error.hpp"
#include "shapwa/scalar.hpp"
#include "shapwa/sparse_matrix.hpp"

namespace shapwa {

template <class T>
class BasicWa {
 public:
  using Scalar = T;
  using Matrix = SparseMatrix<T>;

  BasicWa(std::vector<Alphabet> alphabets, std::vector<T> alpha, std::vector<T> beta)
      : alphabets_(std::move(alphabets)), alpha_(std::move(alpha)), beta_(std::move(beta)) {
    if (alphabets_.empty()) throw DomainError("automaton needs at least one tape");
    if (alpha_.empty()) throw DomainError("automaton dimension must be positive");
    if (alpha_.size() != beta_.size()) {
      throw DomainError("initial and final vectors differ in length");
    }
    tuple_count_ = 1;
    for (const auto& a : alphabets_) tuple_count_ *= a.size();
  }

  std::size_t arity() const { return alphabets_.size(); }
  std::size_t dim() const { return alpha_.size(); }
  const std::vector<Alphabet>& alphabets() const { return alphabets_; }
  const Alphabet& alphabet(std::size_t tape) const { return alphabets_.at(tape); }
  const std::vector<T>& alpha() const { return alpha_; }
  const std::vector<T>& beta() const { return beta_; }

  std::size_t tuple_count() const { return tuple_count_; }

  // Mixed radix with tape 0 most significant.
  std::size_t tuple_index(const std::vector<std::size_t>& symbols) const {
    std::size_t t = 0;
    for (std::size_t k = 0; k < alphabets_.size(); ++k) t = t * alphabets_[k].size() + symbols[k];
    return t;
  }

  std::vector<std::size_t> tuple_symbols(std::size_t t) const {
    std::vector<std::size_t> out(alphabets_.size());
    for (std::size_t k = alphabets_.size(); k-- > 0;) {
      out[k] = t % alphabets_[k].size();
      t /= alphabets_[k].size();
    }
    return out;
  }

  // One character per tape, e.g. "#01".
  std::size_t tuple_of(const std::string& symbols) const {
    if (symbols.size() != arity()) throw DomainError("symbol tuple has wrong arity");
    std::vector<std::size_t> idx(arity());
    for (std::size_t k = 0; k < arity(); ++k) idx[k] = alphabets_[k].require(symbols[k]);
    return tuple_index(idx);
  }

  std::string tuple_string(std::size_t t) const {
    auto idx = tuple_symbols(t);
    std::string s;
    for (std::size_t k = 0; k < idx.size(); ++k) s += alphabets_[k].symbol(idx[k]);
    return s;
  }

  // nullptr stands for the zero matrix.
  const Matrix* transition(std::size_t t) const {
    auto it = transitions_.find(t);
    return it == transitions_.end() ? nullptr : &it->second;
  }

  const std::map<std::size_t, Matrix>& transitions() const { return transitions_; }

  void set_transition(std::size_t t, Matrix m) {
    if (t >= tuple_count_) throw DomainError("symbol tuple out of range");
    if (m.rows() != dim() || m.cols() != dim()) {
      throw DomainError("transition matrix must be " + std::to_string(dim()) + "x" +
                        std::to_string(dim()));
    }
    if (m.nnz() == 0) {
      transitions_.erase(t);
    } else {
      transitions_[t] = std::move(m);
    }
  }

  void set_transition(const std::string& symbols, Matrix m) {
    set_transition(tuple_of(symbols), std::move(m));
  }

 private:
  std::vector<Alphabet> alphabets_;
  std::vector<T> alpha_;
  std::vector<T> beta_;
  std::size_t tuple_count_ = 1;
  std::map<std::size_t, Matrix> transitions_;
};

using Wa = BasicWa<Rational>;

namespace detail {

template <class T>
void require_same_alphabets(const BasicWa<T>& a, const BasicWa<T>& b, const char* op) {
  if (a.alphabets() != b.alphabets()) {
    throw DomainError(std::string(op) + ": operands have different alphabets");
  }
}

template <class T>
std::vector<T> row_times(const std::vector<T>& v, const SparseMatrix<T>& m) {
  std::vector<T> out(m.cols(), ScalarTraits<T>::zero());
  for (std::size_t r = 0; r < v.size(); ++r) {
    if (ScalarTraits<T>::is_zero(v[r])) continue;
    for (const auto& e : m.row(r)) out[e.col] += v[r] * e.value;
  }
  return out;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  T s = ScalarTraits<T>::zero();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!ScalarTraits<T>::is_zero(a[k])) s += a[k] * b[k];
  }
  return s;
}

template <class T>
std::vector<T> kron_vec(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(x * y);
  }
  return out;
}

}  // namespace detail

// f(w_1,...,w_N) = alpha^T * prod_j A_{(w_1[j],...,w_N[j])} * beta.
template <class T>
T eval(const BasicWa<T>& a, const std::vector<Word>& tapes) {
  if (tapes.size() != a.arity()) {
    throw DomainError("expected " + std::to_string(a.arity()) + " words, got " +
                      std::to_string(tapes.size()));
  }
  const std::size_t len = tapes.front().size();
  for (std::size_t k = 0; k < tapes.size(); ++k) {
    if (tapes[k].size() != len) throw DomainError("words on different tapes differ in length");
    a.alphabet(k).require_word(tapes[k]);
  }
  std::vector<T> v = a.alpha();
  std::vector<std::size_t> idx(a.arity());
  for (std::size_t j = 0; j < len; ++j) {
    for (std::size_t k = 0; k < a.arity(); ++k) idx[k] = a.alphabet(k).require(tapes[k][j]);
    const auto* m = a.transition(a.tuple_index(idx));
    if (m == nullptr) return ScalarTraits<T>::zero();
    v = detail::row_times(v, *m);
  }
  return detail::dot(v, a.beta());
}

template <class T>
T eval(const BasicWa<T>& a, const Word& w) {
  return eval(a, std::vector<Word>{w});
}

// Single-state automaton with value c on every word tuple.
template <class T>
BasicWa<T> constant_wa(std::vector<Alphabet> alphabets, const T& c) {
  BasicWa<T> out(std::move(alphabets), {c}, {ScalarTraits<T>::one()});
  for (std::size_t t = 0; t < out.tuple_count(); ++t) {
    out.set_transition(t, SparseMatrix<T>::identity(1));
  }
  return out;
}

template <class T>
BasicWa<T> zero_wa(std::vector<Alphabet> alphabets) {
  return BasicWa<T>(std::move(alphabets), {ScalarTraits<T>::zero()}, {ScalarTraits<T>::zero()});
}

// Block-diagonal sum: f_{A+B} = f_A + f_B.
template <class T>
BasicWa<T> add(const BasicWa<T>& a, const BasicWa<T>& b) {
  detail::require_same_alphabets(a, b, "add");
  const std::size_t n = a.dim() + b.dim();
  std::vector<T> alpha = a.alpha();
  alpha.insert(alpha.end(), b.alpha().begin(), b.alpha().end());
  std::vector<T> beta = a.beta();
  beta.insert(beta.end(), b.beta().begin(), b.beta().end());
  BasicWa<T> out(a.alphabets(), std::move(alpha), std::move(beta));
  for (std::size_t t = 0; t < a.tuple_count(); ++t) {
    const auto* ma = a.transition(t);
    const auto* mb = b.transition(t);
    if (ma == nullptr && mb == nullptr) continue;
    SparseMatrix<T> m(n, n);
    if (ma != nullptr) {
      for (std::size_t r = 0; r < a.dim(); ++r) {
        typename SparseMatrix<T>::Row row = ma->row(r);
        m.assign_row(r, std::move(row));
      }
    }
    if (mb != nullptr) {
      for (std::size_t r = 0; r < b.dim(); ++r) {
        typename SparseMatrix<T>::Row row;
        for (const auto& e : mb->row(r)) row.push_back({e.col + a.dim(), e.value});
        m.assign_row(r + a.dim(), std::move(row));
      }
    }
    out.set_transition(t, std::move(m));
  }
  return out;
}

// f_{cA} = c * f_A; only alpha changes.
template <class T>
BasicWa<T> scale(const T& c, const BasicWa<T>& a) {
  std::vector<T> alpha = a.alpha();
  for (auto& x : alpha) x *= c;
  BasicWa<T> out(a.alphabets(), std::move(alpha), a.beta());
  for (const auto& [t, m] : a.transitions()) out.set_transition(t, m);
  return out;
}

// f_{A (x) B} = f_A * f_B.
template <class T>
BasicWa<T> kron(const BasicWa<T>& a, const BasicWa<T>& b) {
  detail::require_same_alphabets(a, b, "kron");
  BasicWa<T> out(a.alphabets(), detail::kron_vec(a.alpha(), b.alpha()),
                 detail::kron_vec(a.beta(), b.beta()));
  for (const auto& [t, ma] : a.transitions()) {
    const auto* mb = b.transition(t);
    if (mb == nullptr) continue;
    out.set_transition(t, SparseMatrix<T>::kron(ma, *mb));
  }
  return out;
}

// Marginalizes tape `tape` (1-based) of t against the 1-tape automaton a:
// g(..., _, ...) = sum_{w} f_a(w) * f_t(..., w, ...).
template <class T>
BasicWa<T> project(std::size_t tape, const BasicWa<T>& a, const BasicWa<T>& t) {
  if (a.arity() != 1) throw DomainError("project: first operand must have one tape");
  if (t.arity() < 2) throw DomainError("project: second operand needs at least two tapes");
  if (tape < 1 || tape > t.arity()) {
    throw DomainError("project: tape index " + std::to_string(tape) + " out of range 1.." +
                      std::to_string(t.arity()));
  }
  const std::size_t slot = tape - 1;
  if (a.alphabet(0) != t.alphabet(slot)) {
    throw DomainError("project: alphabet mismatch on tape " + std::to_string(tape));
  }
  std::vector<Alphabet> rest;
  for (std::size_t k = 0; k < t.arity(); ++k) {
    if (k != slot) rest.push_back(t.alphabet(k));
  }
  BasicWa<T> out(rest, detail::kron_vec(a.alpha(), t.alpha()),
                 detail::kron_vec(a.beta(), t.beta()));
  const std::size_t n = a.dim() * t.dim();
  const std::size_t sigma = t.alphabet(slot).size();
  for (std::size_t r = 0; r < out.tuple_count(); ++r) {
    auto rs = out.tuple_symbols(r);
    std::vector<std::size_t> full(t.arity());
    for (std::size_t k = 0, j = 0; k < t.arity(); ++k) {
      if (k != slot) full[k] = rs[j++];
    }
    std::vector<std::pair<const SparseMatrix<T>*, const SparseMatrix<T>*>> terms;
    for (std::size_t s = 0; s < sigma; ++s) {
      full[slot] = s;
      const auto* ma = a.transition(s);
      const auto* mt = t.transition(t.tuple_index(full));
      if (ma != nullptr && mt != nullptr) terms.emplace_back(ma, mt);
    }
    if (terms.empty()) continue;
    SparseMatrix<T> m(n, n);
    for (std::size_t i = 0; i < a.dim(); ++i) {
      for (std::size_t k = 0; k < t.dim(); ++k) {
        typename SparseMatrix<T>::Row row;
        for (const auto& [ma, mt] : terms) {
          const auto& ra = ma->row(i);
          const auto& rt = mt->row(k);
          for (const auto& ea : ra) {
            for (const auto& et : rt) row.push_back({ea.col * t.dim() + et.col, ea.value * et.value});
          }
        }
        if (!row.empty()) m.assign_row(i * t.dim() + k, std::move(row));
      }
    }
    out.set_transition(r, std::move(m));
  }
  return out;
}

// One factor of a contraction: automaton `wa` whose k-th tape is bound to
// global tape tapes[k] (0-based).
template <class T>
struct Factor {
  const BasicWa<T>* wa;
  std::vector<std::size_t> tapes;
};

// Sum over all global word tuples of length len of the product of the
// factors' values. Runs as a sparse vector propagation over the product
// state space, so no Kronecker matrix is ever formed.
template <class T>
T contract(const std::vector<Factor<T>>& factors, const std::vector<Alphabet>& tapes,
           std::size_t len) {
  if (factors.empty()) throw DomainError("contract: no factors");
  const std::size_t nf = factors.size();
  for (const auto& f : factors) {
    if (f.tapes.size() != f.wa->arity()) throw DomainError("contract: tape binding has wrong arity");
    for (std::size_t k = 0; k < f.tapes.size(); ++k) {
      if (f.tapes[k] >= tapes.size()) throw DomainError("contract: tape binding out of range");
      if (f.wa->alphabet(k) != tapes[f.tapes[k]]) {
        throw DomainError("contract: alphabet mismatch between factor and tape");
      }
    }
  }
  std::vector<std::uint64_t> stride(nf), dims(nf);
  unsigned __int128 total = 1;
  for (std::size_t f = nf; f-- > 0;) {
    stride[f] = static_cast<std::uint64_t>(total);
    dims[f] = factors[f].wa->dim();
    total *= dims[f];
    if (total > static_cast<unsigned __int128>(UINT64_MAX)) {
      throw GuardExceeded("contract: product state space exceeds 64-bit indexing");
    }
  }

  // Local tuple per factor for every global tuple.
  std::size_t global_count = 1;
  for (const auto& a : tapes) global_count *= a.size();
  std::vector<std::vector<const SparseMatrix<T>*>> mats;
  for (std::size_t g = 0; g < global_count; ++g) {
    std::vector<std::size_t> sym(tapes.size());
    std::size_t rest = g;
    for (std::size_t k = tapes.size(); k-- > 0;) {
      sym[k] = rest % tapes[k].size();
      rest /= tapes[k].size();
    }
    std::vector<const SparseMatrix<T>*> row(nf);
    bool live = true;
    for (std::size_t f = 0; f < nf && live; ++f) {
      std::vector<std::size_t> local(factors[f].tapes.size());
      for (std::size_t k = 0; k < local.size(); ++k) local[k] = sym[factors[f].tapes[k]];
      row[f] = factors[f].wa->transition(factors[f].wa->tuple_index(local));
      live = row[f] != nullptr;
    }
    if (live) mats.push_back(std::move(row));
  }

  using Vec = std::unordered_map<std::uint64_t, T>;
  Vec cur;
  {
    std::vector<std::vector<std::size_t>> support(nf);
    for (std::size_t f = 0; f < nf; ++f) {
      const auto& al = factors[f].wa->alpha();
      for (std::size_t s = 0; s < al.size(); ++s) {
        if (!ScalarTraits<T>::is_zero(al[s])) support[f].push_back(s);
      }
      if (support[f].empty()) return ScalarTraits<T>::zero();
    }
    std::vector<std::size_t> pick(nf, 0);
    while (true) {
      std::uint64_t key = 0;
      T val = ScalarTraits<T>::one();
      for (std::size_t f = 0; f < nf; ++f) {
        std::size_t s = support[f][pick[f]];
        key += stride[f] * s;
        val *= factors[f].wa->alpha()[s];
      }
      cur.emplace(key, std::move(val));
      std::size_t f = nf;
      while (f-- > 0) {
        if (++pick[f] < support[f].size()) break;
        pick[f] = 0;
      }
      if (f == static_cast<std::size_t>(-1)) break;
    }
  }

  std::vector<std::size_t> state(nf);
  std::vector<const typename SparseMatrix<T>::Row*> rows(nf);
  std::vector<std::size_t> pos(nf);
  std::vector<T> partial(nf + 1);
  std::vector<std::uint64_t> keys(nf + 1);
  for (std::size_t step = 0; step < len && !cur.empty(); ++step) {
    Vec next;
    next.reserve(cur.size() * 2);
    for (const auto& [key, val] : cur) {
      for (std::size_t f = 0; f < nf; ++f) state[f] = (key / stride[f]) % dims[f];
      for (const auto& ms : mats) {
        bool empty = false;
        for (std::size_t f = 0; f < nf; ++f) {
          rows[f] = &ms[f]->row(state[f]);
          if (rows[f]->empty()) {
            empty = true;
            break;
          }
        }
        if (empty) continue;
        // Odometer over the Cartesian product of row entries.
        std::fill(pos.begin(), pos.end(), 0);
        partial[0] = val;
        keys[0] = 0;
        std::size_t depth = 0;
        while (true) {
          while (depth < nf) {
            const auto& e = (*rows[depth])[pos[depth]];
            partial[depth + 1] = partial[depth] * e.value;
            keys[depth + 1] = keys[depth] + stride[depth] * e.col;
            ++depth;
          }
          auto it = next.find(keys[nf]);
          if (it == next.end()) {
            next.emplace(keys[nf], partial[nf]);
          } else {
            it->second += partial[nf];
          }
          // advance
          std::size_t f = nf;
          while (f-- > 0) {
            if (++pos[f] < rows[f]->size()) break;
            pos[f] = 0;
          }
          if (f == static_cast<std::size_t>(-1)) break;
          depth = f;
        }
      }
    }
    for (auto it = next.begin(); it != next.end();) {
      if (ScalarTraits<T>::is_zero(it->second)) {
        it = next.erase(it);
      } else {
        ++it;
      }
    }
    cur.swap(next);
  }

  T result = ScalarTraits<T>::zero();
  for (const auto& [key, val] : cur) {
    T term = val;
    for (std::size_t f = 0; f < nf && !ScalarTraits<T>::is_zero(term); ++f) {
      term *= factors[f].wa->beta()[(key / stride[f]) % dims[f]];
    }
    result += term;
  }
  return result;
}

// sum_{w in Sigma^len} f_a(w) * f_b(w).
template <class T>
T pi1(const BasicWa<T>& a, const BasicWa<T>& b, std::size_t len) {
  if (a.arity() != 1 || b.arity() != 1) throw DomainError("pi1: operands must have one tape");
  detail::require_same_alphabets(a, b, "pi1");
  return contract<T>({{&a, {0}}, {&b, {0}}}, a.alphabets(), len);
}

// sum_{w in Sigma^len} f_a(w).
template <class T>
T pi0(const BasicWa<T>& a, std::size_t len) {
  if (a.arity() != 1) throw DomainError("pi0: operand must have one tape");
  return contract<T>({{&a, {0}}}, a.alphabets(), len);
}

// Drops states that are unreachable from the support of alpha or cannot
// reach the support of beta. The computed function is unchanged.
template <class T>
BasicWa<T> trim(const BasicWa<T>& a) {
  const std::size_t n = a.dim();
  std::vector<std::vector<std::size_t>> succ(n), pred(n);
  for (const auto& [t, m] : a.transitions()) {
    for (std::size_t r = 0; r < n; ++r) {
      for (const auto& e : m.row(r)) {
        succ[r].push_back(e.col);
        pred[e.col].push_back(r);
      }
    }
  }
  auto sweep = [n](const std::vector<T>& seed, const std::vector<std::vector<std::size_t>>& adj) {
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < n; ++s) {
      if (!ScalarTraits<T>::is_zero(seed[s])) {
        seen[s] = 1;
        stack.push_back(s);
      }
    }
    while (!stack.empty()) {
      std::size_t s = stack.back();
      stack.pop_back();
      for (std::size_t x : adj[s]) {
        if (!seen[x]) {
          seen[x] = 1;
          stack.push_back(x);
        }
      }
    }
    return seen;
  };
  auto fwd = sweep(a.alpha(), succ);
  auto bwd = sweep(a.beta(), pred);
  std::vector<std::size_t> remap(n, SIZE_MAX);
  std::size_t kept = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (fwd[s] && bwd[s]) remap[s] = kept++;
  }
  if (kept == n) return a;
  if (kept == 0) return zero_wa<T>(a.alphabets());
  std::vector<T> alpha, beta;
  for (std::size_t s = 0; s < n; ++s) {
    if (remap[s] != SIZE_MAX) {
      alpha.push_back(a.alpha()[s]);
      beta.push_back(a.beta()[s]);
    }
  }
  BasicWa<T> out(a.alphabets(), std::move(alpha), std::move(beta));
  for (const auto& [t, m] : a.transitions()) {
    SparseMatrix<T> mm(kept, kept);
    for (std::size_t r = 0; r < n; ++r) {
      if (remap[r] == SIZE_MAX) continue;
      typename SparseMatrix<T>::Row row;
      for (const auto& e : m.row(r)) {
        if (remap[e.col] != SIZE_MAX) row.push_back({remap[e.col], e.value});
      }
      if (!row.empty()) mm.assign_row(remap[r], std::move(row));
    }
    out.set_transition(t, std::move(mm));
  }
  return out;
}

// Rational automaton to another scalar field.
template <class U>
BasicWa<U> cast_wa(const Wa& a) {
  std::vector<U> alpha, beta;
  for (const auto& x : a.alpha()) alpha.push_back(ScalarTraits<U>::from_rational(x));
  for (const auto& x : a.beta()) beta.push_back(ScalarTraits<U>::from_rational(x));
  BasicWa<U> out(a.alphabets(), std::move(alpha), std::move(beta));
  for (const auto& [t, m] : a.transitions()) out.set_transition(t, m.template cast<U>());
  return out;
}

}  // namespace shapwa

#endif  // SHAPWA_WA_HPP_
