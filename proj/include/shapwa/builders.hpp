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

// Automata used by the SHAP pipelines. Tape conventions:
//   pattern p over Σ_#, background word w' over Σ, output word u over Σ,
//   explained word w over Σ.
// T_w, T_{w,i} read (p, w', u); T, T_i read (p, w', u, w); A_{i,n} reads
// (p, w).

#ifndef SHAPWA_BUILDERS_HPP_
#define SHAPWA_BUILDERS_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "shapwa/alphabet.hpp"
#include "shapwa/dfa.hpp"
#include "shapwa/error.hpp"
#include "shapwa/hmm.hpp"
#include "shapwa/patterns.hpp"
#include "shapwa/wa.hpp"

namespace shapwa {

enum class AwiLayout {
  // One layered automaton over (position, #-count); O(n^2) states.
  kCompact,
  // Sum over k of normalized DFAs for the k-placeholder patterns; O(n^3).
  kPerCount,
};

namespace detail {

inline void require_index(std::size_t i, std::size_t n, const char* what) {
  if (n == 0) throw DomainError(std::string(what) + ": length must be positive");
  if (i < 1 || i > n) {
    throw DomainError(std::string(what) + ": feature index " + std::to_string(i) +
                      " out of range 1.." + std::to_string(n));
  }
}

// Final weight for patterns with k placeholders: 1 / (n * C(n-1, k-1)).
template <class T>
T count_weight(std::size_t n, std::size_t k) {
  Rational q(Integer(1), Integer(Integer(static_cast<unsigned long>(n)) * binomial(n - 1, k - 1)));
  q.canonicalize();
  return ScalarTraits<T>::from_rational(q);
}

// Layered (position, #-count) automaton over Σ_#. At position i only '#'
// is read; elsewhere '#' or an allowed symbol (w_l if w is given, any
// symbol of Σ otherwise).
template <class T>
BasicWa<T> layered_weight(const Alphabet& sigma, const Word* w, std::size_t n, std::size_t i) {
  const Alphabet sh = Alphabet::with_placeholder(sigma);
  auto id = [](std::size_t l, std::size_t e) { return (l - 1) * l / 2 + e; };
  const std::size_t dim = (n + 1) * (n + 2) / 2;
  std::vector<T> alpha(dim, ScalarTraits<T>::zero()), beta(dim, ScalarTraits<T>::zero());
  alpha[id(1, 0)] = ScalarTraits<T>::one();
  for (std::size_t k = 1; k <= n; ++k) beta[id(n + 1, k)] = count_weight<T>(n, k);
  BasicWa<T> out({sh}, std::move(alpha), std::move(beta));
  std::vector<SparseMatrix<T>> m(sh.size(), SparseMatrix<T>(dim, dim));
  const std::size_t hash = sh.require(kPlaceholder);
  for (std::size_t l = 1; l <= n; ++l) {
    for (std::size_t e = 0; e < l; ++e) {
      m[hash].set(id(l, e), id(l + 1, e + 1), ScalarTraits<T>::one());
      if (l == i) continue;
      for (std::size_t s = 0; s < sigma.size(); ++s) {
        if (w != nullptr && (*w)[l - 1] != sigma.symbol(s)) continue;
        m[sh.require(sigma.symbol(s))].set(id(l, e), id(l + 1, e), ScalarTraits<T>::one());
      }
    }
  }
  for (std::size_t s = 0; s < sh.size(); ++s) out.set_transition(s, std::move(m[s]));
  return out;
}

}  // namespace detail

// f(p) = coalition_weight(p, w, i) for every p over Σ_# of length |w|.
template <class T = Rational>
BasicWa<T> build_A_wi(const Alphabet& sigma, const Word& w, std::size_t i,
                      AwiLayout layout = AwiLayout::kCompact) {
  const std::size_t n = w.size();
  detail::require_index(i, n, "build_A_wi");
  sigma.require_word(w);
  if (layout == AwiLayout::kCompact) return detail::layered_weight<T>(sigma, &w, n, i);

  const Alphabet sh = Alphabet::with_placeholder(sigma);
  auto id = [n](std::size_t l, std::size_t e) { return (l - 1) * (n + 1) + e; };
  BasicWa<T> total = zero_wa<T>({sh});
  bool first = true;
  for (std::size_t k = 1; k <= n; ++k) {
    Dfa d({sh}, (n + 1) * (n + 1), id(1, 0));
    for (std::size_t l = 1; l <= n; ++l) {
      for (std::size_t e = 0; e <= k; ++e) {
        if (e < k) d.add_transition(id(l, e), std::string(1, kPlaceholder), id(l + 1, e + 1));
        if (l != i) d.add_transition(id(l, e), std::string(1, w[l - 1]), id(l + 1, e));
      }
    }
    d.set_final(id(n + 1, k));
    BasicWa<T> part = scale(detail::count_weight<T>(n, k), trim(dfa_to_wa<T>(d)));
    total = first ? part : add(total, part);
    first = false;
  }
  return total;
}

// Membership DFA for (p, w): w matches p and p_i = '#'. One chain state
// per position plus the accepting end state.
inline Dfa build_membership_dfa(const Alphabet& sigma, std::size_t i, std::size_t n) {
  detail::require_index(i, n, "build_A_in");
  const Alphabet sh = Alphabet::with_placeholder(sigma);
  Dfa d({sh, sigma}, n + 1, 0);
  for (std::size_t q = 1; q <= n; ++q) {
    for (char a : sh.symbols()) {
      for (char b : sigma.symbols()) {
        bool ok = q != i ? (a == kPlaceholder || a == b) : a == kPlaceholder;
        if (ok) d.add_transition(q - 1, std::string{a, b}, q);
      }
    }
  }
  d.set_final(n);
  return d;
}

// f(p, w) = coalition_weight(p, w, i) for every pair of length n.
template <class T = Rational>
BasicWa<T> build_A_in(const Alphabet& sigma, std::size_t i, std::size_t n) {
  Dfa member = build_membership_dfa(sigma, i, n);
  BasicWa<T> weight = detail::layered_weight<T>(sigma, nullptr, n, i);
  const Alphabet sh = Alphabet::with_placeholder(sigma);
  BasicWa<T> lifted({sh, sigma}, weight.alpha(), weight.beta());
  for (const auto& [s, m] : weight.transitions()) {
    for (std::size_t b = 0; b < sigma.size(); ++b) lifted.set_transition(s * sigma.size() + b, m);
  }
  return kron(dfa_to_wa<T>(member), lifted);
}

namespace detail {

// (σ1 = # ∧ σ3 = σ2) ∨ (σ1 ≠ # ∧ σ3 = σ4)
inline bool copy_rule(char p, char w_prime, char u, char w) {
  return p == kPlaceholder ? u == w_prime : u == w;
}

}  // namespace detail

// Accepts (p, w', u) iff u = do(p, w', w).
inline Dfa build_T_w_dfa(const Alphabet& sigma, const Word& w) {
  sigma.require_word(w);
  const Alphabet sh = Alphabet::with_placeholder(sigma);
  const std::size_t n = w.size();
  Dfa d({sh, sigma, sigma}, n + 1, 0);
  for (std::size_t q = 1; q <= n; ++q) {
    for (char p : sh.symbols()) {
      for (char a : sigma.symbols()) {
        for (char u : sigma.symbols()) {
          if (detail::copy_rule(p, a, u, w[q - 1])) d.add_transition(q - 1, std::string{p, a, u}, q);
        }
      }
    }
  }
  d.set_final(n);
  return d;
}

// Accepts (p, w', u) iff u = do(swap(p, w_i, i), w', w).
inline Dfa build_T_wi_dfa(const Alphabet& sigma, const Word& w, std::size_t i) {
  detail::require_index(i, w.size(), "build_T_wi");
  sigma.require_word(w);
  const Alphabet sh = Alphabet::with_placeholder(sigma);
  const std::size_t n = w.size();
  Dfa d({sh, sigma, sigma}, n + 1, 0);
  for (std::size_t q = 1; q <= n; ++q) {
    for (char p : sh.symbols()) {
      for (char a : sigma.symbols()) {
        for (char u : sigma.symbols()) {
          bool ok = q == i ? u == w[q - 1] : detail::copy_rule(p, a, u, w[q - 1]);
          if (ok) d.add_transition(q - 1, std::string{p, a, u}, q);
        }
      }
    }
  }
  d.set_final(n);
  return d;
}

// Accepts (p, w', u, w) iff u = do(p, w', w); a single state.
inline Dfa build_T_dfa(const Alphabet& sigma) {
  const Alphabet sh = Alphabet::with_placeholder(sigma);
  Dfa d({sh, sigma, sigma, sigma}, 1, 0);
  for (char p : sh.symbols()) {
    for (char a : sigma.symbols()) {
      for (char u : sigma.symbols()) {
        for (char w : sigma.symbols()) {
          if (detail::copy_rule(p, a, u, w)) d.add_transition(0, std::string{p, a, u, w}, 0);
        }
      }
    }
  }
  d.set_final(0);
  return d;
}

// Accepts (p, w', u, w) iff u = do(swap(p, w_i, i), w', w); i+1 states.
inline Dfa build_T_i_dfa(const Alphabet& sigma, std::size_t i) {
  if (i < 1) throw DomainError("build_T_i: feature index must be at least 1");
  const Alphabet sh = Alphabet::with_placeholder(sigma);
  Dfa d({sh, sigma, sigma, sigma}, i + 1, 0);
  for (char p : sh.symbols()) {
    for (char a : sigma.symbols()) {
      for (char u : sigma.symbols()) {
        for (char w : sigma.symbols()) {
          std::string t{p, a, u, w};
          bool copy = detail::copy_rule(p, a, u, w);
          for (std::size_t q = 0; q + 1 < i; ++q) {
            if (copy) d.add_transition(q, t, q + 1);
          }
          if (u == w) d.add_transition(i - 1, t, i);
          if (copy) d.add_transition(i, t, i);
        }
      }
    }
  }
  d.set_final(i);
  return d;
}

template <class T = Rational>
BasicWa<T> build_T_w(const Alphabet& sigma, const Word& w) {
  return dfa_to_wa<T>(build_T_w_dfa(sigma, w));
}

template <class T = Rational>
BasicWa<T> build_T_wi(const Alphabet& sigma, const Word& w, std::size_t i) {
  return dfa_to_wa<T>(build_T_wi_dfa(sigma, w, i));
}

template <class T = Rational>
BasicWa<T> build_T(const Alphabet& sigma) {
  return dfa_to_wa<T>(build_T_dfa(sigma));
}

template <class T = Rational>
BasicWa<T> build_T_i(const Alphabet& sigma, std::size_t i, std::size_t n) {
  detail::require_index(i, n, "build_T_i");
  return dfa_to_wa<T>(build_T_i_dfa(sigma, i));
}

// Emits w_ref deterministically, then symbols uniformly forever.
template <class T = Rational>
BasicHmm<T> build_point_hmm(const Alphabet& sigma, const Word& w_ref) {
  sigma.require_word(w_ref);
  const std::size_t n = w_ref.size();
  std::vector<T> init(n + 1, ScalarTraits<T>::zero());
  init[0] = ScalarTraits<T>::one();
  SparseMatrix<T> tr(n + 1, n + 1), em(n + 1, sigma.size());
  for (std::size_t q = 0; q < n; ++q) {
    tr.set(q, q + 1, ScalarTraits<T>::one());
    em.set(q, sigma.require(w_ref[q]), ScalarTraits<T>::one());
  }
  tr.set(n, n, ScalarTraits<T>::one());
  T u = ScalarTraits<T>::one() / T(static_cast<long>(sigma.size()));
  for (std::size_t s = 0; s < sigma.size(); ++s) em.set(n, s, u);
  return BasicHmm<T>(sigma, std::move(init), std::move(tr), std::move(em));
}

}  // namespace shapwa

#endif  // SHAPWA_BUILDERS_HPP_
