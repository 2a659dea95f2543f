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

// Brute-force reference: Shapley values by subset enumeration and
// expectations by enumerating the distribution's support. Exponential on
// purpose and guarded. Nothing here calls into the automaton pipelines;
// automata and HMMs are evaluated by the forward loops below.

#ifndef SHAPWA_ORACLE_HPP_
#define SHAPWA_ORACLE_HPP_

#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "shapwa/alphabet.hpp"
#include "shapwa/error.hpp"
#include "shapwa/games.hpp"
#include "shapwa/hmm.hpp"
#include "shapwa/scalar.hpp"
#include "shapwa/wa.hpp"

namespace shapwa::oracle {

enum class Variant { kConditional, kInterventional, kBaseline };

inline const char* variant_name(Variant v) {
  switch (v) {
    case Variant::kConditional:
      return "conditional";
    case Variant::kInterventional:
      return "interventional";
    case Variant::kBaseline:
      return "baseline";
  }
  return "?";
}

// SHAPWA_GUARD_BITS, when set, replaces both default guards.
inline unsigned long guard_bits(unsigned long fallback) {
  const char* s = std::getenv("SHAPWA_GUARD_BITS");
  if (s == nullptr || *s == '\0') return fallback;
  char* end = nullptr;
  unsigned long v = std::strtoul(s, &end, 10);
  if (end == s || *end != '\0') throw ParseError("SHAPWA_GUARD_BITS must be a non-negative integer");
  return v;
}

inline void require_coalitions(std::size_t n) {
  const unsigned long limit = guard_bits(20);
  if (n > limit) {
    throw GuardExceeded("coalition enumeration over " + std::to_string(n) + " features exceeds the guard of " +
                        std::to_string(limit) + " (set SHAPWA_GUARD_BITS to raise it)");
  }
}

inline void require_enumerable(const Alphabet& sigma, std::size_t n) {
  const unsigned long limit = guard_bits(24);
  const double bits = static_cast<double>(n) * std::log2(static_cast<double>(sigma.size()));
  if (bits > static_cast<double>(limit) + 1e-9) {
    throw GuardExceeded("enumerating " + std::to_string(sigma.size()) + "^" + std::to_string(n) +
                        " inputs exceeds the guard of 2^" + std::to_string(limit) +
                        " (set SHAPWA_GUARD_BITS to raise it)");
  }
}

// All words of length n in lexicographic alphabet order.
inline std::vector<Word> enumerate_words(const Alphabet& sigma, std::size_t n) {
  require_enumerable(sigma, n);
  std::vector<Word> out;
  Word w(n, sigma.symbol(0));
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    out.push_back(w);
    std::size_t k = n;
    while (k-- > 0) {
      if (++idx[k] < sigma.size()) {
        w[k] = sigma.symbol(idx[k]);
        break;
      }
      idx[k] = 0;
      w[k] = sigma.symbol(0);
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

// Plain forward evaluation of a 1-tape automaton.
inline Rational forward(const Wa& a, const Word& w) {
  if (a.arity() != 1) throw DomainError("oracle evaluates 1-tape automata only");
  std::vector<Rational> v = a.alpha();
  for (char c : w) {
    const auto* m = a.transition(a.alphabet(0).require(c));
    std::vector<Rational> next(v.size(), Rational(0));
    if (m != nullptr) {
      for (std::size_t r = 0; r < v.size(); ++r) {
        if (sgn(v[r]) == 0) continue;
        for (const auto& e : m->row(r)) next[e.col] += v[r] * e.value;
      }
    }
    v.swap(next);
  }
  Rational s = 0;
  for (std::size_t r = 0; r < v.size(); ++r) s += v[r] * a.beta()[r];
  return s;
}

// Probability that the HMM's output starts with w, from its parameters.
inline Rational forward(const Hmm& h, const Word& w) {
  std::vector<Rational> v = h.initial();
  for (char c : w) {
    std::size_t s = h.alphabet().require(c);
    std::vector<Rational> next(v.size(), Rational(0));
    for (std::size_t r = 0; r < v.size(); ++r) {
      if (sgn(v[r]) == 0) continue;
      Rational e = h.emission().at(r, s);
      if (sgn(e) == 0) continue;
      for (const auto& t : h.transition().row(r)) next[t.col] += v[r] * e * t.value;
    }
    v.swap(next);
  }
  Rational s = 0;
  for (const auto& x : v) s += x;
  return s;
}

template <class T>
using Model = std::function<T(const Word&)>;

// Caches model values; inputs repeat heavily across coalitions.
template <class T>
Model<T> memoize(Model<T> f) {
  auto cache = std::make_shared<std::unordered_map<Word, T>>();
  return [f = std::move(f), cache](const Word& w) -> T {
    auto it = cache->find(w);
    if (it != cache->end()) return it->second;
    T v = f(w);
    cache->emplace(w, v);
    return v;
  };
}

// A finite distribution listed by its support.
template <class T>
struct Distribution {
  Alphabet alphabet;
  std::size_t length = 0;
  std::vector<std::pair<Word, T>> support;
};

template <class T>
Distribution<T> tabulate(const Alphabet& sigma, std::size_t n, const std::function<T(const Word&)>& prob) {
  Distribution<T> d{sigma, n, {}};
  for (const auto& w : enumerate_words(sigma, n)) {
    T p = prob(w);
    if (!ScalarTraits<T>::is_zero(p)) d.support.emplace_back(w, p);
  }
  return d;
}

inline Model<Rational> wa_model(const Wa& f) {
  return [f](const Word& w) { return forward(f, w); };
}

// The HMM's length-n marginal as a table.
inline Distribution<Rational> hmm_distribution(const Hmm& d, std::size_t n) {
  return tabulate<Rational>(d.alphabet(), n, [&d](const Word& w) { return forward(d, w); });
}

template <class T>
Distribution<T> point_distribution(const Alphabet& sigma, const Word& w) {
  return Distribution<T>{sigma, w.size(), {{w, ScalarTraits<T>::one()}}};
}

// What fills the absent features of a coalition.
template <class T>
struct Context {
  Variant variant = Variant::kBaseline;
  Word reference;                              // baseline
  const Distribution<T>* background = nullptr;  // conditional, interventional
};

// "{1,3}" for the features present in mask.
inline std::string coalition_string(unsigned long mask, std::size_t n) {
  std::string s = "{";
  bool first = true;
  for (std::size_t j = 0; j < n; ++j) {
    if (mask >> j & 1UL) {
      if (!first) s += ",";
      s += std::to_string(j + 1);
      first = false;
    }
  }
  return s + "}";
}

inline Word hybrid(const Word& x, const Word& z, unsigned long mask) {
  Word u = z;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (mask >> j & 1UL) u[j] = x[j];
  }
  return u;
}

inline bool agrees_on(const Word& x, const Word& z, unsigned long mask) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if ((mask >> j & 1UL) && x[j] != z[j]) return false;
  }
  return true;
}

// Value of coalition mask (bit j = feature j+1 present) at input x.
template <class T>
T value_fn(const Model<T>& f, const Word& x, unsigned long mask, const Context<T>& ctx) {
  switch (ctx.variant) {
    case Variant::kBaseline:
      if (ctx.reference.size() != x.size()) throw DomainError("reference and input differ in length");
      return f(hybrid(x, ctx.reference, mask));
    case Variant::kInterventional: {
      if (ctx.background == nullptr) throw DomainError("interventional values need a distribution");
      if (ctx.background->length != x.size()) throw DomainError("distribution length differs from input length");
      T s = ScalarTraits<T>::zero();
      for (const auto& [z, p] : ctx.background->support) s += p * f(hybrid(x, z, mask));
      return s;
    }
    case Variant::kConditional: {
      if (ctx.background == nullptr) throw DomainError("conditional values need a distribution");
      if (ctx.background->length != x.size()) throw DomainError("distribution length differs from input length");
      T num = ScalarTraits<T>::zero(), den = ScalarTraits<T>::zero();
      for (const auto& [z, p] : ctx.background->support) {
        if (!agrees_on(x, z, mask)) continue;
        num += p * f(z);
        den += p;
      }
      if (ScalarTraits<T>::is_zero(den)) {
        std::string s = coalition_string(mask, x.size());
        throw ZeroProbabilityEvent("conditioning on features " + s + " of input " + x + " has probability zero", s);
      }
      return num / den;
    }
  }
  throw DomainError("unknown SHAP variant");
}

// s! (n-s-1)! / n! for s = 0..n-1.
template <class T>
std::vector<T> shapley_weights(std::size_t n) {
  std::vector<T> w;
  for (std::size_t s = 0; s < n; ++s) {
    Integer num = 1, den = 1;
    for (std::size_t k = 2; k <= s; ++k) num *= static_cast<unsigned long>(k);
    for (std::size_t k = 2; k <= n - s - 1; ++k) num *= static_cast<unsigned long>(k);
    for (std::size_t k = 2; k <= n; ++k) den *= static_cast<unsigned long>(k);
    Rational q(num, den);
    q.canonicalize();
    w.push_back(ScalarTraits<T>::from_rational(q));
  }
  return w;
}

// Local Shapley value of feature i (1-based) at x.
template <class T>
T shap_local(const Model<T>& f, const Word& x, std::size_t i, const Context<T>& ctx) {
  const std::size_t n = x.size();
  if (i < 1 || i > n) {
    throw DomainError("feature index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
  }
  require_coalitions(n);
  const auto weights = shapley_weights<T>(n);
  const unsigned long bit = 1UL << (i - 1);
  const unsigned long full = (n == 0) ? 0 : ((1UL << n) - 1);
  T phi = ScalarTraits<T>::zero();
  for (unsigned long mask = 0; mask <= full; ++mask) {
    if (mask & bit) continue;
    T with = value_fn(f, x, mask | bit, ctx);
    T without = value_fn(f, x, mask, ctx);
    phi += weights[static_cast<std::size_t>(__builtin_popcountl(mask))] * (with - without);
  }
  return phi;
}

// sum_x P(x) * local value at x, with x drawn from `outer`.
template <class T>
T shap_global(const Model<T>& f, std::size_t i, const Context<T>& ctx, const Distribution<T>& outer) {
  T total = ScalarTraits<T>::zero();
  for (const auto& [x, p] : outer.support) total += p * shap_local(f, x, i, ctx);
  return total;
}

// Player i (1-based) never changes the outcome of any coalition.
inline bool dummy_check(const Wmg& g, std::size_t i) {
  const std::size_t n = g.players();
  if (i < 1 || i > n) throw DomainError("player index out of range");
  require_coalitions(n);
  const unsigned long bit = 1UL << (i - 1);
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    if (mask & bit) continue;
    if (g.wins(mask | bit) != g.wins(mask)) return false;
  }
  return true;
}

inline std::size_t hamming(const Word& a, const Word& b) {
  if (a.size() != b.size()) throw DomainError("Hamming distance needs equal lengths");
  std::size_t d = 0;
  for (std::size_t j = 0; j < a.size(); ++j) d += a[j] != b[j];
  return d;
}

// First word (lexicographic) within the radius of every string.
inline std::optional<Word> csp_brute(const CspInstance& inst) {
  for (const auto& w : enumerate_words(inst.alphabet, inst.length())) {
    bool ok = true;
    for (const auto& s : inst.strings) {
      if (hamming(w, s) > inst.radius) {
        ok = false;
        break;
      }
    }
    if (ok) return w;
  }
  return std::nullopt;
}

// No word of length n is mapped to 1.
inline bool empty_brute(const Model<Rational>& f, const Alphabet& sigma, std::size_t n) {
  for (const auto& w : enumerate_words(sigma, n)) {
    if (f(w) == 1) return false;
  }
  return true;
}

inline bool sat_brute(const CnfFormula& phi) {
  if (phi.variables > guard_bits(24)) {
    throw GuardExceeded("satisfiability enumeration over " + std::to_string(phi.variables) + " variables exceeds the guard");
  }
  for (unsigned long a = 0; a < (1UL << phi.variables); ++a) {
    if (phi.satisfied_by(a)) return true;
  }
  return false;
}

}  // namespace shapwa::oracle

#endif  // SHAPWA_ORACLE_HPP_
