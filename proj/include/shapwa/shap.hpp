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

// Local and global interventional / baseline SHAP of a 1-tape automaton f
// under an HMM, as compositions of projections and contractions:
//
//   local  = Π1(A_{w,i}, Π2(D', Π3(f, T_{w,i}) - Π3(f, T_w)))
//   global = Π0(Π2(D, A_{i,n} ⊗ Π2(D', Π3(f, T_i) - Π3(f, T))))
//
// with D' = D (interventional) or the point HMM of w_ref (baseline).

#ifndef SHAPWA_SHAP_HPP_
#define SHAPWA_SHAP_HPP_

#include <cstddef>
#include <string>

#include "shapwa/builders.hpp"
#include "shapwa/error.hpp"
#include "shapwa/hmm.hpp"
#include "shapwa/wa.hpp"

namespace shapwa {

struct EngineOptions {
  AwiLayout a_wi = AwiLayout::kCompact;
  // Evaluate the outermost Π0(Π2(D, A ⊗ Y)) as one sparse contraction
  // instead of materializing A ⊗ Y and its projection.
  bool fuse_outer = true;
  // Drop dead states of intermediate automata.
  bool trim_intermediates = true;
};

namespace detail {

template <class T>
void require_model(const BasicWa<T>& f, const Alphabet& sigma) {
  if (f.arity() != 1) throw DomainError("model automaton must have exactly one tape");
  if (f.alphabet(0) != sigma) {
    throw DomainError("model alphabet {" + f.alphabet(0).symbols() +
                      "} differs from distribution alphabet {" + sigma.symbols() + "}");
  }
}

template <class T>
BasicWa<T> maybe_trim(const BasicWa<T>& a, const EngineOptions& opt) {
  return opt.trim_intermediates ? trim(a) : a;
}

// Π2(inner, Π3(f, T_{w,i}) - Π3(f, T_w)): a 1-tape automaton over Σ_#.
template <class T>
BasicWa<T> local_difference(const BasicWa<T>& f, const Word& w, std::size_t i,
                            const BasicWa<T>& inner, const EngineOptions& opt) {
  const Alphabet& sigma = f.alphabet(0);
  BasicWa<T> with_i = project(3, f, build_T_wi<T>(sigma, w, i));
  BasicWa<T> without_i = project(3, f, build_T_w<T>(sigma, w));
  BasicWa<T> diff = maybe_trim(add(with_i, scale(T(-1), without_i)), opt);
  return maybe_trim(project(2, inner, diff), opt);
}

template <class T>
T local_pipeline(const BasicWa<T>& f, const Word& w, std::size_t i, const BasicWa<T>& inner,
                 const EngineOptions& opt) {
  const Alphabet& sigma = f.alphabet(0);
  require_index(i, w.size(), "local SHAP");
  sigma.require_word(w);
  BasicWa<T> f_t = maybe_trim(f, opt);
  BasicWa<T> inner_t = maybe_trim(inner, opt);
  BasicWa<T> y = local_difference(f_t, w, i, inner_t, opt);
  return pi1(build_A_wi<T>(sigma, w, i, opt.a_wi), y, w.size());
}

template <class T>
T global_pipeline(const BasicWa<T>& f, std::size_t i, std::size_t n, const BasicWa<T>& inner,
                  const BasicWa<T>& outer, const EngineOptions& opt) {
  const Alphabet& sigma = f.alphabet(0);
  require_index(i, n, "global SHAP");
  BasicWa<T> f_t = maybe_trim(f, opt);
  BasicWa<T> with_i = project(3, f_t, build_T_i<T>(sigma, i, n));
  BasicWa<T> without_i = project(3, f_t, build_T<T>(sigma));
  BasicWa<T> diff = maybe_trim(add(with_i, scale(T(-1), without_i)), opt);
  BasicWa<T> y = maybe_trim(project(2, maybe_trim(inner, opt), diff), opt);
  BasicWa<T> a = maybe_trim(build_A_in<T>(sigma, i, n), opt);
  BasicWa<T> outer_t = maybe_trim(outer, opt);
  if (opt.fuse_outer) {
    const Alphabet sh = Alphabet::with_placeholder(sigma);
    return contract<T>({{&a, {0, 1}}, {&y, {0, 1}}, {&outer_t, {1}}}, {sh, sigma}, n);
  }
  BasicWa<T> z = maybe_trim(kron(a, y), opt);
  return pi0(project(2, outer_t, z), n);
}

}  // namespace detail

// Local interventional SHAP φ_i(f, w, i, D).
template <class T>
T loc_i_shap(const BasicWa<T>& f, const Word& w, std::size_t i, const BasicHmm<T>& d,
             const EngineOptions& opt = {}) {
  detail::require_model(f, d.alphabet());
  return detail::local_pipeline(f, w, i, d.wa(), opt);
}

// Global interventional SHAP: E_{x ~ D^(n)} φ_i(f, x, i, D).
template <class T>
T glo_i_shap(const BasicWa<T>& f, std::size_t i, std::size_t n, const BasicHmm<T>& d,
             const EngineOptions& opt = {}) {
  detail::require_model(f, d.alphabet());
  return detail::global_pipeline(f, i, n, d.wa(), d.wa(), opt);
}

// Local baseline SHAP φ_b(f, w, i, w_ref).
template <class T>
T loc_b_shap(const BasicWa<T>& f, const Word& w, std::size_t i, const Word& w_ref,
             const EngineOptions& opt = {}) {
  if (f.arity() != 1) throw DomainError("model automaton must have exactly one tape");
  if (w.size() != w_ref.size()) {
    throw DomainError("input and reference differ in length (" + std::to_string(w.size()) +
                      " vs " + std::to_string(w_ref.size()) + ")");
  }
  auto point = build_point_hmm<T>(f.alphabet(0), w_ref);
  return detail::local_pipeline(f, w, i, point.wa(), opt);
}

// Global baseline SHAP: E_{x ~ D^(n)} φ_b(f, x, i, w_ref) with n = |w_ref|.
template <class T>
T glo_b_shap(const BasicWa<T>& f, std::size_t i, std::size_t n, const Word& w_ref,
             const BasicHmm<T>& d, const EngineOptions& opt = {}) {
  detail::require_model(f, d.alphabet());
  if (w_ref.size() != n) {
    throw DomainError("reference length " + std::to_string(w_ref.size()) +
                      " differs from n = " + std::to_string(n));
  }
  auto point = build_point_hmm<T>(f.alphabet(0), w_ref);
  return detail::global_pipeline(f, i, n, point.wa(), d.wa(), opt);
}

}  // namespace shapwa

#endif  // SHAPWA_SHAP_HPP_
