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

// Seeded engine-versus-oracle suite and gadget certificates.

#ifndef SHAPWA_VERIFY_HPP_
#define SHAPWA_VERIFY_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "shapwa/frontends.hpp"
#include "shapwa/gadgets.hpp"
#include "shapwa/oracle.hpp"
#include "shapwa/random_models.hpp"
#include "shapwa/shap.hpp"

namespace shapwa::verify {

// Engine entry points under test; tests swap in broken ones.
struct EngineHooks {
  std::function<Rational(const Wa&, const Word&, std::size_t, const Hmm&)> loc_i =
      [](const Wa& f, const Word& w, std::size_t i, const Hmm& d) { return loc_i_shap(f, w, i, d); };
  std::function<Rational(const Wa&, std::size_t, std::size_t, const Hmm&)> glo_i =
      [](const Wa& f, std::size_t i, std::size_t n, const Hmm& d) { return glo_i_shap(f, i, n, d); };
  std::function<Rational(const Wa&, const Word&, std::size_t, const Word&)> loc_b =
      [](const Wa& f, const Word& w, std::size_t i, const Word& r) { return loc_b_shap(f, w, i, r); };
  std::function<Rational(const Wa&, std::size_t, std::size_t, const Word&, const Hmm&)> glo_b =
      [](const Wa& f, std::size_t i, std::size_t n, const Word& r, const Hmm& d) { return glo_b_shap(f, i, n, r, d); };
};

struct PropertyResult {
  std::string name;
  std::size_t checked = 0;
  std::optional<std::string> counterexample;
  bool passed() const { return !counterexample.has_value(); }
};

struct SuiteConfig {
  std::uint64_t seed = 0;
  std::size_t instances = 50;
  std::size_t max_local_length = 5;
  std::size_t max_global_length = 4;
};

namespace detail {

inline std::string describe_wa(const Wa& f) {
  std::ostringstream s;
  s << "wa(dim=" << f.dim() << ", alpha=[";
  for (std::size_t k = 0; k < f.dim(); ++k) s << (k ? "," : "") << f.alpha()[k];
  s << "], beta=[";
  for (std::size_t k = 0; k < f.dim(); ++k) s << (k ? "," : "") << f.beta()[k];
  s << "], transitions={";
  bool first = true;
  for (const auto& [t, m] : f.transitions()) {
    s << (first ? "" : "; ") << f.tuple_string(t) << ":";
    first = false;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (const auto& e : m.row(r)) s << " (" << r << "," << e.col << ")=" << e.value;
    }
  }
  s << "})";
  return s.str();
}

inline std::string describe_hmm(const Hmm& d) {
  std::ostringstream s;
  s << "hmm(dim=" << d.dim() << ", initial=[";
  for (std::size_t k = 0; k < d.dim(); ++k) s << (k ? "," : "") << d.initial()[k];
  s << "], transition:";
  for (std::size_t r = 0; r < d.dim(); ++r) {
    for (const auto& e : d.transition().row(r)) s << " (" << r << "," << e.col << ")=" << e.value;
  }
  s << ", emission:";
  for (std::size_t r = 0; r < d.dim(); ++r) {
    for (const auto& e : d.emission().row(r)) s << " (" << r << "," << e.col << ")=" << e.value;
  }
  s << ")";
  return s.str();
}

inline void record(PropertyResult& p, const Rational& engine, const Rational& expected, const std::string& what) {
  ++p.checked;
  if (p.counterexample || engine == expected) return;
  p.counterexample = what + " engine=" + engine.get_str() + " oracle=" + expected.get_str();
}

}  // namespace detail

// Random WAs (dim <= 4) and HMMs (dim <= 3) over {0,1}; each instance
// checks all four engine variants, a compiled decision tree, and the
// efficiency identity against the oracle.
inline std::vector<PropertyResult> run_suite(const SuiteConfig& cfg, const EngineHooks& hooks = {}) {
  const Alphabet bits("01");
  Rng rng(cfg.seed);
  std::vector<PropertyResult> out{{"local-interventional", 0, {}}, {"local-baseline", 0, {}},
                                  {"global-interventional", 0, {}}, {"global-baseline", 0, {}},
                                  {"compiled-tree", 0, {}}, {"efficiency", 0, {}}};
  for (std::size_t k = 0; k < cfg.instances; ++k) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(cfg.max_local_length)));
    const std::size_t ng = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(cfg.max_global_length)));
    Wa f = random_wa(rng, bits, static_cast<std::size_t>(rng.uniform(1, 4)));
    Hmm d = random_hmm(rng, bits, static_cast<std::size_t>(rng.uniform(1, 3)));
    Word w = rng.word(bits, n), ref = rng.word(bits, n), gref = rng.word(bits, ng);
    const std::size_t i = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(n)));
    const std::size_t gi = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(ng)));
    const std::string where = " instance " + std::to_string(k) + ": f=" + detail::describe_wa(f) +
                              " D=" + detail::describe_hmm(d);
    auto model = oracle::memoize(oracle::wa_model(f));
    auto table = oracle::hmm_distribution(d, n);
    auto gtable = oracle::hmm_distribution(d, ng);
    oracle::Context<Rational> inter{oracle::Variant::kInterventional, "", &table};
    oracle::Context<Rational> ginter{oracle::Variant::kInterventional, "", &gtable};
    oracle::Context<Rational> base{oracle::Variant::kBaseline, ref, nullptr};
    oracle::Context<Rational> gbase{oracle::Variant::kBaseline, gref, nullptr};
    detail::record(out[0], hooks.loc_i(f, w, i, d), oracle::shap_local(model, w, i, inter),
                   "w=" + w + " i=" + std::to_string(i) + where);
    detail::record(out[1], hooks.loc_b(f, w, i, ref), oracle::shap_local(model, w, i, base),
                   "w=" + w + " ref=" + ref + " i=" + std::to_string(i) + where);
    detail::record(out[2], hooks.glo_i(f, gi, ng, d), oracle::shap_global(model, gi, ginter, gtable),
                   "n=" + std::to_string(ng) + " i=" + std::to_string(gi) + where);
    detail::record(out[3], hooks.glo_b(f, gi, ng, gref, d), oracle::shap_global(model, gi, gbase, gtable),
                   "n=" + std::to_string(ng) + " ref=" + gref + " i=" + std::to_string(gi) + where);

    DecisionTree tree = random_tree(rng, bits, n, 15);
    auto order = random_order(rng, n);
    oracle::Model<Rational> tm = [&tree](const Word& x) { return tree.evaluate(x); };
    const std::size_t j = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(n)));
    Wa compiled = dt_to_wa(tree, order);
    oracle::Context<Rational> tbase{oracle::Variant::kBaseline, ref, nullptr};
    detail::record(out[4],
                   hooks.loc_b(compiled, sequentialize(w, order), position_of_feature(j, order),
                               sequentialize(ref, order)),
                   oracle::shap_local(tm, w, j, tbase), "tree input x=" + w + " ref=" + ref + " feature=" + std::to_string(j));

    Wa boolean = random_boolean_wa(rng, bits, static_cast<std::size_t>(rng.uniform(1, 4)));
    Hmm u = uniform_hmm(bits);
    Rational total = 0;
    for (std::size_t t = 1; t <= n; ++t) total += hooks.loc_i(boolean, w, t, u);
    long ones = 0;
    for (const auto& x : oracle::enumerate_words(bits, n)) ones += oracle::forward(boolean, x) == 1;
    Rational expected = oracle::forward(boolean, w) - Rational(ones, 1L << n);
    expected.canonicalize();
    detail::record(out[5], total, expected, "w=" + w + " f=" + detail::describe_wa(boolean));
  }
  return out;
}

// Oracle verdict on a gadget instance; nullopt when over the guards.
struct Certificate {
  bool holds = false;          // the reduction's predicate agrees with brute force
  std::string verdict;         // e.g. "not dummy; φ_b > ε"
  std::string phi;             // exact "p/q", or decimal for sigmoid
  std::optional<Word> witness;  // closest-string witness
};

inline Certificate certify_wmg_sigmoid(const Wmg& g, const GadgetInstance& inst) {
  const auto& net = std::get<SigmoidNet>(inst.model);
  oracle::Model<double> f = [&net](const Word& x) { return net.evaluate(x); };
  oracle::Context<double> base{oracle::Variant::kBaseline, inst.reference, nullptr};
  const double phi = oracle::shap_local(oracle::memoize(f), inst.input, inst.feature, base);
  const bool dummy = oracle::dummy_check(g, inst.feature);
  const bool above = phi > inst.threshold->epsilon.get_d();
  std::ostringstream s;
  s.precision(17);
  s << phi;
  return Certificate{dummy != above, dummy ? "dummy; φ_b ≤ ε" : "not dummy; φ_b > ε", s.str(), std::nullopt};
}

inline Certificate certify_wmg_rnn(const Wmg& g, const GadgetInstance& inst) {
  const auto& r = std::get<RnnRelu>(inst.model);
  oracle::Context<Rational> base{oracle::Variant::kBaseline, inst.reference, nullptr};
  Rational phi = oracle::shap_local<Rational>([&r](const Word& x) { return r.evaluate(x); }, inst.input,
                                              inst.feature, base);
  const bool dummy = oracle::dummy_check(g, inst.feature);
  return Certificate{dummy == (phi == 0), dummy ? "dummy; φ_b = 0" : "not dummy; φ_b > 0", phi.get_str(),
                     std::nullopt};
}

inline Certificate certify_sat(const CnfFormula& phi_in, const GadgetInstance& inst) {
  const auto& e = std::get<TreeEnsemble>(inst.model);
  oracle::Context<Rational> base{oracle::Variant::kBaseline, inst.reference, nullptr};
  Rational phi = oracle::shap_local<Rational>(oracle::memoize<Rational>([&e](const Word& x) { return e.evaluate(x); }),
                                              inst.input, inst.feature, base);
  const bool sat = oracle::sat_brute(phi_in);
  return Certificate{sat == (phi > 0), sat ? "satisfiable; φ_b > 0" : "unsatisfiable; φ_b = 0", phi.get_str(),
                     std::nullopt};
}

inline Certificate certify_csp(const CspInstance& inst, const RnnRelu& r) {
  auto witness = oracle::csp_brute(inst);
  const bool empty = oracle::empty_brute([&r](const Word& x) { return r.evaluate(x); }, inst.alphabet, inst.length());
  return Certificate{empty == !witness.has_value(),
                     witness ? "closest string exists; network accepts some word" : "no closest string; network is empty",
                     "", witness};
}

}  // namespace shapwa::verify

#endif  // SHAPWA_VERIFY_HPP_
