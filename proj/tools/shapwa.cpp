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

// shapwa command-line tool: shap, convert, gadget, verify.
//
// Exit codes: 0 ok, 1 verification failure, 2 parse error,
// 3 incompatible input, 4 enumeration guard exceeded. Output is buffered
// and only written on success, so error paths print nothing to stdout.

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "shapwa/frontends.hpp"
#include "shapwa/gadgets.hpp"
#include "shapwa/json_io.hpp"
#include "shapwa/oracle.hpp"
#include "shapwa/shap.hpp"
#include "shapwa/verify.hpp"

namespace shapwa::cli {
namespace {

using json_io::json;

enum ExitCode { kOk = 0, kVerifyFailed = 1, kParse = 2, kDomain = 3, kGuard = 4 };

std::string decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::ostringstream s;
  for (unsigned int k = 0; k < len; ++k) s << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[k]);
  return s.str();
}

// 1-based CLI order to the 0-based form used by the frontends.
std::vector<std::size_t> zero_based(const std::vector<std::size_t>& order) {
  std::vector<std::size_t> out;
  for (auto j : order) {
    if (j == 0) throw DomainError("--order entries are 1-based");
    out.push_back(j - 1);
  }
  if (!out.empty()) require_permutation(out);
  return out;
}

void require_order_length(const std::vector<std::size_t>& order, std::size_t n) {
  if (!order.empty() && order.size() != n) {
    throw DomainError("--order lists " + std::to_string(order.size()) + " features but the input has " +
                      std::to_string(n));
  }
}

// ---------------------------------------------------------------- shap

struct ShapConfig {
  std::string scope = "local";
  std::string variant = "baseline";
  std::string model_path;
  std::string dist_path;
  std::string input;
  std::string reference;
  std::size_t feature = 0;
  std::size_t length = 0;
  std::string mode = "exact";
  std::string format = "json";
  std::string layout = "compact";
  std::vector<std::size_t> order;
};

struct ShapRecord {
  std::size_t feature = 0;
  std::string variant, scope, backend, model_type;
  std::optional<Rational> exact;
  double approx = 0;
};

bool is_tabular(const json_io::Model& m) {
  return std::holds_alternative<DecisionTree>(m) || std::holds_alternative<TreeEnsemble>(m) ||
         std::holds_alternative<LinearModel>(m);
}

const Alphabet& model_alphabet(const json_io::Model& m) {
  return std::visit(
      [](const auto& x) -> const Alphabet& {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Wa>) {
          if (x.arity() != 1) throw DomainError("SHAP needs a 1-tape automaton; this one has " + std::to_string(x.arity()) + " tapes");
          return x.alphabets()[0];
        } else if constexpr (std::is_same_v<T, DecisionTree> || std::is_same_v<T, TreeEnsemble> ||
                             std::is_same_v<T, LinearModel>) {
          return x.domain();
        } else {
          return x.alphabet();
        }
      },
      m);
}

std::optional<std::size_t> model_length(const json_io::Model& m) {
  if (const auto* t = std::get_if<DecisionTree>(&m)) return t->num_features();
  if (const auto* e = std::get_if<TreeEnsemble>(&m)) return e->num_features();
  if (const auto* l = std::get_if<LinearModel>(&m)) return l->num_features();
  if (const auto* s = std::get_if<SigmoidNet>(&m)) return s->num_features();
  return std::nullopt;
}

const Alphabet& dist_alphabet(const json_io::Distribution& d) {
  return std::visit([](const auto& x) -> const Alphabet& { return x.alphabet(); }, d);
}

// Features fixed by the distribution, if any.
std::optional<std::size_t> dist_length(const json_io::Distribution& d) {
  if (const auto* v = std::get_if<HmmVec>(&d)) return v->num_features();
  if (const auto* e = std::get_if<Dataset>(&d)) return e->num_features();
  if (const auto* i = std::get_if<IndDist>(&d)) return i->num_features();
  if (const auto* b = std::get_if<NaiveBayes>(&d)) return b->num_features();
  return std::nullopt;
}

// P(x) with x in original feature order.
Rational dist_probability(const json_io::Distribution& d, const Word& x) {
  return std::visit(
      [&x](const auto& v) -> Rational {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Hmm>) {
          return v.prefix_probability(x);
        } else {
          return v.probability(x);
        }
      },
      d);
}

// The sequence HMM for the engine, matching the model's reading order.
Hmm engine_hmm(const json_io::Distribution& d, const std::vector<std::size_t>& order) {
  const bool identity = order == identity_order(order.size());
  if (const auto* h = std::get_if<Hmm>(&d)) {
    if (!identity) throw DomainError("an hmm distribution fixes the identity feature order; drop --order or use an hmmvec");
    return *h;
  }
  if (const auto* m = std::get_if<MarkovDist>(&d)) {
    if (!identity) throw DomainError("a markov distribution fixes the identity feature order; drop --order");
    return markov_to_hmm(*m);
  }
  if (const auto* v = std::get_if<HmmVec>(&d)) {
    if (v->order() != order) throw DomainError("the hmmvec's order differs from the model's feature order");
    return hmmvec_to_hmm(*v);
  }
  if (const auto* e = std::get_if<Dataset>(&d)) return hmmvec_to_hmm(emp_to_hmmvec(*e, order));
  if (const auto* i = std::get_if<IndDist>(&d)) return hmmvec_to_hmm(ind_to_hmmvec(*i, order));
  return hmmvec_to_hmm(nb_to_hmmvec(std::get<NaiveBayes>(d), order));
}

Wa compile_model(const json_io::Model& m, const std::vector<std::size_t>& order) {
  if (const auto* f = std::get_if<Wa>(&m)) return *f;
  if (const auto* t = std::get_if<DecisionTree>(&m)) return dt_to_wa(*t, order);
  if (const auto* e = std::get_if<TreeEnsemble>(&m)) return ensemble_reg_to_wa(*e, order);
  return linear_to_wa(std::get<LinearModel>(m), order);
}

oracle::Model<Rational> exact_model(const json_io::Model& m) {
  if (const auto* f = std::get_if<Wa>(&m)) return oracle::memoize(oracle::wa_model(*f));
  if (const auto* t = std::get_if<DecisionTree>(&m)) return [t](const Word& x) { return t->evaluate(x); };
  if (const auto* e = std::get_if<TreeEnsemble>(&m)) {
    return oracle::memoize<Rational>([e](const Word& x) { return e->evaluate(x); });
  }
  if (const auto* l = std::get_if<LinearModel>(&m)) return [l](const Word& x) { return l->evaluate(x); };
  if (const auto* r = std::get_if<RnnRelu>(&m)) {
    return oracle::memoize<Rational>([r](const Word& x) { return r->evaluate(x); });
  }
  throw DomainError("exact mode is rejected for sigmoid models; pass --mode float");
}

oracle::Variant parse_variant(const std::string& v) {
  if (v == "baseline") return oracle::Variant::kBaseline;
  if (v == "interventional") return oracle::Variant::kInterventional;
  return oracle::Variant::kConditional;
}

template <class T>
T run_oracle(const oracle::Model<T>& f, const ShapConfig& cfg, std::size_t n, const Alphabet& sigma,
             const std::optional<json_io::Distribution>& dist) {
  oracle::require_coalitions(n);
  oracle::Distribution<T> table{sigma, n, {}};
  if (dist) {
    table = oracle::tabulate<T>(sigma, n, [&](const Word& x) {
      if constexpr (std::is_same_v<T, double>) {
        return dist_probability(*dist, x).get_d();
      } else {
        return dist_probability(*dist, x);
      }
    });
  }
  oracle::Context<T> ctx{parse_variant(cfg.variant), cfg.reference, dist ? &table : nullptr};
  if (cfg.scope == "local") return oracle::shap_local(f, cfg.input, cfg.feature, ctx);
  return oracle::shap_global(f, cfg.feature, ctx, table);
}

template <class T>
T run_engine(const BasicWa<T>& f, const std::optional<BasicHmm<T>>& d, const ShapConfig& cfg, std::size_t n,
             const std::vector<std::size_t>& order, const EngineOptions& opts) {
  const Word x = cfg.input.empty() ? Word() : sequentialize(cfg.input, order);
  const Word ref = cfg.reference.empty() ? Word() : sequentialize(cfg.reference, order);
  const std::size_t pos = position_of_feature(cfg.feature, order);
  if (cfg.scope == "local") {
    if (cfg.variant == "baseline") return loc_b_shap(f, x, pos, ref, opts);
    return loc_i_shap(f, x, pos, *d, opts);
  }
  if (cfg.variant == "baseline") return glo_b_shap(f, pos, n, ref, *d, opts);
  return glo_i_shap(f, pos, n, *d, opts);
}

void check_word(const Word& w, std::size_t n, const Alphabet& sigma, const char* what) {
  if (w.size() != n) {
    throw DomainError(std::string(what) + " has length " + std::to_string(w.size()) + ", expected " + std::to_string(n));
  }
  sigma.require_word(w);
}

ShapRecord cmd_shap(const ShapConfig& cfg) {
  const json_io::Model model = json_io::read_model(json_io::read_file(cfg.model_path));
  std::optional<json_io::Distribution> dist;
  if (!cfg.dist_path.empty()) dist = json_io::read_distribution(json_io::read_file(cfg.dist_path));
  const std::string model_type = json_io::document_type(json_io::write_model(model));

  const Alphabet& sigma = model_alphabet(model);
  std::size_t n = 0;
  if (auto fixed = model_length(model)) {
    n = *fixed;
    if (cfg.length != 0 && cfg.length != n) {
      throw DomainError("--length " + std::to_string(cfg.length) + " but the model has " + std::to_string(n) + " features");
    }
  } else if (cfg.scope == "local") {
    n = cfg.input.size();
  } else if (cfg.length != 0) {
    n = cfg.length;
  } else if (!cfg.reference.empty()) {
    n = cfg.reference.size();
  } else if (dist && dist_length(*dist)) {
    n = *dist_length(*dist);
  } else {
    throw DomainError("global scope on a sequence model needs --length");
  }

  if (cfg.scope == "local") {
    if (cfg.input.empty() && n != 0) throw DomainError("local scope needs --input");
    check_word(cfg.input, n, sigma, "--input");
  }
  if (cfg.variant == "baseline") {
    if (cfg.reference.empty() && n != 0) throw DomainError("baseline variant needs --reference");
    check_word(cfg.reference, n, sigma, "--reference");
  }
  const bool needs_dist = cfg.variant != "baseline" || cfg.scope == "global";
  if (needs_dist && !dist) throw DomainError(cfg.scope + " " + cfg.variant + " SHAP needs --dist");
  if (dist) {
    if (dist_alphabet(*dist).symbols() != sigma.symbols()) {
      throw DomainError("distribution alphabet \"" + dist_alphabet(*dist).symbols() + "\" differs from model alphabet \"" +
                        sigma.symbols() + "\"");
    }
    if (auto dn = dist_length(*dist); dn && *dn != n) {
      throw DomainError("distribution has " + std::to_string(*dn) + " features, model input has " + std::to_string(n));
    }
  }
  if (cfg.feature < 1 || cfg.feature > n) {
    throw DomainError("feature index " + std::to_string(cfg.feature) + " out of range 1.." + std::to_string(n));
  }

  std::vector<std::size_t> order = zero_based(cfg.order);
  if (!is_tabular(model) && !order.empty()) throw DomainError("--order applies to tabular models only");
  require_order_length(order, n);
  if (order.empty()) {
    const auto* v = dist ? std::get_if<HmmVec>(&*dist) : nullptr;
    order = (v != nullptr && is_tabular(model)) ? v->order() : identity_order(n);
  }

  const bool vote = std::holds_alternative<TreeEnsemble>(model) &&
                    std::get<TreeEnsemble>(model).mode() == EnsembleMode::kVote;
  const bool sigmoid = std::holds_alternative<SigmoidNet>(model);
  if (sigmoid && cfg.mode == "exact") throw DomainError("exact mode is rejected for sigmoid models; pass --mode float");
  const bool use_oracle = cfg.variant == "conditional" || vote || sigmoid || std::holds_alternative<RnnRelu>(model);

  ShapRecord rec{cfg.feature, cfg.variant, cfg.scope, use_oracle ? "oracle" : "engine", model_type, std::nullopt, 0};
  if (use_oracle) {
    if (cfg.mode == "float") {
      oracle::Model<double> f;
      if (sigmoid) {
        const auto* s = &std::get<SigmoidNet>(model);
        f = [s](const Word& x) { return s->evaluate(x); };
      } else {
        auto exact = exact_model(model);
        f = [exact](const Word& x) { return exact(x).get_d(); };
      }
      rec.approx = run_oracle<double>(f, cfg, n, sigma, dist);
    } else {
      rec.exact = run_oracle<Rational>(exact_model(model), cfg, n, sigma, dist);
    }
  } else {
    EngineOptions opts;
    opts.a_wi = cfg.layout == "per-count" ? AwiLayout::kPerCount : AwiLayout::kCompact;
    const Wa f = compile_model(model, order);
    std::optional<Hmm> d;
    if (dist) d = engine_hmm(*dist, order);
    if (cfg.mode == "float") {
      std::optional<BasicHmm<double>> dd;
      if (d) dd = cast_hmm<double>(*d);
      rec.approx = run_engine<double>(cast_wa<double>(f), dd, cfg, n, order, opts);
    } else {
      rec.exact = run_engine<Rational>(f, d, cfg, n, order, opts);
    }
  }
  if (rec.exact) rec.approx = rec.exact->get_d();
  return rec;
}

std::string render(const ShapRecord& r, const std::string& format) {
  if (format == "tsv") {
    std::ostringstream s;
    s << "feature\tvariant\tscope\tvalue\tdecimal\tbackend\n";
    s << r.feature << '\t' << r.variant << '\t' << r.scope << '\t' << (r.exact ? r.exact->get_str() : "") << '\t'
      << decimal(r.approx) << '\t' << r.backend << '\n';
    return s.str();
  }
  json j{{"feature", r.feature}, {"variant", r.variant}, {"scope", r.scope},
         {"value", r.exact ? json(r.exact->get_str()) : json(nullptr)},
         {"decimal", r.approx}, {"backend", r.backend}, {"model", r.model_type}};
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- convert

struct ConvertConfig {
  std::string from;
  std::string out;
  std::vector<std::size_t> order;
};

std::string cmd_convert(const ConvertConfig& cfg) {
  const std::string bytes = json_io::slurp(cfg.from);
  const json src = json_io::parse_text(bytes, cfg.from);
  const std::string type = json_io::document_type(src);
  std::vector<std::size_t> order = zero_based(cfg.order);
  json out;
  json order_json = nullptr;

  auto resolve = [&order, &order_json](std::size_t n) {
    require_order_length(order, n);
    if (order.empty()) order = identity_order(n);
    order_json = json_io::order_json(order);
    return order;
  };

  if (type == "dt") {
    DecisionTree t = json_io::read_dt(src);
    out = json_io::write_wa(dt_to_wa(t, resolve(t.num_features())));
  } else if (type == "ensemble") {
    TreeEnsemble e = json_io::read_ensemble(src);
    if (e.mode() == EnsembleMode::kVote) {
      throw Unsupported(
          "vote-mode ensembles are not converted: SHAP for ensemble classifiers with majority voting is "
          "intractable (NP-hard even for baseline SHAP), so no polynomial-size automaton compilation is offered. "
          "Use `shapwa shap`, which routes vote ensembles to the exact enumeration oracle on small inputs.");
    }
    out = json_io::write_wa(ensemble_reg_to_wa(e, resolve(e.num_features())));
  } else if (type == "linear") {
    LinearModel l = json_io::read_linear(src);
    out = json_io::write_wa(linear_to_wa(l, resolve(l.num_features())));
  } else if (type == "emp") {
    Dataset d = json_io::read_emp(src);
    out = json_io::write_hmm(hmmvec_to_hmm(emp_to_hmmvec(d, resolve(d.num_features()))));
  } else if (type == "ind") {
    IndDist d = json_io::read_ind(src);
    out = json_io::write_hmm(hmmvec_to_hmm(ind_to_hmmvec(d, resolve(d.num_features()))));
  } else if (type == "nb") {
    NaiveBayes d = json_io::read_nb(src);
    out = json_io::write_hmm(hmmvec_to_hmm(nb_to_hmmvec(d, resolve(d.num_features()))));
  } else if (type == "hmmvec") {
    HmmVec v = json_io::read_hmmvec(src);
    if (!order.empty() && order != v.order()) throw DomainError("--order differs from the hmmvec's own order");
    order_json = json_io::order_json(v.order());
    out = json_io::write_hmm(hmmvec_to_hmm(v));
  } else if (type == "markov") {
    if (!order.empty()) throw DomainError("a markov chain has no feature order to choose");
    out = json_io::write_hmm(markov_to_hmm(json_io::read_markov(src)));
  } else {
    throw DomainError("cannot convert a \"" + type + "\" document; sources are dt, ensemble, linear, emp, ind, nb, "
                      "hmmvec, markov");
  }
  out["provenance"] = json{{"source_sha256", sha256_hex(bytes)}, {"source_type", type}, {"order", order_json}};
  return out.dump(2) + "\n";
}

// ---------------------------------------------------------------- gadget

json certificate_json(const verify::Certificate& c) {
  json j{{"holds", c.holds}, {"verdict", c.verdict}};
  if (!c.phi.empty()) j["phi_b"] = c.phi;
  if (c.witness) j["witness"] = *c.witness;
  return j;
}

template <class F>
json guarded_certificate(F&& make) {
  try {
    return certificate_json(make());
  } catch (const GuardExceeded& e) {
    return json{{"skipped", e.what()}};
  }
}

// DIMACS CNF: comment lines start with 'c', header "p cnf <vars> <clauses>",
// clauses are 0-terminated literal lists.
CnfFormula read_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t vars = 0;
  bool header = false;
  std::vector<std::vector<int>> clauses;
  std::vector<int> cur;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok == "c" || tok[0] == 'c' || tok == "%") continue;
    if (tok == "p") {
      std::string fmt;
      std::size_t m = 0;
      if (!(ls >> fmt >> vars >> m) || fmt != "cnf") throw ParseError("DIMACS: bad header line \"" + line + "\"");
      header = true;
      continue;
    }
    if (!header) throw ParseError("DIMACS: clause before the \"p cnf\" header");
    std::istringstream lits(line);
    long lit = 0;
    while (lits >> lit) {
      if (lit == 0) {
        clauses.push_back(std::move(cur));
        cur.clear();
      } else {
        cur.push_back(static_cast<int>(lit));
      }
    }
    if (!lits.eof()) throw ParseError("DIMACS: non-integer token in \"" + line + "\"");
  }
  if (!header) throw ParseError("DIMACS: missing \"p cnf\" header");
  if (!cur.empty()) clauses.push_back(std::move(cur));
  return CnfFormula(vars, std::move(clauses));
}

// "1,-2;2,3" -> {{1,-2},{2,3}}.
CnfFormula parse_clauses(const std::string& text, std::size_t vars) {
  std::vector<std::vector<int>> clauses;
  std::size_t max_var = 0;
  std::stringstream cs(text);
  std::string clause;
  while (std::getline(cs, clause, ';')) {
    std::vector<int> lits;
    std::stringstream ls(clause);
    std::string tok;
    while (std::getline(ls, tok, ',')) {
      try {
        std::size_t used = 0;
        int lit = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        lits.push_back(lit);
        max_var = std::max<std::size_t>(max_var, static_cast<std::size_t>(std::abs(lit)));
      } catch (const std::logic_error&) {
        throw ParseError("--clauses: bad literal \"" + tok + "\"");
      }
    }
    clauses.push_back(std::move(lits));
  }
  return CnfFormula(vars == 0 ? max_var : vars, std::move(clauses));
}

struct GadgetConfig {
  std::vector<long> weights;
  long quota = 0;
  std::size_t player = 1;
  std::string dimacs;
  std::string clauses;
  std::size_t variables = 0;
  std::string alphabet = "01";
  std::vector<std::string> strings;
  std::size_t radius = 0;
};

std::string cmd_gadget(const std::string& kind, const GadgetConfig& cfg) {
  json out;
  if (kind == "wmg-sigmoid" || kind == "wmg-rnn") {
    Wmg g(cfg.weights, cfg.quota);
    if (kind == "wmg-sigmoid") {
      auto inst = wmg_to_sigmoid(g, cfg.player);
      out = json_io::write_gadget(kind, inst, json_io::write_wmg(g));
      out["certificate"] = guarded_certificate([&] { return verify::certify_wmg_sigmoid(g, inst); });
    } else {
      auto inst = wmg_to_rnnrelu_instance(g, cfg.player);
      out = json_io::write_gadget(kind, inst, json_io::write_wmg(g));
      out["certificate"] = guarded_certificate([&] { return verify::certify_wmg_rnn(g, inst); });
    }
  } else if (kind == "sat") {
    CnfFormula phi = !cfg.dimacs.empty() ? read_dimacs(json_io::slurp(cfg.dimacs)) : parse_clauses(cfg.clauses, cfg.variables);
    auto inst = sat_to_ensemble(phi);
    out = json_io::write_gadget(kind, inst, json_io::write_cnf(phi));
    out["certificate"] = guarded_certificate([&] { return verify::certify_sat(phi, inst); });
  } else {
    CspInstance csp(Alphabet(cfg.alphabet), cfg.strings, cfg.radius);
    RnnRelu r = csp_to_rnn(csp);
    GadgetInstance inst{r, 0, "", "", std::nullopt};
    out = json_io::write_gadget(kind, inst, json_io::write_csp(csp));
    out["certificate"] = guarded_certificate([&] { return verify::certify_csp(csp, r); });
  }
  return out.dump(2) + "\n";
}

// ---------------------------------------------------------------- verify

struct VerifyConfig {
  std::uint64_t seed = 0;
  std::size_t instances = 50;
  std::string gadget;
  std::string format = "tsv";
};

struct VerifyLine {
  std::string name;
  bool pass;
  std::string detail;
};

verify::Certificate certify_bundle(const json_io::GadgetBundle& b) {
  if (b.kind == "wmg-sigmoid") return verify::certify_wmg_sigmoid(json_io::read_wmg(b.source), b.instance);
  if (b.kind == "wmg-rnn") return verify::certify_wmg_rnn(json_io::read_wmg(b.source), b.instance);
  if (b.kind == "sat") return verify::certify_sat(json_io::read_cnf(b.source), b.instance);
  if (b.kind == "csp") return verify::certify_csp(json_io::read_csp(b.source), std::get<RnnRelu>(b.instance.model));
  throw ParseError("gadget.kind: unknown kind \"" + b.kind + "\"");
}

std::pair<std::string, bool> cmd_verify(const VerifyConfig& cfg) {
  std::vector<VerifyLine> lines;
  if (!cfg.gadget.empty()) {
    auto bundle = json_io::read_gadget(json_io::read_file(cfg.gadget));
    auto c = certify_bundle(bundle);
    std::string detail = c.verdict;
    if (!c.phi.empty()) detail += " (phi_b = " + c.phi + ")";
    if (c.witness) detail += " (witness " + *c.witness + ")";
    lines.push_back({"gadget " + bundle.kind, c.holds, detail});
  } else {
    verify::SuiteConfig sc;
    sc.seed = cfg.seed;
    sc.instances = cfg.instances;
    for (const auto& p : verify::run_suite(sc)) {
      lines.push_back({p.name, p.passed(),
                       p.passed() ? std::to_string(p.checked) + " checked" : "counterexample: " + *p.counterexample});
    }
  }
  bool ok = true;
  std::ostringstream s;
  json arr = json::array();
  for (const auto& l : lines) {
    ok = ok && l.pass;
    if (cfg.format == "json") {
      arr.push_back(json{{"property", l.name}, {"status", l.pass ? "PASS" : "FAIL"}, {"detail", l.detail}});
    } else {
      s << (l.pass ? "PASS" : "FAIL") << '\t' << l.name << '\t' << l.detail << '\n';
    }
  }
  if (cfg.format == "json") s << arr.dump(2) << '\n';
  return {s.str(), ok};
}

int write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return kOk;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw DomainError("cannot write " + path);
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact SHAP for weighted automata, model compilers, and reduction gadgets"};
  app.require_subcommand(1);

  ShapConfig shap;
  auto* s = app.add_subcommand("shap", "compute one SHAP value");
  s->add_option("--scope", shap.scope, "local or global")->check(CLI::IsMember({"local", "global"}));
  s->add_option("--variant", shap.variant)->check(CLI::IsMember({"baseline", "interventional", "conditional"}));
  s->add_option("--model", shap.model_path, "model JSON")->required();
  s->add_option("--dist", shap.dist_path, "distribution JSON (hmm, hmmvec, emp, ind, markov, nb)");
  s->add_option("--input", shap.input, "input word x");
  s->add_option("--reference", shap.reference, "reference word for baseline SHAP");
  s->add_option("--feature", shap.feature, "1-based feature index")->required();
  s->add_option("--length", shap.length, "input length for global SHAP on sequence models");
  s->add_option("--mode", shap.mode)->check(CLI::IsMember({"exact", "float"}));
  s->add_option("--format", shap.format)->check(CLI::IsMember({"json", "tsv"}));
  s->add_option("--layout", shap.layout, "pattern automaton layout")->check(CLI::IsMember({"compact", "per-count"}));
  s->add_option("--order", shap.order, "1-based feature order for tabular models")->delimiter(',');

  ConvertConfig conv;
  auto* c = app.add_subcommand("convert", "compile a tabular model to a WA or a distribution to an HMM");
  c->add_option("--from", conv.from, "source JSON")->required();
  c->add_option("--out", conv.out, "output path (default stdout)");
  c->add_option("--order", conv.order, "1-based feature order")->delimiter(',');

  GadgetConfig gad;
  auto* g = app.add_subcommand("gadget", "emit a reduction gadget with an oracle certificate");
  g->require_subcommand(1);
  std::string gadget_out;
  g->add_option("--out", gadget_out, "output path (default stdout)");
  for (const char* k : {"wmg-sigmoid", "wmg-rnn"}) {
    auto* w = g->add_subcommand(k, std::string("weighted majority game to ") + (k[4] == 's' ? "sigmoid network" : "RNN-ReLU"));
    w->add_option("--weights", gad.weights, "comma-separated vote weights")->delimiter(',')->required();
    w->add_option("--quota", gad.quota)->required();
    w->add_option("--player", gad.player, "1-based player whose dummy status is encoded");
  }
  auto* sat = g->add_subcommand("sat", "3-CNF to a vote-mode tree ensemble");
  auto* dimacs = sat->add_option("--dimacs", gad.dimacs, "DIMACS CNF file");
  auto* clauses = sat->add_option("--clauses", gad.clauses, "clauses as \"1,-2;2,3\"");
  sat->add_option("--variables", gad.variables, "variable count (default: largest literal)");
  dimacs->excludes(clauses);
  auto* csp = g->add_subcommand("csp", "closest-string instance to an RNN-ReLU");
  csp->add_option("--alphabet", gad.alphabet);
  csp->add_option("--strings", gad.strings)->delimiter(',')->required();
  csp->add_option("--radius", gad.radius)->required();

  VerifyConfig ver;
  auto* v = app.add_subcommand("verify", "engine-vs-oracle suite, or a gadget certificate");
  v->add_option("--seed", ver.seed, "random seed");
  v->add_option("--instances", ver.instances);
  v->add_option("--gadget", ver.gadget, "gadget bundle JSON to re-certify");
  v->add_option("--format", ver.format)->check(CLI::IsMember({"json", "tsv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (s->parsed()) return write_output(render(cmd_shap(shap), shap.format), "");
    if (c->parsed()) return write_output(cmd_convert(conv), conv.out);
    if (g->parsed()) {
      if (sat->parsed() && gad.dimacs.empty() && gad.clauses.empty()) throw ParseError("sat needs --dimacs or --clauses");
      std::string kind = g->get_subcommands().front()->get_name();
      return write_output(cmd_gadget(kind, gad), gadget_out);
    }
    auto [text, ok] = cmd_verify(ver);
    std::cout << text;
    return ok ? kOk : kVerifyFailed;
  } catch (const ParseError& e) {
    std::cerr << "shapwa: parse error: " << e.what() << '\n';
    return kParse;
  } catch (const GuardExceeded& e) {
    std::cerr << "shapwa: guard exceeded: " << e.what() << '\n';
    return kGuard;
  } catch (const DomainError& e) {
    std::cerr << "shapwa: " << e.what() << '\n';
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "shapwa: " << e.what() << '\n';
    return kVerifyFailed;
  }
}

}  // namespace
}  // namespace shapwa::cli

int main(int argc, char** argv) { return shapwa::cli::run(argc, argv); }
