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

// JSON documents for automata, models, distributions and gadgets.
// Rationals are written as "p/q" strings; readers also take JSON integers
// and decimal strings. Matrices are dense row arrays, or
// {"rows": r, "cols": c, "entries": [[row, col, value], ...]} with 0-based
// entry coordinates; writers use the sparse form above 32 rows or columns.

#ifndef SHAPWA_JSON_IO_HPP_
#define SHAPWA_JSON_IO_HPP_

#include <cstddef>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "shapwa/distributions.hpp"
#include "shapwa/error.hpp"
#include "shapwa/gadgets.hpp"
#include "shapwa/hmm.hpp"
#include "shapwa/networks.hpp"
#include "shapwa/scalar.hpp"
#include "shapwa/tabular.hpp"
#include "shapwa/wa.hpp"

namespace shapwa::json_io {

using nlohmann::json;

inline constexpr std::size_t kDenseLimit = 32;

inline const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing \"" + key + "\"");
  return *it;
}

inline json rat(const Rational& q) { return q.get_str(); }

inline Rational to_rat(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  throw ParseError(where + ": expected a rational (\"p/q\" string or integer)");
}

inline std::size_t to_size(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long>() >= 0)) {
    throw ParseError(where + ": expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

inline std::string to_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a string");
  return j.get<std::string>();
}

inline Alphabet to_alphabet(const json& j, const std::string& where) {
  std::string s;
  if (j.is_string()) {
    s = j.get<std::string>();
  } else if (j.is_array()) {
    for (const auto& c : j) {
      std::string sym = to_string(c, where);
      if (sym.size() != 1) throw ParseError(where + ": symbols must be single characters");
      s += sym;
    }
  } else {
    throw ParseError(where + ": expected an alphabet string");
  }
  return Alphabet(s, s.find(kPlaceholder) != std::string::npos);
}

inline std::vector<Rational> to_vec(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  std::vector<Rational> v;
  for (std::size_t k = 0; k < j.size(); ++k) v.push_back(to_rat(j[k], where + "[" + std::to_string(k) + "]"));
  return v;
}

inline json vec_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(rat(x));
  return out;
}

inline SparseMatrix<Rational> to_matrix(const json& j, const std::string& where) {
  if (j.is_array()) {
    const std::size_t rows = j.size();
    const std::size_t cols = rows == 0 ? 0 : (j[0].is_array() ? j[0].size() : 0);
    SparseMatrix<Rational> m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      auto row = to_vec(j[r], where + "[" + std::to_string(r) + "]");
      if (row.size() != cols) throw ParseError(where + ": ragged matrix rows");
      for (std::size_t c = 0; c < cols; ++c) m.set(r, c, row[c]);
    }
    return m;
  }
  const std::size_t rows = to_size(member(j, "rows", where), where + ".rows");
  const std::size_t cols = j.contains("cols") ? to_size(j["cols"], where + ".cols") : rows;
  SparseMatrix<Rational> m(rows, cols);
  const json& entries = member(j, "entries", where);
  if (!entries.is_array()) throw ParseError(where + ".entries: expected an array");
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 3) throw ParseError(where + ".entries: expected [row, col, value]");
    std::size_t r = to_size(e[0], where), c = to_size(e[1], where);
    if (r >= rows || c >= cols) throw ParseError(where + ".entries: coordinate out of range");
    m.set(r, c, to_rat(e[2], where));
  }
  return m;
}

inline json matrix_json(const SparseMatrix<Rational>& m) {
  if (m.rows() <= kDenseLimit && m.cols() <= kDenseLimit) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rat(m.at(r, c)));
      out.push_back(row);
    }
    return out;
  }
  json entries = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& e : m.row(r)) entries.push_back(json::array({r, e.col, rat(e.value)}));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

// 1-based permutation list, optional.
inline std::vector<std::size_t> to_order(const json& j, std::size_t n, const std::string& where) {
  if (j.is_null()) return identity_order(n);
  if (!j.is_array() || j.size() != n) throw ParseError(where + ": order must list all " + std::to_string(n) + " features");
  std::vector<std::size_t> order;
  for (const auto& x : j) {
    std::size_t v = to_size(x, where);
    if (v == 0) throw ParseError(where + ": order entries are 1-based");
    order.push_back(v - 1);
  }
  require_permutation(order);
  return order;
}

inline json order_json(const std::vector<std::size_t>& order) {
  json out = json::array();
  for (auto j : order) out.push_back(j + 1);
  return out;
}

inline json parse_text(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return parse_text(s.str(), path);
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// ---- automata and HMMs ----

inline Wa read_wa(const json& j) {
  const std::string w = "wa";
  const json& al = member(j, "alphabets", w);
  if (!al.is_array() || al.empty()) throw ParseError("wa.alphabets: expected a non-empty array");
  std::vector<Alphabet> alphabets;
  for (const auto& a : al) alphabets.push_back(to_alphabet(a, "wa.alphabets"));
  auto alpha = to_vec(member(j, "alpha", w), "wa.alpha");
  auto beta = to_vec(member(j, "beta", w), "wa.beta");
  if (alpha.size() != beta.size()) throw ParseError("wa: alpha and beta differ in length");
  Wa out(alphabets, alpha, beta);
  if (j.contains("transitions")) {
    const json& tr = j["transitions"];
    if (!tr.is_object()) throw ParseError("wa.transitions: expected an object");
    for (const auto& [key, m] : tr.items()) {
      // "a" for one tape, "a,b,c" for several.
      std::string symbols;
      for (std::size_t k = 0; k < key.size(); k += 2) {
        symbols += key[k];
        if (k + 1 < key.size() && key[k + 1] != ',') throw ParseError("wa.transitions: bad key \"" + key + "\"");
      }
      if (symbols.size() != alphabets.size()) throw ParseError("wa.transitions: key \"" + key + "\" has wrong arity");
      auto mat = to_matrix(m, "wa.transitions." + key);
      if (mat.rows() != alpha.size() || mat.cols() != alpha.size()) {
        throw ParseError("wa.transitions." + key + ": matrix must be " + std::to_string(alpha.size()) + "x" +
                         std::to_string(alpha.size()));
      }
      out.set_transition(out.tuple_of(symbols), std::move(mat));
    }
  }
  return out;
}

inline json write_wa(const Wa& a) {
  json alphabets = json::array();
  for (const auto& al : a.alphabets()) {
    json syms = json::array();
    for (char c : al.symbols()) syms.push_back(std::string(1, c));
    alphabets.push_back(syms);
  }
  json tr = json::object();
  for (const auto& [t, m] : a.transitions()) {
    std::string s = a.tuple_string(t), key;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k) key += ',';
      key += s[k];
    }
    tr[key] = matrix_json(m);
  }
  return json{{"type", "wa"}, {"alphabets", alphabets}, {"alpha", vec_json(a.alpha())},
              {"beta", vec_json(a.beta())}, {"transitions", tr}};
}

inline Hmm read_hmm(const json& j) {
  return Hmm(to_alphabet(member(j, "alphabet", "hmm"), "hmm.alphabet"), to_vec(member(j, "initial", "hmm"), "hmm.initial"),
             to_matrix(member(j, "transition", "hmm"), "hmm.transition"),
             to_matrix(member(j, "emission", "hmm"), "hmm.emission"));
}

inline json write_hmm(const Hmm& h) {
  return json{{"type", "hmm"},
              {"alphabet", h.alphabet().symbols()},
              {"initial", vec_json(h.initial())},
              {"transition", matrix_json(h.transition())},
              {"emission", matrix_json(h.emission())}};
}

inline HmmVec read_hmmvec(const json& j) {
  const std::string w = "hmmvec";
  const json& trs = member(j, "transitions", w);
  const json& ems = member(j, "emissions", w);
  if (!trs.is_array() || !ems.is_array()) throw ParseError("hmmvec: transitions and emissions must be arrays");
  std::vector<SparseMatrix<Rational>> tr, em;
  for (std::size_t t = 0; t < trs.size(); ++t) tr.push_back(to_matrix(trs[t], w + ".transitions"));
  for (std::size_t t = 0; t < ems.size(); ++t) em.push_back(to_matrix(ems[t], w + ".emissions"));
  auto order = to_order(j.contains("order") ? j["order"] : json(), ems.size(), w + ".order");
  return HmmVec(to_alphabet(member(j, "alphabet", w), w + ".alphabet"), order,
                to_vec(member(j, "initial", w), w + ".initial"), std::move(tr), std::move(em));
}

inline json write_hmmvec(const HmmVec& v) {
  json tr = json::array(), em = json::array();
  for (const auto& m : v.transitions()) tr.push_back(matrix_json(m));
  for (const auto& m : v.emissions()) em.push_back(matrix_json(m));
  return json{{"type", "hmmvec"}, {"alphabet", v.alphabet().symbols()}, {"order", order_json(v.order())},
              {"initial", vec_json(v.initial())}, {"transitions", tr}, {"emissions", em}};
}

// ---- feature distributions ----

inline Dataset read_emp(const json& j) {
  const json& rows_j = j.is_array() ? j : member(j, "rows", "emp");
  if (!rows_j.is_array()) throw ParseError("emp.rows: expected an array of strings");
  std::vector<Word> rows;
  for (const auto& r : rows_j) rows.push_back(to_string(r, "emp.rows"));
  if (j.is_object() && j.contains("alphabet")) return Dataset(to_alphabet(j["alphabet"], "emp.alphabet"), rows);
  std::set<char> seen;
  for (const auto& r : rows) seen.insert(r.begin(), r.end());
  return Dataset(Alphabet(std::string(seen.begin(), seen.end())), rows);
}

inline IndDist read_ind(const json& j) {
  const json& m = member(j, "marginals", "ind");
  if (!m.is_array()) throw ParseError("ind.marginals: expected an array");
  std::vector<std::vector<Rational>> marg;
  for (const auto& row : m) marg.push_back(to_vec(row, "ind.marginals"));
  return IndDist(to_alphabet(member(j, "alphabet", "ind"), "ind.alphabet"), std::move(marg));
}

inline MarkovDist read_markov(const json& j) {
  return MarkovDist(to_alphabet(member(j, "alphabet", "markov"), "markov.alphabet"),
                    to_vec(member(j, "initial", "markov"), "markov.initial"),
                    to_matrix(member(j, "transition", "markov"), "markov.transition"));
}

inline NaiveBayes read_nb(const json& j) {
  const json& c = member(j, "conditionals", "nb");
  if (!c.is_array()) throw ParseError("nb.conditionals: expected one table per feature");
  std::vector<SparseMatrix<Rational>> cond;
  for (const auto& t : c) cond.push_back(to_matrix(t, "nb.conditionals"));
  return NaiveBayes(to_alphabet(member(j, "alphabet", "nb"), "nb.alphabet"), to_vec(member(j, "prior", "nb"), "nb.prior"),
                    std::move(cond));
}

// ---- tabular models ----

namespace detail {

inline std::size_t read_node(const json& j, const Alphabet& domain, std::size_t n, std::vector<TreeNode>& nodes,
                             const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected a node object");
  const std::size_t id = nodes.size();
  nodes.emplace_back();
  if (j.contains("leaf")) {
    nodes[id].value = to_rat(j["leaf"], where + ".leaf");
    return id;
  }
  const std::size_t f = to_size(member(j, "feature", where), where + ".feature");
  if (f < 1 || f > n) throw DomainError(where + ": feature " + std::to_string(f) + " out of range 1.." + std::to_string(n));
  const json& ch = member(j, "children", where);
  if (!ch.is_object()) throw ParseError(where + ".children: expected an object keyed by symbol");
  std::vector<std::size_t> children;
  for (char s : domain.symbols()) {
    auto it = ch.find(std::string(1, s));
    if (it == ch.end()) throw ParseError(where + ".children: missing branch for '" + std::string(1, s) + "'");
    children.push_back(read_node(*it, domain, n, nodes, where + ".children." + s));
  }
  if (ch.size() != domain.size()) throw ParseError(where + ".children: branch for a symbol outside the alphabet");
  nodes[id].feature = f - 1;
  nodes[id].children = std::move(children);
  return id;
}

inline json write_node(const DecisionTree& t, std::size_t v) {
  const auto& node = t.nodes()[v];
  if (node.feature == TreeNode::kLeaf) return json{{"leaf", rat(node.value)}};
  json ch = json::object();
  for (std::size_t d = 0; d < node.children.size(); ++d) {
    ch[std::string(1, t.domain().symbol(d))] = write_node(t, node.children[d]);
  }
  return json{{"feature", node.feature + 1}, {"children", ch}};
}

}  // namespace detail

inline DecisionTree read_dt(const json& j, const json& defaults = json::object()) {
  auto pick = [&](const char* key) -> const json& {
    if (j.is_object() && j.contains(key)) return j[key];
    return member(defaults, key, "dt");
  };
  Alphabet domain = to_alphabet(pick("alphabet"), "dt.alphabet");
  const std::size_t n = to_size(pick("features"), "dt.features");
  std::vector<TreeNode> nodes;
  const json& root = j.is_object() && j.contains("root") ? j["root"] : member(j, "node", "dt");
  detail::read_node(root, domain, n, nodes, "dt.node");
  return DecisionTree(domain, n, std::move(nodes));
}

inline json write_dt(const DecisionTree& t) {
  return json{{"type", "dt"}, {"alphabet", t.domain().symbols()}, {"features", t.num_features()},
              {"node", detail::write_node(t, t.root())}};
}

inline TreeEnsemble read_ensemble(const json& j) {
  const std::string mode = to_string(member(j, "mode", "ensemble"), "ensemble.mode");
  EnsembleMode m;
  if (mode == "regression") {
    m = EnsembleMode::kRegression;
  } else if (mode == "vote") {
    m = EnsembleMode::kVote;
  } else {
    throw ParseError("ensemble.mode: expected \"regression\" or \"vote\"");
  }
  const json& ts = member(j, "trees", "ensemble");
  if (!ts.is_array()) throw ParseError("ensemble.trees: expected an array");
  json defaults = json::object();
  if (j.contains("alphabet")) defaults["alphabet"] = j["alphabet"];
  if (j.contains("features")) defaults["features"] = j["features"];
  std::vector<DecisionTree> trees;
  for (const auto& t : ts) trees.push_back(read_dt(t, defaults));
  return TreeEnsemble(std::move(trees), to_vec(member(j, "weights", "ensemble"), "ensemble.weights"), m);
}

inline json write_ensemble(const TreeEnsemble& e) {
  json trees = json::array();
  for (const auto& t : e.trees()) trees.push_back(write_dt(t));
  return json{{"type", "ensemble"},
              {"mode", e.mode() == EnsembleMode::kVote ? "vote" : "regression"},
              {"weights", vec_json(e.weights())},
              {"trees", trees}};
}

inline LinearModel read_linear(const json& j) {
  Alphabet domain = to_alphabet(member(j, "alphabet", "linear"), "linear.alphabet");
  const std::size_t n = to_size(member(j, "features", "linear"), "linear.features");
  std::vector<std::vector<Rational>> w(n, std::vector<Rational>(domain.size(), Rational(0)));
  const json& wj = member(j, "weights", "linear");
  if (!wj.is_object()) throw ParseError("linear.weights: expected an object keyed \"feature,symbol\"");
  for (const auto& [key, v] : wj.items()) {
    auto comma = key.find(',');
    if (comma == std::string::npos || comma + 2 != key.size()) {
      throw ParseError("linear.weights: bad key \"" + key + "\"");
    }
    std::size_t f = 0;
    try {
      f = std::stoul(key.substr(0, comma));
    } catch (const std::exception&) {
      throw ParseError("linear.weights: bad feature in key \"" + key + "\"");
    }
    if (f < 1 || f > n) throw DomainError("linear.weights: feature " + std::to_string(f) + " out of range");
    w[f - 1][domain.require(key[comma + 1])] = to_rat(v, "linear.weights." + key);
  }
  Rational b = j.contains("intercept") ? to_rat(j["intercept"], "linear.intercept") : Rational(0);
  return LinearModel(domain, std::move(w), b);
}

inline json write_linear(const LinearModel& m) {
  json w = json::object();
  for (std::size_t f = 0; f < m.num_features(); ++f) {
    for (std::size_t d = 0; d < m.domain().size(); ++d) {
      if (sgn(m.weights()[f][d]) != 0) w[std::to_string(f + 1) + "," + m.domain().symbol(d)] = rat(m.weights()[f][d]);
    }
  }
  return json{{"type", "linear"}, {"alphabet", m.domain().symbols()}, {"features", m.num_features()},
              {"weights", w}, {"intercept", rat(m.intercept())}};
}

// ---- networks ----

inline RnnRelu read_rnn(const json& j) {
  Alphabet sigma = to_alphabet(member(j, "alphabet", "rnn"), "rnn.alphabet");
  const json& ej = member(j, "embeddings", "rnn");
  if (!ej.is_object()) throw ParseError("rnn.embeddings: expected an object keyed by symbol");
  std::vector<std::vector<Rational>> emb;
  for (char s : sigma.symbols()) {
    emb.push_back(to_vec(member(ej, std::string(1, s).c_str(), "rnn.embeddings"), "rnn.embeddings"));
  }
  return RnnRelu(sigma, to_vec(member(j, "h_init", "rnn"), "rnn.h_init"), to_matrix(member(j, "W", "rnn"), "rnn.W"),
                 std::move(emb), to_vec(member(j, "output", "rnn"), "rnn.output"));
}

inline json write_rnn(const RnnRelu& r) {
  json emb = json::object();
  for (std::size_t s = 0; s < r.alphabet().size(); ++s) emb[std::string(1, r.alphabet().symbol(s))] = vec_json(r.embeddings()[s]);
  return json{{"type", "rnn"}, {"alphabet", r.alphabet().symbols()}, {"h_init", vec_json(r.h_init())},
              {"W", matrix_json(r.recurrence())}, {"embeddings", emb}, {"output", vec_json(r.output())}};
}

inline SigmoidNet read_sigmoid(const json& j) {
  const json& g = member(j, "gain", "sigmoid");
  if (!g.is_number()) throw ParseError("sigmoid.gain: expected a number");
  return SigmoidNet(to_vec(member(j, "weights", "sigmoid"), "sigmoid.weights"),
                    to_rat(member(j, "bias", "sigmoid"), "sigmoid.bias"), g.get<double>());
}

inline json write_sigmoid(const SigmoidNet& s) {
  return json{{"type", "sigmoid"}, {"weights", vec_json(s.weights())}, {"bias", rat(s.bias())}, {"gain", s.gain()}};
}

// ---- dispatch ----

using Model = std::variant<Wa, DecisionTree, TreeEnsemble, LinearModel, RnnRelu, SigmoidNet>;
using Distribution = std::variant<Hmm, HmmVec, Dataset, IndDist, MarkovDist, NaiveBayes>;

// The "type" field, or a guess from the keys present.
inline std::string document_type(const json& j) {
  if (j.is_array()) return "emp";
  if (!j.is_object()) throw ParseError("expected a JSON object");
  if (j.contains("type")) return to_string(j["type"], "type");
  if (j.contains("alphabets")) return "wa";
  if (j.contains("emissions")) return "hmmvec";
  if (j.contains("emission")) return "hmm";
  if (j.contains("rows")) return "emp";
  if (j.contains("marginals")) return "ind";
  if (j.contains("conditionals")) return "nb";
  if (j.contains("transition")) return "markov";
  if (j.contains("trees")) return "ensemble";
  if (j.contains("node") || j.contains("root")) return "dt";
  if (j.contains("intercept")) return "linear";
  if (j.contains("h_init")) return "rnn";
  if (j.contains("gain")) return "sigmoid";
  throw ParseError("cannot tell what kind of document this is; add a \"type\" field");
}

inline bool is_model_type(const std::string& t) {
  return t == "wa" || t == "dt" || t == "ensemble" || t == "linear" || t == "rnn" || t == "sigmoid";
}

inline Model read_model(const json& j) {
  const std::string t = document_type(j);
  if (t == "wa") return read_wa(j);
  if (t == "dt") return read_dt(j);
  if (t == "ensemble") return read_ensemble(j);
  if (t == "linear") return read_linear(j);
  if (t == "rnn") return read_rnn(j);
  if (t == "sigmoid") return read_sigmoid(j);
  throw ParseError("document of type \"" + t + "\" is not a model");
}

inline Distribution read_distribution(const json& j) {
  const std::string t = document_type(j);
  if (t == "hmm") return read_hmm(j);
  if (t == "hmmvec") return read_hmmvec(j);
  if (t == "emp") return read_emp(j);
  if (t == "ind") return read_ind(j);
  if (t == "markov") return read_markov(j);
  if (t == "nb") return read_nb(j);
  throw ParseError("document of type \"" + t + "\" is not a distribution");
}

inline json write_model(const Model& m) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Wa>) return write_wa(x);
        if constexpr (std::is_same_v<T, DecisionTree>) return write_dt(x);
        if constexpr (std::is_same_v<T, TreeEnsemble>) return write_ensemble(x);
        if constexpr (std::is_same_v<T, LinearModel>) return write_linear(x);
        if constexpr (std::is_same_v<T, RnnRelu>) return write_rnn(x);
        if constexpr (std::is_same_v<T, SigmoidNet>) return write_sigmoid(x);
      },
      m);
}

// ---- gadget sources and bundles ----

inline Wmg read_wmg(const json& j) {
  const json& w = member(j, "weights", "wmg");
  if (!w.is_array()) throw ParseError("wmg.weights: expected an array of integers");
  std::vector<long> weights;
  for (const auto& x : w) {
    if (!x.is_number_integer()) throw ParseError("wmg.weights: expected integers");
    weights.push_back(x.get<long>());
  }
  const json& q = member(j, "quota", "wmg");
  if (!q.is_number_integer()) throw ParseError("wmg.quota: expected an integer");
  return Wmg(std::move(weights), q.get<long>());
}

inline json write_wmg(const Wmg& g) { return json{{"weights", g.weights}, {"quota", g.quota}}; }

inline CnfFormula read_cnf(const json& j) {
  const std::size_t n = to_size(member(j, "variables", "cnf"), "cnf.variables");
  const json& cs = member(j, "clauses", "cnf");
  if (!cs.is_array()) throw ParseError("cnf.clauses: expected an array of literal arrays");
  std::vector<std::vector<int>> clauses;
  for (const auto& c : cs) {
    if (!c.is_array()) throw ParseError("cnf.clauses: expected an array of literal arrays");
    std::vector<int> lits;
    for (const auto& l : c) {
      if (!l.is_number_integer()) throw ParseError("cnf.clauses: literals are non-zero integers");
      lits.push_back(l.get<int>());
    }
    clauses.push_back(std::move(lits));
  }
  return CnfFormula(n, std::move(clauses));
}

inline json write_cnf(const CnfFormula& phi) { return json{{"variables", phi.variables}, {"clauses", phi.clauses}}; }

inline CspInstance read_csp(const json& j) {
  const json& ss = member(j, "strings", "csp");
  if (!ss.is_array()) throw ParseError("csp.strings: expected an array of strings");
  std::vector<Word> strings;
  for (const auto& x : ss) strings.push_back(to_string(x, "csp.strings"));
  return CspInstance(to_alphabet(member(j, "alphabet", "csp"), "csp.alphabet"), std::move(strings),
                     to_size(member(j, "radius", "csp"), "csp.radius"));
}

inline json write_csp(const CspInstance& c) {
  return json{{"alphabet", c.alphabet.symbols()}, {"strings", c.strings}, {"radius", c.radius}};
}

struct GadgetBundle {
  std::string kind;  // wmg-sigmoid | wmg-rnn | sat | csp
  GadgetInstance instance;
  json source;
};

inline GadgetModel read_gadget_model(const json& mj) {
  const std::string t = document_type(mj);
  if (t == "sigmoid") return read_sigmoid(mj);
  if (t == "rnn") return read_rnn(mj);
  if (t == "ensemble") return read_ensemble(mj);
  throw ParseError("gadget.model: unsupported model type \"" + t + "\"");
}

inline GadgetBundle read_gadget(const json& j) {
  GadgetInstance inst{read_gadget_model(member(j, "model", "gadget")), 0, "", "", std::nullopt};
  GadgetBundle b{to_string(member(j, "kind", "gadget"), "gadget.kind"), std::move(inst), member(j, "source", "gadget")};
  if (j.contains("feature")) b.instance.feature = to_size(j["feature"], "gadget.feature");
  if (j.contains("input")) b.instance.input = to_string(j["input"], "gadget.input");
  if (j.contains("reference")) b.instance.reference = to_string(j["reference"], "gadget.reference");
  if (b.kind == "wmg-sigmoid") b.instance.threshold = sigmoid_threshold(read_wmg(b.source).players());
  return b;
}

inline json write_gadget(const std::string& kind, const GadgetInstance& g, const json& source) {
  json model = std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SigmoidNet>) return write_sigmoid(x);
        if constexpr (std::is_same_v<T, RnnRelu>) return write_rnn(x);
        if constexpr (std::is_same_v<T, TreeEnsemble>) return write_ensemble(x);
      },
      g.model);
  json out{{"type", "gadget"}, {"kind", kind}, {"source", source}, {"model", model}};
  if (g.feature != 0) {
    out["feature"] = g.feature;
    out["input"] = g.input;
    out["reference"] = g.reference;
  }
  if (g.threshold) {
    const auto& t = *g.threshold;
    out["threshold"] = json{{"c_n", t.c_n.get_str()},
                            {"epsilon", rat(t.epsilon)},
                            {"epsilon_decimal", t.epsilon.get_d()},
                            {"delta", rat(t.delta)},
                            {"gain", t.gain},
                            {"gain_epsilon_form", t.gain_epsilon},
                            {"gain_log_n_form", t.gain_log_n},
                            {"note",
                             "gain = 2 log((1-delta)/delta) with delta = epsilon/4; the form 2 log((1-epsilon)/epsilon) "
                             "misclassifies N=2, n=(1,1), q=2 (phi_b = 5/18 < 1/3) and 2 log N is smaller still"}};
  }
  return out;
}

}  // namespace shapwa::json_io

#endif  // SHAPWA_JSON_IO_HPP_
