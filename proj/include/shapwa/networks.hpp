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

#ifndef SHAPWA_NETWORKS_HPP_
#define SHAPWA_NETWORKS_HPP_

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "shapwa/alphabet.hpp"
#include "shapwa/error.hpp"
#include "shapwa/scalar.hpp"
#include "shapwa/sparse_matrix.hpp"

namespace shapwa {

// h_{w s} = ReLU(W h_w + v_s), f(w) = 1 iff O^T h_w >= 0. Exact rational.
class RnnRelu {
 public:
  RnnRelu(Alphabet alphabet, std::vector<Rational> h_init, SparseMatrix<Rational> w,
          std::vector<std::vector<Rational>> embeddings, std::vector<Rational> output)
      : alphabet_(std::move(alphabet)),
        h_init_(std::move(h_init)),
        w_(std::move(w)),
        embeddings_(std::move(embeddings)),
        output_(std::move(output)) {
    const std::size_t d = h_init_.size();
    if (d == 0) throw DomainError("RNN hidden dimension must be positive");
    if (w_.rows() != d || w_.cols() != d) throw DomainError("RNN recurrence matrix has wrong shape");
    if (embeddings_.size() != alphabet_.size()) throw DomainError("RNN needs one embedding per symbol");
    for (const auto& v : embeddings_) {
      if (v.size() != d) throw DomainError("RNN embedding has wrong length");
    }
    if (output_.size() != d) throw DomainError("RNN output vector has wrong length");
  }

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t dim() const { return h_init_.size(); }
  const std::vector<Rational>& h_init() const { return h_init_; }
  const SparseMatrix<Rational>& recurrence() const { return w_; }
  const std::vector<std::vector<Rational>>& embeddings() const { return embeddings_; }
  const std::vector<Rational>& output() const { return output_; }

  std::vector<Rational> hidden(const Word& w) const {
    alphabet_.require_word(w);
    std::vector<Rational> h = h_init_;
    std::vector<Rational> next(h.size());
    for (char c : w) {
      const auto& v = embeddings_[alphabet_.require(c)];
      for (std::size_t r = 0; r < h.size(); ++r) {
        next[r] = v[r];
        for (const auto& e : w_.row(r)) {
          if (sgn(h[e.col]) != 0) next[r] += e.value * h[e.col];
        }
        if (sgn(next[r]) < 0) next[r] = 0;
      }
      h.swap(next);
    }
    return h;
  }

  Rational score(const Word& w) const {
    auto h = hidden(w);
    Rational s = 0;
    for (std::size_t r = 0; r < h.size(); ++r) {
      if (sgn(output_[r]) != 0) s += output_[r] * h[r];
    }
    return s;
  }

  Rational evaluate(const Word& w) const { return sgn(score(w)) >= 0 ? Rational(1) : Rational(0); }

 private:
  Alphabet alphabet_;
  std::vector<Rational> h_init_;
  SparseMatrix<Rational> w_;
  std::vector<std::vector<Rational>> embeddings_;
  std::vector<Rational> output_;
};

// f(x) = sigmoid(gain * (sum_j w_j x_j + bias)) on binary inputs. The
// affine part is exact; the squashing is binary-64.
class SigmoidNet {
 public:
  SigmoidNet(std::vector<Rational> weights, Rational bias, double gain)
      : weights_(std::move(weights)), bias_(std::move(bias)), gain_(gain) {
    if (weights_.empty()) throw DomainError("sigmoid network needs at least one input");
  }

  const Alphabet& alphabet() const {
    static const Alphabet bits("01");
    return bits;
  }
  std::size_t num_features() const { return weights_.size(); }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& bias() const { return bias_; }
  double gain() const { return gain_; }

  double evaluate(const Word& x) const {
    if (x.size() != weights_.size()) throw DomainError("sigmoid network input has wrong length");
    Rational z = bias_;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] == '1') {
        z += weights_[j];
      } else if (x[j] != '0') {
        throw DomainError("sigmoid network inputs must be binary");
      }
    }
    return 1.0 / (1.0 + std::exp(-gain_ * z.get_d()));
  }

 private:
  std::vector<Rational> weights_;
  Rational bias_;
  double gain_;
};

}  // namespace shapwa

#endif  // SHAPWA_NETWORKS_HPP_
