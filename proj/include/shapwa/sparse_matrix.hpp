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

#ifndef SHAPWA_SPARSE_MATRIX_HPP_
#define SHAPWA_SPARSE_MATRIX_HPP_

#include <algorithm>
#include <cstddef>
#include <vector>

#include "shapwa/error.hpp"
#include "shapwa/scalar.hpp"

namespace shapwa {

// Row-major sparse matrix. Each row keeps its entries sorted by column
// with no explicit zeros.
template <class T>
class SparseMatrix {
 public:
  struct Entry {
    std::size_t col;
    T value;
  };
  using Row = std::vector<Entry>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i].push_back({i, ScalarTraits<T>::one()});
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const Row& row(std::size_t r) const { return rows_[r]; }

  std::size_t nnz() const {
    std::size_t total = 0;
    for (const auto& r : rows_) total += r.size();
    return total;
  }

  T at(std::size_t r, std::size_t c) const {
    const Row& row = rows_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const Entry& e, std::size_t col) { return e.col < col; });
    if (it != row.end() && it->col == c) return it->value;
    return ScalarTraits<T>::zero();
  }

  // m[r][c] += v.
  void add(std::size_t r, std::size_t c, const T& v) {
    if (r >= rows_.size() || c >= cols_) throw DomainError("matrix index out of range");
    if (ScalarTraits<T>::is_zero(v)) return;
    Row& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const Entry& e, std::size_t col) { return e.col < col; });
    if (it != row.end() && it->col == c) {
      it->value += v;
      if (ScalarTraits<T>::is_zero(it->value)) row.erase(it);
    } else {
      row.insert(it, Entry{c, v});
    }
  }

  void set(std::size_t r, std::size_t c, const T& v) {
    if (r >= rows_.size() || c >= cols_) throw DomainError("matrix index out of range");
    Row& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const Entry& e, std::size_t col) { return e.col < col; });
    bool present = it != row.end() && it->col == c;
    if (ScalarTraits<T>::is_zero(v)) {
      if (present) row.erase(it);
    } else if (present) {
      it->value = v;
    } else {
      row.insert(it, Entry{c, v});
    }
  }

  // Replaces row r by entries given in any order; duplicates are summed.
  void assign_row(std::size_t r, Row entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.col < b.col; });
    Row merged;
    merged.reserve(entries.size());
    for (auto& e : entries) {
      if (!merged.empty() && merged.back().col == e.col) {
        merged.back().value += e.value;
      } else {
        merged.push_back(std::move(e));
      }
    }
    Row out;
    out.reserve(merged.size());
    for (auto& e : merged) {
      if (!ScalarTraits<T>::is_zero(e.value)) out.push_back(std::move(e));
    }
    rows_[r] = std::move(out);
  }

  T row_sum(std::size_t r) const {
    T s = ScalarTraits<T>::zero();
    for (const auto& e : rows_[r]) s += e.value;
    return s;
  }

  SparseMatrix scaled(const T& c) const {
    SparseMatrix out(rows(), cols_);
    if (ScalarTraits<T>::is_zero(c)) return out;
    for (std::size_t r = 0; r < rows(); ++r) {
      out.rows_[r].reserve(rows_[r].size());
      for (const auto& e : rows_[r]) out.rows_[r].push_back({e.col, e.value * c});
    }
    return out;
  }

  // Kronecker product; row (i,k) maps to i*b.rows()+k.
  static SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix out(a.rows() * b.rows(), a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (a.rows_[i].empty()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        const Row& brow = b.rows_[k];
        if (brow.empty()) continue;
        Row& dst = out.rows_[i * b.rows() + k];
        dst.reserve(a.rows_[i].size() * brow.size());
        for (const auto& ea : a.rows_[i]) {
          for (const auto& eb : brow) {
            dst.push_back({ea.col * b.cols_ + eb.col, ea.value * eb.value});
          }
        }
      }
    }
    return out;
  }

  // Converts entry type, e.g. Rational -> double.
  template <class U>
  SparseMatrix<U> cast() const {
    SparseMatrix<U> out(rows(), cols_);
    for (std::size_t r = 0; r < rows(); ++r) {
      for (const auto& e : rows_[r]) out.add(r, e.col, ScalarTraits<U>::from_rational(e.value));
    }
    return out;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows() || a.cols_ != b.cols_) return false;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (a.rows_[r].size() != b.rows_[r].size()) return false;
      for (std::size_t k = 0; k < a.rows_[r].size(); ++k) {
        if (a.rows_[r][k].col != b.rows_[r][k].col) return false;
        if (a.rows_[r][k].value != b.rows_[r][k].value) return false;
      }
    }
    return true;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<Row> rows_;
};

}  // namespace shapwa

#endif  // SHAPWA_SPARSE_MATRIX_HPP_
