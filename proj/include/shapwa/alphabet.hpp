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

#ifndef SHAPWA_ALPHABET_HPP_
#define SHAPWA_ALPHABET_HPP_

#include <array>
#include <cstddef>
#include <string>

#include "shapwa/error.hpp"

namespace shapwa {

// Symbols are single characters; a word is a std::string over them.
using Word = std::string;

inline constexpr char kPlaceholder = '#';

class Alphabet {
 public:
  Alphabet() { index_.fill(-1); }

  explicit Alphabet(std::string symbols, bool allow_placeholder = false)
      : symbols_(std::move(symbols)) {
    index_.fill(-1);
    if (symbols_.empty()) throw DomainError("alphabet must be non-empty");
    for (std::size_t k = 0; k < symbols_.size(); ++k) {
      auto c = static_cast<unsigned char>(symbols_[k]);
      if (symbols_[k] == kPlaceholder && !allow_placeholder) {
        throw DomainError("'#' is reserved for pattern alphabets");
      }
      if (index_[c] != -1) {
        throw DomainError(std::string("duplicate symbol '") + symbols_[k] +
                          "' in alphabet");
      }
      index_[c] = static_cast<int>(k);
    }
  }

  // Σ_# = Σ ∪ {#}, with # appended last.
  static Alphabet with_placeholder(const Alphabet& sigma) {
    if (sigma.has_placeholder()) return sigma;
    return Alphabet(sigma.symbols_ + kPlaceholder, true);
  }

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbols() const { return symbols_; }
  char symbol(std::size_t k) const { return symbols_[k]; }
  int index_of(char c) const { return index_[static_cast<unsigned char>(c)]; }
  bool contains(char c) const { return index_of(c) >= 0; }
  bool has_placeholder() const { return contains(kPlaceholder); }

  // Index of c, or a DomainError naming the offending symbol.
  std::size_t require(char c) const {
    int k = index_of(c);
    if (k < 0) {
      throw DomainError(std::string("symbol '") + c + "' not in alphabet {" +
                        symbols_ + "}");
    }
    return static_cast<std::size_t>(k);
  }

  void require_word(const Word& w) const {
    for (char c : w) require(c);
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.symbols_ == b.symbols_;
  }
  friend bool operator!=(const Alphabet& a, const Alphabet& b) {
    return !(a == b);
  }

 private:
  std::string symbols_;
  std::array<int, 256> index_;
};

}  // namespace shapwa

#endif  // SHAPWA_ALPHABET_HPP_
