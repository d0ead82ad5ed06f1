#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "pcaag/integer.hpp"

namespace pcaag {

/// One letter g_index^exponent of a word. Indices are 0-based in the API.
struct Letter {
  std::size_t index = 0;
  Integer exponent;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// An unreduced word in the generators. Zero-exponent letters are dropped on
/// construction; adjacent letters are not merged.
class GeneratorWord {
 public:
  GeneratorWord() = default;
  GeneratorWord(std::initializer_list<Letter> letters) {
    for (const auto& l : letters) push_back(l.index, l.exponent);
  }
  explicit GeneratorWord(std::vector<Letter> letters) {
    for (auto& l : letters) push_back(l.index, std::move(l.exponent));
  }

  void push_back(std::size_t index, Integer exponent) {
    if (!exponent.is_zero()) letters_.push_back({index, std::move(exponent)});
  }
  void append(const GeneratorWord& other) {
    letters_.insert(letters_.end(), other.letters_.begin(), other.letters_.end());
  }

  /// The formal inverse: letters reversed with negated exponents.
  GeneratorWord inverse() const {
    GeneratorWord w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
      w.letters_.push_back({it->index, -it->exponent});
    }
    return w;
  }

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  friend bool operator==(const GeneratorWord&, const GeneratorWord&) = default;

 private:
  std::vector<Letter> letters_;
};

}  // namespace pcaag
