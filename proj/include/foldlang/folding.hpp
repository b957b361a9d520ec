#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "foldlang/automata.hpp"

namespace foldlang {

enum class Direction : char { Up = 'u', Down = 'd' };

// A word over {u, d}. Up prepends the next symbol, Down appends it.
class DirectionWord {
 public:
  DirectionWord() = default;
  explicit DirectionWord(std::vector<Direction> directions) : directions_(std::move(directions)) {}

  // Throws ParseError on any character other than 'u' or 'd'.
  static DirectionWord parse(std::string_view text);
  static DirectionWord repeat(Direction d, std::size_t n) {
    return DirectionWord(std::vector<Direction>(n, d));
  }

  std::size_t size() const noexcept { return directions_.size(); }
  bool empty() const noexcept { return directions_.empty(); }
  Direction operator[](std::size_t i) const { return directions_[i]; }
  auto begin() const noexcept { return directions_.begin(); }
  auto end() const noexcept { return directions_.end(); }

  std::string str() const;

  friend bool operator==(const DirectionWord&, const DirectionWord&) = default;

 private:
  std::vector<Direction> directions_;
};

// Positional bijection induced by a direction word. Positions are 1-based:
// symbol i of the input lands at output position target_of[i - 1].
class FoldPermutation {
 public:
  explicit FoldPermutation(std::vector<std::size_t> target_of);

  std::size_t size() const noexcept { return target_of_.size(); }
  std::size_t target_of(std::size_t position) const { return target_of_[position - 1]; }
  const std::vector<std::size_t>& targets() const noexcept { return target_of_; }

  // Places word[i] at output position target_of(i + 1).
  std::string apply(std::string_view word) const;
  FoldPermutation inverse() const;
  // (this after other): position i goes to this->target_of(other.target_of(i)).
  FoldPermutation after(const FoldPermutation& other) const;
  bool is_identity() const noexcept;

  friend bool operator==(const FoldPermutation&, const FoldPermutation&) = default;

 private:
  std::vector<std::size_t> target_of_;
};

// h(w, v). Throws LengthMismatch when |w| != |v|.
std::string fold(std::string_view word, const DirectionWord& directions);
FoldPermutation fold_permutation(const DirectionWord& directions);
// The unique w with fold(w, directions) == folded.
std::string unfold(std::string_view folded, const DirectionWord& directions);

}  // namespace foldlang
