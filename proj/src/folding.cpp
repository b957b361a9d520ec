#include "foldlang/folding.hpp"

#include <numeric>
#include <stdexcept>

#include "foldlang/error.hpp"

namespace foldlang {

namespace {

void require_same_length(std::size_t word, std::size_t directions) {
  if (word != directions) {
    throw LengthMismatch("fold undefined: word length " + std::to_string(word) +
                         " differs from direction length " + std::to_string(directions));
  }
}

}  // namespace

DirectionWord DirectionWord::parse(std::string_view text) {
  std::vector<Direction> dirs;
  dirs.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'u':
        dirs.push_back(Direction::Up);
        break;
      case 'd':
        dirs.push_back(Direction::Down);
        break;
      default:
        throw ParseError("direction must be 'u' or 'd'", i);
    }
  }
  return DirectionWord(std::move(dirs));
}

std::string DirectionWord::str() const {
  std::string out;
  out.reserve(directions_.size());
  for (Direction d : directions_) out.push_back(static_cast<char>(d));
  return out;
}

FoldPermutation::FoldPermutation(std::vector<std::size_t> target_of)
    : target_of_(std::move(target_of)) {
  std::vector<bool> hit(target_of_.size(), false);
  for (std::size_t t : target_of_) {
    if (t == 0 || t > target_of_.size() || hit[t - 1]) {
      throw std::invalid_argument("fold permutation is not a bijection on 1..n");
    }
    hit[t - 1] = true;
  }
}

std::string FoldPermutation::apply(std::string_view word) const {
  require_same_length(word.size(), target_of_.size());
  std::string out(word.size(), '\0');
  for (std::size_t i = 0; i < word.size(); ++i) out[target_of_[i] - 1] = word[i];
  return out;
}

FoldPermutation FoldPermutation::inverse() const {
  std::vector<std::size_t> inv(target_of_.size());
  for (std::size_t i = 0; i < target_of_.size(); ++i) inv[target_of_[i] - 1] = i + 1;
  return FoldPermutation(std::move(inv));
}

FoldPermutation FoldPermutation::after(const FoldPermutation& other) const {
  require_same_length(other.size(), size());
  std::vector<std::size_t> composed(size());
  for (std::size_t i = 0; i < size(); ++i) composed[i] = target_of_[other.target_of_[i] - 1];
  return FoldPermutation(std::move(composed));
}

bool FoldPermutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < target_of_.size(); ++i) {
    if (target_of_[i] != i + 1) return false;
  }
  return true;
}

// Left-to-right double-ended accumulation: the buffer has room for n symbols
// on either side of the midpoint.
std::string fold(std::string_view word, const DirectionWord& directions) {
  require_same_length(word.size(), directions.size());
  const std::size_t n = word.size();
  std::string buffer(2 * n + 1, '\0');
  std::size_t front = n;
  std::size_t back = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (directions[i] == Direction::Up) {
      buffer[--front] = word[i];
    } else {
      buffer[back++] = word[i];
    }
  }
  return buffer.substr(front, back - front);
}

FoldPermutation fold_permutation(const DirectionWord& directions) {
  // The final position of symbol i depends on how many Up moves follow it
  // in total and how many of each kind preceded it.
  const std::size_t n = directions.size();
  std::size_t ups = 0;
  for (Direction d : directions) ups += d == Direction::Up;
  std::vector<std::size_t> target(n);
  std::size_t ups_seen = 0;
  std::size_t downs_seen = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (directions[i] == Direction::Up) {
      ++ups_seen;
      target[i] = ups - ups_seen + 1;
    } else {
      ++downs_seen;
      target[i] = ups + downs_seen;
    }
  }
  return FoldPermutation(std::move(target));
}

std::string unfold(std::string_view folded, const DirectionWord& directions) {
  require_same_length(folded.size(), directions.size());
  const auto perm = fold_permutation(directions);
  std::string out(folded.size(), '\0');
  for (std::size_t i = 0; i < folded.size(); ++i) out[i] = folded[perm.target_of(i + 1) - 1];
  return out;
}

}  // namespace foldlang
