#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace mgw {

using Letter = std::uint8_t;
/// A finite word over {0..d-1}; vertex of the rooted tree.
using Word = std::vector<Letter>;

std::string word_to_string(std::span<const Letter> w);
/// Parses "2 4 0" or "240" (digits only, d <= 10).
Word word_from_string(const std::string& s);

/// Permutation of {0..d-1}, stored as its image array.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<Letter> images);

  static Permutation identity(int d);
  /// Cycle notation: (0 1 2) maps 0->1->2->0.
  static Permutation cycle(int d, std::initializer_list<int> points);
  static Permutation from_cycles(int d, const std::vector<std::vector<int>>& cycles);

  int degree() const { return static_cast<int>(images_.size()); }
  Letter operator()(Letter x) const { return images_[x]; }
  const std::vector<Letter>& images() const { return images_; }

  bool is_identity() const;
  bool is_even() const;
  Permutation inverse() const;

  /// (*this)(other(x)).
  Permutation operator*(const Permutation& other) const;

  std::string to_cycle_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Letter> images_;
};

/// All even permutations of {0..d-1}, in lexicographic order of image arrays.
std::vector<Permutation> alternating_group(int d);

}  // namespace mgw

template <>
struct std::hash<mgw::Permutation> {
  std::size_t operator()(const mgw::Permutation& p) const noexcept;
};
