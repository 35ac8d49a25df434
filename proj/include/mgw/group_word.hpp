#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mgw/generator.hpp"

namespace mgw {

struct Portrait;
struct WreathDecomposition;

/// Element of M written as a product g_1 g_2 ... g_k of generators, acting
/// as g_1(g_2(...g_k(w))). Stored in reduced form: no identity letters and
/// no two adjacent letters of the same kind (A*A and B*B are multiplied out).
/// Two words are the same element iff `equals` holds; operator== is syntactic.
class GroupWord {
 public:
  explicit GroupWord(int d = 5) : d_(d) {}
  GroupWord(int d, std::vector<Generator> letters);
  static GroupWord of(int d, Generator g) { return GroupWord(d, {std::move(g)}); }

  int degree() const { return d_; }
  const std::vector<Generator>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_empty() const { return letters_.empty(); }
  /// Length <= 1: an element of the nucleus A u B u {e}.
  bool is_nucleus() const { return letters_.size() <= 1; }

  GroupWord operator*(const GroupWord& other) const;
  GroupWord inverse() const;
  GroupWord pow(int k) const;

  Word act(Word w) const;
  Letter root(Letter x) const;
  Permutation root_permutation() const;
  GroupWord section(std::span<const Letter> v) const;
  /// Image of v together with the section at v, in one pass.
  std::pair<Word, GroupWord> act_with_section(std::span<const Letter> v) const;

  std::string to_string() const;

  friend bool operator==(const GroupWord&, const GroupWord&) = default;
  friend auto operator<=>(const GroupWord&, const GroupWord&) = default;

 private:
  void push_reduced(const Generator& g);

  int d_;
  std::vector<Generator> letters_;
};

struct WreathDecomposition {
  std::vector<GroupWord> sections;
  Permutation root;
};

/// g -> (g|_0, ..., g|_{d-1}) sigma.
WreathDecomposition wreath_decompose(const GroupWord& g);
/// Evaluates the recombined element (g_0, ..., g_{d-1}) sigma on a word.
Word apply_decomposition(const WreathDecomposition& dec, const Word& w);

/// Finite-depth portrait: root permutation plus child portraits.
struct Portrait {
  Permutation root;
  std::vector<Portrait> children;  // empty at depth 0, else d entries
  int depth = 0;
  friend bool operator==(const Portrait&, const Portrait&) = default;
};

Portrait portrait(const GroupWord& g, int depth);

/// Default safety bound on recursion depth for contraction-based descent.
inline constexpr int kDefaultDescentBound = 64;

/// Exact identity test by contraction descent. Throws DiagnosticError if the
/// descent exceeds `depth_bound` levels.
bool is_identity(const GroupWord& g, int depth_bound = kDefaultDescentBound);
bool equals(const GroupWord& g, const GroupWord& h, int depth_bound = kDefaultDescentBound);

/// Least k <= bound with g^k = e.
std::optional<int> order_of(const GroupWord& g, int bound);

/// Least n such that every section of g at level n lies in A u B u {e}.
int contraction_depth(const GroupWord& g, int depth_bound = kDefaultDescentBound);

}  // namespace mgw

template <>
struct std::hash<mgw::Generator> {
  std::size_t operator()(const mgw::Generator& g) const noexcept;
};
template <>
struct std::hash<mgw::GroupWord> {
  std::size_t operator()(const mgw::GroupWord& g) const noexcept;
};
