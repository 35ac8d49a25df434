#pragma once

#include <string>
#include <vector>

#include "mgw/group_word.hpp"

namespace mgw {

/// The finite subset S0 of A u B used for graph labels and searches.
/// Ids are "a0", "a1", ... for A-members and "b0", "b1", ... for B-members.
struct GeneratingSet {
  int d = 5;
  std::vector<Generator> gens;
  std::vector<std::string> ids;

  /// Two elements of A generating Alt(d) plus beta_0 (rho = (1 2 3)) and, for
  /// i = 1..d-1, beta_i with a single non-trivial sigma_i.
  static GeneratingSet standard(int d);
  /// Generators given in the text form of Generator::to_string.
  static GeneratingSet parse(int d, const std::vector<std::string>& specs);

  std::size_t size() const { return gens.size(); }
  std::vector<Generator> a_part() const;
  std::vector<Generator> b_part() const;
  /// S0 together with inverses, deduplicated.
  std::vector<Generator> symmetric() const;
};

/// Parses "e", "a(0 1 2)" or "b[(1 2 3);(0 4 2);();();()]"; inverse of Generator::to_string.
Generator parse_generator(const std::string& text, int d);
/// Parses a space-separated product of generator tokens, or "e".
GroupWord parse_group_word(const std::string& text, int d);

/// Closure of the root permutations of `gens` under composition.
std::vector<Permutation> root_closure(const std::vector<Generator>& gens, int d);

}  // namespace mgw
