#pragma once

#include <cstdint>
#include <random>

#include "mgw/generating_set.hpp"

namespace mgw {

/// Deterministic source of random group data; one engine per seed.
class Sampler {
 public:
  explicit Sampler(int d, std::uint64_t seed) : d_(d), rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Letter letter() { return static_cast<Letter>(uniform(0, d_ - 1)); }
  Letter nonzero_letter() { return static_cast<Letter>(uniform(1, d_ - 1)); }
  Word word(int len);

  Permutation even_permutation();
  /// Even permutation fixing 0.
  Permutation even_permutation_fixing_zero();
  Generator a_element();
  Generator b_element();
  /// Uniform over all of A u B (half A, half B), never trivial.
  Generator generator();
  /// Product of `len` letters alternately from A and B, starting at random.
  GroupWord group_word(int len);
  /// Product of `len` letters drawn from S0 and their inverses.
  GroupWord s0_word(const GeneratingSet& s0, int len);

  std::mt19937_64& engine() { return rng_; }

 private:
  int d_;
  std::mt19937_64 rng_;
};

}  // namespace mgw
