#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mgw/permutation.hpp"

namespace mgw {

/// Element of A: an even permutation of the first letter, trivial sections.
struct AGenerator {
  Permutation perm;
  friend bool operator==(const AGenerator&, const AGenerator&) = default;
  friend auto operator<=>(const AGenerator&, const AGenerator&) = default;
};

/// Element of B with wreath recursion (b, sigma_1, ..., sigma_{d-1}) rho.
/// `sigma` has d entries; sigma[0] is unused and kept as the identity.
struct BGenerator {
  Permutation rho;
  std::vector<Permutation> sigma;
  friend bool operator==(const BGenerator&, const BGenerator&) = default;
  friend auto operator<=>(const BGenerator&, const BGenerator&) = default;
};

enum class GeneratorKind { kIdentity, kA, kB };

/// S = A u B u {e}. Values are canonical: trivial A or B elements are Identity.
class Generator {
 public:
  Generator() = default;

  static Generator identity() { return Generator(); }
  /// Throws InputError unless `perm` is even.
  static Generator a(Permutation perm);
  /// Throws InputError unless rho fixes 0 and every permutation is even.
  static Generator b(Permutation rho, std::vector<Permutation> sigma);
  /// B element with a single non-trivial sigma at index i (and trivial rho).
  static Generator b_single(int d, int i, Permutation sigma_i);
  /// B element with trivial sigmas.
  static Generator b_root(Permutation rho);

  GeneratorKind kind() const;
  bool is_identity() const { return kind() == GeneratorKind::kIdentity; }
  const AGenerator& as_a() const { return std::get<AGenerator>(value_); }
  const BGenerator& as_b() const { return std::get<BGenerator>(value_); }

  /// Action on the first level.
  Letter root(Letter x) const;
  /// In-place action on a finite word.
  void apply_in_place(Word& w) const;
  Word apply(Word w) const {
    apply_in_place(w);
    return w;
  }
  /// Section at a finite word; always in A u B u {e}.
  Generator section(std::span<const Letter> v) const;
  Generator inverse() const;

  /// Product of two generators of the same kind (A*A or B*B), acting as
  /// (*this)(other(.)). Returns nullopt for mixed kinds.
  std::optional<Generator> merge(const Generator& other) const;

  std::string to_string() const;

  friend bool operator==(const Generator&, const Generator&) = default;
  friend auto operator<=>(const Generator&, const Generator&) = default;

 private:
  using Value = std::variant<std::monostate, AGenerator, BGenerator>;
  explicit Generator(Value v) : value_(std::move(v)) {}
  Value value_;
};

/// Validates letters of `w` against degree d; throws InputError.
void check_word(const Word& w, int d);

}  // namespace mgw
