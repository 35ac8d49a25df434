#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "mgw/group_word.hpp"

namespace mgw {

/// Coordinate index on a boundary sequence: 1-based finite positions, then
/// the two positions at infinity carried by zero-tailed points.
struct Position {
  enum class Kind { kFinite, kOmega, kOmegaPlusOne };
  Kind kind = Kind::kFinite;
  int n = 1;

  static Position finite(int n) { return {Kind::kFinite, n}; }
  static Position omega() { return {Kind::kOmega, 0}; }
  static Position omega_plus_one() { return {Kind::kOmegaPlusOne, 0}; }
  bool is_finite() const { return kind == Kind::kFinite; }
  /// The position immediately after this one; Finite(n) -> Finite(n+1), Omega -> OmegaPlusOne.
  Position next() const;
  std::string to_string() const;

  friend bool operator==(const Position&, const Position&) = default;
  friend std::strong_ordering operator<=>(const Position& x, const Position& y) {
    if (auto c = x.kind <=> y.kind; c != 0) return c;
    return x.n <=> y.n;
  }
};

/// Point of the modified boundary: prefix followed by either a periodic tail
/// (period containing a nonzero letter) or 0^infinity carrying a pair (a,b), a != 0.
/// Always canonical: primitive period, then shortest prefix.
class TildePoint {
 public:
  enum class TailKind { kPeriodic, kZeroPair };

  static TildePoint periodic(Word prefix, Word period);
  static TildePoint zero_pair(Word prefix, Letter a, Letter b);
  /// Parses `prefix|(period)` or `prefix|0*[ab]`; the result is canonical.
  static TildePoint parse(const std::string& text);

  TailKind tail_kind() const { return kind_; }
  bool is_zero_pair() const { return kind_ == TailKind::kZeroPair; }
  const Word& prefix() const { return prefix_; }
  const Word& period() const { return period_; }
  Letter pair_a() const { return a_; }
  Letter pair_b() const { return b_; }

  /// Letter at a position; Omega and OmegaPlusOne are valid only for ZeroPair tails.
  Letter at(Position p) const;
  Letter at(int n) const { return at(Position::finite(n)); }
  /// First n letters.
  Word head(int n) const;
  /// Position of the first nonzero letter (Omega for a ZeroPair with all-zero prefix).
  Position first_nonzero() const;

  /// Copy with letter at `pos` replaced; the result is re-canonicalized.
  TildePoint with_letter(Position pos, Letter x) const;

  std::string to_string() const;

  friend bool operator==(const TildePoint&, const TildePoint&) = default;
  friend auto operator<=>(const TildePoint&, const TildePoint&) = default;

 private:
  void canonicalize();
  /// Moves tail letters into the prefix until |prefix| >= len.
  void unroll(std::size_t len);

  TailKind kind_ = TailKind::kPeriodic;
  Word prefix_;
  Word period_;
  Letter a_ = 0;
  Letter b_ = 0;
};

TildePoint act(const GroupWord& g, const TildePoint& p);
TildePoint act(const Generator& g, const TildePoint& p);

/// Eventual section of g along prefix.0^infinity; lies in B u {e}.
Generator section_at_zero_ray(const GroupWord& g, const Word& prefix, int depth_bound = kDefaultDescentBound);

/// Point of the Gray code line: a {0,*} sequence. `true` stands for *.
/// Zero-tailed words carry * at Omega and a bit at OmegaPlusOne.
class GrayWord {
 public:
  enum class TailKind { kPeriodic, kZeroTail };
  using Bits = std::vector<bool>;

  static GrayWord periodic(Bits prefix, Bits period);
  static GrayWord zero_tail(Bits prefix, bool omega_plus_one);
  /// Text form mirrors TildePoint: `0*0|(*0)` or `00|0*[**]`.
  static GrayWord parse(const std::string& text);

  TailKind tail_kind() const { return kind_; }
  const Bits& prefix() const { return prefix_; }
  const Bits& period() const { return period_; }
  bool omega_plus_one() const { return w1_; }

  bool at(Position p) const;
  Position first_star() const;
  GrayWord flipped(Position p) const;

  std::string to_string() const;

  friend bool operator==(const GrayWord&, const GrayWord&) = default;
  friend auto operator<=>(const GrayWord&, const GrayWord&) = default;

 private:
  void canonicalize();
  void unroll(std::size_t len);

  TailKind kind_ = TailKind::kPeriodic;
  Bits prefix_;
  Bits period_;
  bool w1_ = false;
};

enum class EdgeType { kA, kB };

struct VisiblePositions {
  Position a_visible;
  Position b_first;
  Position b_second;
};

GrayWord gray_projection(const TildePoint& p);
VisiblePositions visible_positions(const GrayWord& g);
/// Type-A neighbour flips bit 1; type-B neighbour flips the bit after the first *.
GrayWord gray_neighbor(const GrayWord& g, EdgeType t);
std::pair<GrayWord, GrayWord> gray_neighbors(const GrayWord& g);

/// Consecutive line points at indices -left..right around a centre at index 0.
/// The A-neighbour of the centre sits at -1 and the B-neighbour at +1, so the
/// edge between indices i and i+1 has type B exactly when i is even.
struct GraySegment {
  std::vector<GrayWord> words;  // words[k] has index k - left
  int left = 0;
  int right = 0;

  const GrayWord& at(int index) const { return words[static_cast<std::size_t>(index + left)]; }
  static EdgeType edge_type(int i) { return i % 2 == 0 ? EdgeType::kB : EdgeType::kA; }
  /// Index of `g` in the segment, if present.
  std::optional<int> index_of(const GrayWord& g) const;
};

GraySegment gray_segment(const GrayWord& center, int n);
GraySegment gray_segment(const GrayWord& center, int left, int right);

}  // namespace mgw
