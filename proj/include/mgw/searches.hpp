#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mgw/bratteli.hpp"
#include "mgw/generating_set.hpp"

namespace mgw {

/// Loop-label class of a point: its first letter and its visible pair. Two
/// points share a class exactly when the same S-moves fix them.
struct LoopClass {
  Letter first = 0;
  Letter pair_a = 0;
  Letter pair_b = 0;

  friend bool operator==(const LoopClass&, const LoopClass&) = default;
  friend auto operator<=>(const LoopClass&, const LoopClass&) = default;
};

LoopClass loop_class(const TildePoint& p);

/// The clopen partition by loop class, one set per nonempty class, in class order.
std::vector<std::pair<LoopClass, ClopenSet>> subshift_partition(int d = 5);

struct Separation {
  GroupWord g;
  std::string method;  // "trivial", "prefix-steering" or "pair-bfs"
};

/// g with g p and g q in different loop classes. Steers the common prefix
/// towards 0..0x in the finite level graph first, then falls back to a BFS
/// over pairs. Empty when nothing of length <= max_length works.
std::optional<Separation> separation_search(const GeneratingSet& s0, const TildePoint& p, const TildePoint& q,
                                            int max_length = 12);

/// g = k^-1 s k with g p = p and g q != q, where k is a product of at most
/// `radius` S-moves (elements of A u B, one per step of the Schreier graph)
/// and s in A u B fixes k p and moves k q.
std::optional<GroupWord> stabilizer_separation(const GeneratingSet& s0, const TildePoint& p, const TildePoint& q,
                                               int radius = 6);

struct BrieusselResult {
  std::string target;  // generator id
  std::optional<GroupWord> word;
};

/// For each s in S0, an S0-word w of length <= 2 * half_length with
/// w = (s, e, ..., e) and trivial root permutation, found by meeting in the
/// middle on level-`key_depth` actions and confirmed by contraction equality.
/// A target is reported unreached only when no pair of half-words matches
/// even at level `key_depth`, which rules out every word of that length.
std::vector<BrieusselResult> brieussel_search(const GeneratingSet& s0, int half_length = 5, int key_depth = 4);

/// True when w has trivial root permutation, section s at 0 and trivial sections elsewhere.
bool is_brieussel_witness(const GroupWord& w, const Generator& s);

}  // namespace mgw
