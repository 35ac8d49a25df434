#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mgw/bratteli.hpp"
#include "mgw/generating_set.hpp"
#include "mgw/schreier.hpp"

namespace mgw {

/// Points whose pointed piece over the window [-left, right] is isomorphic to
/// that of `base`. Cylinders are refined until every visible position of the
/// representative's segment is decided by the path data.
ClopenSet gray_cylinder_window(const TildePoint& base, int left, int right, int d = 5);
inline ClopenSet gray_cylinder(const TildePoint& base, int n, int d = 5) { return gray_cylinder_window(base, n, n, d); }

/// Element of the topological full group as a table of (domain, germ word).
/// Domains partition the space and so do their images.
struct PiecewiseElement {
  int d = 5;
  std::vector<std::pair<ClopenSet, GroupWord>> pieces;

  static PiecewiseElement identity(int d = 5);
  /// Throws InputError unless domains and images both partition the space.
  void validate() const;
  TildePoint evaluate(const TildePoint& p) const;
  std::string to_string() const;
};

/// Drops empty pieces, replaces germs acting trivially on their domain by e,
/// and merges pieces whose germs agree as group elements. Order follows the
/// first appearance of each germ.
PiecewiseElement normalize(const PiecewiseElement& x);
/// x after y.
PiecewiseElement compose(const PiecewiseElement& x, const PiecewiseElement& y);
PiecewiseElement invert(const PiecewiseElement& x);
/// Exact: on every overlap of domains the two germs agree pointwise.
bool equals(const PiecewiseElement& x, const PiecewiseElement& y);
bool is_identity(const PiecewiseElement& x);
ClopenSet support(const PiecewiseElement& x);
/// Smallest k >= 1 with x^k = 1, if it is at most `bound`.
std::optional<int> order_of(const PiecewiseElement& x, int bound = 360);
/// x y x^-1 y^-1.
PiecewiseElement commutator(const PiecewiseElement& x, const PiecewiseElement& y);

/// U, g^-1 U and h U are pairwise disjoint.
bool is_admissible(const ClopenSet& u, const GroupWord& g, const GroupWord& h);
/// Acts as g on g^-1 U, h on U, g^-1 h^-1 on h U. Throws InputError when the
/// triplet is not admissible, naming the overlapping sets.
PiecewiseElement eta(const ClopenSet& u, const GroupWord& g, const GroupWord& h);

/// Pairs (C, g): swaps C and gC for each pair. The 2|pairs| sets must be
/// pairwise disjoint.
PiecewiseElement build_swap(const std::vector<std::pair<ClopenSet, GroupWord>>& pairs);
/// C1 -> C2 = g12 C1 -> C3 = g23 C2 -> C1.
PiecewiseElement build_3cycle(const ClopenSet& c1, const GroupWord& g12, const GroupWord& g23);
/// Involutions k1 (C1 <-> C2) and k2 (C1 <-> C3) whose commutator is the 3-cycle.
std::pair<PiecewiseElement, PiecewiseElement> three_cycle_as_commutator(const ClopenSet& c1, const GroupWord& g12,
                                                                        const GroupWord& g23);

/// S0^2: products xy of members of S0, their inverses and e, one word per element.
std::vector<GroupWord> tilde_s(const GeneratingSet& s0);

/// A triplet (C_{I,gamma}, s, t) with I the central piece of radius n.
struct ConvenientTriplet {
  TildePoint gamma;
  int n = 0;
  GroupWord s;
  GroupWord t;
  ClopenSet u;
};

/// s^-1 gamma, gamma, t gamma project to three distinct consecutive line points.
bool consecutive_projections(const TildePoint& gamma, const GroupWord& s, const GroupWord& t);
/// All convenient triplets at gamma with s, t drawn from `candidates`.
std::vector<ConvenientTriplet> convenient_triplets(const TildePoint& gamma, int n,
                                                   const std::vector<GroupWord>& candidates);

struct CommutatorTrickReport {
  bool convenient = false;
  bool marginal_identity = false;  // C_I = C_{I_l} n C_{I_r} at gamma
  bool premise = false;            // six-set disjointness with the one allowed overlap
  bool identity_holds = false;
  GroupWord s_prime;
  GroupWord t_prime;
  std::string failure;

  bool ok() const { return convenient && marginal_identity && premise && identity_holds; }
};

/// Builds both sides of [eta(U_r,t,t'), eta(U_l,s',s)^-1] = eta(U,s,t) and
/// compares them. s' and t' are searched in `candidates`, preferring choices
/// that keep the smaller triplets convenient.
CommutatorTrickReport commutator_trick_check(const ConvenientTriplet& tr, const std::vector<GroupWord>& candidates);

/// Smaller triplets feeding the commutator trick: (U_l, s', s) and (U_r, t, t'),
/// both convenient at radius n - 1. Empty if no such s', t' exist in `candidates`.
std::optional<std::pair<ConvenientTriplet, ConvenientTriplet>> split_triplet(const ConvenientTriplet& tr,
                                                                             const std::vector<GroupWord>& candidates);

struct TMember {
  ConvenientTriplet triplet;
  PiecewiseElement element;
};

/// eta over every convenient triplet of radius n0 at the basepoints, deduplicated
/// by element equality. Closed under inverse because S0^2 is symmetric.
std::vector<TMember> generating_set_T(const std::vector<TildePoint>& basepoints, int n0,
                                      const std::vector<GroupWord>& candidates);

/// Index of the member equal to x, if any.
std::optional<std::size_t> find_in_T(const std::vector<TMember>& t, const PiecewiseElement& x);

/// Product tree over T-members reproducing a convenient eta by the inductive
/// commutator recipe. Leaves hold T indices; inner nodes are commutators
/// [right, left^-1].
struct TExpression {
  std::optional<std::size_t> leaf;
  std::vector<TExpression> children;  // {right, left} for a commutator node

  std::size_t leaf_count() const;
  PiecewiseElement evaluate(const std::vector<TMember>& t) const;
};
std::optional<TExpression> express_in_T(const ConvenientTriplet& tr, const std::vector<TMember>& t, int n0,
                                        const std::vector<GroupWord>& candidates);

}  // namespace mgw
