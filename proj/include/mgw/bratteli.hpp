#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mgw/boundary.hpp"

namespace mgw {

/// Vertex of the stationary diagram. For a path at level n >= 1 ending at
/// (a,b,star): letter n+1 is a != 0 and letter n+2 is b. For (a,b,zero):
/// letter n+1 is 0 and the first nonzero letter after n is a, followed by b.
struct BVertex {
  Letter a = 0;
  Letter b = 0;
  bool star = false;
  bool top = false;

  static BVertex top_vertex() { return {0, 0, false, true}; }
  std::string to_string() const;
  static BVertex parse(const std::string& text);

  friend bool operator==(const BVertex&, const BVertex&) = default;
  friend auto operator<=>(const BVertex&, const BVertex&) = default;
};

struct BEdge {
  Letter label;
  BVertex target;
};

class BratteliDiagram {
 public:
  explicit BratteliDiagram(int d = 5);

  int degree() const { return d_; }
  /// The 2(d-1)d vertices of every level n >= 1, in a fixed order.
  const std::vector<BVertex>& level_vertices() const { return level_; }
  /// Outgoing edges in a fixed order; children of cylinders follow this order.
  const std::vector<BEdge>& edges(const BVertex& v) const;
  std::size_t vertex_index(const BVertex& v) const;
  /// Predecessor of `v` along the unique edge with the given label (level >= 2).
  static BVertex predecessor(const BVertex& v, Letter label);
  /// Position of the edge (label, target) in edges(from).
  std::size_t edge_index(const BVertex& from, Letter label, const BVertex& target) const;

 private:
  int d_;
  std::vector<BVertex> level_;
  std::vector<BEdge> top_edges_;
  std::vector<std::vector<BEdge>> edges_;
};

/// Finite path from the top vertex: label word and end vertex. Every pair
/// (labels, end) with end at level |labels| is a valid path.
struct PathPrefix {
  Word labels;
  BVertex end = BVertex::top_vertex();

  int depth() const { return static_cast<int>(labels.size()); }
  /// Vertex at level k <= depth along this path.
  BVertex vertex_at(int k) const;
  bool is_prefix_of(const PathPrefix& other) const;
  std::string to_string() const;
  static PathPrefix parse(const std::string& text);

  friend bool operator==(const PathPrefix&, const PathPrefix&) = default;
  friend auto operator<=>(const PathPrefix&, const PathPrefix&) = default;
};

/// Vertex reached after reading the first n letters of p (top for n = 0).
BVertex vertex_after(const TildePoint& p, int n);
/// Level-independent description of the data carried by a tail sequence t.
BVertex continuation_vertex(const TildePoint& t);

PathPrefix encode(const TildePoint& p, int depth);
/// The sequence of letters of p after position n.
TildePoint tail_after(const TildePoint& p, int n);
/// Point with the labels of eta followed by `tail`; throws InputError when the
/// tail's continuation data disagree with the end vertex.
TildePoint decode(const PathPrefix& eta, const TildePoint& tail);
/// The infinite path that stays at eta's (ab,0) end vertex through 0-labelled edges.
TildePoint decode_zero_ray(const PathPrefix& eta);

/// Membership in the cylinder of eta, read directly off the vertex semantics.
bool cylinder_member(const PathPrefix& eta, const TildePoint& p);

/// Clopen subset of the path space, as an immutable refinement tree whose
/// Split nodes list children in the order of BratteliDiagram::edges. Kept in
/// normal form, so equality is structural.
class ClopenSet {
 public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  ClopenSet();  // empty
  static ClopenSet empty(int d = 5);
  static ClopenSet full(int d = 5);
  static ClopenSet cylinder(const PathPrefix& eta, int d = 5);
  static ClopenSet from_cylinders(const std::vector<PathPrefix>& cyls, int d = 5);
  /// Text form: comma-separated `labels@vertex` items, e.g. `4@21*,03@400`;
  /// a vertex is written as the two letters and then `*` or `0`, the top as `T`.
  static ClopenSet parse(const std::string& text, int d = 5);

  int degree() const { return d_; }
  bool is_empty() const;
  bool is_full() const;
  ClopenSet operator|(const ClopenSet& o) const;
  ClopenSet operator&(const ClopenSet& o) const;
  ClopenSet operator-(const ClopenSet& o) const { return *this & o.complement(); }
  ClopenSet complement() const;
  bool contains(const TildePoint& p) const;
  bool subset_of(const ClopenSet& o) const { return (*this - o).is_empty(); }
  bool disjoint(const ClopenSet& o) const { return (*this & o).is_empty(); }
  /// Maximal cylinders, in tree order (the antichain normal form).
  std::vector<PathPrefix> cylinders() const;
  std::size_t cylinder_count() const;
  int max_depth() const;
  std::string to_string() const;

  friend bool operator==(const ClopenSet& x, const ClopenSet& y);

  const NodePtr& root() const { return root_; }
  static ClopenSet from_node(int d, NodePtr root) { return ClopenSet(d, std::move(root)); }

 private:
  ClopenSet(int d, NodePtr root) : d_(d), root_(std::move(root)) {}
  int d_ = 5;
  NodePtr root_;
};

const BratteliDiagram& diagram(int d);

/// g(C_eta) as a clopen set.
ClopenSet image_of_cylinder(const GroupWord& g, const PathPrefix& eta);
ClopenSet image(const GroupWord& g, const ClopenSet& u);
/// Whether h fixes pointwise every tail whose continuation data is v.
bool fixes_continuations(const GroupWord& h, const BVertex& v);
bool fixes_cylinder_pointwise(const GroupWord& g, const PathPrefix& eta);
/// Maximal cylinders of u on which g is the identity, as a clopen set.
ClopenSet fixed_part(const GroupWord& g, const ClopenSet& u);
/// Points of u moved by g.
ClopenSet moved_part(const GroupWord& g, const ClopenSet& u);

struct Tower {
  BVertex v;
  int level = 0;
  std::vector<PathPrefix> paths;
};

Tower tower(const BVertex& v, int n, int d = 5);
/// Replaces the prefix gamma of p by gamma2; both must end at one vertex.
TildePoint tau_apply(const PathPrefix& gamma, const PathPrefix& gamma2, const TildePoint& p);
/// Path count into each level-n vertex (the degrees of the symmetric factors of H_n).
std::vector<std::size_t> h_n_structure(int n, int d = 5);
/// Whether every level-n vertex reaches every level-(n+2) vertex.
bool is_simple_at(int n, int d = 5);
/// Smallest k such that every level vertex reaches every vertex k levels below; 0 if none up to max_gap.
int simplicity_gap(int d = 5, int max_gap = 8);

struct BoundedTypeReport {
  std::string generator;
  std::vector<int> max_non_tau_per_level;  // index = level
  int bound = 0;                            // max over levels >= 1
  bool constant_from_level_3 = true;
  std::vector<TildePoint> exceptional_points;
  /// Non-tau chains that survived the descent without settling on a zero ray.
  std::size_t unresolved_chains = 0;
};

BoundedTypeReport bounded_type_audit(const Generator& gen, int max_level, int d = 5);

struct RegularityWitness {
  int depth = 0;
  PathPrefix cylinder;
  bool pointwise = false;
  bool image_equal = false;
};

/// Throws InputError unless g fixes p.
RegularityWitness regularity_check(const GroupWord& g, const TildePoint& p);

}  // namespace mgw
