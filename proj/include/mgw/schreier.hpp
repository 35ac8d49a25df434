#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mgw/boundary.hpp"
#include "mgw/generating_set.hpp"

namespace mgw {

/// Schreier graph of S0 on the words of length n; vertex id = base-d value of the word.
struct LevelGraph {
  int d = 5;
  int n = 0;
  std::vector<std::string> labels;              // generator ids
  std::vector<std::vector<std::uint32_t>> adj;  // adj[g][v] = s_g(v)

  std::size_t vertex_count() const { return adj.empty() ? 0 : adj[0].size(); }
  Word word_of(std::uint32_t v) const;
  std::uint32_t id_of(const Word& w) const;
  bool connected() const;
};

inline constexpr int kDefaultLevelCap = 6;

/// Throws ResourceError when n exceeds `max_level`.
LevelGraph level_graph(const GeneratingSet& s0, int n, int max_level = kDefaultLevelCap);

/// Edge label for one S-move. An A-move records (x -> x') at position 1; a
/// B-move records (x,y -> x',y') at the first nonzero position and the next.
/// Loops are included, so the labels around a vertex encode its visible letters.
using EdgeLabel = std::uint32_t;

struct Move {
  EdgeLabel label;
  EdgeType type;
  bool changes_projection;
  TildePoint target;
};

EdgeLabel a_label(Letter x, Letter x2);
EdgeLabel b_label(Letter x, Letter y, Letter x2, Letter y2);
std::string label_to_string(EdgeLabel l);

/// All moves of p under S = A u B, in increasing label order. Exact because A
/// is transitive on letters and B is transitive on pairs (x != 0, y).
std::vector<Move> s_moves(const TildePoint& p, int d);

/// Segment index reached from index i along an edge of type t.
inline int step_index(int i, EdgeType t) { return GraySegment::edge_type(i) == t ? i + 1 : i - 1; }

/// Connected component of the basepoint in the preimage of a segment.
struct GrayPiece {
  int d = 5;
  GraySegment segment;
  std::vector<TildePoint> vertices;  // vertices[0] is the basepoint
  std::vector<int> index;            // segment index of each vertex
  std::vector<std::vector<std::pair<EdgeLabel, int>>> edges;

  std::size_t size() const { return vertices.size(); }
  bool is_central() const { return segment.left == segment.right; }
  int radius() const { return segment.left; }
};

GrayPiece gray_piece_window(const TildePoint& p, int left, int right, int d = 5);
inline GrayPiece gray_piece(const TildePoint& p, int n, int d = 5) { return gray_piece_window(p, n, n, d); }

/// Component of `root` in the sub-piece over indices [lo, hi], rebased at `root`.
GrayPiece sub_piece(const GrayPiece& piece, int root, int lo, int hi);

/// Canonical byte sequence of the pointed labelled graph rooted at `root`:
/// BFS in label order emitting (label, discovery index) for every edge.
using PieceCode = std::vector<std::uint32_t>;
PieceCode canonical_code(const GrayPiece& piece, int root = 0);
bool iso(const GrayPiece& x, const GrayPiece& y);

struct Marginals {
  GrayPiece left;    // over [-n, n-2]
  GrayPiece right;   // over [-n+2, n]
  GrayPiece center;  // over [-n+2, n-2]
};

/// Throws InputError unless the piece is central with n >= 2.
Marginals marginals(const GrayPiece& piece);

struct BranchReport {
  int left_branches = 0;
  int right_branches = 0;
  bool branches_left() const { return left_branches > 1; }
  bool branches_right() const { return right_branches > 1; }
  bool bi_branching() const { return branches_left() && branches_right(); }
  std::vector<int> roots;       // segment indices
  std::vector<int> anti_roots;  // segment indices
  Position root_position;       // first * of a root
};

BranchReport branches(const GrayPiece& piece);
/// Depth of the quasi-level, or nullopt when the piece is not one.
std::optional<Position> is_quasi_level(const GrayPiece& piece);
std::optional<Position> is_quasi_level(const GraySegment& segment);

/// Visibility criterion for branching on one side, read off the segment alone.
bool branching_by_visibility(const GraySegment& segment, bool left_side);
/// Whether every root fiber of the piece induces a connected subgraph.
bool root_fibers_connected(const GrayPiece& piece);
/// Whether two distinct vertices have equal rooted codes inside the piece.
bool has_nontrivial_automorphism(const GrayPiece& piece);

/// S-ball of the given radius around p, with distances.
std::map<TildePoint, int> s_ball(const TildePoint& p, int radius, int d = 5);

/// Deterministic basepoint corpus: periodic points with prefix length <= 6 and
/// period length <= 3, interleaved with zero-pair points.
std::vector<TildePoint> sample_corpus(int d, std::uint64_t seed, int count);

struct N0Result {
  int n0 = 0;
  std::size_t basepoints = 0;
  std::size_t pairs = 0;
  std::vector<std::size_t> surviving_pairs;  // colliding pairs after each n = 0..n0
};

/// Least n <= bound with distinct central pieces of radius n for every basepoint
/// and every other vertex at S-distance < R. Throws DiagnosticError with the
/// colliding pair when the bound is exhausted.
N0Result find_n0(const std::vector<TildePoint>& corpus, int R, int bound, int d = 5);
/// Number of colliding (basepoint, vertex) pairs at radius n.
std::size_t n0_collisions(const std::vector<TildePoint>& corpus, int R, int n, int d = 5);

}  // namespace mgw

namespace mgw {

/// Compares the rooted labelled graphs induced by index windows of two pieces
/// (inclusive bounds in each piece's own indexing) without materializing codes.
/// Equivalent to comparing canonical codes of the windowed components.
bool rooted_equal(const GrayPiece& a, int root_a, int lo_a, int hi_a, const GrayPiece& b, int root_b, int lo_b,
                  int hi_b);

}  // namespace mgw
