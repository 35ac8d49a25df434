#include "mgw/schreier.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "mgw/errors.hpp"
#include "mgw/random.hpp"

namespace mgw {

Word LevelGraph::word_of(std::uint32_t v) const {
  Word w(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    w[static_cast<std::size_t>(i)] = static_cast<Letter>(v % static_cast<std::uint32_t>(d));
    v /= static_cast<std::uint32_t>(d);
  }
  return w;
}

std::uint32_t LevelGraph::id_of(const Word& w) const {
  std::uint32_t v = 0;
  for (Letter x : w) v = v * static_cast<std::uint32_t>(d) + x;
  return v;
}

bool LevelGraph::connected() const {
  const std::size_t nv = vertex_count();
  if (nv == 0) return true;
  std::vector<bool> seen(nv, false);
  std::vector<std::uint32_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (const auto& a : adj) {
      // Edges are undirected for connectivity: each generator is a permutation of finite order.
      const auto u = a[v];
      if (!seen[u]) {
        seen[u] = true;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == nv;
}

LevelGraph level_graph(const GeneratingSet& s0, int n, int max_level) {
  if (n < 1) throw InputError("level must be >= 1");
  if (n > max_level) throw ResourceError("level " + std::to_string(n) + " exceeds cap " + std::to_string(max_level));
  LevelGraph g;
  g.d = s0.d;
  g.n = n;
  g.labels = s0.ids;
  std::size_t nv = 1;
  for (int i = 0; i < n; ++i) nv *= static_cast<std::size_t>(s0.d);
  for (const auto& gen : s0.gens) {
    std::vector<std::uint32_t> a(nv);
    for (std::uint32_t v = 0; v < nv; ++v) a[v] = g.id_of(gen.apply(g.word_of(v)));
    g.adj.push_back(std::move(a));
  }
  return g;
}

EdgeLabel a_label(Letter x, Letter x2) { return 0x10000u | (static_cast<EdgeLabel>(x) << 4) | x2; }

EdgeLabel b_label(Letter x, Letter y, Letter x2, Letter y2) {
  return 0x20000u | (static_cast<EdgeLabel>(x) << 12) | (static_cast<EdgeLabel>(y) << 8) |
         (static_cast<EdgeLabel>(x2) << 4) | y2;
}

std::string label_to_string(EdgeLabel l) {
  auto digit = [](EdgeLabel v) { return static_cast<char>('0' + (v & 0xF)); };
  if (l & 0x10000u) return std::string("A:") + digit(l >> 4) + ">" + digit(l);
  return std::string("B:") + digit(l >> 12) + digit(l >> 8) + ">" + digit(l >> 4) + digit(l);
}

std::vector<Move> s_moves(const TildePoint& p, int d) {
  std::vector<Move> out;
  out.reserve(static_cast<std::size_t>(d + (d - 1) * d));
  const Letter x = p.at(1);
  for (int v = 0; v < d; ++v) {
    const Letter x2 = static_cast<Letter>(v);
    out.push_back({a_label(x, x2), EdgeType::kA, (x == 0) != (x2 == 0), p.with_letter(Position::finite(1), x2)});
  }
  const Position k = p.first_nonzero();
  const Position k1 = k.next();
  const Letter a = p.at(k), b = p.at(k1);
  for (int u = 1; u < d; ++u) {
    for (int v = 0; v < d; ++v) {
      const Letter a2 = static_cast<Letter>(u), b2 = static_cast<Letter>(v);
      out.push_back({b_label(a, b, a2, b2), EdgeType::kB, (b == 0) != (b2 == 0),
                     p.with_letter(k1, b2).with_letter(k, a2)});
    }
  }
  return out;
}

GrayPiece gray_piece_window(const TildePoint& p, int left, int right, int d) {
  GrayPiece piece;
  piece.d = d;
  piece.segment = gray_segment(gray_projection(p), left, right);
  std::map<TildePoint, int> id{{p, 0}};
  piece.vertices.push_back(p);
  piece.index.push_back(0);
  for (std::size_t u = 0; u < piece.vertices.size(); ++u) {
    std::vector<std::pair<EdgeLabel, int>> out;
    const int i = piece.index[u];
    for (auto& m : s_moves(piece.vertices[u], d)) {
      const int j = m.changes_projection ? step_index(i, m.type) : i;
      if (j < -left || j > right) continue;
      auto [it, fresh] = id.emplace(m.target, static_cast<int>(piece.vertices.size()));
      if (fresh) {
        piece.vertices.push_back(std::move(m.target));
        piece.index.push_back(j);
      }
      out.emplace_back(m.label, it->second);
    }
    piece.edges.push_back(std::move(out));
  }
  return piece;
}

GrayPiece sub_piece(const GrayPiece& piece, int root, int lo, int hi) {
  const int r = piece.index[static_cast<std::size_t>(root)];
  if (r < lo || r > hi) throw InputError("sub-piece root outside the window");
  GrayPiece out;
  out.d = piece.d;
  out.segment.left = r - lo;
  out.segment.right = hi - r;
  for (int i = lo; i <= hi; ++i) out.segment.words.push_back(piece.segment.at(i));
  std::vector<int> id(piece.size(), -1);
  std::vector<int> order{root};
  id[static_cast<std::size_t>(root)] = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (const auto& [label, t] : piece.edges[static_cast<std::size_t>(order[k])]) {
      const int ti = piece.index[static_cast<std::size_t>(t)];
      if (ti < lo || ti > hi || id[static_cast<std::size_t>(t)] >= 0) continue;
      id[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
      order.push_back(t);
    }
  }
  for (int v : order) {
    out.vertices.push_back(piece.vertices[static_cast<std::size_t>(v)]);
    out.index.push_back(piece.index[static_cast<std::size_t>(v)] - r);
    std::vector<std::pair<EdgeLabel, int>> e;
    for (const auto& [label, t] : piece.edges[static_cast<std::size_t>(v)])
      if (id[static_cast<std::size_t>(t)] >= 0) e.emplace_back(label, id[static_cast<std::size_t>(t)]);
    out.edges.push_back(std::move(e));
  }
  return out;
}

PieceCode canonical_code(const GrayPiece& piece, int root) {
  constexpr std::uint32_t kEnd = 0xFFFFFFFFu;
  PieceCode code;
  std::vector<int> disc(piece.size(), -1);
  std::vector<int> order{root};
  disc[static_cast<std::size_t>(root)] = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (const auto& [label, t] : piece.edges[static_cast<std::size_t>(order[k])]) {
      if (disc[static_cast<std::size_t>(t)] < 0) {
        disc[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
        order.push_back(t);
      }
      code.push_back(label);
      code.push_back(static_cast<std::uint32_t>(disc[static_cast<std::size_t>(t)]));
    }
    code.push_back(kEnd);
  }
  return code;
}

bool iso(const GrayPiece& x, const GrayPiece& y) { return canonical_code(x) == canonical_code(y); }

bool rooted_equal(const GrayPiece& a, int root_a, int lo_a, int hi_a, const GrayPiece& b, int root_b, int lo_b,
                  int hi_b) {
  std::vector<int> da(a.size(), -1), db(b.size(), -1);
  std::vector<std::pair<int, int>> order{{root_a, root_b}};
  da[static_cast<std::size_t>(root_a)] = 0;
  db[static_cast<std::size_t>(root_b)] = 0;
  auto in_a = [&](int t) {
    const int i = a.index[static_cast<std::size_t>(t)];
    return i >= lo_a && i <= hi_a;
  };
  auto in_b = [&](int t) {
    const int i = b.index[static_cast<std::size_t>(t)];
    return i >= lo_b && i <= hi_b;
  };
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& ea = a.edges[static_cast<std::size_t>(order[k].first)];
    const auto& eb = b.edges[static_cast<std::size_t>(order[k].second)];
    std::size_t ia = 0, ib = 0;
    for (;;) {
      while (ia < ea.size() && !in_a(ea[ia].second)) ++ia;
      while (ib < eb.size() && !in_b(eb[ib].second)) ++ib;
      if (ia == ea.size() || ib == eb.size()) {
        if (ia != ea.size() || ib != eb.size()) return false;
        break;
      }
      if (ea[ia].first != eb[ib].first) return false;
      const int ta = ea[ia].second, tb = eb[ib].second;
      int& xa = da[static_cast<std::size_t>(ta)];
      int& xb = db[static_cast<std::size_t>(tb)];
      if (xa != xb) return false;
      if (xa < 0) {
        xa = xb = static_cast<int>(order.size());
        order.emplace_back(ta, tb);
      }
      ++ia;
      ++ib;
    }
  }
  return true;
}

Marginals marginals(const GrayPiece& piece) {
  const int n = piece.segment.left;
  if (!piece.is_central() || n < 2) throw InputError("marginals need a central piece of radius >= 2");
  return {sub_piece(piece, 0, -n, n - 2), sub_piece(piece, 0, -n + 2, n), sub_piece(piece, 0, -n + 2, n - 2)};
}

namespace {

// Number of components of the subgraph induced by vertices with index in [lo, hi].
int count_components(const GrayPiece& piece, int lo, int hi) {
  std::vector<bool> seen(piece.size(), false);
  int comps = 0;
  for (std::size_t s = 0; s < piece.size(); ++s) {
    if (seen[s] || piece.index[s] < lo || piece.index[s] > hi) continue;
    ++comps;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (const auto& [label, t] : piece.edges[u]) {
        const auto tu = static_cast<std::size_t>(t);
        if (!seen[tu] && piece.index[tu] >= lo && piece.index[tu] <= hi) {
          seen[tu] = true;
          stack.push_back(tu);
        }
      }
    }
  }
  return comps;
}

struct RootData {
  std::vector<int> roots, anti_roots;
  Position j;
};

RootData root_data(const GraySegment& seg) {
  RootData r;
  r.j = Position::finite(1);
  for (int i = -seg.left; i <= seg.right; ++i) r.j = std::max(r.j, seg.at(i).first_star());
  for (int i = -seg.left; i <= seg.right; ++i) {
    const Position f = seg.at(i).first_star();
    if (f == r.j) r.roots.push_back(i);
    else if (r.j.is_finite() && f == Position::finite(r.j.n - 1)) r.anti_roots.push_back(i);
  }
  return r;
}

}  // namespace

BranchReport branches(const GrayPiece& piece) {
  const int n = piece.segment.left;
  if (!piece.is_central() || n < 2) throw InputError("branches need a central piece of radius >= 2");
  const Marginals m = marginals(piece);
  BranchReport rep;
  rep.left_branches = count_components(m.left, -n + 2, n - 2);
  rep.right_branches = count_components(m.right, -n + 2, n - 2);
  auto rd = root_data(piece.segment);
  rep.roots = std::move(rd.roots);
  rep.anti_roots = std::move(rd.anti_roots);
  rep.root_position = rd.j;
  return rep;
}

std::optional<Position> is_quasi_level(const GraySegment& seg) {
  const int n = seg.left;
  if (seg.left != seg.right) throw InputError("quasi-levels are defined for central segments");
  auto rd = root_data(seg);
  auto within = [](const std::vector<int>& v, int lo, int hi) {
    return std::all_of(v.begin(), v.end(), [&](int i) { return i >= lo && i <= hi; });
  };
  if (rd.anti_roots.empty()) return std::nullopt;
  const bool left_form = within(rd.roots, -n, -n + 1) && within(rd.anti_roots, n - 1, n);
  const bool right_form = within(rd.roots, n - 1, n) && within(rd.anti_roots, -n, -n + 1);
  if (left_form || right_form) return rd.j;
  return std::nullopt;
}

std::optional<Position> is_quasi_level(const GrayPiece& piece) { return is_quasi_level(piece.segment); }

bool branching_by_visibility(const GraySegment& seg, bool left_side) {
  const int n = seg.left;
  std::set<Position> visible_center;
  for (int i = -n + 2; i <= n - 2; ++i) {
    auto v = visible_positions(seg.at(i));
    visible_center.insert({v.a_visible, v.b_first, v.b_second});
  }
  const int lo = left_side ? -n : n - 1;
  const int hi = left_side ? -n + 1 : n;
  for (int i = lo; i <= hi; ++i) {
    auto v = visible_positions(seg.at(i));
    for (Position r : {v.b_first, v.b_second}) {
      if (visible_center.count(r)) continue;
      for (int c = -n + 2; c <= n - 2; ++c)
        if (seg.at(c).at(r)) return true;
    }
  }
  return false;
}

bool root_fibers_connected(const GrayPiece& piece) {
  for (int r : root_data(piece.segment).roots) {
    bool present = false;
    for (int i : piece.index) present = present || i == r;
    if (present && count_components(piece, r, r) != 1) return false;
  }
  return true;
}

bool has_nontrivial_automorphism(const GrayPiece& piece) {
  std::set<PieceCode> codes;
  for (std::size_t v = 0; v < piece.size(); ++v)
    if (!codes.insert(canonical_code(piece, static_cast<int>(v))).second) return true;
  return false;
}

std::map<TildePoint, int> s_ball(const TildePoint& p, int radius, int d) {
  std::map<TildePoint, int> dist{{p, 0}};
  std::vector<TildePoint> frontier{p};
  for (int r = 1; r <= radius; ++r) {
    std::vector<TildePoint> next;
    for (const auto& x : frontier)
      for (auto& m : s_moves(x, d))
        if (dist.emplace(m.target, r).second) next.push_back(std::move(m.target));
    frontier = std::move(next);
  }
  return dist;
}

std::vector<TildePoint> sample_corpus(int d, std::uint64_t seed, int count) {
  Sampler s(d, seed);
  std::vector<TildePoint> out;
  for (int i = 0; i < count; ++i) {
    Word prefix = s.word(s.uniform(0, 6));
    if (i % 4 == 3) {
      out.push_back(TildePoint::zero_pair(prefix, s.nonzero_letter(), s.letter()));
      continue;
    }
    Word period = s.word(s.uniform(1, 3));
    period[static_cast<std::size_t>(s.uniform(0, static_cast<int>(period.size()) - 1))] = s.nonzero_letter();
    out.push_back(TildePoint::periodic(prefix, period));
  }
  return out;
}

namespace {

// Vertex ids (in the big piece) of the given points.
std::vector<int> ids_of(const GrayPiece& big, const std::vector<TildePoint>& points) {
  std::map<TildePoint, int> id;
  for (std::size_t v = 0; v < big.size(); ++v) id.emplace(big.vertices[v], static_cast<int>(v));
  std::vector<int> out;
  for (const auto& q : points) {
    auto it = id.find(q);
    if (it == id.end()) throw DiagnosticError("ball point missing from enclosing piece: " + q.to_string());
    out.push_back(it->second);
  }
  return out;
}

// The other points at S-distance < R.
std::vector<TildePoint> ball_others(const TildePoint& p, int R, int d) {
  std::vector<TildePoint> out;
  for (const auto& [q, dist] : s_ball(p, R - 1, d))
    if (q != p) out.push_back(q);
  return out;
}

bool same_central_piece(const GrayPiece& big, int v, int n) {
  const int i = big.index[static_cast<std::size_t>(v)];
  return rooted_equal(big, 0, -n, n, big, v, i - n, i + n);
}

}  // namespace

N0Result find_n0(const std::vector<TildePoint>& corpus, int R, int bound, int d) {
  if (R < 1) throw InputError("R must be >= 1");
  N0Result res;
  res.basepoints = corpus.size();
  res.surviving_pairs.assign(static_cast<std::size_t>(bound) + 1, 0);
  int n0 = 1;
  for (const auto& p : corpus) {
    std::vector<TildePoint> survivors = ball_others(p, R, d);
    res.pairs += survivors.size();
    res.surviving_pairs[0] += survivors.size();
    // Distinct pieces at radius n stay distinct at n+1, so only survivors are re-tested.
    for (int n = 1; !survivors.empty(); ++n) {
      if (n > bound) {
        throw DiagnosticError("n0 search exhausted bound " + std::to_string(bound) + ": " + p.to_string() +
                              " vs " + survivors.front().to_string());
      }
      const GrayPiece big = gray_piece(p, n + R - 1, d);
      const auto ids = ids_of(big, survivors);
      std::vector<TildePoint> next;
      for (std::size_t k = 0; k < ids.size(); ++k)
        if (same_central_piece(big, ids[k], n)) next.push_back(survivors[k]);
      survivors = std::move(next);
      res.surviving_pairs[static_cast<std::size_t>(n)] += survivors.size();
      if (survivors.empty()) n0 = std::max(n0, n);
    }
  }
  res.n0 = n0;
  res.surviving_pairs.resize(static_cast<std::size_t>(n0) + 1);
  return res;
}

std::size_t n0_collisions(const std::vector<TildePoint>& corpus, int R, int n, int d) {
  std::size_t collisions = 0;
  for (const auto& p : corpus) {
    const GrayPiece big = gray_piece(p, n + R - 1, d);
    for (int v : ids_of(big, ball_others(p, R, d))) collisions += same_central_piece(big, v, n);
  }
  return collisions;
}

}  // namespace mgw
