#include <set>

#include "doctest.h"
#include "mgw/errors.hpp"
#include "mgw/random.hpp"
#include "mgw/schreier.hpp"

using namespace mgw;

namespace {

constexpr int kD = 5;

// Oracle: candidate sequences differ from p only at bits visible in the segment;
// adjacency comes from acting with explicit group elements, not from s_moves.
std::set<TildePoint> enumerated_piece(const TildePoint& p, int n, Sampler& s) {
  const GraySegment seg = gray_segment(gray_projection(p), n);
  std::set<Position> vis;
  for (const auto& w : seg.words) {
    auto v = visible_positions(w);
    vis.insert({v.a_visible, v.b_first, v.b_second});
  }
  std::vector<TildePoint> cands{p};
  for (Position pos : vis) {
    std::vector<TildePoint> next;
    for (const auto& c : cands)
      for (int x = 0; x < kD; ++x) {
        if (pos.kind == Position::Kind::kOmega && x == 0) continue;
        next.push_back(c.with_letter(pos, static_cast<Letter>(x)));
      }
    cands = std::move(next);
  }
  std::set<TildePoint> in_fiber;
  for (const auto& c : cands)
    if (seg.index_of(gray_projection(c))) in_fiber.insert(c);
  std::vector<Generator> elems;
  for (const auto& perm : alternating_group(kD)) elems.push_back(Generator::a(perm));
  for (int i = 0; i < 600; ++i) elems.push_back(s.b_element());
  std::set<TildePoint> comp{p};
  std::vector<TildePoint> stack{p};
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    for (const auto& g : elems) {
      auto y = act(g, x);
      if (in_fiber.count(y) && comp.insert(y).second) stack.push_back(y);
    }
  }
  return comp;
}

TildePoint random_point(Sampler& s) {
  Word prefix = s.word(s.uniform(0, 5));
  if (s.uniform(0, 3) == 0) return TildePoint::zero_pair(prefix, s.nonzero_letter(), s.letter());
  Word period = s.word(s.uniform(1, 3));
  period[0] = s.nonzero_letter();
  return TildePoint::periodic(prefix, period);
}

}  // namespace

TEST_CASE("level graphs are connected") {
  auto s0 = GeneratingSet::standard(kD);
  auto g1 = level_graph(s0, 1);
  CHECK(g1.vertex_count() == 5);
  CHECK(g1.connected());
  auto g3 = level_graph(s0, 3);
  CHECK(g3.vertex_count() == 125);
  CHECK(g3.connected());
  auto g5 = level_graph(s0, 5);
  CHECK(g5.vertex_count() == 3125);
  CHECK(g5.connected());
  for (std::uint32_t v = 0; v < g3.vertex_count(); ++v)
    for (std::size_t k = 0; k < s0.size(); ++k) CHECK(g3.adj[k][v] == g3.id_of(s0.gens[k].apply(g3.word_of(v))));
  CHECK_THROWS_AS(level_graph(s0, 7), ResourceError);
}

TEST_CASE("gray pieces match the visibility enumeration") {
  Sampler s(kD, 17);
  CHECK(gray_piece(TildePoint::parse("1|(3)"), 0).index == std::vector<int>(gray_piece(TildePoint::parse("1|(3)"), 0).size(), 0));
  std::vector<TildePoint> points{TildePoint::parse("1|(3)")};
  for (int i = 0; i < 12; ++i) points.push_back(random_point(s));
  for (const auto& p : points) {
    for (int n : {1, 2}) {
      auto piece = gray_piece(p, n);
      std::set<TildePoint> got(piece.vertices.begin(), piece.vertices.end());
      CHECK(got == enumerated_piece(p, n, s));
      CHECK(piece.vertices[0] == p);
      std::set<int> idx(piece.index.begin(), piece.index.end());
      CHECK(idx.count(0));
      CHECK(static_cast<int>(idx.size()) == *idx.rbegin() - *idx.begin() + 1);
    }
  }
}

TEST_CASE("piece vertices project to their indices and S0 edges respect edge types") {
  Sampler s(kD, 23);
  auto s0 = GeneratingSet::standard(kD);
  for (int trial = 0; trial < 20; ++trial) {
    auto piece = gray_piece(random_point(s), 2);
    std::map<TildePoint, std::size_t> id;
    for (std::size_t v = 0; v < piece.size(); ++v) {
      id[piece.vertices[v]] = v;
      CHECK(piece.segment.at(piece.index[v]) == gray_projection(piece.vertices[v]));
    }
    for (std::size_t v = 0; v < piece.size(); ++v) {
      for (const auto& g : s0.symmetric()) {
        auto q = act(g, piece.vertices[v]);
        auto j = piece.segment.index_of(gray_projection(q));
        if (!j) continue;
        REQUIRE(id.count(q));
        const int i = piece.index[v];
        if (*j == i) continue;
        CHECK(std::abs(*j - i) == 1);
        const EdgeType t = g.kind() == GeneratorKind::kA ? EdgeType::kA : EdgeType::kB;
        CHECK(GraySegment::edge_type(std::min(i, *j)) == t);
      }
    }
  }
}

TEST_CASE("canonical codes characterize pointed labelled isomorphism") {
  auto p = TildePoint::parse("1|(3)");
  auto piece = gray_piece(p, 2);
  CHECK(canonical_code(piece) == canonical_code(piece));
  // Translate by a cofinal change far beyond every visible bit: same letters where it matters.
  auto q = p.with_letter(Position::finite(40), 2);
  CHECK(iso(piece, gray_piece(q, 2)));
  CHECK_FALSE(iso(piece, gray_piece(TildePoint::parse("2|(3)"), 2)));
  Sampler s(kD, 31);
  for (int trial = 0; trial < 30; ++trial) {
    auto x = random_point(s);
    auto y = x.with_letter(Position::finite(1), static_cast<Letter>((x.at(1) + 1) % kD));
    CHECK_FALSE(iso(gray_piece(x, 1), gray_piece(y, 1)));
    auto big = gray_piece(x, 3);
    const auto sub = sub_piece(big, 0, -1, 1);
    CHECK(canonical_code(sub) == canonical_code(gray_piece(x, 1)));
    CHECK(rooted_equal(big, 0, -1, 1, gray_piece(x, 1), 0, -1, 1));
  }
}

TEST_CASE("marginals and branch structure") {
  auto piece = gray_piece(TildePoint::parse("1|(3)"), 2);
  auto m = marginals(piece);
  CHECK(m.left.segment.words.size() == 3);
  CHECK(m.right.segment.words.size() == 3);
  CHECK(m.center.segment.words.size() == 1);
  CHECK(canonical_code(m.center) == canonical_code(gray_piece(TildePoint::parse("1|(3)"), 0)));
  CHECK_THROWS_AS(marginals(gray_piece(TildePoint::parse("1|(3)"), 1)), InputError);
  Sampler s(kD, 3);
  std::map<std::pair<PieceCode, PieceCode>, PieceCode> table;
  int bi = 0;
  for (int trial = 0; trial < 120; ++trial) {
    auto pc = gray_piece(random_point(s), 2 + trial % 3);
    auto mg = marginals(pc);
    std::set<TildePoint> l(mg.left.vertices.begin(), mg.left.vertices.end());
    std::set<TildePoint> r(mg.right.vertices.begin(), mg.right.vertices.end());
    for (const auto& v : mg.center.vertices) CHECK((l.count(v) && r.count(v)));
    auto [it, fresh] = table.emplace(std::make_pair(canonical_code(mg.left), canonical_code(mg.right)), canonical_code(pc));
    if (!fresh) CHECK(it->second == canonical_code(pc));
    auto br = branches(pc);
    CHECK(br.left_branches >= 1);
    CHECK(br.right_branches >= 1);
    CHECK(br.branches_left() == branching_by_visibility(pc.segment, true));
    CHECK(br.branches_right() == branching_by_visibility(pc.segment, false));
    CHECK(root_fibers_connected(pc));
    CHECK(!br.roots.empty());
    CHECK(br.roots.size() <= 2);
    if (br.bi_branching()) {
      ++bi;
      CHECK(is_quasi_level(pc).has_value());
    }
  }
  MESSAGE("bi-branching pieces sampled: " << bi);
}

TEST_CASE("pieces admit no nontrivial automorphism") {
  Sampler s(kD, 44);
  for (int trial = 0; trial < 15; ++trial) CHECK_FALSE(has_nontrivial_automorphism(gray_piece(random_point(s), 1)));
}

TEST_CASE("n0 search is monotone in R and replays cleanly") {
  auto corpus = sample_corpus(kD, 5, 12);
  auto r1 = find_n0(corpus, 1, 20);
  auto r3 = find_n0(corpus, 3, 20);
  CHECK(r1.n0 <= r3.n0);
  CHECK(n0_collisions(corpus, 3, r3.n0, kD) == 0);
  if (r3.n0 > 1) CHECK(n0_collisions(corpus, 3, r3.n0 - 1, kD) > 0);
  CHECK_THROWS_AS(find_n0(corpus, 3, 0), DiagnosticError);
}
