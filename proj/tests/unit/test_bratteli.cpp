#include <set>

#include "doctest.h"
#include "mgw/bratteli.hpp"
#include "mgw/errors.hpp"
#include "mgw/generating_set.hpp"
#include "mgw/random.hpp"

using namespace mgw;

namespace {

constexpr int kD = 5;

Generator example_b() {
  return Generator::b(Permutation::cycle(kD, {1, 2, 3}),
                      {Permutation::identity(kD), Permutation::cycle(kD, {0, 4, 2}), Permutation::identity(kD),
                       Permutation::identity(kD), Permutation::identity(kD)});
}

TildePoint random_point(Sampler& s) {
  Word prefix = s.word(s.uniform(0, 6));
  if (s.uniform(0, 3) == 0) return TildePoint::zero_pair(prefix, s.nonzero_letter(), s.letter());
  Word period = s.word(s.uniform(1, 3));
  period[0] = s.nonzero_letter();
  return TildePoint::periodic(prefix, period);
}

// A tail whose continuation data is v.
TildePoint representative_tail(const BVertex& v, int variant) {
  if (v.star) return TildePoint::periodic({v.a, v.b}, variant ? Word{0, 3} : Word{1});
  if (variant) return TildePoint::periodic({0, 0, v.a, v.b}, Word{2});
  return TildePoint::zero_pair({0}, v.a, v.b);
}

ClopenSet random_clopen(Sampler& s) {
  std::vector<PathPrefix> cyls;
  const int k = s.uniform(1, 4);
  for (int i = 0; i < k; ++i) cyls.push_back(encode(random_point(s), s.uniform(0, 4)));
  return ClopenSet::from_cylinders(cyls);
}

}  // namespace

TEST_CASE("diagram shape") {
  const auto& dg = diagram(kD);
  CHECK(dg.level_vertices().size() == 40);
  CHECK(dg.edges(BVertex::top_vertex()).size() == 200);
  for (const auto& v : dg.level_vertices()) {
    int from_top = 0;
    for (const auto& e : dg.edges(BVertex::top_vertex())) from_top += e.target == v;
    CHECK(from_top == kD);
    for (std::size_t i = 0; i < dg.edges(v).size(); ++i) {
      const auto& e = dg.edges(v)[i];
      CHECK(BratteliDiagram::predecessor(e.target, e.label) == v);
      CHECK(dg.edge_index(v, e.label, e.target) == i);
      if (!v.star) CHECK(e.label == 0);
      else CHECK(e.label == v.a);
    }
  }
  CHECK(is_simple_at(1));
  // Zero vertices only feed (ab,0) and (ab,*), so two levels never suffice.
  CHECK(simplicity_gap(kD) == 3);
  CHECK(simplicity_gap(kD, 2) == 0);
}

TEST_CASE("encoding of a zero-pair point") {
  auto p = TildePoint::parse("13|0*[20]");
  auto eta = encode(p, 3);
  CHECK(eta.labels == word_from_string("130"));
  CHECK(eta.vertex_at(1) == BVertex::parse("30*"));
  CHECK(eta.vertex_at(2) == BVertex::parse("200"));
  CHECK(eta.end == BVertex::parse("200"));
  PathPrefix zeros{word_from_string("000"), BVertex::parse("410")};
  CHECK(decode_zero_ray(zeros) == TildePoint::zero_pair({}, 4, 1));
  CHECK_THROWS_AS(decode(PathPrefix{word_from_string("1"), BVertex::parse("21*")}, TildePoint::parse("3|(1)")), InputError);
}

TEST_CASE("encode and decode round-trip exhaustively to depth 5") {
  const auto& dg = diagram(kD);
  std::vector<Word> words{{}};
  for (int n = 0; n <= 5; ++n) {
    for (const auto& w : words) {
      const std::vector<BVertex> ends = n == 0 ? std::vector<BVertex>{BVertex::top_vertex()} : dg.level_vertices();
      for (const auto& v : ends) {
        PathPrefix eta{w, v};
        for (int variant = 0; variant < 2; ++variant) {
          TildePoint tail = v.top ? TildePoint::parse("|(1)") : representative_tail(v, variant);
          TildePoint p = decode(eta, tail);
          CHECK(encode(p, n) == eta);
          CHECK(cylinder_member(eta, p));
        }
      }
    }
    std::vector<Word> next;
    for (const auto& w : words)
      for (int x = 0; x < kD; ++x) {
        Word v = w;
        v.push_back(static_cast<Letter>(x));
        next.push_back(v);
      }
    words = std::move(next);
  }
}

TEST_CASE("sampled points: decode(encode) and membership agree") {
  Sampler s(kD, 19);
  for (int i = 0; i < 3000; ++i) {
    auto p = random_point(s);
    const int n = s.uniform(0, 9);
    auto eta = encode(p, n);
    CHECK(decode(eta, tail_after(p, n)) == p);
    auto q = s.uniform(0, 1) ? p.with_letter(Position::finite(s.uniform(1, 10)), s.letter()) : random_point(s);
    if (q.first_nonzero() == Position::omega() && !q.is_zero_pair()) continue;
    CHECK(cylinder_member(eta, q) == (encode(q, n) == eta));
  }
}

TEST_CASE("cylinder semantics examples") {
  PathPrefix star{word_from_string("4"), BVertex::parse("21*")};
  CHECK(cylinder_member(star, TildePoint::parse("421|(3)")));
  CHECK(cylinder_member(star, TildePoint::parse("42|(1)")));
  CHECK_FALSE(cylinder_member(star, TildePoint::parse("420|(3)")));
  PathPrefix zero{word_from_string("4"), BVertex::parse("210")};
  CHECK(cylinder_member(zero, TildePoint::zero_pair(word_from_string("4"), 2, 1)));
  CHECK(cylinder_member(zero, TildePoint::parse("4|(021)")));
  CHECK_FALSE(cylinder_member(zero, TildePoint::parse("4|(21)")));
}

TEST_CASE("clopen algebra laws") {
  Sampler s(kD, 1);
  auto full = ClopenSet::full();
  auto a = ClopenSet::cylinder(PathPrefix{word_from_string("1"), BVertex::parse("21*")});
  auto b = ClopenSet::cylinder(PathPrefix{word_from_string("2"), BVertex::parse("21*")});
  CHECK((a & b).is_empty());
  for (int i = 0; i < 200; ++i) {
    auto u = random_clopen(s), v = random_clopen(s);
    CHECK((u | u.complement()) == full);
    CHECK((u & u.complement()).is_empty());
    CHECK((((u & v) | (u & v.complement())) == u));
    CHECK(ClopenSet::from_cylinders(u.cylinders()) == u);
    CHECK(ClopenSet::parse(u.to_string()) == u);
    auto cyls = u.cylinders();
    for (std::size_t x = 0; x < cyls.size(); ++x)
      for (std::size_t y = 0; y < cyls.size(); ++y)
        if (x != y) CHECK_FALSE(cyls[x].is_prefix_of(cyls[y]));
    for (int k = 0; k < 20; ++k) {
      auto p = random_point(s);
      bool in = false;
      for (const auto& c : cyls) in = in || cylinder_member(c, p);
      CHECK(u.contains(p) == in);
      CHECK((u | v).contains(p) == (u.contains(p) || v.contains(p)));
      CHECK((u & v).contains(p) == (u.contains(p) && v.contains(p)));
    }
  }
  // Normal form: the children of a cylinder reassemble to it.
  PathPrefix eta{word_from_string("30"), BVertex::parse("400")};
  std::vector<PathPrefix> kids;
  for (const auto& e : diagram(kD).edges(eta.end)) {
    PathPrefix c{eta.labels, e.target};
    c.labels.push_back(e.label);
    kids.push_back(c);
  }
  CHECK(ClopenSet::from_cylinders(kids) == ClopenSet::cylinder(eta));
  CHECK(ClopenSet::from_cylinders(kids).cylinders() == std::vector<PathPrefix>{eta});
}

TEST_CASE("images of cylinders") {
  auto a = GroupWord::of(kD, Generator::a(Permutation::cycle(kD, {0, 1, 2})));
  for (const auto& v : diagram(kD).level_vertices()) {
    PathPrefix eta{word_from_string("2"), v};
    CHECK(image_of_cylinder(a, eta) == ClopenSet::cylinder(PathPrefix{word_from_string("0"), v}));
  }
  auto b = GroupWord::of(kD, example_b());
  CHECK(image_of_cylinder(b, PathPrefix{word_from_string("0"), BVertex::parse("100")}) ==
        ClopenSet::cylinder(PathPrefix{word_from_string("0"), BVertex::parse("240")}));
  Sampler s(kD, 71);
  for (int i = 0; i < 150; ++i) {
    GroupWord g = s.group_word(s.uniform(0, 4));
    auto eta = encode(random_point(s), s.uniform(0, 5));
    auto img = image_of_cylinder(g, eta);
    CHECK(image(g.inverse(), img) == ClopenSet::cylinder(eta));
    auto u = random_clopen(s), v = random_clopen(s);
    CHECK(image(g, u | v) == (image(g, u) | image(g, v)));
    CHECK(image(g, u.complement()) == image(g, u).complement());
    if (u.disjoint(v)) CHECK(image(g, u).disjoint(image(g, v)));
    for (int k = 0; k < 20; ++k) {
      auto p = random_point(s);
      CHECK(u.contains(p) == image(g, u).contains(act(g, p)));
    }
  }
}

TEST_CASE("fixed parts agree with pointwise action on samples") {
  Sampler s(kD, 72);
  for (int i = 0; i < 150; ++i) {
    GroupWord g = s.group_word(s.uniform(0, 5));
    auto u = random_clopen(s);
    auto f = fixed_part(g, u);
    CHECK(f.subset_of(u));
    for (const auto& c : f.cylinders()) CHECK(fixes_cylinder_pointwise(g, c));
    for (int k = 0; k < 30; ++k) {
      auto p = random_point(s);
      if (f.contains(p)) CHECK(act(g, p) == p);
      if (u.contains(p) && !f.contains(p)) CHECK(act(g, p) != p);
    }
  }
}

TEST_CASE("towers, tau maps and path counts") {
  const auto& dg = diagram(kD);
  auto t = tower(BVertex::parse("21*"), 2);
  CHECK(t.paths.size() == 25);
  auto p = decode(t.paths[7], TildePoint::parse("21|(3)"));
  CHECK(tau_apply(t.paths[7], t.paths[7], p) == p);
  auto q = tau_apply(t.paths[7], t.paths[3], p);
  CHECK(encode(q, 2) == t.paths[3]);
  CHECK(tail_after(q, 2) == tail_after(p, 2));
  CHECK_THROWS_AS(tau_apply(t.paths[7], t.paths[3], q), InputError);
  for (auto c : h_n_structure(1)) CHECK(c == 5);
  // Brute force: walk every two-edge path from the top.
  std::vector<std::size_t> brute(dg.level_vertices().size(), 0);
  for (const auto& e1 : dg.edges(BVertex::top_vertex()))
    for (const auto& e2 : dg.edges(e1.target)) ++brute[dg.vertex_index(e2.target)];
  CHECK(h_n_structure(2) == brute);
  for (auto c : h_n_structure(4)) CHECK(c == 625);
}

TEST_CASE("bounded type audit of the standard generators") {
  auto s0 = GeneratingSet::standard(kD);
  for (const auto& g : s0.gens) {
    auto rep = bounded_type_audit(g, 8);
    CHECK(rep.unresolved_chains == 0);
    CHECK(rep.constant_from_level_3);
    for (const auto& p : rep.exceptional_points) CHECK(p.is_zero_pair());
    if (g.kind() == GeneratorKind::kA) {
      for (std::size_t n = 1; n < rep.max_non_tau_per_level.size(); ++n) CHECK(rep.max_non_tau_per_level[n] == 0);
      CHECK(rep.exceptional_points.empty());
    } else {
      CHECK(rep.bound >= 1);
      CHECK(rep.bound <= 2);
      for (const auto& p : rep.exceptional_points) {
        CHECK(p.prefix().empty());
        CHECK(act(g, p) != p);
      }
    }
  }
  auto rep = bounded_type_audit(example_b(), 6);
  // b moves (1,y) for every y and (2,y),(3,y) through rho.
  CHECK(rep.exceptional_points.size() == 15);
}

TEST_CASE("regularity witnesses") {
  auto p = TildePoint::parse("3|(41)");
  auto w0 = regularity_check(GroupWord(kD), p);
  CHECK(w0.depth == 0);
  CHECK(w0.pointwise);
  auto a = GroupWord::of(kD, Generator::a(Permutation::cycle(kD, {0, 1, 2})));
  auto w1 = regularity_check(a, p);
  CHECK(w1.depth == 1);
  CHECK(w1.pointwise);
  CHECK(w1.image_equal);
  CHECK_THROWS_AS(regularity_check(a, TildePoint::parse("1|(41)")), InputError);
}
