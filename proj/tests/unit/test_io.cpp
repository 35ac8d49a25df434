#include "doctest.h"
#include "mgw/errors.hpp"
#include "mgw/io.hpp"

using namespace mgw;

TEST_CASE("generator and word JSON round trips") {
  const auto s0 = GeneratingSet::standard(5);
  for (const auto& g : s0.symmetric()) {
    const Json j = to_json(g);
    CHECK(generator_from_json(j, 5) == g);
    CHECK(generator_from_json(Json::parse(j.dump()), 5) == g);
  }
  CHECK(to_json(s0.gens[0])["perm"] == Json::parse("[1,2,0,3,4]"));
  const GroupWord w = parse_group_word("a(0 1 2) b[(1 2 3);();();();()] a(2 3 4)", 5);
  CHECK(group_word_from_json(to_json(w)) == w);
  CHECK(group_word_from_json(to_json(GroupWord(5))).is_empty());
  CHECK_THROWS_AS(generator_from_json(Json::parse(R"({"kind":"a","perm":[1,0,2,3,4]})"), 5), InputError);
  CHECK_THROWS_AS(generator_from_json(Json::parse(R"({"kind":"q"})"), 5), InputError);
  CHECK_THROWS_AS(group_word_from_json(Json::parse(R"({"letters":[]})")), InputError);
  CHECK(to_json(portrait(w, 1))["children"].size() == 5);
}

TEST_CASE("piecewise element JSON round trip") {
  const ClopenSet c1 = ClopenSet::cylinder(encode(TildePoint::parse("0|(1)"), 1), 5);
  const PiecewiseElement x = build_3cycle(c1, parse_group_word("a(0 1 2)", 5), parse_group_word("a(0 1 2)", 5));
  const PiecewiseElement y = piecewise_from_json(Json::parse(to_json(x).dump()));
  CHECK(equals(x, y));
  CHECK(to_json(y) == to_json(x));
  CHECK_THROWS_AS(piecewise_from_json(Json::parse(R"({"d":5,"pieces":[{"domain":"0@10*","word":"e"}]})")), InputError);
}

TEST_CASE("exports") {
  const LevelGraph g = level_graph(GeneratingSet::standard(5), 1);
  const Json j = level_graph_json(g);
  CHECK(j["vertices"].size() == 5);
  CHECK(j["connected"] == true);
  CHECK(level_graph_dot(g).find("digraph") == 0);

  const GrayPiece piece = gray_piece(TildePoint::parse("12|(3)"), 2);
  const Json pj = gray_piece_json(piece);
  CHECK(pj["vertices"].size() == piece.size());
  CHECK(pj["segment"].size() == 5);
  CHECK(gray_piece_dot(piece).find("fillcolor") != std::string::npos);

  const Json bj = bratteli_json(5, 3);
  CHECK(bj["vertices"].size() == 4);
  for (int n = 1; n <= 3; ++n) CHECK(bj["vertices"][static_cast<std::size_t>(n)].size() == 40);
  CHECK(bratteli_dot(5, 2).find("rank=same") != std::string::npos);
}
