#include <set>

#include "doctest.h"
#include "mgw/errors.hpp"
#include "mgw/random.hpp"
#include "mgw/searches.hpp"

using namespace mgw;

namespace {

constexpr int kD = 5;

TildePoint random_point(Sampler& s) {
  Word prefix = s.word(s.uniform(0, 5));
  if (s.uniform(0, 3) == 0) return TildePoint::zero_pair(prefix, s.nonzero_letter(), s.letter());
  Word period = s.word(s.uniform(1, 3));
  period[0] = s.nonzero_letter();
  return TildePoint::periodic(prefix, period);
}

// q agrees with p up to position r and differs right after it.
TildePoint perturb(const TildePoint& p, int r, Sampler& s) {
  Word w = p.head(r);
  Letter x = s.letter();
  while (x == p.at(r + 1)) x = s.letter();
  w.push_back(x);
  return TildePoint::periodic(w, {s.nonzero_letter()});
}

}  // namespace

TEST_CASE("loop class partition covers the space and separates classes") {
  const auto parts = subshift_partition(kD);
  CHECK(parts.size() == 40);
  ClopenSet all = ClopenSet::empty(kD);
  for (const auto& [c, set] : parts) {
    CHECK(all.disjoint(set));
    all = all | set;
  }
  CHECK(all.is_full());
  Sampler s(kD, 4);
  for (int k = 0; k < 500; ++k) {
    const TildePoint p = random_point(s);
    int hits = 0;
    for (const auto& [c, set] : parts)
      if (set.contains(p)) {
        ++hits;
        CHECK(c == loop_class(p));
      }
    CHECK(hits == 1);
  }
}

TEST_CASE("same loop class means the same S-moves fix the point") {
  const auto gens = GeneratingSet::standard(kD).symmetric();
  Sampler s(kD, 8);
  for (int k = 0; k < 300; ++k) {
    const TildePoint p = random_point(s), q = random_point(s);
    if (loop_class(p) != loop_class(q)) continue;
    for (const auto& g : gens) CHECK((act(g, p) == p) == (act(g, q) == q));
  }
}

TEST_CASE("separation search finds verified separators") {
  const auto s0 = GeneratingSet::standard(kD);
  Sampler s(kD, 15);
  std::set<std::string> methods;
  for (int k = 0; k < 40; ++k) {
    const TildePoint p = random_point(s);
    const TildePoint q = k % 2 ? random_point(s) : perturb(p, s.uniform(1, 4), s);
    if (p == q) continue;
    const auto sep = separation_search(s0, p, q, 12);
    REQUIRE(sep);
    methods.insert(sep->method);
    CHECK(sep->g.length() <= 12);
    CHECK(loop_class(act(sep->g, p)) != loop_class(act(sep->g, q)));
  }
  CHECK(methods.count("prefix-steering") == 1);
  const TildePoint p = TildePoint::periodic({}, {1});
  CHECK_THROWS_AS(separation_search(s0, p, p), InputError);
}

TEST_CASE("stabilizer separation fixes p and moves q") {
  const auto s0 = GeneratingSet::standard(kD);
  Sampler s(kD, 23);
  for (int k = 0; k < 25; ++k) {
    const TildePoint p = random_point(s);
    const TildePoint q = perturb(p, s.uniform(0, 3), s);
    const auto g = stabilizer_separation(s0, p, q, 6);
    REQUIRE(g);
    CHECK(act(*g, p) == p);
    CHECK(act(*g, q) != q);
  }
}

TEST_CASE("brieussel witnesses for the root generator") {
  const auto s0 = GeneratingSet::standard(kD);
  const auto res = brieussel_search(s0, 2, 3);
  REQUIRE(res.size() == s0.size());
  for (std::size_t i = 0; i < res.size(); ++i) {
    CHECK(res[i].target == s0.ids[i]);
    if (res[i].word) CHECK(is_brieussel_witness(*res[i].word, s0.gens[i]));
  }
  // Nothing of length <= 3 works for beta_0; (a beta_0^-1)^2 does.
  CHECK(res[2].target == "b0");
  REQUIRE(res[2].word);
  CHECK(res[2].word->length() == 4);
  CHECK(brieussel_search(s0, 1, 3)[2].word == std::nullopt);
  CHECK_FALSE(res[0].word);
  CHECK_FALSE(is_brieussel_witness(GroupWord::of(kD, s0.gens[2]), s0.gens[2]));
}
