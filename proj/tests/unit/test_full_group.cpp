#include "doctest.h"
#include "mgw/errors.hpp"
#include "mgw/full_group.hpp"
#include "mgw/random.hpp"

using namespace mgw;

namespace {

constexpr int kD = 5;

GroupWord word(const std::string& text) { return parse_group_word(text, kD); }

TildePoint random_point(Sampler& s) {
  Word prefix = s.word(s.uniform(0, 6));
  if (s.uniform(0, 3) == 0) return TildePoint::zero_pair(prefix, s.nonzero_letter(), s.letter());
  Word period = s.word(s.uniform(1, 3));
  period[0] = s.nonzero_letter();
  return TildePoint::periodic(prefix, period);
}

// Convenient triplets at sampled basepoints, a few per point.
std::vector<ConvenientTriplet> sample_triplets(int n, int want, std::uint64_t seed) {
  const auto cands = tilde_s(GeneratingSet::standard(kD));
  Sampler s(kD, seed);
  std::vector<ConvenientTriplet> out;
  for (int tries = 0; tries < 200 && static_cast<int>(out.size()) < want; ++tries) {
    const auto trs = convenient_triplets(random_point(s), n, cands);
    if (!trs.empty()) out.push_back(trs[static_cast<std::size_t>(s.uniform(0, static_cast<int>(trs.size()) - 1))]);
  }
  return out;
}

}  // namespace

TEST_CASE("gray cylinders agree with piece codes on sampled points") {
  Sampler s(kD, 11);
  for (int t = 0; t < 6; ++t) {
    const TildePoint base = random_point(s);
    for (auto [l, r] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{0, 2}}) {
      const ClopenSet c = gray_cylinder_window(base, l, r, kD);
      CHECK(c.contains(base));
      const PieceCode code = canonical_code(gray_piece_window(base, l, r, kD));
      for (int k = 0; k < 60; ++k) {
        const TildePoint q = random_point(s);
        CHECK(c.contains(q) == (canonical_code(gray_piece_window(q, l, r, kD)) == code));
      }
    }
  }
  CHECK_THROWS_AS(gray_cylinder_window(TildePoint::periodic({}, {1}), -1, 0, kD), InputError);
}

TEST_CASE("piecewise group laws") {
  const auto cands = tilde_s(GeneratingSet::standard(kD));
  const auto trs = sample_triplets(2, 4, 3);
  REQUIRE(trs.size() >= 3);
  std::vector<PiecewiseElement> xs;
  for (const auto& tr : trs) xs.push_back(eta(tr.u, tr.s, tr.t));
  for (const auto& x : xs) {
    x.validate();
    CHECK(is_identity(compose(x, invert(x))));
    CHECK(is_identity(compose(invert(x), x)));
    CHECK(equals(normalize(x), x));
  }
  CHECK(equals(compose(xs[0], compose(xs[1], xs[2])), compose(compose(xs[0], xs[1]), xs[2])));
  CHECK(is_identity(PiecewiseElement::identity(kD)));
  CHECK(order_of(PiecewiseElement::identity(kD)) == 1);

  // Refining a domain does not change the element.
  PiecewiseElement split{kD, {}};
  const ClopenSet cut = ClopenSet::cylinder(encode(TildePoint::periodic({2}, {1}), 2), kD);
  for (const auto& [u, g] : xs[0].pieces)
    for (const ClopenSet& part : {u & cut, u - cut})
      if (!part.is_empty()) split.pieces.emplace_back(part, g);
  split.validate();
  CHECK(equals(split, xs[0]));
  CHECK(equals(xs[0], split));
  CHECK_FALSE(equals(xs[0], PiecewiseElement::identity(kD)));
}

TEST_CASE("eta is an order-3 element supported on its three sets") {
  for (const auto& tr : sample_triplets(2, 4, 5)) {
    const PiecewiseElement x = eta(tr.u, tr.s, tr.t);
    CHECK(order_of(x) == 3);
    const ClopenSet sup = support(x);
    CHECK(sup.subset_of(tr.u | image(tr.s.inverse(), tr.u) | image(tr.t, tr.u)));
    CHECK(tr.u.subset_of(sup));
    Sampler s(kD, 17);
    for (int k = 0; k < 40; ++k) {
      const TildePoint p = random_point(s);
      if (tr.u.contains(p)) CHECK(x.evaluate(p) == act(tr.t, p));
      if (!sup.contains(p)) CHECK(x.evaluate(p) == p);
    }
    // eta^-1 is eta with the roles reversed.
    CHECK(equals(invert(x), eta(tr.u, tr.t.inverse(), tr.s.inverse())));
  }
  CHECK(is_identity(eta(ClopenSet::empty(kD), word("a(0 1 2)"), word("a(0 2 1)"))));
  CHECK_THROWS_AS(eta(ClopenSet::full(kD), word("a(0 1 2)"), word("a(0 2 1)")), InputError);
}

TEST_CASE("swap and 3-cycle gadgets") {
  const ClopenSet c1 = ClopenSet::cylinder(encode(TildePoint::periodic({0}, {1}), 1), kD);
  const GroupWord g12 = word("a(0 1 2)");
  const GroupWord g23 = word("a(0 1 2)");
  const PiecewiseElement sw = build_swap({{c1, g12}});
  sw.validate();
  CHECK(order_of(sw) == 2);
  const PiecewiseElement c = build_3cycle(c1, g12, g23);
  c.validate();
  CHECK(order_of(c) == 3);
  const auto [k1, k2] = three_cycle_as_commutator(c1, g12, g23);
  CHECK(order_of(k1) == 2);
  CHECK(order_of(k2) == 2);
  CHECK(equals(commutator(k1, k2), c));
  CHECK_THROWS_AS(build_swap({{c1, GroupWord(kD)}}), InputError);
  CHECK_THROWS_AS(build_swap({}), InputError);
}

TEST_CASE("tilde S is symmetric and duplicate free") {
  const auto ts = tilde_s(GeneratingSet::standard(kD));
  CHECK(ts.front().is_empty());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    bool has_inverse = false;
    for (const auto& y : ts) has_inverse = has_inverse || equals(y, ts[i].inverse());
    CHECK(has_inverse);
    for (std::size_t j = i + 1; j < ts.size(); j += 7) CHECK_FALSE(equals(ts[i], ts[j]));
  }
}

TEST_CASE("commutator trick on convenient triplets") {
  const auto cands = tilde_s(GeneratingSet::standard(kD));
  const auto trs = sample_triplets(3, 2, 9);
  REQUIRE_FALSE(trs.empty());
  for (const auto& tr : trs) {
    const auto rep = commutator_trick_check(tr, cands);
    INFO(rep.failure);
    CHECK(rep.ok());
  }
  // s = t^-1 sends both marginal points to the same neighbour.
  ConvenientTriplet bad = trs.front();
  bad.s = bad.t.inverse();
  const auto rep = commutator_trick_check(bad, cands);
  CHECK_FALSE(rep.convenient);
  CHECK_FALSE(rep.ok());
  ConvenientTriplet small = trs.front();
  small.n = 1;
  CHECK_FALSE(commutator_trick_check(small, cands).ok());
}

TEST_CASE("express in T replays to the original eta") {
  const auto cands = tilde_s(GeneratingSet::standard(kD));
  const auto trs = sample_triplets(3, 1, 21);
  REQUIRE_FALSE(trs.empty());
  const auto& tr = trs.front();
  const auto parts = split_triplet(tr, cands);
  REQUIRE(parts);
  const auto t = generating_set_T({parts->first.gamma, parts->second.gamma}, 2, cands);
  REQUIRE_FALSE(t.empty());
  const auto e = express_in_T(tr, t, 2, cands);
  REQUIRE(e);
  CHECK(e->leaf_count() == 2);
  CHECK(equals(e->evaluate(t), eta(tr.u, tr.s, tr.t)));
  for (const auto& m : t) CHECK(find_in_T(t, m.element).has_value());
}
