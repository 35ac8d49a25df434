#include "mgw/full_group.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "mgw/errors.hpp"

namespace mgw {

namespace {

constexpr int kMaxRefineDepth = 64;

// Largest finite position whose letter is fixed by a cylinder of depth m
// ending at v, for the purpose of deciding pieces.
int decided_bound(int m, const BVertex& v) { return v.star ? m + 2 : m + 1; }

bool position_decided(const Position& p, int bound) { return !p.is_finite() || p.n <= bound; }

TildePoint representative(const PathPrefix& eta) {
  const BVertex& v = eta.end;
  if (v.star) return decode(eta, TildePoint::periodic({v.a, v.b}, {1}));
  return decode(eta, TildePoint::zero_pair({0}, v.a, v.b));
}

struct CylinderTarget {
  int left = 0;
  int right = 0;
  int d = 5;
  std::vector<PieceCode> codes;  // codes[k]: window [-min(k,left), min(k,right)]

  int reach() const { return std::max(left, right); }
  int lo(int k) const { return -std::min(k, left); }
  int hi(int k) const { return std::min(k, right); }
};

// Largest k whose window around rep is decided at this cylinder, or -1.
int decided_radius(const CylinderTarget& tg, const TildePoint& rep, int bound) {
  const GraySegment seg = gray_segment(gray_projection(rep), tg.left, tg.right);
  auto ok = [&](int i) {
    const auto vp = visible_positions(seg.at(i));
    return position_decided(vp.a_visible, bound) && position_decided(vp.b_first, bound) &&
           position_decided(vp.b_second, bound);
  };
  if (!ok(0)) return -1;
  int k = 0;
  while (k < tg.reach()) {
    const int nk = k + 1;
    if (tg.lo(nk) < tg.lo(k) && !ok(tg.lo(nk))) break;
    if (tg.hi(nk) > tg.hi(k) && !ok(tg.hi(nk))) break;
    k = nk;
  }
  return k;
}

void refine(const CylinderTarget& tg, const PathPrefix& eta, int matched, std::vector<PathPrefix>& out) {
  const auto& dg = diagram(tg.d);
  if (!eta.end.top) {
    if (eta.depth() > kMaxRefineDepth) throw ResourceError("gray cylinder refinement exceeded depth 64");
    const TildePoint rep = representative(eta);
    const int k = decided_radius(tg, rep, decided_bound(eta.depth(), eta.end));
    if (k > matched) {
      // The piece of rep is only trusted on the decided window, so only that part is built.
      const GrayPiece piece = gray_piece_window(rep, -tg.lo(k), tg.hi(k), tg.d);
      if (canonical_code(piece) != tg.codes[static_cast<std::size_t>(k)]) return;
      matched = k;
    }
    if (matched == tg.reach()) {
      out.push_back(eta);
      return;
    }
  }
  for (const auto& e : dg.edges(eta.end)) {
    PathPrefix child{eta.labels, e.target};
    child.labels.push_back(e.label);
    refine(tg, child, matched, out);
  }
}

GroupWord identity_word(int d) { return GroupWord(d); }

}  // namespace

ClopenSet gray_cylinder_window(const TildePoint& base, int left, int right, int d) {
  if (left < 0 || right < 0) throw InputError("window bounds must be non-negative");
  // The cylinder depends on the isomorphism type of the window piece only.
  using Key = std::tuple<int, int, int, PieceCode>;
  static std::mutex mu;
  static std::map<Key, ClopenSet> cache;
  const GrayPiece piece = gray_piece_window(base, left, right, d);
  Key key{d, left, right, canonical_code(piece)};
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  CylinderTarget tg{left, right, d, {}};
  for (int k = 0; k <= tg.reach(); ++k) tg.codes.push_back(canonical_code(sub_piece(piece, 0, tg.lo(k), tg.hi(k))));
  std::vector<PathPrefix> cyls;
  refine(tg, PathPrefix{}, -1, cyls);
  ClopenSet out = ClopenSet::from_cylinders(cyls, d);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::move(key), std::move(out)).first->second;
}

// ---------------------------------------------------------------------------
// Piecewise elements

PiecewiseElement PiecewiseElement::identity(int d) { return {d, {{ClopenSet::full(d), identity_word(d)}}}; }

void PiecewiseElement::validate() const {
  ClopenSet dom = ClopenSet::empty(d), img = ClopenSet::empty(d);
  for (const auto& [u, g] : pieces) {
    if (!dom.disjoint(u)) throw InputError("domains overlap at " + (dom & u).to_string());
    const ClopenSet gu = image(g, u);
    if (!img.disjoint(gu)) throw InputError("images overlap at " + (img & gu).to_string());
    dom = dom | u;
    img = img | gu;
  }
  if (!dom.is_full()) throw InputError("domains miss " + dom.complement().to_string());
  if (!img.is_full()) throw InputError("images miss " + img.complement().to_string());
}

TildePoint PiecewiseElement::evaluate(const TildePoint& p) const {
  for (const auto& [u, g] : pieces)
    if (u.contains(p)) return act(g, p);
  throw InputError("no piece contains " + p.to_string());
}

std::string PiecewiseElement::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i) os << "; ";
    os << pieces[i].first.to_string() << " -> " << pieces[i].second.to_string();
  }
  os << '}';
  return os.str();
}

PiecewiseElement normalize(const PiecewiseElement& x) {
  PiecewiseElement out{x.d, {}};
  for (const auto& [u, g0] : x.pieces) {
    if (u.is_empty()) continue;
    GroupWord g = g0;
    if (!g.is_empty() && moved_part(g, u).is_empty()) g = identity_word(x.d);
    auto it = std::find_if(out.pieces.begin(), out.pieces.end(),
                           [&](const auto& pc) { return pc.second == g || equals(pc.second, g); });
    if (it == out.pieces.end()) out.pieces.emplace_back(u, g);
    else it->first = it->first | u;
  }
  return out;
}

PiecewiseElement compose(const PiecewiseElement& x, const PiecewiseElement& y) {
  PiecewiseElement out{x.d, {}};
  for (const auto& [dy, gy] : y.pieces) {
    const GroupWord gy_inv = gy.inverse();
    for (const auto& [dx, gx] : x.pieces) {
      ClopenSet dom = dy & image(gy_inv, dx);
      if (!dom.is_empty()) out.pieces.emplace_back(std::move(dom), gx * gy);
    }
  }
  return normalize(out);
}

PiecewiseElement invert(const PiecewiseElement& x) {
  PiecewiseElement out{x.d, {}};
  for (const auto& [u, g] : x.pieces) out.pieces.emplace_back(image(g, u), g.inverse());
  return out;
}

bool equals(const PiecewiseElement& x, const PiecewiseElement& y) {
  for (const auto& [dx, gx] : x.pieces)
    for (const auto& [dy, gy] : y.pieces) {
      const ClopenSet overlap = dx & dy;
      if (overlap.is_empty()) continue;
      if (gx == gy) continue;
      if (!moved_part(gy.inverse() * gx, overlap).is_empty()) return false;
    }
  return true;
}

bool is_identity(const PiecewiseElement& x) {
  return std::all_of(x.pieces.begin(), x.pieces.end(),
                     [](const auto& pc) { return pc.second.is_empty() || moved_part(pc.second, pc.first).is_empty(); });
}

ClopenSet support(const PiecewiseElement& x) {
  ClopenSet s = ClopenSet::empty(x.d);
  for (const auto& [u, g] : x.pieces)
    if (!g.is_empty()) s = s | moved_part(g, u);
  return s;
}

std::optional<int> order_of(const PiecewiseElement& x, int bound) {
  PiecewiseElement acc = x;
  for (int k = 1; k <= bound; ++k) {
    if (is_identity(acc)) return k;
    acc = compose(acc, x);
  }
  return std::nullopt;
}

PiecewiseElement commutator(const PiecewiseElement& x, const PiecewiseElement& y) {
  return compose(x, compose(y, compose(invert(x), invert(y))));
}

// ---------------------------------------------------------------------------
// eta elements and gadgets

bool is_admissible(const ClopenSet& u, const GroupWord& g, const GroupWord& h) {
  const ClopenSet a = image(g.inverse(), u), b = image(h, u);
  return u.disjoint(a) && u.disjoint(b) && a.disjoint(b);
}

PiecewiseElement eta(const ClopenSet& u, const GroupWord& g, const GroupWord& h) {
  const int d = u.degree();
  if (u.is_empty()) return PiecewiseElement::identity(d);
  const ClopenSet a = image(g.inverse(), u), b = image(h, u);
  if (!u.disjoint(a)) throw InputError("U meets g^-1 U at " + (u & a).to_string());
  if (!u.disjoint(b)) throw InputError("U meets h U at " + (u & b).to_string());
  if (!a.disjoint(b)) throw InputError("g^-1 U meets h U at " + (a & b).to_string());
  PiecewiseElement x{d, {{a, g}, {u, h}, {b, g.inverse() * h.inverse()}}};
  x.pieces.emplace_back((a | u | b).complement(), identity_word(d));
  return normalize(x);
}

PiecewiseElement build_swap(const std::vector<std::pair<ClopenSet, GroupWord>>& pairs) {
  if (pairs.empty()) throw InputError("build_swap needs at least one pair");
  const int d = pairs.front().first.degree();
  PiecewiseElement x{d, {}};
  ClopenSet used = ClopenSet::empty(d);
  for (const auto& [c, g] : pairs) {
    const ClopenSet gc = image(g, c);
    if (c.is_empty()) throw InputError("empty set in swap");
    if (!c.disjoint(gc)) throw InputError("C meets gC at " + (c & gc).to_string());
    if (!used.disjoint(c | gc)) throw InputError("swap sets overlap at " + (used & (c | gc)).to_string());
    used = used | c | gc;
    x.pieces.emplace_back(c, g);
    x.pieces.emplace_back(gc, g.inverse());
  }
  x.pieces.emplace_back(used.complement(), identity_word(d));
  return normalize(x);
}

PiecewiseElement build_3cycle(const ClopenSet& c1, const GroupWord& g12, const GroupWord& g23) {
  return eta(image(g12, c1), g12, g23);
}

std::pair<PiecewiseElement, PiecewiseElement> three_cycle_as_commutator(const ClopenSet& c1, const GroupWord& g12,
                                                                        const GroupWord& g23) {
  return {build_swap({{c1, g12}}), build_swap({{c1, g23 * g12}})};
}

// ---------------------------------------------------------------------------
// Convenient triplets

std::vector<GroupWord> tilde_s(const GeneratingSet& s0) {
  std::vector<GroupWord> base{GroupWord(s0.d)};
  for (const auto& g : s0.symmetric()) base.push_back(GroupWord::of(s0.d, g));
  // Level-3 action as a cheap bucket key before the exact comparison.
  std::vector<Word> probe{{}};
  for (int k = 0; k < 3; ++k) {
    std::vector<Word> next;
    for (const auto& w : probe)
      for (int x = 0; x < s0.d; ++x) {
        Word v = w;
        v.push_back(static_cast<Letter>(x));
        next.push_back(v);
      }
    probe = std::move(next);
  }
  std::map<std::vector<Word>, std::vector<std::size_t>> buckets;
  std::vector<GroupWord> out;
  for (const auto& x : base)
    for (const auto& y : base) {
      GroupWord w = x * y;
      std::vector<Word> key;
      for (const auto& p : probe) key.push_back(w.act(p));
      auto& bucket = buckets[key];
      const bool dup = std::any_of(bucket.begin(), bucket.end(), [&](std::size_t i) { return equals(out[i], w); });
      if (dup) continue;
      bucket.push_back(out.size());
      out.push_back(std::move(w));
    }
  return out;
}

bool consecutive_projections(const TildePoint& gamma, const GroupWord& s, const GroupWord& t) {
  const GrayWord c = gray_projection(gamma);
  const GrayWord l = gray_projection(act(s.inverse(), gamma));
  const GrayWord r = gray_projection(act(t, gamma));
  const auto [na, nb] = gray_neighbors(c);
  return l != r && (l == na || l == nb) && (r == na || r == nb);
}

std::vector<ConvenientTriplet> convenient_triplets(const TildePoint& gamma, int n,
                                                   const std::vector<GroupWord>& candidates) {
  std::vector<ConvenientTriplet> out;
  if (candidates.empty()) return out;
  const int d = candidates.front().degree();
  const GrayWord c = gray_projection(gamma);
  const auto [na, nb] = gray_neighbors(c);
  std::vector<std::size_t> to_a, to_b;  // candidates moving gamma to each neighbour
  std::vector<std::size_t> inv_a, inv_b;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const GrayWord fwd = gray_projection(act(candidates[i], gamma));
    const GrayWord bwd = gray_projection(act(candidates[i].inverse(), gamma));
    if (fwd == na) to_a.push_back(i);
    if (fwd == nb) to_b.push_back(i);
    if (bwd == na) inv_a.push_back(i);
    if (bwd == nb) inv_b.push_back(i);
  }
  if ((inv_a.empty() || to_b.empty()) && (inv_b.empty() || to_a.empty())) return out;
  const ClopenSet u = gray_cylinder(gamma, n, d);
  std::map<std::size_t, ClopenSet> back, fwd;
  auto back_of = [&](std::size_t i) -> const ClopenSet& {
    auto it = back.find(i);
    if (it == back.end()) it = back.emplace(i, image(candidates[i].inverse(), u)).first;
    return it->second;
  };
  auto fwd_of = [&](std::size_t i) -> const ClopenSet& {
    auto it = fwd.find(i);
    if (it == fwd.end()) it = fwd.emplace(i, image(candidates[i], u)).first;
    return it->second;
  };
  auto add_all = [&](const std::vector<std::size_t>& ss, const std::vector<std::size_t>& ts) {
    for (std::size_t si : ss)
      for (std::size_t ti : ts) {
        const ClopenSet& a = back_of(si);
        const ClopenSet& b = fwd_of(ti);
        if (u.disjoint(a) && u.disjoint(b) && a.disjoint(b)) out.push_back({gamma, n, candidates[si], candidates[ti], u});
      }
  };
  add_all(inv_a, to_b);
  add_all(inv_b, to_a);
  return out;
}

namespace {

struct TrickChoice {
  ClopenSet ul, ur;
  GroupWord s_prime, t_prime;
};

struct TrickSets {
  TildePoint sg, tg;  // s^-1 gamma and t gamma
  ClopenSet ul, ur;
};

TrickSets trick_sets(const ConvenientTriplet& tr) {
  const int d = tr.u.degree();
  TrickSets ts{act(tr.s.inverse(), tr.gamma), act(tr.t, tr.gamma), {}, {}};
  ts.ul = gray_cylinder(ts.sg, tr.n - 1, d);
  ts.ur = gray_cylinder(ts.tg, tr.n - 1, d);
  return ts;
}

bool six_set_premise(const std::vector<ClopenSet>& l) {
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = i + 1; j < l.size(); ++j) {
      const bool meet = !l[i].disjoint(l[j]);
      if (i == 2 && j == 3) {
        if (!meet) return false;
      } else if (meet) {
        return false;
      }
    }
  return true;
}

// Admissible s' for (U_l, s', s) and t' for (U_r, t, t'), convenient ones first.
std::optional<TrickChoice> choose_primes(const ConvenientTriplet& tr, const TrickSets& ts,
                                         const std::vector<GroupWord>& candidates, bool require_convenient) {
  const ClopenSet s_ul = image(tr.s, ts.ul);
  const ClopenSet ti_ur = image(tr.t.inverse(), ts.ur);
  std::vector<std::pair<GroupWord, ClopenSet>> sp, tp;  // with s'^-1 U_l and t' U_r
  std::vector<std::pair<GroupWord, ClopenSet>> sp_late, tp_late;
  for (const auto& c : candidates) {
    const ClopenSet back = image(c.inverse(), ts.ul);
    if (ts.ul.disjoint(back) && ts.ul.disjoint(s_ul) && back.disjoint(s_ul)) {
      if (consecutive_projections(ts.sg, c, tr.s)) sp.emplace_back(c, back);
      else if (!require_convenient) sp_late.emplace_back(c, back);
    }
    const ClopenSet fwd = image(c, ts.ur);
    if (ts.ur.disjoint(ti_ur) && ts.ur.disjoint(fwd) && ti_ur.disjoint(fwd)) {
      if (consecutive_projections(ts.tg, tr.t, c)) tp.emplace_back(c, fwd);
      else if (!require_convenient) tp_late.emplace_back(c, fwd);
    }
  }
  sp.insert(sp.end(), sp_late.begin(), sp_late.end());
  tp.insert(tp.end(), tp_late.begin(), tp_late.end());
  for (const auto& [s2, back] : sp)
    for (const auto& [t2, fwd] : tp)
      if (six_set_premise({back, ts.ul, s_ul, ti_ur, ts.ur, fwd})) return TrickChoice{ts.ul, ts.ur, s2, t2};
  return std::nullopt;
}

}  // namespace

CommutatorTrickReport commutator_trick_check(const ConvenientTriplet& tr, const std::vector<GroupWord>& candidates) {
  CommutatorTrickReport rep;
  const int d = tr.u.degree();
  if (tr.n < 2) {
    rep.failure = "radius below 2 has no marginals";
    return rep;
  }
  rep.convenient = consecutive_projections(tr.gamma, tr.s, tr.t) && is_admissible(tr.u, tr.s, tr.t);
  if (!rep.convenient) {
    rep.failure = "triplet is not convenient";
    return rep;
  }
  const TrickSets ts = trick_sets(tr);
  // Which marginal lies on the s side depends on the orientation.
  const bool s_left = gray_projection(ts.sg) == gray_neighbor(gray_projection(tr.gamma), EdgeType::kA);
  const ClopenSet ml = gray_cylinder_window(tr.gamma, tr.n, tr.n - 2, d);
  const ClopenSet mr = gray_cylinder_window(tr.gamma, tr.n - 2, tr.n, d);
  const ClopenSet s_ul = image(tr.s, ts.ul);
  const ClopenSet ti_ur = image(tr.t.inverse(), ts.ur);
  rep.marginal_identity = (ml & mr) == tr.u && s_ul == (s_left ? ml : mr) && ti_ur == (s_left ? mr : ml);
  if (!rep.marginal_identity) rep.failure = "marginal cylinders do not intersect to U";
  const auto choice = choose_primes(tr, ts, candidates, false);
  if (!choice) {
    if (rep.failure.empty()) rep.failure = "no s', t' satisfy the six-set premise";
    return rep;
  }
  rep.premise = true;
  rep.s_prime = choice->s_prime;
  rep.t_prime = choice->t_prime;
  const PiecewiseElement lhs = commutator(eta(ts.ur, tr.t, choice->t_prime), invert(eta(ts.ul, choice->s_prime, tr.s)));
  rep.identity_holds = equals(lhs, eta(tr.u, tr.s, tr.t));
  if (!rep.identity_holds && rep.failure.empty()) rep.failure = "commutator differs from eta(U,s,t)";
  return rep;
}

std::optional<std::pair<ConvenientTriplet, ConvenientTriplet>> split_triplet(const ConvenientTriplet& tr,
                                                                             const std::vector<GroupWord>& candidates) {
  if (tr.n < 2) return std::nullopt;
  const TrickSets ts = trick_sets(tr);
  const auto choice = choose_primes(tr, ts, candidates, true);
  if (!choice) return std::nullopt;
  return std::make_pair(ConvenientTriplet{ts.sg, tr.n - 1, choice->s_prime, tr.s, ts.ul},
                        ConvenientTriplet{ts.tg, tr.n - 1, tr.t, choice->t_prime, ts.ur});
}

std::vector<TMember> generating_set_T(const std::vector<TildePoint>& basepoints, int n0,
                                      const std::vector<GroupWord>& candidates) {
  std::vector<TMember> out;
  if (candidates.empty()) return out;
  const int d = candidates.front().degree();
  std::map<PieceCode, bool> seen_pieces;
  std::map<std::string, std::vector<std::size_t>> by_key;
  for (const auto& gamma : basepoints) {
    // Isomorphic pieces give the same cylinder and the same triplets.
    if (!seen_pieces.emplace(canonical_code(gray_piece(gamma, n0, d)), true).second) continue;
    for (auto& tr : convenient_triplets(gamma, n0, candidates)) {
      PiecewiseElement x = eta(tr.u, tr.s, tr.t);
      const std::string key = tr.u.to_string() + "|" + image(tr.s.inverse(), tr.u).to_string() + "|" +
                              image(tr.t, tr.u).to_string();
      auto& bucket = by_key[key];
      const bool dup =
          std::any_of(bucket.begin(), bucket.end(), [&](std::size_t i) { return equals(out[i].element, x); });
      if (dup) continue;
      bucket.push_back(out.size());
      out.push_back({std::move(tr), std::move(x)});
    }
  }
  return out;
}

std::optional<std::size_t> find_in_T(const std::vector<TMember>& t, const PiecewiseElement& x) {
  const ClopenSet sx = support(x);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& u = t[i].triplet.u;
    if (!u.subset_of(sx)) continue;
    if (equals(t[i].element, x)) return i;
  }
  return std::nullopt;
}

std::size_t TExpression::leaf_count() const {
  if (leaf) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.leaf_count();
  return n;
}

PiecewiseElement TExpression::evaluate(const std::vector<TMember>& t) const {
  if (leaf) return t[*leaf].element;
  return commutator(children[0].evaluate(t), invert(children[1].evaluate(t)));
}

std::optional<TExpression> express_in_T(const ConvenientTriplet& tr, const std::vector<TMember>& t, int n0,
                                        const std::vector<GroupWord>& candidates) {
  if (tr.n < n0) return std::nullopt;
  if (tr.n == n0) {
    const auto i = find_in_T(t, eta(tr.u, tr.s, tr.t));
    if (!i) return std::nullopt;
    TExpression e;
    e.leaf = *i;
    return e;
  }
  const auto parts = split_triplet(tr, candidates);
  if (!parts) return std::nullopt;
  auto right = express_in_T(parts->second, t, n0, candidates);
  auto left = express_in_T(parts->first, t, n0, candidates);
  if (!right || !left) return std::nullopt;
  TExpression e;
  e.children.push_back(std::move(*right));
  e.children.push_back(std::move(*left));
  return e;
}

}  // namespace mgw
