#include "mgw/searches.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "mgw/errors.hpp"

namespace mgw {

namespace {

constexpr std::size_t kPairStateCap = 2'000'000;

GroupWord path_word(int d, const std::vector<Generator>& gens, const std::vector<int>& path) {
  // path lists generator indices in the order they are applied.
  GroupWord g(d);
  for (int i : path) g = GroupWord::of(d, gens[static_cast<std::size_t>(i)]) * g;
  return g;
}

std::string word_key(const Word& w) { return std::string(w.begin(), w.end()); }

// First finite position where p and q differ, or 0 when they agree at every
// finite position (then both are zero-tailed and differ at infinity).
int first_difference(const TildePoint& p, const TildePoint& q) {
  auto span = [](const TildePoint& x) {
    return x.prefix().size() + (x.is_zero_pair() ? 1 : x.period().size());
  };
  const std::size_t n = std::max(p.prefix().size(), q.prefix().size()) + span(p) * span(q) + 2;
  for (std::size_t i = 1; i <= n; ++i)
    if (p.at(static_cast<int>(i)) != q.at(static_cast<int>(i))) return static_cast<int>(i);
  return 0;
}

Permutation three_cycle_avoiding(int d, int move, const std::vector<int>& fixed) {
  std::vector<int> pts{move};
  for (int x = 0; x < d && pts.size() < 3; ++x)
    if (x != move && std::find(fixed.begin(), fixed.end(), x) == fixed.end()) pts.push_back(x);
  if (pts.size() < 3) throw InputError("degree too small for a separating 3-cycle");
  return Permutation::from_cycles(d, {pts});
}

// An element of A u B fixing x and moving y; requires different loop classes.
Generator separating_generator(int d, const TildePoint& x, const TildePoint& y) {
  const LoopClass cx = loop_class(x), cy = loop_class(y);
  if (cx.first != cy.first) return Generator::a(three_cycle_avoiding(d, cy.first, {cx.first}));
  if (cx.pair_a != cy.pair_a) return Generator::b_root(three_cycle_avoiding(d, cy.pair_a, {0, cx.pair_a}));
  return Generator::b_single(d, cx.pair_a, three_cycle_avoiding(d, cy.pair_b, {cx.pair_b}));
}

// One concrete element of A u B per S-move of p: a 3-cycle on the first
// letter, or a B element rewriting the visible pair (a, b) to (a2, b2).
std::vector<Generator> move_generators(const TildePoint& p, int d) {
  std::vector<Generator> out;
  auto carry = [&](Letter from, Letter to, std::vector<int> avoid) {
    if (from == to) return Permutation::identity(d);
    avoid.push_back(from);
    avoid.push_back(to);
    int t = 0;
    while (std::find(avoid.begin(), avoid.end(), t) != avoid.end()) ++t;
    return Permutation::from_cycles(d, {{from, to, t}});
  };
  const Letter x = p.at(1);
  for (int x2 = 0; x2 < d; ++x2)
    if (x2 != x) out.push_back(Generator::a(carry(x, static_cast<Letter>(x2), {})));
  const Position f = p.first_nonzero();
  const Letter a = p.at(f), b = p.at(f.next());
  for (int a2 = 1; a2 < d; ++a2)
    for (int b2 = 0; b2 < d; ++b2) {
      if (a2 == a && b2 == b) continue;
      std::vector<Permutation> sigma(static_cast<std::size_t>(d), Permutation::identity(d));
      sigma[a] = carry(b, static_cast<Letter>(b2), {});
      out.push_back(Generator::b(carry(a, static_cast<Letter>(a2), {0}), std::move(sigma)));
    }
  return out;
}

struct PairState {
  TildePoint p, q;
  friend auto operator<=>(const PairState&, const PairState&) = default;
};

// BFS over (k p, k q) until `done` accepts a state; returns the path of k.
template <class Done>
std::optional<std::vector<int>> pair_bfs(const std::vector<Generator>& gens, const TildePoint& p, const TildePoint& q,
                                         int max_length, Done done) {
  std::map<PairState, std::pair<int, int>> seen;  // state -> (parent id, generator)
  std::vector<PairState> states{{p, q}};
  std::vector<std::pair<int, int>> parent{{-1, -1}};
  seen.emplace(states[0], parent[0]);
  std::size_t level_begin = 0;
  auto path_to = [&](int id) {
    std::vector<int> path;
    for (int v = id; parent[static_cast<std::size_t>(v)].first >= 0; v = parent[static_cast<std::size_t>(v)].first)
      path.push_back(parent[static_cast<std::size_t>(v)].second);
    std::reverse(path.begin(), path.end());
    return path;
  };
  if (done(states[0])) return std::vector<int>{};
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t level_end = states.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (std::size_t g = 0; g < gens.size(); ++g) {
        PairState next{act(gens[g], states[i].p), act(gens[g], states[i].q)};
        if (seen.count(next)) continue;
        seen.emplace(next, std::make_pair(static_cast<int>(i), static_cast<int>(g)));
        states.push_back(next);
        parent.emplace_back(static_cast<int>(i), static_cast<int>(g));
        if (done(next)) return path_to(static_cast<int>(states.size() - 1));
        if (states.size() > kPairStateCap) throw ResourceError("pair search exceeded its state cap");
      }
    }
    level_begin = level_end;
  }
  return std::nullopt;
}

}  // namespace

LoopClass loop_class(const TildePoint& p) {
  const Position f = p.first_nonzero();
  return {p.at(1), p.at(f), p.at(f.next())};
}

std::vector<std::pair<LoopClass, ClopenSet>> subshift_partition(int d) {
  const auto& dg = diagram(d);
  std::map<LoopClass, std::vector<PathPrefix>> classes;
  for (int x1 = 0; x1 < d; ++x1)
    for (int x2 = 0; x2 < d; ++x2)
      for (const auto& v : dg.level_vertices()) {
        LoopClass c;
        c.first = static_cast<Letter>(x1);
        if (x1 != 0) c = {c.first, static_cast<Letter>(x1), static_cast<Letter>(x2)};
        else if (x2 != 0) c = {0, static_cast<Letter>(x2), v.star ? v.a : Letter{0}};
        else c = {0, v.a, v.b};
        classes[c].push_back(PathPrefix{{static_cast<Letter>(x1), static_cast<Letter>(x2)}, v});
      }
  std::vector<std::pair<LoopClass, ClopenSet>> out;
  for (const auto& [c, cyls] : classes) out.emplace_back(c, ClopenSet::from_cylinders(cyls, d));
  return out;
}

std::optional<Separation> separation_search(const GeneratingSet& s0, const TildePoint& p, const TildePoint& q,
                                            int max_length) {
  if (p == q) throw InputError("separation needs distinct points");
  const int d = s0.d;
  if (loop_class(p) != loop_class(q)) return Separation{GroupWord(d), "trivial"};
  const std::vector<Generator> gens = s0.symmetric();
  auto separated = [&](const GroupWord& g) { return loop_class(act(g, p)) != loop_class(act(g, q)); };

  // Steer the common prefix w to 0..0x (finite difference at r = |w| + 1) or
  // to 0..0 (difference at infinity), so that the difference becomes visible.
  const int r = first_difference(p, q);
  const int m = r > 0 ? r - 1 : static_cast<int>(p.prefix().size());
  if (m >= 1 && m <= 7) {
    const Word w = p.head(m);
    auto is_target = [&](const Word& u) {
      for (int i = 0; i + 1 < m; ++i)
        if (u[static_cast<std::size_t>(i)] != 0) return false;
      return r > 0 || u.back() == 0;
    };
    std::unordered_map<std::string, std::pair<std::string, int>> parent;
    std::deque<std::pair<Word, int>> queue{{w, 0}};
    parent.emplace(word_key(w), std::make_pair(std::string(), -1));
    while (!queue.empty()) {
      auto [u, len] = queue.front();
      queue.pop_front();
      if (is_target(u)) {
        std::vector<int> path;
        for (std::string k = word_key(u); parent.at(k).second >= 0; k = parent.at(k).first) path.push_back(parent.at(k).second);
        std::reverse(path.begin(), path.end());
        GroupWord g = path_word(d, gens, path);
        if (separated(g)) return Separation{g, "prefix-steering"};
      }
      if (len == max_length) continue;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Word v = u;
        gens[i].apply_in_place(v);
        if (parent.emplace(word_key(v), std::make_pair(word_key(u), static_cast<int>(i))).second)
          queue.emplace_back(std::move(v), len + 1);
      }
    }
  }
  const auto path = pair_bfs(gens, p, q, max_length,
                             [](const PairState& s) { return loop_class(s.p) != loop_class(s.q); });
  if (!path) return std::nullopt;
  return Separation{path_word(d, gens, *path), "pair-bfs"};
}

std::optional<GroupWord> stabilizer_separation(const GeneratingSet& s0, const TildePoint& p, const TildePoint& q,
                                               int radius) {
  if (p == q) throw InputError("stabilizer separation needs distinct points");
  const int d = s0.d;
  // BFS over pair states where each step is one S-move read off the first
  // point; while the classes agree the same element moves both points alike.
  std::map<PairState, int> seen;
  std::vector<PairState> states{{p, q}};
  std::vector<std::pair<int, Generator>> parent{{-1, Generator::identity()}};
  seen.emplace(states[0], 0);
  std::optional<std::size_t> hit;
  if (loop_class(p) != loop_class(q)) hit = 0;
  std::size_t level_begin = 0;
  for (int len = 1; len <= radius && !hit; ++len) {
    const std::size_t level_end = states.size();
    for (std::size_t i = level_begin; i < level_end && !hit; ++i) {
      for (const Generator& g : move_generators(states[i].p, d)) {
        PairState next{act(g, states[i].p), act(g, states[i].q)};
        if (!seen.emplace(next, static_cast<int>(states.size())).second) continue;
        states.push_back(next);
        parent.emplace_back(static_cast<int>(i), g);
        if (loop_class(next.p) != loop_class(next.q)) {
          hit = states.size() - 1;
          break;
        }
        if (states.size() > kPairStateCap) throw ResourceError("pair search exceeded its state cap");
      }
    }
    level_begin = level_end;
  }
  if (!hit) return std::nullopt;
  GroupWord k(d);
  for (int v = static_cast<int>(*hit); parent[static_cast<std::size_t>(v)].first >= 0;
       v = parent[static_cast<std::size_t>(v)].first)
    k = k * GroupWord::of(d, parent[static_cast<std::size_t>(v)].second);
  const GroupWord s = GroupWord::of(d, separating_generator(d, act(k, p), act(k, q)));
  GroupWord g = k.inverse() * s * k;
  if (act(g, p) != p || act(g, q) == q) throw DiagnosticError("separating conjugate failed its own check");
  return g;
}

bool is_brieussel_witness(const GroupWord& w, const Generator& s) {
  const auto dec = wreath_decompose(w);
  if (!dec.root.is_identity()) return false;
  if (!equals(dec.sections[0], GroupWord::of(w.degree(), s))) return false;
  for (std::size_t x = 1; x < dec.sections.size(); ++x)
    if (!is_identity(dec.sections[x])) return false;
  return true;
}

std::vector<BrieusselResult> brieussel_search(const GeneratingSet& s0, int half_length, int key_depth) {
  const int d = s0.d;
  const std::vector<Generator> gens = s0.symmetric();
  std::vector<Word> probe{{}};
  for (int k = 0; k < key_depth; ++k) {
    std::vector<Word> next;
    for (const auto& w : probe)
      for (int x = 0; x < d; ++x) {
        Word v = w;
        v.push_back(static_cast<Letter>(x));
        next.push_back(std::move(v));
      }
    probe = std::move(next);
  }
  auto key_of = [&](auto&& f) {
    std::string key;
    key.reserve(probe.size() * static_cast<std::size_t>(key_depth));
    for (const auto& w : probe) {
      const Word v = f(w);
      key.append(v.begin(), v.end());
    }
    return key;
  };
  // One shortest representative per level-key_depth action; every action of a
  // word of length <= half_length is present.
  std::unordered_map<std::string, GroupWord> rep;
  std::vector<GroupWord> ball{GroupWord(d)};
  rep.emplace(key_of([](const Word& w) { return w; }), GroupWord(d));
  std::size_t begin = 0;
  for (int len = 1; len <= half_length; ++len) {
    const std::size_t end = ball.size();
    for (std::size_t i = begin; i < end; ++i)
      for (const auto& s : gens) {
        GroupWord h = ball[i] * GroupWord::of(d, s);
        if (rep.emplace(key_of([&](const Word& w) { return h.act(w); }), h).second) ball.push_back(std::move(h));
      }
    begin = end;
  }
  std::vector<BrieusselResult> out;
  for (std::size_t ti = 0; ti < s0.gens.size(); ++ti) {
    const GroupWord target_section = GroupWord::of(d, s0.gens[ti]);
    BrieusselResult res{s0.ids[ti], std::nullopt};
    for (const auto& v : ball) {
      const GroupWord vi = v.inverse();
      // Level action of t v^-1 where t = (s, e, ..., e).
      const std::string key = key_of([&](const Word& w) {
        Word x = vi.act(w);
        if (!x.empty() && x[0] == 0) {
          const Word tail = target_section.act(Word(x.begin() + 1, x.end()));
          std::copy(tail.begin(), tail.end(), x.begin() + 1);
        }
        return x;
      });
      const auto it = rep.find(key);
      if (it == rep.end()) continue;
      GroupWord w = it->second * v;
      if (res.word && res.word->length() <= w.length()) continue;
      if (is_brieussel_witness(w, s0.gens[ti])) res.word = std::move(w);
    }
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace mgw
