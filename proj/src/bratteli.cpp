#include "mgw/bratteli.hpp"

#include <array>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>

#include "mgw/errors.hpp"

namespace mgw {

std::string BVertex::to_string() const {
  if (top) return "T";
  return std::string{static_cast<char>('0' + a), static_cast<char>('0' + b), star ? '*' : '0'};
}

BVertex BVertex::parse(const std::string& text) {
  if (text == "T") return top_vertex();
  if (text.size() != 3 || (text[2] != '*' && text[2] != '0')) throw InputError("bad vertex: " + text);
  Word ab = word_from_string(text.substr(0, 2));
  if (ab[0] == 0) throw InputError("vertex needs a nonzero first letter: " + text);
  return {ab[0], ab[1], text[2] == '*', false};
}

BratteliDiagram::BratteliDiagram(int d) : d_(d) {
  if (d < 2 || d > 10) throw InputError("diagram degree out of range");
  for (int star = 1; star >= 0; --star)
    for (int a = 1; a < d; ++a)
      for (int b = 0; b < d; ++b) level_.push_back({static_cast<Letter>(a), static_cast<Letter>(b), star == 1, false});
  for (int x = 0; x < d; ++x)
    for (const auto& v : level_) top_edges_.push_back({static_cast<Letter>(x), v});
  for (const auto& v : level_) {
    std::vector<BEdge> e;
    if (!v.star) {
      e.push_back({0, {v.a, v.b, false, false}});
      e.push_back({0, {v.a, v.b, true, false}});
    } else if (v.b != 0) {
      for (int c = 0; c < d; ++c) e.push_back({v.a, {v.b, static_cast<Letter>(c), true, false}});
    } else {
      for (int c = 1; c < d; ++c)
        for (int c2 = 0; c2 < d; ++c2) e.push_back({v.a, {static_cast<Letter>(c), static_cast<Letter>(c2), false, false}});
    }
    edges_.push_back(std::move(e));
  }
}

std::size_t BratteliDiagram::vertex_index(const BVertex& v) const {
  if (v.top) throw InputError("top vertex has no level index");
  const std::size_t base = v.star ? 0 : static_cast<std::size_t>((d_ - 1) * d_);
  return base + static_cast<std::size_t>((v.a - 1) * d_ + v.b);
}

const std::vector<BEdge>& BratteliDiagram::edges(const BVertex& v) const {
  return v.top ? top_edges_ : edges_[vertex_index(v)];
}

std::size_t BratteliDiagram::edge_index(const BVertex& from, Letter label, const BVertex& target) const {
  if (from.top) return static_cast<std::size_t>(label) * level_.size() + vertex_index(target);
  if (!from.star) return target.star ? 1 : 0;
  if (from.b != 0) return target.b;
  return static_cast<std::size_t>((target.a - 1) * d_ + target.b);
}

BVertex BratteliDiagram::predecessor(const BVertex& v, Letter label) {
  if (label != 0) return {label, v.star ? v.a : Letter{0}, true, false};
  return {v.a, v.b, false, false};
}

const BratteliDiagram& diagram(int d) {
  static std::array<std::unique_ptr<BratteliDiagram>, 11> cache;
  static std::mutex mu;
  if (d < 2 || d > 10) throw InputError("diagram degree out of range");
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[static_cast<std::size_t>(d)];
  if (!slot) slot = std::make_unique<BratteliDiagram>(d);
  return *slot;
}

BVertex PathPrefix::vertex_at(int k) const {
  if (k < 0 || k > depth()) throw InputError("level outside the path");
  if (k == 0) return BVertex::top_vertex();
  BVertex v = end;
  for (int m = depth(); m > k; --m) v = BratteliDiagram::predecessor(v, labels[static_cast<std::size_t>(m - 1)]);
  return v;
}

bool PathPrefix::is_prefix_of(const PathPrefix& other) const {
  if (depth() > other.depth()) return false;
  if (!std::equal(labels.begin(), labels.end(), other.labels.begin())) return false;
  return other.vertex_at(depth()) == end;
}

std::string PathPrefix::to_string() const { return word_to_string(labels) + "@" + end.to_string(); }

PathPrefix PathPrefix::parse(const std::string& text) {
  const auto at = text.find('@');
  if (at == std::string::npos) throw InputError("path text needs '@': " + text);
  PathPrefix p{word_from_string(text.substr(0, at)), BVertex::parse(text.substr(at + 1))};
  if (p.end.top != p.labels.empty()) throw InputError("top vertex only ends the empty path: " + text);
  return p;
}

namespace {

// Data (first nonzero letter after level n, next letter) plus whether letter n+1 is nonzero.
BVertex data_after(const TildePoint& p, int n) {
  const Letter x = p.at(n + 1);
  if (x != 0) return {x, p.at(n + 2), true, false};
  const int scan_end = static_cast<int>(p.prefix().size() + p.period().size()) + n + 2;
  for (int m = n + 2; m <= scan_end; ++m) {
    const Letter y = p.at(m);
    if (y != 0) return {y, p.at(m + 1), false, false};
    if (p.is_zero_pair() && m > static_cast<int>(p.prefix().size())) break;
  }
  if (!p.is_zero_pair()) throw DiagnosticError("periodic point without nonzero letter");
  return {p.pair_a(), p.pair_b(), false, false};
}

// Letters of p from position n+1 on, as a point.
TildePoint drop_prefix_impl(const TildePoint& p, int n) {
  const int plen = static_cast<int>(p.prefix().size());
  if (p.is_zero_pair()) {
    Word rest;
    for (int m = n + 1; m <= plen; ++m) rest.push_back(p.at(m));
    return TildePoint::zero_pair(std::move(rest), p.pair_a(), p.pair_b());
  }
  const int L = std::max(n, plen);
  Word rest, period;
  for (int m = n + 1; m <= L; ++m) rest.push_back(p.at(m));
  for (int m = L + 1; m <= L + static_cast<int>(p.period().size()); ++m) period.push_back(p.at(m));
  return TildePoint::periodic(std::move(rest), std::move(period));
}

TildePoint concat(const Word& labels, const TildePoint& tail) {
  Word prefix = labels;
  prefix.insert(prefix.end(), tail.prefix().begin(), tail.prefix().end());
  if (tail.is_zero_pair()) return TildePoint::zero_pair(std::move(prefix), tail.pair_a(), tail.pair_b());
  return TildePoint::periodic(std::move(prefix), tail.period());
}

}  // namespace

TildePoint tail_after(const TildePoint& p, int n) { return drop_prefix_impl(p, n); }

BVertex vertex_after(const TildePoint& p, int n) { return n == 0 ? BVertex::top_vertex() : data_after(p, n); }

BVertex continuation_vertex(const TildePoint& t) { return data_after(t, 0); }

PathPrefix encode(const TildePoint& p, int depth) {
  if (depth < 0) throw InputError("depth must be non-negative");
  return {p.head(depth), vertex_after(p, depth)};
}

TildePoint decode(const PathPrefix& eta, const TildePoint& tail) {
  if (!eta.end.top && continuation_vertex(tail) != eta.end)
    throw InputError("tail " + tail.to_string() + " inconsistent with end vertex " + eta.end.to_string());
  return concat(eta.labels, tail);
}

TildePoint decode_zero_ray(const PathPrefix& eta) {
  if (eta.end.top || eta.end.star) throw InputError("zero ray needs an (ab,0) end vertex");
  return TildePoint::zero_pair(eta.labels, eta.end.a, eta.end.b);
}

bool cylinder_member(const PathPrefix& eta, const TildePoint& p) {
  const int n = eta.depth();
  if (p.head(n) != eta.labels) return false;
  if (eta.end.top) return true;
  // (ab,*): the sequence continues with a b. (ab,0): it continues with 0^m, m >= 1
  // (possibly infinite), then a b.
  if (eta.end.star) return p.at(n + 1) == eta.end.a && p.at(n + 2) == eta.end.b;
  if (p.at(n + 1) != 0) return false;
  const Position k = p.first_nonzero();
  if (k.is_finite() && k.n <= n) {
    // First nonzero of the whole sequence is inside the labels; locate the one after n.
    return data_after(p, n) == eta.end;
  }
  return p.at(k) == eta.end.a && p.at(k.next()) == eta.end.b;
}

// ---------------------------------------------------------------------------
// Clopen sets

struct ClopenSet::Node {
  enum class Kind { kEmpty, kFull, kSplit };
  Kind kind = Kind::kEmpty;
  std::vector<NodePtr> kids;
};

namespace {

using Node = ClopenSet::Node;
using NodePtr = ClopenSet::NodePtr;

const NodePtr& empty_node() {
  static const NodePtr n = std::make_shared<const Node>(Node{Node::Kind::kEmpty, {}});
  return n;
}

const NodePtr& full_node() {
  static const NodePtr n = std::make_shared<const Node>(Node{Node::Kind::kFull, {}});
  return n;
}

NodePtr make_split(std::vector<NodePtr> kids) {
  bool all_full = true, all_empty = true;
  for (const auto& k : kids) {
    all_full = all_full && k->kind == Node::Kind::kFull;
    all_empty = all_empty && k->kind == Node::Kind::kEmpty;
  }
  if (all_full) return full_node();
  if (all_empty) return empty_node();
  return std::make_shared<const Node>(Node{Node::Kind::kSplit, std::move(kids)});
}

NodePtr unite(const NodePtr& x, const NodePtr& y) {
  if (x == y) return x;
  if (x->kind == Node::Kind::kFull || y->kind == Node::Kind::kEmpty) return x;
  if (y->kind == Node::Kind::kFull || x->kind == Node::Kind::kEmpty) return y;
  std::vector<NodePtr> kids(x->kids.size());
  for (std::size_t i = 0; i < kids.size(); ++i) kids[i] = unite(x->kids[i], y->kids[i]);
  return make_split(std::move(kids));
}

NodePtr meet(const NodePtr& x, const NodePtr& y) {
  if (x == y) return x;
  if (x->kind == Node::Kind::kEmpty || y->kind == Node::Kind::kFull) return x;
  if (y->kind == Node::Kind::kEmpty || x->kind == Node::Kind::kFull) return y;
  std::vector<NodePtr> kids(x->kids.size());
  for (std::size_t i = 0; i < kids.size(); ++i) kids[i] = meet(x->kids[i], y->kids[i]);
  return make_split(std::move(kids));
}

NodePtr flip(const NodePtr& x) {
  if (x->kind == Node::Kind::kEmpty) return full_node();
  if (x->kind == Node::Kind::kFull) return empty_node();
  std::vector<NodePtr> kids(x->kids.size());
  for (std::size_t i = 0; i < kids.size(); ++i) kids[i] = flip(x->kids[i]);
  return make_split(std::move(kids));
}

bool same(const NodePtr& x, const NodePtr& y) {
  if (x == y) return true;
  if (x->kind != y->kind) return false;
  if (x->kind != Node::Kind::kSplit) return true;
  for (std::size_t i = 0; i < x->kids.size(); ++i)
    if (!same(x->kids[i], y->kids[i])) return false;
  return true;
}

NodePtr chain(const BratteliDiagram& dg, const PathPrefix& eta, int k) {
  if (k == eta.depth()) return full_node();
  const BVertex from = eta.vertex_at(k);
  const BVertex to = eta.vertex_at(k + 1);
  std::vector<NodePtr> kids(dg.edges(from).size(), empty_node());
  kids[dg.edge_index(from, eta.labels[static_cast<std::size_t>(k)], to)] = chain(dg, eta, k + 1);
  return make_split(std::move(kids));
}

void collect(const BratteliDiagram& dg, const NodePtr& x, PathPrefix& cur, std::vector<PathPrefix>& out) {
  if (x->kind == Node::Kind::kEmpty) return;
  if (x->kind == Node::Kind::kFull) {
    out.push_back(cur);
    return;
  }
  const auto& es = dg.edges(cur.end);
  const BVertex saved = cur.end;
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (x->kids[i]->kind == Node::Kind::kEmpty) continue;
    cur.labels.push_back(es[i].label);
    cur.end = es[i].target;
    collect(dg, x->kids[i], cur, out);
    cur.labels.pop_back();
    cur.end = saved;
  }
}

}  // namespace

ClopenSet::ClopenSet() : root_(empty_node()) {}
ClopenSet ClopenSet::empty(int d) { return ClopenSet(d, empty_node()); }
ClopenSet ClopenSet::full(int d) { return ClopenSet(d, full_node()); }

ClopenSet ClopenSet::cylinder(const PathPrefix& eta, int d) { return ClopenSet(d, chain(diagram(d), eta, 0)); }

ClopenSet ClopenSet::from_cylinders(const std::vector<PathPrefix>& cyls, int d) {
  ClopenSet out = empty(d);
  for (const auto& c : cyls) out = out | cylinder(c, d);
  return out;
}

ClopenSet ClopenSet::parse(const std::string& text, int d) {
  std::vector<PathPrefix> cyls;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) cyls.push_back(PathPrefix::parse(item));
  return from_cylinders(cyls, d);
}

bool ClopenSet::is_empty() const { return root_->kind == Node::Kind::kEmpty; }
bool ClopenSet::is_full() const { return root_->kind == Node::Kind::kFull; }
ClopenSet ClopenSet::operator|(const ClopenSet& o) const { return ClopenSet(d_, unite(root_, o.root_)); }
ClopenSet ClopenSet::operator&(const ClopenSet& o) const { return ClopenSet(d_, meet(root_, o.root_)); }
ClopenSet ClopenSet::complement() const { return ClopenSet(d_, flip(root_)); }
bool operator==(const ClopenSet& x, const ClopenSet& y) { return same(x.root_, y.root_); }

bool ClopenSet::contains(const TildePoint& p) const {
  const auto& dg = diagram(d_);
  const Node* x = root_.get();
  BVertex v = BVertex::top_vertex();
  for (int k = 0; x->kind == Node::Kind::kSplit; ++k) {
    const BVertex next = vertex_after(p, k + 1);
    x = x->kids[dg.edge_index(v, p.at(k + 1), next)].get();
    v = next;
  }
  return x->kind == Node::Kind::kFull;
}

std::vector<PathPrefix> ClopenSet::cylinders() const {
  std::vector<PathPrefix> out;
  PathPrefix cur;
  collect(diagram(d_), root_, cur, out);
  return out;
}

std::size_t ClopenSet::cylinder_count() const { return cylinders().size(); }

int ClopenSet::max_depth() const {
  int m = 0;
  for (const auto& c : cylinders()) m = std::max(m, c.depth());
  return m;
}

std::string ClopenSet::to_string() const {
  std::string out;
  for (const auto& c : cylinders()) {
    if (!out.empty()) out += ',';
    out += c.to_string();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Group action on cylinders

namespace {

struct SectionKey {
  GroupWord h;
  BVertex v;
  friend bool operator==(const SectionKey&, const SectionKey&) = default;
};

struct SectionKeyHash {
  std::size_t operator()(const SectionKey& k) const noexcept {
    return std::hash<GroupWord>()(k.h) * 131 + (static_cast<std::size_t>(k.v.a) << 8) + (k.v.b << 1) + k.v.star;
  }
};

using TailCylinders = std::vector<std::pair<Word, BVertex>>;

GroupWord section1(const GroupWord& h, Letter x) { return h.section(std::span<const Letter>(&x, 1)); }

// h(T_v) as tail cylinders (u, v'): tails starting with u whose data after |u| letters is v'.
const TailCylinders& tail_image(const GroupWord& h, const BVertex& v,
                                std::unordered_map<SectionKey, TailCylinders, SectionKeyHash>& memo) {
  if (auto it = memo.find({h, v}); it != memo.end()) return it->second;
  TailCylinders out;
  bool refine = false;
  if (h.is_empty() || v.top) {
    refine = !h.is_empty() && !v.top;
    if (!refine) out.push_back({{}, v});
  } else if (h.is_nucleus()) {
    const Generator& g = h.letters()[0];
    if (g.kind() == GeneratorKind::kB) {
      const auto& b = g.as_b();
      out.push_back({{}, {b.rho(v.a), b.sigma[v.a](v.b), v.star, false}});
    } else {
      const auto& pi = g.as_a().perm;
      if (v.star && pi(v.a) != 0) out.push_back({{}, {pi(v.a), v.b, true, false}});
      else if (!v.star && pi(0) == 0) out.push_back({{}, v});
      else refine = true;
    }
  } else {
    refine = true;
  }
  if (refine) {
    const auto& dg = diagram(h.degree());
    for (const auto& e : dg.edges(v)) {
      const Letter y = h.root(e.label);
      const TailCylinders& sub = tail_image(section1(h, e.label), e.target, memo);
      for (const auto& [u, w] : sub) {
        Word lab{y};
        lab.insert(lab.end(), u.begin(), u.end());
        out.push_back({std::move(lab), w});
      }
    }
  }
  return memo.emplace(SectionKey{h, v}, std::move(out)).first->second;
}

bool fixes_rec(const GroupWord& h, const BVertex& v, std::unordered_map<SectionKey, bool, SectionKeyHash>& memo) {
  if (h.is_empty()) return true;
  if (auto it = memo.find({h, v}); it != memo.end()) return it->second;
  bool result;
  if (h.is_nucleus() && !v.top) {
    const Generator& g = h.letters()[0];
    if (g.kind() == GeneratorKind::kB) {
      const auto& b = g.as_b();
      result = b.rho(v.a) == v.a && b.sigma[v.a](v.b) == v.b;
    } else {
      result = g.as_a().perm(v.star ? v.a : Letter{0}) == (v.star ? v.a : Letter{0});
    }
  } else if (h.is_nucleus()) {
    result = false;  // a nontrivial nucleus element moves some point
  } else {
    result = true;
    for (const auto& e : diagram(h.degree()).edges(v)) {
      if (h.root(e.label) != e.label || !fixes_rec(section1(h, e.label), e.target, memo)) {
        result = false;
        break;
      }
    }
  }
  memo.emplace(SectionKey{h, v}, result);
  return result;
}

}  // namespace

ClopenSet image_of_cylinder(const GroupWord& g, const PathPrefix& eta) {
  const int d = g.degree();
  if (eta.end.top) return ClopenSet::full(d);
  auto [gw, h] = g.act_with_section(eta.labels);
  std::unordered_map<SectionKey, TailCylinders, SectionKeyHash> memo;
  std::vector<PathPrefix> cyls;
  for (const auto& [u, v] : tail_image(h, eta.end, memo)) {
    Word lab = gw;
    lab.insert(lab.end(), u.begin(), u.end());
    cyls.push_back({std::move(lab), v});
  }
  return ClopenSet::from_cylinders(cyls, d);
}

ClopenSet image(const GroupWord& g, const ClopenSet& u) {
  ClopenSet out = ClopenSet::empty(g.degree());
  for (const auto& c : u.cylinders()) out = out | image_of_cylinder(g, c);
  return out;
}

bool fixes_continuations(const GroupWord& h, const BVertex& v) {
  std::unordered_map<SectionKey, bool, SectionKeyHash> memo;
  return fixes_rec(h, v, memo);
}

bool fixes_cylinder_pointwise(const GroupWord& g, const PathPrefix& eta) {
  auto [gw, h] = g.act_with_section(eta.labels);
  return gw == eta.labels && fixes_continuations(h, eta.end);
}

namespace {

// Part of the subtree `x` (at path cur, section h of g at cur's labels) fixed by g.
NodePtr fixed_rec(const NodePtr& x, const GroupWord& h, const BVertex& v,
                  std::unordered_map<SectionKey, bool, SectionKeyHash>& memo) {
  if (x->kind == Node::Kind::kEmpty) return x;
  if (fixes_rec(h, v, memo)) return x;
  // A nontrivial nucleus element below the top moves every tail of T_v.
  if (h.is_nucleus() && !v.top) return empty_node();
  const auto& es = diagram(h.degree()).edges(v);
  std::vector<NodePtr> kids(es.size());
  for (std::size_t i = 0; i < es.size(); ++i) {
    const NodePtr& child = x->kind == Node::Kind::kFull ? x : x->kids[i];
    if (h.root(es[i].label) != es[i].label) kids[i] = empty_node();
    else kids[i] = fixed_rec(child, section1(h, es[i].label), es[i].target, memo);
  }
  return make_split(std::move(kids));
}

}  // namespace

ClopenSet fixed_part(const GroupWord& g, const ClopenSet& u) {
  std::unordered_map<SectionKey, bool, SectionKeyHash> memo;
  return ClopenSet::from_node(u.degree(), fixed_rec(u.root(), g, BVertex::top_vertex(), memo));
}

ClopenSet moved_part(const GroupWord& g, const ClopenSet& u) { return u - fixed_part(g, u); }

// ---------------------------------------------------------------------------
// Towers and audits

Tower tower(const BVertex& v, int n, int d) {
  if (v.top != (n == 0)) throw InputError("the top vertex is exactly level 0");
  Tower t{v, n, {}};
  Word w(static_cast<std::size_t>(n), 0);
  for (;;) {
    t.paths.push_back({w, v});
    int i = n - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == d - 1) w[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++w[static_cast<std::size_t>(i)];
  }
  return t;
}

TildePoint tau_apply(const PathPrefix& gamma, const PathPrefix& gamma2, const TildePoint& p) {
  if (gamma.end != gamma2.end || gamma.depth() != gamma2.depth())
    throw InputError("tau needs two cylinders of one tower");
  if (!cylinder_member(gamma, p)) throw InputError("point " + p.to_string() + " is not in " + gamma.to_string());
  return concat(gamma2.labels, tail_after(p, gamma.depth()));
}

std::vector<std::size_t> h_n_structure(int n, int d) {
  const auto& dg = diagram(d);
  const auto& vs = dg.level_vertices();
  std::vector<std::size_t> count(vs.size(), 0);
  if (n == 0) return {1};
  for (const auto& e : dg.edges(BVertex::top_vertex())) ++count[dg.vertex_index(e.target)];
  for (int level = 1; level < n; ++level) {
    std::vector<std::size_t> next(vs.size(), 0);
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (const auto& e : dg.edges(vs[i])) next[dg.vertex_index(e.target)] += count[i];
    count = std::move(next);
  }
  return count;
}

bool is_simple_at(int n, int d) {
  (void)n;  // the diagram is stationary below level 1
  return simplicity_gap(d) > 0;
}

int simplicity_gap(int d, int max_gap) {
  const auto& dg = diagram(d);
  const std::size_t m = dg.level_vertices().size();
  // reach[i] = vertices reachable from vertex i in exactly k steps.
  std::vector<std::vector<bool>> reach(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i) reach[i][i] = true;
  for (int k = 1; k <= max_gap; ++k) {
    std::vector<std::vector<bool>> next(m, std::vector<bool>(m, false));
    bool all = true;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (!reach[i][j]) continue;
        for (const auto& e : dg.edges(dg.level_vertices()[j])) next[i][dg.vertex_index(e.target)] = true;
      }
      all = all && std::find(next[i].begin(), next[i].end(), false) == next[i].end();
    }
    if (all) return k;
    reach = std::move(next);
  }
  return 0;
}

BoundedTypeReport bounded_type_audit(const Generator& gen, int max_level, int d) {
  BoundedTypeReport rep;
  rep.generator = gen.to_string();
  const auto& dg = diagram(d);
  std::unordered_map<SectionKey, bool, SectionKeyHash> memo;
  // Words w of the current length with g|_w != e; all other cylinders are tau-maps.
  std::vector<std::pair<Word, GroupWord>> live{{{}, GroupWord::of(d, gen)}};
  if (gen.is_identity()) live.clear();
  std::vector<PathPrefix> non_tau_last;
  for (int n = 0; n <= max_level; ++n) {
    int level_max = 0;
    const std::vector<BVertex> vs = n == 0 ? std::vector<BVertex>{BVertex::top_vertex()} : dg.level_vertices();
    for (const auto& v : vs) {
      int count = 0;
      for (const auto& [w, h] : live) {
        if (fixes_rec(h, v, memo)) continue;
        ++count;
        if (n == max_level) non_tau_last.push_back({w, v});
      }
      level_max = std::max(level_max, count);
    }
    rep.max_non_tau_per_level.push_back(level_max);
    std::vector<std::pair<Word, GroupWord>> next;
    for (const auto& [w, h] : live) {
      for (int x = 0; x < d; ++x) {
        GroupWord s = section1(h, static_cast<Letter>(x));
        if (s.is_empty()) continue;
        Word w2 = w;
        w2.push_back(static_cast<Letter>(x));
        next.emplace_back(std::move(w2), std::move(s));
      }
    }
    live = std::move(next);
  }
  for (int n = 1; n <= max_level; ++n) rep.bound = std::max(rep.bound, rep.max_non_tau_per_level[static_cast<std::size_t>(n)]);
  for (int n = 4; n <= max_level; ++n)
    if (rep.max_non_tau_per_level[static_cast<std::size_t>(n)] != rep.max_non_tau_per_level[3]) rep.constant_from_level_3 = false;
  // Follow non-tau cylinders of the last level further down; survivors that keep
  // reading 0 through a (ab,0) vertex are the germ-exceptional zero-pair points.
  std::set<TildePoint> exceptional;
  // A 0-labelled step into the same zero vertex with the same section repeats the
  // state forever: that ray is an exceptional zero-pair point.
  struct Chain {
    PathPrefix path;
    GroupWord section;
  };
  const GroupWord g0 = GroupWord::of(d, gen);
  for (const auto& start : non_tau_last) {
    std::vector<Chain> frontier{{start, g0.section(start.labels)}};
    for (int step = 0; step < max_level && !frontier.empty(); ++step) {
      std::vector<Chain> next;
      for (const auto& c : frontier) {
        for (const auto& e : dg.edges(c.path.end)) {
          PathPrefix child{c.path.labels, e.target};
          child.labels.push_back(e.label);
          GroupWord h = g0.section(child.labels);
          if (fixes_rec(h, e.target, memo)) continue;
          const bool repeats = !e.target.star && e.target == c.path.end && h == c.section;
          if (repeats) exceptional.insert(decode_zero_ray(child));
          else next.push_back({std::move(child), std::move(h)});
        }
      }
      frontier = std::move(next);
    }
    rep.unresolved_chains += static_cast<int>(frontier.size());
  }
  rep.exceptional_points.assign(exceptional.begin(), exceptional.end());
  return rep;
}

RegularityWitness regularity_check(const GroupWord& g, const TildePoint& p) {
  if (act(g, p) != p) throw InputError("element does not fix " + p.to_string());
  RegularityWitness w;
  if (is_identity(g)) {
    w.depth = 0;
    w.cylinder = PathPrefix{};
  } else {
    for (int n = 1;; ++n) {
      if (n > kDefaultDescentBound) throw DiagnosticError("no regularity witness within the descent bound");
      const Word head = p.head(n);
      if (g.section(head).is_nucleus()) {
        w.depth = n;
        w.cylinder = {head, vertex_after(p, n)};
        break;
      }
    }
  }
  w.pointwise = fixes_cylinder_pointwise(g, w.cylinder);
  w.image_equal = image_of_cylinder(g, w.cylinder) == ClopenSet::cylinder(w.cylinder, g.degree());
  return w;
}

}  // namespace mgw
