#include "mgw/verify.hpp"

#include <cstdio>
#include <map>
#include <set>

#include "mgw/errors.hpp"
#include "mgw/full_group.hpp"
#include "mgw/random.hpp"
#include "mgw/schreier.hpp"
#include "mgw/searches.hpp"

namespace mgw {

namespace {

TildePoint random_point(Sampler& s) {
  Word prefix = s.word(s.uniform(0, 6));
  if (s.uniform(0, 3) == 0) return TildePoint::zero_pair(prefix, s.nonzero_letter(), s.letter());
  Word period = s.word(s.uniform(1, 3));
  period[static_cast<std::size_t>(s.uniform(0, static_cast<int>(period.size()) - 1))] = s.nonzero_letter();
  return TildePoint::periodic(prefix, period);
}

// A point sharing p's first r letters and differing at position r + 1.
TildePoint perturb(const TildePoint& p, int r, Sampler& s) {
  Word w = p.head(r);
  Letter x = s.letter();
  while (x == p.at(r + 1)) x = s.letter();
  w.push_back(x);
  if (s.uniform(0, 1) == 0) return TildePoint::zero_pair(w, s.nonzero_letter(), s.letter());
  return TildePoint::periodic(w, {s.nonzero_letter(), s.letter()});
}

// Distinct zero-tailed points with the same finite letters, differing at infinity.
std::pair<TildePoint, TildePoint> infinity_pair(Sampler& s, int max_prefix) {
  const Word w = s.word(s.uniform(0, max_prefix));
  const Letter a = s.nonzero_letter(), b = s.letter();
  Letter a2 = a, b2 = b;
  if (s.uniform(0, 1) == 0)
    while (a2 == a) a2 = s.nonzero_letter();
  else
    while (b2 == b) b2 = s.letter();
  return {TildePoint::zero_pair(w, a, b), TildePoint::zero_pair(w, a2, b2)};
}

// Distinct pairs: half share a prefix of length <= max_shared, a tenth differ
// only at infinity after a prefix shorter than max_shared, the rest are
// independent samples. Separating a shared prefix of length r costs about 2^r
// steps along the Gray line, so max_shared bounds the search effort.
std::vector<std::pair<TildePoint, TildePoint>> sample_pairs(int count, std::uint64_t seed, int d, int max_shared) {
  Sampler s(d, seed);
  std::vector<std::pair<TildePoint, TildePoint>> out;
  while (static_cast<int>(out.size()) < count) {
    const int kind = static_cast<int>(out.size()) % 10;
    std::pair<TildePoint, TildePoint> pq;
    if (kind == 9) {
      pq = infinity_pair(s, max_shared - 1);
    } else {
      const TildePoint p = random_point(s);
      pq = {p, kind < 5 ? perturb(p, s.uniform(0, max_shared), s) : random_point(s)};
    }
    if (pq.first != pq.second) out.push_back(std::move(pq));
  }
  return out;
}

std::string fmt(const char* f, long long a, long long b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

int resolve_n0(const VerifyConfig& c) {
  if (c.n0_override > 0) return c.n0_override;
  return find_n0(sample_corpus(c.d, c.seed, c.corpus), c.radius_r, c.n0_bound, c.d).n0;
}

}  // namespace

std::string VerifyConfig::hash() const {
  // FNV-1a over the canonical JSON dump.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : to_json().dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json VerifyConfig::to_json() const {
  Json gens = Json::array();
  for (const auto& g : s0.gens) gens.push_back(g.to_string());
  return {{"d", d},
          {"s0", std::move(gens)},
          {"seed", seed},
          {"levels", levels},
          {"pieces", pieces},
          {"corpus", corpus},
          {"R", radius_r},
          {"n0_bound", n0_bound},
          {"n0_override", n0_override},
          {"triplets", triplets},
          {"gadgets", gadgets},
          {"depth", depth},
          {"regularity_pairs", regularity_pairs},
          {"encode_depth", encode_depth},
          {"encode_samples", encode_samples},
          {"subshift_pairs", subshift_pairs},
          {"subshift_shared", subshift_shared},
          {"separation_length", separation_length},
          {"stabilizer_pairs", stabilizer_pairs},
          {"stabilizer_shared", stabilizer_shared},
          {"stabilizer_radius", stabilizer_radius},
          {"brieussel_length", brieussel_length}};
}

SuiteReport verify_transitivity(const VerifyConfig& c) {
  SuiteReport r{"transitivity", "level Schreier graphs of S0 are connected (level transitivity)", true, "", Json::array()};
  for (int n = 1; n <= c.levels; ++n) {
    const LevelGraph g = level_graph(c.s0, n, std::max(c.levels, kDefaultLevelCap));
    const bool ok = g.connected();
    r.passed = r.passed && ok;
    r.details.push_back({{"n", n}, {"vertices", g.vertex_count()}, {"connected", ok}});
  }
  r.summary = fmt(r.passed ? "levels 1..%lld connected" : "levels 1..%lld: some level disconnected", c.levels, 0);
  return r;
}

SuiteReport verify_marginals(const VerifyConfig& c) {
  SuiteReport r{"marginals", "the pair of marginal piece codes determines the central piece code", true, "", {}};
  const auto corpus = sample_corpus(c.d, c.seed, c.pieces);
  std::map<std::pair<PieceCode, PieceCode>, PieceCode> table;
  std::size_t violations = 0, containment = 0;
  std::map<int, int> by_length;
  Json examples = Json::array();
  for (int i = 0; i < c.pieces; ++i) {
    const int n = 2 + i % 5;  // segment lengths 5..13
    const GrayPiece pc = gray_piece(corpus[static_cast<std::size_t>(i)], n, c.d);
    const Marginals m = marginals(pc);
    std::set<TildePoint> l(m.left.vertices.begin(), m.left.vertices.end());
    std::set<TildePoint> rr(m.right.vertices.begin(), m.right.vertices.end());
    for (const auto& v : m.center.vertices)
      if (!l.count(v) || !rr.count(v)) ++containment;
    auto [it, fresh] = table.emplace(std::make_pair(canonical_code(m.left), canonical_code(m.right)), canonical_code(pc));
    if (!fresh && it->second != canonical_code(pc)) {
      ++violations;
      if (examples.size() < 5) examples.push_back(corpus[static_cast<std::size_t>(i)].to_string());
    }
    ++by_length[2 * n + 1];
  }
  Json lengths = Json::object();
  for (const auto& [len, k] : by_length) lengths[std::to_string(len)] = k;
  r.passed = violations == 0 && containment == 0;
  r.details = {{"pieces", c.pieces},       {"by_length", std::move(lengths)}, {"distinct_marginal_pairs", table.size()},
               {"violations", violations}, {"containment_failures", containment}, {"examples", std::move(examples)}};
  r.summary = fmt("%lld pieces, %lld violations", c.pieces, static_cast<long long>(violations + containment));
  return r;
}

SuiteReport verify_n0(const VerifyConfig& c) {
  SuiteReport r{"n0", "a radius n0 separates basepoints from every vertex at S-distance < R", false, "", {}};
  const auto corpus = sample_corpus(c.d, c.seed, c.corpus);
  try {
    const N0Result res = find_n0(corpus, c.radius_r, c.n0_bound, c.d);
    const std::size_t replay = n0_collisions(corpus, c.radius_r, res.n0, c.d);
    r.passed = replay == 0;
    r.details = {{"n0", res.n0},       {"R", c.radius_r},           {"basepoints", res.basepoints},
                 {"pairs", res.pairs}, {"surviving_pairs", res.surviving_pairs}, {"replay_collisions", replay}};
    r.summary = fmt("n0 = %lld, replay collisions %lld", res.n0, static_cast<long long>(replay));
  } catch (const DiagnosticError& e) {
    r.details = {{"error", e.what()}};
    r.summary = std::string("no n0 within the bound: ") + e.what();
  }
  return r;
}

SuiteReport verify_commutator(const VerifyConfig& c) {
  SuiteReport r{"commutator", "[eta(U_r,t,t'), eta(U_l,s',s)^-1] = eta(U,s,t) for convenient triplets", true, "", {}};
  const int n0 = resolve_n0(c);
  const auto cands = tilde_s(c.s0);
  Json per_radius = Json::array(), failures = Json::array();
  int total = 0;
  for (int n : {n0, n0 + 1}) {
    const int want = n == n0 ? (c.triplets + 1) / 2 : c.triplets / 2;
    int checked = 0, ok = 0, seed_shift = 0;
    while (checked < want && seed_shift < 50) {
      for (const auto& gamma : sample_corpus(c.d, c.seed + 1000 + static_cast<std::uint64_t>(seed_shift), 50)) {
        if (checked >= want) break;
        const auto trs = convenient_triplets(gamma, n, cands);
        // Two triplets per basepoint: the first and the middle one.
        for (std::size_t k : {std::size_t{0}, trs.size() / 2}) {
          if (k >= trs.size() || checked >= want || (k > 0 && trs.size() < 2)) continue;
          const auto rep = commutator_trick_check(trs[k], cands);
          ++checked;
          if (rep.ok()) ++ok;
          else if (failures.size() < 10)
            failures.push_back({{"gamma", gamma.to_string()}, {"n", n}, {"s", trs[k].s.to_string()},
                                {"t", trs[k].t.to_string()}, {"failure", rep.failure}});
        }
      }
      ++seed_shift;
    }
    total += checked;
    r.passed = r.passed && checked == want && ok == checked;
    per_radius.push_back({{"n", n}, {"segment_length", 2 * n + 1}, {"checked", checked}, {"equal", ok}});
  }
  r.details = {{"n0", n0}, {"radii", std::move(per_radius)}, {"failures", std::move(failures)}};
  r.summary = fmt("%lld triplets checked at n0 = %lld and n0 + 1", total, n0);
  return r;
}

SuiteReport verify_torsion(const VerifyConfig& c) {
  SuiteReport r{"torsion", "eta elements have order 3; 3-cycles are commutators of two involutions", true, "", {}};
  const auto cands = tilde_s(c.s0);
  int etas = 0, eta_bad = 0;
  for (const auto& gamma : sample_corpus(c.d, c.seed + 7, 12)) {
    const auto trs = convenient_triplets(gamma, 2, cands);
    for (std::size_t k = 0; k < trs.size(); k += std::max<std::size_t>(1, trs.size() / 3)) {
      ++etas;
      if (order_of(eta(trs[k].u, trs[k].s, trs[k].t), 3) != 3) ++eta_bad;
    }
  }
  Sampler s(c.d, c.seed + 11);
  int built = 0, gadget_bad = 0, attempts = 0;
  while (built < c.gadgets && attempts < 100 * c.gadgets) {
    ++attempts;
    const ClopenSet c1 = ClopenSet::cylinder(encode(random_point(s), s.uniform(1, 3)), c.d);
    const GroupWord& g12 = cands[static_cast<std::size_t>(s.uniform(1, static_cast<int>(cands.size()) - 1))];
    const GroupWord& g23 = cands[static_cast<std::size_t>(s.uniform(1, static_cast<int>(cands.size()) - 1))];
    const ClopenSet c2 = image(g12, c1), c3 = image(g23, c2);
    if (!c1.disjoint(c2) || !c1.disjoint(c3) || !c2.disjoint(c3)) continue;
    ++built;
    const PiecewiseElement cyc = build_3cycle(c1, g12, g23);
    const auto [k1, k2] = three_cycle_as_commutator(c1, g12, g23);
    if (order_of(cyc, 3) != 3 || order_of(k1, 2) != 2 || order_of(k2, 2) != 2 || !equals(commutator(k1, k2), cyc))
      ++gadget_bad;
  }
  r.passed = eta_bad == 0 && gadget_bad == 0 && built >= c.gadgets && etas > 0;
  r.details = {{"etas", etas}, {"eta_failures", eta_bad}, {"three_cycles", built}, {"gadget_failures", gadget_bad}};
  r.summary = fmt("%lld etas, %lld 3-cycles", etas, built);
  return r;
}

SuiteReport verify_bounded_type(const VerifyConfig& c) {
  SuiteReport r{"bounded-type", "per-tower non-tau cylinder counts are bounded; exceptional points are finite", true, "",
                Json::array()};
  for (std::size_t i = 0; i < c.s0.size(); ++i) {
    const auto rep = bounded_type_audit(c.s0.gens[i], c.depth, c.d);
    bool zero_only = true;
    Json pts = Json::array();
    for (const auto& p : rep.exceptional_points) {
      zero_only = zero_only && p.is_zero_pair();
      pts.push_back(p.to_string());
    }
    const bool ok = rep.constant_from_level_3 && zero_only && rep.unresolved_chains == 0;
    r.passed = r.passed && ok;
    r.details.push_back({{"generator", c.s0.ids[i]},
                         {"bound", rep.bound},
                         {"max_non_tau_per_level", rep.max_non_tau_per_level},
                         {"constant_from_level_3", rep.constant_from_level_3},
                         {"exceptional_points", std::move(pts)},
                         {"unresolved_chains", rep.unresolved_chains},
                         {"ok", ok}});
  }
  r.summary = fmt("%lld generators audited to level %lld", static_cast<long long>(c.s0.size()), c.depth);
  return r;
}

SuiteReport verify_regularity(const VerifyConfig& c) {
  SuiteReport r{"regularity", "every stabilizing pair (g,p) has a cylinder around p fixed pointwise by g", true, "", {}};
  Sampler s(c.d, c.seed + 3);
  const auto sym = c.s0.symmetric();
  int found = 0, bad = 0, attempts = 0, max_depth = 0;
  Json failures = Json::array();
  while (found < c.regularity_pairs && attempts < 200 * c.regularity_pairs) {
    ++attempts;
    // g = h s h^-1 with s in S0 fixing h^-1 p, so g fixes p.
    const TildePoint p = random_point(s);
    const GroupWord h = s.s0_word(c.s0, s.uniform(1, 4));
    const TildePoint q = act(h.inverse(), p);
    const std::size_t start = static_cast<std::size_t>(s.uniform(0, static_cast<int>(sym.size()) - 1));
    std::optional<GroupWord> g;
    for (std::size_t k = 0; k < sym.size() && !g; ++k) {
      const Generator& x = sym[(start + k) % sym.size()];
      if (act(x, q) == q) g = h * GroupWord::of(c.d, x) * h.inverse();
    }
    if (!g || g->length() < 2 || is_identity(*g)) continue;
    ++found;
    const auto w = regularity_check(*g, p);
    const int cd = contraction_depth(*g);
    max_depth = std::max(max_depth, w.depth);
    if (!w.pointwise || !w.image_equal || w.depth > cd) {
      ++bad;
      if (failures.size() < 10) failures.push_back({{"g", g->to_string()}, {"p", p.to_string()}, {"depth", w.depth}});
    }
  }
  r.passed = bad == 0 && found >= c.regularity_pairs;
  r.details = {{"pairs", found}, {"failures", bad}, {"max_witness_depth", max_depth}, {"examples", std::move(failures)}};
  r.summary = fmt("%lld stabilizing pairs, %lld failures", found, bad);
  return r;
}

SuiteReport verify_encoding(const VerifyConfig& c) {
  SuiteReport r{"encoding", "encode and decode are inverse; cylinder membership matches encoded prefixes", true, "", {}};
  const auto& dg = diagram(c.d);
  std::size_t paths = 0, bad_paths = 0;
  std::vector<Word> words{{}};
  for (int n = 0; n <= c.encode_depth; ++n) {
    const std::vector<BVertex> ends = n == 0 ? std::vector<BVertex>{BVertex::top_vertex()} : dg.level_vertices();
    for (const auto& v : ends) {
      // A tail carrying exactly the continuation data of v.
      TildePoint tail = TildePoint::periodic({}, {1});
      if (!v.top) tail = v.star ? TildePoint::periodic({v.a, v.b}, {1}) : TildePoint::zero_pair({0}, v.a, v.b);
      for (const auto& w : words) {
        const PathPrefix eta{w, v};
        const TildePoint p = decode(eta, tail);
        ++paths;
        if (encode(p, n) != eta || !cylinder_member(eta, p)) ++bad_paths;
      }
    }
    if (n == c.encode_depth) break;
    std::vector<Word> next;
    next.reserve(words.size() * static_cast<std::size_t>(c.d));
    for (const auto& w : words)
      for (int x = 0; x < c.d; ++x) {
        Word u = w;
        u.push_back(static_cast<Letter>(x));
        next.push_back(std::move(u));
      }
    words = std::move(next);
  }
  Sampler s(c.d, c.seed + 5);
  int bad_samples = 0, bad_membership = 0;
  for (int i = 0; i < c.encode_samples; ++i) {
    const TildePoint p = random_point(s);
    const int n = s.uniform(0, c.encode_depth);
    const PathPrefix eta = encode(p, n);
    if (decode(eta, tail_after(p, n)) != p || !cylinder_member(eta, p)) ++bad_samples;
    const TildePoint q = s.uniform(0, 1) ? random_point(s) : perturb(p, s.uniform(0, 3), s);
    if (cylinder_member(eta, q) != (encode(q, n) == eta)) ++bad_membership;
  }
  r.passed = bad_paths == 0 && bad_samples == 0 && bad_membership == 0;
  r.details = {{"depth", c.encode_depth},   {"paths", paths},
               {"path_failures", bad_paths}, {"samples", c.encode_samples},
               {"sample_failures", bad_samples}, {"membership_failures", bad_membership}};
  r.summary = fmt("%lld paths and %lld samples checked", static_cast<long long>(paths), c.encode_samples);
  return r;
}

SuiteReport verify_subshift(const VerifyConfig& c) {
  SuiteReport r{"subshift", "translates of the loop-class partition separate points", true, "", {}};
  std::map<std::string, int> methods;
  int ok = 0, max_len = 0;
  Json failures = Json::array();
  for (const auto& [p, q] : sample_pairs(c.subshift_pairs, c.seed + 9, c.d, c.subshift_shared)) {
    const auto sep = separation_search(c.s0, p, q, c.separation_length);
    if (sep && static_cast<int>(sep->g.length()) <= c.separation_length &&
        loop_class(act(sep->g, p)) != loop_class(act(sep->g, q))) {
      ++ok;
      ++methods[sep->method];
      max_len = std::max(max_len, static_cast<int>(sep->g.length()));
    } else if (failures.size() < 10) {
      failures.push_back({{"p", p.to_string()}, {"q", q.to_string()}});
    }
  }
  r.passed = ok == c.subshift_pairs;
  r.details = {{"pairs", c.subshift_pairs}, {"separated", ok}, {"max_word_length", max_len}, {"methods", methods},
               {"failures", std::move(failures)}};
  r.summary = fmt("%lld of %lld pairs separated", ok, c.subshift_pairs);
  return r;
}

SuiteReport verify_brieussel(const VerifyConfig& c) {
  SuiteReport r{"brieussel", "each s in S0 is the section at 0 of a word with trivial other sections and root", true,
                "", Json::array()};
  const auto res = brieussel_search(c.s0, c.brieussel_length / 2, 4);
  std::string unreached;
  for (const auto& x : res) {
    Json j = {{"target", x.target}, {"reached", x.word.has_value()}};
    if (x.word) {
      j["length"] = x.word->length();
      j["word"] = x.word->to_string();
    } else {
      r.passed = false;
      unreached += (unreached.empty() ? "" : ", ") + x.target;
    }
    r.details.push_back(std::move(j));
  }
  r.summary = unreached.empty() ? "every generator reached within length " + std::to_string(c.brieussel_length)
                                : "unreached within length " + std::to_string(c.brieussel_length) + ": " + unreached;
  return r;
}

SuiteReport verify_stabilizer(const VerifyConfig& c) {
  SuiteReport r{"stabilizer", "for p != q some g fixes p and moves q", true, "", {}};
  int ok = 0;
  std::size_t max_len = 0;
  Json failures = Json::array();
  for (const auto& [p, q] : sample_pairs(c.stabilizer_pairs, c.seed + 13, c.d, c.stabilizer_shared)) {
    const auto g = stabilizer_separation(c.s0, p, q, c.stabilizer_radius);
    if (g && act(*g, p) == p && act(*g, q) != q) {
      ++ok;
      max_len = std::max(max_len, g->length());
    } else if (failures.size() < 10) {
      failures.push_back({{"p", p.to_string()}, {"q", q.to_string()}});
    }
  }
  r.passed = ok == c.stabilizer_pairs;
  r.details = {{"pairs", c.stabilizer_pairs}, {"separated", ok}, {"max_word_length", max_len},
               {"failures", std::move(failures)}};
  r.summary = fmt("%lld of %lld pairs separated", ok, c.stabilizer_pairs);
  return r;
}

const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> all{
      {"transitivity", verify_transitivity}, {"marginals", verify_marginals},
      {"n0", verify_n0},                     {"commutator", verify_commutator},
      {"torsion", verify_torsion},           {"bounded-type", verify_bounded_type},
      {"regularity", verify_regularity},     {"encoding", verify_encoding},
      {"subshift", verify_subshift},         {"brieussel", verify_brieussel},
      {"stabilizer", verify_stabilizer}};
  return all;
}

Json report_json(const VerifyConfig& c, const std::vector<SuiteReport>& results) {
  Json rs = Json::array();
  bool all = true;
  for (const auto& x : results) {
    all = all && x.passed;
    rs.push_back({{"suite", x.suite},
                  {"property", x.property},
                  {"passed", x.passed},
                  {"summary", x.summary},
                  {"details", x.details}});
  }
  return {{"schema", kReportSchema},
          {"config_hash", c.hash()},
          {"config", c.to_json()},
          {"passed", all},
          {"results", std::move(rs)}};
}

}  // namespace mgw
