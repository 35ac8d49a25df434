#include "mgw/boundary.hpp"

#include <algorithm>

#include "mgw/errors.hpp"

namespace mgw {

Position Position::next() const {
  switch (kind) {
    case Kind::kFinite: return finite(n + 1);
    case Kind::kOmega: return omega_plus_one();
    default: throw InputError("no position after omega+1");
  }
}

std::string Position::to_string() const {
  switch (kind) {
    case Kind::kFinite: return std::to_string(n);
    case Kind::kOmega: return "w";
    default: return "w+1";
  }
}

namespace {

// Shortest p dividing |v| with v = (v[0..p))^k.
template <class V>
void make_primitive(V& v) {
  const std::size_t n = v.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = v[i] == v[i - p];
    if (ok) {
      v.resize(p);
      return;
    }
  }
}

// Absorbs prefix letters into the period while the last prefix letter repeats the period.
template <class V>
void shrink_prefix(V& prefix, V& period) {
  while (!prefix.empty() && prefix.back() == period.back()) {
    std::rotate(period.begin(), period.end() - 1, period.end());
    prefix.pop_back();
  }
}

}  // namespace

TildePoint TildePoint::periodic(Word prefix, Word period) {
  TildePoint p;
  p.kind_ = TailKind::kPeriodic;
  p.prefix_ = std::move(prefix);
  p.period_ = std::move(period);
  if (std::all_of(p.period_.begin(), p.period_.end(), [](Letter x) { return x == 0; }))
    throw InputError("periodic tail must contain a nonzero letter");
  p.canonicalize();
  return p;
}

TildePoint TildePoint::zero_pair(Word prefix, Letter a, Letter b) {
  if (a == 0) throw InputError("zero-pair tail needs a != 0");
  TildePoint p;
  p.kind_ = TailKind::kZeroPair;
  p.prefix_ = std::move(prefix);
  p.a_ = a;
  p.b_ = b;
  p.canonicalize();
  return p;
}

void TildePoint::canonicalize() {
  if (kind_ == TailKind::kPeriodic) {
    make_primitive(period_);
    shrink_prefix(prefix_, period_);
  } else {
    while (!prefix_.empty() && prefix_.back() == 0) prefix_.pop_back();
  }
}

void TildePoint::unroll(std::size_t len) {
  while (prefix_.size() < len) {
    if (kind_ == TailKind::kPeriodic) {
      prefix_.push_back(period_.front());
      std::rotate(period_.begin(), period_.begin() + 1, period_.end());
    } else {
      prefix_.push_back(0);
    }
  }
}

TildePoint TildePoint::parse(const std::string& text) {
  const auto bar = text.find('|');
  if (bar == std::string::npos) throw InputError("point text needs '|': " + text);
  Word prefix = word_from_string(text.substr(0, bar));
  const std::string tail = text.substr(bar + 1);
  if (tail.size() >= 2 && tail.front() == '(' && tail.back() == ')')
    return periodic(std::move(prefix), word_from_string(tail.substr(1, tail.size() - 2)));
  if (tail.size() == 6 && tail.substr(0, 3) == "0*[" && tail.back() == ']') {
    Word ab = word_from_string(tail.substr(3, 2));
    return zero_pair(std::move(prefix), ab[0], ab[1]);
  }
  throw InputError("bad point tail: " + text);
}

Letter TildePoint::at(Position p) const {
  if (p.kind != Position::Kind::kFinite) {
    if (kind_ != TailKind::kZeroPair) throw InputError("periodic point has no letters at infinity");
    return p.kind == Position::Kind::kOmega ? a_ : b_;
  }
  const auto i = static_cast<std::size_t>(p.n - 1);
  if (i < prefix_.size()) return prefix_[i];
  if (kind_ == TailKind::kZeroPair) return 0;
  return period_[(i - prefix_.size()) % period_.size()];
}

Word TildePoint::head(int n) const {
  Word out;
  for (int i = 1; i <= n; ++i) out.push_back(at(i));
  return out;
}

Position TildePoint::first_nonzero() const {
  for (std::size_t i = 0; i < prefix_.size(); ++i)
    if (prefix_[i] != 0) return Position::finite(static_cast<int>(i) + 1);
  if (kind_ == TailKind::kZeroPair) return Position::omega();
  for (std::size_t i = 0; i < period_.size(); ++i)
    if (period_[i] != 0) return Position::finite(static_cast<int>(prefix_.size() + i) + 1);
  throw DiagnosticError("non-canonical periodic point");
}

TildePoint TildePoint::with_letter(Position pos, Letter x) const {
  TildePoint q = *this;
  switch (pos.kind) {
    case Position::Kind::kFinite:
      q.unroll(static_cast<std::size_t>(pos.n));
      q.prefix_[static_cast<std::size_t>(pos.n - 1)] = x;
      break;
    case Position::Kind::kOmega:
      if (kind_ != TailKind::kZeroPair || x == 0) throw InputError("invalid letter at omega");
      q.a_ = x;
      break;
    case Position::Kind::kOmegaPlusOne:
      if (kind_ != TailKind::kZeroPair) throw InputError("periodic point has no letters at infinity");
      q.b_ = x;
      break;
  }
  q.canonicalize();
  return q;
}

std::string TildePoint::to_string() const {
  std::string out = word_to_string(prefix_) + "|";
  if (kind_ == TailKind::kPeriodic) return out + "(" + word_to_string(period_) + ")";
  return out + "0*[" + std::string(1, static_cast<char>('0' + a_)) + std::string(1, static_cast<char>('0' + b_)) + "]";
}

TildePoint act(const Generator& g, const TildePoint& p) {
  switch (g.kind()) {
    case GeneratorKind::kA:
      return p.with_letter(Position::finite(1), g.as_a().perm(p.at(1)));
    case GeneratorKind::kB: {
      const auto& b = g.as_b();
      const Position k = p.first_nonzero();
      const Letter x = p.at(k);
      const Letter y = p.at(k.next());
      // Letter at k stays nonzero, so k is still the first nonzero position afterwards.
      return p.with_letter(k.next(), b.sigma[x](y)).with_letter(k, b.rho(x));
    }
    default:
      return p;
  }
}

TildePoint act(const GroupWord& g, const TildePoint& p) {
  TildePoint q = p;
  const auto& l = g.letters();
  for (auto it = l.rbegin(); it != l.rend(); ++it) q = act(*it, q);
  return q;
}

Generator section_at_zero_ray(const GroupWord& g, const Word& prefix, int depth_bound) {
  GroupWord s = g.section(prefix);
  const Letter zero = 0;
  for (int depth = 0; !s.is_nucleus(); ++depth) {
    if (depth > depth_bound) throw DiagnosticError("section along zero ray did not stabilize");
    s = s.section(std::span<const Letter>(&zero, 1));
  }
  if (s.is_empty()) return Generator();
  // A-sections die one level down; B-sections are fixed by descending along 0.
  return s.letters()[0].kind() == GeneratorKind::kB ? s.letters()[0] : Generator();
}

GrayWord GrayWord::periodic(Bits prefix, Bits period) {
  if (std::none_of(period.begin(), period.end(), [](bool b) { return b; }))
    throw InputError("periodic gray tail must contain *");
  GrayWord g;
  g.kind_ = TailKind::kPeriodic;
  g.prefix_ = std::move(prefix);
  g.period_ = std::move(period);
  g.canonicalize();
  return g;
}

GrayWord GrayWord::zero_tail(Bits prefix, bool omega_plus_one) {
  GrayWord g;
  g.kind_ = TailKind::kZeroTail;
  g.prefix_ = std::move(prefix);
  g.w1_ = omega_plus_one;
  g.canonicalize();
  return g;
}

void GrayWord::canonicalize() {
  if (kind_ == TailKind::kPeriodic) {
    make_primitive(period_);
    shrink_prefix(prefix_, period_);
  } else {
    while (!prefix_.empty() && !prefix_.back()) prefix_.pop_back();
  }
}

void GrayWord::unroll(std::size_t len) {
  while (prefix_.size() < len) {
    if (kind_ == TailKind::kPeriodic) {
      prefix_.push_back(period_.front());
      std::rotate(period_.begin(), period_.begin() + 1, period_.end());
    } else {
      prefix_.push_back(false);
    }
  }
}

namespace {

GrayWord::Bits bits_from(const std::string& s) {
  GrayWord::Bits out;
  for (char c : s) {
    if (c != '0' && c != '*') throw InputError("gray bits must be 0 or *: " + s);
    out.push_back(c == '*');
  }
  return out;
}

std::string bits_to(const GrayWord::Bits& b) {
  std::string s;
  for (bool x : b) s.push_back(x ? '*' : '0');
  return s;
}

}  // namespace

GrayWord GrayWord::parse(const std::string& text) {
  const auto bar = text.find('|');
  if (bar == std::string::npos) throw InputError("gray text needs '|': " + text);
  Bits prefix = bits_from(text.substr(0, bar));
  const std::string tail = text.substr(bar + 1);
  if (tail.size() >= 2 && tail.front() == '(' && tail.back() == ')')
    return periodic(std::move(prefix), bits_from(tail.substr(1, tail.size() - 2)));
  if (tail == "0*[**]" || tail == "0*[*0]") return zero_tail(std::move(prefix), tail[4] == '*');
  throw InputError("bad gray tail: " + text);
}

bool GrayWord::at(Position p) const {
  if (p.kind != Position::Kind::kFinite) {
    if (kind_ != TailKind::kZeroTail) throw InputError("periodic gray word has no bits at infinity");
    return p.kind == Position::Kind::kOmega ? true : w1_;
  }
  const auto i = static_cast<std::size_t>(p.n - 1);
  if (i < prefix_.size()) return prefix_[i];
  if (kind_ == TailKind::kZeroTail) return false;
  return period_[(i - prefix_.size()) % period_.size()];
}

Position GrayWord::first_star() const {
  for (std::size_t i = 0; i < prefix_.size(); ++i)
    if (prefix_[i]) return Position::finite(static_cast<int>(i) + 1);
  if (kind_ == TailKind::kZeroTail) return Position::omega();
  for (std::size_t i = 0; i < period_.size(); ++i)
    if (period_[i]) return Position::finite(static_cast<int>(prefix_.size() + i) + 1);
  throw DiagnosticError("non-canonical gray word");
}

GrayWord GrayWord::flipped(Position p) const {
  GrayWord g = *this;
  switch (p.kind) {
    case Position::Kind::kFinite:
      g.unroll(static_cast<std::size_t>(p.n));
      g.prefix_[static_cast<std::size_t>(p.n - 1)] = !g.prefix_[static_cast<std::size_t>(p.n - 1)];
      break;
    case Position::Kind::kOmega:
      throw InputError("the bit at omega is always *");
    case Position::Kind::kOmegaPlusOne:
      if (kind_ != TailKind::kZeroTail) throw InputError("periodic gray word has no bits at infinity");
      g.w1_ = !g.w1_;
      break;
  }
  g.canonicalize();
  return g;
}

std::string GrayWord::to_string() const {
  std::string out = bits_to(prefix_) + "|";
  if (kind_ == TailKind::kPeriodic) return out + "(" + bits_to(period_) + ")";
  return out + (w1_ ? "0*[**]" : "0*[*0]");
}

GrayWord gray_projection(const TildePoint& p) {
  GrayWord::Bits prefix;
  for (Letter x : p.prefix()) prefix.push_back(x != 0);
  if (p.is_zero_pair()) return GrayWord::zero_tail(std::move(prefix), p.pair_b() != 0);
  GrayWord::Bits period;
  for (Letter x : p.period()) period.push_back(x != 0);
  return GrayWord::periodic(std::move(prefix), std::move(period));
}

VisiblePositions visible_positions(const GrayWord& g) {
  const Position k = g.first_star();
  return {Position::finite(1), k, k.next()};
}

GrayWord gray_neighbor(const GrayWord& g, EdgeType t) {
  return g.flipped(t == EdgeType::kA ? Position::finite(1) : g.first_star().next());
}

std::pair<GrayWord, GrayWord> gray_neighbors(const GrayWord& g) {
  return {gray_neighbor(g, EdgeType::kA), gray_neighbor(g, EdgeType::kB)};
}

std::optional<int> GraySegment::index_of(const GrayWord& g) const {
  for (std::size_t k = 0; k < words.size(); ++k)
    if (words[k] == g) return static_cast<int>(k) - left;
  return std::nullopt;
}

GraySegment gray_segment(const GrayWord& center, int left, int right) {
  if (left < 0 || right < 0) throw InputError("segment radii must be non-negative");
  GraySegment s;
  s.left = left;
  s.right = right;
  std::vector<GrayWord> lefts;
  GrayWord cur = center;
  for (int i = 0; i > -left; --i) {
    cur = gray_neighbor(cur, GraySegment::edge_type(i - 1));
    lefts.push_back(cur);
  }
  s.words.assign(lefts.rbegin(), lefts.rend());
  s.words.push_back(center);
  cur = center;
  for (int i = 0; i < right; ++i) {
    cur = gray_neighbor(cur, GraySegment::edge_type(i));
    s.words.push_back(cur);
  }
  return s;
}

GraySegment gray_segment(const GrayWord& center, int n) { return gray_segment(center, n, n); }

}  // namespace mgw
