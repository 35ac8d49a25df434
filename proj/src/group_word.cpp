#include "mgw/group_word.hpp"

#include <unordered_map>
#include <unordered_set>

#include "mgw/errors.hpp"

namespace mgw {

GroupWord::GroupWord(int d, std::vector<Generator> letters) : d_(d) {
  letters_.reserve(letters.size());
  for (const auto& g : letters) push_reduced(g);
}

// Stack reduction keeps the invariant: no identities, no two adjacent letters of one kind.
void GroupWord::push_reduced(const Generator& g) {
  if (g.is_identity()) return;
  if (!letters_.empty()) {
    if (auto m = letters_.back().merge(g)) {
      letters_.pop_back();
      if (!m->is_identity()) letters_.push_back(std::move(*m));
      return;
    }
  }
  letters_.push_back(g);
}

GroupWord GroupWord::operator*(const GroupWord& other) const {
  GroupWord out = *this;
  for (const auto& g : other.letters_) out.push_reduced(g);
  return out;
}

GroupWord GroupWord::inverse() const {
  GroupWord out(d_);
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_reduced(it->inverse());
  return out;
}

GroupWord GroupWord::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  GroupWord out(d_);
  for (int i = 0; i < k; ++i) out = out * *this;
  return out;
}

Word GroupWord::act(Word w) const {
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) it->apply_in_place(w);
  return w;
}

Letter GroupWord::root(Letter x) const {
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) x = it->root(x);
  return x;
}

Permutation GroupWord::root_permutation() const {
  std::vector<Letter> im(static_cast<std::size_t>(d_));
  for (int x = 0; x < d_; ++x) im[static_cast<std::size_t>(x)] = root(static_cast<Letter>(x));
  return Permutation(std::move(im));
}

std::pair<Word, GroupWord> GroupWord::act_with_section(std::span<const Letter> v) const {
  Word cur(v.begin(), v.end());
  std::vector<Generator> secs(letters_.size());
  for (std::size_t i = letters_.size(); i-- > 0;) {
    secs[i] = letters_[i].section(cur);
    letters_[i].apply_in_place(cur);
  }
  return {std::move(cur), GroupWord(d_, std::move(secs))};
}

GroupWord GroupWord::section(std::span<const Letter> v) const { return act_with_section(v).second; }

std::string GroupWord::to_string() const {
  if (letters_.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += ' ';
    out += letters_[i].to_string();
  }
  return out;
}

WreathDecomposition wreath_decompose(const GroupWord& g) {
  WreathDecomposition dec;
  dec.root = g.root_permutation();
  for (int x = 0; x < g.degree(); ++x) {
    const Letter l = static_cast<Letter>(x);
    dec.sections.push_back(g.section(std::span<const Letter>(&l, 1)));
  }
  return dec;
}

Word apply_decomposition(const WreathDecomposition& dec, const Word& w) {
  if (w.empty()) return w;
  Word tail(w.begin() + 1, w.end());
  Word out{dec.root(w[0])};
  Word rest = dec.sections[w[0]].act(std::move(tail));
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

Portrait portrait(const GroupWord& g, int depth) {
  Portrait p{g.root_permutation(), {}, depth};
  if (depth > 0) {
    for (auto& s : wreath_decompose(g).sections) p.children.push_back(portrait(s, depth - 1));
  }
  return p;
}

namespace {

bool identity_rec(const GroupWord& g, int depth, int bound, std::unordered_map<GroupWord, bool>& memo) {
  if (g.is_nucleus()) return g.is_empty();
  if (depth > bound) throw DiagnosticError("identity descent exceeded depth bound " + std::to_string(bound));
  if (auto it = memo.find(g); it != memo.end()) return it->second;
  bool result = g.root_permutation().is_identity();
  if (result) {
    for (int x = 0; x < g.degree() && result; ++x) {
      const Letter l = static_cast<Letter>(x);
      result = identity_rec(g.section(std::span<const Letter>(&l, 1)), depth + 1, bound, memo);
    }
  }
  memo.emplace(g, result);
  return result;
}

}  // namespace

bool is_identity(const GroupWord& g, int depth_bound) {
  std::unordered_map<GroupWord, bool> memo;
  return identity_rec(g, 0, depth_bound, memo);
}

bool equals(const GroupWord& g, const GroupWord& h, int depth_bound) {
  return is_identity(g * h.inverse(), depth_bound);
}

std::optional<int> order_of(const GroupWord& g, int bound) {
  GroupWord p = g;
  for (int k = 1; k <= bound; ++k) {
    if (is_identity(p)) return k;
    p = p * g;
  }
  return std::nullopt;
}

int contraction_depth(const GroupWord& g, int depth_bound) {
  std::unordered_set<GroupWord> level{g};
  for (int n = 0; n <= depth_bound; ++n) {
    bool all_nucleus = true;
    for (const auto& s : level) all_nucleus = all_nucleus && s.is_nucleus();
    if (all_nucleus) return n;
    std::unordered_set<GroupWord> next;
    for (const auto& s : level) {
      if (s.is_nucleus()) continue;  // sections of nucleus elements stay in the nucleus
      for (auto& t : wreath_decompose(s).sections) next.insert(std::move(t));
    }
    level = std::move(next);
  }
  throw DiagnosticError("contraction depth exceeds bound " + std::to_string(depth_bound));
}

}  // namespace mgw

std::size_t std::hash<mgw::Generator>::operator()(const mgw::Generator& g) const noexcept {
  std::size_t h = static_cast<std::size_t>(g.kind()) * 0x9e3779b97f4a7c15ull;
  std::hash<mgw::Permutation> ph;
  switch (g.kind()) {
    case mgw::GeneratorKind::kA:
      h ^= ph(g.as_a().perm);
      break;
    case mgw::GeneratorKind::kB:
      h ^= ph(g.as_b().rho);
      for (const auto& s : g.as_b().sigma) h = (h * 31) ^ ph(s);
      break;
    default:
      break;
  }
  return h;
}

std::size_t std::hash<mgw::GroupWord>::operator()(const mgw::GroupWord& g) const noexcept {
  std::size_t h = static_cast<std::size_t>(g.degree());
  std::hash<mgw::Generator> gh;
  for (const auto& x : g.letters()) h = (h * 0x100000001b3ull) ^ gh(x);
  return h;
}
