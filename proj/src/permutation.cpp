#include "mgw/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mgw/errors.hpp"

namespace mgw {

std::string word_to_string(std::span<const Letter> w) {
  std::string out;
  out.reserve(w.size());
  for (Letter x : w) out.push_back(static_cast<char>('0' + x));
  return out;
}

Word word_from_string(const std::string& s) {
  Word w;
  for (char c : s) {
    if (c == ' ' || c == ',') continue;
    if (c < '0' || c > '9') throw InputError("bad letter '" + std::string(1, c) + "' in word");
    w.push_back(static_cast<Letter>(c - '0'));
  }
  return w;
}

Permutation::Permutation(std::vector<Letter> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Letter x : images_) {
    if (x >= images_.size() || seen[x]) throw InputError("permutation image array is not a bijection");
    seen[x] = true;
  }
}

Permutation Permutation::identity(int d) {
  std::vector<Letter> im(static_cast<std::size_t>(d));
  std::iota(im.begin(), im.end(), Letter{0});
  Permutation p;
  p.images_ = std::move(im);
  return p;
}

Permutation Permutation::cycle(int d, std::initializer_list<int> points) {
  return from_cycles(d, {std::vector<int>(points)});
}

Permutation Permutation::from_cycles(int d, const std::vector<std::vector<int>>& cycles) {
  Permutation p = identity(d);
  std::vector<bool> used(static_cast<std::size_t>(d), false);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      int x = c[i];
      if (x < 0 || x >= d || used[static_cast<std::size_t>(x)]) throw InputError("bad cycle notation");
      used[static_cast<std::size_t>(x)] = true;
      p.images_[static_cast<std::size_t>(x)] = static_cast<Letter>(c[(i + 1) % c.size()]);
    }
  }
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

bool Permutation::is_even() const {
  std::vector<bool> seen(images_.size(), false);
  std::size_t transpositions = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) p.images_[images_[i]] = static_cast<Letter>(i);
  return p;
}

Permutation Permutation::operator*(const Permutation& other) const {
  Permutation p;
  p.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) p.images_[i] = images_[other.images_[i]];
  return p;
}

std::string Permutation::to_cycle_string() const {
  std::ostringstream os;
  std::vector<bool> seen(images_.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    os << '(';
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      if (!first) os << ' ';
      os << static_cast<int>(j);
      first = false;
    }
    os << ')';
    any = true;
  }
  return any ? os.str() : "()";
}

std::vector<Permutation> alternating_group(int d) {
  std::vector<Letter> im(static_cast<std::size_t>(d));
  std::iota(im.begin(), im.end(), Letter{0});
  std::vector<Permutation> out;
  do {
    Permutation p(im);
    if (p.is_even()) out.push_back(std::move(p));
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

}  // namespace mgw

std::size_t std::hash<mgw::Permutation>::operator()(const mgw::Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto x : p.images()) h = (h ^ x) * 1099511628211ull;
  return h;
}
