#include "mgw/random.hpp"

#include <algorithm>
#include <numeric>

namespace mgw {

Word Sampler::word(int len) {
  Word w(static_cast<std::size_t>(len));
  for (auto& x : w) x = letter();
  return w;
}

Permutation Sampler::even_permutation() {
  std::vector<Letter> im(static_cast<std::size_t>(d_));
  std::iota(im.begin(), im.end(), Letter{0});
  std::shuffle(im.begin(), im.end(), rng_);
  Permutation p(im);
  if (!p.is_even()) {
    std::swap(im[0], im[1]);
    p = Permutation(im);
  }
  return p;
}

Permutation Sampler::even_permutation_fixing_zero() {
  std::vector<Letter> im(static_cast<std::size_t>(d_));
  std::iota(im.begin(), im.end(), Letter{0});
  std::shuffle(im.begin() + 1, im.end(), rng_);
  Permutation p(im);
  if (!p.is_even()) {
    std::swap(im[1], im[2]);
    p = Permutation(im);
  }
  return p;
}

Generator Sampler::a_element() {
  for (;;) {
    Generator g = Generator::a(even_permutation());
    if (!g.is_identity()) return g;
  }
}

Generator Sampler::b_element() {
  for (;;) {
    std::vector<Permutation> sigma{Permutation::identity(d_)};
    for (int i = 1; i < d_; ++i) sigma.push_back(even_permutation());
    Generator g = Generator::b(even_permutation_fixing_zero(), std::move(sigma));
    if (!g.is_identity()) return g;
  }
}

Generator Sampler::generator() { return uniform(0, 1) == 0 ? a_element() : b_element(); }

GroupWord Sampler::group_word(int len) {
  std::vector<Generator> letters;
  bool a_turn = uniform(0, 1) == 0;
  for (int i = 0; i < len; ++i, a_turn = !a_turn) letters.push_back(a_turn ? a_element() : b_element());
  return GroupWord(d_, std::move(letters));
}

GroupWord Sampler::s0_word(const GeneratingSet& s0, int len) {
  const auto sym = s0.symmetric();
  std::vector<Generator> letters;
  for (int i = 0; i < len; ++i) letters.push_back(sym[static_cast<std::size_t>(uniform(0, static_cast<int>(sym.size()) - 1))]);
  return GroupWord(d_, std::move(letters));
}

}  // namespace mgw
