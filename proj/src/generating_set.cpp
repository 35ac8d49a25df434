#include "mgw/generating_set.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "mgw/errors.hpp"

namespace mgw {

namespace {

Permutation full_cycle(int d, int from) {
  std::vector<int> c;
  for (int i = from; i < d; ++i) c.push_back(i);
  return Permutation::from_cycles(d, {c});
}

// An even long cycle: the d-cycle for odd d, the (d-1)-cycle on 1..d-1 for even d.
Permutation long_even_cycle(int d) { return d % 2 == 1 ? full_cycle(d, 0) : full_cycle(d, 1); }

}  // namespace

GeneratingSet GeneratingSet::standard(int d) {
  if (d < 5 || d > 10) throw InputError("d must lie in 5..10");
  GeneratingSet s;
  s.d = d;
  s.gens.push_back(Generator::a(Permutation::cycle(d, {0, 1, 2})));
  s.gens.push_back(d == 5 ? Generator::a(Permutation::cycle(d, {2, 3, 4})) : Generator::a(long_even_cycle(d)));
  s.gens.push_back(Generator::b_root(Permutation::cycle(d, {1, 2, 3})));
  for (int i = 1; i < d; ++i) {
    Permutation sigma = long_even_cycle(d);
    if (d % 2 == 0 && i % 2 == 1) sigma = Permutation::cycle(d, {0, 1, 2});
    s.gens.push_back(Generator::b_single(d, i, sigma));
  }
  s.ids = {"a0", "a1"};
  for (int i = 0; i < d; ++i) s.ids.push_back("b" + std::to_string(i));
  return s;
}

GeneratingSet GeneratingSet::parse(int d, const std::vector<std::string>& specs) {
  GeneratingSet s;
  s.d = d;
  int na = 0, nb = 0;
  for (const auto& spec : specs) {
    Generator g = parse_generator(spec, d);
    if (g.is_identity()) throw InputError("generating set member is trivial: " + spec);
    s.ids.push_back(g.kind() == GeneratorKind::kA ? "a" + std::to_string(na++) : "b" + std::to_string(nb++));
    s.gens.push_back(std::move(g));
  }
  return s;
}

std::vector<Generator> GeneratingSet::a_part() const {
  std::vector<Generator> out;
  for (const auto& g : gens)
    if (g.kind() == GeneratorKind::kA) out.push_back(g);
  return out;
}

std::vector<Generator> GeneratingSet::b_part() const {
  std::vector<Generator> out;
  for (const auto& g : gens)
    if (g.kind() == GeneratorKind::kB) out.push_back(g);
  return out;
}

std::vector<Generator> GeneratingSet::symmetric() const {
  std::vector<Generator> out;
  for (const auto& g : gens) {
    for (const Generator& h : {g, g.inverse()})
      if (std::find(out.begin(), out.end(), h) == out.end()) out.push_back(h);
  }
  return out;
}

namespace {

Permutation parse_cycles(const std::string& s, int d) {
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == ' ') {
      ++i;
      continue;
    }
    if (s[i] != '(') throw InputError("bad cycle text: " + s);
    const std::size_t j = s.find(')', i);
    if (j == std::string::npos) throw InputError("unclosed cycle: " + s);
    std::istringstream in(s.substr(i + 1, j - i - 1));
    std::vector<int> c;
    for (int x; in >> x;) c.push_back(x);
    if (c.size() > 1) cycles.push_back(std::move(c));
    i = j + 1;
  }
  return Permutation::from_cycles(d, cycles);
}

}  // namespace

Generator parse_generator(const std::string& text, int d) {
  if (text == "e") return Generator::identity();
  if (text.size() >= 2 && text[0] == 'a') return Generator::a(parse_cycles(text.substr(1), d));
  if (text.size() >= 3 && text[0] == 'b' && text[1] == '[' && text.back() == ']') {
    std::vector<std::string> parts;
    std::string body = text.substr(2, text.size() - 3);
    std::size_t start = 0;
    for (std::size_t k = 0; k <= body.size(); ++k) {
      if (k == body.size() || body[k] == ';') {
        parts.push_back(body.substr(start, k - start));
        start = k + 1;
      }
    }
    if (static_cast<int>(parts.size()) != d) throw InputError("B-generator needs rho and d-1 sigmas: " + text);
    std::vector<Permutation> sigma{Permutation::identity(d)};
    for (std::size_t k = 1; k < parts.size(); ++k) sigma.push_back(parse_cycles(parts[k], d));
    return Generator::b(parse_cycles(parts[0], d), std::move(sigma));
  }
  throw InputError("cannot parse generator: " + text);
}

GroupWord parse_group_word(const std::string& text, int d) {
  std::vector<Generator> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    if (text[i] == 'a') {
      while (j < text.size() && text[j] != ')') {
        j = text.find(')', j);
        if (j == std::string::npos) throw InputError("bad word: " + text);
        if (j + 1 < text.size() && text[j + 1] == '(') ++j;
        else break;
      }
      ++j;
    } else if (text[i] == 'b') {
      j = text.find(']', i);
      if (j == std::string::npos) throw InputError("bad word: " + text);
      ++j;
    }
    letters.push_back(parse_generator(text.substr(i, j - i), d));
    i = j;
  }
  return GroupWord(d, std::move(letters));
}

std::vector<Permutation> root_closure(const std::vector<Generator>& gens, int d) {
  std::set<Permutation> seen{Permutation::identity(d)};
  std::deque<Permutation> queue{Permutation::identity(d)};
  while (!queue.empty()) {
    Permutation p = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      std::vector<Letter> im(static_cast<std::size_t>(d));
      for (int x = 0; x < d; ++x) im[static_cast<std::size_t>(x)] = g.root(p(static_cast<Letter>(x)));
      Permutation q(std::move(im));
      if (seen.insert(q).second) queue.push_back(std::move(q));
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace mgw
