#include "mgw/generator.hpp"

#include <sstream>

#include "mgw/errors.hpp"

namespace mgw {

void check_word(const Word& w, int d) {
  for (Letter x : w)
    if (x >= d) throw InputError("letter " + std::to_string(x) + " out of range for d=" + std::to_string(d));
}

Generator Generator::a(Permutation perm) {
  if (!perm.is_even()) throw InputError("A-generator permutation must be even: " + perm.to_cycle_string());
  if (perm.is_identity()) return Generator();
  return Generator(AGenerator{std::move(perm)});
}

Generator Generator::b(Permutation rho, std::vector<Permutation> sigma) {
  const int d = rho.degree();
  if (!rho.is_even() || rho(0) != 0) throw InputError("B-generator rho must be even and fix 0");
  if (static_cast<int>(sigma.size()) == d - 1) sigma.insert(sigma.begin(), Permutation::identity(d));
  if (static_cast<int>(sigma.size()) != d) throw InputError("B-generator needs d-1 sigma permutations");
  sigma[0] = Permutation::identity(d);
  bool trivial = rho.is_identity();
  for (const auto& s : sigma) {
    if (s.degree() != d || !s.is_even()) throw InputError("B-generator sigma must be even of degree d");
    trivial = trivial && s.is_identity();
  }
  if (trivial) return Generator();
  return Generator(BGenerator{std::move(rho), std::move(sigma)});
}

Generator Generator::b_single(int d, int i, Permutation sigma_i) {
  std::vector<Permutation> sigma(static_cast<std::size_t>(d), Permutation::identity(d));
  if (i <= 0 || i >= d) throw InputError("b_single index must be in 1..d-1");
  sigma[static_cast<std::size_t>(i)] = std::move(sigma_i);
  return b(Permutation::identity(d), std::move(sigma));
}

Generator Generator::b_root(Permutation rho) {
  const int d = rho.degree();
  return b(std::move(rho), std::vector<Permutation>(static_cast<std::size_t>(d), Permutation::identity(d)));
}

GeneratorKind Generator::kind() const {
  switch (value_.index()) {
    case 1: return GeneratorKind::kA;
    case 2: return GeneratorKind::kB;
    default: return GeneratorKind::kIdentity;
  }
}

Letter Generator::root(Letter x) const {
  switch (kind()) {
    case GeneratorKind::kA: return as_a().perm(x);
    case GeneratorKind::kB: return as_b().rho(x);
    default: return x;
  }
}

void Generator::apply_in_place(Word& w) const {
  if (w.empty()) return;
  switch (kind()) {
    case GeneratorKind::kA:
      w[0] = as_a().perm(w[0]);
      return;
    case GeneratorKind::kB: {
      const auto& b = as_b();
      std::size_t k = 0;
      while (k < w.size() && w[k] == 0) ++k;
      if (k == w.size()) return;
      const Letter x = w[k];
      w[k] = b.rho(x);
      if (k + 1 < w.size()) w[k + 1] = b.sigma[x](w[k + 1]);
      return;
    }
    default:
      return;
  }
}

Generator Generator::section(std::span<const Letter> v) const {
  if (v.empty()) return *this;
  switch (kind()) {
    case GeneratorKind::kB: {
      std::size_t k = 0;
      while (k < v.size() && v[k] == 0) ++k;
      if (k == v.size()) return *this;
      if (k + 1 == v.size()) {
        const auto& s = as_b().sigma[v[k]];
        return s.is_identity() ? Generator() : Generator(AGenerator{s});
      }
      return Generator();
    }
    default:
      return Generator();
  }
}

Generator Generator::inverse() const {
  switch (kind()) {
    case GeneratorKind::kA:
      return Generator(AGenerator{as_a().perm.inverse()});
    case GeneratorKind::kB: {
      // b^{-1}(0^k x' y') = 0^k rho^{-1}(x') sigma_{rho^{-1}(x')}^{-1}(y').
      const auto& b = as_b();
      const int d = b.rho.degree();
      Permutation rinv = b.rho.inverse();
      std::vector<Permutation> sig(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) sig[static_cast<std::size_t>(i)] = b.sigma[rinv(static_cast<Letter>(i))].inverse();
      sig[0] = Permutation::identity(d);
      return Generator(BGenerator{std::move(rinv), std::move(sig)});
    }
    default:
      return Generator();
  }
}

std::optional<Generator> Generator::merge(const Generator& other) const {
  if (other.is_identity()) return *this;
  if (is_identity()) return other;
  if (kind() != other.kind()) return std::nullopt;
  if (kind() == GeneratorKind::kA) return Generator::a(as_a().perm * other.as_a().perm);
  const auto& b1 = as_b();
  const auto& b2 = other.as_b();
  const int d = b1.rho.degree();
  std::vector<Permutation> sig(static_cast<std::size_t>(d));
  for (int x = 0; x < d; ++x) {
    const auto xl = static_cast<Letter>(x);
    sig[static_cast<std::size_t>(x)] = b1.sigma[b2.rho(xl)] * b2.sigma[xl];
  }
  return Generator::b(b1.rho * b2.rho, std::move(sig));
}

std::string Generator::to_string() const {
  std::ostringstream os;
  switch (kind()) {
    case GeneratorKind::kA:
      os << "a" << as_a().perm.to_cycle_string();
      break;
    case GeneratorKind::kB: {
      const auto& b = as_b();
      os << "b[" << b.rho.to_cycle_string();
      for (std::size_t i = 1; i < b.sigma.size(); ++i) os << ';' << b.sigma[i].to_cycle_string();
      os << ']';
      break;
    }
    default:
      os << "e";
  }
  return os.str();
}

}  // namespace mgw
