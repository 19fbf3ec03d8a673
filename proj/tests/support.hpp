#pragma once
// Seeded random polynomials for property tests.

#include <random>

#include "qkg/starcalc.hpp"

namespace qkg::testing {

struct Corpus {
  std::mt19937_64 rng;
  explicit Corpus(std::uint64_t seed) : rng(seed) {}
  int pick(int lo, int hi) { return lo + int(rng() % std::uint64_t(hi - lo + 1)); }
  Scalar coef() {
    for (;;) {
      GQ g(mpq_class(pick(-3, 3)), mpq_class(pick(-2, 2)));
      if (!g.is_zero()) return Scalar(g);
    }
  }
  // random polynomial in the given variables, total degree <= maxdeg
  Series poly(int maxdeg, std::vector<int> vars = {kXP, kX3, kXM}, int nterms = 4, bool with_t = false) {
    Series f;
    for (int j = 0; j < nterms; ++j) {
      std::array<int, kNumVars> e{};
      int d = pick(0, maxdeg);
      for (int s = 0; s < d; ++s) e[vars[std::size_t(pick(0, int(vars.size()) - 1))]]++;
      if (with_t && pick(0, 1)) e[kT] = pick(1, 2);
      f += Series::monomial(key_make(e), coef());
    }
    return f;
  }
};

inline Series mono(std::initializer_list<std::pair<int, int>> e, const Scalar& c = Scalar(1)) {
  std::array<int, kNumVars> x{};
  for (auto [v, n] : e) x[v] += n;
  return Series::monomial(key_make(x), c);
}

}  // namespace qkg::testing
