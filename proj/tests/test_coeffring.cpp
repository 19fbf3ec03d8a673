#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qkg/coeffring.hpp"

using namespace qkg;

namespace {

// Oracle: dense integer polynomials in q (index = exponent).
using Dense = std::vector<long>;

Dense dense_mul(const Dense& a, const Dense& b) {
  Dense r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// exact long division, divisor monic in its top coefficient
Dense dense_div(Dense a, const Dense& b) {
  Dense q(a.size() - b.size() + 1, 0);
  for (std::size_t i = q.size(); i-- > 0;) {
    long c = a[i + b.size() - 1] / b.back();
    q[i] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
  }
  for (long x : a) REQUIRE(x == 0);
  return q;
}

Scalar from_dense(const Dense& d, int step = 1) {
  Scalar r;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i]) r += Scalar(d[i]) * Scalar::q(int(i) * step);
  return r;
}

Dense geometric(int n, int base) {  // 1 + x + ... + x^{n-1}, x = q^base
  Dense d(std::size_t(base * (n - 1) + 1), 0);
  for (int j = 0; j < n; ++j) d[std::size_t(base * j)] = 1;
  return d;
}

struct RandomScalar {
  std::mt19937_64 rng;
  explicit RandomScalar(std::uint64_t seed) : rng(seed) {}
  int pick(int lo, int hi) { return lo + int(rng() % std::uint64_t(hi - lo + 1)); }
  Scalar poly() {
    Scalar r;
    int n = pick(1, 3);
    for (int j = 0; j < n; ++j) {
      Scalar m(GQ(mpq_class(pick(-3, 3)), mpq_class(pick(-2, 2))));
      m *= Scalar::q(pick(-2, 3));
      if (pick(0, 2) == 0) m *= Scalar::c(pick(1, 2));
      if (pick(0, 3) == 0) m *= Scalar::M(1);
      if (pick(0, 3) == 0) m *= Scalar::E(1);
      r += m;
    }
    return r;
  }
  Scalar nonzero_poly() {
    for (;;) {
      Scalar p = poly();
      if (!p.is_zero()) return p;
    }
  }
  Scalar operator()() { return poly() / nonzero_poly(); }
};

}  // namespace

TEST_CASE("q_number examples") {
  CHECK(q_number(0, 1) == Scalar(0));
  CHECK(q_number(2, 1) == Scalar(1) + Scalar::q());
  // (1 - q^12) / (1 - q^4) by long division
  Dense num(13, 0), den(5, 0);
  num[0] = -1;
  num[12] = 1;
  den[0] = -1;
  den[4] = 1;
  CHECK(q_number(3, 4) == from_dense(dense_div(num, den)));
  CHECK(q_number(3, 4).str() == "q^8 + q^4 + 1");
}

TEST_CASE("q_number negative argument is the rational form") {
  for (int a = -4; a < 0; ++a)
    for (int base : {1, 2, -4}) {
      Scalar expect = (Scalar(1) - Scalar::q(base * a)) / (Scalar(1) - Scalar::q(base));
      CHECK(q_number(a, base) == expect);
    }
}

TEST_CASE("q_factorial examples") {
  CHECK(q_factorial(0, 1) == Scalar(1));
  CHECK(q_factorial(2, 1) == Scalar(1) + Scalar::q());
  CHECK(q_factorial(3, 2) == from_dense(dense_mul(geometric(2, 2), geometric(3, 2))));
  CHECK_THROWS_AS(q_factorial(-1, 1), std::invalid_argument);
}

TEST_CASE("q_binomial examples") {
  for (int n = 0; n < 6; ++n) CHECK(q_binomial(n, 0, 4) == Scalar(1));
  // factorial fraction oracle
  Scalar frac = q_factorial(2, 4) / (q_factorial(1, 4) * q_factorial(1, 4));
  CHECK(q_binomial(2, 1, 4) == frac);
  CHECK(q_binomial(2, 1, 4) == Scalar(1) + Scalar::q(4));
  for (int k = 0; k < 6; ++k) CHECK(q_binomial(k, k, 4) == Scalar(1));
  CHECK_THROWS_AS(q_binomial(2, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(q_binomial(2, -1, 1), std::invalid_argument);
}

TEST_CASE("q_binomial agrees with factorial quotient and is polynomial") {
  for (int base : {1, 2, 4, -2})
    for (int n = 0; n <= 7; ++n)
      for (int k = 0; k <= n; ++k) {
        Scalar b = q_binomial(n, k, base);
        CHECK(b.is_polynomial());
        CHECK(b * q_factorial(k, base) * q_factorial(n - k, base) == q_factorial(n, base));
      }
}

TEST_CASE("rational_binomial examples") {
  mpq_class half(1, 2);
  CHECK(rational_binomial(half, 0) == Scalar(1));
  CHECK(rational_binomial(half, 1) == Scalar::frac(1, 2));
  mpq_class oracle = half * (half - 1) / 2;
  CHECK(rational_binomial(half, 2) == Scalar(GQ(oracle)));
  CHECK(rational_binomial(half, 2) == Scalar::frac(-1, 8));
}

TEST_CASE("q_double_factorial examples") {
  CHECK(q_double_factorial(0, -2) == Scalar(1));
  CHECK(q_double_factorial(2, -2) == Scalar(1) + Scalar::q(-2));
  Scalar prod = q_number(4, -2) * q_number(2, -2);
  CHECK(q_double_factorial(4, -2) == prod);
  CHECK(q_double_factorial(4, -2) ==
        (Scalar(1) + Scalar::q(-2)) * (Scalar(1) + Scalar::q(-2) + Scalar::q(-4) + Scalar::q(-6)));
  CHECK_THROWS_AS(q_double_factorial(3, 1), std::invalid_argument);
}

TEST_CASE("conjugation and q inversion examples") {
  Scalar i = Scalar::i();
  CHECK(scalar_conjugate(i) == -i);
  CHECK(scalar_conjugate(Scalar::q() + i * Scalar::q(-1)) == Scalar::q() - i * Scalar::q(-1));
  CHECK(substitute_q_inverse(Scalar::lambda()) == -Scalar::lambda());
  CHECK(substitute_q_inverse(q_number(2, 1)) == Scalar(1) + Scalar::q(-1));
}

TEST_CASE("property: field axioms on random scalars") {
  RandomScalar rs(1234);
  for (int trial = 0; trial < 40; ++trial) {
    Scalar a = rs(), b = rs(), c = rs();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
    if (!a.is_zero()) CHECK(a * a.inverse() == Scalar(1));
    CHECK(scalar_conjugate(scalar_conjugate(a)) == a);
    CHECK(substitute_q_inverse(substitute_q_inverse(a)) == a);
    CHECK(substitute_q_inverse(scalar_conjugate(a)) == scalar_conjugate(substitute_q_inverse(a)));
    CHECK(scalar_conjugate(a * b) == scalar_conjugate(a) * scalar_conjugate(b));
  }
}

TEST_CASE("property: canonical form is unique") {
  RandomScalar rs(77);
  for (int trial = 0; trial < 30; ++trial) {
    Scalar a = rs(), b = rs();
    Scalar x = (a * b) / b;
    if (b.is_zero()) continue;
    CHECK(x.str() == a.str());
  }
}

TEST_CASE("property: q_number additivity") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    int a = int(rng() % 7), b = int(rng() % 7), k = int(rng() % 9) - 4;
    CHECK(q_number(a + b, k) == q_number(a, k) + Scalar::q(k * a) * q_number(b, k));
  }
}

TEST_CASE("property: q = 1 gives the classical integers") {
  long fact = 1;
  for (int n = 0; n <= 7; ++n) {
    if (n) fact *= n;
    for (int k : {1, 2, 4, -2, -4}) {
      CHECK(q_number(n, k).eval_q1() == Scalar(n));
      CHECK(q_factorial(n, k).eval_q1() == Scalar(fact));
      long binom = 1;
      for (int j = 0; j <= n; ++j) {
        CHECK(q_binomial(n, j, k).eval_q1() == Scalar(binom));
        binom = binom * (n - j) / (j + 1);
      }
    }
  }
}

TEST_CASE("q = 1 pole is reported") {
  Scalar s = Scalar(1) / (Scalar::q() - Scalar(1));
  CHECK_THROWS_AS(s.eval_q1(), PoleError);
  Scalar ok = (Scalar::q(2) - Scalar(1)) / (Scalar::q() - Scalar(1));
  CHECK(ok.eval_q1() == Scalar(2));
}

TEST_CASE("multivariate denominators") {
  Scalar d = Scalar::E(2) - Scalar::c(2) * Scalar::M(2);
  Scalar x = Scalar::q() / d;
  CHECK(x * d == Scalar::q());
  CHECK((x + x * Scalar::q(3)).den().size() == 1);
  CHECK(x.pow(3) * d.pow(3) == Scalar::q(3));
  CHECK(x.eval_q1() * d == Scalar(1));
}

TEST_CASE("text round trip") {
  RandomScalar rs(99);
  for (int trial = 0; trial < 30; ++trial) {
    Scalar a = rs();
    CHECK(parse_scalar(a.str()) == a);
  }
  CHECK(parse_scalar("(q^2 - 1)/(q - 1)") == Scalar::q() + Scalar(1));
  CHECK_THROWS_AS(parse_scalar("q +"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("z"), std::invalid_argument);
}
