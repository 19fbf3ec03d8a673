#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qkg/starcalc.hpp"
#include "support.hpp"

using namespace qkg;
using qkg::testing::Corpus;
using qkg::testing::mono;

namespace {
const Scalar q = Scalar::q();
const Scalar lam = Scalar::lambda();
Series X(int v) { return Series::var(v); }
}  // namespace

TEST_CASE("generator relations") {
  CHECK(star(X(kX3), X(kXP)) == mono({{kXP, 1}, {kX3, 1}}, Scalar::q(2)));
  CHECK(star(X(kXM), X(kXP)) == mono({{kXP, 1}, {kXM, 1}}) + mono({{kX3, 2}}, lam));
  // all nine products satisfy the defining relations
  auto s = [](int a, int b) { return star(X(a), X(b)); };
  CHECK(s(kX3, kXP) == s(kXP, kX3).scaled(Scalar::q(2)));
  CHECK(s(kXM, kX3) == s(kX3, kXM).scaled(Scalar::q(2)));
  CHECK(s(kXM, kXP) - s(kXP, kXM) == s(kX3, kX3).scaled(lam));
  for (int a : {kXP, kX3, kXM}) {
    CHECK(s(a, a) == mono({{a, 2}}));
    CHECK(s(kT, a) == s(a, kT));
  }
  CHECK(s(kXP, kX3) == mono({{kXP, 1}, {kX3, 1}}));
  CHECK(s(kXP, kXM) == mono({{kXP, 1}, {kXM, 1}}));
  CHECK(s(kX3, kXM) == mono({{kX3, 1}, {kXM, 1}}));
}

TEST_CASE("constants and time are central") {
  Corpus c(3);
  for (int j = 0; j < 10; ++j) {
    Series f = c.poly(3, {kXP, kX3, kXM}, 4, true);
    CHECK(star(Series(1), f) == f);
    CHECK(star(X(kT), f) == X(kT) * f);
    CHECK(star(f, X(kT)) == X(kT) * f);
  }
}

TEST_CASE("momentum chart product against the metric square") {
  CHECK(star(X(kPM), X(kPP)) == mono({{kPP, 1}, {kPM, 1}}) + mono({{kP3, 2}}, lam));
  Family p{X(kPP), X(kP3), X(kPM)};
  Series p2 = metric_contract(p, p);
  Series expect = mono({{kPP, 1}, {kPM, 1}}, -(q + Scalar::q(-1))) + mono({{kP3, 2}}, Scalar::q(-2));
  CHECK(p2 == expect);
}

TEST_CASE("property: associativity") {
  Corpus c(11);
  for (int j = 0; j < 12; ++j) {
    Series a = c.poly(3), b = c.poly(3), d = c.poly(3);
    CHECK(star(star(a, b), d) == star(a, star(b, d)));
    auto r = Ordering::kReversed;
    CHECK(star(star(a, b, r), d, r) == star(a, star(b, d, r), r));
  }
  Corpus m(12);
  for (int j = 0; j < 6; ++j) {
    std::vector<int> v{kXP, kX3, kXM, kPP, kP3, kPM};
    Series a = m.poly(3, v), b = m.poly(3, v), d = m.poly(2, v);
    CHECK(star(star(a, b), d) == star(a, star(b, d)));
  }
}

TEST_CASE("reversed ordering is the mirrored standard product") {
  Corpus c(13);
  auto mirror = [](const Series& f) { return swap_pm(subst_q_inverse(f)); };
  for (int j = 0; j < 10; ++j) {
    Series a = c.poly(3), b = c.poly(3);
    CHECK(star(a, b, Ordering::kReversed) == mirror(star(mirror(a), mirror(b))));
  }
  // x^+ x^3 = q^2 x^3 x^+ read in the reversed basis
  CHECK(star(X(kXP), X(kX3), Ordering::kReversed) == mono({{kXP, 1}, {kX3, 1}}, Scalar::q(-2)));
}

TEST_CASE("conjugation") {
  CHECK(conjugate(X(kXP)) == mono({{kXM, 1}}, -q));
  CHECK(conjugate(X(kX3)) == X(kX3));
  CHECK(conjugate(X(kT)) == X(kT));
  CHECK(conjugate(X(kPP)) == mono({{kPM, 1}}, -q));
  Corpus c(21);
  for (int j = 0; j < 15; ++j) {
    Series f = c.poly(4, {kXP, kX3, kXM}, 4, true), g = c.poly(3, {kXP, kX3, kXM}, 4, true);
    CHECK(conjugate(conjugate(f)) == f);
    CHECK(conjugate(star(f, g)) == star(conjugate(g), conjugate(f)));
  }
}

TEST_CASE("metric") {
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Scalar s1, s2;
      for (int c = 0; c < 3; ++c) {
        s1 += metric_upper(a, c) * metric_lower(c, b);
        s2 += metric_upper(a, c) * metric_lower(b, c);
      }
      CHECK(s1 == Scalar(a == b ? 1 : 0));
      Scalar diag = a == 0 ? Scalar::q(2) : a == 1 ? Scalar(1) : Scalar::q(-2);
      CHECK(s2 == (a == b ? diag : Scalar()));
    }
  CHECK(lowered_coordinate(0) == mono({{kXM, 1}}, -q));
  CHECK(lowered_coordinate(2) == mono({{kXP, 1}}, -Scalar::q(-1)));
  Family x{X(kXP), X(kX3), X(kXM)};
  CHECK(raise_index(lower_index(x))[0] == x[0]);
  CHECK(raise_index(lower_index(x))[2] == x[2]);
}

TEST_CASE("classical limit") {
  CHECK(classical_limit(star(X(kXM), X(kXP))) == mono({{kXP, 1}, {kXM, 1}}));
  Corpus c(31);
  Series f = c.poly(3);
  CHECK(classical_limit(f.scaled(lam)).is_zero());
  // C(4,2) by counting 2-subsets of 4 elements
  int count = 0;
  for (int m = 0; m < 16; ++m) count += __builtin_popcount(unsigned(m)) == 2;
  CHECK(classical_limit(X(kX3).scaled(q_binomial(4, 2, 4))) == X(kX3).scaled(Scalar(count)));
  for (int j = 0; j < 10; ++j) {
    Series a = c.poly(3), b = c.poly(3);
    CHECK(classical_limit(star(a, b)) == classical_limit(a) * classical_limit(b));
    CHECK(classical_limit(star(a, b, Ordering::kReversed)) == classical_limit(a) * classical_limit(b));
  }
  CHECK_THROWS_AS(classical_limit(X(kXP).scaled(Scalar(1) / (q - Scalar(1)))), PoleError);
}

TEST_CASE("property: truncation coherence") {
  Corpus c(41);
  for (int j = 0; j < 8; ++j) {
    Series a = c.poly(4), b = c.poly(4);
    Series full = star(a, b).truncated(kGX, 3);
    Series cut = star(a.truncated(kGX, 3), b.truncated(kGX, 3)).truncated(kGX, 3);
    CHECK(full == cut);
    CHECK(cut.box().b[kGX] == 4);
  }
}

TEST_CASE("boxes and classification") {
  Series e = (Series(1) + X(kXP) * X(kPM)).truncated(kGX, 1);
  CHECK(e.box().b[kGX] == 2);
  Series r = star(e, X(kPP));
  CHECK(r.box().b[kGX] == 2);
  CHECK(classify(Series()).verdict == Verdict::kExactZero);
  Series boundary = mono({{kXP, 2}});
  boundary.set_box(e.box());
  CHECK(classify(boundary).verdict == Verdict::kBoundaryOnly);
  Series bad = mono({{kXP, 1}});
  bad.set_box(e.box());
  auto cl = classify(bad);
  CHECK(cl.verdict == Verdict::kViolation);
  CHECK(cl.offending.size() == 1);
  // charge grading
  Series ch = X(kT).scaled(Scalar::charge(2));
  Box b;
  b.b[kGE] = 2;
  ch.set_box(b);
  CHECK(classify(ch).verdict == Verdict::kBoundaryOnly);
  b.b[kGE] = 3;
  ch.set_box(b);
  CHECK(classify(ch).verdict == Verdict::kViolation);
}

TEST_CASE("canonical text round trip") {
  Corpus c(51);
  for (int j = 0; j < 15; ++j) {
    Series f = c.poly(4, {kXP, kX3, kXM, kPP, kP3, kPM}, 5, true).scaled(Scalar(1) / q_number(3, 2));
    CHECK(parse_series(f.str()) == f);
  }
  CHECK(parse_series("xm*xp - xp*xm") == Series());
  CHECK(parse_series("0").is_zero());
  CHECK_THROWS_AS(parse_series("xp/xm"), std::invalid_argument);
  CHECK(star(X(kX3), X(kXP)).str() == "(q^2)*xp*x3");
}
