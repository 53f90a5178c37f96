#include <doctest.h>

#include "ellsec/multipoly.hpp"
#include "support.hpp"

using namespace ellsec;
using testing_support::random_form;
using testing_support::random_point;

TEST_CASE("ring laws and evaluation homomorphism") {
  Rng rng(20);
  for (int t = 0; t < 20; ++t) {
    const MultiPoly a = random_form(4, 3, rng, 0.5), b = random_form(4, 2, rng, 0.5), c = random_form(4, 2, rng);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
    const auto pt = random_point(4, rng);
    CHECK((a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt));
    CHECK((a + a * b).evaluate(pt) == a.evaluate(pt) + a.evaluate(pt) * b.evaluate(pt));
  }
}

TEST_CASE("mixed-degree products fall back to the map kernel") {
  Rng rng(21);
  const MultiPoly a = random_form(3, 2, rng) + random_form(3, 1, rng) + MultiPoly::constant(3, Fp(5));
  const MultiPoly b = random_form(3, 1, rng) + MultiPoly::constant(3, Fp(2));
  const auto pt = random_point(3, rng);
  CHECK((a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt));
  CHECK_FALSE((a * b).is_homogeneous());
  CHECK((a * b).degree() == 3);
  CHECK(MultiPoly(3).degree() == -1);
}

TEST_CASE("derivatives obey the Leibniz rule and Euler's formula") {
  Rng rng(22);
  const MultiPoly a = random_form(4, 3, rng), b = random_form(4, 2, rng);
  for (std::size_t i = 0; i < 4; ++i) CHECK((a * b).derivative(i) == a.derivative(i) * b + a * b.derivative(i));
  MultiPoly euler(4);
  for (std::size_t i = 0; i < 4; ++i) euler += MultiPoly::variable(4, i) * a.derivative(i);
  CHECK(euler == a * Fp(3));
}

TEST_CASE("dense round trip") {
  Rng rng(23);
  const MultiPoly a = random_form(5, 3, rng, 0.3);
  CHECK(MultiPoly::from_dense(5, 3, a.to_dense(3)) == a);
  CHECK_THROWS(a.to_dense(2));
}

TEST_CASE("exact division") {
  Rng rng(24);
  const MultiPoly q = random_form(4, 2, rng), d = random_form(4, 2, rng);
  auto r = exact_divide(q * d, d);
  REQUIRE(r.has_value());
  CHECK(*r == q);
  const Monomial m = Monomial::variable(0) * Monomial::variable(1) * Monomial::variable(2) * Monomial::variable(3);
  CHECK_FALSE(exact_divide(q * d + MultiPoly::term(4, m, Fp(1)), d).has_value());
  auto s = exact_divide(q.shifted(Monomial::variable(2)), MultiPoly::variable(4, 2));
  REQUIRE(s.has_value());
  CHECK(*s == q);
  CHECK_FALSE(exact_divide(MultiPoly::variable(4, 0), MultiPoly::variable(4, 1)).has_value());
}

TEST_CASE("composition against pointwise evaluation") {
  Rng rng(25);
  std::vector<MultiPoly> inner, outer;
  for (int i = 0; i < 4; ++i) {
    inner.push_back(random_form(4, 2, rng));
    outer.push_back(random_form(4, 3, rng));
  }
  const PolyMap in(inner, 2), out(outer, 3);
  const PolyMap composed = compose(out, in);
  CHECK(composed.degree() == 6);
  for (int t = 0; t < 5; ++t) {
    const auto pt = random_point(4, rng);
    CHECK(composed.evaluate(pt) == out.evaluate(in.evaluate(pt)));
    CHECK(compose(outer[1], in).evaluate(pt) == outer[1].evaluate(in.evaluate(pt)));
  }
  const MultiPoly mixed = outer[0] + random_form(4, 1, rng) + MultiPoly::constant(4, Fp(3));
  const auto pt = random_point(4, rng);
  CHECK(compose(mixed, in).evaluate(pt) == mixed.evaluate(in.evaluate(pt)));
}

TEST_CASE("Euler integration recovers a form from its gradient") {
  Rng rng(26);
  const MultiPoly f = random_form(5, 4, rng);
  std::vector<MultiPoly> g;
  for (std::size_t i = 0; i < 5; ++i) g.push_back(f.derivative(i));
  CHECK(euler_integrate(PolyMap(g, 3), 4) == f);
  g[2] += random_form(5, 3, rng);
  CHECK_THROWS_AS(euler_integrate(PolyMap(g, 3), 4), IntegrabilityError);
}

TEST_CASE("proportionality and normalization") {
  Rng rng(27);
  const MultiPoly a = random_form(3, 2, rng);
  const Fp s = rng.nonzero_elem();
  auto l = proportionality(a * s, a);
  REQUIRE(l.has_value());
  CHECK(*l == s);
  CHECK_FALSE(proportionality(a, a + random_form(3, 2, rng)).has_value());
  const PolyMap m({MultiPoly(3), a * s}, 2);
  const PolyMap nm = m.normalized();
  CHECK(nm[1].leading().second == Fp(1));
  CHECK(proportionality(m, nm).has_value());
  CHECK_THROWS(PolyMap({a, random_form(3, 3, rng)}, 2));
}
