#include <doctest.h>

#include "ellsec/ellcurve.hpp"

using namespace ellsec;

TEST_CASE("singular curves are rejected") {
  CHECK_THROWS(Curve(Fp(0), Fp(0)));
  CHECK_THROWS(Curve(Fp(-3), Fp(2)));  // 4(-27) + 27*4 = 0
  CHECK_NOTHROW(Curve(Fp(1), Fp(1)));
}

TEST_CASE("group law") {
  const Curve c(Fp(1), Fp(1));
  Rng rng(30);
  for (int t = 0; t < 50; ++t) {
    const CurvePoint p = c.random_point(rng), q = c.random_point(rng), r = c.random_point(rng);
    CHECK(c.contains(p));
    CHECK(c.contains(c.add(p, q)));
    CHECK(c.add(p, q) == c.add(q, p));
    CHECK(c.add(c.add(p, q), r) == c.add(p, c.add(q, r)));
    CHECK(c.add(p, c.negate(p)).infinity);
    CHECK(c.add(p, CurvePoint::at_infinity()) == p);
    CHECK(c.contains(c.add(p, p)));
  }
}

TEST_CASE("Riemann-Roch basis pole orders") {
  const auto b = rr_basis(8);
  const unsigned expected[] = {0, 2, 3, 4, 5, 6, 7, 8};
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(b[i].pole_order() == expected[i]);
  for (std::size_t n = 1; n <= 9; ++n) {
    const auto basis = rr_basis(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto coords = rr_coordinates(basis[i], n);
      for (std::size_t j = 0; j < n; ++j) CHECK(coords[j] == Fp(i == j ? 1 : 0));
    }
  }
  CHECK_THROWS(rr_coordinates(CurveFunction::x_power(3), 5));
}

TEST_CASE("function products against pointwise values") {
  const Curve c(Fp(2), Fp(3));
  Rng rng(31);
  const auto b = rr_basis(6);
  for (int t = 0; t < 10; ++t) {
    const CurvePoint q = c.random_point(rng);
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) {
        const CurveFunction prod = c.multiply(b[i], b[j]);
        CHECK(c.eval(prod, q) == c.eval(b[i], q) * c.eval(b[j], q));
        CHECK(prod.pole_order() == b[i].pole_order() + b[j].pole_order());
      }
  }
}

TEST_CASE("embedding and secant samples") {
  const Curve c(Fp(1), Fp(1));
  Rng rng(32);
  const CurvePoint q = c.random_point(rng);
  const auto v = c.embed(q, 5);
  CHECK(v == std::vector<Fp>{Fp(1), q.x, q.y, q.x * q.x, q.x * q.y});
  CHECK(c.secant_sample(2, 5, rng).size() == 5);
  CHECK_THROWS(c.secant_sample(3, 5, rng));
  CHECK_THROWS(c.secant_sample(0, 5, rng));
  CHECK_THROWS(c.embed(CurvePoint::at_infinity(), 5));
}

TEST_CASE("rr combination") {
  const std::vector<Fp> coords{Fp(1), Fp(2), Fp(3), Fp(4), Fp(5)};
  const CurveFunction f = rr_combination(coords);
  CHECK(rr_coordinates(f, 5) == coords);
}
