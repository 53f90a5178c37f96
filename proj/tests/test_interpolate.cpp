#include <doctest.h>

#include "ellsec/interpolate.hpp"
#include "support.hpp"

using namespace ellsec;

TEST_CASE("quadrics through an elliptic normal curve: n(n-3)/2") {
  const Curve c(Fp(1), Fp(1));
  Rng rng(40);
  for (std::size_t n : {4, 5, 6, 7}) {
    const auto s = vanishing_forms(n, 2, secant_sampler(c, 1, n), rng);
    CHECK(s.dim() == n * (n - 3) / 2);
    CHECK(s.stabilized);
  }
}

TEST_CASE("vanishing forms vanish at fresh samples") {
  const Curve c(Fp(2), Fp(5));
  Rng rng(41);
  const auto s = secant_hypersurface(c, 5, rng);
  REQUIRE(s.dim() == 1);
  for (int t = 0; t < 50; ++t) CHECK(s.basis[0].evaluate(c.secant_sample(2, 5, rng)).is_zero());
  // A generic point is off the hypersurface.
  CHECK_FALSE(s.basis[0].evaluate(testing_support::random_point(5, rng)).is_zero());
}

TEST_CASE("a parametrized quadric surface is recovered exactly") {
  // Segre image of P^1 x P^1: (s u, s v, t u, t v) satisfies x1 x4 - x2 x3 = 0.
  Rng rng(42);
  auto sampler = [](Rng& r) {
    const Fp s = r.elem(), t = r.elem(), u = r.elem(), v = r.elem();
    return std::vector<Fp>{s * u, s * v, t * u, t * v};
  };
  const auto space = vanishing_forms(4, 2, sampler, rng);
  REQUIRE(space.dim() == 1);
  MultiPoly expected = MultiPoly::variable(4, 0) * MultiPoly::variable(4, 3) -
                       MultiPoly::variable(4, 1) * MultiPoly::variable(4, 2);
  CHECK(space.basis[0] == expected);
  CHECK(vanishing_forms(4, 1, sampler, rng).dim() == 0);
}

TEST_CASE("basis is canonical: independent of the sample stream") {
  const Curve c(Fp(1), Fp(1));
  Rng a(1), b(2);
  const auto s1 = secant_ideal_generators(c, 5, a);
  const auto s2 = secant_ideal_generators(c, 5, b);
  CHECK(s1.basis == s2.basis);
  CHECK(echelon_span(s1.basis, 5, 2) == s1.basis);
}

TEST_CASE("even n: two cubics through Sec^2 C at n = 6") {
  const Curve c(Fp(1), Fp(1));
  Rng rng(43);
  const auto s = secant_ci_pair(c, 6, rng);
  CHECK(s.dim() == 2);
  CHECK(s.degree == 3);
}

TEST_CASE("precondition errors") {
  const Curve c(Fp(1), Fp(1));
  Rng rng(44);
  CHECK_THROWS_AS(secant_ideal_generators(c, 6, rng), std::invalid_argument);
  CHECK_THROWS_AS(secant_ci_pair(c, 5, rng), std::invalid_argument);
  CHECK_THROWS_AS(vanishing_forms(3, 2, secant_sampler(c, 1, 3), rng, 0), std::invalid_argument);
  // Sec^1 of a curve in P^2 (a plane cubic) has no quadrics; the checked wrapper would expect n of them.
  CHECK(vanishing_forms(3, 2, secant_sampler(c, 1, 3), rng).dim() == 0);
}

TEST_CASE("dimension mismatches are reported with counts") {
  DimensionMismatch e("thing", 5, 4);
  CHECK(e.expected() == 5);
  CHECK(e.found() == 4);
  CHECK(std::string(e.what()).find("expected dimension 5, found 4") != std::string::npos);
}
