#include <doctest.h>

#include "ellsec/interpolate.hpp"
#include "ellsec/szego.hpp"
#include "support.hpp"

using namespace ellsec;

namespace {

SkewPolyMatrix omega_for(const Curve& c, std::size_t n, Rng& rng) {
  const auto forms = n % 2 ? secant_hypersurface(c, n, rng) : secant_ci_pair(c, n, rng);
  SyzygyProblem pb{{}, 2};
  for (const auto& f : forms.basis) {
    std::vector<MultiPoly> grad;
    for (std::size_t i = 0; i < n; ++i) grad.push_back(f.derivative(i));
    pb.rows.emplace_back(grad, forms.degree - 1);
  }
  return skew_syzygy(pb).at(0);
}

}  // namespace

TEST_CASE("Szego kernel: hand value and antisymmetry") {
  {
    ScopedModulus guard(101);
    // y^2 = x^3 + x + 1 over F_101: (0, 1) and (8, 4) lie on it; S = 5/8 = 89.
    const Curve c(Fp(1), Fp(1));
    const CurvePoint q1 = CurvePoint::affine(Fp(0), Fp(1)), q2 = CurvePoint::affine(Fp(8), Fp(4));
    REQUIRE(c.contains(q1));
    REQUIRE(c.contains(q2));
    CHECK(szego_value(q1, q2) == Fp(89));
  }
  const Curve c(Fp(1), Fp(1));
  Rng rng(90);
  for (int t = 0; t < 1000; ++t) {
    const CurvePoint a = c.random_point(rng), b = c.random_point(rng);
    if (a.x == b.x) continue;
    CHECK(szego_value(b, a) == -szego_value(a, b));
  }
  const CurvePoint p = c.random_point(rng);
  CHECK_THROWS(szego_value(p, c.negate(p)));
  CHECK_THROWS(szego_value(p, p));
}

TEST_CASE("expansion of the antisymmetrized product") {
  const Curve c(Fp(1), Fp(1));
  Rng rng(91);
  const auto b = rr_basis(5);
  const Matrix zero = expand_product(c, b[2], b[2], 5, rng);
  for (std::size_t i = 0; i < zero.rows(); ++i)
    for (std::size_t j = 0; j < zero.cols(); ++j) CHECK(zero(i, j).is_zero());
  const CurveFunction s1 = b[1] + b[3] * Fp(7), s2 = b[4] + b[0] * Fp(3);
  const Matrix t = expand_product(c, s1, s2, 5, rng);
  CHECK(t.rows() == 6);
  bool nonzero = false;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      CHECK(t(i, j) == t(j, i));  // symmetric, see the header comment
      nonzero = nonzero || !t(i, j).is_zero();
    }
  CHECK(nonzero);
  // Swapping the sections negates the expansion.
  const Matrix u = expand_product(c, s2, s1, 5, rng);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK(u(i, j) == -t(i, j));
}

TEST_CASE("Pi_phi: bilinear, skew, extension independent") {
  const Curve c(Fp(1), Fp(1));
  Rng rng(92);
  const std::size_t n = 5;
  std::vector<Fp> coords(n);
  coords[0] = Fp(1);
  for (std::size_t i = 1; i < n; ++i) coords[i] = rng.elem();
  const Functional phi = Functional::normalized(coords);
  auto kernel = [&] {
    std::vector<Fp> v(n);
    Fp acc;
    for (std::size_t i = 1; i < n; ++i) {
      v[i] = rng.elem();
      acc += v[i] * phi.coords[i];
    }
    v[0] = -acc;
    return rr_combination(v);
  };
  const CurveFunction s1 = kernel(), s2 = kernel(), s3 = kernel();
  const Fp a = rng.elem();
  CHECK(pi_phi(c, phi, s1, s1, rng).is_zero());
  CHECK(pi_phi(c, phi, s1, s1 * a, rng).is_zero());
  CHECK(pi_phi(c, phi, s1, s2, rng) == -pi_phi(c, phi, s2, s1, rng));
  CHECK(pi_phi(c, phi, s1, s2 * a + s3, rng) == pi_phi(c, phi, s1, s2, rng) * a + pi_phi(c, phi, s1, s3, rng));
  CHECK_THROWS(pi_phi(c, phi, rr_basis(5)[0], s1, rng));
}

TEST_CASE("functional normalization") {
  const Functional f = Functional::normalized({Fp(0), Fp(4), Fp(8)});
  CHECK(f.coords == std::vector<Fp>{Fp(0), Fp(1), Fp(2)});
  CHECK_THROWS(Functional::normalized({Fp(0), Fp(0)}));
  CHECK(ExtendedFunctional::extend(f, Fp(9)).coords.back() == Fp(9));
}

TEST_CASE("Omega and Szego brackets agree up to one scalar") {
  const Curve c(Fp(1), Fp(1));
  for (std::size_t n : {5, 6}) {
    Rng rng(93 + n);
    const SkewPolyMatrix om = omega_for(c, n, rng);
    const auto rep = compare_brackets(c, om, 20, rng);
    CHECK(rep.pass());
    CHECK(rep.values.size() == 20);

    // A perturbed Omega breaks the constant ratio.
    SkewPolyMatrix bad = om;
    bad.set(0, 2, bad.upper(0, 2) + MultiPoly::term(n, Monomial::variable(1) * Monomial::variable(1), Fp(1)));
    CHECK_FALSE(compare_brackets(c, bad, 20, rng).constant_ratio);
  }
}
