#include <doctest.h>

#include <algorithm>
#include <numeric>

#ifdef ELLSEC_HAVE_OPENMP
#include <omp.h>
#endif

#include "ellsec/linalg.hpp"

using namespace ellsec;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, Rng& rng) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.elem();
  return m;
}

// Product of a random r x k and k x c matrix: rank at most k.
Matrix low_rank(std::size_t r, std::size_t c, std::size_t k, Rng& rng) {
  const Matrix a = random_matrix(r, k, rng), b = random_matrix(k, c, rng);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t t = 0; t < k; ++t) m(i, j) += a(i, t) * b(t, j);
  return m;
}

Fp leibniz_det(const Matrix& m) {
  std::vector<std::size_t> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  Fp total;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
    Fp term(1);
    for (std::size_t i = 0; i < perm.size(); ++i) term *= m(i, perm[i]);
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST_CASE("determinant against the Leibniz formula") {
  Rng rng(10);
  for (std::size_t n = 1; n <= 6; ++n) {
    const Matrix m = random_matrix(n, n, rng);
    CHECK(determinant(m) == leibniz_det(m));
  }
  CHECK(determinant(low_rank(5, 5, 3, rng)).is_zero());
}

TEST_CASE("nullspace vectors are annihilated and have the right count") {
  Rng rng(11);
  for (auto [r, c, k] : {std::array<std::size_t, 3>{6, 9, 4}, {12, 7, 7}, {3, 3, 0}, {10, 10, 9}}) {
    const Matrix m = low_rank(r, c, k, rng);
    const Matrix ns = nullspace(m);
    CHECK(rank(m) == std::min({r, c, k}));
    CHECK(ns.rows() == c - rank(m));
    for (std::size_t v = 0; v < ns.rows(); ++v)
      for (std::size_t i = 0; i < r; ++i) {
        Fp acc;
        for (std::size_t j = 0; j < c; ++j) acc += m(i, j) * ns(v, j);
        CHECK(acc.is_zero());
      }
    CHECK(rref(ns) == ns);
  }
}

TEST_CASE("brute-force nullspace over a tiny field") {
  ScopedModulus guard(5);
  Matrix m(2, 3);
  m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
  m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 1;
  std::size_t brute = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      for (int c = 0; c < 5; ++c) {
        const Fp v[3] = {a, b, c};
        bool zero = true;
        for (std::size_t i = 0; i < 2; ++i) zero = zero && (m(i, 0) * v[0] + m(i, 1) * v[1] + m(i, 2) * v[2]).is_zero();
        brute += zero;
      }
  const Matrix ns = nullspace(m);
  std::size_t expected = 1;
  for (std::size_t i = 0; i < ns.rows(); ++i) expected *= 5;
  CHECK(brute == expected);
}

TEST_CASE("solve detects inconsistent systems") {
  Rng rng(12);
  const Matrix a = random_matrix(8, 5, rng);
  std::vector<Fp> x(5), b(8);
  for (auto& v : x) v = rng.elem();
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 5; ++j) b[i] += a(i, j) * x[j];
  auto sol = solve(a, b);
  REQUIRE(sol.has_value());
  CHECK(*sol == x);
  b[3] += Fp(1);
  CHECK_FALSE(solve(a, b).has_value());
}

TEST_CASE("serial and OpenMP kernels are bit-identical") {
#ifdef ELLSEC_HAVE_OPENMP
  omp_set_num_threads(4);
#endif
  Rng rng(13);
  Matrix m = low_rank(300, 260, 200, rng);
  Matrix s = m, o = m;
  const auto ps = kernels::serial::row_echelon(s);
  const auto po = kernels::omp::row_echelon(o);
  CHECK(ps == po);
  CHECK(s == o);
  kernels::serial::back_eliminate(s, ps);
  kernels::omp::back_eliminate(o, po);
  CHECK(s == o);

  const MonomialBasis& basis = monomial_basis(5, 4);
  std::vector<std::vector<Fp>> pts(150, std::vector<Fp>(5));
  for (auto& p : pts)
    for (auto& v : p) v = rng.elem();
  CHECK(kernels::serial::evaluation_matrix(basis, pts) == kernels::omp::evaluation_matrix(basis, pts));

  std::vector<std::vector<Fp>> outer(5, std::vector<Fp>(monomial_count(5, 3)));
  std::vector<std::vector<Fp>> inner(5, std::vector<Fp>(monomial_count(5, 2)));
  for (auto* group : {&outer, &inner})
    for (auto& f : *group)
      for (auto& v : f) v = rng.elem();
  CHECK(kernels::serial::compose_dense(5, outer, 3, inner, 2) == kernels::omp::compose_dense(5, outer, 3, inner, 2));
  // e = 1 takes a separate path.
  std::vector<std::vector<Fp>> linear(5, std::vector<Fp>(5));
  for (auto& f : linear)
    for (auto& v : f) v = rng.elem();
  CHECK(kernels::serial::compose_dense(5, linear, 1, inner, 2) == kernels::omp::compose_dense(5, linear, 1, inner, 2));
}
