#include <doctest.h>

#include "ellsec/monomial.hpp"

using namespace ellsec;

TEST_CASE("basis sizes are binomial coefficients") {
  CHECK(monomial_count(5, 2) == 15);
  CHECK(monomial_count(7, 7) == 1716);
  CHECK(monomial_count(9, 9) == 24310);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 5) == 0);
  for (std::size_t n = 1; n <= 6; ++n)
    for (unsigned d = 0; d <= 5; ++d) CHECK(monomial_basis(n, d).size() == monomial_count(n, d));
}

TEST_CASE("basis order is descending graded-lex and rank inverts it") {
  const MonomialBasis& b = monomial_basis(4, 3);
  CHECK(b[0] == Monomial::variable(0) * Monomial::variable(0) * Monomial::variable(0));
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(b[i].degree() == 3);
    CHECK(b.rank(b[i]) == i);
    if (i > 0) CHECK(grlex_compare(b[i - 1], b[i]) > 0);
  }
}

TEST_CASE("parents drop one power of the last variable present") {
  const MonomialBasis& b = monomial_basis(3, 4);
  const MonomialBasis& lower = monomial_basis(3, 3);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Monomial v = Monomial::variable(b.parent_var(i));
    CHECK(lower[b.parent(i)] * v == b[i]);
  }
}

TEST_CASE("product tables agree with monomial multiplication") {
  const auto& t = product_table(4, 2, 3);
  const MonomialBasis& a = monomial_basis(4, 2);
  const MonomialBasis& b = monomial_basis(4, 3);
  const MonomialBasis& c = monomial_basis(4, 5);
  for (std::size_t ib = 0; ib < b.size(); ++ib)
    for (std::size_t ia = 0; ia < a.size(); ++ia) CHECK(c[t[ib * a.size() + ia]] == a[ia] * b[ib]);
}

TEST_CASE("divisibility and quotients") {
  const Monomial x = Monomial::variable(0), y = Monomial::variable(1);
  CHECK(x.divides(x * y));
  CHECK_FALSE((x * x).divides(x * y));
  CHECK((x * x * y) / x == x * y);
}
