#include <doctest.h>

#include "ellsec/interpolate.hpp"
#include "ellsec/linalg.hpp"
#include "ellsec/skewsolve.hpp"
#include "support.hpp"

using namespace ellsec;
using testing_support::random_form;

namespace {

// Independent oracle: the full dense coefficient system, solved without any
// compression, with unknowns ordered the same way as the solver's output.
std::vector<SkewPolyMatrix> dense_syzygies(const SyzygyProblem& pb) {
  const std::size_t n = pb.rows[0].size();
  const unsigned d = pb.entry_degree, e = pb.rows[0].degree();
  const MonomialBasis& mono = monomial_basis(n, d);
  const std::size_t pairs = n * (n - 1) / 2;
  const std::size_t unknowns = pairs * mono.size();
  Matrix sys(0, unknowns);
  const std::size_t out_size = monomial_count(n, d + e);
  for (const auto& g : pb.rows) {
    // Column of the system for each unknown: the coefficient vector of g . E_unknown.
    std::vector<std::vector<Fp>> cols;
    for (std::size_t i = 0, p = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j, ++p)
        for (std::size_t a = 0; a < mono.size(); ++a) {
          SkewPolyMatrix m(n, n, d);
          m.set(i, j, MultiPoly::term(n, mono[a], Fp(1)));
          std::vector<Fp> col;
          for (std::size_t k = 0; k < n; ++k) {
            MultiPoly acc(n);
            for (std::size_t l = 0; l < n; ++l) acc += g[l] * m.entry(l, k);
            const auto dense = acc.is_zero() ? std::vector<Fp>(out_size) : acc.to_dense(d + e);
            col.insert(col.end(), dense.begin(), dense.end());
          }
          cols.push_back(std::move(col));
        }
    for (std::size_t r = 0; r < cols[0].size(); ++r) {
      std::vector<Fp> row(unknowns);
      for (std::size_t u = 0; u < unknowns; ++u) row[u] = cols[u][r];
      sys.append_row(row);
    }
  }
  const Matrix ns = nullspace(sys);
  std::vector<SkewPolyMatrix> out;
  for (std::size_t v = 0; v < ns.rows(); ++v) {
    SkewPolyMatrix m(n, n, d);
    for (std::size_t i = 0, p = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j, ++p)
        m.set(i, j, MultiPoly::from_dense(n, d, ns.row(v).subspan(p * mono.size(), mono.size())));
    out.push_back(m.normalized());
  }
  return out;
}

PolyMap coordinates(std::size_t n) {
  std::vector<MultiPoly> x;
  for (std::size_t i = 0; i < n; ++i) x.push_back(MultiPoly::variable(n, i));
  return PolyMap(x, 1);
}

}  // namespace

TEST_CASE("skew matrix storage") {
  SkewPolyMatrix m(4, 4, 1);
  CHECK(m.pair_index(0, 1) == 0);
  CHECK(m.pair_index(0, 3) == 2);
  CHECK(m.pair_index(1, 2) == 3);
  CHECK(m.pair_index(2, 3) == 5);
  m.set(2, 1, MultiPoly::variable(4, 0));
  CHECK(m.entry(1, 2) == -MultiPoly::variable(4, 0));
  CHECK(m.entry(2, 1) == MultiPoly::variable(4, 0));
  CHECK(m.entry(3, 3).is_zero());
  CHECK_THROWS(m.set(1, 1, MultiPoly(4)));
  CHECK_THROWS(m.set(0, 1, MultiPoly::constant(4, Fp(1))));
  CHECK_THROWS(m.pair_index(2, 2));
}

TEST_CASE("Koszul syzygies of the coordinates: n = 3 against the dense oracle") {
  // g = (x1, x2, x3); linear skew M with g . M = 0 is spanned by the single
  // matrix with M_ij = eps_ijk x_k.
  const SyzygyProblem pb{{coordinates(3)}, 1};
  const auto fast = skew_syzygy(pb);
  const auto slow = dense_syzygies(pb);
  REQUIRE(fast.size() == 1);
  CHECK(fast == slow);
  CHECK(verify_complex(pb, fast[0]).exact());
}

TEST_CASE("larger syzygy spaces match the dense oracle") {
  // Coordinates of P^3 in degree 1: the 4 Koszul-type matrices x_l * e_ijk.
  const SyzygyProblem pb{{coordinates(4)}, 1};
  const auto fast = skew_syzygy(pb);
  CHECK(fast.size() == 4);
  CHECK(fast == dense_syzygies(pb));
  const SyzygyProblem pb2{{coordinates(4)}, 2};
  CHECK(skew_syzygy(pb2) == dense_syzygies(pb2));
}

TEST_CASE("random rows usually have no syzygies of low degree") {
  Rng rng(50);
  std::vector<MultiPoly> g;
  for (int i = 0; i < 5; ++i) g.push_back(random_form(5, 2, rng));
  const SyzygyProblem pb{{PolyMap(g, 2)}, 1};
  CHECK(skew_syzygy(pb).empty());
  CHECK(dense_syzygies(pb).empty());
}

TEST_CASE("two-row problems intersect the syzygy spaces") {
  const Curve c(Fp(1), Fp(1));
  Rng rng(51);
  const auto ci = secant_ci_pair(c, 6, rng);
  SyzygyProblem pb{{}, 2};
  for (const auto& f : ci.basis) {
    std::vector<MultiPoly> grad;
    for (std::size_t i = 0; i < 6; ++i) grad.push_back(f.derivative(i));
    pb.rows.emplace_back(grad, 2);
  }
  const auto both = skew_syzygy(pb);
  REQUIRE(both.size() == 1);
  for (const auto& row : pb.rows) CHECK(verify_complex({{row}, 2}, both[0]).exact());
  // One row alone has a larger space.
  CHECK(skew_syzygy({{pb.rows[0]}, 2}).size() > 1);
}

TEST_CASE("verify_complex reports the residual of a wrong matrix") {
  const SyzygyProblem pb{{coordinates(3)}, 1};
  SkewPolyMatrix m(3, 3, 1);
  m.set(0, 1, MultiPoly::variable(3, 0));
  const auto rep = verify_complex(pb, m);
  CHECK_FALSE(rep.exact());
  CHECK(rep.residuals[0][1] == MultiPoly::variable(3, 0) * MultiPoly::variable(3, 0));
}
