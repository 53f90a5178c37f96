// Reference implementations. Keep these simple: the omp kernels are tested
// against them bit for bit.
#include <algorithm>
#include <stdexcept>

#include "ellsec/linalg.hpp"

namespace ellsec::kernels::serial {

std::vector<std::size_t> row_echelon(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    const Fp inv = m(r, c).inv();
    auto prow = m.row(r);
    for (std::size_t j = c; j < m.cols(); ++j) prow[j] *= inv;
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      const Fp w = m(i, c);
      if (!w.is_zero()) axpy_neg(m.row(i), prow, w, c);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

void back_eliminate(Matrix& m, std::span<const std::size_t> pivots) {
  for (std::size_t k = pivots.size(); k-- > 0;) {
    const std::size_t c = pivots[k];
    auto prow = m.row(k);
    for (std::size_t i = 0; i < k; ++i) {
      const Fp w = m(i, c);
      if (!w.is_zero()) axpy_neg(m.row(i), prow, w, c);
    }
  }
}

Matrix evaluation_matrix(const MonomialBasis& basis, std::span<const std::vector<Fp>> points) {
  const std::size_t n = basis.nvars();
  const unsigned d = basis.degree();
  Matrix out(points.size(), basis.size());
  for (std::size_t s = 0; s < points.size(); ++s) {
    const auto& pt = points[s];
    if (pt.size() != n) throw std::invalid_argument("evaluation point has the wrong length");
    std::vector<Fp> level{Fp(1)};
    for (unsigned k = 1; k <= d; ++k) {
      const MonomialBasis& bk = monomial_basis(n, k);
      std::vector<Fp> next(bk.size());
      for (std::size_t i = 0; i < bk.size(); ++i) next[i] = level[bk.parent(i)] * pt[bk.parent_var(i)];
      level = std::move(next);
    }
    std::copy(level.begin(), level.end(), out.row(s).begin());
  }
  return out;
}

std::vector<std::vector<Fp>> compose_dense(std::size_t nvars, std::span<const std::vector<Fp>> outer,
                                           unsigned e, std::span<const std::vector<Fp>> inner,
                                           unsigned d) {
  const std::size_t m = inner.size();
  const std::size_t out_size = monomial_count(nvars, e * d);
  std::vector<std::vector<Fp>> result(outer.size(), std::vector<Fp>(out_size));
  if (e == 0) {
    for (std::size_t j = 0; j < outer.size(); ++j) result[j][0] = outer[j][0];
    return result;
  }
  const Modulus& md = modulus();
  auto accumulate = [&](std::size_t i, const std::vector<Fp>& prod) {
    for (std::size_t j = 0; j < outer.size(); ++j) {
      const u64 w = outer[j][i].value();
      if (w == 0) continue;
      const u64 ws = md.shoup(w);
      auto& acc = result[j];
      for (std::size_t t = 0; t < out_size; ++t) {
        acc[t] = Fp::from_residue(md.add(acc[t].value(), md.mul_shoup(w, ws, prod[t].value())));
      }
    }
  };
  // products[i] is the power product of the inner forms for monomial i of the
  // current degree k; the top level is folded into the result immediately.
  std::vector<std::vector<Fp>> products(inner.begin(), inner.end());
  if (e == 1) {
    for (std::size_t i = 0; i < m; ++i) accumulate(i, products[i]);
    return result;
  }
  for (unsigned k = 2; k <= e; ++k) {
    const MonomialBasis& bk = monomial_basis(m, k);
    const std::size_t len = monomial_count(nvars, k * d);
    if (k == e) {
      std::vector<Fp> prod(len);
      for (std::size_t i = 0; i < bk.size(); ++i) {
        std::fill(prod.begin(), prod.end(), Fp{});
        dense_mul_add(nvars, products[bk.parent(i)], (k - 1) * d, inner[bk.parent_var(i)], d, prod);
        accumulate(i, prod);
      }
      break;
    }
    std::vector<std::vector<Fp>> next(bk.size(), std::vector<Fp>(len));
    for (std::size_t i = 0; i < bk.size(); ++i) {
      dense_mul_add(nvars, products[bk.parent(i)], (k - 1) * d, inner[bk.parent_var(i)], d, next[i]);
    }
    products = std::move(next);
  }
  return result;
}

}  // namespace ellsec::kernels::serial
