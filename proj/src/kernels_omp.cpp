#include <algorithm>
#include <stdexcept>

#include "ellsec/linalg.hpp"

namespace ellsec::kernels::omp {

namespace {

using Index = std::ptrdiff_t;

// Below this many row-entry updates per pivot the fork/join costs more than it saves.
constexpr std::size_t kParallelWork = 1 << 14;

}  // namespace

std::vector<std::size_t> row_echelon(Matrix& m) {
  std::vector<std::size_t> pivots;
  const auto rows = static_cast<Index>(m.rows());
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    const Fp inv = m(r, c).inv();
    auto prow = m.row(r);
    for (std::size_t j = c; j < m.cols(); ++j) prow[j] *= inv;
    const bool big = (m.rows() - r) * (m.cols() - c) >= kParallelWork;
#pragma omp parallel for schedule(static) if (big)
    for (Index i = static_cast<Index>(r) + 1; i < rows; ++i) {
      const Fp w = m(static_cast<std::size_t>(i), c);
      if (!w.is_zero()) axpy_neg(m.row(static_cast<std::size_t>(i)), prow, w, c);
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
    const bool big = k * (m.cols() - c) >= kParallelWork;
#pragma omp parallel for schedule(static) if (big)
    for (Index i = 0; i < static_cast<Index>(k); ++i) {
      const Fp w = m(static_cast<std::size_t>(i), c);
      if (!w.is_zero()) axpy_neg(m.row(static_cast<std::size_t>(i)), prow, w, c);
    }
  }
}

Matrix evaluation_matrix(const MonomialBasis& basis, std::span<const std::vector<Fp>> points) {
  const std::size_t n = basis.nvars();
  const unsigned d = basis.degree();
  for (const auto& pt : points)
    if (pt.size() != n) throw std::invalid_argument("evaluation point has the wrong length");
  // Warm the shared basis cache before the threads read it.
  std::vector<const MonomialBasis*> levels;
  for (unsigned k = 1; k <= d; ++k) levels.push_back(&monomial_basis(n, k));
  Matrix out(points.size(), basis.size());
#pragma omp parallel for schedule(static)
  for (Index s = 0; s < static_cast<Index>(points.size()); ++s) {
    const auto& pt = points[static_cast<std::size_t>(s)];
    std::vector<Fp> level{Fp(1)};
    std::vector<Fp> next;
    for (const MonomialBasis* bk : levels) {
      next.assign(bk->size(), Fp{});
      for (std::size_t i = 0; i < bk->size(); ++i) next[i] = level[bk->parent(i)] * pt[bk->parent_var(i)];
      level.swap(next);
    }
    std::copy(level.begin(), level.end(), out.row(static_cast<std::size_t>(s)).begin());
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
  auto accumulate = [&](std::vector<std::vector<Fp>>& into, std::size_t i, const std::vector<Fp>& prod) {
    for (std::size_t j = 0; j < outer.size(); ++j) {
      const u64 w = outer[j][i].value();
      if (w == 0) continue;
      const u64 ws = md.shoup(w);
      auto& acc = into[j];
      for (std::size_t t = 0; t < out_size; ++t) {
        acc[t] = Fp::from_residue(md.add(acc[t].value(), md.mul_shoup(w, ws, prod[t].value())));
      }
    }
  };
  std::vector<std::vector<Fp>> products(inner.begin(), inner.end());
  if (e == 1) {
    for (std::size_t i = 0; i < m; ++i) accumulate(result, i, products[i]);
    return result;
  }
  for (unsigned k = 2; k < e; ++k) {
    const MonomialBasis& bk = monomial_basis(m, k);
    const std::size_t len = monomial_count(nvars, k * d);
    product_table(nvars, (k - 1) * d, d);
    std::vector<std::vector<Fp>> next(bk.size(), std::vector<Fp>(len));
#pragma omp parallel for schedule(dynamic)
    for (Index i = 0; i < static_cast<Index>(bk.size()); ++i) {
      const auto ui = static_cast<std::size_t>(i);
      dense_mul_add(nvars, products[bk.parent(ui)], (k - 1) * d, inner[bk.parent_var(ui)], d, next[ui]);
    }
    products = std::move(next);
  }
  // Top level: each thread folds its products into a private accumulator;
  // F_p addition is exact, so the reduction order does not matter.
  const MonomialBasis& top = monomial_basis(m, e);
  product_table(nvars, (e - 1) * d, d);
#pragma omp parallel
  {
    std::vector<std::vector<Fp>> local(outer.size(), std::vector<Fp>(out_size));
    std::vector<Fp> prod(out_size);
#pragma omp for schedule(dynamic)
    for (Index i = 0; i < static_cast<Index>(top.size()); ++i) {
      const auto ui = static_cast<std::size_t>(i);
      std::fill(prod.begin(), prod.end(), Fp{});
      dense_mul_add(nvars, products[top.parent(ui)], (e - 1) * d, inner[top.parent_var(ui)], d, prod);
      accumulate(local, ui, prod);
    }
#pragma omp critical
    for (std::size_t j = 0; j < outer.size(); ++j)
      for (std::size_t t = 0; t < out_size; ++t) result[j][t] += local[j][t];
  }
  return result;
}

}  // namespace ellsec::kernels::omp
