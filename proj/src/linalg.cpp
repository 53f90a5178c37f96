#include "ellsec/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace ellsec {

void Matrix::append_row(std::span<const Fp> r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(data_.begin() + static_cast<std::ptrdiff_t>(a * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((a + 1) * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>(b * cols_));
}

namespace kernels {

void axpy_neg(std::span<Fp> dst, std::span<const Fp> src, Fp w, std::size_t from) {
  const Modulus& md = modulus();
  const u64 wv = w.value();
  const u64 ws = md.shoup(wv);
  for (std::size_t j = from; j < dst.size(); ++j) {
    dst[j] = Fp::from_residue(md.sub(dst[j].value(), md.mul_shoup(wv, ws, src[j].value())));
  }
}

void dense_mul_add(std::size_t nvars, std::span<const Fp> a, unsigned da, std::span<const Fp> b,
                   unsigned db, std::span<Fp> out) {
  const auto& table = product_table(nvars, da, db);
  const Modulus& md = modulus();
  const std::size_t na = a.size();
  for (std::size_t ib = 0; ib < b.size(); ++ib) {
    const u64 w = b[ib].value();
    if (w == 0) continue;
    const u64 ws = md.shoup(w);
    const std::uint32_t* idx = table.data() + ib * na;
    for (std::size_t ia = 0; ia < na; ++ia) {
      const u64 x = a[ia].value();
      if (x == 0) continue;
      Fp& slot = out[idx[ia]];
      slot = Fp::from_residue(md.add(slot.value(), md.mul_shoup(w, ws, x)));
    }
  }
}

}  // namespace kernels

std::size_t rank(Matrix m) { return kernels::active::row_echelon(m).size(); }

Matrix rref(Matrix m) {
  auto pivots = kernels::active::row_echelon(m);
  kernels::active::back_eliminate(m, pivots);
  Matrix out(pivots.size(), m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) std::copy(m.row(i).begin(), m.row(i).end(), out.row(i).begin());
  return out;
}

Matrix nullspace(Matrix m) {
  const std::size_t n = m.cols();
  auto pivots = kernels::active::row_echelon(m);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  Matrix basis(free_cols.size(), n);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    auto v = basis.row(k);
    v[free_cols[k]] = Fp(1);
    // Back substitution through the unit-pivot echelon rows.
    for (std::size_t r = pivots.size(); r-- > 0;) {
      const std::size_t pc = pivots[r];
      auto row = m.row(r);
      Fp acc;
      for (std::size_t j = pc + 1; j < n; ++j) {
        if (!row[j].is_zero() && !v[j].is_zero()) acc += row[j] * v[j];
      }
      v[pc] = -acc;
    }
  }
  return rref(std::move(basis));
}

std::optional<std::vector<Fp>> solve(Matrix a, std::span<const Fp> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
  const std::size_t n = a.cols();
  Matrix aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::copy(a.row(i).begin(), a.row(i).end(), aug.row(i).begin());
    aug(i, n) = b[i];
  }
  auto pivots = kernels::active::row_echelon(aug);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  kernels::active::back_eliminate(aug, pivots);
  std::vector<Fp> x(n);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, n);
  return x;
}

Fp determinant(Matrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Fp det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return Fp{};
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    const Fp inv = m(c, c).inv();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      kernels::axpy_neg(m.row(i), m.row(c), m(i, c) * inv, c);
    }
  }
  return det;
}

}  // namespace ellsec
