#include "ellsec/skewsolve.hpp"

#include <algorithm>
#include <stdexcept>

namespace ellsec {

SkewPolyMatrix::SkewPolyMatrix(std::size_t n, std::size_t nvars, unsigned degree)
    : n_(n), nvars_(nvars), degree_(degree), upper_(n * (n - 1) / 2, MultiPoly(nvars)) {
  if (n < 2) throw std::invalid_argument("skew matrix needs n >= 2");
}

std::size_t SkewPolyMatrix::pair_index(std::size_t i, std::size_t j) const {
  if (i >= j || j >= n_) throw std::out_of_range("pair index needs i < j < n");
  // Pairs (0,1), (0,2), ..., (0,n-1), (1,2), ...
  return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

MultiPoly SkewPolyMatrix::entry(std::size_t i, std::size_t j) const {
  if (i == j) return MultiPoly(nvars_);
  return i < j ? upper(i, j) : -upper(j, i);
}

void SkewPolyMatrix::set(std::size_t i, std::size_t j, MultiPoly value) {
  if (i == j) throw std::invalid_argument("diagonal of a skew matrix is zero");
  if (value.nvars() != nvars_) throw std::invalid_argument("entry lives in the wrong ring");
  if (!value.is_zero() && (!value.is_homogeneous() || value.degree() != static_cast<int>(degree_)))
    throw std::invalid_argument("entry is not homogeneous of the matrix degree");
  if (i < j) {
    upper_[pair_index(i, j)] = std::move(value);
  } else {
    upper_[pair_index(j, i)] = -value;
  }
}

bool SkewPolyMatrix::is_zero() const {
  return std::all_of(upper_.begin(), upper_.end(), [](const MultiPoly& p) { return p.is_zero(); });
}

SkewPolyMatrix SkewPolyMatrix::operator*(Fp c) const {
  SkewPolyMatrix r = *this;
  for (auto& p : r.upper_) p = p * c;
  return r;
}

SkewPolyMatrix SkewPolyMatrix::normalized() const {
  for (const auto& p : upper_)
    if (!p.is_zero()) return *this * p.leading().second.inv();
  return *this;
}

Matrix SkewPolyMatrix::at(std::span<const Fp> point) const {
  Matrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      const Fp v = upper(i, j).evaluate(point);
      m(i, j) = v;
      m(j, i) = -v;
    }
  return m;
}

namespace {

struct SparseEntry {
  std::uint32_t col;
  Fp val;
};

using SparseRows = std::vector<std::vector<SparseEntry>>;

// One equation per (row, column j, monomial of degree e + d) coefficient of
// the identity sum_i g_i M_ij = 0. Unknowns are ordered by pair (i, j), i < j,
// lexicographically, then by monomial of degree d.
SparseRows assemble(const SyzygyProblem& problem, std::size_t n, std::size_t nvars, unsigned e) {
  const unsigned d = problem.entry_degree;
  const MonomialBasis& unknown_monos = monomial_basis(nvars, d);
  const MonomialBasis& eq_monos = monomial_basis(nvars, e + d);
  const std::size_t per_component = eq_monos.size();
  const std::size_t mcount = unknown_monos.size();
  SparseRows eqs(problem.rows.size() * n * per_component);
  SkewPolyMatrix index_helper(n, nvars, d);
  for (std::size_t r = 0; r < problem.rows.size(); ++r) {
    const PolyMap& g = problem.rows[r];
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& [t, c] : g[i].terms()) {
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          const std::size_t pair = i < j ? index_helper.pair_index(i, j) : index_helper.pair_index(j, i);
          const Fp coef = i < j ? c : -c;
          for (std::size_t a = 0; a < mcount; ++a) {
            const std::size_t eq = (r * n + j) * per_component + eq_monos.rank(t * unknown_monos[a]);
            eqs[eq].push_back({static_cast<std::uint32_t>(pair * mcount + a), coef});
          }
        }
      }
    }
  }
  return eqs;
}

std::vector<Fp> sparse_apply(const SparseRows& eqs, std::span<const Fp> v) {
  std::vector<Fp> out(eqs.size());
  for (std::size_t q = 0; q < eqs.size(); ++q) {
    Fp acc;
    for (const auto& [col, val] : eqs[q])
      if (!v[col].is_zero()) acc += val * v[col];
    out[q] = acc;
  }
  return out;
}

// Exact nullspace of a tall sparse system. Rows are folded into a square-ish
// random compression G*A (so ker A is contained in ker G*A), and the candidate
// space is then cut down by the residuals of every original equation.
Matrix sparse_nullspace(const SparseRows& eqs, std::size_t unknowns) {
  constexpr std::size_t kExtraRows = 16;
  constexpr int kCopiesPerEquation = 2;
  const std::size_t crow = unknowns + kExtraRows;
  Matrix compressed(crow, unknowns);
  Rng rng(0x5eedULL ^ (unknowns * 0x9e3779b97f4a7c15ULL) ^ eqs.size());
  for (const auto& eq : eqs) {
    if (eq.empty()) continue;
    for (int copy = 0; copy < kCopiesPerEquation; ++copy) {
      const std::size_t target = rng.bits() % crow;
      const Fp w = rng.nonzero_elem();
      auto row = compressed.row(target);
      for (const auto& [col, val] : eq) row[col] += w * val;
    }
  }
  Matrix candidate = nullspace(std::move(compressed));
  if (candidate.rows() == 0) return candidate;

  std::vector<std::vector<Fp>> residuals;
  bool all_zero = true;
  for (std::size_t k = 0; k < candidate.rows(); ++k) {
    residuals.push_back(sparse_apply(eqs, candidate.row(k)));
    all_zero = all_zero && std::all_of(residuals.back().begin(), residuals.back().end(),
                                       [](Fp x) { return x.is_zero(); });
  }
  if (all_zero) return candidate;

  Matrix constraints(0, candidate.rows());
  std::vector<Fp> line(candidate.rows());
  for (std::size_t q = 0; q < eqs.size(); ++q) {
    bool any = false;
    for (std::size_t k = 0; k < candidate.rows(); ++k) {
      line[k] = residuals[k][q];
      any = any || !line[k].is_zero();
    }
    if (any) constraints.append_row(line);
  }
  const Matrix keep = nullspace(std::move(constraints));
  Matrix restricted(keep.rows(), unknowns);
  for (std::size_t i = 0; i < keep.rows(); ++i)
    for (std::size_t k = 0; k < candidate.rows(); ++k) {
      const Fp c = keep(i, k);
      if (c.is_zero()) continue;
      for (std::size_t t = 0; t < unknowns; ++t) restricted(i, t) += c * candidate(k, t);
    }
  return rref(std::move(restricted));
}

}  // namespace

std::vector<SkewPolyMatrix> skew_syzygy(const SyzygyProblem& problem) {
  if (problem.rows.empty()) throw std::invalid_argument("syzygy problem has no rows");
  if (problem.entry_degree < 1) throw std::invalid_argument("entry degree must be at least 1");
  const std::size_t n = problem.rows.front().size();
  const std::size_t nvars = problem.rows.front().nvars();
  const unsigned e = problem.rows.front().degree();
  for (const auto& g : problem.rows) {
    if (g.size() != n || g.degree() != e || g.nvars() != nvars)
      throw std::invalid_argument("syzygy rows must share length, degree and ring");
  }
  const unsigned d = problem.entry_degree;
  const std::size_t mcount = monomial_count(nvars, d);
  const std::size_t unknowns = n * (n - 1) / 2 * mcount;

  const SparseRows eqs = assemble(problem, n, nvars, e);
  const Matrix basis = sparse_nullspace(eqs, unknowns);

  std::vector<SkewPolyMatrix> out;
  for (std::size_t k = 0; k < basis.rows(); ++k) {
    SkewPolyMatrix m(n, nvars, d);
    auto v = basis.row(k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::size_t off = m.pair_index(i, j) * mcount;
        m.set(i, j, MultiPoly::from_dense(nvars, d, v.subspan(off, mcount)));
      }
    if (!verify_complex(problem, m).exact()) throw std::logic_error("skew syzygy failed symbolic re-verification");
    out.push_back(m.normalized());
  }
  return out;
}

bool ComplexReport::exact() const {
  for (const auto& row : residuals)
    for (const auto& p : row)
      if (!p.is_zero()) return false;
  return true;
}

ComplexReport verify_complex(const SyzygyProblem& problem, const SkewPolyMatrix& m) {
  ComplexReport report;
  for (const auto& g : problem.rows) {
    if (g.size() != m.n()) throw std::invalid_argument("row length differs from the matrix size");
    std::vector<MultiPoly> res;
    for (std::size_t j = 0; j < m.n(); ++j) {
      MultiPoly acc(m.nvars());
      for (std::size_t i = 0; i < m.n(); ++i) {
        if (i == j || g[i].is_zero()) continue;
        acc += g[i] * m.entry(i, j);
      }
      res.push_back(std::move(acc));
    }
    report.residuals.push_back(std::move(res));
  }
  return report;
}

}  // namespace ellsec
