#pragma once

#include <cstddef>
#include <vector>

#include "ellsec/linalg.hpp"
#include "ellsec/multipoly.hpp"

namespace ellsec {

/// n x n skew-symmetric matrix of forms of one degree. Only the strict upper
/// triangle is stored, so skew-symmetry holds by construction.
class SkewPolyMatrix {
 public:
  SkewPolyMatrix() = default;
  SkewPolyMatrix(std::size_t n, std::size_t nvars, unsigned degree);

  std::size_t n() const { return n_; }
  std::size_t nvars() const { return nvars_; }
  unsigned degree() const { return degree_; }

  /// Entry (i, j), zero-based; the lower triangle is the negated upper one.
  MultiPoly entry(std::size_t i, std::size_t j) const;
  const MultiPoly& upper(std::size_t i, std::size_t j) const { return upper_[pair_index(i, j)]; }
  /// Sets (i, j) for i != j; the mirrored entry follows.
  void set(std::size_t i, std::size_t j, MultiPoly value);

  bool is_zero() const;
  SkewPolyMatrix operator*(Fp c) const;
  bool operator==(const SkewPolyMatrix&) const = default;

  /// Rescaled so the leading coefficient of the first nonzero upper entry
  /// (pairs in lexicographic order) is 1.
  SkewPolyMatrix normalized() const;

  /// Numeric specialization at a point.
  Matrix at(std::span<const Fp> point) const;

  /// Position of (i, j), i < j, in lexicographic pair order.
  std::size_t pair_index(std::size_t i, std::size_t j) const;

 private:
  std::size_t n_ = 0;
  std::size_t nvars_ = 0;
  unsigned degree_ = 0;
  std::vector<MultiPoly> upper_;
};

/// Rows g (each n forms of one common degree) whose products g . M must vanish.
struct SyzygyProblem {
  std::vector<PolyMap> rows;
  unsigned entry_degree = 1;
};

/// Basis of { M skew with entries of degree entry_degree : g . M = 0 for every row g }.
/// Each returned matrix has been re-verified symbolically.
std::vector<SkewPolyMatrix> skew_syzygy(const SyzygyProblem& problem);

struct ComplexReport {
  /// residuals[r][j] = sum_i rows[r][i] * M(i, j).
  std::vector<std::vector<MultiPoly>> residuals;
  bool exact() const;
};

ComplexReport verify_complex(const SyzygyProblem& problem, const SkewPolyMatrix& m);

}  // namespace ellsec
