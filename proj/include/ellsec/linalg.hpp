#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ellsec/field.hpp"
#include "ellsec/monomial.hpp"

namespace ellsec {

/// Dense row-major matrix over F_p.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Fp& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Fp operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<Fp> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Fp> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  void append_row(std::span<const Fp> r);
  void swap_rows(std::size_t a, std::size_t b);
  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Fp> data_;
};

namespace kernels {

/// The serial kernels are the reference implementation. The omp versions
/// split independent rows (or independent products) across threads and must
/// return bit-identical results.
namespace serial {
// Forward elimination to unit-pivot echelon form; the pivot is the first
// nonzero row at or below the current one. Returns the pivot columns.
std::vector<std::size_t> row_echelon(Matrix& m);
// Clears the entries above each pivot of an echelon matrix.
void back_eliminate(Matrix& m, std::span<const std::size_t> pivots);
// Row s holds the value of every basis monomial at points[s].
Matrix evaluation_matrix(const MonomialBasis& basis, std::span<const std::vector<Fp>> points);
// outer[j] (degree e in inner.size() variables) evaluated at the inner forms
// (degree d in nvars variables); power products are shared across all j.
std::vector<std::vector<Fp>> compose_dense(std::size_t nvars, std::span<const std::vector<Fp>> outer,
                                           unsigned e, std::span<const std::vector<Fp>> inner,
                                           unsigned d);
}  // namespace serial

namespace omp {
std::vector<std::size_t> row_echelon(Matrix& m);
void back_eliminate(Matrix& m, std::span<const std::size_t> pivots);
Matrix evaluation_matrix(const MonomialBasis& basis, std::span<const std::vector<Fp>> points);
std::vector<std::vector<Fp>> compose_dense(std::size_t nvars, std::span<const std::vector<Fp>> outer,
                                           unsigned e, std::span<const std::vector<Fp>> inner,
                                           unsigned d);
}  // namespace omp

/// out += a * b for dense homogeneous forms of degrees da, db.
void dense_mul_add(std::size_t nvars, std::span<const Fp> a, unsigned da, std::span<const Fp> b,
                   unsigned db, std::span<Fp> out);

/// dst -= w * src over the column range [from, cols).
void axpy_neg(std::span<Fp> dst, std::span<const Fp> src, Fp w, std::size_t from);

#ifdef ELLSEC_HAVE_OPENMP
namespace active = omp;
#else
namespace active = serial;
#endif

}  // namespace kernels

std::size_t rank(Matrix m);

/// Nullspace basis, one vector per row, in reduced echelon form.
Matrix nullspace(Matrix m);

/// Reduced row echelon form with zero rows dropped.
Matrix rref(Matrix m);

/// Some x with a x = b, or nullopt for an inconsistent system.
std::optional<std::vector<Fp>> solve(Matrix a, std::span<const Fp> b);

Fp determinant(Matrix m);

}  // namespace ellsec
