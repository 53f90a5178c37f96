#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ellsec/multipoly.hpp"
#include "ellsec/skewsolve.hpp"

namespace ellsec {

/// {x_i, x_j} = Omega_ij for a skew matrix of quadrics, extended as a
/// biderivation. Nothing here assumes the Jacobi identity.
class QuadraticBracket {
 public:
  explicit QuadraticBracket(SkewPolyMatrix omega);

  std::size_t n() const { return omega_.n(); }
  const SkewPolyMatrix& omega() const { return omega_; }

  /// {g, h} = sum_ij dg/dx_i Omega_ij dh/dx_j.
  MultiPoly bracket(const MultiPoly& g, const MultiPoly& h) const;
  /// {{a,b},c} + {{b,c},a} + {{c,a},b}.
  MultiPoly jacobiator(const MultiPoly& a, const MultiPoly& b, const MultiPoly& c) const;
  /// J(x_i, x_j, x_k) for zero-based distinct indices.
  MultiPoly jacobiator(std::size_t i, std::size_t j, std::size_t k) const;

 private:
  SkewPolyMatrix omega_;
};

struct PoissonReport {
  bool jacobi_zero = true;
  bool casimirs_zero = true;
  std::size_t jacobiators_checked = 0;
  std::size_t casimir_pairs_checked = 0;
  std::vector<std::string> failures;
  bool pass() const { return jacobi_zero && casimirs_zero; }
};

/// Every J(x_i, x_j, x_k), i < j < k.
PoissonReport jacobi_check(const QuadraticBracket& b);

/// {x_i, C} for every coordinate and every candidate Casimir.
PoissonReport casimir_check(const QuadraticBracket& b, const std::vector<MultiPoly>& casimirs);

/// Both of the above.
PoissonReport poisson_check(const QuadraticBracket& b, const std::vector<MultiPoly>& casimirs);

struct EngineIdentity {
  MultiPoly lhs;  // J(x^d, x^(d-1) y, x^(d-1) z)
  MultiPoly rhs;  // d x^(3d-3) J(x, y, z)
  bool holds() const { return lhs == rhs; }
};

/// x, y, z are random linear forms drawn from rng.
EngineIdentity power_bracket_identity(const QuadraticBracket& b, unsigned d, Rng& rng);

}  // namespace ellsec
