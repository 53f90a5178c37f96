#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ellsec/ellcurve.hpp"
#include "ellsec/linalg.hpp"
#include "ellsec/skewsolve.hpp"

namespace ellsec {

class SzegoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// phi in the dual of rr_basis(n), scaled so its first nonzero coordinate is 1.
struct Functional {
  std::vector<Fp> coords;

  static Functional normalized(std::vector<Fp> coords);
  std::size_t n() const { return coords.size(); }
  Fp operator()(const CurveFunction& s) const;
};

/// phi extended to rr_basis(n + 1) by a chosen value on the top basis function.
struct ExtendedFunctional {
  std::vector<Fp> coords;
  static ExtendedFunctional extend(const Functional& phi, Fp top);
};

/// S(Q1, Q2) = (y1 + y2) / (x2 - x1), with the differential dx/2y at O.
Fp szego_value(const CurvePoint& q1, const CurvePoint& q2);

inline constexpr std::size_t kSzegoMargin = 16;
inline constexpr std::size_t kSzegoResidualPairs = 10;

/// t with S(Q1,Q2) (s1(Q1) s2(Q2) - s2(Q1) s1(Q2)) = sum t_ab g_a(Q1) g_b(Q2),
/// g = rr_basis(n + 1). Solved from random point pairs with x1 != x2, then
/// re-evaluated at fresh pairs. Note t is symmetric: swapping the points
/// flips the sign of both S and the antisymmetrized product.
Matrix expand_product(const Curve& curve, const CurveFunction& s1, const CurveFunction& s2, std::size_t n, Rng& rng,
                      std::size_t margin = kSzegoMargin);

/// sum t_ab e_a e_b.
Fp pairing(const Matrix& t, std::span<const Fp> ext);

/// Pi_phi(s1 ^ s2) for s1, s2 in ker phi, extending phi by 0; the value with
/// extension 1 must agree or SzegoError is thrown.
Fp pi_phi(const Curve& curve, const Functional& phi, const CurveFunction& s1, const CurveFunction& s2, Rng& rng);

struct SzegoTrial {
  Fp omega_value;
  Fp szego_value;
};

struct SzegoReport {
  Fp ratio;
  std::size_t trials = 0;
  std::size_t degenerate = 0;  // both sides zero; excluded from the ratio
  bool constant_ratio = false;
  bool extension_independent = true;
  std::vector<SzegoTrial> values;
  bool pass() const { return constant_ratio && extension_independent; }
};

/// Compares sum c1_i c2_j Omega_ij(phi) with Pi_phi(s1 ^ s2) over random trials.
SzegoReport compare_brackets(const Curve& curve, const SkewPolyMatrix& omega, std::size_t trials, Rng& rng);

}  // namespace ellsec
