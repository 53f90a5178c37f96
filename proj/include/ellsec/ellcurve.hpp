#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "ellsec/field.hpp"

namespace ellsec {

/// Point of a short Weierstrass curve: the point at infinity O or an affine pair.
struct CurvePoint {
  bool infinity = true;
  Fp x;
  Fp y;

  static CurvePoint at_infinity() { return {}; }
  static CurvePoint affine(Fp x, Fp y) { return {false, x, y}; }
  bool operator==(const CurvePoint&) const = default;
};

/// Function on the curve regular away from O, reduced mod y^2 = x^3 + ax + b:
/// f = c0(x) + y * c1(x). Coefficient vectors are indexed by the power of x.
struct CurveFunction {
  std::vector<Fp> c0;
  std::vector<Fp> c1;

  /// Order of the pole at O: max(2 deg c0, 3 + 2 deg c1); 0 for constants and
  /// for the zero function.
  unsigned pole_order() const;
  CurveFunction operator+(const CurveFunction& o) const;
  CurveFunction operator*(Fp c) const;
  bool operator==(const CurveFunction& o) const;

  static CurveFunction x_power(unsigned k);
  static CurveFunction y_times_x_power(unsigned k);
};

class Curve {
 public:
  /// y^2 = x^3 + a x + b; rejects a zero discriminant.
  Curve(Fp a, Fp b);

  Fp a() const { return a_; }
  Fp b() const { return b_; }
  Fp rhs(Fp x) const { return x * x * x + a_ * x + b_; }

  bool contains(const CurvePoint& p) const;
  CurvePoint negate(const CurvePoint& p) const;
  CurvePoint add(const CurvePoint& p, const CurvePoint& q) const;

  /// Affine point with x uniform among x whose rhs is a square; y is the
  /// smaller square root.
  CurvePoint random_point(Rng& rng) const;

  CurveFunction multiply(const CurveFunction& f, const CurveFunction& g) const;
  Fp eval(const CurveFunction& f, const CurvePoint& q) const;

  /// (g_1(q), ..., g_n(q)) for g = rr_basis(n).
  std::vector<Fp> embed(const CurvePoint& q, std::size_t n) const;

  /// Random nonzero combination of the embeddings of k points with distinct x.
  std::vector<Fp> secant_sample(std::size_t k, std::size_t n, Rng& rng) const;

 private:
  Fp a_;
  Fp b_;
};

/// Basis of the functions with pole order <= n at O, ordered by pole order
/// 0, 2, 3, ..., n: 1, x, y, x^2, xy, x^3, x^2 y, ...
std::vector<CurveFunction> rr_basis(std::size_t n);

/// Coordinates of f in rr_basis(n); throws if the pole order exceeds n.
std::vector<Fp> rr_coordinates(const CurveFunction& f, std::size_t n);

/// sum_i coords[i] * rr_basis(n)[i].
CurveFunction rr_combination(std::span<const Fp> coords);

inline constexpr int kSamplerRetries = 100;

}  // namespace ellsec
