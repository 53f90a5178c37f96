#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellsec/field.hpp"
#include "ellsec/monomial.hpp"

namespace ellsec {

class IntegrabilityError : public std::runtime_error {
 public:
  explicit IntegrabilityError(std::size_t index)
      : std::runtime_error("not a gradient: component " + std::to_string(index + 1) +
                           " differs from the derivative of the Euler integral"),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Sparse polynomial over F_p in a fixed number of variables. Terms are kept
/// in descending graded-lex order and never carry a zero coefficient.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Fp, GrlexGreater>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars);

  static MultiPoly constant(std::size_t nvars, Fp c);
  static MultiPoly variable(std::size_t nvars, std::size_t i);
  static MultiPoly term(std::size_t nvars, const Monomial& m, Fp c);
  /// Builds from explicit terms; with require_homogeneous the degrees are checked.
  static MultiPoly from_terms(std::size_t nvars, const std::vector<std::pair<Monomial, Fp>>& terms,
                              bool require_homogeneous = false);
  /// Inverse of to_dense: coefficients indexed by monomial_basis(nvars, degree).
  static MultiPoly from_dense(std::size_t nvars, unsigned degree, std::span<const Fp> coeffs);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  Fp coeff(const Monomial& m) const;
  /// Leading term under graded-lex; requires a nonzero polynomial.
  const std::pair<const Monomial, Fp>& leading() const;

  void add_term(const Monomial& m, Fp c);

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(Fp c) const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  bool operator==(const MultiPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  /// Multiplication by the monomial m (exponent shift).
  MultiPoly shifted(const Monomial& m) const;

  /// d/dx_i with a zero-based index.
  MultiPoly derivative(std::size_t i) const;
  Fp evaluate(std::span<const Fp> point) const;

  /// Dense coefficient vector in monomial_basis(nvars, degree) order. Terms of
  /// any other degree are rejected.
  std::vector<Fp> to_dense(unsigned degree) const;

  std::string to_string() const;

 private:
  void check_compatible(const MultiPoly& o) const;

  std::size_t nvars_ = 0;
  TermMap terms_;
};

/// Ordered tuple of homogeneous forms of one degree in a common ring.
class PolyMap {
 public:
  PolyMap() = default;
  PolyMap(std::vector<MultiPoly> forms, unsigned degree);

  std::size_t size() const { return forms_.size(); }
  unsigned degree() const { return degree_; }
  std::size_t nvars() const { return forms_.empty() ? 0 : forms_.front().nvars(); }
  const MultiPoly& operator[](std::size_t i) const { return forms_[i]; }
  const std::vector<MultiPoly>& forms() const { return forms_; }
  bool is_zero() const;
  bool operator==(const PolyMap&) const = default;

  std::vector<Fp> evaluate(std::span<const Fp> point) const;
  PolyMap operator*(Fp c) const;

  /// Rescaled so the leading coefficient of the first nonzero form is 1.
  PolyMap normalized() const;

 private:
  std::vector<MultiPoly> forms_;
  unsigned degree_ = 0;
};

/// P = Q * D, or nullopt when D does not divide P. Single-term divisors shift
/// exponents; general divisors use graded-lex division with a remainder test.
std::optional<MultiPoly> exact_divide(const MultiPoly& p, const MultiPoly& d);

/// Substitutes maps[i] for x_i in p (p has maps.size() variables).
MultiPoly compose(const MultiPoly& p, const PolyMap& maps);

/// Substitutes inner into every form of outer; shares the power products.
PolyMap compose(const PolyMap& outer, const PolyMap& inner);

/// F of degree d with dF/dx_i = g_i, via F = (1/d) sum x_i g_i.
MultiPoly euler_integrate(const PolyMap& g, unsigned d);

/// lambda with a = lambda * b, or nullopt if no such scalar exists (a, b != 0).
std::optional<Fp> proportionality(const MultiPoly& a, const MultiPoly& b);
std::optional<Fp> proportionality(const PolyMap& a, const PolyMap& b);

}  // namespace ellsec
