#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ellsec {

inline constexpr std::size_t kMaxVars = 12;
inline constexpr unsigned kMaxExponent = 255;

/// Exponent vector. Unused trailing slots are zero, so equality and ordering
/// never need the variable count.
struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};

  unsigned degree() const {
    unsigned d = 0;
    for (auto x : e) d += x;
    return d;
  }
  std::uint8_t operator[](std::size_t i) const { return e[i]; }
  std::uint8_t& operator[](std::size_t i) { return e[i]; }

  static Monomial variable(std::size_t i) {
    Monomial m;
    m.e[i] = 1;
    return m;
  }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  /// Quotient; requires o.divides(*this).
  Monomial operator/(const Monomial& o) const {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.e[i] = static_cast<std::uint8_t>(e[i] - o.e[i]);
    return m;
  }
  bool operator==(const Monomial&) const = default;
};

/// Graded-lex: higher total degree first, then lexicographic with x1 > x2 > ...
std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b);

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) > 0; }
};

std::uint64_t binomial(unsigned n, unsigned k);

/// Number of monomials of degree d in n variables.
std::size_t monomial_count(std::size_t nvars, unsigned degree);

/// All monomials of one degree, listed in descending graded-lex order. This
/// order fixes the coefficient-vector layout used by every solver.
class MonomialBasis {
 public:
  MonomialBasis(std::size_t nvars, unsigned degree);

  std::size_t nvars() const { return nvars_; }
  unsigned degree() const { return degree_; }
  std::size_t size() const { return monos_.size(); }
  const Monomial& operator[](std::size_t i) const { return monos_[i]; }
  const std::vector<Monomial>& monomials() const { return monos_; }

  /// Position of m (which must have this basis' degree and variable count).
  std::size_t rank(const Monomial& m) const;

  /// For degree > 0: monomial i = (basis of degree-1)[parent(i)] * x_{parent_var(i)}.
  std::uint32_t parent(std::size_t i) const { return parent_[i]; }
  std::uint8_t parent_var(std::size_t i) const { return parent_var_[i]; }

 private:
  std::size_t nvars_;
  unsigned degree_;
  std::vector<Monomial> monos_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> parent_var_;
};

/// Shared, lazily built basis. Thread-safe.
const MonomialBasis& monomial_basis(std::size_t nvars, unsigned degree);

/// Table t[ib * |A| + ia] = rank of (A[ia] * B[ib]) in the degree da+db basis.
/// Shared and lazily built; thread-safe.
const std::vector<std::uint32_t>& product_table(std::size_t nvars, unsigned da, unsigned db);

}  // namespace ellsec
