#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellsec/ellcurve.hpp"
#include "ellsec/linalg.hpp"
#include "ellsec/multipoly.hpp"
#include "ellsec/skewsolve.hpp"

namespace ellsec {

class CremonaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficients c_ijk of Phi, skew in (i, j) (indices into A) and k indexing B.
/// x-view: Phi_ij = sum_k c_ijk x_k. y-view nu: entry (k, j) = sum_i c_ijk y_i.
class KleinTensor {
 public:
  explicit KleinTensor(std::size_t n);
  /// From a skew matrix of linear forms in n variables.
  static KleinTensor from_matrix(const SkewPolyMatrix& phi);

  std::size_t n() const { return n_; }
  Fp c(std::size_t i, std::size_t j, std::size_t k) const;
  /// Sets c_ijk and c_jik = -c_ijk.
  void set(std::size_t i, std::size_t j, std::size_t k, Fp v);

  SkewPolyMatrix x_view() const;
  /// n x n matrix of linear forms in y, rows k, columns j.
  std::vector<std::vector<MultiPoly>> y_view() const;
  /// Phi_xi at a point of P(B*).
  Matrix at(std::span<const Fp> xi) const;
  /// nu(a): rows k, columns j.
  Matrix nu_at(std::span<const Fp> a) const;

  bool operator==(const KleinTensor&) const = default;

 private:
  std::size_t n_;
  std::vector<Fp> c_;  // (i * n + j) * n + k
};

/// f = sigma_{n-2}(Phi): signed maximal minors of nu with column xi removed,
/// divided by y_xi. Computed for xi = y_n and cross-checked against xi = y_1.
PolyMap sigma(const KleinTensor& phi);

/// The composite sum_k f_k(y) nu_kj(y), one form of degree n-1 per column j.
std::vector<MultiPoly> sigma_nu_composite(const KleinTensor& phi, const PolyMap& f);

/// Echelon spans of the two maps coincide.
bool same_span(const PolyMap& a, const PolyMap& b);

/// Signed sub-pfaffians of the x-view. With a reference the spans must agree.
PolyMap forward_map(const KleinTensor& phi, const std::optional<PolyMap>& reference = std::nullopt);

struct Composition {
  PolyMap composite;  // g_i = outer_i(inner)
  MultiPoly factor;   // g_i = factor * x_i
};

/// outer(inner(x)) = c(x) * x, returning c. Throws CremonaError otherwise.
Composition composition_check(const PolyMap& inner, const PolyMap& outer);

/// f(p(x)) is projectively x at random points.
bool pointwise_inverse(const PolyMap& p, const PolyMap& f, Rng& rng, std::size_t samples);

/// Random-line probe: restricted to a random line the forms have a constant gcd.
bool no_common_factor(const PolyMap& forms, Rng& rng);

struct RankProfile {
  std::vector<std::size_t> secant_ranks;   // rank Phi_xi, xi on Sec^{r-1} C
  std::vector<std::size_t> generic_ranks;  // rank Phi_xi, xi generic
  std::vector<std::size_t> nu_ranks;       // rank nu(a), a generic
  std::size_t f_nonvanishing = 0;          // f(p(b*)) != 0 count
  std::vector<std::string> violations;
  bool pass() const { return violations.empty(); }
};

RankProfile rank_profile(const KleinTensor& phi, const PolyMap& p, const PolyMap& f, const Curve& curve,
                         Rng& rng, std::size_t samples);

}  // namespace ellsec
