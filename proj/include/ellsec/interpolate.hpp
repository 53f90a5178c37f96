#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellsec/ellcurve.hpp"
#include "ellsec/multipoly.hpp"

namespace ellsec {

class DimensionMismatch : public std::runtime_error {
 public:
  DimensionMismatch(const std::string& what, std::size_t expected, std::size_t found)
      : std::runtime_error(what + ": expected dimension " + std::to_string(expected) + ", found " +
                           std::to_string(found)),
        expected_(expected),
        found_(found) {}
  std::size_t expected() const { return expected_; }
  std::size_t found() const { return found_; }

 private:
  std::size_t expected_;
  std::size_t found_;
};

class NotStabilized : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degree-d forms vanishing on every retained sample. The basis is the reduced
/// row echelon form of the coefficient vectors in descending graded-lex order.
struct VanishingSpace {
  std::size_t nvars = 0;
  unsigned degree = 0;
  std::vector<MultiPoly> basis;
  std::size_t samples = 0;
  bool stabilized = false;

  std::size_t dim() const { return basis.size(); }
  PolyMap as_polymap() const { return PolyMap(basis, degree); }
};

using PointSampler = std::function<std::vector<Fp>(Rng&)>;

inline constexpr std::size_t kDefaultMargin = 25;
inline constexpr int kMaxStabilizationRounds = 5;

/// Nullspace of the evaluation matrix on #monomials + margin samples, then
/// restricted by fresh batches until two consecutive rounds agree.
VanishingSpace vanishing_forms(std::size_t nvars, unsigned degree, const PointSampler& sampler, Rng& rng,
                               std::size_t margin = kDefaultMargin);

/// Sec^k C sampler for the embedding by rr_basis(n).
PointSampler secant_sampler(const Curve& curve, std::size_t k, std::size_t n);

/// Odd n >= 5, r = (n-1)/2: the n forms of degree r vanishing on Sec^{r-1} C.
VanishingSpace secant_ideal_generators(const Curve& curve, std::size_t n, Rng& rng,
                                       std::size_t margin = kDefaultMargin);

/// Odd n >= 5: the degree-n equation of the hypersurface Sec^r C (dimension 1).
VanishingSpace secant_hypersurface(const Curve& curve, std::size_t n, Rng& rng,
                                   std::size_t margin = kDefaultMargin);

/// Even n >= 6, r = (n-2)/2: the two forms of degree r+1 cutting out Sec^r C.
VanishingSpace secant_ci_pair(const Curve& curve, std::size_t n, Rng& rng, std::size_t margin = kDefaultMargin);

/// Reduced echelon basis of span(forms); all forms homogeneous of one degree.
std::vector<MultiPoly> echelon_span(const std::vector<MultiPoly>& forms, std::size_t nvars, unsigned degree);

}  // namespace ellsec
