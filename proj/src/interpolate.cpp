#include "ellsec/interpolate.hpp"

#include "ellsec/linalg.hpp"

namespace ellsec {

namespace {

std::vector<std::vector<Fp>> draw(const PointSampler& sampler, Rng& rng, std::size_t count) {
  std::vector<std::vector<Fp>> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) pts.push_back(sampler(rng));
  return pts;
}

}  // namespace

std::vector<MultiPoly> echelon_span(const std::vector<MultiPoly>& forms, std::size_t nvars, unsigned degree) {
  Matrix m(0, monomial_count(nvars, degree));
  for (const auto& f : forms) m.append_row(f.to_dense(degree));
  const Matrix r = rref(std::move(m));
  std::vector<MultiPoly> out;
  for (std::size_t i = 0; i < r.rows(); ++i) out.push_back(MultiPoly::from_dense(nvars, degree, r.row(i)));
  return out;
}

VanishingSpace vanishing_forms(std::size_t nvars, unsigned degree, const PointSampler& sampler, Rng& rng,
                               std::size_t margin) {
  if (margin == 0) throw std::invalid_argument("margin must be at least 1");
  const MonomialBasis& basis = monomial_basis(nvars, degree);
  const std::size_t batch = basis.size() + margin;

  auto pts = draw(sampler, rng, batch);
  Matrix space = nullspace(kernels::active::evaluation_matrix(basis, pts));
  std::size_t used = batch;
  std::size_t prev_dim = space.rows();
  bool stabilized = false;

  for (int round = 2; round <= kMaxStabilizationRounds && !stabilized; ++round) {
    if (space.rows() == 0) {
      stabilized = true;
      break;
    }
    // Values of the current basis on a fresh batch; its kernel is the
    // intersection of the current space with the new vanishing conditions.
    pts = draw(sampler, rng, batch);
    used += batch;
    const Matrix eval = kernels::active::evaluation_matrix(basis, pts);
    Matrix residual(batch, space.rows());
    for (std::size_t s = 0; s < batch; ++s) {
      auto erow = eval.row(s);
      for (std::size_t k = 0; k < space.rows(); ++k) {
        auto brow = space.row(k);
        Fp acc;
        for (std::size_t t = 0; t < basis.size(); ++t)
          if (!brow[t].is_zero()) acc += erow[t] * brow[t];
        residual(s, k) = acc;
      }
    }
    const Matrix keep = nullspace(std::move(residual));
    Matrix restricted(keep.rows(), basis.size());
    for (std::size_t i = 0; i < keep.rows(); ++i)
      for (std::size_t k = 0; k < space.rows(); ++k) {
        const Fp c = keep(i, k);
        if (c.is_zero()) continue;
        for (std::size_t t = 0; t < basis.size(); ++t) restricted(i, t) += c * space(k, t);
      }
    space = rref(std::move(restricted));
    stabilized = space.rows() == prev_dim;
    prev_dim = space.rows();
  }
  if (!stabilized) {
    throw NotStabilized("vanishing space of degree " + std::to_string(degree) + " did not stabilize in " +
                        std::to_string(kMaxStabilizationRounds) + " rounds");
  }

  VanishingSpace out;
  out.nvars = nvars;
  out.degree = degree;
  out.samples = used;
  out.stabilized = true;
  for (std::size_t i = 0; i < space.rows(); ++i) out.basis.push_back(MultiPoly::from_dense(nvars, degree, space.row(i)));
  return out;
}

PointSampler secant_sampler(const Curve& curve, std::size_t k, std::size_t n) {
  return [curve, k, n](Rng& rng) { return curve.secant_sample(k, n, rng); };
}

VanishingSpace secant_ideal_generators(const Curve& curve, std::size_t n, Rng& rng, std::size_t margin) {
  if (n < 5 || n % 2 == 0) throw std::invalid_argument("secant ideal generators need odd n >= 5");
  const std::size_t r = (n - 1) / 2;
  auto space = vanishing_forms(n, static_cast<unsigned>(r), secant_sampler(curve, r - 1, n), rng, margin);
  if (space.dim() != n) throw DimensionMismatch("ideal of Sec^{r-1} C in degree r", n, space.dim());
  return space;
}

VanishingSpace secant_hypersurface(const Curve& curve, std::size_t n, Rng& rng, std::size_t margin) {
  if (n < 5 || n % 2 == 0) throw std::invalid_argument("secant hypersurface needs odd n >= 5");
  const std::size_t r = (n - 1) / 2;
  auto space = vanishing_forms(n, static_cast<unsigned>(n), secant_sampler(curve, r, n), rng, margin);
  if (space.dim() != 1) throw DimensionMismatch("degree-n forms on Sec^r C", 1, space.dim());
  return space;
}

VanishingSpace secant_ci_pair(const Curve& curve, std::size_t n, Rng& rng, std::size_t margin) {
  if (n < 6 || n % 2 == 1) throw std::invalid_argument("secant complete intersection needs even n >= 6");
  const std::size_t r = (n - 2) / 2;
  auto space = vanishing_forms(n, static_cast<unsigned>(r + 1), secant_sampler(curve, r, n), rng, margin);
  if (space.dim() != 2) throw DimensionMismatch("degree-(r+1) forms on Sec^r C", 2, space.dim());
  return space;
}

}  // namespace ellsec
