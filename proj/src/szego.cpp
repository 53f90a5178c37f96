#include "ellsec/szego.hpp"

#include <algorithm>
#include <optional>

namespace ellsec {

Functional Functional::normalized(std::vector<Fp> coords) {
  auto lead = std::find_if(coords.begin(), coords.end(), [](Fp c) { return !c.is_zero(); });
  if (lead == coords.end()) throw std::invalid_argument("functional must be nonzero");
  const Fp s = lead->inv();
  for (auto& c : coords) c *= s;
  return {std::move(coords)};
}

Fp Functional::operator()(const CurveFunction& s) const {
  const auto v = rr_coordinates(s, coords.size());
  Fp acc;
  for (std::size_t i = 0; i < v.size(); ++i) acc += coords[i] * v[i];
  return acc;
}

ExtendedFunctional ExtendedFunctional::extend(const Functional& phi, Fp top) {
  ExtendedFunctional e{phi.coords};
  e.coords.push_back(top);
  return e;
}

Fp szego_value(const CurvePoint& q1, const CurvePoint& q2) {
  if (q1.infinity || q2.infinity) throw std::invalid_argument("Szego kernel needs affine points");
  if (q1.x == q2.x) throw std::invalid_argument("Szego kernel needs x1 != x2");
  return (q1.y + q2.y) / (q2.x - q1.x);
}

namespace {

struct PointPair {
  CurvePoint q1, q2;
};

PointPair random_pair(const Curve& curve, Rng& rng) {
  for (;;) {
    PointPair pp{curve.random_point(rng), curve.random_point(rng)};
    if (pp.q1.x != pp.q2.x) return pp;
  }
}

Fp product_value(const Curve& curve, const CurveFunction& s1, const CurveFunction& s2, const PointPair& pp) {
  const Fp anti = curve.eval(s1, pp.q1) * curve.eval(s2, pp.q2) - curve.eval(s2, pp.q1) * curve.eval(s1, pp.q2);
  return szego_value(pp.q1, pp.q2) * anti;
}

}  // namespace

Matrix expand_product(const Curve& curve, const CurveFunction& s1, const CurveFunction& s2, std::size_t n, Rng& rng,
                      std::size_t margin) {
  if (s1.pole_order() > n || s2.pole_order() > n) throw std::invalid_argument("sections must lie in rr_basis(n)");
  const std::size_t m = n + 1;
  const auto basis = rr_basis(m);
  auto row_for = [&](const PointPair& pp) {
    std::vector<Fp> g1(m), g2(m), row(m * m);
    for (std::size_t a = 0; a < m; ++a) {
      g1[a] = curve.eval(basis[a], pp.q1);
      g2[a] = curve.eval(basis[a], pp.q2);
    }
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) row[a * m + b] = g1[a] * g2[b];
    return row;
  };

  const std::size_t rows = m * m + margin;
  Matrix a(0, m * m);
  std::vector<Fp> rhs;
  for (std::size_t s = 0; s < rows; ++s) {
    const PointPair pp = random_pair(curve, rng);
    a.append_row(row_for(pp));
    rhs.push_back(product_value(curve, s1, s2, pp));
  }
  if (rank(a) != m * m) throw SzegoError("point pairs do not determine the expansion; resample");
  auto sol = solve(std::move(a), rhs);
  if (!sol) throw SzegoError("S * (s1 x s2 - s2 x s1) is not in the span of rr_basis(n+1) products");

  Matrix t(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) t(i, j) = (*sol)[i * m + j];

  for (std::size_t s = 0; s < kSzegoResidualPairs; ++s) {
    const PointPair pp = random_pair(curve, rng);
    const auto row = row_for(pp);
    Fp acc;
    for (std::size_t k = 0; k < row.size(); ++k) acc += row[k] * (*sol)[k];
    if (acc != product_value(curve, s1, s2, pp)) throw SzegoError("expansion fails at a fresh point pair");
  }
  return t;
}

Fp pairing(const Matrix& t, std::span<const Fp> ext) {
  if (t.rows() != ext.size() || t.cols() != ext.size()) throw std::invalid_argument("pairing size mismatch");
  Fp acc;
  for (std::size_t a = 0; a < t.rows(); ++a)
    for (std::size_t b = 0; b < t.cols(); ++b) acc += t(a, b) * ext[a] * ext[b];
  return acc;
}

Fp pi_phi(const Curve& curve, const Functional& phi, const CurveFunction& s1, const CurveFunction& s2, Rng& rng) {
  if (!phi(s1).is_zero() || !phi(s2).is_zero()) throw std::invalid_argument("sections must lie in ker phi");
  const Matrix t = expand_product(curve, s1, s2, phi.n(), rng);
  const Fp v0 = pairing(t, ExtendedFunctional::extend(phi, Fp(0)).coords);
  const Fp v1 = pairing(t, ExtendedFunctional::extend(phi, Fp(1)).coords);
  if (v0 != v1) throw SzegoError("Pi_phi depends on the extension of phi");
  return v0;
}

SzegoReport compare_brackets(const Curve& curve, const SkewPolyMatrix& omega, std::size_t trials, Rng& rng) {
  const std::size_t n = omega.n();
  SzegoReport report;
  report.trials = trials;
  std::optional<Fp> ratio;
  bool constant = true;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<Fp> coords(n);
    coords[0] = Fp(1);
    for (std::size_t i = 1; i < n; ++i) coords[i] = rng.elem();
    const Functional phi = Functional::normalized(coords);
    // Kernel vector: free c_2..c_n, then c_1 cancels phi since phi_1 = 1.
    auto kernel_vector = [&] {
      std::vector<Fp> c(n);
      Fp acc;
      for (std::size_t i = 1; i < n; ++i) {
        c[i] = rng.elem();
        acc += c[i] * phi.coords[i];
      }
      c[0] = -acc;
      return c;
    };
    const auto c1 = kernel_vector();
    const auto c2 = kernel_vector();

    const Matrix om = omega.at(phi.coords);
    Fp v1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v1 += c1[i] * c2[j] * om(i, j);

    Fp v2;
    try {
      v2 = pi_phi(curve, phi, rr_combination(c1), rr_combination(c2), rng);
    } catch (const SzegoError&) {
      report.extension_independent = false;
      constant = false;
      continue;
    }
    report.values.push_back({v1, v2});
    if (v1.is_zero() && v2.is_zero()) {
      ++report.degenerate;
      continue;
    }
    if (v2.is_zero()) {
      constant = false;
      continue;
    }
    const Fp r = v1 / v2;
    if (!ratio) {
      ratio = r;
    } else if (*ratio != r) {
      constant = false;
    }
  }
  report.constant_ratio = constant && ratio.has_value();
  if (ratio) report.ratio = *ratio;
  return report;
}

}  // namespace ellsec
