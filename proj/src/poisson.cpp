#include "ellsec/poisson.hpp"

#include <array>
#include <stdexcept>

namespace ellsec {

QuadraticBracket::QuadraticBracket(SkewPolyMatrix omega) : omega_(std::move(omega)) {
  if (omega_.degree() != 2) throw std::invalid_argument("quadratic bracket needs quadric entries");
  if (omega_.nvars() != omega_.n()) throw std::invalid_argument("bracket matrix size differs from the ring");
}

MultiPoly QuadraticBracket::bracket(const MultiPoly& g, const MultiPoly& h) const {
  const std::size_t n = this->n();
  if (g.nvars() != n || h.nvars() != n) throw std::invalid_argument("bracket arguments live in the wrong ring");
  std::vector<MultiPoly> dg, dh;
  for (std::size_t i = 0; i < n; ++i) {
    dg.push_back(g.derivative(i));
    dh.push_back(h.derivative(i));
  }
  MultiPoly acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (dg[i].is_zero()) continue;
    MultiPoly w(n);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && !dh[j].is_zero()) w += omega_.entry(i, j) * dh[j];
    if (!w.is_zero()) acc += dg[i] * w;
  }
  return acc;
}

MultiPoly QuadraticBracket::jacobiator(const MultiPoly& a, const MultiPoly& b, const MultiPoly& c) const {
  return bracket(bracket(a, b), c) + bracket(bracket(b, c), a) + bracket(bracket(c, a), b);
}

MultiPoly QuadraticBracket::jacobiator(std::size_t i, std::size_t j, std::size_t k) const {
  if (i == j || j == k || i == k) throw std::invalid_argument("jacobiator needs distinct indices");
  const std::size_t n = this->n();
  // {Omega_ij, x_k} = sum_l dOmega_ij/dx_l Omega_lk, then cyclically.
  auto term = [&](std::size_t a, std::size_t b, std::size_t c) {
    const MultiPoly e = omega_.entry(a, b);
    MultiPoly acc(n);
    for (std::size_t l = 0; l < n; ++l) {
      if (l == c) continue;
      MultiPoly d = e.derivative(l);
      if (!d.is_zero()) acc += d * omega_.entry(l, c);
    }
    return acc;
  };
  return term(i, j, k) + term(j, k, i) + term(k, i, j);
}

PoissonReport jacobi_check(const QuadraticBracket& b) {
  const std::size_t n = b.n();
  std::vector<std::array<std::size_t, 3>> triples;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) triples.push_back({i, j, k});
  std::vector<char> zero(triples.size(), 1);
#ifdef ELLSEC_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::size_t t = 0; t < triples.size(); ++t) {
    const auto& [i, j, k] = triples[t];
    zero[t] = b.jacobiator(i, j, k).is_zero() ? 1 : 0;
  }
  PoissonReport report;
  report.jacobiators_checked = triples.size();
  for (std::size_t t = 0; t < triples.size(); ++t) {
    if (zero[t]) continue;
    report.jacobi_zero = false;
    report.failures.push_back("J(x" + std::to_string(triples[t][0] + 1) + ",x" + std::to_string(triples[t][1] + 1) +
                              ",x" + std::to_string(triples[t][2] + 1) + ") != 0");
  }
  return report;
}

PoissonReport casimir_check(const QuadraticBracket& b, const std::vector<MultiPoly>& casimirs) {
  PoissonReport report;
  const std::size_t n = b.n();
  for (std::size_t c = 0; c < casimirs.size(); ++c)
    for (std::size_t i = 0; i < n; ++i) {
      ++report.casimir_pairs_checked;
      if (b.bracket(MultiPoly::variable(n, i), casimirs[c]).is_zero()) continue;
      report.casimirs_zero = false;
      report.failures.push_back("{x" + std::to_string(i + 1) + ", C" + std::to_string(c + 1) + "} != 0");
    }
  return report;
}

PoissonReport poisson_check(const QuadraticBracket& b, const std::vector<MultiPoly>& casimirs) {
  PoissonReport report = jacobi_check(b);
  PoissonReport cas = casimir_check(b, casimirs);
  report.casimirs_zero = cas.casimirs_zero;
  report.casimir_pairs_checked = cas.casimir_pairs_checked;
  report.failures.insert(report.failures.end(), cas.failures.begin(), cas.failures.end());
  return report;
}

EngineIdentity power_bracket_identity(const QuadraticBracket& b, unsigned d, Rng& rng) {
  if (d < 1) throw std::invalid_argument("engine identity needs d >= 1");
  const std::size_t n = b.n();
  auto linear = [&] {
    MultiPoly l(n);
    for (std::size_t i = 0; i < n; ++i) l.add_term(Monomial::variable(i), rng.elem());
    return l;
  };
  const MultiPoly x = linear(), y = linear(), z = linear();
  auto power = [&](const MultiPoly& p, unsigned e) {
    MultiPoly r = MultiPoly::constant(n, Fp(1));
    for (unsigned t = 0; t < e; ++t) r = r * p;
    return r;
  };
  const MultiPoly xd1 = power(x, d - 1);
  EngineIdentity out;
  out.lhs = b.jacobiator(xd1 * x, xd1 * y, xd1 * z);
  out.rhs = power(x, 3 * d - 3) * b.jacobiator(x, y, z) * Fp(static_cast<std::int64_t>(d));
  return out;
}

}  // namespace ellsec
