#pragma once

#include <vector>

#include "ellsec/multipoly.hpp"
#include "ellsec/skewsolve.hpp"

namespace testing_support {

using namespace ellsec;

inline MultiPoly random_form(std::size_t nvars, unsigned degree, Rng& rng, double density = 1.0) {
  const MonomialBasis& b = monomial_basis(nvars, degree);
  MultiPoly p(nvars);
  for (std::size_t i = 0; i < b.size(); ++i)
    if (static_cast<double>(rng.bits() % 1000) < density * 1000) p.add_term(b[i], rng.elem());
  return p;
}

inline std::vector<Fp> random_point(std::size_t n, Rng& rng) {
  std::vector<Fp> v(n);
  for (auto& x : v) x = rng.elem();
  return v;
}

inline SkewPolyMatrix random_skew(std::size_t n, unsigned degree, Rng& rng) {
  SkewPolyMatrix m(n, n, degree);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, random_form(n, degree, rng));
  return m;
}

}  // namespace testing_support
