#include "ellsec/cremona.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_map>

#include "ellsec/interpolate.hpp"
#include "ellsec/pfaffian.hpp"

namespace ellsec {

KleinTensor::KleinTensor(std::size_t n) : n_(n), c_(n * n * n) {
  if (n < 3) throw std::invalid_argument("Klein tensor needs n >= 3");
}

KleinTensor KleinTensor::from_matrix(const SkewPolyMatrix& phi) {
  if (phi.degree() != 1 || phi.nvars() != phi.n())
    throw std::invalid_argument("Klein tensor needs a skew matrix of linear forms in n variables");
  KleinTensor t(phi.n());
  for (std::size_t i = 0; i < t.n_; ++i)
    for (std::size_t j = i + 1; j < t.n_; ++j)
      for (std::size_t k = 0; k < t.n_; ++k) t.set(i, j, k, phi.upper(i, j).coeff(Monomial::variable(k)));
  return t;
}

Fp KleinTensor::c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }

void KleinTensor::set(std::size_t i, std::size_t j, std::size_t k, Fp v) {
  if (i == j) {
    if (!v.is_zero()) throw std::invalid_argument("Klein tensor is skew in its first two indices");
    return;
  }
  c_[(i * n_ + j) * n_ + k] = v;
  c_[(j * n_ + i) * n_ + k] = -v;
}

SkewPolyMatrix KleinTensor::x_view() const {
  SkewPolyMatrix m(n_, n_, 1);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      MultiPoly e(n_);
      for (std::size_t k = 0; k < n_; ++k) e.add_term(Monomial::variable(k), c(i, j, k));
      m.set(i, j, std::move(e));
    }
  return m;
}

std::vector<std::vector<MultiPoly>> KleinTensor::y_view() const {
  std::vector<std::vector<MultiPoly>> nu(n_, std::vector<MultiPoly>(n_, MultiPoly(n_)));
  for (std::size_t k = 0; k < n_; ++k)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t i = 0; i < n_; ++i) nu[k][j].add_term(Monomial::variable(i), c(i, j, k));
  return nu;
}

Matrix KleinTensor::at(std::span<const Fp> xi) const {
  Matrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      Fp acc;
      for (std::size_t k = 0; k < n_; ++k) acc += c(i, j, k) * xi[k];
      m(i, j) = acc;
    }
  return m;
}

Matrix KleinTensor::nu_at(std::span<const Fp> a) const {
  Matrix m(n_, n_);
  for (std::size_t k = 0; k < n_; ++k)
    for (std::size_t j = 0; j < n_; ++j) {
      Fp acc;
      for (std::size_t i = 0; i < n_; ++i) acc += c(i, j, k) * a[i];
      m(k, j) = acc;
    }
  return m;
}

namespace {

// Minors of nu on a row subset against the leading columns of `cols`, by
// Laplace expansion along the last column used; memoized by row subset.
class MinorMemo {
 public:
  MinorMemo(const std::vector<std::vector<MultiPoly>>& nu, std::vector<std::size_t> cols, std::size_t nvars)
      : nu_(nu), cols_(std::move(cols)), nvars_(nvars) {}

  const MultiPoly& operator()(std::uint32_t rows) {
    if (auto it = memo_.find(rows); it != memo_.end()) return it->second;
    MultiPoly value = compute(rows);
    return memo_.emplace(rows, std::move(value)).first->second;
  }

 private:
  MultiPoly compute(std::uint32_t rows) {
    const auto m = static_cast<std::size_t>(std::popcount(rows));
    if (m == 0) return MultiPoly::constant(nvars_, Fp(1));
    const std::size_t col = cols_[m - 1];
    MultiPoly acc(nvars_);
    std::size_t t = 0;
    for (std::uint32_t bits = rows; bits != 0; bits &= bits - 1, ++t) {
      const auto row = static_cast<std::size_t>(std::countr_zero(bits));
      const MultiPoly& entry = nu_[row][col];
      if (entry.is_zero()) continue;
      MultiPoly term = entry * (*this)(rows & ~(1u << row));
      if ((t + m - 1) % 2 == 0) {
        acc += term;
      } else {
        acc -= term;
      }
    }
    return acc;
  }

  const std::vector<std::vector<MultiPoly>>& nu_;
  std::vector<std::size_t> cols_;
  std::size_t nvars_;
  std::unordered_map<std::uint32_t, MultiPoly> memo_;
};

PolyMap sigma_for_column(const std::vector<std::vector<MultiPoly>>& nu, std::size_t n, std::size_t xi) {
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < n; ++j)
    if (j != xi) cols.push_back(j);
  MinorMemo memo(nu, cols, n);
  const std::uint32_t full = (1u << n) - 1;
  const MultiPoly divisor = MultiPoly::variable(n, xi);
  std::vector<MultiPoly> f;
  for (std::size_t k = 0; k < n; ++k) {
    const MultiPoly& minor = memo(full & ~(1u << k));
    auto q = exact_divide(minor, divisor);
    if (!q) {
      throw CremonaError("minor " + std::to_string(k + 1) + " of nu is not divisible by y" + std::to_string(xi + 1));
    }
    f.push_back(k % 2 == 0 ? *q : -*q);
  }
  return PolyMap(f, static_cast<unsigned>(n - 2));
}

std::vector<Fp> poly_mod(std::vector<Fp> a, const std::vector<Fp>& b) {
  while (a.size() >= b.size()) {
    const Fp q = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
    a.pop_back();
    while (!a.empty() && a.back().is_zero()) a.pop_back();
  }
  return a;
}

std::vector<Fp> poly_gcd(std::vector<Fp> a, std::vector<Fp> b) {
  while (!b.empty()) {
    auto r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool proportional_vectors(std::span<const Fp> a, std::span<const Fp> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

bool all_zero(std::span<const Fp> v) {
  return std::all_of(v.begin(), v.end(), [](Fp x) { return x.is_zero(); });
}

std::vector<Fp> random_vector(Rng& rng, std::size_t n) {
  std::vector<Fp> v(n);
  for (auto& x : v) x = rng.elem();
  return v;
}

}  // namespace

PolyMap sigma(const KleinTensor& phi) {
  const std::size_t n = phi.n();
  const auto nu = phi.y_view();
  PolyMap f = sigma_for_column(nu, n, n - 1);
  if (f.is_zero()) throw CremonaError("sigma vanishes identically; Phi is degenerate");
  const PolyMap check = sigma_for_column(nu, n, 0);
  if (!proportionality(check, f)) throw CremonaError("sigma depends on the choice of xi beyond a scalar");
  return f;
}

std::vector<MultiPoly> sigma_nu_composite(const KleinTensor& phi, const PolyMap& f) {
  const std::size_t n = phi.n();
  const auto nu = phi.y_view();
  std::vector<MultiPoly> out;
  for (std::size_t j = 0; j < n; ++j) {
    MultiPoly acc(n);
    for (std::size_t k = 0; k < n; ++k) acc += f[k] * nu[k][j];
    out.push_back(std::move(acc));
  }
  return out;
}

bool same_span(const PolyMap& a, const PolyMap& b) {
  if (a.nvars() != b.nvars() || a.degree() != b.degree()) return false;
  return echelon_span(a.forms(), a.nvars(), a.degree()) == echelon_span(b.forms(), b.nvars(), b.degree());
}

PolyMap forward_map(const KleinTensor& phi, const std::optional<PolyMap>& reference) {
  if (phi.n() % 2 == 0) throw std::invalid_argument("forward map needs odd n");
  PolyMap p = sub_pfaffians(phi.x_view());
  if (p.is_zero()) throw CremonaError("sub-pfaffians of Phi vanish identically");
  if (reference && !same_span(p, *reference))
    throw CremonaError("sub-pfaffians of Phi do not span the interpolated generators");
  return p;
}

Composition composition_check(const PolyMap& inner, const PolyMap& outer) {
  const std::size_t n = inner.size();
  if (outer.size() != n || inner.nvars() != n || outer.nvars() != n)
    throw std::invalid_argument("composition needs two self-maps of the same projective space");
  Composition out;
  out.composite = compose(outer, inner);
  std::size_t pivot = n;
  for (std::size_t i = 0; i < n && pivot == n; ++i)
    if (!out.composite[i].is_zero()) pivot = i;
  if (pivot == n) throw CremonaError("composite map collapses to zero");
  auto c = exact_divide(out.composite[pivot], MultiPoly::variable(n, pivot));
  if (!c) throw CremonaError("component " + std::to_string(pivot + 1) + " of the composite is not divisible by x");
  // g_j = c x_j for every j also gives g_i x_j = g_j x_i for every pair.
  for (std::size_t j = 0; j < n; ++j) {
    if (out.composite[j] != c->shifted(Monomial::variable(j)))
      throw CremonaError("composite is not proportional to the identity at component " + std::to_string(j + 1));
  }
  out.factor = std::move(*c);
  return out;
}

bool pointwise_inverse(const PolyMap& p, const PolyMap& f, Rng& rng, std::size_t samples) {
  const std::size_t n = p.size();
  for (std::size_t s = 0; s < samples; ++s) {
    const auto x = random_vector(rng, n);
    const auto y = p.evaluate(x);
    if (all_zero(y)) continue;
    const auto z = f.evaluate(y);
    if (all_zero(z) || !proportional_vectors(x, z)) return false;
  }
  return true;
}

bool no_common_factor(const PolyMap& forms, Rng& rng) {
  const std::size_t n = forms.nvars();
  const auto u = random_vector(rng, n);
  const auto v = random_vector(rng, n);
  std::vector<MultiPoly> line;
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly l(2);
    l.add_term(Monomial::variable(0), u[i]);
    l.add_term(Monomial::variable(1), v[i]);
    line.push_back(std::move(l));
  }
  const PolyMap restriction(line, 1);
  std::vector<Fp> g;
  for (const auto& form : forms.forms()) {
    const MultiPoly binary = compose(form, restriction);
    // Dehomogenize at t = 1: the coefficient of s^a t^(d-a) goes to slot a.
    std::vector<Fp> uni(forms.degree() + 1);
    for (const auto& [m, c] : binary.terms()) uni[m[0]] = c;
    while (!uni.empty() && uni.back().is_zero()) uni.pop_back();
    if (uni.empty()) continue;
    g = g.empty() ? uni : poly_gcd(g, uni);
  }
  return g.size() == 1;
}

RankProfile rank_profile(const KleinTensor& phi, const PolyMap& p, const PolyMap& f, const Curve& curve,
                         Rng& rng, std::size_t samples) {
  const std::size_t n = phi.n();
  if (n < 5 || n % 2 == 0) throw std::invalid_argument("rank profile needs odd n >= 5");
  const std::size_t r = (n - 1) / 2;
  RankProfile out;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto xi = curve.secant_sample(r - 1, n, rng);
    const std::size_t rk = rank(phi.at(xi));
    out.secant_ranks.push_back(rk);
    if (rk > n - 3)
      out.violations.push_back("rank " + std::to_string(rk) + " > n-3 at a secant sample " + std::to_string(s));
  }
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t rk = rank(phi.at(random_vector(rng, n)));
    out.generic_ranks.push_back(rk);
    if (rk != n - 1)
      out.violations.push_back("rank " + std::to_string(rk) + " != n-1 at generic xi " + std::to_string(s));
  }
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t rk = rank(phi.nu_at(random_vector(rng, n)));
    out.nu_ranks.push_back(rk);
    if (rk != n - 1)
      out.violations.push_back("rank nu(a) " + std::to_string(rk) + " != n-1 at sample " + std::to_string(s));
  }
  for (std::size_t s = 0; s < samples; ++s) {
    const auto a = p.evaluate(random_vector(rng, n));
    if (!all_zero(f.evaluate(a))) {
      ++out.f_nonvanishing;
    } else {
      out.violations.push_back("f(p(b*)) = 0 at sample " + std::to_string(s));
    }
  }
  return out;
}

}  // namespace ellsec
