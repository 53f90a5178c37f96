#include "ellsec/ellcurve.hpp"

#include <algorithm>

namespace ellsec {

namespace {

int poly_degree(const std::vector<Fp>& c) {
  for (std::size_t i = c.size(); i-- > 0;)
    if (!c[i].is_zero()) return static_cast<int>(i);
  return -1;
}

std::vector<Fp> poly_add(const std::vector<Fp>& a, const std::vector<Fp>& b) {
  std::vector<Fp> r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

std::vector<Fp> poly_mul(const std::vector<Fp>& a, const std::vector<Fp>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Fp> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Fp poly_eval(const std::vector<Fp>& c, Fp x) {
  Fp acc;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

bool poly_equal(const std::vector<Fp>& a, const std::vector<Fp>& b) {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    Fp x = i < a.size() ? a[i] : Fp{};
    Fp y = i < b.size() ? b[i] : Fp{};
    if (x != y) return false;
  }
  return true;
}

}  // namespace

unsigned CurveFunction::pole_order() const {
  const int d0 = poly_degree(c0);
  const int d1 = poly_degree(c1);
  int order = 0;
  if (d0 >= 0) order = 2 * d0;
  if (d1 >= 0) order = std::max(order, 3 + 2 * d1);
  return static_cast<unsigned>(order);
}

CurveFunction CurveFunction::operator+(const CurveFunction& o) const {
  return {poly_add(c0, o.c0), poly_add(c1, o.c1)};
}

CurveFunction CurveFunction::operator*(Fp c) const {
  CurveFunction r = *this;
  for (auto& v : r.c0) v *= c;
  for (auto& v : r.c1) v *= c;
  return r;
}

bool CurveFunction::operator==(const CurveFunction& o) const {
  return poly_equal(c0, o.c0) && poly_equal(c1, o.c1);
}

CurveFunction CurveFunction::x_power(unsigned k) {
  CurveFunction f;
  f.c0.assign(k + 1, Fp{});
  f.c0[k] = Fp(1);
  return f;
}

CurveFunction CurveFunction::y_times_x_power(unsigned k) {
  CurveFunction f;
  f.c1.assign(k + 1, Fp{});
  f.c1[k] = Fp(1);
  return f;
}

Curve::Curve(Fp a, Fp b) : a_(a), b_(b) {
  if ((Fp(4) * a * a * a + Fp(27) * b * b).is_zero()) throw std::invalid_argument("singular curve: 4a^3 + 27b^2 = 0");
}

bool Curve::contains(const CurvePoint& p) const { return p.infinity || p.y * p.y == rhs(p.x); }

CurvePoint Curve::negate(const CurvePoint& p) const {
  if (p.infinity) return p;
  return CurvePoint::affine(p.x, -p.y);
}

CurvePoint Curve::add(const CurvePoint& p, const CurvePoint& q) const {
  if (p.infinity) return q;
  if (q.infinity) return p;
  Fp slope;
  if (p.x == q.x) {
    if (p.y + q.y == Fp{}) return CurvePoint::at_infinity();
    slope = (Fp(3) * p.x * p.x + a_) / (Fp(2) * p.y);
  } else {
    slope = (q.y - p.y) / (q.x - p.x);
  }
  const Fp x3 = slope * slope - p.x - q.x;
  const Fp y3 = slope * (p.x - x3) - p.y;
  return CurvePoint::affine(x3, y3);
}

CurvePoint Curve::random_point(Rng& rng) const {
  for (;;) {
    const Fp x = rng.elem();
    if (auto y = rhs(x).sqrt()) return CurvePoint::affine(x, *y);
  }
}

CurveFunction Curve::multiply(const CurveFunction& f, const CurveFunction& g) const {
  // (f0 + y f1)(g0 + y g1) = f0 g0 + rhs(x) f1 g1 + y (f0 g1 + f1 g0)
  const std::vector<Fp> cubic{b_, a_, Fp{}, Fp(1)};
  CurveFunction r;
  r.c0 = poly_add(poly_mul(f.c0, g.c0), poly_mul(cubic, poly_mul(f.c1, g.c1)));
  r.c1 = poly_add(poly_mul(f.c0, g.c1), poly_mul(f.c1, g.c0));
  return r;
}

Fp Curve::eval(const CurveFunction& f, const CurvePoint& q) const {
  if (q.infinity) throw std::invalid_argument("cannot evaluate at the point at infinity");
  return poly_eval(f.c0, q.x) + q.y * poly_eval(f.c1, q.x);
}

std::vector<Fp> Curve::embed(const CurvePoint& q, std::size_t n) const {
  if (q.infinity) throw std::invalid_argument("cannot embed the point at infinity");
  std::vector<Fp> out;
  out.reserve(n);
  for (const auto& g : rr_basis(n)) out.push_back(eval(g, q));
  return out;
}

std::vector<Fp> Curve::secant_sample(std::size_t k, std::size_t n, Rng& rng) const {
  if (k == 0 || 2 * k > n) throw std::invalid_argument("secant sampler needs 1 <= k <= n/2");
  for (int attempt = 0; attempt < kSamplerRetries; ++attempt) {
    std::vector<CurvePoint> pts;
    bool collided = false;
    for (std::size_t j = 0; j < k && !collided; ++j) {
      CurvePoint q = random_point(rng);
      for (const auto& other : pts) collided = collided || other.x == q.x;
      pts.push_back(q);
    }
    if (collided) continue;
    std::vector<Fp> out(n);
    for (const auto& q : pts) {
      const Fp lambda = rng.nonzero_elem();
      const auto v = embed(q, n);
      for (std::size_t i = 0; i < n; ++i) out[i] += lambda * v[i];
    }
    if (std::any_of(out.begin(), out.end(), [](Fp c) { return !c.is_zero(); })) return out;
  }
  throw std::runtime_error("secant sampler exceeded its retry cap");
}

std::vector<CurveFunction> rr_basis(std::size_t n) {
  if (n < 1) throw std::invalid_argument("rr_basis needs n >= 1");
  std::vector<CurveFunction> basis{CurveFunction::x_power(0)};
  for (unsigned order = 2; basis.size() < n; ++order) {
    basis.push_back(order % 2 == 0 ? CurveFunction::x_power(order / 2) : CurveFunction::y_times_x_power((order - 3) / 2));
  }
  return basis;
}

std::vector<Fp> rr_coordinates(const CurveFunction& f, std::size_t n) {
  if (f.pole_order() > n) throw std::invalid_argument("function has pole order above n");
  std::vector<Fp> out(n);
  // x^k sits at pole order 2k, y x^k at 2k + 3; index = order - 1 except for 1.
  for (std::size_t k = 0; k < f.c0.size(); ++k)
    if (!f.c0[k].is_zero()) out[k == 0 ? 0 : 2 * k - 1] = f.c0[k];
  for (std::size_t k = 0; k < f.c1.size(); ++k)
    if (!f.c1[k].is_zero()) out[2 * k + 2] = f.c1[k];
  return out;
}

CurveFunction rr_combination(std::span<const Fp> coords) {
  const auto basis = rr_basis(coords.size());
  CurveFunction f;
  for (std::size_t i = 0; i < coords.size(); ++i) f = f + basis[i] * coords[i];
  return f;
}

}  // namespace ellsec
