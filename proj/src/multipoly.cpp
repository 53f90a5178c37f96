#include "ellsec/multipoly.hpp"

#include <algorithm>
#include <sstream>

#include "ellsec/linalg.hpp"

namespace ellsec {

MultiPoly::MultiPoly(std::size_t nvars) : nvars_(nvars) {
  if (nvars == 0 || nvars > kMaxVars) throw std::invalid_argument("unsupported variable count");
}

MultiPoly MultiPoly::constant(std::size_t nvars, Fp c) { return term(nvars, Monomial{}, c); }

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw std::out_of_range("variable index out of range");
  return term(nvars, Monomial::variable(i), Fp(1));
}

MultiPoly MultiPoly::term(std::size_t nvars, const Monomial& m, Fp c) {
  MultiPoly p(nvars);
  p.add_term(m, c);
  return p;
}

MultiPoly MultiPoly::from_terms(std::size_t nvars, const std::vector<std::pair<Monomial, Fp>>& terms,
                                bool require_homogeneous) {
  MultiPoly p(nvars);
  for (const auto& [m, c] : terms) p.add_term(m, c);
  if (require_homogeneous && !p.is_homogeneous()) throw std::invalid_argument("terms are not homogeneous");
  return p;
}

MultiPoly MultiPoly::from_dense(std::size_t nvars, unsigned degree, std::span<const Fp> coeffs) {
  const MonomialBasis& basis = monomial_basis(nvars, degree);
  if (coeffs.size() != basis.size()) throw std::invalid_argument("dense coefficient length mismatch");
  MultiPoly p(nvars);
  // Basis order is the map order, so every insertion lands at the end.
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i].is_zero()) p.terms_.emplace_hint(p.terms_.end(), basis[i], coeffs[i]);
  }
  return p;
}

int MultiPoly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.begin()->first.degree());
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const unsigned d = terms_.begin()->first.degree();
  return terms_.rbegin()->first.degree() == d;
}

Fp MultiPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Fp{} : it->second;
}

const std::pair<const Monomial, Fp>& MultiPoly::leading() const {
  if (terms_.empty()) throw std::logic_error("leading term of the zero polynomial");
  return *terms_.begin();
}

void MultiPoly::add_term(const Monomial& m, Fp c) {
  if (c.is_zero()) return;
  for (std::size_t i = nvars_; i < kMaxVars; ++i)
    if (m.e[i] != 0) throw std::invalid_argument("monomial uses a variable outside the ring");
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r = *this;
  r += o;
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  MultiPoly r = *this;
  r -= o;
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

MultiPoly MultiPoly::operator*(Fp c) const {
  if (c.is_zero()) return MultiPoly(nvars_);
  MultiPoly r = *this;
  for (auto& [m, v] : r.terms_) v *= c;
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  check_compatible(o);
  if (is_zero() || o.is_zero()) return MultiPoly(nvars_);
  if (o.size() == 1) return shifted(o.leading().first) * o.leading().second;
  if (size() == 1) return o.shifted(leading().first) * leading().second;
  if (is_homogeneous() && o.is_homogeneous()) {
    const auto da = static_cast<unsigned>(degree());
    const auto db = static_cast<unsigned>(o.degree());
    std::vector<Fp> out(monomial_count(nvars_, da + db));
    kernels::dense_mul_add(nvars_, to_dense(da), da, o.to_dense(db), db, out);
    return from_dense(nvars_, da + db, out);
  }
  MultiPoly r(nvars_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

MultiPoly MultiPoly::shifted(const Monomial& m) const {
  MultiPoly r(nvars_);
  for (const auto& [t, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), t * m, c);
  return r;
}

MultiPoly MultiPoly::derivative(std::size_t i) const {
  if (i >= nvars_) throw std::out_of_range("derivative index out of range");
  MultiPoly r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m.e[i] == 0) continue;
    Monomial d = m;
    --d.e[i];
    r.add_term(d, c * Fp(static_cast<std::int64_t>(m.e[i])));
  }
  return r;
}

Fp MultiPoly::evaluate(std::span<const Fp> point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation point length mismatch");
  Fp acc;
  for (const auto& [m, c] : terms_) {
    Fp t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (m.e[i]) t *= point[i].pow(m.e[i]);
    acc += t;
  }
  return acc;
}

std::vector<Fp> MultiPoly::to_dense(unsigned degree) const {
  const MonomialBasis& basis = monomial_basis(nvars_, degree);
  std::vector<Fp> out(basis.size());
  for (const auto& [m, c] : terms_) {
    if (m.degree() != degree) throw std::invalid_argument("term degree differs from the dense degree");
    out[basis.rank(m)] = c;
  }
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.value();
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (m.e[i] == 0) continue;
      os << "*x" << (i + 1);
      if (m.e[i] > 1) os << "^" << unsigned{m.e[i]};
    }
  }
  return os.str();
}

PolyMap::PolyMap(std::vector<MultiPoly> forms, unsigned degree) : forms_(std::move(forms)), degree_(degree) {
  for (const auto& f : forms_) {
    if (f.nvars() != forms_.front().nvars()) throw std::invalid_argument("PolyMap forms live in different rings");
    if (!f.is_zero() && (!f.is_homogeneous() || f.degree() != static_cast<int>(degree)))
      throw std::invalid_argument("PolyMap form is not homogeneous of degree " + std::to_string(degree));
  }
}

bool PolyMap::is_zero() const {
  return std::all_of(forms_.begin(), forms_.end(), [](const MultiPoly& f) { return f.is_zero(); });
}

std::vector<Fp> PolyMap::evaluate(std::span<const Fp> point) const {
  std::vector<Fp> out;
  out.reserve(forms_.size());
  for (const auto& f : forms_) out.push_back(f.evaluate(point));
  return out;
}

PolyMap PolyMap::operator*(Fp c) const {
  std::vector<MultiPoly> out;
  out.reserve(forms_.size());
  for (const auto& f : forms_) out.push_back(f * c);
  return PolyMap(std::move(out), degree_);
}

PolyMap PolyMap::normalized() const {
  for (const auto& f : forms_) {
    if (!f.is_zero()) return *this * f.leading().second.inv();
  }
  return *this;
}

std::optional<MultiPoly> exact_divide(const MultiPoly& p, const MultiPoly& d) {
  if (d.is_zero()) throw DivisionByZero();
  if (p.nvars() != d.nvars()) throw std::invalid_argument("variable count mismatch");
  const auto& [lead_m, lead_c] = d.leading();
  const Fp lead_inv = lead_c.inv();
  if (d.size() == 1) {
    MultiPoly q(p.nvars());
    for (const auto& [m, c] : p.terms()) {
      if (!lead_m.divides(m)) return std::nullopt;
      q.add_term(m / lead_m, c * lead_inv);
    }
    return q;
  }
  MultiPoly q(p.nvars());
  MultiPoly rem = p;
  while (!rem.is_zero()) {
    const auto [rm, rc] = rem.leading();
    if (!lead_m.divides(rm)) return std::nullopt;
    const Monomial qm = rm / lead_m;
    const Fp qc = rc * lead_inv;
    q.add_term(qm, qc);
    rem -= d.shifted(qm) * qc;
  }
  return q;
}

MultiPoly compose(const MultiPoly& p, const PolyMap& maps) {
  if (p.nvars() != maps.size()) throw std::invalid_argument("compose: arity mismatch");
  if (!p.is_homogeneous()) {
    // Rare path: split by degree and recombine.
    std::map<unsigned, MultiPoly> parts;
    for (const auto& [m, c] : p.terms()) {
      auto [it, _] = parts.try_emplace(m.degree(), p.nvars());
      it->second.add_term(m, c);
    }
    MultiPoly out(maps.nvars());
    for (const auto& [deg, part] : parts) out += compose(part, maps);
    return out;
  }
  PolyMap outer({p}, p.is_zero() ? 0 : static_cast<unsigned>(p.degree()));
  return compose(outer, maps)[0];
}

PolyMap compose(const PolyMap& outer, const PolyMap& inner) {
  if (outer.nvars() != inner.size()) throw std::invalid_argument("compose: arity mismatch");
  const unsigned e = outer.degree();
  const unsigned d = inner.degree();
  const std::size_t nvars = inner.nvars();
  std::vector<std::vector<Fp>> outer_dense;
  std::vector<std::vector<Fp>> inner_dense;
  for (const auto& f : outer.forms()) outer_dense.push_back(f.to_dense(e));
  for (const auto& g : inner.forms()) inner_dense.push_back(g.to_dense(d));
  auto dense = kernels::active::compose_dense(nvars, outer_dense, e, inner_dense, d);
  std::vector<MultiPoly> forms;
  forms.reserve(dense.size());
  for (const auto& v : dense) forms.push_back(MultiPoly::from_dense(nvars, e * d, v));
  return PolyMap(std::move(forms), e * d);
}

MultiPoly euler_integrate(const PolyMap& g, unsigned d) {
  if (g.size() != g.nvars()) throw std::invalid_argument("gradient length must equal the variable count");
  if (d == 0 || g.degree() + 1 != d) throw std::invalid_argument("gradient degree must be d - 1");
  const std::size_t n = g.size();
  MultiPoly f(n);
  for (std::size_t i = 0; i < n; ++i) f += g[i].shifted(Monomial::variable(i));
  f = f * Fp(static_cast<std::int64_t>(d)).inv();
  for (std::size_t i = 0; i < n; ++i) {
    if (f.derivative(i) != g[i]) throw IntegrabilityError(i);
  }
  return f;
}

std::optional<Fp> proportionality(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars() != b.nvars() || a.size() != b.size() || b.is_zero()) return std::nullopt;
  const Fp lambda = a.leading().second / b.leading().second;
  if (a != b * lambda) return std::nullopt;
  return lambda;
}

std::optional<Fp> proportionality(const PolyMap& a, const PolyMap& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::optional<Fp> lambda;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero() != b[i].is_zero()) return std::nullopt;
    if (b[i].is_zero()) continue;
    if (!lambda) {
      lambda = proportionality(a[i], b[i]);
      if (!lambda) return std::nullopt;
    } else if (a[i] != b[i] * *lambda) {
      return std::nullopt;
    }
  }
  return lambda;
}

}  // namespace ellsec
