#include "ellsec/monomial.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace ellsec {

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned{e[i]} + o.e[i];
    if (s > kMaxExponent) throw std::overflow_error("monomial exponent overflow");
    m.e[i] = static_cast<std::uint8_t>(s);
  }
  return m;
}

std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (a.e[i] != b.e[i]) return a.e[i] <=> b.e[i];
  }
  return std::strong_ordering::equal;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t monomial_count(std::size_t nvars, unsigned degree) {
  if (nvars == 0) return degree == 0 ? 1 : 0;
  return binomial(degree + static_cast<unsigned>(nvars) - 1, static_cast<unsigned>(nvars) - 1);
}

namespace {

void enumerate(std::size_t nvars, std::size_t pos, unsigned remaining, Monomial& cur,
               std::vector<Monomial>& out) {
  if (pos + 1 == nvars) {
    cur.e[pos] = static_cast<std::uint8_t>(remaining);
    out.push_back(cur);
    cur.e[pos] = 0;
    return;
  }
  for (int v = static_cast<int>(remaining); v >= 0; --v) {
    cur.e[pos] = static_cast<std::uint8_t>(v);
    enumerate(nvars, pos + 1, remaining - static_cast<unsigned>(v), cur, out);
  }
  cur.e[pos] = 0;
}

}  // namespace

MonomialBasis::MonomialBasis(std::size_t nvars, unsigned degree) : nvars_(nvars), degree_(degree) {
  if (nvars == 0 || nvars > kMaxVars) throw std::invalid_argument("unsupported variable count");
  if (degree > kMaxExponent) throw std::invalid_argument("degree too large");
  monos_.reserve(monomial_count(nvars, degree));
  Monomial cur;
  enumerate(nvars, 0, degree, cur, monos_);
  if (degree > 0) {
    const MonomialBasis& lower = monomial_basis(nvars, degree - 1);
    parent_.resize(monos_.size());
    parent_var_.resize(monos_.size());
    for (std::size_t i = 0; i < monos_.size(); ++i) {
      std::size_t j = nvars - 1;
      while (monos_[i].e[j] == 0) --j;
      Monomial p = monos_[i];
      --p.e[j];
      parent_[i] = static_cast<std::uint32_t>(lower.rank(p));
      parent_var_[i] = static_cast<std::uint8_t>(j);
    }
  }
}

std::size_t MonomialBasis::rank(const Monomial& m) const {
  std::size_t r = 0;
  unsigned rem = degree_;
  for (std::size_t i = 0; i + 1 < nvars_; ++i) {
    const unsigned after = static_cast<unsigned>(nvars_ - i - 1);
    if (rem > m.e[i]) r += binomial(rem - m.e[i] - 1 + after, after);
    rem -= m.e[i];
  }
  return r;
}

const MonomialBasis& monomial_basis(std::size_t nvars, unsigned degree) {
  static std::recursive_mutex mu;
  static std::map<std::pair<std::size_t, unsigned>, std::unique_ptr<MonomialBasis>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{nvars, degree}];
  if (!slot) slot = std::make_unique<MonomialBasis>(nvars, degree);
  return *slot;
}

const std::vector<std::uint32_t>& product_table(std::size_t nvars, unsigned da, unsigned db) {
  static std::mutex mu;
  static std::map<std::tuple<std::size_t, unsigned, unsigned>, std::unique_ptr<std::vector<std::uint32_t>>>
      cache;
  const MonomialBasis& a = monomial_basis(nvars, da);
  const MonomialBasis& b = monomial_basis(nvars, db);
  const MonomialBasis& c = monomial_basis(nvars, da + db);
  std::lock_guard lock(mu);
  auto& slot = cache[{nvars, da, db}];
  if (!slot) {
    auto table = std::make_unique<std::vector<std::uint32_t>>(a.size() * b.size());
    for (std::size_t ib = 0; ib < b.size(); ++ib)
      for (std::size_t ia = 0; ia < a.size(); ++ia)
        (*table)[ib * a.size() + ia] = static_cast<std::uint32_t>(c.rank(a[ia] * b[ib]));
    slot = std::move(table);
  }
  return *slot;
}

}  // namespace ellsec
