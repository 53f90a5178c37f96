#include "ellsec/pfaffian.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace ellsec {

namespace {

// Pf of the principal submatrix on the index set `mask`; shared across calls
// through the memo so every sub-pfaffian is computed once.
template <class T>
class PfaffianMemo {
 public:
  using Entry = std::function<T(std::size_t, std::size_t)>;
  PfaffianMemo(Entry entry, T one) : entry_(std::move(entry)), one_(std::move(one)) {}

  const T& operator()(std::uint32_t mask) {
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    T value = compute(mask);
    return memo_.emplace(mask, std::move(value)).first->second;
  }

 private:
  T compute(std::uint32_t mask) {
    if (mask == 0) return one_;
    if (std::popcount(mask) % 2 != 0) throw std::logic_error("pfaffian of an odd index set");
    const auto first = static_cast<std::size_t>(std::countr_zero(mask));
    const std::uint32_t rest = mask & ~(1u << first);
    T acc = one_ * Fp(0);
    bool plus = true;
    for (std::uint32_t bits = rest; bits != 0; bits &= bits - 1) {
      const auto j = static_cast<std::size_t>(std::countr_zero(bits));
      const T& sub = (*this)(rest & ~(1u << j));
      T term = entry_(first, j) * sub;
      if (plus) {
        acc += term;
      } else {
        acc -= term;
      }
      plus = !plus;
    }
    return acc;
  }

  Entry entry_;
  T one_;
  std::unordered_map<std::uint32_t, T> memo_;
};

void check_size(std::size_t n) {
  if (n > 31) throw std::invalid_argument("pfaffian index sets are limited to 31");
}

}  // namespace

MultiPoly pfaffian(const SkewPolyMatrix& m) {
  if (m.n() % 2 != 0) throw std::invalid_argument("pfaffian needs an even size");
  check_size(m.n());
  PfaffianMemo<MultiPoly> memo([&](std::size_t i, std::size_t j) { return m.upper(i, j); },
                               MultiPoly::constant(m.nvars(), Fp(1)));
  return memo((1u << m.n()) - 1);
}

Fp pfaffian(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("pfaffian needs a square matrix");
  if (m.rows() % 2 != 0) throw std::invalid_argument("pfaffian needs an even size");
  check_size(m.rows());
  PfaffianMemo<Fp> memo([&](std::size_t i, std::size_t j) { return m(i, j); }, Fp(1));
  return memo((1u << m.rows()) - 1);
}

PolyMap sub_pfaffians(const SkewPolyMatrix& m) {
  const std::size_t n = m.n();
  if (n % 2 == 0) throw std::invalid_argument("sub_pfaffians needs an odd size");
  check_size(n);
  PfaffianMemo<MultiPoly> memo([&](std::size_t i, std::size_t j) { return m.upper(i, j); },
                               MultiPoly::constant(m.nvars(), Fp(1)));
  const std::uint32_t full = (1u << n) - 1;
  std::vector<MultiPoly> comps;
  for (std::size_t i = 0; i < n; ++i) {
    const MultiPoly& pf = memo(full & ~(1u << i));
    comps.push_back(i % 2 == 0 ? pf : -pf);
  }
  PolyMap out(comps, static_cast<unsigned>((n - 1) / 2 * m.degree()));
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly acc(m.nvars());
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) acc += m.entry(i, j) * out[j];
    if (!acc.is_zero()) throw std::logic_error("M * sub_pfaffians(M) is not zero");
  }
  return out;
}

std::vector<Fp> sub_pfaffians(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("sub_pfaffians needs a square matrix");
  if (n % 2 == 0) throw std::invalid_argument("sub_pfaffians needs an odd size");
  check_size(n);
  PfaffianMemo<Fp> memo([&](std::size_t i, std::size_t j) { return m(i, j); }, Fp(1));
  const std::uint32_t full = (1u << n) - 1;
  std::vector<Fp> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Fp pf = memo(full & ~(1u << i));
    out[i] = i % 2 == 0 ? pf : -pf;
  }
  for (std::size_t i = 0; i < n; ++i) {
    Fp acc;
    for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * out[j];
    if (!acc.is_zero()) throw std::logic_error("M * sub_pfaffians(M) is not zero");
  }
  return out;
}

}  // namespace ellsec
