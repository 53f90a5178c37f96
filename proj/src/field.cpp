#include "ellsec/field.hpp"

#include <bit>
#include <cmath>
#include <numeric>

namespace ellsec {

namespace {

u64 mulmod_generic(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod_generic(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_generic(r, a, m);
    a = mulmod_generic(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic for every n < 2^64.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod_generic(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_generic(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Modulus::Modulus(u64 p) : p_(p) {
  if (p < 3 || p >= (1ULL << 62)) throw std::invalid_argument("modulus must lie in [3, 2^62)");
  if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  bits_ = static_cast<unsigned>(std::bit_width(p));
  mu_ = static_cast<u64>((static_cast<u128>(1) << (2 * bits_)) / p);
}

u64 Modulus::pow(u64 a, u64 e) const {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 Modulus::inv(u64 a) const {
  if (a == 0) throw DivisionByZero();
  // Extended Euclid on signed 128-bit values.
  __int128 t = 0, new_t = 1;
  __int128 r = p_, new_r = a;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p_;
  return static_cast<u64>(t);
}

namespace detail {
Modulus active_modulus{kDefaultPrime};
}

ScopedModulus::ScopedModulus(u64 p) : previous_(detail::active_modulus) {
  detail::active_modulus = Modulus(p);
}

ScopedModulus::~ScopedModulus() { detail::active_modulus = previous_; }

Fp::Fp(std::int64_t v) {
  const u64 p = modulus().value();
  if (v >= 0) {
    v_ = static_cast<u64>(v) % p;
  } else {
    u64 m = static_cast<u64>(-(v + 1)) + 1;  // |v| without overflow
    m %= p;
    v_ = m == 0 ? 0 : p - m;
  }
}

Fp Fp::from_decimal(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty field element string");
  bool negative = s[0] == '-';
  std::size_t start = negative ? 1 : 0;
  if (start == s.size()) throw std::invalid_argument("malformed field element: " + s);
  const Modulus& m = modulus();
  u64 acc = 0;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed field element: " + s);
    acc = m.add(m.mul(acc, 10), static_cast<u64>(s[i] - '0'));
  }
  Fp x = from_residue(acc);
  return negative ? -x : x;
}

Fp Fp::inv() const { return from_residue(modulus().inv(v_)); }

bool Fp::is_square() const {
  if (v_ == 0) return true;
  const u64 p = modulus().value();
  return pow((p - 1) / 2).value() == 1;
}

std::optional<Fp> Fp::sqrt() const {
  if (v_ == 0) return Fp{};
  if (!is_square()) return std::nullopt;
  const u64 p = modulus().value();
  Fp root;
  if (p % 4 == 3) {
    root = pow((p + 1) / 4);
  } else {
    // Tonelli-Shanks.
    u64 q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    Fp z(2);
    while (z.is_square()) z += Fp(1);
    Fp c = z.pow(q);
    Fp t = pow(q);
    root = pow((q + 1) / 2);
    unsigned m = s;
    while (t != Fp(1)) {
      unsigned i = 0;
      Fp t2 = t;
      while (t2 != Fp(1)) {
        t2 *= t2;
        ++i;
      }
      Fp b = c;
      for (unsigned j = 0; j + i + 1 < m; ++j) b *= b;
      m = i;
      c = b * b;
      t *= c;
      root *= b;
    }
  }
  Fp other = -root;
  return other.value() < root.value() ? other : root;
}

Fp Rng::elem() {
  const Modulus& m = modulus();
  const u64 mask = m.bits() >= 64 ? ~0ULL : ((1ULL << m.bits()) - 1);
  for (;;) {
    u64 x = engine_() & mask;
    if (x < m.value()) return Fp::from_residue(x);
  }
}

Fp Rng::nonzero_elem() {
  for (;;) {
    Fp x = elem();
    if (!x.is_zero()) return x;
  }
}

Rng Rng::derive(u64 seed, const std::string& label) {
  // FNV-1a over the label, mixed with the seed by splitmix64.
  u64 h = 1469598103934665603ULL;
  for (unsigned char ch : label) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  u64 z = seed + 0x9e3779b97f4a7c15ULL * (h | 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return Rng(z);
}

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Fp embed(const Rational& q) { return Fp(q.num) / Fp(q.den); }

std::optional<Rational> rational_reconstruct(Fp a) {
  const u64 p = modulus().value();
  const auto bound = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(p) / 2.0L));
  // Half extended Euclid: stop once the remainder drops to the bound.
  __int128 r0 = p, r1 = a.value();
  __int128 t0 = 0, t1 = 1;
  while (r1 > bound) {
    __int128 q = r0 / r1;
    __int128 tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0) return std::nullopt;
  __int128 num = r1, den = t1;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (den > bound) return std::nullopt;
  auto n64 = static_cast<std::int64_t>(num);
  auto d64 = static_cast<std::int64_t>(den);
  if (std::gcd(n64 < 0 ? -n64 : n64, d64) != 1) return std::nullopt;
  Rational out{n64, d64};
  if (embed(out) != a) return std::nullopt;
  return out;
}

}  // namespace ellsec
