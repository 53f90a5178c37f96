#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

namespace ellsec {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero in F_p") {}
};

/// Arithmetic context for a prime p < 2^62. Multiplication uses Barrett
/// reduction so that any prime in range works without Montgomery form.
class Modulus {
 public:
  explicit Modulus(u64 p);

  u64 value() const { return p_; }
  unsigned bits() const { return bits_; }

  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
  u64 reduce(u128 x) const {
    u64 q1 = static_cast<u64>(x >> (bits_ - 1));
    u64 q3 = static_cast<u64>((static_cast<u128>(q1) * mu_) >> (bits_ + 1));
    u64 r = static_cast<u64>(x - static_cast<u128>(q3) * p_);
    while (r >= p_) r -= p_;
    return r;
  }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
  u64 pow(u64 a, u64 e) const;
  u64 inv(u64 a) const;

  /// Shoup precomputation for repeated multiplication by a fixed w < p.
  u64 shoup(u64 w) const { return static_cast<u64>((static_cast<u128>(w) << 64) / p_); }
  u64 mul_shoup(u64 w, u64 w_shoup, u64 b) const {
    u64 q = static_cast<u64>((static_cast<u128>(w_shoup) * b) >> 64);
    u64 r = w * b - q * p_;
    return r >= p_ ? r - p_ : r;
  }

 private:
  u64 p_;
  unsigned bits_;
  u64 mu_;
};

constexpr u64 kDefaultPrime = 2305843009213693951ULL;    // 2^61 - 1
constexpr u64 kSecondaryPrime = 2305843009213693907ULL;  // largest 61-bit prime = 3 mod 4 below it

bool is_prime(u64 n);

namespace detail {
extern Modulus active_modulus;
}

/// The run-wide modulus. Set it from one thread before starting work.
inline const Modulus& modulus() { return detail::active_modulus; }

/// Installs a modulus for the lifetime of the guard and restores the previous one.
class ScopedModulus {
 public:
  explicit ScopedModulus(u64 p);
  ~ScopedModulus();
  ScopedModulus(const ScopedModulus&) = delete;
  ScopedModulus& operator=(const ScopedModulus&) = delete;

 private:
  Modulus previous_;
};

/// Element of F_p for the active modulus. The stored residue is always < p.
class Fp {
 public:
  constexpr Fp() = default;
  Fp(std::int64_t v);  // NOLINT(google-explicit-constructor)

  static Fp from_residue(u64 r) {
    Fp x;
    x.v_ = r;
    return x;
  }
  static Fp from_decimal(const std::string& s);

  u64 value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  std::string to_string() const { return std::to_string(v_); }

  Fp operator+(Fp o) const { return from_residue(modulus().add(v_, o.v_)); }
  Fp operator-(Fp o) const { return from_residue(modulus().sub(v_, o.v_)); }
  Fp operator-() const { return from_residue(modulus().neg(v_)); }
  Fp operator*(Fp o) const { return from_residue(modulus().mul(v_, o.v_)); }
  Fp operator/(Fp o) const { return *this * o.inv(); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  Fp& operator/=(Fp o) { return *this = *this / o; }
  bool operator==(const Fp&) const = default;

  Fp inv() const;
  Fp pow(u64 e) const { return from_residue(modulus().pow(v_, e)); }
  bool is_square() const;
  /// Square root with the smaller residue chosen; nullopt for non-squares.
  std::optional<Fp> sqrt() const;

 private:
  u64 v_ = 0;
};

/// Deterministic random source for field elements and indices.
class Rng {
 public:
  explicit Rng(u64 seed) : engine_(seed) {}
  Fp elem();
  Fp nonzero_elem();
  u64 bits() { return engine_(); }
  /// Independent stream derived from this seed and a label.
  static Rng derive(u64 seed, const std::string& label);

 private:
  std::mt19937_64 engine_;
};

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool operator==(const Rational&) const = default;
  std::string to_string() const;
};

/// Embeds u/v into F_p (v must be invertible).
Fp embed(const Rational& q);

/// Recovers u/v with |u|, |v| <= sqrt(p/2) from its residue; nullopt otherwise.
std::optional<Rational> rational_reconstruct(Fp a);

}  // namespace ellsec
