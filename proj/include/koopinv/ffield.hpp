#pragma once

#include <cstdint>

#include "koopinv/errors.hpp"

namespace koopinv {

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin. The witness set {2, 7, 61} is exact for all
// n < 4'759'123'141, which covers the supported modulus range p <= 2^31 - 1.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 7ull, 61ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

class Fp;

/// A prime field F_p. Construction validates primality of p; instances are
/// cheap immutable values and two instances describe the same field iff
/// their moduli are equal.
class Field {
 public:
  static constexpr std::uint64_t kMaxModulus = (1ull << 31) - 1;

  explicit Field(std::uint64_t p) : p_(p) {
    if (p > kMaxModulus) throw SizeLimitError("modulus exceeds 2^31 - 1");
    if (!detail::is_prime_u64(p)) throw NotPrimeError(p);
  }

  std::uint64_t p() const { return p_; }

  bool operator==(const Field& other) const { return p_ == other.p_; }

  /// Canonical element from any signed integer (reduces mod p).
  inline Fp elem(std::int64_t v) const;
  inline Fp zero() const;
  inline Fp one() const;

 private:
  std::uint64_t p_;
};

/// An element of F_p in canonical residue form 0 <= value < p. Elements carry
/// their modulus; arithmetic between elements of different fields throws
/// FieldMismatchError rather than coercing.
class Fp {
 public:
  Fp(std::uint64_t value, std::uint64_t p) : v_(value), p_(p) {}

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  Field field() const { return Field(p_); }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1 % p_; }

  Fp zero() const { return Fp(0, p_); }
  Fp one() const { return Fp(1 % p_, p_); }

  /// Embeds a canonical residue of the base field into the scalar domain.
  /// For F_p itself this is the identity on residues.
  Fp embed(std::uint64_t residue) const { return Fp(residue % p_, p_); }

  friend Fp operator+(const Fp& a, const Fp& b) {
    a.check(b);
    std::uint64_t s = a.v_ + b.v_;
    if (s >= a.p_) s -= a.p_;
    return Fp(s, a.p_);
  }

  friend Fp operator-(const Fp& a, const Fp& b) {
    a.check(b);
    return Fp(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + (a.p_ - b.v_), a.p_);
  }

  Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_); }

  friend Fp operator*(const Fp& a, const Fp& b) {
    a.check(b);
    return Fp(detail::mulmod(a.v_, b.v_, a.p_), a.p_);
  }

  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }

  /// Multiplicative inverse via extended Euclid.
  Fp inverse() const {
    if (v_ == 0) throw DivisionByZeroError();
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(v_);
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return Fp(static_cast<std::uint64_t>(t), p_);
  }

  /// a^k by square-and-multiply; 0^0 = 1.
  Fp pow(std::uint64_t k) const { return Fp(detail::powmod(v_, k, p_), p_); }

  bool operator==(const Fp& other) const { return p_ == other.p_ && v_ == other.v_; }
  bool operator!=(const Fp& other) const { return !(*this == other); }

 private:
  void check(const Fp& other) const {
    if (p_ != other.p_) throw FieldMismatchError(p_, other.p_);
  }

  std::uint64_t v_;
  std::uint64_t p_;
};

inline Fp Field::elem(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += static_cast<std::int64_t>(p_);
  return Fp(static_cast<std::uint64_t>(r), p_);
}

inline Fp Field::zero() const { return Fp(0, p_); }
inline Fp Field::one() const { return Fp(1 % p_, p_); }

}  // namespace koopinv
