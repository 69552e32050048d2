#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "koopinv/ffield.hpp"

namespace koopinv {

/// Univariate polynomial in the parameter `a` with F_p coefficients, stored
/// densely in ascending degree with no trailing zeros. Unlike the function
/// polynomials in x, exponents of `a` are never reduced implicitly; the
/// functional reduction mod a^p - a is a separate, explicit operation.
class ParamPoly {
 public:
  explicit ParamPoly(Field field) : field_(field) {}

  ParamPoly(Field field, std::vector<std::uint64_t> ascending_coeffs)
      : field_(field), c_(std::move(ascending_coeffs)) {
    for (auto& x : c_) x %= field_.p();
    trim();
  }

  static ParamPoly constant(Field field, std::int64_t c) {
    return ParamPoly(field, {field.elem(c).value()});
  }

  /// The generator `a`.
  static ParamPoly variable(Field field) { return ParamPoly(field, {0, 1}); }

  static ParamPoly monomial(Field field, std::uint64_t exp, std::int64_t c) {
    std::vector<std::uint64_t> v(exp + 1, 0);
    v[exp] = field.elem(c).value();
    return ParamPoly(field, std::move(v));
  }

  const Field& field() const { return field_; }
  std::uint64_t p() const { return field_.p(); }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }

  /// Degree, with deg 0 for nonzero constants; -1 marks the zero polynomial.
  std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }

  std::uint64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }

  std::uint64_t leading() const { return c_.empty() ? 0 : c_.back(); }

  friend ParamPoly operator+(const ParamPoly& f, const ParamPoly& g) {
    f.check(g);
    const std::uint64_t p = f.p();
    std::vector<std::uint64_t> out(std::max(f.c_.size(), g.c_.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (f.coeff(i) + g.coeff(i)) % p;
    return ParamPoly(f.field_, std::move(out));
  }

  friend ParamPoly operator-(const ParamPoly& f, const ParamPoly& g) {
    f.check(g);
    const std::uint64_t p = f.p();
    std::vector<std::uint64_t> out(std::max(f.c_.size(), g.c_.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (f.coeff(i) + p - g.coeff(i)) % p;
    return ParamPoly(f.field_, std::move(out));
  }

  ParamPoly operator-() const {
    const std::uint64_t p = this->p();
    std::vector<std::uint64_t> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] == 0 ? 0 : p - c_[i];
    return ParamPoly(field_, std::move(out));
  }

  // keeps runaway symbolic degrees (e.g. a^(huge) typed at the CLI) bounded
  static constexpr std::size_t kMaxDegree = 4'000'000;

  friend ParamPoly operator*(const ParamPoly& f, const ParamPoly& g) {
    f.check(g);
    if (f.is_zero() || g.is_zero()) return ParamPoly(f.field_);
    if (f.c_.size() + g.c_.size() > kMaxDegree)
      throw SizeLimitError("parameter polynomial degree");
    const std::uint64_t p = f.p();
    std::vector<std::uint64_t> out(f.c_.size() + g.c_.size() - 1, 0);
    for (std::size_t i = 0; i < f.c_.size(); ++i) {
      if (f.c_[i] == 0) continue;
      for (std::size_t j = 0; j < g.c_.size(); ++j) {
        out[i + j] = (out[i + j] + detail::mulmod(f.c_[i], g.c_[j], p)) % p;
      }
    }
    return ParamPoly(f.field_, std::move(out));
  }

  ParamPoly scaled(std::uint64_t s) const {
    const std::uint64_t p = this->p();
    s %= p;
    std::vector<std::uint64_t> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = detail::mulmod(c_[i], s, p);
    return ParamPoly(field_, std::move(out));
  }

  /// Euclidean division: *this = q * g + r with deg r < deg g.
  std::pair<ParamPoly, ParamPoly> divmod(const ParamPoly& g) const {
    check(g);
    if (g.is_zero()) throw DivisionByZeroError();
    const std::uint64_t p = this->p();
    std::vector<std::uint64_t> rem = c_;
    std::vector<std::uint64_t> q(rem.size() >= g.c_.size() ? rem.size() - g.c_.size() + 1 : 0, 0);
    const std::uint64_t lg_inv = Fp(g.leading(), p).inverse().value();
    while (rem.size() >= g.c_.size() && !rem.empty()) {
      const std::uint64_t c = detail::mulmod(rem.back(), lg_inv, p);
      const std::size_t d = rem.size() - g.c_.size();
      q[d] = c;
      for (std::size_t i = 0; i < g.c_.size(); ++i) {
        rem[d + i] = (rem[d + i] + p - detail::mulmod(c, g.c_[i], p)) % p;
      }
      while (!rem.empty() && rem.back() == 0) rem.pop_back();
    }
    return {ParamPoly(field_, std::move(q)), ParamPoly(field_, std::move(rem))};
  }

  /// Monic gcd; gcd(0, 0) = 0.
  static ParamPoly gcd(ParamPoly f, ParamPoly g) {
    f.check(g);
    while (!g.is_zero()) {
      ParamPoly r = f.divmod(g).second;
      f = std::move(g);
      g = std::move(r);
    }
    return f.monic();
  }

  ParamPoly monic() const {
    if (is_zero() || leading() == 1) return *this;
    return scaled(Fp(leading(), p()).inverse().value());
  }

  ParamPoly derivative() const {
    if (c_.size() <= 1) return ParamPoly(field_);
    const std::uint64_t p = this->p();
    std::vector<std::uint64_t> out(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = detail::mulmod(c_[i], i % p, p);
    return ParamPoly(field_, std::move(out));
  }

  Fp eval(const Fp& a0) const {
    if (a0.modulus() != p()) throw FieldMismatchError(p(), a0.modulus());
    Fp r = field_.zero();
    for (std::size_t i = c_.size(); i-- > 0;) r = r * a0 + Fp(c_[i], p());
    return r;
  }

  bool operator==(const ParamPoly& other) const {
    return field_ == other.field_ && c_ == other.c_;
  }

 private:
  void check(const ParamPoly& other) const {
    if (!(field_ == other.field_)) throw FieldMismatchError(p(), other.p());
  }
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  Field field_;
  std::vector<std::uint64_t> c_;
};

/// Exponent reduction rule of the function space: x^p == x, preserving the
/// value at 0 (so e = 0 stays 0 and e > 0 maps into 1..p-1).
inline std::uint64_t reduce_exponent(std::uint64_t e, std::uint64_t p) {
  if (e < p) return e;
  return (e - 1) % (p - 1) + 1;
}

/// Functional reduction mod a^p - a. Preserves the evaluation at every point
/// of F_p; meant for display, comparison, and canonicalizing polynomial data,
/// never for rewriting fractions.
inline ParamPoly param_reduce(const ParamPoly& f) {
  const std::uint64_t p = f.p();
  std::vector<std::uint64_t> out(std::min<std::size_t>(f.coeffs().size(), p), 0);
  for (std::size_t e = 0; e < f.coeffs().size(); ++e) {
    if (f.coeff(e) == 0) continue;
    const std::uint64_t k = reduce_exponent(e, p);
    if (k >= out.size()) out.resize(k + 1, 0);
    out[k] = (out[k] + f.coeff(e)) % p;
  }
  return ParamPoly(f.field(), std::move(out));
}

}  // namespace koopinv
