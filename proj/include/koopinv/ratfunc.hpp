#pragma once

#include <utility>

#include "koopinv/parampoly.hpp"

namespace koopinv {

/// Element of the rational function field F_p(a), kept normalized at all
/// times: gcd(num, den) = 1 and den monic. This is the scalar domain of the
/// parametric pipeline.
class RationalFunc {
 public:
  explicit RationalFunc(ParamPoly num)
      : num_(std::move(num)), den_(ParamPoly::constant(num_.field(), 1)) {}

  RationalFunc(ParamPoly num, ParamPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZeroError();
    normalize();
  }

  static RationalFunc zero(Field field) { return RationalFunc(ParamPoly(field)); }
  static RationalFunc one(Field field) { return RationalFunc(ParamPoly::constant(field, 1)); }
  static RationalFunc constant(Field field, std::int64_t c) {
    return RationalFunc(ParamPoly::constant(field, c));
  }
  static RationalFunc variable(Field field) { return RationalFunc(ParamPoly::variable(field)); }

  const ParamPoly& num() const { return num_; }
  const ParamPoly& den() const { return den_; }
  const Field& field() const { return num_.field(); }
  std::uint64_t p() const { return num_.p(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  RationalFunc zero() const { return zero(field()); }
  RationalFunc one() const { return one(field()); }
  RationalFunc embed(std::uint64_t residue) const {
    return RationalFunc(ParamPoly(field(), {residue % p()}));
  }

  friend RationalFunc operator+(const RationalFunc& r, const RationalFunc& s) {
    return RationalFunc(r.num_ * s.den_ + s.num_ * r.den_, r.den_ * s.den_);
  }

  friend RationalFunc operator-(const RationalFunc& r, const RationalFunc& s) {
    return RationalFunc(r.num_ * s.den_ - s.num_ * r.den_, r.den_ * s.den_);
  }

  RationalFunc operator-() const {
    RationalFunc out = *this;
    out.num_ = -out.num_;
    return out;
  }

  friend RationalFunc operator*(const RationalFunc& r, const RationalFunc& s) {
    return RationalFunc(r.num_ * s.num_, r.den_ * s.den_);
  }

  friend RationalFunc operator/(const RationalFunc& r, const RationalFunc& s) {
    return r * s.inverse();
  }

  RationalFunc inverse() const {
    if (is_zero()) throw DivisionByZeroError();
    return RationalFunc(den_, num_);
  }

  /// Evaluation at a concrete parameter value; throws UndefinedAtError where
  /// the denominator vanishes.
  Fp eval(const Fp& a0) const {
    const Fp d = den_.eval(a0);
    if (d.is_zero()) throw UndefinedAtError(a0.value());
    return num_.eval(a0) / d;
  }

  bool defined_at(const Fp& a0) const { return !den_.eval(a0).is_zero(); }

  bool operator==(const RationalFunc& other) const {
    return num_ == other.num_ && den_ == other.den_;
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = ParamPoly::constant(num_.field(), 1);
      return;
    }
    const ParamPoly g = ParamPoly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.divmod(g).first;
      den_ = den_.divmod(g).first;
    }
    if (den_.leading() != 1) {
      const std::uint64_t inv = Fp(den_.leading(), num_.p()).inverse().value();
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  ParamPoly num_;
  ParamPoly den_;
};

}  // namespace koopinv
