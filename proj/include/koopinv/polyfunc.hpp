#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "koopinv/ffield.hpp"
#include "koopinv/parampoly.hpp"
#include "koopinv/ratfunc.hpp"
#include "koopinv/scalar.hpp"

namespace koopinv {

/// Exponent tuple of a monomial in x1..xn; every entry stays < p.
using Monomial = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Monomial& m) {
  std::uint64_t d = 0;
  for (auto e : m) d += e;
  return d;
}

/// Graded-lexicographic order (x1 > x2 > ... > xn breaks degree ties),
/// ascending: the constant monomial first, then degree 1, and so on.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const std::uint64_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

inline constexpr std::size_t kDefaultMaxCells = 1'000'000;

namespace detail {

template <ScalarField K>
struct ScalarMint;

template <>
struct ScalarMint<Fp> {
  static Fp zero(const Field& f) { return f.zero(); }
  static Fp one(const Field& f) { return f.one(); }
};

template <>
struct ScalarMint<RationalFunc> {
  static RationalFunc zero(const Field& f) { return RationalFunc::zero(f); }
  static RationalFunc one(const Field& f) { return RationalFunc::one(f); }
};

}  // namespace detail

template <ScalarField K>
class PolyMap;

/// Canonical representation of a function F_p^n -> (scalar domain K): a
/// polynomial with every variable's exponent < p, sparse over the monomial
/// basis. For K = Fp this is the reduced polynomial of a function
/// F_p^n -> F_p; for K = RationalFunc it is its parametric counterpart.
/// Two values are equal as functions iff their term maps are identical.
template <ScalarField K>
class FuncPoly {
 public:
  using Terms = std::map<Monomial, K, GrlexLess>;

  FuncPoly(Field xdomain, std::uint32_t nvars) : xfield_(xdomain), nvars_(nvars) {}

  /// Builds the canonical form from raw terms with arbitrary exponents,
  /// reducing every exponent via x^p == x and dropping zero coefficients.
  static FuncPoly from_terms(Field xdomain, std::uint32_t nvars,
                             const std::vector<std::pair<Monomial, K>>& raw) {
    FuncPoly out(xdomain, nvars);
    for (const auto& [m, c] : raw) out.add_term(m, c);
    return out;
  }

  static FuncPoly zero_poly(Field xdomain, std::uint32_t nvars) {
    return FuncPoly(xdomain, nvars);
  }

  static FuncPoly constant(Field xdomain, std::uint32_t nvars, K c) {
    FuncPoly out(xdomain, nvars);
    out.add_term(Monomial(nvars, 0), std::move(c));
    return out;
  }

  /// The coordinate function x_{index+1}.
  static FuncPoly coordinate(Field xdomain, std::uint32_t nvars, std::uint32_t index,
                             const K& one_sample) {
    if (index >= nvars) throw ArityMismatchError(nvars, index + 1);
    FuncPoly out(xdomain, nvars);
    Monomial m(nvars, 0);
    m[index] = 1;
    out.add_term(m, one_sample.one());
    return out;
  }

  const Field& xfield() const { return xfield_; }
  std::uint64_t p() const { return xfield_.p(); }
  std::uint32_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Accumulates c * x^m (exponents of m may be unreduced).
  void add_term(const Monomial& m, const K& c) {
    if (c.is_zero()) return;
    if (m.size() != nvars_) throw ArityMismatchError(nvars_, m.size());
    Monomial red(nvars_);
    const std::uint64_t p = xfield_.p();
    for (std::uint32_t i = 0; i < nvars_; ++i) {
      red[i] = static_cast<std::uint32_t>(reduce_exponent(m[i], p));
    }
    auto it = terms_.find(red);
    if (it == terms_.end()) {
      terms_.emplace(std::move(red), c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend FuncPoly operator+(const FuncPoly& a, const FuncPoly& b) {
    a.check(b);
    FuncPoly out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
  }

  friend FuncPoly operator-(const FuncPoly& a, const FuncPoly& b) {
    a.check(b);
    FuncPoly out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
    return out;
  }

  friend FuncPoly operator*(const FuncPoly& a, const FuncPoly& b) {
    a.check(b);
    FuncPoly out(a.xfield_, a.nvars_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m(a.nvars_);
        for (std::uint32_t i = 0; i < a.nvars_; ++i) m[i] = ma[i] + mb[i];
        out.add_term(m, ca * cb);
      }
    }
    return out;
  }

  FuncPoly scaled(const K& s) const {
    FuncPoly out(xfield_, nvars_);
    if (s.is_zero()) return out;
    for (const auto& [m, c] : terms_) out.add_term(m, c * s);
    return out;
  }

  FuncPoly operator-() const {
    FuncPoly out(xfield_, nvars_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
  }

  /// x^k with exponent reduction after every multiply.
  FuncPoly pow(std::uint64_t k) const {
    FuncPoly result = constant(xfield_, nvars_, mint_one());
    FuncPoly base = *this;
    while (k) {
      if (k & 1) result = result * base;
      k >>= 1;
      if (k) base = base * base;
    }
    return result;
  }

  /// Value at a point of F_p^n.
  K eval(std::span<const Fp> point) const {
    if (point.size() != nvars_) throw ArityMismatchError(nvars_, point.size());
    for (const auto& x : point) {
      if (x.modulus() != xfield_.p()) throw FieldMismatchError(xfield_.p(), x.modulus());
    }
    K acc = mint_zero();
    for (const auto& [m, c] : terms_) {
      Fp mv = xfield_.one();
      for (std::uint32_t i = 0; i < nvars_; ++i) mv = mv * point[i].pow(m[i]);
      acc = acc + c * c.embed(mv.value());
    }
    return acc;
  }

  /// The dual (Koopman) action of a map: the canonical form of x -> phi(F(x)),
  /// by substitute-then-reduce with component powers reduced at every step.
  FuncPoly compose(const PolyMap<K>& map) const;

  bool operator==(const FuncPoly& other) const {
    return xfield_ == other.xfield_ && nvars_ == other.nvars_ && terms_ == other.terms_;
  }

  K mint_zero() const { return detail::ScalarMint<K>::zero(xfield_); }
  K mint_one() const { return detail::ScalarMint<K>::one(xfield_); }

 private:
  void check(const FuncPoly& other) const {
    if (!(xfield_ == other.xfield_)) throw FieldMismatchError(p(), other.p());
    if (nvars_ != other.nvars_) throw ArityMismatchError(nvars_, other.nvars_);
  }

  Field xfield_;
  std::uint32_t nvars_;
  Terms terms_;
};

/// An n-tuple of function polynomials: the map F of F_p^n -> F_p^n (its
/// coefficients may live in a larger scalar domain K).
template <ScalarField K>
class PolyMap {
 public:
  PolyMap(Field xdomain, std::vector<FuncPoly<K>> components)
      : xfield_(xdomain), components_(std::move(components)) {
    for (const auto& c : components_) {
      if (!(c.xfield() == xfield_)) throw FieldMismatchError(xfield_.p(), c.p());
      if (c.nvars() != components_.size())
        throw ArityMismatchError(components_.size(), c.nvars());
    }
  }

  static PolyMap identity(Field xdomain, std::uint32_t nvars, const K& one_sample) {
    std::vector<FuncPoly<K>> comps;
    comps.reserve(nvars);
    for (std::uint32_t i = 0; i < nvars; ++i) {
      comps.push_back(FuncPoly<K>::coordinate(xdomain, nvars, i, one_sample));
    }
    return PolyMap(xdomain, std::move(comps));
  }

  const Field& xfield() const { return xfield_; }
  std::uint64_t p() const { return xfield_.p(); }
  std::uint32_t nvars() const { return static_cast<std::uint32_t>(components_.size()); }
  const std::vector<FuncPoly<K>>& components() const { return components_; }
  const FuncPoly<K>& component(std::size_t i) const { return components_[i]; }

  std::vector<Fp> eval(std::span<const Fp> point) const
    requires std::same_as<K, Fp>
  {
    std::vector<Fp> out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.push_back(c.eval(point));
    return out;
  }

  /// Componentwise composition: (this after inner), i.e. x -> this(inner(x)).
  PolyMap compose(const PolyMap& inner) const {
    std::vector<FuncPoly<K>> comps;
    comps.reserve(components_.size());
    for (const auto& c : components_) comps.push_back(c.compose(inner));
    return PolyMap(xfield_, std::move(comps));
  }

  bool operator==(const PolyMap& other) const {
    return xfield_ == other.xfield_ && components_ == other.components_;
  }

 private:
  Field xfield_;
  std::vector<FuncPoly<K>> components_;
};

template <ScalarField K>
FuncPoly<K> FuncPoly<K>::compose(const PolyMap<K>& map) const {
  if (map.nvars() != nvars_) throw ArityMismatchError(nvars_, map.nvars());
  if (!(map.xfield() == xfield_)) throw FieldMismatchError(p(), map.p());
  // Powers of each component, built incrementally with reduction per multiply.
  std::vector<std::uint32_t> max_exp(nvars_, 0);
  for (const auto& [m, c] : terms_) {
    for (std::uint32_t i = 0; i < nvars_; ++i) max_exp[i] = std::max(max_exp[i], m[i]);
  }
  std::vector<std::vector<FuncPoly>> powers(nvars_);
  for (std::uint32_t i = 0; i < nvars_; ++i) {
    powers[i].push_back(constant(xfield_, nvars_, mint_one()));
    for (std::uint32_t e = 1; e <= max_exp[i]; ++e) {
      powers[i].push_back(powers[i][e - 1] * map.component(i));
    }
  }
  FuncPoly out(xfield_, nvars_);
  for (const auto& [m, c] : terms_) {
    FuncPoly term = constant(xfield_, nvars_, c);
    for (std::uint32_t i = 0; i < nvars_; ++i) {
      if (m[i] > 0) term = term * powers[i][m[i]];
    }
    out = out + term;
  }
  return out;
}

/// Enumeration of the full reduced-monomial basis of F_p^n -> F_p in
/// ascending graded-lex order; provides the rank used by coefficient vectors.
class MonomialBasis {
 public:
  MonomialBasis(Field xdomain, std::uint32_t nvars, std::size_t max_cells = kDefaultMaxCells)
      : xfield_(xdomain), nvars_(nvars) {
    const std::uint64_t p = xdomain.p();
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < nvars; ++i) {
      if (total > max_cells / p + 1) throw SizeLimitError("p^n monomials exceed the cap");
      total *= p;
      if (total > max_cells) throw SizeLimitError("p^n monomials exceed the cap");
    }
    order_.reserve(total);
    Monomial m(nvars, 0);
    // mixed-radix enumeration of all exponent tuples, then grlex sort
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t rest = idx;
      for (std::uint32_t i = 0; i < nvars; ++i) {
        m[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      order_.push_back(m);
    }
    std::sort(order_.begin(), order_.end(), GrlexLess{});
    for (std::size_t i = 0; i < order_.size(); ++i) rank_.emplace(order_[i], i);
  }

  std::size_t size() const { return order_.size(); }
  const Monomial& monomial(std::size_t i) const { return order_[i]; }
  std::size_t rank(const Monomial& m) const { return rank_.at(m); }
  const Field& xfield() const { return xfield_; }
  std::uint32_t nvars() const { return nvars_; }

  /// Dense coefficient vector of a polynomial over this basis.
  template <ScalarField K>
  std::vector<K> coeff_vector(const FuncPoly<K>& f) const {
    if (f.nvars() != nvars_) throw ArityMismatchError(nvars_, f.nvars());
    if (!(f.xfield() == xfield_)) throw FieldMismatchError(xfield_.p(), f.p());
    std::vector<K> out(order_.size(), f.mint_zero());
    for (const auto& [m, c] : f.terms()) out[rank_.at(m)] = c;
    return out;
  }

  /// Inverse of coeff_vector.
  template <ScalarField K>
  FuncPoly<K> from_coeff_vector(const std::vector<K>& v) const {
    if (v.size() != order_.size()) throw DimensionMismatchError(order_.size(), v.size());
    FuncPoly<K> out(xfield_, nvars_);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_zero()) out.add_term(order_[i], v[i]);
    }
    return out;
  }

 private:
  Field xfield_;
  std::uint32_t nvars_;
  std::vector<Monomial> order_;
  std::map<Monomial, std::size_t, GrlexLess> rank_;
};

/// Enumerates the points of F_p^n in a fixed mixed-radix order (x1 is the
/// least significant digit).
class PointSpace {
 public:
  PointSpace(Field xdomain, std::uint32_t nvars, std::size_t max_cells = kDefaultMaxCells)
      : xfield_(xdomain), nvars_(nvars) {
    const std::uint64_t p = xdomain.p();
    total_ = 1;
    for (std::uint32_t i = 0; i < nvars; ++i) {
      if (total_ > max_cells / p + 1) throw SizeLimitError("p^n points exceed the cap");
      total_ *= p;
      if (total_ > max_cells) throw SizeLimitError("p^n points exceed the cap");
    }
  }

  std::uint64_t size() const { return total_; }
  const Field& xfield() const { return xfield_; }
  std::uint32_t nvars() const { return nvars_; }

  std::vector<Fp> point(std::uint64_t rank) const {
    std::vector<Fp> pt;
    pt.reserve(nvars_);
    const std::uint64_t p = xfield_.p();
    for (std::uint32_t i = 0; i < nvars_; ++i) {
      pt.push_back(Fp(rank % p, p));
      rank /= p;
    }
    return pt;
  }

  std::uint64_t rank(std::span<const Fp> pt) const {
    std::uint64_t r = 0;
    const std::uint64_t p = xfield_.p();
    for (std::size_t i = pt.size(); i-- > 0;) r = r * p + pt[i].value();
    return r;
  }

 private:
  Field xfield_;
  std::uint32_t nvars_;
  std::uint64_t total_;
};

}  // namespace koopinv
