#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "koopinv/parampoly.hpp"

namespace koopinv {

/// unit * prod factors[i].first ^ factors[i].second reproduces the input
/// exactly; every factor is monic irreducible, sorted by (degree, ascending
/// coefficient tuple).
struct Factorization {
  Fp unit;
  std::vector<std::pair<ParamPoly, std::uint32_t>> factors;

  ParamPoly expand(Field field) const {
    ParamPoly out = ParamPoly::constant(field, static_cast<std::int64_t>(unit.value()));
    for (const auto& [f, m] : factors) {
      for (std::uint32_t i = 0; i < m; ++i) out = out * f;
    }
    return out;
  }
};

namespace detail {

inline ParamPoly poly_mod(const ParamPoly& f, const ParamPoly& g) { return f.divmod(g).second; }

inline ParamPoly powmod_poly(const ParamPoly& base, std::uint64_t e, const ParamPoly& mod) {
  ParamPoly result = ParamPoly::constant(base.field(), 1);
  ParamPoly b = poly_mod(base, mod);
  while (e) {
    if (e & 1) result = poly_mod(result * b, mod);
    e >>= 1;
    if (e) b = poly_mod(b * b, mod);
  }
  return result;
}

/// p-th root of f(a) = u(a^p): over F_p the Frobenius fixes coefficients, so
/// the root just drops exponents by a factor of p.
inline ParamPoly pth_root(const ParamPoly& f) {
  const std::uint64_t p = f.p();
  std::vector<std::uint64_t> out(f.coeffs().size() / p + 1, 0);
  for (std::size_t e = 0; e < f.coeffs().size(); ++e) {
    if (f.coeff(e) != 0) out[e / p] = f.coeff(e);
  }
  return ParamPoly(f.field(), std::move(out));
}

/// Square-free decomposition (Musser, characteristic p variant); returns
/// monic square-free parts with their multiplicities.
inline void squarefree_parts(const ParamPoly& f, std::uint32_t outer_mult,
                             std::vector<std::pair<ParamPoly, std::uint32_t>>& out) {
  const std::uint64_t p = f.p();
  if (f.degree() <= 0) return;
  ParamPoly df = f.derivative();
  if (df.is_zero()) {
    squarefree_parts(pth_root(f), outer_mult * static_cast<std::uint32_t>(p), out);
    return;
  }
  ParamPoly c = ParamPoly::gcd(f, df);
  ParamPoly w = f.divmod(c).first;
  std::uint32_t i = 1;
  while (w.degree() > 0) {
    ParamPoly y = ParamPoly::gcd(w, c);
    ParamPoly z = w.divmod(y).first;
    if (z.degree() > 0) out.emplace_back(z.monic(), i * outer_mult);
    ++i;
    w = std::move(y);
    c = c.divmod(w).first;
  }
  if (c.degree() > 0) {
    squarefree_parts(pth_root(c), outer_mult * static_cast<std::uint32_t>(p), out);
  }
}

/// Distinct-degree factorization of a monic square-free polynomial: pairs of
/// (product of all irreducible factors of degree d, d).
inline std::vector<std::pair<ParamPoly, std::uint32_t>> distinct_degree(const ParamPoly& f) {
  const std::uint64_t p = f.p();
  std::vector<std::pair<ParamPoly, std::uint32_t>> out;
  ParamPoly rest = f;
  ParamPoly h = poly_mod(ParamPoly::variable(f.field()), rest);  // a^(p^k) mod rest
  std::uint32_t k = 0;
  while (rest.degree() >= 2 * static_cast<std::int64_t>(k + 1)) {
    ++k;
    h = powmod_poly(h, p, rest);
    ParamPoly g = ParamPoly::gcd(h - ParamPoly::variable(f.field()), rest);
    if (g.degree() > 0) {
      out.emplace_back(g, k);
      rest = rest.divmod(g).first;
      h = poly_mod(h, rest);
    }
  }
  if (rest.degree() > 0) out.emplace_back(rest, static_cast<std::uint32_t>(rest.degree()));
  return out;
}

/// Equal-degree splitting (Cantor-Zassenhaus) with a deterministic seeded
/// random sequence for reproducible factor output.
inline void equal_degree_split(const ParamPoly& f, std::uint32_t d, std::mt19937_64& rng,
                               std::vector<ParamPoly>& out) {
  if (f.degree() == static_cast<std::int64_t>(d)) {
    out.push_back(f.monic());
    return;
  }
  const std::uint64_t p = f.p();
  const Field field = f.field();
  while (true) {
    std::vector<std::uint64_t> rc(static_cast<std::size_t>(f.degree()), 0);
    for (auto& x : rc) x = rng() % p;
    ParamPoly r(field, std::move(rc));
    if (r.degree() < 1) continue;
    ParamPoly u(field);
    if (p == 2) {
      // trace map: r + r^2 + r^4 + ... splits over F_2
      ParamPoly t(field);
      ParamPoly ri = poly_mod(r, f);
      for (std::uint32_t i = 0; i < d; ++i) {
        t = t + ri;
        ri = poly_mod(ri * ri, f);
      }
      u = ParamPoly::gcd(t, f);
    } else {
      // r^((p^d - 1)/2) = (prod_i r^(p^i))^((p-1)/2); Frobenius powers keep
      // every exponent within 64 bits
      ParamPoly nrm = poly_mod(r, f);
      ParamPoly rfrob = nrm;
      for (std::uint32_t i = 1; i < d; ++i) {
        rfrob = powmod_poly(rfrob, p, f);
        nrm = poly_mod(nrm * rfrob, f);
      }
      ParamPoly s = powmod_poly(nrm, (p - 1) / 2, f);
      u = ParamPoly::gcd(s - ParamPoly::constant(field, 1), f);
    }
    if (u.degree() > 0 && u.degree() < f.degree()) {
      equal_degree_split(u, d, rng, out);
      equal_degree_split(f.divmod(u).first, d, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Factors a nonzero univariate polynomial over F_p into monic irreducibles:
/// square-free decomposition, then distinct-degree, then equal-degree
/// splitting.
inline Factorization factor_univariate(const ParamPoly& f) {
  if (f.is_zero()) throw ZeroPolynomialError();
  const Field field = f.field();
  Factorization result{Fp(f.leading(), f.p()), {}};
  if (f.degree() == 0) return result;

  std::vector<std::pair<ParamPoly, std::uint32_t>> sqfree;
  detail::squarefree_parts(f.monic(), 1, sqfree);

  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  for (const auto& [part, mult] : sqfree) {
    for (const auto& [prod, d] : detail::distinct_degree(part)) {
      std::vector<ParamPoly> irreducibles;
      detail::equal_degree_split(prod, d, rng, irreducibles);
      for (auto& irr : irreducibles) result.factors.emplace_back(std::move(irr), mult);
    }
  }
  std::sort(result.factors.begin(), result.factors.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    return a.first.coeffs() < b.first.coeffs();
  });
  return result;
}

}  // namespace koopinv
