#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "koopinv/parametric.hpp"
#include "koopinv/polyfunc.hpp"

namespace koopinv {

// Canonical text rendering: terms in descending graded-lex order,
// coefficients in 0..p-1, explicit '*', '1*' suppressed, the zero polynomial
// prints "0". Rendered text re-parses to the identical canonical object.

inline std::string render_monomial(const Monomial& m, std::uint32_t nvars) {
  std::string out;
  for (std::uint32_t i = 0; i < nvars; ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += nvars == 1 ? "x" : "x" + std::to_string(i + 1);
    if (m[i] >= 2) out += "^" + std::to_string(m[i]);
  }
  return out;
}

inline std::string render_poly(const FuncPoly<Fp>& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    if (!out.empty()) out += " + ";
    const std::string mono = render_monomial(m, f.nvars());
    if (mono.empty()) {
      out += std::to_string(c.value());
    } else if (c.is_one()) {
      out += mono;
    } else {
      out += std::to_string(c.value()) + "*" + mono;
    }
  }
  return out;
}

/// Univariate polynomial in the parameter, same canonical conventions with
/// the given symbol.
inline std::string render_parampoly(const ParamPoly& f, const std::string& symbol = "a") {
  if (f.is_zero()) return "0";
  std::string out;
  for (std::size_t e = f.coeffs().size(); e-- > 0;) {
    const std::uint64_t c = f.coeff(e);
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (e == 0) {
      out += std::to_string(c);
    } else {
      std::string mono = symbol + (e >= 2 ? "^" + std::to_string(e) : "");
      out += c == 1 ? mono : std::to_string(c) + "*" + mono;
    }
  }
  return out;
}

inline std::string render_ratfunc(const RationalFunc& r, const std::string& symbol = "a") {
  if (r.is_polynomial()) return render_parampoly(r.num(), symbol);
  return "(" + render_parampoly(r.num(), symbol) + ")/(" + render_parampoly(r.den(), symbol) +
         ")";
}

/// Applies the display-only functional reduction to both sides of every
/// coefficient before rendering.
inline RationalFunc display_reduced(const RationalFunc& r) {
  return RationalFunc(param_reduce(r.num()), param_reduce(r.den()));
}

inline std::string render_poly(const FuncPoly<RationalFunc>& f, const std::string& symbol = "a") {
  if (f.is_zero()) return "0";
  std::string out;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [m, raw] = *it;
    const RationalFunc c = display_reduced(raw);
    if (!out.empty()) out += " + ";
    const std::string mono = render_monomial(m, f.nvars());
    if (mono.empty()) {
      out += render_ratfunc(c, symbol);
      continue;
    }
    if (c.is_one()) {
      out += mono;
    } else if (c.is_polynomial()) {
      const ParamPoly& num = c.num();
      std::size_t nterms = 0;
      for (auto x : num.coeffs()) nterms += x != 0;
      const std::string cs = render_parampoly(num, symbol);
      out += (nterms > 1 ? "(" + cs + ")" : cs) + "*" + mono;
    } else {
      out += render_ratfunc(c, symbol) + "*" + mono;
    }
  }
  return out;
}

template <ScalarField K>
std::string render_map(const PolyMap<K>& map) {
  std::string out;
  for (std::size_t i = 0; i < map.nvars(); ++i) {
    if (i) out += "; ";
    out += render_poly(map.component(i));
  }
  return out;
}

/// Factorization in the deterministic order: unit (if not 1) first, then
/// monic factors ascending by (degree, coefficients), powers marked '^'.
inline std::string render_factorization(const Factorization& fact,
                                        const std::string& symbol = "a") {
  std::string out;
  if (!fact.unit.is_one() || fact.factors.empty()) out += std::to_string(fact.unit.value());
  for (const auto& [f, mult] : fact.factors) {
    if (!out.empty()) out += "*";
    out += "(" + render_parampoly(f, symbol) + ")";
    if (mult > 1) out += "^" + std::to_string(mult);
  }
  return out;
}

inline std::string render_set(const std::vector<std::uint64_t>& values) {
  std::string out = "{";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(values[i]);
  }
  return out + "}";
}

}  // namespace koopinv
