#pragma once

#include <cstdint>
#include <vector>

#include "koopinv/polyfunc.hpp"

namespace koopinv {

/// Full evaluation table of a map F_p^n -> F_p^n: outputs[r] is the image of
/// the point with rank r in PointSpace order. Ground truth for every
/// subspace-based result.
struct ValueTable {
  PointSpace space;
  std::vector<std::vector<Fp>> outputs;
};

inline ValueTable evaluate_table(const PolyMap<Fp>& map,
                                 std::size_t max_cells = kDefaultMaxCells) {
  PointSpace space(map.xfield(), map.nvars(), max_cells);
  std::vector<std::vector<Fp>> out;
  out.reserve(space.size());
  for (std::uint64_t r = 0; r < space.size(); ++r) {
    out.push_back(map.eval(space.point(r)));
  }
  return {space, std::move(out)};
}

/// True iff the evaluation table of F is a bijection of F_p^n.
inline bool perm_check_bruteforce(const PolyMap<Fp>& map,
                                  std::size_t max_cells = kDefaultMaxCells) {
  const ValueTable table = evaluate_table(map, max_cells);
  std::vector<bool> seen(table.space.size(), false);
  for (const auto& y : table.outputs) {
    const std::uint64_t r = table.space.rank(y);
    if (seen[r]) return false;
    seen[r] = true;
  }
  return true;
}

/// Table of the inverse map: entry at rank(y) is the unique x with F(x) = y.
inline ValueTable inverse_table(const PolyMap<Fp>& map,
                                std::size_t max_cells = kDefaultMaxCells) {
  const ValueTable fwd = evaluate_table(map, max_cells);
  std::vector<std::vector<Fp>> inv(fwd.space.size());
  std::vector<bool> seen(fwd.space.size(), false);
  for (std::uint64_t r = 0; r < fwd.space.size(); ++r) {
    const std::uint64_t img = fwd.space.rank(fwd.outputs[r]);
    if (seen[img]) throw NotBijectiveError();
    seen[img] = true;
    inv[img] = fwd.space.point(r);
  }
  return {fwd.space, std::move(inv)};
}

/// The unique reduced polynomial map agreeing with a complete table, via the
/// indicator polynomials prod_j (1 - (x_j - c_j)^(p-1)).
inline PolyMap<Fp> interpolate(const ValueTable& table) {
  const Field field = table.space.xfield();
  const std::uint64_t p = field.p();
  const std::uint32_t n = table.space.nvars();

  // Dense coefficients of 1 - (x - c)^(p-1) per center c, ascending in x.
  std::vector<std::vector<Fp>> indicator(p, std::vector<Fp>(p, field.zero()));
  for (std::uint64_t c = 0; c < p; ++c) {
    // binomial expansion; C(p-1, k) == (-1)^k mod p
    Fp binom = field.one();
    for (std::uint64_t k = 0; k < p; ++k) {
      indicator[c][k] = -(binom * (-Fp(c, p)).pow(p - 1 - k));
      binom = -binom;
    }
    indicator[c][0] = indicator[c][0] + field.one();
  }

  std::vector<FuncPoly<Fp>> comps(n, FuncPoly<Fp>::zero_poly(field, n));
  Monomial m(n, 0);
  for (std::uint64_t r = 0; r < table.space.size(); ++r) {
    const std::vector<Fp> point = table.space.point(r);
    const std::vector<Fp>& value = table.outputs[r];
    // expand the n-fold product of per-variable indicator rows
    std::vector<std::pair<Monomial, Fp>> expansion{{Monomial(n, 0), field.one()}};
    for (std::uint32_t i = 0; i < n; ++i) {
      std::vector<std::pair<Monomial, Fp>> next;
      const auto& row = indicator[point[i].value()];
      for (const auto& [mono, coeff] : expansion) {
        for (std::uint64_t e = 0; e < p; ++e) {
          if (row[e].is_zero()) continue;
          Monomial m2 = mono;
          m2[i] = static_cast<std::uint32_t>(e);
          next.emplace_back(std::move(m2), coeff * row[e]);
        }
      }
      expansion = std::move(next);
    }
    for (std::uint32_t j = 0; j < n; ++j) {
      if (value[j].is_zero()) continue;
      for (const auto& [mono, coeff] : expansion) comps[j].add_term(mono, coeff * value[j]);
    }
  }
  return PolyMap<Fp>(field, std::move(comps));
}

/// Equality of canonical forms (equivalently, pointwise equality).
inline bool compare_functions(const PolyMap<Fp>& a, const PolyMap<Fp>& b) {
  if (!(a.xfield() == b.xfield())) throw FieldMismatchError(a.p(), b.p());
  if (a.nvars() != b.nvars()) throw ArityMismatchError(a.nvars(), b.nvars());
  return a == b;
}

}  // namespace koopinv
