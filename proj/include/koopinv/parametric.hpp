#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "koopinv/factor.hpp"
#include "koopinv/koopman.hpp"
#include "koopinv/oracle.hpp"
#include "koopinv/ratfunc.hpp"

namespace koopinv {

// The whole Koopman pipeline runs unchanged over the rational function field
// F_p(a); this header adds what is specific to the parameter: specialization,
// the degeneration bookkeeping, the per-value classification with its
// brute-force fallback, and the symbolic inverse.
//
// Chain functions are canonicalized with the functional reduction a^p == a
// after every composition. That reduction is applied to polynomial
// coefficient data only (it preserves the evaluation at every a in F_p and
// never touches a fraction); it is what keeps symbolic degrees bounded and
// reproduces the canonical functional form of the operator data.

using ParamFuncPoly = FuncPoly<RationalFunc>;
using ParamPolyMap = PolyMap<RationalFunc>;

/// Specializes a symbolic polynomial at a = a0. Throws UndefinedAtError if a
/// coefficient denominator vanishes there.
inline FuncPoly<Fp> specialize(const ParamFuncPoly& f, const Fp& a0) {
  FuncPoly<Fp> out(f.xfield(), f.nvars());
  for (const auto& [m, c] : f.terms()) out.add_term(m, c.eval(a0));
  return out;
}

inline PolyMap<Fp> specialize(const ParamPolyMap& map, const Fp& a0) {
  std::vector<FuncPoly<Fp>> comps;
  comps.reserve(map.nvars());
  for (const auto& c : map.components()) comps.push_back(specialize(c, a0));
  return PolyMap<Fp>(map.xfield(), std::move(comps));
}

/// Chain canonicalizer of the parametric pipeline: functional reduction of
/// every polynomial coefficient. Coefficients that carry a true denominator
/// are left untouched (the reduction is only a functional identity, not a
/// field identity of F_p(a)).
inline ChainCanonicalizer<RationalFunc> param_chain_canonicalizer() {
  return [](ParamFuncPoly f) {
    FuncPoly<RationalFunc> out(f.xfield(), f.nvars());
    for (const auto& [m, c] : f.terms()) {
      if (c.is_polynomial()) {
        out.add_term(m, RationalFunc(param_reduce(c.num())));
      } else {
        out.add_term(m, c);
      }
    }
    return out;
  };
}

/// Symbolic decomposition plus the recorded degeneration data: every
/// nonconstant denominator that survives into the decomposition's artifacts (the
/// entries of M and V, the input coefficients, and det M). The a-values where
/// any of these vanish form the set where the generic computation is invalid.
struct ParamDecomposition {
  KoopmanDecomposition<RationalFunc> koop;
  RationalFunc det;
  std::vector<ParamPoly> degeneration;

  std::size_t dimension() const { return koop.dimension(); }

  bool degenerate_at(const Fp& a0) const {
    for (const auto& d : degeneration) {
      if (d.eval(a0).is_zero()) return true;
    }
    return false;
  }
};

namespace detail {

inline void record_denominator(std::vector<ParamPoly>& sink, const RationalFunc& value) {
  if (value.den().degree() <= 0) return;
  const ParamPoly den = value.den();
  for (const auto& existing : sink) {
    if (existing == den) return;
  }
  sink.push_back(den);
}

}  // namespace detail

/// Runs the invariant-subspace construction with scalar domain F_p(a).
inline ParamDecomposition param_koopman(const ParamPolyMap& map,
                                        std::size_t max_cells = kDefaultMaxCells) {
  auto koop = build_invariant_subspace(map, max_cells, param_chain_canonicalizer());
  RationalFunc det = koop.M.det();
  std::vector<ParamPoly> degeneration;
  for (const auto& comp : map.components()) {
    for (const auto& [m, c] : comp.terms()) detail::record_denominator(degeneration, c);
  }
  for (std::size_t i = 0; i < koop.M.rows(); ++i) {
    for (std::size_t j = 0; j < koop.M.cols(); ++j) {
      detail::record_denominator(degeneration, koop.M.at(i, j));
    }
  }
  for (std::size_t i = 0; i < koop.V.rows(); ++i) {
    for (std::size_t j = 0; j < koop.V.cols(); ++j) {
      detail::record_denominator(degeneration, koop.V.at(i, j));
    }
  }
  detail::record_denominator(degeneration, det);
  return {std::move(koop), std::move(det), std::move(degeneration)};
}

inline ParamDecomposition param_koopman(const ParamFuncPoly& f,
                                        std::size_t max_cells = kDefaultMaxCells) {
  return param_koopman(ParamPolyMap(f.xfield(), {f}), max_cells);
}

enum class Verdict { Invertible, Singular, Undefined };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Invertible: return "invertible";
    case Verdict::Singular: return "singular";
    case Verdict::Undefined: return "undefined";
  }
  return "?";
}

/// Per-parameter-value classification. The formula verdicts come from the
/// symbolic artifacts (denominators -> Undefined, det numerator -> Singular);
/// every Invertible/Singular verdict is then cross-checked against the plain
/// pipeline on the specialized map, and the fallback wins on disagreement.
struct ParamClassification {
  Field field;
  std::size_t generic_dimension;
  std::vector<Verdict> verdicts;      // indexed by a0
  RationalFunc det;
  Factorization num_factors;          // of the functionally reduced det numerator
  Factorization den_factors;          // of the functionally reduced det denominator
  std::vector<std::uint64_t> generic_mismatches;  // a0 where the fallback overrode

  std::vector<std::uint64_t> values_with(Verdict v) const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t a0 = 0; a0 < verdicts.size(); ++a0) {
      if (verdicts[a0] == v) out.push_back(a0);
    }
    return out;
  }
};

inline ParamClassification classify_parameters(const ParamDecomposition& d,
                                               std::size_t max_cells = kDefaultMaxCells) {
  const Field field = d.koop.map.xfield();
  const std::uint64_t p = field.p();
  // The reduced numerator can vanish identically (a generically singular map,
  // or a numerator that is zero at every point of F_p); its "factorization"
  // is then the bare zero unit.
  auto reduced_factors = [&field](const ParamPoly& poly) {
    const ParamPoly reduced = param_reduce(poly);
    return reduced.is_zero() ? Factorization{field.zero(), {}} : factor_univariate(reduced);
  };
  ParamClassification out{field,          d.dimension(),
                          {},             d.det,
                          reduced_factors(d.det.num()), reduced_factors(d.det.den()),
                          {}};
  out.verdicts.reserve(p);
  for (std::uint64_t v = 0; v < p; ++v) {
    const Fp a0(v, p);
    if (d.degenerate_at(a0)) {
      out.verdicts.push_back(Verdict::Undefined);
      continue;
    }
    Verdict formula =
        d.det.num().eval(a0).is_zero() ? Verdict::Singular : Verdict::Invertible;
    // fallback: the non-parametric pipeline on the specialized map
    const PolyMap<Fp> spec = specialize(d.koop.map, a0);
    const auto cert = is_permutation(build_invariant_subspace(spec, max_cells));
    const Verdict actual = cert.invertible ? Verdict::Invertible : Verdict::Singular;
    if (actual != formula) out.generic_mismatches.push_back(v);
    out.verdicts.push_back(actual);
  }
  return out;
}

/// Symbolic inverse with RationalFunc coefficients. Valid off the recorded
/// degeneration set: for every a0 classified Invertible, specializing it
/// yields the true inverse of the specialized map.
inline InverseResult<RationalFunc> param_invert(const ParamDecomposition& d) {
  if (d.det.is_zero()) throw GenericallySingularError();
  if (d.koop.map.nvars() == 1) return invert_univariate(d.koop);
  return invert_map(d.koop);
}

}  // namespace koopinv
