#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

#include "koopinv/exactla.hpp"
#include "koopinv/polyfunc.hpp"

namespace koopinv {

// The dual (Koopman) operator of a map F acts on functions by composition,
// F*(phi) = phi o F, and is linear even when F is not. Restricting it to a
// finite-dimensional invariant subspace W that contains every coordinate
// function turns invertibility and inversion of F into matrix questions:
// F is a permutation iff the matrix M of F*|W is non-singular, and then
// each inverse component is g_i = v_i^T M^{-1} psi-hat.
//
// Row convention throughout: row i of M holds the coordinates of psi_i o F
// over the basis, i.e. (F* psi-hat) = M psi-hat.

/// One generator chain inside the basis: the iterates of chi_{generator}
/// occupy basis indices [first, first + length).
struct ChainSpan {
  std::uint32_t generator;
  std::size_t first;
  std::size_t length;
};

/// The reduced Koopman decomposition of a map: ordered basis of W, the matrix
/// M of F*|W (row convention), the coordinate rows V with chi_i = v_i^T
/// psi-hat, and the per-chain closing dependence coefficients.
template <ScalarField K>
struct KoopmanDecomposition {
  PolyMap<K> map;
  std::vector<FuncPoly<K>> basis;
  Matrix<K> M;
  Matrix<K> V;
  std::vector<std::vector<K>> chain_alpha;
  std::vector<ChainSpan> chains;

  std::size_t dimension() const { return basis.size(); }

  /// The dependence coefficients of the single chain (the univariate alpha).
  const std::vector<K>& alpha() const { return chain_alpha.at(0); }
};

template <ScalarField K>
struct PermutationCertificate {
  bool invertible;
  K det;
};

template <ScalarField K>
struct InverseResult {
  PolyMap<K> inverse;
  // Row i holds the coefficients of g_i over the basis (for univariate maps
  // the single row is the classical c vector).
  std::vector<std::vector<K>> coeffs;
};

/// Hook applied to every chain function right after composition. The
/// parametric pipeline canonicalizes polynomial coefficient data here
/// (functional reduction in the parameter); the default is the identity.
template <ScalarField K>
using ChainCanonicalizer = std::function<FuncPoly<K>(FuncPoly<K>)>;

template <ScalarField K>
ChainCanonicalizer<K> identity_canonicalizer() {
  return [](FuncPoly<K> f) { return f; };
}

namespace detail {

template <ScalarField K>
K scalar_zero(const PolyMap<K>& map) {
  return FuncPoly<K>(map.xfield(), map.nvars()).mint_zero();
}

template <ScalarField K>
struct SubspaceBuild {
  std::vector<FuncPoly<K>> basis;
  std::vector<std::vector<K>> chain_alpha;
  std::vector<ChainSpan> chains;
  IndependenceTracker<K> tracker;
  MonomialBasis monomials;
};

/// Runs the generator chains: from each uncovered coordinate function, keep
/// applying F* until the iterate falls into the span of everything accepted
/// so far. Generators are examined in the given order (index order realizes
/// the "smallest i" rule).
template <ScalarField K>
SubspaceBuild<K> build_chains(const PolyMap<K>& map, std::size_t max_cells,
                              const ChainCanonicalizer<K>& canon,
                              std::vector<std::uint32_t> generator_order) {
  const Field field = map.xfield();
  const std::uint32_t n = map.nvars();
  MonomialBasis monomials(field, n, max_cells);
  const K zero = scalar_zero(map);
  IndependenceTracker<K> tracker(monomials.size(), zero);

  SubspaceBuild<K> out{{}, {}, {}, std::move(tracker), std::move(monomials)};
  if (generator_order.empty()) {
    generator_order.resize(n);
    std::iota(generator_order.begin(), generator_order.end(), 0);
  }

  for (std::uint32_t gen : generator_order) {
    FuncPoly<K> chi = FuncPoly<K>::coordinate(field, n, gen, zero.one());
    if (out.tracker.decompose(out.monomials.coeff_vector(chi)).has_value()) {
      continue;  // already covered by earlier chains
    }
    const std::size_t first = out.basis.size();
    FuncPoly<K> g = chi;
    while (true) {
      auto res = out.tracker.insert(out.monomials.coeff_vector(g));
      if (!res.independent) {
        out.chain_alpha.push_back(std::move(res.coeffs));
        break;
      }
      out.basis.push_back(g);
      g = canon(g.compose(map));
    }
    out.chains.push_back({gen, first, out.basis.size() - first});
  }
  return out;
}

/// Assembles M from the chain structure: interior rows are unit vectors onto
/// the next iterate, the last row of each chain is its closing dependence.
template <ScalarField K>
Matrix<K> assemble_matrix(const SubspaceBuild<K>& build, const K& zero) {
  const std::size_t N = build.basis.size();
  Matrix<K> M(N, N, zero);
  for (std::size_t c = 0; c < build.chains.size(); ++c) {
    const ChainSpan& span = build.chains[c];
    for (std::size_t i = 0; i + 1 < span.length; ++i) {
      M.at(span.first + i, span.first + i + 1) = zero.one();
    }
    const std::vector<K>& alpha = build.chain_alpha[c];
    const std::size_t last = span.first + span.length - 1;
    for (std::size_t j = 0; j < alpha.size(); ++j) M.at(last, j) = alpha[j];
  }
  return M;
}

template <ScalarField K>
Matrix<K> assemble_coordinates(const SubspaceBuild<K>& build, const PolyMap<K>& map,
                               const K& zero) {
  const std::uint32_t n = map.nvars();
  Matrix<K> V(n, build.basis.size(), zero);
  for (std::uint32_t i = 0; i < n; ++i) {
    FuncPoly<K> chi = FuncPoly<K>::coordinate(map.xfield(), n, i, zero.one());
    auto coords = build.tracker.decompose(build.monomials.coeff_vector(chi));
    if (!coords) throw Error("internal: coordinate function escaped the invariant subspace");
    for (std::size_t j = 0; j < coords->size(); ++j) V.at(i, j) = (*coords)[j];
  }
  return V;
}

}  // namespace detail

/// Algorithm of the multivariate construction: grow an F*-invariant subspace
/// W containing all coordinate functions by chaining iterates of each not yet
/// covered chi_i, smallest index first.
template <ScalarField K>
KoopmanDecomposition<K> build_invariant_subspace(
    const PolyMap<K>& map, std::size_t max_cells = kDefaultMaxCells,
    const ChainCanonicalizer<K>& canon = identity_canonicalizer<K>(),
    std::vector<std::uint32_t> generator_order = {}) {
  const K zero = detail::scalar_zero(map);
  auto build = detail::build_chains(map, max_cells, canon, std::move(generator_order));
  Matrix<K> M = detail::assemble_matrix(build, zero);
  Matrix<K> V = detail::assemble_coordinates(build, map, zero);
  return {map, std::move(build.basis), std::move(M), std::move(V),
          std::move(build.chain_alpha), std::move(build.chains)};
}

/// Univariate special case: the cyclic subspace spanned by chi, f* chi,
/// (f*)^2 chi, ... up to the first dependence. M is companion-shaped with the
/// dependence coefficients in the last row; V is the single row e_1.
template <ScalarField K>
KoopmanDecomposition<K> cyclic_subspace_univariate(
    const FuncPoly<K>& f, std::size_t max_cells = kDefaultMaxCells,
    const ChainCanonicalizer<K>& canon = identity_canonicalizer<K>()) {
  if (f.nvars() != 1) throw ArityMismatchError(1, f.nvars());
  return build_invariant_subspace(PolyMap<K>(f.xfield(), {f}), max_cells, canon);
}

/// Lemma: F is a permutation iff M is non-singular. The certificate carries
/// the exact determinant.
template <ScalarField K>
PermutationCertificate<K> is_permutation(const KoopmanDecomposition<K>& d) {
  K det = d.M.det();
  return {!det.is_zero(), std::move(det)};
}

/// Inverse coefficients of a companion chain: c_i = -alpha_{i+1} / alpha_0
/// for i < N-1 and c_{N-1} = 1 / alpha_0.
template <ScalarField K>
std::vector<K> inverse_coeffs(const std::vector<K>& alpha) {
  if (alpha.empty() || alpha[0].is_zero()) throw SingularMatrixError();
  const K inv0 = alpha[0].inverse();
  std::vector<K> c;
  c.reserve(alpha.size());
  for (std::size_t i = 1; i < alpha.size(); ++i) c.push_back(-(alpha[i] * inv0));
  c.push_back(inv0);
  return c;
}

namespace detail {

template <ScalarField K>
FuncPoly<K> combine(const std::vector<FuncPoly<K>>& basis, const std::vector<K>& coeffs) {
  FuncPoly<K> out(basis.at(0).xfield(), basis.at(0).nvars());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i].is_zero()) out = out + basis[i].scaled(coeffs[i]);
  }
  return out;
}

template <ScalarField K>
PolyMap<K> map_from_rows(const KoopmanDecomposition<K>& d, const Matrix<K>& rows) {
  std::vector<FuncPoly<K>> comps;
  comps.reserve(rows.rows());
  for (std::size_t i = 0; i < rows.rows(); ++i) comps.push_back(combine(d.basis, rows.row(i)));
  return PolyMap<K>(d.map.xfield(), std::move(comps));
}

}  // namespace detail

/// G = F^{-1} componentwise: g_i = v_i^T M^{-1} psi-hat.
template <ScalarField K>
InverseResult<K> invert_map(const KoopmanDecomposition<K>& d) {
  Matrix<K> minv(0, 0, d.M.at(0, 0).zero());
  try {
    minv = d.M.inverse();
  } catch (const SingularMatrixError&) {
    throw NotPermutationError();
  }
  const Matrix<K> rows = d.V * minv;
  std::vector<std::vector<K>> coeff_rows;
  coeff_rows.reserve(rows.rows());
  for (std::size_t i = 0; i < rows.rows(); ++i) coeff_rows.push_back(rows.row(i));
  return {detail::map_from_rows(d, rows), std::move(coeff_rows)};
}

template <ScalarField K>
InverseResult<K> invert_map(const PolyMap<K>& map, std::size_t max_cells = kDefaultMaxCells) {
  return invert_map(build_invariant_subspace(map, max_cells));
}

/// Univariate inverse g = sum c_i (f*)^i chi with the companion shortcut.
template <ScalarField K>
InverseResult<K> invert_univariate(const KoopmanDecomposition<K>& d) {
  if (d.map.nvars() != 1) throw ArityMismatchError(1, d.map.nvars());
  std::vector<K> c;
  try {
    c = inverse_coeffs(d.alpha());
  } catch (const SingularMatrixError&) {
    throw NotPermutationError();
  }
  FuncPoly<K> g = detail::combine(d.basis, c);
  return {PolyMap<K>(d.map.xfield(), {std::move(g)}), {std::move(c)}};
}

template <ScalarField K>
InverseResult<K> invert_univariate(const FuncPoly<K>& f,
                                   std::size_t max_cells = kDefaultMaxCells) {
  return invert_univariate(cyclic_subspace_univariate(f, max_cells));
}

/// Reconstructs F itself from the decomposition: F = V M psi-hat. Round-trips
/// with the input map by construction.
template <ScalarField K>
PolyMap<K> represent_map(const KoopmanDecomposition<K>& d) {
  return detail::map_from_rows(d, d.V * d.M);
}

/// F^{(k)} = V M^k psi-hat; k = 0 gives the identity map, negative k requires
/// M non-singular and k = -1 matches invert_map.
template <ScalarField K>
PolyMap<K> map_power(const KoopmanDecomposition<K>& d, std::int64_t k) {
  Matrix<K> mk(0, 0, d.M.at(0, 0).zero());
  try {
    mk = d.M.pow(k);
  } catch (const SingularMatrixError&) {
    throw NotPermutationError();
  }
  return detail::map_from_rows(d, d.V * mk);
}

}  // namespace koopinv
