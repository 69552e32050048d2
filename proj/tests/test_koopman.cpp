#include <catch_amalgamated.hpp>

#include <random>

#include "koopinv/koopman.hpp"
#include "koopinv/oracle.hpp"
#include "koopinv/parse.hpp"

using namespace koopinv;

namespace {

FuncPoly<Fp> poly(const Field& f, std::uint32_t nvars, const std::string& src) {
  return parse_poly<Fp>(src, f, nvars);
}

FuncPoly<Fp> random_reduced(const Field& field, std::uint32_t nvars, std::mt19937_64& rng) {
  FuncPoly<Fp> f(field, nvars);
  MonomialBasis basis(field, nvars);
  const std::uint64_t p = field.p();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    f.add_term(basis.monomial(i), Fp(rng() % p, p));
  }
  return f;
}

PolyMap<Fp> random_map(const Field& field, std::uint32_t nvars, std::mt19937_64& rng) {
  std::vector<FuncPoly<Fp>> comps;
  for (std::uint32_t i = 0; i < nvars; ++i) comps.push_back(random_reduced(field, nvars, rng));
  return PolyMap<Fp>(field, comps);
}

bool is_identity_pointwise(const PolyMap<Fp>& m) {
  PointSpace space(m.xfield(), m.nvars());
  for (std::uint64_t r = 0; r < space.size(); ++r) {
    const auto pt = space.point(r);
    const auto img = m.eval(pt);
    for (std::size_t i = 0; i < pt.size(); ++i) {
      if (!(img[i] == pt[i])) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("cyclic subspace of the worked univariate example") {
  Field f5(5);
  const auto f = poly(f5, 1, "x^3+2*x^2+3*x+3");
  const auto d = cyclic_subspace_univariate(f);

  CHECK(d.dimension() == 3);
  CHECK(d.basis[0] == poly(f5, 1, "x"));
  CHECK(d.basis[1] == f);
  CHECK(d.basis[2] == poly(f5, 1, "2*x^3+3*x^2+4*x+2"));

  REQUIRE(d.alpha().size() == 3);
  CHECK(d.alpha()[0].value() == 4);
  CHECK(d.alpha()[1].value() == 3);
  CHECK(d.alpha()[2].value() == 3);

  // companion shape, row convention: superdiagonal ones, alpha in the last row
  for (std::size_t i = 0; i + 1 < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(d.M.at(i, j).value() == (j == i + 1 ? 1u : 0u));
    }
  }
  CHECK(d.M.at(2, 0).value() == 4);
  CHECK(d.M.at(2, 1).value() == 3);
  CHECK(d.M.at(2, 2).value() == 3);

  // V is the single row e_1
  CHECK(d.V.rows() == 1);
  CHECK(d.V.at(0, 0).is_one());
  CHECK(d.V.at(0, 1).is_zero());
  CHECK(d.V.at(0, 2).is_zero());

  // the same data in column convention is the transpose of M
  const auto reference_K = Matrix<Fp>::from_rows(
      {{f5.elem(0), f5.elem(0), f5.elem(4)},
       {f5.elem(1), f5.elem(0), f5.elem(3)},
       {f5.elem(0), f5.elem(1), f5.elem(3)}});
  CHECK(d.M == reference_K.transposed());
  const auto reference_Kinv = Matrix<Fp>::from_rows(
      {{f5.elem(3), f5.elem(1), f5.elem(0)},
       {f5.elem(3), f5.elem(0), f5.elem(1)},
       {f5.elem(4), f5.elem(0), f5.elem(0)}});
  CHECK(d.M.inverse() == reference_Kinv.transposed());

  const auto cert = is_permutation(d);
  CHECK(cert.invertible);
  CHECK(cert.det.value() == 4);
}

TEST_CASE("univariate edge chains") {
  Field f5(5);
  const auto idd = cyclic_subspace_univariate(poly(f5, 1, "x"));
  CHECK(idd.dimension() == 1);
  CHECK(idd.alpha().size() == 1);
  CHECK(idd.alpha()[0].value() == 1);
  CHECK(idd.M.at(0, 0).value() == 1);

  const auto lin = cyclic_subspace_univariate(poly(f5, 1, "2*x"));
  CHECK(lin.dimension() == 1);
  CHECK(lin.alpha()[0].value() == 2);

  // constant map: the chain chi, c closes with alpha = (0, 1)
  const auto con = cyclic_subspace_univariate(poly(f5, 1, "3"));
  CHECK(con.dimension() == 2);
  CHECK(con.alpha()[0].value() == 0);
  CHECK(con.alpha()[1].value() == 1);
  CHECK_FALSE(is_permutation(con).invertible);
}

TEST_CASE("inverse coefficients from the dependence coefficients") {
  Field f5(5);
  const std::vector<Fp> alpha{f5.elem(4), f5.elem(3), f5.elem(3)};
  const auto c = inverse_coeffs(alpha);
  REQUIRE(c.size() == 3);
  CHECK(c[0].value() == 3);
  CHECK(c[1].value() == 3);
  CHECK(c[2].value() == 4);

  CHECK(inverse_coeffs(std::vector<Fp>{f5.elem(1)})[0].value() == 1);
  CHECK_THROWS_AS(inverse_coeffs(std::vector<Fp>{f5.elem(0), f5.elem(1)}),
                  SingularMatrixError);
}

TEST_CASE("univariate inversion") {
  Field f5(5);
  const auto inv = invert_univariate(poly(f5, 1, "x^3+2*x^2+3*x+3"));
  CHECK(inv.inverse.component(0) == poly(f5, 1, "x^3+3*x^2+3*x+2"));

  // the inverse coefficients are the first row of M^{-1}
  const auto d = cyclic_subspace_univariate(poly(f5, 1, "x^3+2*x^2+3*x+3"));
  const auto minv = d.M.inverse();
  for (std::size_t j = 0; j < 3; ++j) CHECK(inv.coeffs[0][j] == minv.at(0, j));

  CHECK(invert_univariate(poly(f5, 1, "2*x")).inverse.component(0) == poly(f5, 1, "3*x"));
  CHECK(invert_univariate(poly(f5, 1, "x^3")).inverse.component(0) == poly(f5, 1, "x^3"));
  CHECK_THROWS_AS(invert_univariate(poly(f5, 1, "x^2")), NotPermutationError);
}

TEST_CASE("the F_2^3 worked example end to end") {
  Field f2(2);
  const auto F = parse_map<Fp>("x2; x3; x1 + x2*x3", f2, 3);
  const auto d = build_invariant_subspace(F);

  CHECK(d.dimension() == 6);
  CHECK(d.chains.size() == 1);  // a single chain from chi_1
  CHECK(d.basis[0] == poly(f2, 3, "x1"));
  CHECK(d.basis[1] == poly(f2, 3, "x2"));
  CHECK(d.basis[2] == poly(f2, 3, "x3"));
  CHECK(d.basis[3] == poly(f2, 3, "x1 + x2*x3"));
  CHECK(d.basis[4] == poly(f2, 3, "x2 + x1*x3 + x2*x3"));
  CHECK(d.basis[5] == poly(f2, 3, "x3 + x1*x2 + x1*x3"));

  const auto expected_M = Matrix<Fp>::from_rows({
      {f2.elem(0), f2.elem(1), f2.elem(0), f2.elem(0), f2.elem(0), f2.elem(0)},
      {f2.elem(0), f2.elem(0), f2.elem(1), f2.elem(0), f2.elem(0), f2.elem(0)},
      {f2.elem(0), f2.elem(0), f2.elem(0), f2.elem(1), f2.elem(0), f2.elem(0)},
      {f2.elem(0), f2.elem(0), f2.elem(0), f2.elem(0), f2.elem(1), f2.elem(0)},
      {f2.elem(0), f2.elem(0), f2.elem(0), f2.elem(0), f2.elem(0), f2.elem(1)},
      {f2.elem(1), f2.elem(1), f2.elem(1), f2.elem(0), f2.elem(1), f2.elem(1)},
  });
  CHECK(d.M == expected_M);

  const auto expected_Minv = Matrix<Fp>::from_rows({
      {f2.elem(1), f2.elem(1), f2.elem(0), f2.elem(1), f2.elem(1), f2.elem(1)},
      {f2.elem(1), f2.elem(0), f2.elem(0), f2.elem(0), f2.elem(0), f2.elem(0)},
      {f2.elem(0), f2.elem(1), f2.elem(0), f2.elem(0), f2.elem(0), f2.elem(0)},
      {f2.elem(0), f2.elem(0), f2.elem(1), f2.elem(0), f2.elem(0), f2.elem(0)},
      {f2.elem(0), f2.elem(0), f2.elem(0), f2.elem(1), f2.elem(0), f2.elem(0)},
      {f2.elem(0), f2.elem(0), f2.elem(0), f2.elem(0), f2.elem(1), f2.elem(0)},
  });
  CHECK(d.M.inverse() == expected_Minv);

  CHECK(is_permutation(d).invertible);
  const auto inv = invert_map(d);
  CHECK(inv.inverse == parse_map<Fp>("x3 + x1*x2; x1; x2", f2, 3));

  // W invariance: every basis image decomposes over the basis as M's row
  MonomialBasis monomials(f2, 3);
  IndependenceTracker<Fp> tracker(monomials.size(), f2.zero());
  for (const auto& b : d.basis) tracker.insert(monomials.coeff_vector(b));
  for (std::size_t i = 0; i < d.basis.size(); ++i) {
    const auto coords = tracker.decompose(monomials.coeff_vector(d.basis[i].compose(F)));
    REQUIRE(coords.has_value());
    for (std::size_t j = 0; j < coords->size(); ++j) CHECK((*coords)[j] == d.M.at(i, j));
  }
}

TEST_CASE("the swap map is its own inverse") {
  Field f3(3);
  const auto F = parse_map<Fp>("x2; x1", f3, 2);
  const auto inv = invert_map(F);
  CHECK(inv.inverse == F);
}

TEST_CASE("size cap propagates through the subspace construction") {
  Field f101(101);
  std::vector<FuncPoly<Fp>> comps;
  for (int i = 0; i < 4; ++i) comps.push_back(FuncPoly<Fp>::coordinate(f101, 4, i, f101.one()));
  CHECK_THROWS_AS(build_invariant_subspace(PolyMap<Fp>(f101, comps)), SizeLimitError);
}

TEST_CASE("two-chain construction") {
  Field f2(2);
  const auto F = parse_map<Fp>("x1; x1 + x2", f2, 2);
  const auto d = build_invariant_subspace(F);
  CHECK(d.dimension() == 2);
  REQUIRE(d.chains.size() == 2);
  CHECK(d.chains[0].length == 1);
  CHECK(d.chains[1].length == 1);
  CHECK(d.M.at(0, 0).value() == 1);
  CHECK(d.M.at(0, 1).value() == 0);
  CHECK(d.M.at(1, 0).value() == 1);
  CHECK(d.M.at(1, 1).value() == 1);

  // F is an involution, so the inverse is F itself
  const auto inv = invert_map(d);
  CHECK(inv.inverse == F);
  CHECK(is_identity_pointwise(F.compose(inv.inverse)));
}

TEST_CASE("identity map gives the coordinate basis") {
  Field f3(3);
  const auto id = PolyMap<Fp>::identity(f3, 3, f3.one());
  const auto d = build_invariant_subspace(id);
  CHECK(d.dimension() == 3);
  CHECK(d.M == Matrix<Fp>::identity(3, f3.one()));
  CHECK(represent_map(d) == id);
}

TEST_CASE("representation round-trip") {
  Field f2(2);
  const auto F = parse_map<Fp>("x2; x3; x1 + x2*x3", f2, 3);
  CHECK(represent_map(build_invariant_subspace(F)) == F);

  Field f5(5);
  const auto f = poly(f5, 1, "x^3+2*x^2+3*x+3");
  const auto d = cyclic_subspace_univariate(f);
  CHECK(represent_map(d) == PolyMap<Fp>(f5, {f}));

  // e_2^T psi-hat is f itself (the second basis element)
  CHECK(d.basis[1] == f);

  std::mt19937_64 rng(41);
  for (std::uint64_t p : {2ull, 3ull, 5ull}) {
    Field field(p);
    for (std::uint32_t n = 1; n <= (p == 5 ? 1u : 3u); ++n) {
      for (int rep = 0; rep < 10; ++rep) {
        const auto m = random_map(field, n, rng);
        CHECK(represent_map(build_invariant_subspace(m)) == m);
      }
    }
  }
}

TEST_CASE("permutation verdict agrees with brute force on random maps") {
  std::mt19937_64 rng(43);
  for (std::uint64_t p : {2ull, 3ull, 5ull}) {
    Field field(p);
    for (std::uint32_t n = 1; n <= (p == 5 ? 1u : 2u); ++n) {
      for (int rep = 0; rep < 25; ++rep) {
        const auto m = random_map(field, n, rng);
        const auto d = build_invariant_subspace(m);
        CHECK(is_permutation(d).invertible == perm_check_bruteforce(m));
      }
    }
  }
}

TEST_CASE("inverse contract holds pointwise whenever inversion succeeds") {
  std::mt19937_64 rng(47);
  Field f3(3);
  int inverted = 0;
  while (inverted < 10) {
    const auto m = random_map(f3, 2, rng);
    const auto d = build_invariant_subspace(m);
    if (!is_permutation(d).invertible) continue;
    ++inverted;
    const auto inv = invert_map(d);
    CHECK(is_identity_pointwise(m.compose(inv.inverse)));
    CHECK(is_identity_pointwise(inv.inverse.compose(m)));
    CHECK(compare_functions(inv.inverse, interpolate(inverse_table(m))));
  }
}

TEST_CASE("map powers follow the semigroup law") {
  Field f5(5);
  const auto f = poly(f5, 1, "x^3+2*x^2+3*x+3");
  const auto d = cyclic_subspace_univariate(f);

  CHECK(map_power(d, 2).component(0) == poly(f5, 1, "2*x^3+3*x^2+4*x+2"));
  CHECK(map_power(d, 0) == PolyMap<Fp>::identity(f5, 1, f5.one()));
  CHECK(map_power(d, -1) == invert_univariate(d).inverse);

  // k = 5 against five-fold repeated composition
  PolyMap<Fp> five(f5, {f});
  for (int i = 1; i < 5; ++i) five = five.compose(PolyMap<Fp>(f5, {f}));
  CHECK(map_power(d, 5) == five);

  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) {
      CHECK(map_power(d, i + j) == map_power(d, i).compose(map_power(d, j)));
    }
  }

  // negative powers require invertibility
  const auto sq = cyclic_subspace_univariate(poly(f5, 1, "x^2"));
  CHECK_THROWS_AS(map_power(sq, -1), NotPermutationError);
  CHECK(map_power(sq, 0) == PolyMap<Fp>::identity(f5, 1, f5.one()));
}

TEST_CASE("the inverse does not depend on the generator insertion order") {
  std::mt19937_64 rng(53);
  Field f2(2);
  int inverted = 0;
  while (inverted < 8) {
    const auto m = random_map(f2, 3, rng);
    const auto d = build_invariant_subspace(m);
    if (!is_permutation(d).invertible) continue;
    ++inverted;
    const auto reference = invert_map(d).inverse;
    const std::vector<std::vector<std::uint32_t>> orders{{2, 0, 1}, {1, 2, 0}, {2, 1, 0}};
    for (const auto& order : orders) {
      const auto d2 = build_invariant_subspace(m, kDefaultMaxCells,
                                               identity_canonicalizer<Fp>(), order);
      CHECK(invert_map(d2).inverse == reference);
    }
  }
}
