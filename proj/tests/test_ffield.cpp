#include <catch_amalgamated.hpp>

#include <random>

#include "koopinv/ffield.hpp"

using namespace koopinv;

TEST_CASE("field construction accepts primes and rejects composites") {
  CHECK(Field(13).p() == 13);
  CHECK(Field(2).p() == 2);
  CHECK(Field(101).p() == 101);
  CHECK(Field(2147483647).p() == 2147483647);  // 2^31 - 1 is prime
  CHECK_THROWS_AS(Field(4), NotPrimeError);
  CHECK_THROWS_AS(Field(1), NotPrimeError);
  CHECK_THROWS_AS(Field(0), NotPrimeError);
  CHECK_THROWS_AS(Field(91), NotPrimeError);  // 7 * 13
  CHECK_THROWS_AS(Field(1ull << 32), SizeLimitError);
}

TEST_CASE("element arithmetic stays canonical") {
  Field f5(5), f13(13), f7(7);
  CHECK((f5.elem(4) * f5.elem(4)).value() == 1);  // 16 mod 5
  CHECK((f13.elem(12) + f13.elem(1)).value() == 0);
  CHECK((-f7.elem(0)).value() == 0);
  CHECK((f5.elem(2) - f5.elem(4)).value() == 3);
  CHECK(f5.elem(-1).value() == 4);
}

TEST_CASE("arithmetic between different fields is an error") {
  Field f5(5), f7(7);
  CHECK_THROWS_AS(f5.elem(1) + f7.elem(1), FieldMismatchError);
  CHECK_THROWS_AS(f5.elem(1) * f7.elem(1), FieldMismatchError);
  CHECK_THROWS_AS(f5.elem(2) - f7.elem(1), FieldMismatchError);
}

TEST_CASE("inverse") {
  Field f5(5), f13(13), f7(7);
  CHECK(f5.elem(4).inverse().value() == 4);   // 4*4 = 16 = 1
  CHECK(f13.elem(2).inverse().value() == 7);  // 2*7 = 14 = 1
  CHECK_THROWS_AS(f7.elem(0).inverse(), DivisionByZeroError);
}

TEST_CASE("inverse is exact for every nonzero element of small fields") {
  for (std::uint64_t p : {2ull, 3ull, 5ull, 31ull, 101ull}) {
    Field field(p);
    for (std::uint64_t v = 1; v < p; ++v) {
      CHECK((Fp(v, p).inverse() * Fp(v, p)).is_one());
    }
  }
}

TEST_CASE("pow") {
  Field f5(5), f17(17), f13(13);
  CHECK(f5.elem(3).pow(4).value() == 1);   // Fermat
  CHECK(f17.elem(9).pow(17).value() == 9); // a^p = a
  CHECK(f13.elem(5).pow(0).value() == 1);
  CHECK(f13.elem(0).pow(0).value() == 1);  // 0^0 = 1 by convention
}

TEST_CASE("a^p = a for every element of small fields") {
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 13ull}) {
    for (std::uint64_t v = 0; v < p; ++v) CHECK(Fp(v, p).pow(p).value() == v);
  }
}

TEST_CASE("commutativity, associativity, distributivity on random triples") {
  std::mt19937_64 rng(7);
  for (std::uint64_t p : {7ull, 13ull, 2147483647ull}) {
    Field field(p);
    for (int i = 0; i < 200; ++i) {
      const Fp a(rng() % p, p), b(rng() % p, p), c(rng() % p, p);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
    }
  }
}
