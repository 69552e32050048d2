#pragma once

#include <concepts>
#include <cstdint>

namespace koopinv {

/// Contract every scalar domain of the linear algebra and polynomial layers
/// satisfies. Both Fp and RationalFunc model it, so the same elimination and
/// subspace machinery runs over F_p and over F_p(a).
template <typename K>
concept ScalarField = std::copyable<K> && requires(const K& a, const K& b, std::uint64_t r) {
  { a + b } -> std::same_as<K>;
  { a - b } -> std::same_as<K>;
  { a * b } -> std::same_as<K>;
  { -a } -> std::same_as<K>;
  { a.inverse() } -> std::same_as<K>;
  { a.zero() } -> std::same_as<K>;
  { a.one() } -> std::same_as<K>;
  { a.embed(r) } -> std::same_as<K>;
  { a.is_zero() } -> std::same_as<bool>;
  { a.is_one() } -> std::same_as<bool>;
  { a == b } -> std::convertible_to<bool>;
};

}  // namespace koopinv
