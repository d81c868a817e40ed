#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "steinhaus/cyclic_set.hpp"

namespace steinhaus {

/// A sign pattern (e_1, ..., e_m) with every e_i in {-1, +1}, m >= 1.
class SignVector {
 public:
  /// Throws Error on an empty vector or an entry other than +-1.
  explicit SignVector(std::vector<int> signs);
  SignVector(std::initializer_list<int> signs) : SignVector(std::vector<int>(signs)) {}

  static SignVector all_plus(std::size_t length) { return SignVector(std::vector<int>(length, 1)); }

  std::size_t size() const noexcept { return signs_.size(); }
  int operator[](std::size_t i) const noexcept { return signs_[i]; }
  const std::vector<int>& values() const noexcept { return signs_; }
  std::size_t plus_count() const noexcept;
  std::size_t minus_count() const noexcept { return size() - plus_count(); }

  friend bool operator==(const SignVector&, const SignVector&) = default;

 private:
  std::vector<int> signs_;
};

/// (p, q): p copies of A and q copies of -A.
struct SignClass {
  std::size_t plus = 0;
  std::size_t minus = 0;

  friend auto operator<=>(const SignClass&, const SignClass&) = default;
};

namespace kernels {

/// OR of B rotated by every a in A; O(|A| * n / 64) word operations.
CyclicSet shift_or(const CyclicSet& a, const CyclicSet& b);
/// Indicator convolution over NTT, folded mod n; exact for n <= 2^22.
CyclicSet convolution(const CyclicSet& a, const CyclicSet& b);

/// Dispatch uses convolution once the smaller operand exceeds
/// factor * log2(n) members. The factor comes from tools/sumset_bench.
inline constexpr double kConvolutionFactor = 4096.0;
inline constexpr std::uint32_t kConvolutionMaxModulus = 1u << 22;

bool prefers_convolution(std::size_t smaller_size, std::uint32_t modulus) noexcept;

}  // namespace kernels

/// A + B. Throws Error on mismatched moduli or an empty operand.
CyclicSet sumset(const CyclicSet& a, const CyclicSet& b);

/// kA by binary exponentiation, stopping early once the result is full.
/// Throws Error if k == 0 or A is empty.
CyclicSet iterated_sumset(const CyclicSet& a, std::uint64_t k);

/// pA + q(-A) for the class (p, q), p + q >= 1.
CyclicSet class_product(const CyclicSet& a, SignClass cls);

/// e_1 A + ... + e_m A. Only the sign counts matter in an abelian group.
CyclicSet signed_product(const CyclicSet& a, const SignVector& eps);

/// m(A u -A). Throws Error if m == 0.
CyclicSet pm_product(const CyclicSet& a, std::uint64_t m);

/// [(m,0), (m-1,1), ..., (0,m)]. Throws Error if m == 0.
std::vector<SignClass> sign_count_classes(std::size_t m);

}  // namespace steinhaus
