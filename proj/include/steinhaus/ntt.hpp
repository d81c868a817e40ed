#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace steinhaus::ntt {

// Prime 119 * 2^23 + 1 with primitive root 3; transforms up to length 2^23.
inline constexpr std::uint32_t kModulus = 998244353;
inline constexpr std::uint32_t kRoot = 3;
inline constexpr std::size_t kMaxLength = std::size_t{1} << 23;

/// In-place number-theoretic transform; length must be a power of two.
void transform(std::span<std::uint32_t> values, bool inverse);

/// Linear convolution of two residue vectors modulo kModulus. The result
/// is exact whenever every true coefficient is below kModulus.
std::vector<std::uint32_t> convolve(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

}  // namespace steinhaus::ntt
