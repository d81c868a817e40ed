#include "steinhaus/ntt.hpp"

#include <bit>
#include <utility>

#include "steinhaus/error.hpp"

namespace steinhaus::ntt {

namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// -p^-1 mod 2^32 by Newton iteration.
constexpr u32 negated_inverse() {
  u32 inv = kModulus;
  for (int i = 0; i < 4; ++i) inv *= 2 - kModulus * inv;
  return static_cast<u32>(0u - inv);
}

// Montgomery arithmetic with R = 2^32; values kept in [0, p).
struct Montgomery {
  static constexpr u32 kNegInv = negated_inverse();
  static constexpr u32 kR2 = static_cast<u32>((static_cast<unsigned __int128>(1) << 64) % kModulus);

  static u32 reduce(u64 t) {
    const u32 q = static_cast<u32>(t) * kNegInv;
    const u32 r = static_cast<u32>((t + static_cast<u64>(q) * kModulus) >> 32);
    return r >= kModulus ? r - kModulus : r;
  }
  static u32 mul(u32 a, u32 b) { return reduce(static_cast<u64>(a) * b); }
  static u32 to(u32 a) { return mul(a, kR2); }
  static u32 from(u32 a) { return reduce(a); }
};

u32 power(u32 base, u64 exp) {
  u32 result = 1;
  while (exp != 0) {
    if (exp & 1u) result = static_cast<u32>(static_cast<u64>(result) * base % kModulus);
    base = static_cast<u32>(static_cast<u64>(base) * base % kModulus);
    exp >>= 1;
  }
  return result;
}

// Butterflies on Montgomery-form values.
void transform_montgomery(std::span<u32> values, bool inverse) {
  const std::size_t len = values.size();
  for (std::size_t i = 1, j = 0; i < len; ++i) {
    std::size_t bit = len >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(values[i], values[j]);
  }

  std::vector<u32> twiddles(len / 2);
  for (std::size_t half = 1; half < len; half <<= 1) {
    u32 step = power(kRoot, (kModulus - 1) / (2 * half));
    if (inverse) step = power(step, kModulus - 2);
    const u32 step_m = Montgomery::to(step);
    twiddles[0] = Montgomery::to(1);
    for (std::size_t k = 1; k < half; ++k) twiddles[k] = Montgomery::mul(twiddles[k - 1], step_m);
    for (std::size_t start = 0; start < len; start += 2 * half) {
      u32* lo = values.data() + start;
      u32* hi = lo + half;
      for (std::size_t k = 0; k < half; ++k) {
        const u32 x = lo[k];
        const u32 y = Montgomery::mul(hi[k], twiddles[k]);
        lo[k] = x + y >= kModulus ? x + y - kModulus : x + y;
        hi[k] = x >= y ? x - y : x + kModulus - y;
      }
    }
  }

  if (inverse) {
    const u32 scale = Montgomery::to(power(static_cast<u32>(len % kModulus), kModulus - 2));
    for (auto& v : values) v = Montgomery::mul(v, scale);
  }
}

void check_length(std::size_t len) {
  if (!std::has_single_bit(len) || len > kMaxLength) throw Error("transform length must be a power of two <= 2^23");
}

}  // namespace

void transform(std::span<u32> values, bool inverse) {
  if (values.empty()) return;
  check_length(values.size());
  for (auto& v : values) v = Montgomery::to(v % kModulus);
  transform_montgomery(values, inverse);
  for (auto& v : values) v = Montgomery::from(v);
}

std::vector<u32> convolve(std::span<const u32> a, std::span<const u32> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t len = std::bit_ceil(out_len);
  check_length(len);
  std::vector<u32> fa(len, 0), fb(len, 0);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = Montgomery::to(a[i] % kModulus);
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = Montgomery::to(b[i] % kModulus);
  transform_montgomery(fa, false);
  transform_montgomery(fb, false);
  for (std::size_t i = 0; i < len; ++i) fa[i] = Montgomery::mul(fa[i], fb[i]);
  transform_montgomery(fa, true);
  fa.resize(out_len);
  for (auto& v : fa) v = Montgomery::from(v);
  return fa;
}

}  // namespace steinhaus::ntt
