#include "steinhaus/sumset.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "steinhaus/error.hpp"
#include "steinhaus/ntt.hpp"

namespace steinhaus {

SignVector::SignVector(std::vector<int> signs) : signs_(std::move(signs)) {
  if (signs_.empty()) throw Error("sign vector must have at least one entry");
  for (int s : signs_) {
    if (s != 1 && s != -1) throw Error("sign vector entries must be +1 or -1");
  }
}

std::size_t SignVector::plus_count() const noexcept {
  return static_cast<std::size_t>(std::count(signs_.begin(), signs_.end(), 1));
}

namespace {

void check_operands(const CyclicSet& a, const CyclicSet& b) {
  if (a.modulus() != b.modulus()) throw Error("modulus mismatch in sumset");
  if (a.empty() || b.empty()) throw Error("sumset of an empty set");
}

// Bits [0, 2n) hold B twice, so bits [n - a, 2n - a) are B rotated by a.
std::vector<Word> doubled(const CyclicSet& b) {
  const std::uint32_t n = b.modulus();
  const std::size_t len = (2 * static_cast<std::size_t>(n) + kWordBits - 1) / kWordBits + 1;
  std::vector<Word> d(len, 0);
  const auto src = b.words();
  std::copy(src.begin(), src.end(), d.begin());
  const std::size_t off = n / kWordBits;
  const unsigned sh = n % kWordBits;
  for (std::size_t i = 0; i < src.size(); ++i) {
    d[off + i] |= src[i] << sh;
    if (sh != 0) d[off + i + 1] |= src[i] >> (kWordBits - sh);
  }
  return d;
}

}  // namespace

namespace kernels {

CyclicSet shift_or(const CyclicSet& a, const CyclicSet& b) {
  check_operands(a, b);
  const CyclicSet& iter = a.size() <= b.size() ? a : b;
  const CyclicSet& other = a.size() <= b.size() ? b : a;
  const std::uint32_t n = a.modulus();
  const auto d = doubled(other);
  std::vector<Word> acc(a.word_count(), 0);
  const std::size_t words = acc.size();
  iter.for_each([&](Residue r) {
    const std::size_t start = n - r;
    const std::size_t off = start / kWordBits;
    const unsigned sh = start % kWordBits;
    if (sh == 0) {
      for (std::size_t i = 0; i < words; ++i) acc[i] |= d[off + i];
    } else {
      for (std::size_t i = 0; i < words; ++i) acc[i] |= (d[off + i] >> sh) | (d[off + i + 1] << (kWordBits - sh));
    }
  });
  return CyclicSet::from_words(n, std::move(acc));
}

CyclicSet convolution(const CyclicSet& a, const CyclicSet& b) {
  check_operands(a, b);
  const std::uint32_t n = a.modulus();
  if (n > kConvolutionMaxModulus) throw Error("convolution kernel supports n <= 2^22");
  std::vector<std::uint32_t> fa(n, 0), fb(n, 0);
  a.for_each([&](Residue r) { fa[r] = 1; });
  b.for_each([&](Residue r) { fb[r] = 1; });
  // Pair counts are at most n < the NTT prime, so nonzero mod p means nonzero.
  const auto prod = ntt::convolve(fa, fb);
  CyclicSet out(n);
  for (std::size_t i = 0; i < prod.size(); ++i) {
    if (prod[i] != 0) out.insert(static_cast<Residue>(i % n));
  }
  return out;
}

bool prefers_convolution(std::size_t smaller_size, std::uint32_t modulus) noexcept {
  if (modulus > kConvolutionMaxModulus || modulus < 2) return false;
  return static_cast<double>(smaller_size) > kConvolutionFactor * std::log2(static_cast<double>(modulus));
}

}  // namespace kernels

CyclicSet sumset(const CyclicSet& a, const CyclicSet& b) {
  check_operands(a, b);
  if (a.full() || b.full()) return CyclicSet::full(a.modulus());
  if (kernels::prefers_convolution(std::min(a.size(), b.size()), a.modulus())) return kernels::convolution(a, b);
  return kernels::shift_or(a, b);
}

CyclicSet iterated_sumset(const CyclicSet& a, std::uint64_t k) {
  if (k == 0) throw Error("iterated sumset needs k >= 1");
  if (a.empty()) throw Error("iterated sumset of an empty set");
  std::optional<CyclicSet> result;
  CyclicSet power = a;
  while (true) {
    if (k & 1u) {
      result = result ? sumset(*result, power) : power;
      if (result->full()) return *result;
    }
    k >>= 1;
    if (k == 0) break;
    power = sumset(power, power);
    if (power.full()) return power;
  }
  return *result;
}

CyclicSet class_product(const CyclicSet& a, SignClass cls) {
  if (cls.plus + cls.minus == 0) throw Error("sign class must have at least one factor");
  if (cls.plus == 0) return iterated_sumset(negate(a), cls.minus);
  const CyclicSet pos = iterated_sumset(a, cls.plus);
  if (cls.minus == 0) return pos;
  return sumset(pos, iterated_sumset(negate(a), cls.minus));
}

CyclicSet signed_product(const CyclicSet& a, const SignVector& eps) {
  return class_product(a, SignClass{eps.plus_count(), eps.minus_count()});
}

CyclicSet pm_product(const CyclicSet& a, std::uint64_t m) {
  if (m == 0) throw Error("pm product needs m >= 1");
  return iterated_sumset(set_union(a, negate(a)), m);
}

std::vector<SignClass> sign_count_classes(std::size_t m) {
  if (m == 0) throw Error("sign classes need m >= 1");
  std::vector<SignClass> out;
  out.reserve(m + 1);
  for (std::size_t p = m + 1; p-- > 0;) out.push_back(SignClass{p, m - p});
  return out;
}

}  // namespace steinhaus
