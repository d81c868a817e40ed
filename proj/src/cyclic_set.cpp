#include "steinhaus/cyclic_set.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "steinhaus/error.hpp"

namespace steinhaus {

namespace {

std::size_t words_for(std::uint32_t n) { return (static_cast<std::size_t>(n) + kWordBits - 1) / kWordBits; }

Residue mod_sub(Residue a, Residue b, std::uint32_t n) { return a >= b ? a - b : a + n - b; }

}  // namespace

CyclicSet::CyclicSet(std::uint32_t modulus) : modulus_(modulus) {
  if (modulus == 0) throw Error("modulus must be positive");
  words_.assign(words_for(modulus), 0);
}

CyclicSet CyclicSet::full(std::uint32_t modulus) {
  CyclicSet s(modulus);
  std::fill(s.words_.begin(), s.words_.end(), ~Word{0});
  s.clear_padding();
  return s;
}

CyclicSet CyclicSet::from_residues(std::uint32_t modulus, std::span<const Residue> residues) {
  CyclicSet s(modulus);
  for (Residue r : residues) {
    if (r >= modulus) {
      throw Error("residue " + std::to_string(r) + " outside Z_" + std::to_string(modulus));
    }
    s.insert(r);
  }
  return s;
}

CyclicSet CyclicSet::from_residues(std::uint32_t modulus, std::initializer_list<Residue> residues) {
  return from_residues(modulus, std::span<const Residue>(residues.begin(), residues.size()));
}

CyclicSet CyclicSet::interval(std::uint32_t modulus, std::int64_t lo, std::int64_t hi) {
  CyclicSet s(modulus);
  if (hi - lo + 1 >= static_cast<std::int64_t>(modulus)) return full(modulus);
  const std::int64_t n = modulus;
  for (std::int64_t x = lo; x <= hi; ++x) s.insert(static_cast<Residue>(((x % n) + n) % n));
  return s;
}

CyclicSet CyclicSet::from_words(std::uint32_t modulus, std::vector<Word> words) {
  CyclicSet s(modulus);
  words.resize(s.words_.size(), 0);
  s.words_ = std::move(words);
  s.clear_padding();
  return s;
}

void CyclicSet::insert(Residue r) {
  if (r >= modulus_) throw Error("residue outside group");
  words_[r / kWordBits] |= Word{1} << (r % kWordBits);
}

void CyclicSet::erase(Residue r) {
  if (r >= modulus_) return;
  words_[r / kWordBits] &= ~(Word{1} << (r % kWordBits));
}

void CyclicSet::toggle(Residue r) {
  if (r >= modulus_) throw Error("residue outside group");
  words_[r / kWordBits] ^= Word{1} << (r % kWordBits);
}

std::size_t CyclicSet::size() const noexcept {
  std::size_t total = 0;
  for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool CyclicSet::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

std::vector<Residue> CyclicSet::residues() const {
  std::vector<Residue> out;
  out.reserve(size());
  for_each([&](Residue r) { out.push_back(r); });
  return out;
}

std::optional<Residue> CyclicSet::first() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return static_cast<Residue>(w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w])));
  }
  return std::nullopt;
}

CyclicSet& CyclicSet::operator|=(const CyclicSet& other) {
  if (other.modulus_ != modulus_) throw Error("modulus mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

std::strong_ordering operator<=>(const CyclicSet& a, const CyclicSet& b) {
  if (auto c = a.modulus_ <=> b.modulus_; c != 0) return c;
  for (std::size_t i = a.words_.size(); i-- > 0;) {
    if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

void CyclicSet::clear_padding() noexcept {
  const std::uint32_t used = modulus_ % kWordBits;
  if (used != 0) words_.back() &= (Word{1} << used) - 1;
}

AffineMap::AffineMap(Residue unit, Residue shift, std::uint32_t modulus)
    : unit_(unit), shift_(shift), modulus_(modulus) {
  if (modulus == 0) throw Error("modulus must be positive");
  if (unit >= modulus || shift >= modulus) throw Error("affine map coefficients must be reduced residues");
  if (std::gcd(unit, modulus) != 1) throw Error("affine map unit is not coprime to the modulus");
}

std::vector<Residue> units(std::uint32_t modulus) {
  std::vector<Residue> out;
  for (Residue u = 0; u < modulus; ++u) {
    if (std::gcd(u, modulus) == 1) out.push_back(u);
  }
  return out;
}

CyclicSet negate(const CyclicSet& a) {
  const std::uint32_t n = a.modulus();
  CyclicSet out(n);
  a.for_each([&](Residue r) { out.insert(r == 0 ? 0 : n - r); });
  return out;
}

CyclicSet translate(const CyclicSet& a, Residue shift) {
  const std::uint32_t n = a.modulus();
  shift %= n;
  CyclicSet out(n);
  a.for_each([&](Residue r) { out.insert(r + shift >= n ? r + shift - n : r + shift); });
  return out;
}

CyclicSet set_union(const CyclicSet& a, const CyclicSet& b) {
  CyclicSet out = a;
  out |= b;
  return out;
}

CyclicSet affine_apply(const CyclicSet& a, const AffineMap& f) {
  if (f.modulus() != a.modulus()) throw Error("affine map modulus does not match the set");
  CyclicSet out(a.modulus());
  a.for_each([&](Residue r) { out.insert(f(r)); });
  return out;
}

std::optional<Residue> symmetry_center(const CyclicSet& a) {
  const auto first = a.first();
  if (!first) throw Error("symmetry center of an empty set");
  const std::uint32_t n = a.modulus();
  const auto members = a.residues();

  // A = t - A forces t - min(A) to be a member, so t ranges over min(A) + A.
  std::optional<Residue> best;
  auto check = [&](Residue c) {
    const Residue t = static_cast<Residue>((2ull * c) % n);
    for (Residue r : members) {
      if (!a.contains(mod_sub(t, r, n))) return;
    }
    if (!best || c < *best) best = c;
  };
  for (Residue r : members) {
    const Residue t = static_cast<Residue>((static_cast<std::uint64_t>(*first) + r) % n);
    if (n % 2 == 1) {
      // 2 is invertible: c = t * (n + 1) / 2.
      check(static_cast<Residue>((static_cast<std::uint64_t>(t) * ((n + 1) / 2)) % n));
    } else if (t % 2 == 0) {
      check(t / 2);
      check(t / 2 + n / 2);
    }
  }
  return best;
}

CyclicSet canonical_form(const CyclicSet& a) {
  const std::uint32_t n = a.modulus();
  if (a.empty()) return a;
  const auto members = a.residues();
  std::vector<Residue> best;  // descending members of the best candidate
  std::vector<Residue> image(members.size());
  std::vector<Residue> candidate(members.size());

  for (Residue u : units(n)) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      image[i] = static_cast<Residue>((static_cast<std::uint64_t>(u) * members[i]) % n);
    }
    for (Residue zero : image) {
      for (std::size_t i = 0; i < image.size(); ++i) candidate[i] = mod_sub(image[i], zero, n);
      std::sort(candidate.begin(), candidate.end(), std::greater<>());
      // For equal cardinality, bitmask order is lexicographic order on descending members.
      if (best.empty() || candidate < best) best = candidate;
    }
  }
  return CyclicSet::from_residues(n, best);
}

std::vector<Residue> deficiency(const CyclicSet& a) {
  std::vector<Residue> out;
  for (Residue r = 0; r < a.modulus(); ++r) {
    if (!a.contains(r)) out.push_back(r);
  }
  return out;
}

}  // namespace steinhaus
