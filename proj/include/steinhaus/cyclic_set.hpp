#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace steinhaus {

using Residue = std::uint32_t;
using Word = std::uint64_t;

inline constexpr std::uint32_t kWordBits = 64;
inline constexpr std::uint32_t kDefaultModulusCap = 1u << 20;

/// A subset of the cyclic group Z_n stored as a membership bitmask,
/// bit r of the mask set iff residue r is a member.
///
/// Sets are ordered by the integer value of their bitmask (bit r has
/// weight 2^r). Canonical forms are minimal in this order.
class CyclicSet {
 public:
  /// Empty subset of Z_n. Throws Error if n == 0.
  explicit CyclicSet(std::uint32_t modulus);

  static CyclicSet full(std::uint32_t modulus);
  /// Throws Error if some residue is outside [0, n).
  static CyclicSet from_residues(std::uint32_t modulus, std::span<const Residue> residues);
  static CyclicSet from_residues(std::uint32_t modulus, std::initializer_list<Residue> residues);
  /// The image of the integer interval [lo, hi] in Z_n.
  static CyclicSet interval(std::uint32_t modulus, std::int64_t lo, std::int64_t hi);
  /// Builds a set from raw mask words; bits at or above n are cleared.
  static CyclicSet from_words(std::uint32_t modulus, std::vector<Word> words);

  std::uint32_t modulus() const noexcept { return modulus_; }
  std::span<const Word> words() const noexcept { return words_; }
  std::size_t word_count() const noexcept { return words_.size(); }

  bool contains(Residue r) const noexcept {
    return r < modulus_ && ((words_[r / kWordBits] >> (r % kWordBits)) & 1u) != 0;
  }
  void insert(Residue r);
  void erase(Residue r);
  void toggle(Residue r);

  std::size_t size() const noexcept;
  bool empty() const noexcept;
  bool full() const noexcept { return size() == modulus_; }

  /// Members in increasing order.
  std::vector<Residue> residues() const;
  std::optional<Residue> first() const noexcept;

  /// Calls f(r) for every member r in increasing order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        const int tz = __builtin_ctzll(bits);
        f(static_cast<Residue>(w * kWordBits + static_cast<std::size_t>(tz)));
        bits &= bits - 1;
      }
    }
  }

  CyclicSet& operator|=(const CyclicSet& other);

  friend bool operator==(const CyclicSet&, const CyclicSet&) = default;
  /// Orders first by modulus, then by bitmask integer value.
  friend std::strong_ordering operator<=>(const CyclicSet& a, const CyclicSet& b);

 private:
  void clear_padding() noexcept;

  std::uint32_t modulus_;
  std::vector<Word> words_;
};

/// The map x -> unit * x + shift on Z_n; unit must be coprime to n.
class AffineMap {
 public:
  /// Throws Error unless gcd(unit, n) == 1 and unit, shift < n.
  AffineMap(Residue unit, Residue shift, std::uint32_t modulus);

  Residue unit() const noexcept { return unit_; }
  Residue shift() const noexcept { return shift_; }
  std::uint32_t modulus() const noexcept { return modulus_; }

  Residue operator()(Residue x) const noexcept {
    return static_cast<Residue>((static_cast<std::uint64_t>(unit_) * x + shift_) % modulus_);
  }

 private:
  Residue unit_;
  Residue shift_;
  std::uint32_t modulus_;
};

/// Residues u in [0, n) with gcd(u, n) == 1, increasing.
std::vector<Residue> units(std::uint32_t modulus);

CyclicSet negate(const CyclicSet& a);
CyclicSet translate(const CyclicSet& a, Residue shift);
CyclicSet set_union(const CyclicSet& a, const CyclicSet& b);
/// Throws Error on modulus mismatch.
CyclicSet affine_apply(const CyclicSet& a, const AffineMap& f);

/// Smallest c with A = 2c - A, or nullopt. Throws Error on an empty set.
std::optional<Residue> symmetry_center(const CyclicSet& a);

/// Least set (in bitmask order) over the orbit of A under all affine maps.
///
/// Every non-empty orbit minimum contains 0, so only the translates that
/// move some member of u*A to 0 are compared; the cost is
/// O(phi(n) * |A|^2 log |A|) rather than n * phi(n) full set maps.
CyclicSet canonical_form(const CyclicSet& a);

inline bool is_full(const CyclicSet& a) noexcept { return a.full(); }
/// Sorted complement of A in Z_n.
std::vector<Residue> deficiency(const CyclicSet& a);

}  // namespace steinhaus
