#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steinhaus/cyclic_set.hpp"

namespace steinhaus {

/// A set A in Z_n with A - A = Z_n and a residue missing from kA.
struct HaightWitness {
  std::uint32_t k = 0;
  CyclicSet set{1};
  Residue certificate = 0;

  std::uint32_t modulus() const noexcept { return set.modulus(); }
  friend bool operator==(const HaightWitness&, const HaightWitness&) = default;
};

struct WitnessCheck {
  bool ok = false;
  std::string reason;  // empty when ok
};

/// Recomputes A - A and kA from scratch.
WitnessCheck verify_witness(const HaightWitness& w);

/// Canonical representative of the witness class with the least missing
/// residue of kA as certificate; nullopt if A is not a k-witness.
std::optional<HaightWitness> make_witness(std::uint32_t k, const CyclicSet& a);

enum class SearchMode { exhaustive, stochastic };

struct SearchConfig {
  std::uint32_t k = 2;
  std::uint32_t n_min = 1;
  std::uint32_t n_max = 1;
  SearchMode mode = SearchMode::exhaustive;
  // Candidate evaluations across the whole range; stochastic mode only.
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  std::optional<std::uint32_t> max_set_size;
  std::uint32_t exhaustive_cap = 40;
  unsigned threads = 1;
};

/// Every affine class of k-witnesses for each n in range, once each, sorted
/// by (n, canonical set). Throws Error if the range exceeds exhaustive_cap.
std::vector<HaightWitness> exhaustive_search(const SearchConfig& cfg);

/// Smallest n <= cap with a k-witness, together with its least canonical witness.
std::optional<HaightWitness> minimal_modulus(std::uint32_t k, std::uint32_t cap, unsigned threads = 1);

/// Seeded hill climbing; output is canonical, verified, sorted and
/// reproducible from (seed, budget, range). Small moduli whose full search
/// space fits in their budget share are swept exhaustively.
std::vector<HaightWitness> stochastic_search(const SearchConfig& cfg);

/// Necessary condition for A - A = Z_n: |A|(|A| - 1) + 1 >= n.
constexpr bool difference_size_feasible(std::size_t size, std::uint32_t n) noexcept {
  return size * (size == 0 ? 0 : size - 1) + 1 >= n;
}

/// xorshift64* (Vigna): shifts 12, 25, 27 and multiplier 0x2545F4914F6CDD1D,
/// seeded through one splitmix64 step so that seed 0 is usable.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed) noexcept;
  std::uint64_t next() noexcept;
  /// Uniform in [0, bound) by 128-bit multiply-high; bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::uint64_t state_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace steinhaus
