#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steinhaus/cyclic_set.hpp"
#include "steinhaus/haight.hpp"
#include "steinhaus/sumset.hpp"

namespace steinhaus {

/// An eventually periodic sequence of subsets A_0, A_1, ...: the prefix
/// is read once and the cycle repeats forever. The sequence encodes the
/// product set K = prod_k A_k inside prod_k Z_{n_k}.
struct SeqSpec {
  std::vector<CyclicSet> prefix;
  std::vector<CyclicSet> cycle;

  /// Throws Error unless the cycle is non-empty and every set is non-empty.
  SeqSpec(std::vector<CyclicSet> prefix, std::vector<CyclicSet> cycle);
  static SeqSpec constant(CyclicSet a) { return SeqSpec({}, {std::move(a)}); }

  const CyclicSet& at(std::size_t k) const;
  /// len(prefix) + len(cycle): positions below this cover every distinct entry.
  std::size_t period_end() const noexcept { return prefix.size() + cycle.size(); }
};

/// Holds(k0): the test set is full at every k >= k0.
/// Fails(witnesses): absolute positions in [len(prefix), period_end())
/// whose cycle entry is not full, so the failure recurs forever.
struct Verdict {
  bool holds = false;
  std::size_t k0 = 0;
  std::vector<std::size_t> witnesses;

  static Verdict holds_from(std::size_t k0) { return Verdict{true, k0, {}}; }
  static Verdict fails_at(std::vector<std::size_t> positions) { return Verdict{false, 0, std::move(positions)}; }

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct PmVerdict {
  Verdict verdict;
  std::optional<SignClass> sign_class;  // set iff the verdict holds
};

/// Decides whether e_1 A_k + ... + e_m A_k = Z_{n_k} for all large k.
Verdict eps_verdict(const SeqSpec& spec, const SignVector& eps);

/// Decides the +-m property: some class (p, q) with p + q = m works on
/// every cycle entry. Classes are tried in lexicographic (p, q) order,
/// i.e. (0, m) first, and the first success is reported.
PmVerdict pm_verdict(const SeqSpec& spec, std::size_t m);

/// Verdict for a single sign class.
Verdict class_verdict(const SeqSpec& spec, SignClass cls);

/// For symmetric entries: holds iff m A_k is full along the cycle.
/// Throws VerificationError naming the first entry without a symmetry center.
Verdict sym_verdict(const SeqSpec& spec, std::size_t m);

/// Constant sequence of {-1, 0, 1} in Z_{2n+1}. Throws Error if n < 2.
SeqSpec example_family_c2n1(std::uint32_t n);

struct HaightSequenceReport {
  std::size_t max_k = 0;
  PmVerdict pm2;                   // pm_verdict(spec, 2)
  bool class_11_holds = false;     // every A_k - A_k is full
  std::vector<Verdict> plus_power; // eps_verdict with (+1)^m, m = 1..max_k
  bool all_plus_fail = false;
};

/// Checks a witness list for k = 1..K and the Steinhaus consequences of
/// using it as the cycle of a sequence spec. Throws VerificationError on
/// an empty list, an out-of-order k or a witness that does not verify.
HaightSequenceReport verify_haight_sequence(const std::vector<HaightWitness>& witnesses);

}  // namespace steinhaus
