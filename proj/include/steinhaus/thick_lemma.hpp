#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace steinhaus {

using BigInt = boost::multiprecision::cpp_int;

/// 2^(2^a) by a single shift.
BigInt tower(std::uint32_t a);
/// 2^(2^a) by a squaring chain 2, 4, 16, 256, ...; independent of tower().
BigInt tower_by_squaring(std::uint32_t a);

/// f_m(x) = 2^(2^x) - x - m^2 (2^(2^(x-1)) + x), x >= 1.
BigInt xi_excess(std::uint64_t m, std::uint32_t x);

/// f_m(x) > 0 and y = 2^(2^(x-1)) >= m^2 + 2.
///
/// With y the inequality reads y^2 - m^2 y > (m^2 + 1) x. Going from x to
/// x + 1 replaces y by y^2, so the left side becomes y^2 (y^2 - m^2), at
/// least y >= 2 times the old left side, while the right side grows by only
/// m^2 + 1 <= y. Hence a certified x stays valid for every larger x.
bool tail_certified(std::uint64_t m, std::uint32_t x);

struct XiValue {
  std::uint32_t xi = 0;
  BigInt Xi;  // 2^(2^xi) + xi
};

/// Least x >= 1 passing tail_certified. Throws Error if m == 0.
XiValue xi_sequence(std::uint64_t m);

using IndexSets = std::vector<std::vector<std::uint32_t>>;

struct BigInterval {
  BigInt lo;
  BigInt hi;
  std::uint32_t source = 0;  // the index a with lo = 2^(2^a) - a, hi = 2^(2^a) + a
};

/// Index sets A (finite parts of pairwise disjoint subsets of N) and the
/// largest index expanded into intervals.
struct ThickFamilySpec {
  std::vector<std::vector<std::uint32_t>> index_sets;
  std::uint32_t a_max = 5;

  /// Sorts each set and enforces: non-empty, pairwise disjoint, 1 <= a <= a_max.
  ThickFamilySpec(std::vector<std::vector<std::uint32_t>> sets, std::uint32_t a_max = 5);
  /// Skips the disjointness check only; used for negative controls.
  static ThickFamilySpec overlapping(std::vector<std::vector<std::uint32_t>> sets, std::uint32_t a_max = 5);

 private:
  ThickFamilySpec() = default;
};

BigInterval thick_interval(std::uint32_t a);
/// Intervals of T_A for every A in the family, increasing within each A.
std::vector<std::vector<BigInterval>> thick_intervals(const ThickFamilySpec& spec);

/// Least listed a with 2a + 1 >= run_length; nullopt means a_max is too small.
std::optional<std::uint32_t> contains_run(std::span<const std::uint32_t> index_set, std::uint64_t run_length);

struct ZeroSum {
  std::vector<std::size_t> sets;     // positions in spec.index_sets, increasing
  std::vector<std::int64_t> lambdas;
  std::vector<BigInt> points;
};

struct IndependenceResult {
  bool passed = true;
  std::uint64_t tuples_checked = 0;  // tuples inside the quantifier
  std::uint64_t tuples_total = 0;    // including ones excluded by [-Xi_m, Xi_m]
  BigInt Xi;
  std::optional<ZeroSum> counterexample;
};

inline constexpr std::uint64_t kDefaultTupleCap = 10'000'000;

/// Exhaustive check that lambda_1 x_1 + ... + lambda_n x_n != 0 for all
/// 1 <= n <= m distinct sets, lambda_i in [-m, m] \ {0} and points x_i of
/// the expanded intervals, not all inside [-Xi_m, Xi_m]. Throws
/// BudgetExceeded when the tuple count exceeds tuple_cap.
IndependenceResult independence_check(const ThickFamilySpec& spec, std::uint64_t m,
                                      std::uint64_t tuple_cap = kDefaultTupleCap, unsigned threads = 1);

}  // namespace steinhaus
