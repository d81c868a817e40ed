#include "steinhaus/thick_lemma.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "steinhaus/error.hpp"

namespace steinhaus {

BigInt tower(std::uint32_t a) {
  if (a > 24) throw Error("tower exponent too large");
  return BigInt(1) << (std::size_t{1} << a);
}

BigInt tower_by_squaring(std::uint32_t a) {
  BigInt v = 2;
  for (std::uint32_t i = 0; i < a; ++i) v *= v;
  return v;
}

BigInt xi_excess(std::uint64_t m, std::uint32_t x) {
  if (x == 0) throw Error("xi inequality is defined for x >= 1");
  const BigInt m2 = BigInt(m) * m;
  return tower(x) - x - m2 * (tower(x - 1) + x);
}

bool tail_certified(std::uint64_t m, std::uint32_t x) {
  const BigInt m2 = BigInt(m) * m;
  return xi_excess(m, x) > 0 && tower(x - 1) >= m2 + 2;
}

XiValue xi_sequence(std::uint64_t m) {
  if (m == 0) throw Error("xi sequence needs m >= 1");
  for (std::uint32_t x = 1;; ++x) {
    if (tail_certified(m, x)) return XiValue{x, tower(x) + x};
  }
}

ThickFamilySpec::ThickFamilySpec(std::vector<std::vector<std::uint32_t>> sets, std::uint32_t a_max_value) {
  *this = overlapping(std::move(sets), a_max_value);
  std::vector<std::uint32_t> all;
  for (const auto& s : index_sets) all.insert(all.end(), s.begin(), s.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) throw Error("index sets must be pairwise disjoint");
}

ThickFamilySpec ThickFamilySpec::overlapping(std::vector<std::vector<std::uint32_t>> sets, std::uint32_t a_max_value) {
  if (a_max_value == 0 || a_max_value > 24) throw Error("a_max must lie in [1, 24]");
  ThickFamilySpec spec;
  spec.a_max = a_max_value;
  for (auto& s : sets) {
    if (s.empty()) throw Error("index sets must be non-empty");
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw Error("repeated index within a set");
    if (s.front() < 1 || s.back() > a_max_value) throw Error("indices must lie in [1, a_max]");
  }
  spec.index_sets = std::move(sets);
  return spec;
}

BigInterval thick_interval(std::uint32_t a) {
  const BigInt centre = tower(a);
  return BigInterval{centre - a, centre + a, a};
}

std::vector<std::vector<BigInterval>> thick_intervals(const ThickFamilySpec& spec) {
  std::vector<std::vector<BigInterval>> out;
  for (const auto& s : spec.index_sets) {
    auto& row = out.emplace_back();
    for (std::uint32_t a : s) row.push_back(thick_interval(a));
  }
  return out;
}

std::optional<std::uint32_t> contains_run(std::span<const std::uint32_t> index_set, std::uint64_t run_length) {
  std::optional<std::uint32_t> best;
  for (std::uint32_t a : index_set) {
    if (2ull * a + 1 >= run_length && (!best || a < *best)) best = a;
  }
  return best;
}

namespace {

std::vector<std::vector<std::size_t>> combinations(std::size_t count, std::size_t choose) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> idx(choose);
  for (std::size_t i = 0; i < choose; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    std::size_t i = choose;
    while (i > 0 && idx[i - 1] == count - choose + i - 1) --i;
    if (i == 0) return out;
    ++idx[i - 1];
    for (std::size_t j = i; j < choose; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct JobResult {
  std::uint64_t checked = 0;
  std::optional<ZeroSum> counterexample;
};

// Exact over Int; the caller picks int64 only when m^2 * max point fits.
template <class Int>
JobResult check_combination(const std::vector<std::vector<Int>>& points, const std::vector<std::size_t>& combo,
                            std::int64_t m, const Int& xi_bound) {
  const std::size_t n = combo.size();
  std::vector<std::int64_t> lambda_values;
  for (std::int64_t l = -m; l <= m; ++l) {
    if (l != 0) lambda_values.push_back(l);
  }
  JobResult result;
  std::vector<std::size_t> pidx(n, 0);
  std::vector<std::size_t> lidx(n);
  while (true) {
    bool outside = false;
    for (std::size_t i = 0; i < n; ++i) outside = outside || points[combo[i]][pidx[i]] > xi_bound;
    if (outside) {
      std::fill(lidx.begin(), lidx.end(), 0);
      while (true) {
        Int sum = 0;
        for (std::size_t i = 0; i < n; ++i) sum += Int(lambda_values[lidx[i]]) * points[combo[i]][pidx[i]];
        ++result.checked;
        if (sum == 0) {
          ZeroSum z;
          z.sets = combo;
          for (std::size_t i = 0; i < n; ++i) {
            z.lambdas.push_back(lambda_values[lidx[i]]);
            z.points.push_back(BigInt(points[combo[i]][pidx[i]]));
          }
          result.counterexample = std::move(z);
          return result;
        }
        std::size_t i = 0;
        while (i < n && ++lidx[i] == lambda_values.size()) lidx[i++] = 0;
        if (i == n) break;
      }
    }
    std::size_t i = 0;
    while (i < n && ++pidx[i] == points[combo[i]].size()) pidx[i++] = 0;
    if (i == n) break;
  }
  return result;
}

template <class Int>
IndependenceResult run_check(const ThickFamilySpec& spec, std::uint64_t m, const BigInt& xi_bound,
                             const std::vector<std::vector<std::size_t>>& combos, unsigned threads) {
  std::vector<std::vector<Int>> points;
  for (const auto& s : spec.index_sets) {
    auto& row = points.emplace_back();
    for (std::uint32_t a : s) {
      const BigInterval iv = thick_interval(a);
      for (BigInt x = iv.lo; x <= iv.hi; ++x) row.push_back(static_cast<Int>(x));
    }
  }
  const Int bound = static_cast<Int>(xi_bound);

  std::vector<JobResult> results(combos.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < combos.size();) {
      results[i] = check_combination<Int>(points, combos[i], static_cast<std::int64_t>(m), bound);
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, combos.size()))));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  IndependenceResult out;
  for (auto& r : results) {
    out.tuples_checked += r.checked;
    if (r.counterexample && !out.counterexample) out.counterexample = std::move(r.counterexample);
  }
  out.passed = !out.counterexample;
  return out;
}

}  // namespace

IndependenceResult independence_check(const ThickFamilySpec& spec, std::uint64_t m, std::uint64_t tuple_cap,
                                      unsigned threads) {
  if (m == 0) throw Error("independence check needs m >= 1");
  if (m > 1'000'000) throw Error("lambda range too large");
  const XiValue xi = xi_sequence(m);
  const std::size_t sets = spec.index_sets.size();
  const std::size_t max_n = std::min<std::size_t>(m, sets);

  std::vector<std::uint64_t> sizes;
  for (const auto& s : spec.index_sets) {
    std::uint64_t c = 0;
    for (std::uint32_t a : s) c += 2ull * a + 1;
    sizes.push_back(c);
  }

  std::vector<std::vector<std::size_t>> combos;
  BigInt total = 0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (auto& combo : combinations(sets, n)) {
      BigInt count = 1;
      for (std::size_t i : combo) count *= sizes[i];
      for (std::size_t i = 0; i < n; ++i) count *= 2 * m;
      total += count;
      combos.push_back(std::move(combo));
    }
  }
  if (total > tuple_cap) {
    throw BudgetExceeded("independence check needs " + total.str() + " tuples, cap is " + std::to_string(tuple_cap));
  }

  BigInt max_point = 0;
  for (const auto& s : spec.index_sets) max_point = std::max(max_point, thick_interval(s.back()).hi);
  const bool fits_int64 = BigInt(m) * m * max_point < (BigInt(1) << 62);

  IndependenceResult out = fits_int64 ? run_check<std::int64_t>(spec, m, xi.Xi, combos, threads)
                                      : run_check<BigInt>(spec, m, xi.Xi, combos, threads);
  out.tuples_total = static_cast<std::uint64_t>(total);
  out.Xi = xi.Xi;
  return out;
}

}  // namespace steinhaus
