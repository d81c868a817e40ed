#include "steinhaus/haight.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <set>
#include <thread>

#include "steinhaus/error.hpp"
#include "steinhaus/sumset.hpp"

namespace steinhaus {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

Xorshift64Star::Xorshift64Star(std::uint64_t seed) noexcept : state_(splitmix64(seed)) {
  if (state_ == 0) state_ = 0x9E3779B97F4A7C15ull;
}

std::uint64_t Xorshift64Star::next() noexcept {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1Dull;
}

std::uint64_t Xorshift64Star::below(std::uint64_t bound) noexcept {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
}

WitnessCheck verify_witness(const HaightWitness& w) {
  if (w.k == 0) return {false, "k must be positive"};
  if (w.set.empty()) return {false, "empty set"};
  if (w.certificate >= w.modulus()) return {false, "certificate outside Z_n"};
  if (!sumset(w.set, negate(w.set)).full()) return {false, "difference set A-A is not full"};
  if (iterated_sumset(w.set, w.k).contains(w.certificate)) return {false, "certificate present in kA"};
  return {true, {}};
}

std::optional<HaightWitness> make_witness(std::uint32_t k, const CyclicSet& a) {
  if (k == 0 || a.empty()) return std::nullopt;
  if (!sumset(a, negate(a)).full()) return std::nullopt;
  CyclicSet canon = canonical_form(a);
  const CyclicSet sums = iterated_sumset(canon, k);
  if (sums.full()) return std::nullopt;
  const auto missing = deficiency(sums);
  return HaightWitness{k, std::move(canon), missing.front()};
}

namespace {

using WitnessSet = std::set<CyclicSet>;

std::vector<HaightWitness> to_witnesses(std::uint32_t k, const WitnessSet& sets) {
  std::vector<HaightWitness> out;
  out.reserve(sets.size());
  for (const CyclicSet& s : sets) {
    auto w = make_witness(k, s);
    if (!w || !verify_witness(*w).ok) throw Error("internal: recorded set failed witness verification");
    out.push_back(std::move(*w));
  }
  return out;
}

// Runs job(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) job(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Depth-first over sets containing {0, 1} in increasing element order.
// Any k-witness has 1 in A - A, so some translate contains {0, 1}; kA only
// grows along a branch, so a full kA closes the whole subtree.
class ModulusSearch {
 public:
  ModulusSearch(std::uint32_t k, std::uint32_t n, std::optional<std::uint32_t> max_size)
      : k_(k), n_(n), max_size_(max_size) {}

  WitnessSet run() {
    CyclicSet a(n_);
    a.insert(0);
    if (n_ == 1) {
      visit(a, 1);
      return found_;
    }
    a.insert(1);
    dfs(a, 2, 2);
    return found_;
  }

 private:
  // Returns false when the branch can be pruned.
  bool visit(const CyclicSet& a, std::size_t size) {
    if (iterated_sumset(a, k_).full()) return false;
    if (difference_size_feasible(size, n_) && sumset(a, negate(a)).full()) found_.insert(canonical_form(a));
    return true;
  }

  void dfs(CyclicSet& a, Residue next, std::size_t size) {
    if (max_size_ && size > *max_size_) return;
    if (!visit(a, size)) return;
    if (max_size_ && size == *max_size_) return;
    for (Residue x = next; x < n_; ++x) {
      a.insert(x);
      dfs(a, x + 1, size + 1);
      a.erase(x);
    }
  }

  std::uint32_t k_;
  std::uint32_t n_;
  std::optional<std::uint32_t> max_size_;
  WitnessSet found_;
};

struct Score {
  std::size_t difference_deficiency;
  std::size_t sum_deficiency;

  bool witness() const noexcept { return difference_deficiency == 0 && sum_deficiency > 0; }
  // Smaller is better: fix A - A first, then widen the gap in kA.
  bool not_worse_than(const Score& o) const noexcept {
    if (difference_deficiency != o.difference_deficiency) return difference_deficiency < o.difference_deficiency;
    return sum_deficiency >= o.sum_deficiency;
  }
  bool better_than(const Score& o) const noexcept {
    if (difference_deficiency != o.difference_deficiency) return difference_deficiency < o.difference_deficiency;
    return sum_deficiency > o.sum_deficiency;
  }
};

Score score(const CyclicSet& a, std::uint32_t k) {
  const std::uint32_t n = a.modulus();
  return Score{n - sumset(a, negate(a)).size(), n - iterated_sumset(a, k).size()};
}

WitnessSet sweep_modulus(std::uint32_t k, std::uint32_t n, std::optional<std::uint32_t> max_size) {
  WitnessSet found;
  if (n == 1) return found;
  const std::uint64_t free_bits = n - 2;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_bits); ++mask) {
    CyclicSet a(n);
    a.insert(0);
    a.insert(1);
    for (std::uint32_t b = 0; b < free_bits; ++b) {
      if ((mask >> b) & 1u) a.insert(b + 2);
    }
    if (max_size && a.size() > *max_size) continue;
    if (score(a, k).witness()) found.insert(canonical_form(a));
  }
  return found;
}

WitnessSet climb_modulus(std::uint32_t k, std::uint32_t n, std::uint64_t budget, std::uint64_t seed,
                         std::optional<std::uint32_t> max_size) {
  WitnessSet found;
  Xorshift64Star rng(seed ^ splitmix64(n));
  const std::uint64_t stall_limit = 4ull * n;
  // Start near the |A| ~ sqrt(n) scale where A - A can first become full.
  std::uint64_t density_permille = 2000;
  {
    std::uint64_t root = 1;
    while (root * root < n) ++root;
    density_permille = std::min<std::uint64_t>(500, 2000 / root);
  }

  std::uint64_t evals = 0;
  while (evals < budget) {
    CyclicSet a(n);
    a.insert(0);
    a.insert(1);
    for (Residue r = 2; r < n; ++r) {
      if (rng.below(1000) < density_permille) a.insert(r);
    }
    while (max_size && a.size() > *max_size) {
      const auto members = a.residues();
      a.erase(members[2 + rng.below(members.size() - 2)]);
    }
    Score current = score(a, k);
    ++evals;
    std::uint64_t stall = 0;
    while (true) {
      if (current.witness()) {
        found.insert(canonical_form(a));
        break;
      }
      if (evals >= budget || stall >= stall_limit) break;
      const Residue flip = static_cast<Residue>(2 + rng.below(n - 2));
      a.toggle(flip);
      if (max_size && a.size() > *max_size) {
        a.toggle(flip);
        ++stall;
        continue;
      }
      const Score next = score(a, k);
      ++evals;
      if (next.not_worse_than(current)) {
        stall = next.better_than(current) ? 0 : stall + 1;
        current = next;
      } else {
        a.toggle(flip);
        ++stall;
      }
    }
  }
  return found;
}

void check_range(const SearchConfig& cfg) {
  if (cfg.k == 0) throw Error("search needs k >= 1");
  if (cfg.n_min == 0 || cfg.n_min > cfg.n_max) throw Error("invalid modulus range");
}

}  // namespace

std::vector<HaightWitness> exhaustive_search(const SearchConfig& cfg) {
  check_range(cfg);
  if (cfg.n_max > cfg.exhaustive_cap) {
    throw Error("modulus range exceeds the exhaustive cap of " + std::to_string(cfg.exhaustive_cap));
  }
  const std::size_t count = cfg.n_max - cfg.n_min + 1;
  std::vector<WitnessSet> per_modulus(count);
  parallel_for(count, cfg.threads, [&](std::size_t i) {
    per_modulus[i] = ModulusSearch(cfg.k, cfg.n_min + static_cast<std::uint32_t>(i), cfg.max_set_size).run();
  });
  std::vector<HaightWitness> out;
  for (const auto& found : per_modulus) {
    auto ws = to_witnesses(cfg.k, found);
    out.insert(out.end(), ws.begin(), ws.end());
  }
  return out;
}

std::optional<HaightWitness> minimal_modulus(std::uint32_t k, std::uint32_t cap, unsigned threads) {
  if (k == 0) throw Error("search needs k >= 1");
  SearchConfig cfg;
  if (cap > cfg.exhaustive_cap) throw Error("cap exceeds the exhaustive limit of " + std::to_string(cfg.exhaustive_cap));
  threads = std::max(1u, threads);
  for (std::uint32_t lo = 1; lo <= cap; lo += threads) {
    const std::uint32_t hi = std::min(cap, lo + threads - 1);
    std::vector<WitnessSet> batch(hi - lo + 1);
    parallel_for(batch.size(), threads, [&](std::size_t i) {
      batch[i] = ModulusSearch(k, lo + static_cast<std::uint32_t>(i), std::nullopt).run();
    });
    for (const auto& found : batch) {
      if (!found.empty()) return to_witnesses(k, found).front();
    }
  }
  return std::nullopt;
}

std::vector<HaightWitness> stochastic_search(const SearchConfig& cfg) {
  check_range(cfg);
  const std::size_t count = cfg.n_max - cfg.n_min + 1;
  std::vector<WitnessSet> per_modulus(count);
  parallel_for(count, cfg.threads, [&](std::size_t i) {
    const std::uint32_t n = cfg.n_min + static_cast<std::uint32_t>(i);
    const std::uint64_t share = cfg.budget / count + (i < cfg.budget % count ? 1 : 0);
    if (share == 0) return;
    if (n <= 2 || (n - 2 < 63 && (std::uint64_t{1} << (n - 2)) <= share)) {
      per_modulus[i] = sweep_modulus(cfg.k, n, cfg.max_set_size);
    } else {
      per_modulus[i] = climb_modulus(cfg.k, n, share, cfg.seed, cfg.max_set_size);
    }
  });
  std::vector<HaightWitness> out;
  for (const auto& found : per_modulus) {
    auto ws = to_witnesses(cfg.k, found);
    out.insert(out.end(), ws.begin(), ws.end());
  }
  return out;
}

}  // namespace steinhaus
