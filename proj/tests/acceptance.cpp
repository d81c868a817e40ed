// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "steinhaus/cyclic_set.hpp"
#include "steinhaus/haight.hpp"
#include "steinhaus/json_io.hpp"
#include "steinhaus/steinhaus.hpp"
#include "steinhaus/sumset.hpp"
#include "steinhaus/text_format.hpp"
#include "steinhaus/thick_lemma.hpp"
#include "steinhaus/witness_store.hpp"
#include "test_support.hpp"

using namespace steinhaus;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

CyclicSet S(std::uint32_t n, std::initializer_list<Residue> r) { return CyclicSet::from_residues(n, r); }

std::uint32_t pick(std::mt19937_64& rng, std::uint32_t lo, std::uint32_t hi) {
  return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
}

Outcome ac1() {
  Outcome o;
  for (std::uint32_t n = 2; n <= 50; ++n) {
    const auto spec = example_family_c2n1(n);
    if (!sym_verdict(spec, n).holds) o.fail("sym_verdict fails at m=n for n=" + std::to_string(n));
    if (pm_verdict(spec, n - 1).verdict.holds) o.fail("pm_verdict holds at m=n-1 for n=" + std::to_string(n));
  }
  return o;
}

Outcome ac2() {
  Outcome o;
  SearchConfig cfg;
  cfg.k = 2;
  cfg.threads = worker_count();
  cfg.n_min = cfg.n_max = 7;
  const auto seven = exhaustive_search(cfg);
  const bool found7 = std::any_of(seven.begin(), seven.end(), [](const HaightWitness& w) {
    return w.modulus() == 7 && verify_witness(w).ok;
  });
  if (!found7) o.fail("no k=2 witness at n=7");

  cfg.n_min = 1;
  cfg.n_max = 6;
  const auto small = exhaustive_search(cfg);
  if (!small.empty()) {
    const auto& w = small.front();
    o.fail("expected no k=2 witness for n<=6, found n=" + std::to_string(w.modulus()) + " " + format_set(w.set) +
           " cert=" + std::to_string(w.certificate) + " (" + std::to_string(small.size()) + " class(es))");
  }

  const auto report = verify_haight_sequence({HaightWitness{1, S(3, {0, 1}), 2}, HaightWitness{2, S(7, {0, 1, 3}), 5}});
  if (!report.pm2.verdict.holds || !report.pm2.sign_class || *report.pm2.sign_class != SignClass{1, 1})
    o.fail("pm_verdict(2) does not hold via class (1,1)");
  if (!report.class_11_holds) o.fail("class (1,1) not full on every entry");
  if (report.plus_power.size() != 2 || !report.all_plus_fail) o.fail("(+1)^m verdicts do not all fail for m<=2");
  for (const auto& v : report.plus_power) {
    if (v.holds) o.fail("a (+1)^m verdict holds");
  }
  return o;
}

Outcome ac3() {
  Outcome o;
  std::mt19937_64 rng(3);
  const int instances = 500;
  for (int i = 0; i < instances; ++i) {
    const auto n = pick(rng, 1, 64);
    const auto a = oracle::random_set(n, rng);
    const auto b = oracle::random_set(n, rng);
    if (oracle::members(sumset(a, b)) != oracle::naive_sumset(oracle::members(a), oracle::members(b), n))
      o.fail("sumset mismatch at n=" + std::to_string(n));
  }
  for (int i = 0; i < instances; ++i) {
    const auto n = pick(rng, 1, 64);
    const auto k = pick(rng, 1, 4);
    const auto a = oracle::random_set(n, rng);
    if (oracle::members(iterated_sumset(a, k)) != oracle::tuple_sums(oracle::members(a), k, n))
      o.fail("iterated_sumset mismatch at n=" + std::to_string(n));
  }
  for (int i = 0; i < instances; ++i) {
    const auto n = pick(rng, 1, 64);
    const auto m = pick(rng, 1, 4);
    const auto a = oracle::random_set(n, rng);
    std::vector<int> signs(m);
    for (auto& s : signs) s = (rng() & 1u) ? 1 : -1;
    if (oracle::members(signed_product(a, SignVector(signs))) != oracle::signed_sums(oracle::members(a), signs, n))
      o.fail("signed_product mismatch at n=" + std::to_string(n));
  }
  for (int i = 0; i < instances; ++i) {
    const auto n = pick(rng, 1, 64);
    const auto m = pick(rng, 1, 4);
    const auto a = oracle::random_set(n, rng);
    auto both = oracle::members(a);
    const auto neg = oracle::naive_negate(both, n);
    both.insert(both.end(), neg.begin(), neg.end());
    std::sort(both.begin(), both.end());
    both.erase(std::unique(both.begin(), both.end()), both.end());
    if (oracle::members(pm_product(a, m)) != oracle::tuple_sums(both, m, n))
      o.fail("pm_product mismatch at n=" + std::to_string(n));
  }
  return o;
}

Outcome ac4() {
  Outcome o;
  std::mt19937_64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    const auto n = pick(rng, 1, 4096);
    const auto a = oracle::random_set(n, rng);
    const auto b = oracle::random_set(n, rng);
    if (kernels::shift_or(a, b) != kernels::convolution(a, b))
      o.fail("kernels disagree at n=" + std::to_string(n));
  }
  return o;
}

Outcome ac5() {
  Outcome o;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto n = pick(rng, 1, 15);
    const auto m = pick(rng, 1, 4);
    const auto spec = SeqSpec::constant(oracle::random_symmetric_set(n, rng));
    if (sym_verdict(spec, m).holds != pm_verdict(spec, m).verdict.holds)
      o.fail("sym/pm disagree for " + format_seq_spec(spec) + " m=" + std::to_string(m));
  }
  return o;
}

Outcome ac6() {
  Outcome o;
  const struct {
    std::uint64_t m;
    std::uint32_t xi;
    int Xi;
  } expected[] = {{1, 2, 18}, {2, 3, 259}, {3, 3, 259}};
  for (const auto& e : expected) {
    const std::string tag = "m=" + std::to_string(e.m);
    const auto v = xi_sequence(e.m);
    if (v.xi != e.xi || v.Xi != BigInt(e.Xi)) o.fail(tag + ": wrong (xi, Xi)");
    if (!tail_certified(e.m, e.xi)) o.fail(tag + ": tail check fails at xi");
    if (e.xi > 1 && tail_certified(e.m, e.xi - 1)) o.fail(tag + ": tail check passes at xi-1");
    // Direct evaluation of 2^(2^x) - x > m^2 (2^(2^(x-1)) + x) without xi_excess.
    const auto holds_at = [&](std::uint32_t x) {
      const BigInt lhs = tower_by_squaring(x) - x;
      const BigInt rhs = BigInt(e.m * e.m) * (tower_by_squaring(x - 1) + x);
      return lhs > rhs;
    };
    if (!holds_at(e.xi)) o.fail(tag + ": inequality fails at xi");
    if (e.xi > 1 && holds_at(e.xi - 1)) o.fail(tag + ": inequality holds at xi-1");
    if ((xi_excess(e.m, e.xi) > 0) != holds_at(e.xi)) o.fail(tag + ": xi_excess disagrees with direct evaluation");
    if (tower_by_squaring(e.xi) + e.xi != v.Xi) o.fail(tag + ": Xi is not 2^(2^xi) + xi");
  }
  return o;
}

// Families of up to three pairwise disjoint non-empty subsets of {1..4},
// each family listed once with sets in increasing mask order.
std::vector<IndexSets> disjoint_families() {
  std::vector<IndexSets> out;
  const auto to_set = [](unsigned mask) {
    std::vector<std::uint32_t> s;
    for (std::uint32_t a = 1; a <= 4; ++a) {
      if (mask & (1u << (a - 1))) s.push_back(a);
    }
    return s;
  };
  std::function<void(unsigned, unsigned, IndexSets&)> grow = [&](unsigned min_mask, unsigned used, IndexSets& cur) {
    if (!cur.empty()) out.push_back(cur);
    if (cur.size() == 3) return;
    for (unsigned mask = min_mask; mask < 16; ++mask) {
      if (mask & used) continue;
      cur.push_back(to_set(mask));
      grow(mask + 1, used | mask, cur);
      cur.pop_back();
    }
  };
  IndexSets cur;
  grow(1, 0, cur);
  return out;
}

Outcome ac7() {
  Outcome o;
  const auto families = disjoint_families();
  std::size_t checks = 0;
  std::uint64_t tuples = 0;
  for (const auto& f : families) {
    const ThickFamilySpec spec(f, 4);
    for (std::uint64_t m = 1; m <= 3; ++m) {
      const auto r = independence_check(spec, m, kDefaultTupleCap, worker_count());
      ++checks;
      tuples += r.tuples_total;
      if (!r.passed) o.fail("independence fails for " + format_thick_spec(spec) + " m=" + std::to_string(m));
    }
  }
  const auto merged = ThickFamilySpec::overlapping(IndexSets{{1, 4}, {2, 4}}, 4);
  const auto r = independence_check(merged, 2, kDefaultTupleCap, worker_count());
  if (r.passed || !r.counterexample) {
    o.fail("merged control does not fail");
  } else {
    BigInt sum = 0;
    for (std::size_t i = 0; i < r.counterexample->points.size(); ++i) sum += r.counterexample->lambdas[i] * r.counterexample->points[i];
    if (sum != 0) o.fail("reported tuple is not a zero sum");
  }
  if (o.ok) o.detail = std::to_string(families.size()) + " families, " + std::to_string(checks) + " checks, " + std::to_string(tuples) + " tuples";
  return o;
}

std::string dump_witnesses(const std::vector<HaightWitness>& ws) {
  std::string out;
  for (const auto& w : ws) out += witness_to_json(w).dump() + "\n";
  return out;
}

std::size_t line_count(const std::filesystem::path& file) {
  std::ifstream in(file);
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  return lines;
}

Outcome ac8() {
  Outcome o;
  SearchConfig cfg;
  cfg.k = 2;
  cfg.n_min = 6;
  cfg.n_max = 24;
  cfg.mode = SearchMode::stochastic;
  cfg.budget = 200000;
  cfg.seed = 20240817;
  cfg.threads = worker_count();
  const auto first = dump_witnesses(stochastic_search(cfg));
  cfg.threads = 1;
  const auto second = dump_witnesses(stochastic_search(cfg));
  if (first != second) o.fail("stochastic_search output differs between runs");
  if (first.empty()) o.fail("stochastic_search found nothing");

  TempDir dir;
  WitnessStore store(dir.path());
  const auto record = [](std::uint32_t n, std::vector<Residue> set, Residue cert) {
    StoreRecord r;
    r.kind = RecordKind::haight;
    r.payload = Json{{"k", 2}, {"n", n}, {"set", set}, {"cert", cert}};
    r.created_at = 1700000000;
    return r;
  };
  const auto a = store.append(record(7, {0, 1, 3}, 5));
  const auto b = store.append(record(7, {0, 1, 3}, 5));
  // Image of {0,1,3} under x -> 3x, whose 2-fold sumset misses 1 instead of 5.
  const auto c = store.append(record(7, {0, 3, 2}, 1));
  const auto d = store.append(record(7, {2, 0, 3}, 1));
  if (!a.inserted || b.inserted || c.inserted || d.inserted) o.fail("append inserted a canonical duplicate");
  if (a.position != b.position || a.position != c.position) o.fail("duplicates resolve to different positions");
  if (store.size() != 1 || line_count(store.file()) != 1) o.fail("store holds more than one line");
  WitnessStore reopened(dir.path());
  if (reopened.append(record(7, {0, 3, 1}, 5)).inserted || reopened.size() != 1 || line_count(store.file()) != 1)
    o.fail("reopened store accepted a duplicate");
  return o;
}

Outcome ac9() {
  Outcome o;
  std::mt19937_64 rng(9);
  const int instances = 400;

  int absorption = 0;
  for (int i = 0; i < instances; ++i) {
    const auto n = pick(rng, 1, 200);
    const auto k = pick(rng, 1, 6);
    const auto a = oracle::random_set(n, rng, std::uniform_real_distribution<double>(0.0, 0.3)(rng));
    const auto ka = iterated_sumset(a, k);
    if (ka.full()) {
      ++absorption;
      if (!iterated_sumset(a, k + 1).full() || !sumset(ka, oracle::random_set(n, rng)).full())
        o.fail("absorption violated at n=" + std::to_string(n));
    }
  }
  // Force the hypothesis on a further batch of full k-fold sumsets.
  for (int i = 0; absorption < instances; ++i) {
    const auto n = pick(rng, 2, 200);
    auto a = oracle::random_set(n, rng, 0.5);
    a.insert(0);
    a.insert(1);
    const auto k = n;
    if (!iterated_sumset(a, k).full()) o.fail("kA not full despite 0,1 in A");
    if (!iterated_sumset(a, k + 1).full()) o.fail("absorption violated at n=" + std::to_string(n));
    ++absorption;
  }

  int cd = 0;
  while (cd < instances) {
    const auto p = pick(rng, 2, 251);
    if (!oracle::is_prime(p)) continue;
    const auto a = oracle::random_set(p, rng);
    const auto b = oracle::random_set(p, rng);
    const auto bound = std::min<std::size_t>(p, a.size() + b.size() - 1);
    if (sumset(a, b).size() < bound) o.fail("Cauchy-Davenport violated at p=" + std::to_string(p));
    ++cd;
  }

  // Witnesses from exhaustive search, sent through random affine maps.
  std::vector<HaightWitness> pool;
  for (std::uint32_t k = 2; k <= 4; ++k) {
    SearchConfig cfg;
    cfg.k = k;
    cfg.n_min = 1;
    cfg.n_max = 13;
    cfg.threads = worker_count();
    const auto found = exhaustive_search(cfg);
    pool.insert(pool.end(), found.begin(), found.end());
  }
  int closure = 0;
  if (pool.empty()) o.fail("no witnesses for downward closure");
  for (int i = 0; i < instances && !pool.empty(); ++i) {
    const auto& w = pool[rng() % pool.size()];
    const auto a = oracle::random_affine_image(w.set, rng);
    const auto n = a.modulus();
    if (!oracle::is_witness(oracle::members(a), w.k, n)) o.fail("affine image of a witness is not a witness");
    for (std::uint32_t m = 1; m <= w.k; ++m) {
      if (!make_witness(m, a) || !oracle::is_witness(oracle::members(a), m, n))
        o.fail("downward closure violated at n=" + std::to_string(n));
    }
    ++closure;
  }

  int affine = 0;
  for (int i = 0; i < instances; ++i) {
    const auto n = pick(rng, 1, 40);
    const auto a = oracle::random_set(n, rng);
    const auto b = oracle::random_affine_image(a, rng);
    const auto ca = canonical_form(a);
    if (ca != canonical_form(b)) o.fail("canonical form not affine invariant at n=" + std::to_string(n));
    if (canonical_form(ca) != ca) o.fail("canonical form not idempotent at n=" + std::to_string(n));
    if (n <= 12) {
      CyclicSet best = a;
      for (const auto& img : oracle::affine_orbit(oracle::members(a), n)) {
        const auto s = CyclicSet::from_residues(n, img);
        if (s < best) best = s;
      }
      if (best != ca) o.fail("canonical form is not the orbit minimum at n=" + std::to_string(n));
    }
    ++affine;
  }

  if (o.ok) {
    std::ostringstream d;
    d << "absorption=" << absorption << " cauchy_davenport=" << cd << " downward_closure=" << closure
      << " affine_invariance=" << affine;
    o.detail = d.str();
  }
  return o;
}

struct Criterion {
  const char* id;
  const char* title;
  double limit_seconds;  // 0: no time limit
  Outcome (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"AC1", "C_{2n+1} example: sym Holds at m=n, pm Fails at m=n-1, n=2..50", 1.0, ac1},
      {"AC2", "Haight kernel: k=2 witness at n=7, none for n<=6, sequence report", 5.0, ac2},
      {"AC3", "oracle equivalence of sumset, iterated, signed, pm (500 each)", 10.0, ac3},
      {"AC4", "shift-or vs convolution on 1000 random pairs, n<=4096", 30.0, ac4},
      {"AC5", "sym_verdict vs pm_verdict on 200 symmetric sets", 10.0, ac5},
      {"AC6", "xi values certified and directly evaluated", 1.0, ac6},
      {"AC7", "independence on disjoint families, merged control fails", 60.0, ac7},
      {"AC8", "stochastic determinism and store idempotence", 5.0, ac8},
      {"AC9", "property suite", 0.0, ac9},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "time limit %.0f s exceeded", c.limit_seconds);
      o.fail(buf);
    }
    if (!o.ok) ++failures;
    std::printf("[%s] %s %s (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.title, secs, o.detail.empty() ? "" : ": ",
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
