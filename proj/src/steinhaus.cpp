#include "steinhaus/steinhaus.hpp"

#include <algorithm>

#include "steinhaus/error.hpp"

namespace steinhaus {

SeqSpec::SeqSpec(std::vector<CyclicSet> prefix_sets, std::vector<CyclicSet> cycle_sets)
    : prefix(std::move(prefix_sets)), cycle(std::move(cycle_sets)) {
  if (cycle.empty()) throw Error("sequence spec needs a non-empty cycle");
  auto non_empty = [](const CyclicSet& s) { return !s.empty(); };
  if (!std::all_of(prefix.begin(), prefix.end(), non_empty) || !std::all_of(cycle.begin(), cycle.end(), non_empty)) {
    throw Error("sequence spec entries must be non-empty");
  }
}

const CyclicSet& SeqSpec::at(std::size_t k) const {
  if (k < prefix.size()) return prefix[k];
  return cycle[(k - prefix.size()) % cycle.size()];
}

namespace {

// Applies a fullness test to each distinct position [0, period_end()).
template <class Test>
Verdict evaluate(const SeqSpec& spec, Test&& is_full_at) {
  const std::size_t end = spec.period_end();
  std::vector<bool> pass(end);
  for (std::size_t k = 0; k < end; ++k) pass[k] = is_full_at(spec.at(k));

  std::vector<std::size_t> failing;
  for (std::size_t k = spec.prefix.size(); k < end; ++k) {
    if (!pass[k]) failing.push_back(k);
  }
  if (!failing.empty()) return Verdict::fails_at(std::move(failing));

  std::size_t k0 = spec.prefix.size();
  while (k0 > 0 && pass[k0 - 1]) --k0;
  return Verdict::holds_from(k0);
}

}  // namespace

Verdict class_verdict(const SeqSpec& spec, SignClass cls) {
  return evaluate(spec, [&](const CyclicSet& a) { return class_product(a, cls).full(); });
}

Verdict eps_verdict(const SeqSpec& spec, const SignVector& eps) {
  return class_verdict(spec, SignClass{eps.plus_count(), eps.minus_count()});
}

PmVerdict pm_verdict(const SeqSpec& spec, std::size_t m) {
  auto classes = sign_count_classes(m);
  std::sort(classes.begin(), classes.end());

  std::vector<std::size_t> failing;
  for (const SignClass& cls : classes) {
    Verdict v = class_verdict(spec, cls);
    if (v.holds) return PmVerdict{v, cls};
    failing.insert(failing.end(), v.witnesses.begin(), v.witnesses.end());
  }
  std::sort(failing.begin(), failing.end());
  failing.erase(std::unique(failing.begin(), failing.end()), failing.end());
  return PmVerdict{Verdict::fails_at(std::move(failing)), std::nullopt};
}

Verdict sym_verdict(const SeqSpec& spec, std::size_t m) {
  if (m == 0) throw Error("sym verdict needs m >= 1");
  for (std::size_t k = 0; k < spec.period_end(); ++k) {
    if (!symmetry_center(spec.at(k))) {
      throw VerificationError("entry " + std::to_string(k) + " is not symmetric");
    }
  }
  return evaluate(spec, [&](const CyclicSet& a) { return iterated_sumset(a, m).full(); });
}

SeqSpec example_family_c2n1(std::uint32_t n) {
  if (n < 2) throw Error("example family needs n >= 2");
  return SeqSpec::constant(CyclicSet::interval(2 * n + 1, -1, 1));
}

HaightSequenceReport verify_haight_sequence(const std::vector<HaightWitness>& witnesses) {
  if (witnesses.empty()) throw VerificationError("empty witness list");
  std::vector<CyclicSet> sets;
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    const HaightWitness& w = witnesses[i];
    if (w.k != i + 1) {
      throw VerificationError("witness " + std::to_string(i) + " has k=" + std::to_string(w.k) + ", expected " +
                              std::to_string(i + 1));
    }
    if (auto check = verify_witness(w); !check.ok) {
      throw VerificationError("witness " + std::to_string(i) + " (k=" + std::to_string(w.k) + "): " + check.reason);
    }
    sets.push_back(w.set);
  }

  const SeqSpec spec({}, std::move(sets));
  HaightSequenceReport report;
  report.max_k = witnesses.size();
  report.pm2 = pm_verdict(spec, 2);
  report.class_11_holds = class_verdict(spec, SignClass{1, 1}).holds;
  report.all_plus_fail = true;
  for (std::size_t m = 1; m <= report.max_k; ++m) {
    report.plus_power.push_back(eps_verdict(spec, SignVector::all_plus(m)));
    report.all_plus_fail = report.all_plus_fail && !report.plus_power.back().holds;
  }
  return report;
}

}  // namespace steinhaus
