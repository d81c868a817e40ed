#include "steinhaus/json_io.hpp"

#include "steinhaus/error.hpp"

namespace steinhaus {

Json witness_to_json(const HaightWitness& w) {
  Json j;
  j["k"] = w.k;
  j["n"] = w.modulus();
  j["set"] = w.set.residues();
  j["cert"] = w.certificate;
  return j;
}

HaightWitness witness_from_json(const Json& j) {
  try {
    const auto k = j.at("k").get<std::uint32_t>();
    const auto n = j.at("n").get<std::uint32_t>();
    const auto residues = j.at("set").get<std::vector<Residue>>();
    const auto cert = j.at("cert").get<Residue>();
    if (n == 0 || n > kDefaultModulusCap) throw ParseError("witness modulus out of range");
    return HaightWitness{k, CyclicSet::from_residues(n, residues), cert};
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed witness: ") + e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("malformed witness: ") + e.what());
  }
}

Json verdict_to_json(const Verdict& v) {
  Json j;
  if (v.holds) {
    j["outcome"] = "holds";
    j["k0"] = v.k0;
  } else {
    j["outcome"] = "fails";
    j["witnesses"] = v.witnesses;
  }
  return j;
}

Verdict verdict_from_json(const Json& j) {
  try {
    const auto outcome = j.at("outcome").get<std::string>();
    if (outcome == "holds") return Verdict::holds_from(j.at("k0").get<std::size_t>());
    if (outcome == "fails") return Verdict::fails_at(j.at("witnesses").get<std::vector<std::size_t>>());
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed verdict: ") + e.what());
  }
  throw ParseError("verdict outcome must be holds or fails");
}

Json pm_verdict_to_json(const PmVerdict& v) {
  Json j = verdict_to_json(v.verdict);
  if (v.sign_class) j["class"] = {v.sign_class->plus, v.sign_class->minus};
  return j;
}

Json xi_to_json(std::uint64_t m, const XiValue& v) {
  Json j;
  j["m"] = m;
  j["xi"] = v.xi;
  j["Xi"] = v.Xi.str();
  return j;
}

Json zero_sum_to_json(const ZeroSum& z) {
  Json j;
  j["sets"] = z.sets;
  j["lambdas"] = z.lambdas;
  Json pts = Json::array();
  for (const auto& p : z.points) pts.push_back(p.str());
  j["points"] = pts;
  return j;
}

}  // namespace steinhaus
