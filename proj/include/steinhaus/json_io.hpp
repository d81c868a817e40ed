#pragma once

#include <json.hpp>

#include "steinhaus/haight.hpp"
#include "steinhaus/steinhaus.hpp"
#include "steinhaus/thick_lemma.hpp"

namespace steinhaus {

using Json = nlohmann::ordered_json;

/// {"k":..,"n":..,"set":[sorted residues],"cert":..}
Json witness_to_json(const HaightWitness& w);
/// Throws ParseError on missing fields or out-of-range residues.
HaightWitness witness_from_json(const Json& j);

/// {"outcome":"holds","k0":..} or {"outcome":"fails","witnesses":[..]}
Json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);
/// Verdict fields plus "class":[p,q] when the verdict holds.
Json pm_verdict_to_json(const PmVerdict& v);

/// {"m":..,"xi":..,"Xi":"decimal"}
Json xi_to_json(std::uint64_t m, const XiValue& v);

Json zero_sum_to_json(const ZeroSum& z);

}  // namespace steinhaus
