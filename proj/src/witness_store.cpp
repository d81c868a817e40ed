#include "steinhaus/witness_store.hpp"

#include <algorithm>
#include <fstream>

#include "steinhaus/error.hpp"
#include "steinhaus/text_format.hpp"

namespace steinhaus {

std::string to_string(RecordKind kind) {
  switch (kind) {
    case RecordKind::haight:
      return "haight";
    case RecordKind::verdict:
      return "verdict";
    case RecordKind::xi:
      return "xi";
  }
  return "unknown";
}

RecordKind record_kind_from_string(const std::string& name) {
  if (name == "haight") return RecordKind::haight;
  if (name == "verdict") return RecordKind::verdict;
  if (name == "xi") return RecordKind::xi;
  throw ParseError("unknown record kind '" + name + "'");
}

Json record_to_json(const StoreRecord& r) {
  Json j;
  j["kind"] = to_string(r.kind);
  j["payload"] = r.payload;
  j["created_at"] = r.created_at;
  j["producer"] = r.producer;
  return j;
}

StoreRecord record_from_json(const Json& j) {
  try {
    StoreRecord r;
    r.kind = record_kind_from_string(j.at("kind").get<std::string>());
    r.payload = j.at("payload");
    r.created_at = j.at("created_at").get<std::int64_t>();
    r.producer = j.at("producer");
    if (!r.payload.is_object()) throw ParseError("payload must be an object");
    return r;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed record: ") + e.what());
  }
}

namespace {

// Field order does not matter for content comparison.
bool same_content(const Json& a, const Json& b) {
  return nlohmann::json::parse(a.dump()) == nlohmann::json::parse(b.dump());
}

}  // namespace

Json verdict_payload(const std::string& query, const SeqSpec& spec, const std::string& arg) {
  Json verdict;
  std::string normalized_arg = arg;
  if (query == "eps") {
    const SignVector eps = parse_signs(arg);
    normalized_arg = format_signs(eps);
    verdict = verdict_to_json(eps_verdict(spec, eps));
  } else if (query == "pm") {
    const auto m = parse_unsigned(arg);
    normalized_arg = std::to_string(m);
    verdict = pm_verdict_to_json(pm_verdict(spec, m));
  } else if (query == "sym") {
    const auto m = parse_unsigned(arg);
    normalized_arg = std::to_string(m);
    verdict = verdict_to_json(sym_verdict(spec, m));
  } else {
    throw ParseError("unknown verdict query '" + query + "'");
  }
  Json j;
  j["query"] = query;
  j["spec"] = format_seq_spec(spec);
  j["arg"] = normalized_arg;
  j["verdict"] = verdict;
  return j;
}

Json canonical_payload(RecordKind kind, const Json& payload) {
  try {
    switch (kind) {
      case RecordKind::haight: {
        const HaightWitness w = witness_from_json(payload);
        if (auto check = verify_witness(w); !check.ok) throw VerificationError(check.reason);
        auto canon = make_witness(w.k, w.set);
        if (!canon) throw VerificationError("witness does not canonicalize");
        return witness_to_json(*canon);
      }
      case RecordKind::xi: {
        const auto m = payload.at("m").get<std::uint64_t>();
        const Json expected = xi_to_json(m, xi_sequence(m));
        if (!same_content(payload, expected)) throw VerificationError("xi value does not match recomputation");
        return expected;
      }
      case RecordKind::verdict: {
        const SeqSpec spec = parse_seq_spec(payload.at("spec").get<std::string>());
        Json expected = verdict_payload(payload.at("query").get<std::string>(), spec, payload.at("arg").get<std::string>());
        if (!same_content(payload.at("verdict"), expected.at("verdict"))) {
          throw VerificationError("verdict does not match recomputation");
        }
        return expected;
      }
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed payload: ") + e.what());
  }
  throw ParseError("unknown record kind");
}

namespace {

std::string record_key(RecordKind kind, const Json& canonical) { return to_string(kind) + "|" + canonical.dump(); }

// Parses and verifies every line of the file; calls accept(record, key) for good ones.
template <class Accept>
ReverifyReport scan(const std::filesystem::path& file, Accept&& accept) {
  ReverifyReport report;
  std::ifstream in(file);
  if (!in) return report;
  std::string line;
  while (std::getline(in, line)) {
    ++report.lines;
    if (line.empty()) {
      report.bad.push_back({report.lines, "empty line"});
      continue;
    }
    try {
      StoreRecord r = record_from_json(Json::parse(line));
      Json canon = canonical_payload(r.kind, r.payload);
      if (!same_content(canon, r.payload)) throw VerificationError("payload is not in canonical form");
      const std::string key = record_key(r.kind, canon);
      ++report.valid;
      if (!accept(std::move(r), key)) ++report.duplicates;
    } catch (const Json::exception& e) {
      report.bad.push_back({report.lines, std::string("invalid JSON: ") + e.what()});
    } catch (const Error& e) {
      report.bad.push_back({report.lines, e.what()});
    }
  }
  return report;
}

}  // namespace

WitnessStore::WitnessStore(std::filesystem::path dir) {
  std::filesystem::create_directories(dir);
  file_ = dir / kFileName;
  load_report_ = scan(file_, [&](StoreRecord r, const std::string& key) {
    if (!keys_.insert(key).second) return false;
    records_.push_back(std::move(r));
    return true;
  });
}

WitnessStore::AppendResult WitnessStore::append(StoreRecord record) {
  record.payload = canonical_payload(record.kind, record.payload);
  const std::string key = record_key(record.kind, record.payload);

  std::lock_guard lock(mutex_);
  if (keys_.count(key) != 0) {
    for (std::size_t i = 0; i < records_.size(); ++i) {
      if (record_key(records_[i].kind, records_[i].payload) == key) return {i, false};
    }
  }
  std::ofstream out(file_, std::ios::app);
  if (!out) throw Error("cannot open store file " + file_.string());
  out << record_to_json(record).dump() << '\n';
  out.flush();
  if (!out) throw Error("failed writing store file " + file_.string());
  keys_.insert(key);
  records_.push_back(std::move(record));
  return {records_.size() - 1, true};
}

std::vector<StoreRecord> WitnessStore::query(RecordKind kind, const Json& filter) const {
  std::vector<std::pair<std::string, StoreRecord>> hits;
  {
    std::lock_guard lock(mutex_);
    for (const auto& r : records_) {
      if (r.kind != kind) continue;
      bool match = true;
      for (auto it = filter.begin(); it != filter.end() && match; ++it) {
        match = r.payload.contains(it.key()) && r.payload.at(it.key()) == it.value();
      }
      if (match) hits.emplace_back(r.payload.dump(), r);
    }
  }
  std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<StoreRecord> out;
  out.reserve(hits.size());
  for (auto& h : hits) out.push_back(std::move(h.second));
  return out;
}

ReverifyReport WitnessStore::reverify_all() const {
  std::lock_guard lock(mutex_);
  std::set<std::string> seen;
  return scan(file_, [&](StoreRecord, const std::string& key) { return seen.insert(key).second; });
}

std::size_t WitnessStore::size() const {
  std::lock_guard lock(mutex_);
  return records_.size();
}

}  // namespace steinhaus
