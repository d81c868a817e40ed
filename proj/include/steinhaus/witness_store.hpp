#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "steinhaus/json_io.hpp"

namespace steinhaus {

enum class RecordKind { haight, verdict, xi };

std::string to_string(RecordKind kind);
/// Throws ParseError on an unknown kind name.
RecordKind record_kind_from_string(const std::string& name);

/// One line of the store: {"kind", "payload", "created_at", "producer"}
/// in that field order.
///
/// Payload shapes:
///   haight  : {"k","n","set","cert"}
///   verdict : {"query":"eps"|"pm"|"sym","spec":SeqSpec text,"arg":text,"verdict":{...}}
///   xi      : {"m","xi","Xi":decimal string}
struct StoreRecord {
  RecordKind kind = RecordKind::haight;
  Json payload;
  std::int64_t created_at = 0;
  Json producer = Json::object();
};

Json record_to_json(const StoreRecord& r);
/// Throws ParseError on a malformed record.
StoreRecord record_from_json(const Json& j);

/// Recomputes the payload and returns its canonical form; throws
/// VerificationError if the claimed content does not hold, ParseError if
/// the payload is malformed.
Json canonical_payload(RecordKind kind, const Json& payload);

/// Verdict payload for a computed query.
Json verdict_payload(const std::string& query, const SeqSpec& spec, const std::string& arg);

struct LineIssue {
  std::size_t line = 0;  // 1-based
  std::string reason;
};

struct ReverifyReport {
  std::size_t lines = 0;
  std::size_t valid = 0;
  std::size_t duplicates = 0;
  std::vector<LineIssue> bad;

  bool ok() const noexcept { return bad.empty(); }
};

/// Append-only record cache in <dir>/records.jsonl.
///
/// Single writer: appends are serialized by an internal mutex. Lines that
/// are malformed or fail re-verification are skipped on load and reported
/// in load_report().
class WitnessStore {
 public:
  static constexpr const char* kFileName = "records.jsonl";

  /// Creates dir if needed and loads any existing records.
  explicit WitnessStore(std::filesystem::path dir);

  struct AppendResult {
    std::size_t position = 0;
    bool inserted = false;
  };

  /// Verifies and canonicalizes the payload, then writes one line unless
  /// the same (kind, canonical payload) is already stored.
  AppendResult append(StoreRecord record);

  /// Records of the given kind whose payload matches every field of
  /// filter, ordered by canonical payload text.
  std::vector<StoreRecord> query(RecordKind kind, const Json& filter = Json::object()) const;

  /// Re-reads the file and re-verifies every line.
  ReverifyReport reverify_all() const;

  const ReverifyReport& load_report() const noexcept { return load_report_; }
  std::size_t size() const;
  const std::filesystem::path& file() const noexcept { return file_; }

 private:
  std::filesystem::path file_;
  mutable std::mutex mutex_;
  std::vector<StoreRecord> records_;
  std::set<std::string> keys_;
  ReverifyReport load_report_;
};

}  // namespace steinhaus
