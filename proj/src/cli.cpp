#include "steinhaus/cli.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "steinhaus/error.hpp"
#include "steinhaus/haight.hpp"
#include "steinhaus/json_io.hpp"
#include "steinhaus/steinhaus.hpp"
#include "steinhaus/sumset.hpp"
#include "steinhaus/text_format.hpp"
#include "steinhaus/thick_lemma.hpp"
#include "steinhaus/witness_store.hpp"

namespace steinhaus {

namespace {

enum class OutputMode { table, structured };

struct CliConfig {
  std::string store_dir;
  OutputMode output = OutputMode::table;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  bool no_timestamp = false;
};

struct Context {
  CliConfig cfg;
  std::ostream& out;
  std::ostream& err;
  std::unique_ptr<WitnessStore> store;

  bool structured() const { return cfg.output == OutputMode::structured; }

  void emit(const Json& j) { out << j.dump() << '\n'; }

  WitnessStore* open_store() {
    if (cfg.store_dir.empty()) return nullptr;
    if (!store) {
      store = std::make_unique<WitnessStore>(cfg.store_dir);
      for (const auto& issue : store->load_report().bad) {
        err << "warning: store line " << issue.line << " skipped: " << issue.reason << '\n';
      }
    }
    return store.get();
  }

  StoreRecord record(RecordKind kind, Json payload, Json producer = Json::object()) const {
    StoreRecord r;
    r.kind = kind;
    r.payload = std::move(payload);
    r.created_at = cfg.no_timestamp ? 0 : static_cast<std::int64_t>(std::time(nullptr));
    r.producer = std::move(producer);
    r.producer["tool"] = "steinhaus";
    r.producer["version"] = kVersion;
    return r;
  }

  // Records go to the store when one is configured; the emitted record is the canonical one.
  StoreRecord persist(StoreRecord r) {
    r.payload = canonical_payload(r.kind, r.payload);
    if (WitnessStore* s = open_store()) s->append(r);
    return r;
  }
};

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string signs_table(SignClass c) { return "(" + std::to_string(c.plus) + "," + std::to_string(c.minus) + ")"; }

std::string verdict_table(const Verdict& v) {
  if (v.holds) return "holds k0=" + std::to_string(v.k0);
  std::string s = "fails witnesses=[";
  for (std::size_t i = 0; i < v.witnesses.size(); ++i) s += (i ? "," : "") + std::to_string(v.witnesses[i]);
  return s + "]";
}

void emit_set_result(Context& ctx, const std::string& command, const Json& inputs, const CyclicSet& result) {
  if (ctx.structured()) {
    Json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["result"] = format_set(result);
    j["full"] = result.full();
    j["size"] = result.size();
    j["missing"] = deficiency(result);
    ctx.emit(j);
  } else {
    ctx.out << format_set(result) << " full=" << bool_text(result.full()) << " size=" << result.size() << '\n';
  }
}

void emit_verdict_record(Context& ctx, const std::string& query, const SeqSpec& spec, const std::string& arg) {
  StoreRecord r = ctx.persist(ctx.record(RecordKind::verdict, verdict_payload(query, spec, arg)));
  if (ctx.structured()) {
    ctx.emit(record_to_json(r));
    return;
  }
  const Json& v = r.payload.at("verdict");
  const Verdict verdict = verdict_from_json(v);
  ctx.out << verdict_table(verdict);
  if (v.contains("class")) {
    ctx.out << " class=" << signs_table(SignClass{v["class"][0].get<std::size_t>(), v["class"][1].get<std::size_t>()});
  }
  ctx.out << '\n';
}

std::pair<std::uint32_t, std::uint32_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto n = static_cast<std::uint32_t>(parse_unsigned(text));
    return {n, n};
  }
  return {static_cast<std::uint32_t>(parse_unsigned(text.substr(0, dots))),
          static_cast<std::uint32_t>(parse_unsigned(text.substr(dots + 2)))};
}

std::vector<HaightWitness> read_witness_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  auto from_entry = [](const Json& j) {
    // Store records are accepted as well as bare witness objects.
    if (j.contains("kind") && j.contains("payload")) return witness_from_json(j.at("payload"));
    return witness_from_json(j);
  };

  std::vector<HaightWitness> out;
  try {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
      for (const auto& j : Json::parse(text)) out.push_back(from_entry(j));
      return out;
    }
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      out.push_back(from_entry(Json::parse(line)));
    }
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return out;
}

int cmd_haight_verify(Context& ctx, const std::string& path) {
  const auto witnesses = read_witness_file(path);
  bool all_ok = !witnesses.empty();
  Json results = Json::array();
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    const auto check = verify_witness(witnesses[i]);
    all_ok = all_ok && check.ok;
    Json r;
    r["index"] = i;
    r["k"] = witnesses[i].k;
    r["n"] = witnesses[i].modulus();
    r["ok"] = check.ok;
    if (!check.ok) r["reason"] = check.reason;
    results.push_back(r);
    if (!ctx.structured()) {
      ctx.out << "witness " << i << " k=" << witnesses[i].k << " " << format_set(witnesses[i].set)
              << (check.ok ? " ok" : " FAILED: " + check.reason) << '\n';
    }
  }
  if (witnesses.empty() && !ctx.structured()) ctx.out << "no witnesses in " << path << '\n';

  // A list indexed k = 1..K is also checked as a sequence.
  bool is_sequence = !witnesses.empty();
  for (std::size_t i = 0; i < witnesses.size(); ++i) is_sequence = is_sequence && witnesses[i].k == i + 1;
  Json sequence;
  if (all_ok && is_sequence) {
    const auto report = verify_haight_sequence(witnesses);
    sequence["max_k"] = report.max_k;
    sequence["pm2"] = pm_verdict_to_json(report.pm2);
    sequence["class_11_holds"] = report.class_11_holds;
    Json plus = Json::array();
    for (const auto& v : report.plus_power) plus.push_back(verdict_to_json(v));
    sequence["plus_power"] = plus;
    sequence["all_plus_fail"] = report.all_plus_fail;
    all_ok = report.pm2.verdict.holds && report.class_11_holds && report.all_plus_fail;
    if (!ctx.structured()) {
      ctx.out << "sequence K=" << report.max_k << " pm2: " << verdict_table(report.pm2.verdict);
      if (report.pm2.sign_class) ctx.out << " class=" << signs_table(*report.pm2.sign_class);
      ctx.out << " class(1,1)=" << bool_text(report.class_11_holds) << " (+1)^m fails for m<=K: "
              << bool_text(report.all_plus_fail) << '\n';
    }
  }
  if (ctx.structured()) {
    Json j;
    j["command"] = "haight-verify";
    j["ok"] = all_ok;
    j["results"] = results;
    if (!sequence.is_null()) j["sequence"] = sequence;
    ctx.emit(j);
  }
  return all_ok ? 0 : 1;
}

void emit_witnesses(Context& ctx, const std::vector<HaightWitness>& found, const Json& producer) {
  for (const auto& w : found) {
    StoreRecord r = ctx.persist(ctx.record(RecordKind::haight, witness_to_json(w), producer));
    if (ctx.structured()) {
      ctx.emit(record_to_json(r));
    } else {
      ctx.out << "n=" << w.modulus() << " k=" << w.k << " " << format_set(w.set) << " cert=" << w.certificate << '\n';
    }
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sumset-based Steinhaus verdicts, Haight witness search and thick-set checks"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig cfg;
  cfg.threads = std::max(1u, std::thread::hardware_concurrency());
  std::string output = "table";
  app.add_option("--store-dir", cfg.store_dir, "Record store directory")->envname(kStoreDirEnv);
  app.add_option("--output", output, "table or structured")->check(CLI::IsMember({"table", "structured"}));
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Default search seed");
  app.add_flag("--no-timestamp", cfg.no_timestamp, "Write created_at = 0");

  std::string a_text, b_text, spec_text, arg_text, file_text;
  std::uint64_t count = 0;

  auto* sumset_cmd = app.add_subcommand("sumset", "A + B");
  sumset_cmd->add_option("A", a_text)->required();
  sumset_cmd->add_option("B", b_text)->required();
  auto* ksum_cmd = app.add_subcommand("ksum", "kA");
  ksum_cmd->add_option("A", a_text)->required();
  ksum_cmd->add_option("k", count)->required();
  auto* signed_cmd = app.add_subcommand("signed", "e_1 A + ... + e_m A");
  signed_cmd->add_option("A", a_text)->required();
  signed_cmd->add_option("eps", arg_text)->required();
  auto* pm_cmd = app.add_subcommand("pm", "m(A u -A)");
  pm_cmd->add_option("A", a_text)->required();
  pm_cmd->add_option("m", count)->required();

  auto* veps_cmd = app.add_subcommand("verdict-eps", "eps-Steinhaus verdict");
  veps_cmd->add_option("SPEC", spec_text)->required();
  veps_cmd->add_option("EPS", arg_text)->required();
  auto* vpm_cmd = app.add_subcommand("verdict-pm", "+-m Steinhaus verdict");
  vpm_cmd->add_option("SPEC", spec_text)->required();
  vpm_cmd->add_option("M", arg_text)->required();
  auto* vsym_cmd = app.add_subcommand("verdict-sym", "m-Steinhaus verdict for symmetric entries");
  vsym_cmd->add_option("SPEC", spec_text)->required();
  vsym_cmd->add_option("M", arg_text)->required();

  auto* example_cmd = app.add_subcommand("example-c2n1", "{-1,0,1} in Z_{2n+1}: holds at n, fails at +-(n-1)");
  example_cmd->add_option("N", count)->required();

  auto* haight_cmd = app.add_subcommand("haight", "Haight witness search");
  haight_cmd->require_subcommand(1);
  std::string range_text = "1..12", mode_text = "exhaustive";
  std::uint64_t budget = 100000;
  std::optional<std::uint64_t> search_seed;
  std::optional<std::uint32_t> max_size;
  std::uint32_t cap = 20;
  auto* hsearch_cmd = haight_cmd->add_subcommand("search", "Find witnesses for k");
  hsearch_cmd->add_option("K", count)->required();
  hsearch_cmd->add_option("--n-range", range_text, "A..B");
  hsearch_cmd->add_option("--mode", mode_text)->check(CLI::IsMember({"exhaustive", "stochastic"}));
  hsearch_cmd->add_option("--budget", budget, "Candidate evaluations (stochastic)");
  hsearch_cmd->add_option("--seed", search_seed, "Search seed");
  hsearch_cmd->add_option("--max-size", max_size, "Largest set size considered");
  auto* hverify_cmd = haight_cmd->add_subcommand("verify", "Verify witnesses from a JSON file");
  hverify_cmd->add_option("FILE", file_text)->required();
  auto* hmin_cmd = haight_cmd->add_subcommand("minimal", "Least modulus with a k-witness");
  hmin_cmd->add_option("K", count)->required();
  hmin_cmd->add_option("--cap", cap, "Largest modulus tried");

  auto* lemma_cmd = app.add_subcommand("lemma1", "Thick-set independence lemma");
  lemma_cmd->require_subcommand(1);
  std::uint64_t tuple_cap = kDefaultTupleCap;
  auto* xi_cmd = lemma_cmd->add_subcommand("xi", "xi_m and Xi_m");
  xi_cmd->add_option("M", count)->required();
  auto* iv_cmd = lemma_cmd->add_subcommand("intervals", "Intervals of each T_A");
  iv_cmd->add_option("SPEC", spec_text)->required();
  auto* ind_cmd = lemma_cmd->add_subcommand("independence", "Exhaustive non-vanishing check");
  ind_cmd->add_option("SPEC", spec_text)->required();
  ind_cmd->add_option("M", count)->required();
  ind_cmd->add_option("--tuple-cap", tuple_cap);

  auto* store_cmd = app.add_subcommand("store", "Record store maintenance");
  store_cmd->require_subcommand(1);
  auto* reverify_cmd = store_cmd->add_subcommand("reverify", "Re-verify every stored record");

  std::vector<const char*> argv{"steinhaus"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  cfg.output = output == "structured" ? OutputMode::structured : OutputMode::table;
  Context ctx{cfg, out, err, nullptr};

  try {
    if (sumset_cmd->parsed()) {
      const CyclicSet a = parse_set(a_text), b = parse_set(b_text);
      emit_set_result(ctx, "sumset", Json::array({a_text, b_text}), sumset(a, b));
    } else if (ksum_cmd->parsed()) {
      emit_set_result(ctx, "ksum", Json::array({a_text, count}), iterated_sumset(parse_set(a_text), count));
    } else if (signed_cmd->parsed()) {
      const SignVector eps = parse_signs(arg_text);
      emit_set_result(ctx, "signed", Json::array({a_text, format_signs(eps)}), signed_product(parse_set(a_text), eps));
    } else if (pm_cmd->parsed()) {
      emit_set_result(ctx, "pm", Json::array({a_text, count}), pm_product(parse_set(a_text), count));
    } else if (veps_cmd->parsed()) {
      emit_verdict_record(ctx, "eps", parse_seq_spec(spec_text), arg_text);
    } else if (vpm_cmd->parsed()) {
      emit_verdict_record(ctx, "pm", parse_seq_spec(spec_text), arg_text);
    } else if (vsym_cmd->parsed()) {
      emit_verdict_record(ctx, "sym", parse_seq_spec(spec_text), arg_text);
    } else if (example_cmd->parsed()) {
      if (count < 2 || count > kDefaultModulusCap / 2) throw ParseError("N must lie in [2, 2^19]");
      const auto n = static_cast<std::uint32_t>(count);
      const SeqSpec spec = example_family_c2n1(n);
      const Verdict sym = sym_verdict(spec, n);
      const PmVerdict pm = pm_verdict(spec, n - 1);
      const bool reproduced = sym.holds && !pm.verdict.holds;
      if (ctx.structured()) {
        Json j;
        j["command"] = "example-c2n1";
        j["n"] = n;
        j["spec"] = format_seq_spec(spec);
        j["sym_at_n"] = verdict_to_json(sym);
        j["pm_at_n_minus_1"] = pm_verdict_to_json(pm);
        j["reproduced"] = reproduced;
        ctx.emit(j);
      } else {
        ctx.out << format_seq_spec(spec) << '\n'
                << "sym m=" << n << ": " << verdict_table(sym) << '\n'
                << "pm m=" << n - 1 << ": " << verdict_table(pm.verdict) << '\n'
                << "reproduced=" << bool_text(reproduced) << '\n';
      }
      return reproduced ? 0 : 1;
    } else if (hsearch_cmd->parsed()) {
      SearchConfig sc;
      sc.k = static_cast<std::uint32_t>(count);
      std::tie(sc.n_min, sc.n_max) = parse_range(range_text);
      sc.mode = mode_text == "stochastic" ? SearchMode::stochastic : SearchMode::exhaustive;
      sc.budget = budget;
      sc.seed = search_seed.value_or(cfg.seed);
      sc.max_set_size = max_size;
      sc.threads = cfg.threads;
      const auto found = sc.mode == SearchMode::exhaustive ? exhaustive_search(sc) : stochastic_search(sc);
      Json producer;
      producer["mode"] = mode_text;
      producer["n_range"] = range_text;
      if (sc.mode == SearchMode::stochastic) {
        producer["seed"] = sc.seed;
        producer["budget"] = sc.budget;
      }
      emit_witnesses(ctx, found, producer);
      if (!ctx.structured()) ctx.out << found.size() << " witness class(es) for k=" << sc.k << '\n';
    } else if (hverify_cmd->parsed()) {
      return cmd_haight_verify(ctx, file_text);
    } else if (hmin_cmd->parsed()) {
      const auto k = static_cast<std::uint32_t>(count);
      const auto found = minimal_modulus(k, cap, cfg.threads);
      if (found) {
        Json producer;
        producer["mode"] = "minimal";
        producer["cap"] = cap;
        emit_witnesses(ctx, {*found}, producer);
      } else if (ctx.structured()) {
        Json j;
        j["command"] = "haight-minimal";
        j["k"] = k;
        j["cap"] = cap;
        j["found"] = false;
        ctx.emit(j);
      } else {
        ctx.out << "no witness for k=" << k << " with n <= " << cap << '\n';
      }
    } else if (xi_cmd->parsed()) {
      const XiValue xi = xi_sequence(count);
      StoreRecord r = ctx.persist(ctx.record(RecordKind::xi, xi_to_json(count, xi)));
      if (ctx.structured()) {
        ctx.emit(record_to_json(r));
      } else {
        ctx.out << "m=" << count << " xi=" << xi.xi << " Xi=" << xi.Xi.str() << '\n';
      }
    } else if (iv_cmd->parsed()) {
      const ThickFamilySpec spec = parse_thick_spec(spec_text);
      const auto intervals = thick_intervals(spec);
      Json rows = Json::array();
      for (std::size_t i = 0; i < intervals.size(); ++i) {
        Json row = Json::array();
        for (const auto& iv : intervals[i]) {
          row.push_back(Json{{"a", iv.source}, {"lo", iv.lo.str()}, {"hi", iv.hi.str()}});
          if (!ctx.structured()) ctx.out << "set " << i << " a=" << iv.source << " [" << iv.lo << "," << iv.hi << "]\n";
        }
        rows.push_back(row);
      }
      if (ctx.structured()) {
        Json j;
        j["command"] = "lemma1-intervals";
        j["spec"] = format_thick_spec(spec);
        j["intervals"] = rows;
        ctx.emit(j);
      }
    } else if (ind_cmd->parsed()) {
      const ThickFamilySpec spec = parse_thick_spec(spec_text);
      const auto result = independence_check(spec, count, tuple_cap, cfg.threads);
      if (ctx.structured()) {
        Json j;
        j["command"] = "lemma1-independence";
        j["spec"] = format_thick_spec(spec);
        j["m"] = count;
        j["Xi"] = result.Xi.str();
        j["passed"] = result.passed;
        j["tuples_checked"] = result.tuples_checked;
        j["tuples_total"] = result.tuples_total;
        if (result.counterexample) j["counterexample"] = zero_sum_to_json(*result.counterexample);
        ctx.emit(j);
      } else {
        ctx.out << (result.passed ? "pass" : "FAIL") << " m=" << count << " Xi=" << result.Xi
                << " checked=" << result.tuples_checked << " total=" << result.tuples_total << '\n';
        if (result.counterexample) ctx.out << "zero sum: " << zero_sum_to_json(*result.counterexample).dump() << '\n';
      }
      return result.passed ? 0 : 1;
    } else if (reverify_cmd->parsed()) {
      if (cfg.store_dir.empty()) throw ParseError(std::string("store reverify needs --store-dir or ") + kStoreDirEnv);
      WitnessStore store(cfg.store_dir);
      const auto report = store.reverify_all();
      if (ctx.structured()) {
        Json j;
        j["command"] = "store-reverify";
        j["file"] = store.file().string();
        j["lines"] = report.lines;
        j["valid"] = report.valid;
        j["duplicates"] = report.duplicates;
        Json bad = Json::array();
        for (const auto& b : report.bad) bad.push_back(Json{{"line", b.line}, {"reason", b.reason}});
        j["bad"] = bad;
        ctx.emit(j);
      } else {
        ctx.out << store.file().string() << ": " << report.lines << " lines, " << report.valid << " valid, "
                << report.duplicates << " duplicate(s), " << report.bad.size() << " bad\n";
        for (const auto& b : report.bad) ctx.out << "  line " << b.line << ": " << b.reason << '\n';
      }
      return report.ok() ? 0 : 1;
    }
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace steinhaus
