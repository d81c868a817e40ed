#include <doctest.h>

#include <fstream>
#include <sstream>

#include "steinhaus/cli.hpp"
#include "steinhaus/json_io.hpp"
#include "steinhaus/witness_store.hpp"
#include "test_support.hpp"

using namespace steinhaus;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

Json last_json(const std::string& out) {
  std::istringstream in(out);
  std::string line, last;
  while (std::getline(in, line)) {
    if (!line.empty()) last = line;
  }
  return Json::parse(last);
}

}  // namespace

TEST_CASE("set operation commands") {
  auto r = run({"sumset", "7:{0,1,3}", "7:{0,1,3}"});
  CHECK(r.status == 0);
  CHECK(r.out == "7:{0,1,2,3,4,6} full=false size=6\n");
  r = run({"--output", "structured", "ksum", "7:{6,0,1}", "3"});
  CHECK(r.status == 0);
  CHECK(last_json(r.out)["full"] == true);
  r = run({"--output", "structured", "signed", "7:{0,1,3}", "+1,-1"});
  CHECK(last_json(r.out)["result"] == "7:{0,1,2,3,4,5,6}");
  r = run({"--output", "structured", "pm", "5:{2}", "2"});
  CHECK(last_json(r.out)["result"] == "5:{0,1,4}");
  CHECK(last_json(r.out)["missing"] == Json::array({2, 3}));
}

TEST_CASE("verdict commands") {
  auto r = run({"verdict-sym", "cycle=[7:{6,0,1}]", "3"});
  CHECK(r.status == 0);
  CHECK(r.out == "holds k0=0\n");
  r = run({"verdict-eps", "cycle=[7:{6,0,1}]", "+1,+1"});
  CHECK(r.status == 0);
  CHECK(r.out == "fails witnesses=[0]\n");
  r = run({"verdict-pm", "cycle=[7:{0,1,3}]", "2"});
  CHECK(r.out == "holds k0=0 class=(1,1)\n");
  r = run({"--output", "structured", "--no-timestamp", "verdict-pm", "cycle=[7:{0,1,3}]", "2"});
  CHECK(r.out ==
        R"({"kind":"verdict","payload":{"query":"pm","spec":"cycle=[7:{0,1,3}]","arg":"2","verdict":{"outcome":"holds","k0":0,"class":[1,1]}},"created_at":0,"producer":{"tool":"steinhaus","version":"0.1.0"}})"
        "\n");
  // Asymmetric entry is a verification failure.
  r = run({"verdict-sym", "cycle=[7:{0,1,3}]", "2"});
  CHECK(r.status == 1);
  CHECK(r.err.find("not symmetric") != std::string::npos);
}

TEST_CASE("example-c2n1 command") {
  auto r = run({"--output", "structured", "example-c2n1", "5"});
  CHECK(r.status == 0);
  const Json j = last_json(r.out);
  CHECK(j["reproduced"] == true);
  CHECK(j["sym_at_n"]["outcome"] == "holds");
  CHECK(j["pm_at_n_minus_1"]["outcome"] == "fails");
  CHECK(run({"example-c2n1", "1"}).status == 2);
}

TEST_CASE("usage and parse errors exit 2") {
  CHECK(run({}).status == 2);
  CHECK(run({"sumset", "7:{0,1", "7:{0}"}).status == 2);
  CHECK(run({"sumset", "7:{0}", "5:{0}"}).status == 2);
  CHECK(run({"bogus"}).status == 2);
  CHECK(run({"haight", "search", "2", "--n-range", "1..50"}).status == 2);
  CHECK(run({"--output", "xml", "sumset", "7:{0}", "7:{0}"}).status == 2);
  CHECK(run({"--help"}).status == 0);
}

TEST_CASE("haight commands and the store") {
  TempDir dir;
  const std::string store = dir.path().string();
  auto r = run({"--store-dir", store, "--no-timestamp", "--output", "structured", "haight", "search", "2", "--n-range",
                "7..7"});
  CHECK(r.status == 0);
  const Json rec = last_json(r.out);
  CHECK(rec["kind"] == "haight");
  CHECK(rec["payload"]["n"] == 7);

  r = run({"haight", "minimal", "2", "--cap", "10"});
  CHECK(r.status == 0);
  CHECK(r.out.find("n=6 k=2 6:{0,1,3} cert=5") == 0);
  r = run({"haight", "minimal", "5", "--cap", "4"});
  CHECK(r.out.find("no witness") != std::string::npos);

  SUBCASE("stochastic output is byte-identical across runs") {
    const std::vector<std::string> args{"--no-timestamp", "--output", "structured", "haight",   "search", "2",
                                        "--n-range",      "18..22", "--mode",       "stochastic", "--budget",
                                        "20000",          "--seed", "7"};
    const auto a = run(args), b = run(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }

  SUBCASE("haight verify reads witness and record lines") {
    const auto file = dir.path() / "witnesses.jsonl";
    {
      std::ofstream out(file);
      out << R"({"k":1,"n":3,"set":[0,1],"cert":2})" << '\n' << rec.dump() << '\n';
    }
    r = run({"haight", "verify", file.string()});
    CHECK(r.status == 0);
    CHECK(r.out.find("class=(1,1)") != std::string::npos);
    {
      std::ofstream out(file);
      out << R"({"k":2,"n":7,"set":[0,1,3],"cert":4})" << '\n';
    }
    r = run({"--output", "structured", "haight", "verify", file.string()});
    CHECK(r.status == 1);
    CHECK(last_json(r.out)["results"][0]["reason"] == "certificate present in kA");
    CHECK(run({"haight", "verify", (dir.path() / "missing.json").string()}).status == 2);
  }

  SUBCASE("store reverify") {
    r = run({"--store-dir", store, "store", "reverify"});
    CHECK(r.status == 0);
    {
      std::ofstream out(dir.path() / WitnessStore::kFileName, std::ios::app);
      out << "garbage\n";
    }
    r = run({"--store-dir", store, "--output", "structured", "store", "reverify"});
    CHECK(r.status == 1);
    CHECK(last_json(r.out)["bad"][0]["line"] == 2);
    CHECK(run({"store", "reverify"}).status == 2);
  }
}

TEST_CASE("lemma1 commands") {
  auto r = run({"lemma1", "xi", "1"});
  CHECK(r.status == 0);
  CHECK(r.out == "m=1 xi=2 Xi=18\n");
  r = run({"--output", "structured", "lemma1", "intervals", "sets=[{1},{2}] a_max=2"});
  CHECK(last_json(r.out)["intervals"][1][0]["lo"] == "14");
  r = run({"lemma1", "independence", "sets=[{1,4},{2},{3}] a_max=4", "3"});
  CHECK(r.status == 0);
  CHECK(r.out.find("pass") == 0);
  r = run({"lemma1", "independence", "sets=[{1,2,3,4,5},{6,7}] a_max=7", "3", "--tuple-cap", "100"});
  CHECK(r.status == 2);
  CHECK(run({"lemma1", "intervals", "sets=[{1},{1}]"}).status == 2);
}
