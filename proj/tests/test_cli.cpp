#include "cli/commands.hpp"
#include "cli/corpus.hpp"
#include "cli/verify.hpp"
#include "oracles.hpp"

#include "ringprob/ringspec.hpp"

#include <nlohmann/json.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <map>
#include <set>
#include <fstream>
#include <sstream>

namespace {

using namespace ringprob;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ringprob");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(CliProb, Z6Zero) {
  const auto r = run_cli({"prob", "--ring", "Z6", "--x", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["ring"], "Z6");
  EXPECT_EQ(doc["size"], 6);
  EXPECT_EQ(doc["x"], "0");
  EXPECT_EQ(doc["hits"], 15);
  EXPECT_EQ(doc["total"], 36);
  EXPECT_EQ(doc["fraction"], "15/36");
  EXPECT_EQ(doc["decimal"], "0.416666666667");
}

TEST(CliProb, MethodsAndExplain) {
  for (const char* method : {"auto", "brute", "annsum", "formula"}) {
    const auto r = run_cli({"prob", "--ring", "M2(GF2)", "--x", "[[1,1],[1,1]]", "--method", method});
    ASSERT_EQ(r.code, 0) << method << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["hits"], 18) << method;
  }
  const auto r = run_cli({"prob", "--ring", "chain(2,3)", "--x", "0,0,1", "--explain"});
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["fraction"], "12/64");
  EXPECT_TRUE(doc["applicability"].is_array());
  EXPECT_FALSE(doc["applicability"].empty());
}

TEST(CliProb, ExitCodes) {
  EXPECT_EQ(run_cli({"prob", "--ring", "GF6", "--x", "0"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"prob", "--ring", "Z4 x", "--x", "0"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"prob", "--ring", "Z4", "--x", "#7"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"prob", "--ring", "Z4", "--x", "[[1]]"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"prob", "--ring", "Z4"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"prob", "--ring", "Z4", "--x", "0", "--method", "magic"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"--help"}).code, cli::kExitOk);
  EXPECT_EQ(run_cli({"prob", "--ring", "table:upper_triangular_f2.json", "--x", "0", "--method", "formula"}).code,
            cli::kExitUsage);
  const auto capped = run_cli({"prob", "--ring", "M3(GF3)", "--x", "#0", "--method", "annsum"});
  EXPECT_EQ(capped.code, cli::kExitSizeCap);
  EXPECT_NE(capped.err.find("cap"), std::string::npos);
  EXPECT_EQ(run_cli({"spectrum", "--ring", "Z5000"}).code, cli::kExitSizeCap);
  EXPECT_EQ(run_cli({"structure", "--ring", "Z5000"}).code, cli::kExitSizeCap);
  EXPECT_EQ(run_cli({"structure", "--ring", "Z5000", "--force"}).code, cli::kExitOk);
}

TEST(CliSpectrum, CsvForM2F2) {
  const auto r = run_cli({"spectrum", "--ring", "M2(GF2)", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "label,representative,class_size,hits,total,fraction,decimal");
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NE(rows[0].find(",6,6,256,"), std::string::npos) << rows[0];
  EXPECT_NE(rows[1].find(",9,18,256,"), std::string::npos) << rows[1];
  EXPECT_NE(rows[2].find(",1,58,256,"), std::string::npos) << rows[2];
}

TEST(CliSpectrum, JsonAndTable) {
  const auto j = run_cli({"spectrum", "--ring", "Z4", "--format", "json"});
  ASSERT_EQ(j.code, 0);
  const auto doc = nlohmann::json::parse(j.out);
  ASSERT_EQ(doc["classes"].size(), 3u);
  EXPECT_EQ(doc["classes"][2]["label"], "zero");
  EXPECT_EQ(doc["classes"][2]["fraction"], "1/2");
  const auto t = run_cli({"spectrum", "--ring", "Z4"});
  ASSERT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("layer 1"), std::string::npos);
}

TEST(CliStructure, Schema) {
  const auto r = run_cli({"structure", "--ring", "Z8"});
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["size"], 8);
  EXPECT_EQ(doc["units"], 4);
  EXPECT_EQ(doc["zero_divisors"], 4);
  EXPECT_EQ(doc["radical_chain_sizes"], nlohmann::json({4, 2, 1}));
  EXPECT_EQ(doc["nilpotency_index"], 3);
  EXPECT_EQ(doc["is_local"], true);
  EXPECT_EQ(doc["q"], 2);
  EXPECT_EQ(doc["n"], 3);
  EXPECT_EQ(doc["is_max_chain"], true);
  EXPECT_EQ(doc["is_j2_zero"], false);
  const auto z6 = nlohmann::json::parse(run_cli({"structure", "--ring", "Z6"}).out);
  EXPECT_TRUE(z6["q"].is_null());
  EXPECT_EQ(z6["is_local"], false);
}

TEST(CliVerify, ChainSuitePassesAndSkips) {
  const auto r = run_cli({"verify", "--suite", "thm46", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto doc = nlohmann::json::parse(r.out);
  std::set<std::string> passed;
  std::map<std::string, std::string> skipped;
  for (const auto& c : doc["suites"][0]["cases"]) {
    if (c["status"] == "pass") passed.insert(c["ring"].get<std::string>());
    if (c["status"] == "skip") skipped[c["ring"].get<std::string>()] = c["reason"].get<std::string>();
  }
  for (const char* spec : {"Z4", "Z8", "Z9", "Z27", "chain(2,2)", "chain(2,3)", "chain(3,2)", "chain(3,3)", "GR(2,2,2)"}) {
    EXPECT_TRUE(passed.count(spec)) << spec;
  }
  EXPECT_EQ(skipped["Z6"], "not local");
  EXPECT_FALSE(skipped["triv(2,2)"].empty());
  EXPECT_FALSE(skipped["M2(GF2)"].empty());
}

TEST(CliVerify, AllSuitesPassAndOutputIsDeterministic) {
  const auto a = run_cli({"verify", "--jobs", "1", "--format", "csv"});
  const auto b = run_cli({"verify", "--jobs", "4", "--format", "csv"});
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.find(",FAIL,"), std::string::npos);
  const auto t = run_cli({"verify"});
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("result: PASS"), std::string::npos);
}

TEST(CliVerify, CustomCorpusAndErrors) {
  const auto path = std::filesystem::temp_directory_path() / "ringprob_corpus_test.json";
  {
    std::ofstream out(path);
    out << R"j(["Z16", "GF8", "chain(5,2)"])j";
  }
  const auto r = run_cli({"verify", "--suite", "thm46,thm42", "--corpus", path.string(), "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["corpus"].size(), 3u);
  EXPECT_EQ(doc["suites"].size(), 2u);
  {
    std::ofstream out(path);
    out << R"({"not": "a list"})";
  }
  EXPECT_EQ(run_cli({"verify", "--corpus", path.string()}).code, cli::kExitUsage);
  std::filesystem::remove(path);
  EXPECT_EQ(run_cli({"verify", "--suite", "thm99"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"verify", "--corpus", "/nonexistent/corpus.json"}).code, cli::kExitUsage);
}

TEST(CliCorpus, DefaultMembers) {
  const auto corpus = cli::load_corpus("default");
  ASSERT_EQ(corpus.size(), 28u);
  Index largest = 0;
  for (const auto& c : corpus) {
    largest = std::max(largest, c.ring.size());
    EXPECT_EQ(parse_ring_spec(c.ring.render()), c.ring) << c.spec;
  }
  EXPECT_EQ(largest, 512u);
}

TEST(CliHarness, LatticeEnumerationMatchesEchelonOracle) {
  for (std::uint64_t q : {2, 3, 4}) {
    const auto f = FieldDescriptor::of_order(q);
    for (unsigned n = 1; n <= 3; ++n) {
      for (unsigned r = 0; r <= n; ++r) {
        for (unsigned k = r; k <= n; ++k) {
          EXPECT_EQ(cli::enumerate_subspaces_containing(f, n, r, k), oracle::rref_subspaces_containing(f, n, r, k));
        }
      }
    }
  }
}

}  // namespace
