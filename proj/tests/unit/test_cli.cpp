#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "batchcot/cli.hpp"
#include "batchcot/jsonl.hpp"
#include "batchcot/manifest.hpp"
#include "fixtures.hpp"

using namespace batchcot;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = batchcot::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, UnknownSubcommandIsUsageError) {
  const auto r = invoke({"frobnicate"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"label", "--bogus"}).code, 1);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(invoke({"--help"}).code, 0); }

TEST(Cli, GrpoCheckPrintsPerPropertyLines) {
  const auto r = invoke({"grpo-check"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("PASS gradient-fd-sampled"), std::string::npos);
  EXPECT_NE(r.out.find("PASS gradient-fd-all-labels"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, CorpusValidationErrorExitsOne) {
  fixture::TempDir dir;
  write_text_file(dir / "q.jsonl", "{\"id\":\"a\",\"text\":\"\",\"gold_answer\":\"1\"}\n");
  fixture::write_mock_dir(dir / "mock", {});
  const auto r = invoke({"gen", "--questions", (dir / "q.jsonl").string(), "--out-dir", (dir / "out").string(), "--mock",
                      (dir / "mock").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("q.jsonl:1"), std::string::npos) << r.err;
}

TEST(Cli, UnreachableEndpointExitsTwo) {
  fixture::TempDir dir;
  const auto qs = fixture::addition_corpus(2);
  fixture::write_questions(dir / "q.jsonl", qs);
  const auto r = invoke({"gen", "--questions", (dir / "q.jsonl").string(), "--out-dir", (dir / "out").string(),
                      "--base-url", "http://127.0.0.1:9/v1", "--max-retries", "0", "--timeout-ms", "300"});
  EXPECT_EQ(r.code, 2) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "out" / "failures-k1.jsonl"));
  const auto m = read_manifest(dir / "out" / "manifest.json");
  EXPECT_EQ(m.exclusions.at("Vanilla").at("failed_requests"), 2);
}

TEST(Cli, ConfigFilePrecedence) {
  fixture::TempDir dir;
  const auto qs = fixture::addition_corpus(4);
  fixture::write_questions(dir / "q.jsonl", qs);
  fixture::write_mock_dir(dir / "mock", fixture::truth_table_entries(qs));
  write_text_file(dir / "run.conf", "mock = " + (dir / "mock").string() + "\ntemperature = 0.9\nseed = 5\nmodel = from-config\n");
  const auto r = invoke({"gen", "--questions", (dir / "q.jsonl").string(), "--out-dir", (dir / "out").string(),
                      "--config", (dir / "run.conf").string(), "--temperature", "0.2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = read_manifest(dir / "out" / "manifest.json");
  EXPECT_EQ(m.config.at("endpoint").at("temperature"), 0.2);
  EXPECT_EQ(m.config.at("endpoint").at("model"), "from-config");
  EXPECT_EQ(m.seed, 5u);
  const auto rows = read_jsonl(dir / "out" / "completions-k1.jsonl");
  EXPECT_EQ(rows.at(0).value.at("sampling").at("temperature"), 0.2);

  write_text_file(dir / "bad.conf", "api_key = sk-123\n");
  const auto bad = invoke({"gen", "--questions", (dir / "q.jsonl").string(), "--out-dir", (dir / "out2").string(),
                        "--config", (dir / "bad.conf").string()});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("environment"), std::string::npos);
}

TEST(Cli, ApiKeyNeverRecorded) {
  fixture::TempDir dir;
  const auto qs = fixture::addition_corpus(2);
  fixture::write_questions(dir / "q.jsonl", qs);
  fixture::write_mock_dir(dir / "mock", fixture::truth_table_entries(qs));
  ::setenv("BATCHCOT_API_KEY", "sk-never-written", 1);
  const auto r = invoke({"gen", "--questions", (dir / "q.jsonl").string(), "--out-dir", (dir / "out").string(), "--mock",
                      (dir / "mock").string()});
  ::unsetenv("BATCHCOT_API_KEY");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(read_text_file(dir / "out" / "manifest.json").find("sk-never"), std::string::npos);
}

TEST(Cli, ToyTrainingWritesCurveAndCheckpoint) {
  fixture::TempDir dir;
  const auto r = invoke({"grpo-train-toy", "--out-dir", (dir / "toy").string(), "--steps", "50", "--seed", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(read_text_file(dir / "toy" / "curve.csv").starts_with("step,loss,mean_gold_prob\n1,"));
  EXPECT_TRUE(read_text_file(dir / "toy" / "policy.txt").starts_with("batchcot-policy 1\n"));
  EXPECT_TRUE(std::filesystem::exists(dir / "toy" / "manifest.json"));
}

TEST(Cli, ReportFromAggregateFiles) {
  fixture::TempDir dir;
  write_text_file(dir / "base.jsonl",
                  "{\"benchmark\":\"GSM8K\",\"accuracy\":0.8467,\"mean_tokens\":1928.96}\n");
  write_text_file(dir / "new.jsonl", "{\"benchmark\":\"GSM8K\",\"accuracy\":0.8667,\"mean_tokens\":1427.63}\n");
  const auto r = invoke({"report", "--in", (dir / "new.jsonl").string(), "--baseline", (dir / "base.jsonl").string(),
                      "--out", (dir / "report.txt").string(), "--csv", (dir / "report.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("+2.00"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("-25.99%"), std::string::npos) << r.out;
  EXPECT_EQ(read_text_file(dir / "report.txt"), r.out);
  EXPECT_TRUE(std::filesystem::exists(dir / "report.txt.manifest.json"));

  write_text_file(dir / "bad.jsonl", "{\"benchmark\":\"X\",\"accuracy\":1.5,\"mean_tokens\":1}\n");
  EXPECT_EQ(invoke({"report", "--in", (dir / "bad.jsonl").string()}).code, 1);
}

TEST(Cli, EvalWritesRecordsAndAggregate) {
  fixture::TempDir dir;
  const auto qs = fixture::addition_corpus(6);
  fixture::write_questions(dir / "q.jsonl", qs);
  fixture::write_mock_dir(dir / "mock", fixture::truth_table_entries(qs));
  const auto r = invoke({"eval", "--benchmark", "AIME 2024", "--corpus", (dir / "q.jsonl").string(), "--out",
                      (dir / "aime.jsonl").string(), "--mock", (dir / "mock").string(), "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_jsonl(dir / "aime.jsonl").size(), 30u);
  const auto agg = read_jsonl(dir / "aime.jsonl.aggregate.jsonl");
  ASSERT_EQ(agg.size(), 1u);
  EXPECT_EQ(agg[0].value.at("samples_per_question"), 5);
  EXPECT_DOUBLE_EQ(agg[0].value.at("accuracy").get<double>(), 4.0 / 6.0);
}
