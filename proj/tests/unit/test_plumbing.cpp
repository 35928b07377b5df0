#include <gtest/gtest.h>

#include <sstream>

#include "batchcot/completion.hpp"
#include "batchcot/config_file.hpp"
#include "batchcot/error.hpp"
#include "batchcot/jsonl.hpp"
#include "batchcot/manifest.hpp"
#include "batchcot/prompt.hpp"
#include "batchcot/tokens.hpp"
#include "fixtures.hpp"

using namespace batchcot;

TEST(Tokens, Schemes) {
  EXPECT_EQ(count_tokens("  a bb\tccc\n", TokenScheme::Whitespace), 3);
  EXPECT_EQ(count_tokens("", TokenScheme::Whitespace), 0);
  EXPECT_EQ(count_tokens("abcde", TokenScheme::BytesOver4), 2);
  EXPECT_EQ(count_tokens("abcd", TokenScheme::BytesOver4), 1);
  EXPECT_EQ(token_scheme_from_string("bytes_over_4"), TokenScheme::BytesOver4);
  EXPECT_THROW(token_scheme_from_string("bpe"), InvalidInput);
}

TEST(Jsonl, ReportsEveryBadLine) {
  std::istringstream in("{\"a\":1}\nnot json\n\n[1,2\n");
  try {
    read_jsonl(in, "mem");
    FAIL();
  } catch (const ValidationError& e) {
    ASSERT_EQ(e.diagnostics().size(), 2u);
    EXPECT_NE(e.diagnostics()[0].find("mem:2"), std::string::npos);
    EXPECT_NE(e.diagnostics()[1].find("mem:4"), std::string::npos);
  }
}

TEST(Completion, JsonRoundTrip) {
  CompletionRecord r;
  r.envelope = build_single_prompt(fixture::addition_corpus(1)[0]);
  r.raw_text = "text";
  r.reported_tokens = 12;
  r.counted_tokens = 1;
  r.sampling.seed = 4;
  r.endpoint = "mock:x";
  r.model = "m";
  r.attempts = 2;
  const auto j = to_json(r);
  EXPECT_EQ(completion_from_json(j), r);
  EXPECT_EQ(j.at("token_source"), "reported");
}

TEST(ConfigFile, ParsesFlatKeyValues) {
  const auto cfg = parse_config("# comment\nmodel = r1\n\ntemperature=0.6\nbase_url = \"http://x/v1\"\nmodel = r2\n");
  EXPECT_EQ(cfg.values.at("model"), "r2");
  EXPECT_EQ(cfg.lines.at("model"), 6u);
  EXPECT_EQ(cfg.values.at("base_url"), "http://x/v1");
  EXPECT_THROW(parse_config("just words\n"), ValidationError);
  EXPECT_THROW(parse_config(" = 3\n"), ValidationError);
}

TEST(Manifest, RoundTripAndPaths) {
  fixture::TempDir dir;
  RunManifest m;
  m.command = "label";
  m.argv = {"label", "--seed", "7"};
  m.seed = 7;
  m.inputs = {"a.jsonl"};
  m.outputs = {"b.jsonl"};
  m.tool_version = tool_version();
  m.exclusions = Json{{"unparseable", 2}};
  const auto path = manifest_path_for(dir / "prefs.jsonl");
  EXPECT_EQ(path.filename(), "prefs.jsonl.manifest.json");
  EXPECT_EQ(manifest_path_for(dir.path()).filename(), "manifest.json");
  write_manifest(m, path);
  const auto back = read_manifest(path);
  EXPECT_EQ(back.argv, m.argv);
  EXPECT_EQ(back.seed, 7u);
  EXPECT_EQ(back.exclusions, m.exclusions);
  EXPECT_EQ(utc_timestamp().size(), 20u);
}
