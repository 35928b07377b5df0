#include "batchcot/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "batchcot/benchmark_registry.hpp"
#include "batchcot/chains.hpp"
#include "batchcot/client.hpp"
#include "batchcot/config_file.hpp"
#include "batchcot/error.hpp"
#include "batchcot/eval.hpp"
#include "batchcot/experiment.hpp"
#include "batchcot/grading.hpp"
#include "batchcot/grpo_selfcheck.hpp"
#include "batchcot/grpo_train.hpp"
#include "batchcot/http_backend.hpp"
#include "batchcot/manifest.hpp"
#include "batchcot/mock_engine.hpp"
#include "batchcot/preference.hpp"
#include "batchcot/report.hpp"

namespace batchcot::cli {

namespace fs = std::filesystem;

namespace {

/// Requests that failed while a stage still finished; any makes the exit code 2.
struct EndpointFailures {
  std::size_t transport = 0;
  std::size_t rejected = 0;
  int exit_code() const { return transport + rejected > 0 ? kExitTransport : kExitOk; }
};

const std::vector<std::string> kConfigKeys = {
    "base_url", "model",      "temperature", "max_tokens", "max_concurrency", "max_retries",
    "timeout_ms", "backoff_ms", "token_scheme", "mock",      "seed",            "group"};

template <typename T>
T parse_value(const std::string& key, const std::string& text) {
  T value{};
  std::istringstream in(text);
  in >> value;
  if (in.fail() || !in.eof()) throw InvalidInput(fmt::format("config: bad value for {}: '{}'", key, text));
  return value;
}

/// Flags shared by every stage that talks to an endpoint.
struct EndpointFlags {
  std::string config_path;
  std::string mock_dir;
  std::string base_url;
  std::string model;
  std::string token_scheme;
  double temperature = 0.0;
  std::int64_t max_tokens = 0;
  std::size_t max_concurrency = 0;
  std::size_t max_retries = 0;
  std::int64_t timeout_ms = 0;
  std::int64_t backoff_ms = 0;
  std::map<std::string, CLI::Option*> opts;

  void attach(CLI::App& app) {
    opts["config"] = app.add_option("--config", config_path, "key=value config file");
    opts["mock"] = app.add_option("--mock", mock_dir, "serve completions from a mock script directory");
    opts["base_url"] = app.add_option("--base-url", base_url, "OpenAI-compatible endpoint, e.g. http://host:8000/v1");
    opts["model"] = app.add_option("--model", model, "model name sent with each request");
    opts["temperature"] = app.add_option("--temperature", temperature, "sampling temperature (default 0.6)");
    opts["max_tokens"] = app.add_option("--max-tokens", max_tokens, "completion budget (default 32768)");
    opts["max_concurrency"] = app.add_option("--max-concurrency", max_concurrency, "requests in flight (default 4)");
    opts["max_retries"] = app.add_option("--max-retries", max_retries, "retries on 429/5xx/transport (default 3)");
    opts["timeout_ms"] = app.add_option("--timeout-ms", timeout_ms, "per-request timeout");
    opts["backoff_ms"] = app.add_option("--backoff-ms", backoff_ms, "base retry delay, doubled per attempt");
    opts["token_scheme"] = app.add_option("--token-scheme", token_scheme, "whitespace | bytes_over_4");
  }

  bool given(const std::string& key) const { return opts.at(key)->count() > 0; }
};

/// Defaults, then environment, then config file, then flags.
struct ResolvedEndpoint {
  EndpointConfig cfg;
  std::string mock_dir;
  std::optional<std::uint64_t> config_seed;
  std::optional<std::string> config_group;
};

ResolvedEndpoint resolve_endpoint(const EndpointFlags& flags) {
  ResolvedEndpoint r;
  for (const char* name : {"BATCHCOT_API_KEY", "OPENAI_API_KEY"}) {
    if (const char* key = std::getenv(name); key && *key) {
      r.cfg.api_key = key;
      break;
    }
  }
  if (!flags.config_path.empty()) {
    const auto file = load_config(flags.config_path);
    std::vector<std::string> problems;
    for (const auto& [key, value] : file.values) {
      if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end()) {
        problems.push_back(fmt::format("{}:{}: unknown key '{}'{}", flags.config_path, file.lines.at(key), key,
                                       key == "api_key" ? " (the API key is read from the environment only)" : ""));
      }
    }
    if (!problems.empty()) throw ValidationError(flags.config_path + ": invalid config", problems);
    const auto& v = file.values;
    auto has = [&](const char* k) { return v.count(k) > 0; };
    if (has("base_url")) r.cfg.base_url = v.at("base_url");
    if (has("model")) r.cfg.model = v.at("model");
    if (has("temperature")) r.cfg.temperature = parse_value<double>("temperature", v.at("temperature"));
    if (has("max_tokens")) r.cfg.max_tokens = parse_value<std::int64_t>("max_tokens", v.at("max_tokens"));
    if (has("max_concurrency")) r.cfg.max_concurrency = parse_value<std::size_t>("max_concurrency", v.at("max_concurrency"));
    if (has("max_retries")) r.cfg.max_retries = parse_value<std::size_t>("max_retries", v.at("max_retries"));
    if (has("timeout_ms")) r.cfg.timeout = std::chrono::milliseconds(parse_value<std::int64_t>("timeout_ms", v.at("timeout_ms")));
    if (has("backoff_ms")) r.cfg.backoff_base = std::chrono::milliseconds(parse_value<std::int64_t>("backoff_ms", v.at("backoff_ms")));
    if (has("token_scheme")) r.cfg.token_scheme = token_scheme_from_string(v.at("token_scheme"));
    if (has("mock")) r.mock_dir = v.at("mock");
    if (has("seed")) r.config_seed = parse_value<std::uint64_t>("seed", v.at("seed"));
    if (has("group")) r.config_group = v.at("group");
  }
  if (flags.given("mock")) r.mock_dir = flags.mock_dir;
  if (flags.given("base_url")) r.cfg.base_url = flags.base_url;
  if (flags.given("model")) r.cfg.model = flags.model;
  if (flags.given("temperature")) r.cfg.temperature = flags.temperature;
  if (flags.given("max_tokens")) r.cfg.max_tokens = flags.max_tokens;
  if (flags.given("max_concurrency")) r.cfg.max_concurrency = flags.max_concurrency;
  if (flags.given("max_retries")) r.cfg.max_retries = flags.max_retries;
  if (flags.given("timeout_ms")) r.cfg.timeout = std::chrono::milliseconds(flags.timeout_ms);
  if (flags.given("backoff_ms")) r.cfg.backoff_base = std::chrono::milliseconds(flags.backoff_ms);
  if (flags.given("token_scheme")) r.cfg.token_scheme = token_scheme_from_string(flags.token_scheme);
  return r;
}

std::shared_ptr<ChatBackend> make_backend(const ResolvedEndpoint& r) {
  if (!r.mock_dir.empty()) {
    const fs::path dir(r.mock_dir);
    if (!fs::is_directory(dir)) throw InvalidInput("mock directory not found: " + r.mock_dir);
    auto name = fs::absolute(dir).lexically_normal().filename().string();
    if (name.empty()) name = fs::absolute(dir).lexically_normal().parent_path().filename().string();
    return std::make_shared<MockEngine>(MockScript::load_directory(dir), name);
  }
  return std::make_shared<HttpBackend>(r.cfg.base_url, r.cfg.api_key, r.cfg.timeout);
}

Json endpoint_snapshot(const ResolvedEndpoint& r) {
  Json j = to_json(r.cfg);
  j["mock"] = r.mock_dir.empty() ? Json(nullptr) : Json(r.mock_dir);
  return j;
}

/// Seed and grouping honour the same precedence as endpoint settings.
std::uint64_t resolve_seed(const CLI::Option* flag, std::uint64_t value, const ResolvedEndpoint* r) {
  if (flag->count() > 0) return value;
  if (r && r->config_seed) return *r->config_seed;
  return 0;
}

template <typename T, typename Parse>
std::vector<T> load_rows(const fs::path& path, Parse parse) {
  std::vector<T> out;
  std::vector<std::string> problems;
  for (const auto& line : read_jsonl(path)) {
    try {
      out.push_back(parse(line.value));
    } catch (const std::exception& e) {
      problems.push_back(fmt::format("{}:{}: {}", path.string(), line.line_number, e.what()));
    }
  }
  if (!problems.empty()) throw ValidationError(path.string() + ": invalid records", problems);
  return out;
}

template <typename T>
std::vector<Json> to_rows(const std::vector<T>& items) {
  std::vector<Json> rows;
  rows.reserve(items.size());
  for (const auto& item : items) rows.push_back(to_json(item));
  return rows;
}

/// Collects provenance while a stage runs and writes it beside the outputs.
struct ManifestScope {
  RunManifest m;

  ManifestScope(std::string command, const std::vector<std::string>& args) {
    m.command = std::move(command);
    m.argv = args;
    m.tool_version = tool_version();
    m.started_at = utc_timestamp();
  }

  void finish(const fs::path& next_to) {
    m.finished_at = utc_timestamp();
    write_manifest(m, manifest_path_for(next_to));
  }
};

std::string fmt_tokens(double v) { return fmt::format("{:.2f}", v); }

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::string questions, out_dir, group = "random", answer_kind = "numeric";
  std::vector<std::size_t> batch_sizes{1};
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* group_opt = nullptr;
  EndpointFlags endpoint;
};

int cmd_gen(GenArgs& a, const std::vector<std::string>& args, std::ostream& out) {
  const auto r = resolve_endpoint(a.endpoint);
  ResolvedEndpoint resolved = r;
  const auto seed = resolve_seed(a.seed_opt, a.seed, &r);
  resolved.cfg.seed = seed;
  resolved.cfg.validate();
  const auto grouping = grouping_from_string(a.group_opt->count() == 0 && r.config_group ? *r.config_group : a.group);
  const auto kind = answer_kind_from_string(a.answer_kind);
  const auto questions = load_questions(a.questions, kind);

  InferenceClient client(resolved.cfg, make_backend(resolved));
  ManifestScope scope("gen", args);
  scope.m.seed = seed;
  scope.m.config = Json{{"endpoint", endpoint_snapshot(resolved)},
                        {"batch_sizes", a.batch_sizes},
                        {"grouping", to_string(grouping)},
                        {"answer_kind", to_string(kind)}};
  scope.m.inputs = {a.questions};
  fs::create_directories(a.out_dir);

  EndpointFailures failures;
  Json exclusions = Json::object();
  Json stats = Json::object();
  for (const auto k : a.batch_sizes) {
    const auto run = generate_completions(questions, k, client, seed, grouping);
    const auto path = fs::path(a.out_dir) / fmt::format("completions-k{}.jsonl", k);
    write_jsonl(path, to_rows(run.records));
    scope.m.outputs.push_back(path.string());
    if (!run.failures.empty()) {
      std::vector<Json> rows;
      for (const auto& f : run.failures) {
        rows.push_back(Json{{"question_ids", f.question_ids}, {"error", f.error},
                            {"transport_failure", f.transport_failure}, {"attempts", f.attempts}});
        (f.transport_failure ? failures.transport : failures.rejected) += 1;
      }
      const auto fpath = fs::path(a.out_dir) / fmt::format("failures-k{}.jsonl", k);
      write_jsonl(fpath, rows);
      scope.m.outputs.push_back(fpath.string());
    }
    const auto row = measure_generation(run, questions);
    exclusions[row.label()] = Json{{"failed_requests", run.failures.size()},
                                   {"questions_excluded", row.questions_excluded},
                                   {"questions_dropped", run.dropped_question_ids},
                                   {"short_tail", run.short_tail}};
    stats[row.label()] = Json{{"requests_ok", row.requests_ok},
                              {"questions_measured", row.questions_measured},
                              {"total_tokens", row.total_tokens},
                              {"tokens_per_question", row.tokens_per_question}};
    fmt::print(out, "{:<10} requests={} failed={} tokens/question={}\n", row.label(), row.requests_ok,
               row.requests_failed, fmt_tokens(row.tokens_per_question));
  }
  scope.m.exclusions = exclusions;
  scope.m.stats = stats;
  scope.finish(a.out_dir);
  return failures.exit_code();
}

// ---------------------------------------------------------------- split

struct SplitArgs {
  std::string in, out, token_scheme = "whitespace";
};

int cmd_split(const SplitArgs& a, const std::vector<std::string>& args, std::ostream& out) {
  const auto scheme = token_scheme_from_string(a.token_scheme);
  const auto records = load_rows<CompletionRecord>(a.in, completion_from_json);
  ManifestScope scope("split", args);
  scope.m.inputs = {a.in};
  scope.m.config = Json{{"token_scheme", to_string(scheme)}};

  std::vector<Json> rows;
  Json unsplittable = Json::array();
  std::size_t vanilla = 0, batch = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (rec.envelope.mode.kind == PromptMode::Kind::Vanilla) {
      rows.push_back(to_json(vanilla_chain(rec, scheme)));
      ++vanilla;
      continue;
    }
    try {
      for (const auto& chain : split_batch_chains(rec, scheme)) rows.push_back(to_json(chain));
      ++batch;
    } catch (const UnsplittableError& e) {
      unsplittable.push_back(Json{{"record", i + 1}, {"question_ids", rec.envelope.question_ids},
                                  {"headings_found", e.headings_found()}, {"reason", e.what()}});
    }
  }
  write_jsonl(a.out, rows);
  scope.m.outputs = {a.out};
  const double rate = records.empty() ? 0.0 : static_cast<double>(unsplittable.size()) / static_cast<double>(vanilla + batch + unsplittable.size());
  scope.m.exclusions = Json{{"unsplittable", unsplittable.size()}, {"unsplittable_rate", rate}, {"records", unsplittable}};
  scope.m.stats = Json{{"records", records.size()}, {"vanilla_records", vanilla}, {"batch_records", batch}, {"chains", rows.size()}};
  scope.finish(a.out);
  fmt::print(out, "chains={} vanilla={} batch={} unsplittable={}\n", rows.size(), vanilla, batch, unsplittable.size());
  return kExitOk;
}

// ---------------------------------------------------------------- grade

struct GradeArgs {
  std::string in, questions, out, answer_kind = "numeric";
};

int cmd_grade(const GradeArgs& a, const std::vector<std::string>& args, std::ostream& out) {
  const auto kind = answer_kind_from_string(a.answer_kind);
  const auto questions = load_questions(a.questions, kind);
  auto chains = load_rows<ReasoningChain>(a.in, chain_from_json);
  std::map<std::string, const Question*> by_id;
  for (const auto& q : questions) by_id[q.id] = &q;

  std::vector<std::string> unknown;
  for (const auto& c : chains)
    if (!by_id.count(c.question_id)) unknown.push_back("unknown question id: " + c.question_id);
  if (!unknown.empty()) throw ValidationError(a.in + ": chains reference unknown questions", unknown);

  ManifestScope scope("grade", args);
  scope.m.inputs = {a.in, a.questions};
  scope.m.config = Json{{"answer_kind", to_string(kind)}};
  std::map<std::string, std::size_t> counts{{"correct", 0}, {"incorrect", 0}, {"unparseable", 0}};
  for (auto& c : chains) {
    c.verdict = grade(c, *by_id.at(c.question_id), kind);
    ++counts[to_string(*c.verdict)];
  }
  write_jsonl(a.out, to_rows(chains));
  scope.m.outputs = {a.out};
  scope.m.stats = Json(counts);
  scope.m.exclusions = Json{{"unparseable", counts["unparseable"]}};
  scope.finish(a.out);
  fmt::print(out, "correct={} incorrect={} unparseable={}\n", counts["correct"], counts["incorrect"],
             counts["unparseable"]);
  return kExitOk;
}

// ---------------------------------------------------------------- label

struct LabelArgs {
  std::vector<std::string> in;
  std::string questions, out, answer_kind = "numeric";
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  bool paired = false;
  bool per_chain = false;
};

int cmd_label(const LabelArgs& a, const std::vector<std::string>& args, std::ostream& out) {
  const auto kind = answer_kind_from_string(a.answer_kind);
  const auto questions = load_questions(a.questions, kind);
  std::vector<ReasoningChain> chains;
  for (const auto& path : a.in) {
    auto part = load_rows<ReasoningChain>(path, chain_from_json);
    chains.insert(chains.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  DatasetOptions opts;
  opts.seed = resolve_seed(a.seed_opt, a.seed, nullptr);
  opts.mode = a.paired ? DatasetMode::Paired : DatasetMode::PerChain;
  opts.answer_kind = kind;

  ManifestScope scope("label", args);
  scope.m.seed = opts.seed;
  scope.m.inputs = a.in;
  scope.m.inputs.push_back(a.questions);
  const auto dataset = build_dataset(std::move(chains), questions, opts);
  write_jsonl(a.out, to_rows(dataset.samples));
  scope.m.outputs = {a.out};
  scope.m.config = Json{{"mode", to_string(opts.mode)}, {"answer_kind", to_string(kind)},
                        {"template_version", std::string(kJudgeTemplateVersion)}};
  scope.m.stats = dataset_summary(dataset);
  scope.m.exclusions = Json{{"unparseable", dataset.unparseable}, {"unpaired_excluded", dataset.unpaired_excluded}};
  scope.finish(a.out);
  fmt::print(out, "samples={} A={} B={} C={}\n", dataset.samples.size(), dataset.counts.a, dataset.counts.b,
             dataset.counts.c);
  return kExitOk;
}

// ---------------------------------------------------------------- grpo-check

struct CheckArgs {
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_grpo_check(const CheckArgs& a, const std::vector<std::string>& args, std::ostream& out) {
  ManifestScope scope("grpo-check", args);
  scope.m.seed = a.seed;
  const auto results = run_grpo_selfcheck(a.seed);
  bool all = true;
  Json rows = Json::array();
  for (const auto& r : results) {
    fmt::print(out, "{} {}{}{}\n", r.passed ? "PASS" : "FAIL", r.name, r.detail.empty() ? "" : ": ", r.detail);
    all = all && r.passed;
    rows.push_back(Json{{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  if (!a.out.empty()) {
    write_text_file(a.out, rows.dump(2) + "\n");
    scope.m.outputs = {a.out};
    scope.m.stats = Json{{"checks", results.size()}, {"all_passed", all}};
    scope.finish(a.out);
  }
  return all ? kExitOk : kExitInvalid;
}

// ---------------------------------------------------------------- grpo-train-toy

struct TrainArgs {
  std::string in, out_dir, advantage = "mean-std", objective = "sampled";
  std::size_t synthetic = 1000;
  std::uint64_t seed = 0;
  GrpoConfig cfg;
};

int cmd_train(TrainArgs& a, const std::vector<std::string>& args, std::ostream& out) {
  a.cfg.advantage_mode = advantage_mode_from_string(a.advantage);
  a.cfg.objective_mode = objective_mode_from_string(a.objective);
  a.cfg.validate();
  ManifestScope scope("grpo-train-toy", args);
  scope.m.seed = a.seed;
  std::vector<PreferenceSample> dataset;
  if (!a.in.empty()) {
    dataset = load_rows<PreferenceSample>(a.in, preference_from_json);
    scope.m.inputs = {a.in};
  } else {
    dataset = make_toy_dataset(a.synthetic, a.seed);
  }
  const auto features = fit_feature_map(dataset, a.seed);
  const auto result = train_toy(dataset, features, a.cfg, a.seed);

  fs::create_directories(a.out_dir);
  const auto curve_path = fs::path(a.out_dir) / "curve.csv";
  const auto policy_path = fs::path(a.out_dir) / "policy.txt";
  {
    std::ostringstream curve, ckpt;
    write_curve_csv(curve, result.curve);
    write_checkpoint(ckpt, result.policy, a.seed, a.cfg);
    write_text_file(curve_path, curve.str());
    write_text_file(policy_path, ckpt.str());
  }
  scope.m.outputs = {curve_path.string(), policy_path.string()};
  scope.m.config = Json{{"grpo", to_json(a.cfg)},
                        {"dataset", a.in.empty() ? Json{{"synthetic", a.synthetic}} : Json{{"path", a.in}}},
                        {"features", Json{{"mean_tokens", features.mean_tokens}, {"signal", features.signal},
                                          {"noise", features.noise}}}};
  const double final_prob = result.curve.empty() ? 0.0 : result.curve.back().mean_gold_prob;
  scope.m.stats = Json{{"samples", dataset.size()}, {"steps", result.curve.size()}, {"final_mean_gold_prob", final_prob}};
  scope.finish(a.out_dir);
  fmt::print(out, "samples={} steps={} mean_gold_prob={:.6f}\n", dataset.size(), result.curve.size(), final_prob);
  return kExitOk;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string benchmark, corpus, out, aggregate_out, answer_kind;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  EndpointFlags endpoint;
};

int cmd_eval(EvalArgs& a, const std::vector<std::string>& args, std::ostream& out) {
  auto resolved = resolve_endpoint(a.endpoint);
  const auto seed = resolve_seed(a.seed_opt, a.seed, &resolved);
  resolved.cfg.seed = seed;
  resolved.cfg.validate();

  BenchmarkSpec spec;
  if (auto known = find_benchmark(a.benchmark)) {
    spec = *known;
  } else {
    spec.name = a.benchmark;
    spec.description = "user-defined benchmark";
  }
  spec.corpus = a.corpus;
  if (a.samples > 0) spec.samples_per_question = a.samples;
  if (!a.answer_kind.empty()) spec.answer_kind = answer_kind_from_string(a.answer_kind);
  spec.validate();
  const auto questions = load_questions(spec.corpus, spec.answer_kind);

  InferenceClient client(resolved.cfg, make_backend(resolved));
  ManifestScope scope("eval", args);
  scope.m.seed = seed;
  scope.m.inputs = {a.corpus};
  scope.m.config = Json{{"endpoint", endpoint_snapshot(resolved)},
                        {"benchmark", spec.name},
                        {"samples_per_question", spec.samples_per_question},
                        {"answer_kind", to_string(spec.answer_kind)}};
  const auto result = evaluate(spec, questions, client);
  const std::string agg_path = a.aggregate_out.empty() ? a.out + ".aggregate.jsonl" : a.aggregate_out;
  write_jsonl(a.out, to_rows(result.records));
  write_jsonl(agg_path, {to_json(result.aggregate)});
  scope.m.outputs = {a.out, agg_path};

  EndpointFailures failures;
  failures.rejected = result.aggregate.exclusions;
  scope.m.exclusions = Json{{"failed_samples", result.aggregate.exclusions}};
  scope.m.stats = to_json(result.aggregate);
  scope.finish(a.out);
  out << render_report({result.aggregate});
  fmt::print(out, "samples={} exclusions={}\n", result.aggregate.n_samples, result.aggregate.exclusions);
  return failures.exit_code();
}

// ---------------------------------------------------------------- report

struct ReportArgs {
  std::vector<std::string> in, baseline;
  std::string out, csv;
};

std::vector<EvalAggregate> load_aggregates(const std::vector<std::string>& paths) {
  std::vector<EvalAggregate> out;
  for (const auto& p : paths) {
    auto part = load_rows<EvalAggregate>(p, aggregate_from_json);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

int cmd_report(const ReportArgs& a, const std::vector<std::string>& args, std::ostream& out) {
  ManifestScope scope("report", args);
  const auto aggregates = load_aggregates(a.in);
  std::optional<std::vector<EvalAggregate>> baseline;
  if (!a.baseline.empty()) baseline = load_aggregates(a.baseline);
  scope.m.inputs = a.in;
  scope.m.inputs.insert(scope.m.inputs.end(), a.baseline.begin(), a.baseline.end());

  const auto text = render_report(aggregates, baseline);
  out << text;
  if (!a.out.empty()) {
    write_text_file(a.out, text);
    scope.m.outputs.push_back(a.out);
  }
  if (!a.csv.empty()) {
    write_text_file(a.csv, render_report_csv(aggregates, baseline));
    scope.m.outputs.push_back(a.csv);
  }
  if (!scope.m.outputs.empty()) scope.finish(scope.m.outputs.front());
  return kExitOk;
}

// ---------------------------------------------------------------- batch-experiment

struct ExperimentArgs {
  std::string questions, out, table, group = "random", answer_kind = "numeric";
  std::vector<std::size_t> batch_sizes{1, 2, 3, 5, 10, 15};
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* group_opt = nullptr;
  EndpointFlags endpoint;
};

int cmd_experiment(ExperimentArgs& a, const std::vector<std::string>& args, std::ostream& out) {
  auto resolved = resolve_endpoint(a.endpoint);
  const auto seed = resolve_seed(a.seed_opt, a.seed, &resolved);
  resolved.cfg.seed = seed;
  resolved.cfg.validate();
  const auto grouping =
      grouping_from_string(a.group_opt->count() == 0 && resolved.config_group ? *resolved.config_group : a.group);
  const auto questions = load_questions(a.questions, answer_kind_from_string(a.answer_kind));

  InferenceClient client(resolved.cfg, make_backend(resolved));
  ManifestScope scope("batch-experiment", args);
  scope.m.seed = seed;
  scope.m.inputs = {a.questions};
  scope.m.config = Json{{"endpoint", endpoint_snapshot(resolved)},
                        {"batch_sizes", a.batch_sizes},
                        {"grouping", to_string(grouping)}};
  const auto report = run_batch_experiment(questions, a.batch_sizes, client, seed, grouping);
  write_jsonl(a.out, experiment_jsonl(report));
  scope.m.outputs = {a.out};
  const auto table = render_experiment_table(report);
  if (!a.table.empty()) {
    write_text_file(a.table, table);
    scope.m.outputs.push_back(a.table);
  }
  Json exclusions = Json::object();
  EndpointFailures failures;
  for (const auto& row : report.rows) {
    exclusions[row.label()] = Json{{"requests_failed", row.requests_failed},
                                   {"questions_excluded", row.questions_excluded},
                                   {"questions_dropped", row.questions_dropped},
                                   {"unsplittable", row.unsplittable}};
    failures.rejected += row.requests_failed;
  }
  scope.m.exclusions = exclusions;
  scope.finish(a.out);
  out << table;
  return failures.exit_code();
}

void add_seed(CLI::App& app, std::uint64_t& seed, CLI::Option*& opt) {
  opt = app.add_option("--seed", seed, "seed for grouping, shuffling and sampling (default 0)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Batch chain-of-thought toolkit: prompting, splitting, grading, preference data, GRPO checks, evaluation."};
  app.name("batchcot");
  app.footer("Exit codes: 0 success, 1 validation or usage error, 2 endpoint/transport failure.");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Collect vanilla and batch completions for a question corpus");
  gen_cmd->add_option("--questions", gen.questions, "question corpus (JSONL)")->required();
  gen_cmd->add_option("--batch-size", gen.batch_sizes, "questions per prompt; repeat for several (1 = vanilla)")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--out-dir", gen.out_dir, "directory for completions-k<N>.jsonl")->required();
  gen.group_opt = gen_cmd->add_option("--group", gen.group, "random | sequential");
  gen_cmd->add_option("--answer-kind", gen.answer_kind, "numeric | choice-letter");
  add_seed(*gen_cmd, gen.seed, gen.seed_opt);
  gen.endpoint.attach(*gen_cmd);

  SplitArgs split;
  auto* split_cmd = app.add_subcommand("split", "Split batch completions into per-question chains");
  split_cmd->add_option("--in", split.in, "completion records (JSONL)")->required();
  split_cmd->add_option("--out", split.out, "chains (JSONL)")->required();
  split_cmd->add_option("--token-scheme", split.token_scheme, "whitespace | bytes_over_4");

  GradeArgs grade_args;
  auto* grade_cmd = app.add_subcommand("grade", "Grade chains against gold answers");
  grade_cmd->add_option("--in", grade_args.in, "chains (JSONL)")->required();
  grade_cmd->add_option("--questions", grade_args.questions, "question corpus (JSONL)")->required();
  grade_cmd->add_option("--out", grade_args.out, "graded chains (JSONL)")->required();
  grade_cmd->add_option("--answer-kind", grade_args.answer_kind, "numeric | choice-letter");

  LabelArgs label;
  auto* label_cmd = app.add_subcommand("label", "Build the A/B/C preference dataset");
  label_cmd->add_option("--in", label.in, "chains (JSONL); repeat for several files")->required();
  label_cmd->add_option("--questions", label.questions, "question corpus (JSONL)")->required();
  label_cmd->add_option("--out", label.out, "preference samples (JSONL)")->required();
  label_cmd->add_option("--answer-kind", label.answer_kind, "numeric | choice-letter");
  add_seed(*label_cmd, label.seed, label.seed_opt);
  auto* paired = label_cmd->add_flag("--paired", label.paired, "keep only questions with both vanilla and batch chains");
  auto* per_chain = label_cmd->add_flag("--per-chain", label.per_chain, "one sample per chain (default)");
  paired->excludes(per_chain);

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("grpo-check", "Verify GRPO gradients, advantages and KL properties");
  check_cmd->add_option("--seed", check.seed, "seed for the random configurations");
  check_cmd->add_option("--out", check.out, "write results as JSON");

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("grpo-train-toy", "Train the linear toy judge policy with GRPO");
  train_cmd->add_option("--in", train.in, "preference samples (JSONL); synthetic data when omitted");
  train_cmd->add_option("--synthetic", train.synthetic, "synthetic sample count when --in is absent");
  train_cmd->add_option("--out-dir", train.out_dir, "directory for curve.csv and policy.txt")->required();
  train_cmd->add_option("--seed", train.seed, "training seed");
  train_cmd->add_option("--steps", train.cfg.steps, "SGD steps");
  train_cmd->add_option("--group-size", train.cfg.group_size, "rollouts per state (G)");
  train_cmd->add_option("--batch-size", train.cfg.batch_size, "states per step");
  train_cmd->add_option("--beta", train.cfg.beta, "KL coefficient (default 0.01, a convention)");
  train_cmd->add_option("--lr", train.cfg.learning_rate, "learning rate");
  train_cmd->add_option("--advantage", train.advantage, "mean-std | mean-only");
  train_cmd->add_option("--objective", train.objective, "sampled | all-labels");

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate accuracy and token usage on one benchmark");
  eval_cmd->add_option("--benchmark", eval_args.benchmark, "registry name (GSM8K, MATH-500, AIME 2024, ...)")->required();
  eval_cmd->add_option("--corpus", eval_args.corpus, "question corpus (JSONL)")->required();
  eval_cmd->add_option("--samples", eval_args.samples, "samples per question (registry default otherwise)");
  eval_cmd->add_option("--answer-kind", eval_args.answer_kind, "override the registry answer kind");
  eval_cmd->add_option("--out", eval_args.out, "per-sample records (JSONL)")->required();
  eval_cmd->add_option("--aggregate-out", eval_args.aggregate_out, "aggregate (JSONL, default <out>.aggregate.jsonl)");
  add_seed(*eval_cmd, eval_args.seed, eval_args.seed_opt);
  eval_args.endpoint.attach(*eval_cmd);

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Render per-benchmark aggregates as a table");
  report_cmd->add_option("--in", report.in, "aggregates (JSONL); repeat for several files")->required();
  report_cmd->add_option("--baseline", report.baseline, "baseline aggregates for overall deltas");
  report_cmd->add_option("--out", report.out, "write the table here as well");
  report_cmd->add_option("--csv", report.csv, "write CSV");

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("batch-experiment", "Measure tokens per question and accuracy across batch sizes");
  exp_cmd->add_option("--questions", exp.questions, "question corpus (JSONL)")->required();
  exp_cmd->add_option("--batch-size", exp.batch_sizes, "batch sizes (default 1 2 3 5 10 15)")->check(CLI::PositiveNumber);
  exp_cmd->add_option("--out", exp.out, "report rows (JSONL)")->required();
  exp_cmd->add_option("--table", exp.table, "write the text table here as well");
  exp.group_opt = exp_cmd->add_option("--group", exp.group, "random | sequential");
  exp_cmd->add_option("--answer-kind", exp.answer_kind, "numeric | choice-letter");
  add_seed(*exp_cmd, exp.seed, exp.seed_opt);
  exp.endpoint.attach(*exp_cmd);

  std::string manifest_path;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run a stage from its manifest");
  replay_cmd->add_option("manifest", manifest_path, "manifest.json written by an earlier run")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, args, out);
    if (*split_cmd) return cmd_split(split, args, out);
    if (*grade_cmd) return cmd_grade(grade_args, args, out);
    if (*label_cmd) return cmd_label(label, args, out);
    if (*check_cmd) return cmd_grpo_check(check, args, out);
    if (*train_cmd) return cmd_train(train, args, out);
    if (*eval_cmd) return cmd_eval(eval_args, args, out);
    if (*report_cmd) return cmd_report(report, args, out);
    if (*exp_cmd) return cmd_experiment(exp, args, out);
    if (*replay_cmd) {
      const auto m = read_manifest(manifest_path);
      if (m.argv.empty() || m.argv.front() == "replay") throw InvalidInput("manifest has nothing to replay");
      return run(m.argv, out, err);
    }
  } catch (const ValidationError& e) {
    fmt::print(err, "error: {}\n", e.what());
    for (const auto& d : e.diagnostics()) fmt::print(err, "  {}\n", d);
    return kExitInvalid;
  } catch (const UnsplittableError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitInvalid;
  } catch (const InvalidInput& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitInvalid;
  } catch (const TransportError& e) {
    fmt::print(err, "transport error: {} ({} attempts)\n", e.what(), e.attempts().size());
    return kExitTransport;
  } catch (const RequestError& e) {
    fmt::print(err, "request error: {} (status {})\n", e.what(), e.status());
    return kExitTransport;
  } catch (const nlohmann::json::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitInvalid;
  } catch (const fs::filesystem_error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace batchcot::cli
