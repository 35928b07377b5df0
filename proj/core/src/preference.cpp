#include "batchcot/preference.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "batchcot/error.hpp"
#include "batchcot/grading.hpp"
#include "batchcot/rng.hpp"

namespace batchcot {

char to_char(Label label) { return "ABC"[index_of(label)]; }

Label label_from_string(std::string_view name) {
  if (name == "A") return Label::A;
  if (name == "B") return Label::B;
  if (name == "C") return Label::C;
  throw InvalidInput("unknown label: " + std::string(name));
}

Label label_sample(ChainOrigin::Kind origin, Verdict verdict) {
  if (verdict != Verdict::Correct) return Label::C;
  return origin == ChainOrigin::Kind::Vanilla ? Label::A : Label::B;
}

std::string to_string(DatasetMode mode) {
  return mode == DatasetMode::PerChain ? "per-chain" : "paired";
}

Json to_json(const PreferenceSample& sample) {
  Json provenance{{"question_id", sample.question_id},
                  {"origin", to_string(sample.origin.kind)},
                  {"batch_size", sample.origin.size},
                  {"position", sample.origin.position}};
  return Json{{"question", sample.question_text},
              {"cot", sample.cot_text},
              {"options", sample.options},
              {"gold_label", std::string(1, to_char(sample.gold_label))},
              {"verdict", to_string(sample.verdict)},
              {"token_count", sample.token_count},
              {"provenance", provenance}};
}

PreferenceSample preference_from_json(const Json& j) {
  PreferenceSample s;
  s.question_text = j.at("question").get<std::string>();
  s.cot_text = j.at("cot").get<std::string>();
  const auto options = j.at("options").get<std::vector<std::string>>();
  if (options.size() != 3) throw InvalidInput("sample must carry exactly three options");
  for (std::size_t i = 0; i < 3; ++i) {
    if (options[i] != kOptionTexts[i]) throw InvalidInput("sample option text differs from the canonical option");
  }
  s.gold_label = label_from_string(j.at("gold_label").get<std::string>());
  s.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  s.token_count = j.value("token_count", std::int64_t{0});
  const auto& p = j.at("provenance");
  s.question_id = p.at("question_id").get<std::string>();
  const auto kind = p.at("origin").get<std::string>();
  s.origin = kind == "vanilla" ? ChainOrigin::vanilla()
                               : ChainOrigin::batch(p.at("batch_size").get<std::size_t>(),
                                                    p.at("position").get<std::size_t>());
  if (s.gold_label != label_sample(s.origin.kind, s.verdict)) {
    throw InvalidInput("gold label inconsistent with origin and verdict for '" + s.question_id + "'");
  }
  return s;
}

std::string render_judge_prompt(const PreferenceSample& sample) {
  return fmt::format(
      "Question:\n{}\n\nReasoning:\n{}\n\n"
      "Evaluate the reasoning above and choose one option:\n"
      "A. {}\nB. {}\nC. {}\n\n"
      "Answer with a single letter.",
      sample.question_text, sample.cot_text, sample.options[0], sample.options[1],
      sample.options[2]);
}

namespace {

bool chain_order(const ReasoningChain& x, const ReasoningChain& y) {
  if (x.question_id != y.question_id) return x.question_id < y.question_id;
  if (x.origin != y.origin) return x.origin < y.origin;
  return x.text < y.text;
}

}  // namespace

PreferenceDataset build_dataset(std::vector<ReasoningChain> chains,
                                const std::vector<Question>& questions,
                                const DatasetOptions& options) {
  std::unordered_map<std::string, const Question*> by_id;
  for (const auto& q : questions) by_id.emplace(q.id, &q);
  std::set<std::string> missing;
  for (const auto& c : chains) {
    if (!by_id.contains(c.question_id)) missing.insert(c.question_id);
  }
  if (!missing.empty()) {
    throw InvalidInput(fmt::format("chains reference unknown question ids: {}", fmt::join(missing, ", ")));
  }

  std::sort(chains.begin(), chains.end(), chain_order);

  PreferenceDataset dataset;
  dataset.seed = options.seed;
  dataset.mode = options.mode;

  auto make_sample = [&](const ReasoningChain& chain) {
    const Question& q = *by_id.at(chain.question_id);
    PreferenceSample s;
    s.question_id = q.id;
    s.question_text = q.text;
    s.cot_text = chain.text;
    s.origin = chain.origin;
    s.verdict = grade(chain, q, options.answer_kind);
    s.gold_label = label_sample(chain.origin.kind, s.verdict);
    s.token_count = chain.token_count;
    return s;
  };

  // Shuffle units: single chains, or whole per-question groups when paired.
  std::vector<std::vector<PreferenceSample>> units;
  if (options.mode == DatasetMode::PerChain) {
    for (const auto& chain : chains) units.push_back({make_sample(chain)});
  } else {
    std::map<std::string, std::vector<const ReasoningChain*>> grouped;
    for (const auto& chain : chains) grouped[chain.question_id].push_back(&chain);
    for (const auto& [id, group] : grouped) {
      const bool has_vanilla = std::any_of(group.begin(), group.end(), [](auto* c) { return !c->origin.is_batch(); });
      const bool has_batch = std::any_of(group.begin(), group.end(), [](auto* c) { return c->origin.is_batch(); });
      if (!has_vanilla || !has_batch) {
        dataset.unpaired_excluded += group.size();
        continue;
      }
      std::vector<PreferenceSample> unit;
      for (const auto* chain : group) unit.push_back(make_sample(*chain));
      units.push_back(std::move(unit));
    }
  }

  Rng rng(options.seed);
  rng.shuffle(std::span<std::vector<PreferenceSample>>(units));
  for (auto& unit : units) {
    for (auto& s : unit) {
      dataset.counts[s.gold_label] += 1;
      if (s.verdict == Verdict::Unparseable) ++dataset.unparseable;
      dataset.samples.push_back(std::move(s));
    }
  }
  return dataset;
}

PreferenceDataset build_dataset(const std::vector<ReasoningChain>& vanilla_chains,
                                const std::vector<ReasoningChain>& batch_chains,
                                const std::vector<Question>& questions,
                                const DatasetOptions& options) {
  std::vector<ReasoningChain> all;
  all.reserve(vanilla_chains.size() + batch_chains.size());
  for (const auto& c : vanilla_chains) {
    if (c.origin.is_batch()) throw InvalidInput("batch chain passed as vanilla for '" + c.question_id + "'");
    all.push_back(c);
  }
  for (const auto& c : batch_chains) {
    if (!c.origin.is_batch()) throw InvalidInput("vanilla chain passed as batch for '" + c.question_id + "'");
    all.push_back(c);
  }
  return build_dataset(std::move(all), questions, options);
}

Json dataset_summary(const PreferenceDataset& dataset) {
  return Json{{"seed", dataset.seed},
              {"mode", to_string(dataset.mode)},
              {"samples", dataset.samples.size()},
              {"label_counts", {{"A", dataset.counts.a}, {"B", dataset.counts.b}, {"C", dataset.counts.c}}},
              {"unparseable", dataset.unparseable},
              {"unpaired_excluded", dataset.unpaired_excluded},
              {"template_version", std::string(kJudgeTemplateVersion)}};
}

}  // namespace batchcot
