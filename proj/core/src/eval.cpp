#include "batchcot/eval.hpp"

#include "batchcot/chains.hpp"
#include "batchcot/error.hpp"
#include "batchcot/grading.hpp"
#include "batchcot/prompt.hpp"

namespace batchcot {

Json to_json(const EvalRecord& r) {
  Json j{{"question_id", r.question_id},
         {"sample", r.sample},
         {"predicted_answer", r.predicted_answer ? Json(*r.predicted_answer) : Json(nullptr)},
         {"verdict", r.verdict ? Json(to_string(*r.verdict)) : Json(nullptr)}};
  if (r.completion) {
    j["tokens"] = r.completion->tokens();
    j["token_source"] = r.completion->token_source();
    j["completion"] = to_json(*r.completion);
  } else {
    j["error"] = r.error;
  }
  return j;
}

Json to_json(const EvalAggregate& a) {
  return Json{{"benchmark", a.benchmark},
              {"accuracy", a.accuracy},
              {"mean_tokens", a.mean_tokens},
              {"n_questions", a.n_questions},
              {"n_samples", a.n_samples},
              {"exclusions", a.exclusions},
              {"samples_per_question", a.samples_per_question},
              {"n_correct", a.n_correct},
              {"total_tokens", a.total_tokens}};
}

EvalAggregate aggregate_from_json(const Json& j) {
  EvalAggregate a;
  a.benchmark = j.at("benchmark").get<std::string>();
  a.accuracy = j.at("accuracy").get<double>();
  a.mean_tokens = j.at("mean_tokens").get<double>();
  a.n_questions = j.value("n_questions", std::size_t{0});
  a.n_samples = j.value("n_samples", std::size_t{0});
  a.exclusions = j.value("exclusions", std::size_t{0});
  a.samples_per_question = j.value("samples_per_question", std::size_t{1});
  a.n_correct = j.value("n_correct", std::size_t{0});
  a.total_tokens = j.value("total_tokens", std::int64_t{0});
  if (a.accuracy < 0.0 || a.accuracy > 1.0) throw InvalidInput("accuracy outside [0, 1] for " + a.benchmark);
  if (a.mean_tokens < 0.0) throw InvalidInput("negative mean_tokens for " + a.benchmark);
  return a;
}

EvalAggregate merge_aggregates(const std::vector<EvalAggregate>& parts) {
  if (parts.empty()) throw InvalidInput("nothing to merge");
  EvalAggregate merged;
  merged.benchmark = parts.front().benchmark;
  merged.samples_per_question = parts.front().samples_per_question;
  for (const auto& p : parts) {
    if (p.benchmark != merged.benchmark) throw InvalidInput("cannot merge different benchmarks");
    merged.n_questions += p.n_questions;
    merged.n_samples += p.n_samples;
    merged.exclusions += p.exclusions;
    merged.n_correct += p.n_correct;
    merged.total_tokens += p.total_tokens;
  }
  if (merged.n_samples > 0) {
    const auto n = static_cast<double>(merged.n_samples);
    merged.accuracy = static_cast<double>(merged.n_correct) / n;
    merged.mean_tokens = static_cast<double>(merged.total_tokens) / n;
  }
  return merged;
}

EvalResult evaluate(const BenchmarkSpec& spec, const InferenceClient& client) {
  spec.validate();
  return evaluate(spec, load_questions(spec.corpus, spec.answer_kind), client);
}

EvalResult evaluate(const BenchmarkSpec& spec, const std::vector<Question>& questions,
                    const InferenceClient& client) {
  spec.validate();
  if (questions.empty()) {
    throw ValidationError(spec.name + ": corpus is empty", {spec.name + ": no questions to evaluate"});
  }
  const std::uint64_t base_seed = client.config().seed.value_or(0);

  std::vector<CompletionJob> jobs;
  jobs.reserve(questions.size() * spec.samples_per_question);
  for (const auto& q : questions) {
    const auto envelope = build_single_prompt(q);
    for (std::size_t s = 0; s < spec.samples_per_question; ++s) jobs.push_back({envelope, base_seed + s});
  }
  auto outcomes = client.complete_all(jobs);

  EvalResult result;
  auto& agg = result.aggregate;
  agg.benchmark = spec.name;
  agg.n_questions = questions.size();
  agg.samples_per_question = spec.samples_per_question;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const Question& q = questions[i / spec.samples_per_question];
    EvalRecord record;
    record.question_id = q.id;
    record.sample = i % spec.samples_per_question;
    if (!outcomes[i].ok()) {
      record.error = outcomes[i].error;
      ++agg.exclusions;
      result.records.push_back(std::move(record));
      continue;
    }
    const auto chain = vanilla_chain(*outcomes[i].record);
    record.predicted_answer = chain.predicted_answer;
    record.verdict = grade(chain, q, spec.answer_kind);
    ++agg.n_samples;
    agg.n_correct += is_correct(*record.verdict);
    agg.total_tokens += outcomes[i].record->tokens();
    record.completion = std::move(outcomes[i].record);
    result.records.push_back(std::move(record));
  }
  if (agg.n_samples > 0) {
    const auto n = static_cast<double>(agg.n_samples);
    agg.accuracy = static_cast<double>(agg.n_correct) / n;
    agg.mean_tokens = static_cast<double>(agg.total_tokens) / n;
  }
  return result;
}

}  // namespace batchcot
