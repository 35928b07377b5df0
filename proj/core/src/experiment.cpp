#include "batchcot/experiment.hpp"

#include <unordered_map>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "batchcot/chains.hpp"
#include "batchcot/error.hpp"
#include "batchcot/grading.hpp"

namespace batchcot {

GenerationRun generate_completions(const std::vector<Question>& questions, std::size_t batch_size,
                                   const InferenceClient& client, std::uint64_t seed, Grouping grouping) {
  if (batch_size < 1) throw InvalidInput("batch size must be >= 1");
  const QuestionGroups grouped = group_questions(questions, batch_size, grouping, seed);

  GenerationRun run;
  run.batch_size = batch_size;
  run.groups = grouped.groups.size();
  run.short_tail = grouped.has_short_tail;
  for (const auto& q : grouped.dropped) run.dropped_question_ids.push_back(q.id);

  std::vector<CompletionJob> jobs;
  jobs.reserve(grouped.groups.size());
  for (const auto& group : grouped.groups) jobs.push_back({build_prompt(group), std::nullopt});

  auto outcomes = client.complete_all(jobs);
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    auto& outcome = outcomes[i];
    if (outcome.ok()) {
      run.records.push_back(std::move(*outcome.record));
    } else {
      run.failures.push_back({jobs[i].envelope.question_ids, outcome.error, outcome.transport_failure,
                              outcome.attempts.size()});
    }
  }
  return run;
}

std::string ExperimentRow::label() const {
  return batch_size == 1 ? "Vanilla" : fmt::format("Batch-{}", batch_size);
}

ExperimentRow measure_generation(const GenerationRun& run, const std::vector<Question>& questions,
                                 TokenScheme split_scheme) {
  std::unordered_map<std::string, const Question*> by_id;
  for (const auto& q : questions) by_id.emplace(q.id, &q);
  auto gold_of = [&](const std::string& id) -> const Question& {
    const auto it = by_id.find(id);
    if (it == by_id.end()) throw InvalidInput("completion references unknown question '" + id + "'");
    return *it->second;
  };

  ExperimentRow row;
  row.batch_size = run.batch_size;
  row.groups = run.groups;
  row.short_tail = run.short_tail;
  row.requests_ok = run.records.size();
  row.requests_failed = run.failures.size();
  row.questions_dropped = run.dropped_question_ids.size();
  for (const auto& f : run.failures) row.questions_excluded += f.question_ids.size();

  std::int64_t split_tokens = 0;
  std::size_t split_chains = 0;
  for (const auto& record : run.records) {
    const auto& ids = record.envelope.question_ids;
    row.questions_measured += ids.size();
    row.total_tokens += record.tokens();
    if (!record.envelope.mode.is_batch()) {
      const auto chain = vanilla_chain(record, split_scheme);
      split_tokens += chain.token_count;
      ++split_chains;
      row.correct += is_correct(grade(chain, gold_of(chain.question_id)));
      continue;
    }
    const auto answers = parse_final_answers(record);
    for (const auto& entry : answers.entries) {
      const auto& id = ids.at(entry.position - 1);
      row.correct += is_correct(grade_answer(entry.answer, gold_of(id).gold_answer));
    }
    try {
      for (const auto& chain : split_batch_chains(record, split_scheme)) {
        split_tokens += chain.token_count;
        ++split_chains;
      }
    } catch (const UnsplittableError&) {
      ++row.unsplittable;
    }
  }
  if (row.questions_measured > 0) {
    const auto n = static_cast<double>(row.questions_measured);
    row.tokens_per_question = static_cast<double>(row.total_tokens) / n;
    row.accuracy = static_cast<double>(row.correct) / n;
  }
  if (split_chains > 0) {
    row.split_tokens_per_question = static_cast<double>(split_tokens) / static_cast<double>(split_chains);
  }
  return row;
}

ExperimentReport run_batch_experiment(const std::vector<Question>& questions,
                                      const std::vector<std::size_t>& batch_sizes,
                                      const InferenceClient& client, std::uint64_t seed, Grouping grouping) {
  if (batch_sizes.empty()) throw InvalidInput("no batch sizes given");
  for (auto k : batch_sizes) {
    if (k < 1) throw InvalidInput("batch sizes must be >= 1");
  }
  ExperimentReport report;
  report.seed = seed;
  report.grouping = grouping;
  report.endpoint = client.identity();
  report.model = client.config().model;
  report.temperature = client.config().temperature;
  report.max_tokens = client.config().max_tokens;
  for (auto k : batch_sizes) {
    const auto run = generate_completions(questions, k, client, seed, grouping);
    report.rows.push_back(measure_generation(run, questions, client.config().token_scheme));
  }
  return report;
}

Json to_json(const ExperimentRow& row) {
  return Json{{"mode", row.label()},
              {"batch_size", row.batch_size},
              {"groups", row.groups},
              {"requests_ok", row.requests_ok},
              {"requests_failed", row.requests_failed},
              {"questions_measured", row.questions_measured},
              {"questions_excluded", row.questions_excluded},
              {"questions_dropped", row.questions_dropped},
              {"short_tail", row.short_tail},
              {"total_tokens", row.total_tokens},
              {"tokens_per_question", row.tokens_per_question},
              {"split_tokens_per_question",
               row.split_tokens_per_question ? Json(*row.split_tokens_per_question) : Json(nullptr)},
              {"unsplittable", row.unsplittable},
              {"correct", row.correct},
              {"accuracy", row.accuracy}};
}

std::vector<Json> experiment_jsonl(const ExperimentReport& report) {
  std::vector<Json> rows;
  for (const auto& row : report.rows) {
    Json j = to_json(row);
    j["seed"] = report.seed;
    j["grouping"] = to_string(report.grouping);
    j["endpoint"] = report.endpoint;
    j["model"] = report.model;
    j["temperature"] = report.temperature;
    j["max_tokens"] = report.max_tokens;
    rows.push_back(std::move(j));
  }
  return rows;
}

std::string render_experiment_table(const ExperimentReport& report) {
  std::string out = fmt::format("{:<10} {:>9} {:>8} {:>6} {:>12} {:>12} {:>8}\n", "Mode", "Questions",
                                "Requests", "Failed", "Tokens/Q", "Split/Q", "Acc");
  for (const auto& row : report.rows) {
    const std::string split =
        row.split_tokens_per_question ? fmt::format("{:.2f}", *row.split_tokens_per_question) : "-";
    out += fmt::format("{:<10} {:>9} {:>8} {:>6} {:>12.2f} {:>12} {:>7.2f}%", row.label(),
                       row.questions_measured, row.requests_ok + row.requests_failed, row.requests_failed,
                       row.tokens_per_question, split, 100.0 * row.accuracy);
    std::vector<std::string> notes;
    if (row.short_tail) notes.emplace_back("short final group");
    if (row.questions_dropped) notes.push_back(fmt::format("{} dropped", row.questions_dropped));
    if (row.questions_excluded) notes.push_back(fmt::format("{} excluded", row.questions_excluded));
    if (row.unsplittable) notes.push_back(fmt::format("{} unsplittable", row.unsplittable));
    if (!notes.empty()) out += "  (" + fmt::format("{}", fmt::join(notes, ", ")) + ")";
    out += '\n';
  }
  return out;
}

}  // namespace batchcot
