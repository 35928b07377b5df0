#include "batchcot/completion.hpp"

#include "batchcot/error.hpp"

namespace batchcot {

Json to_json(const CompletionRecord& record) {
  Json sampling{{"temperature", record.sampling.temperature},
                {"max_tokens", record.sampling.max_tokens},
                {"seed", record.sampling.seed ? Json(*record.sampling.seed) : Json(nullptr)}};
  return Json{{"envelope", to_json(record.envelope)},
              {"raw_text", record.raw_text},
              {"reported_tokens",
               record.reported_tokens ? Json(*record.reported_tokens) : Json(nullptr)},
              {"counted_tokens", record.counted_tokens},
              {"counted_scheme", to_string(record.counted_scheme)},
              {"tokens", record.tokens()},
              {"token_source", record.token_source()},
              {"sampling", sampling},
              {"endpoint", record.endpoint},
              {"model", record.model},
              {"attempts", record.attempts}};
}

CompletionRecord completion_from_json(const Json& j) {
  CompletionRecord r;
  r.envelope = envelope_from_json(j.at("envelope"));
  r.raw_text = j.at("raw_text").get<std::string>();
  if (const auto& rt = j.at("reported_tokens"); !rt.is_null()) r.reported_tokens = rt.get<std::int64_t>();
  r.counted_tokens = j.at("counted_tokens").get<std::int64_t>();
  if (r.counted_tokens < 0) throw InvalidInput("negative counted_tokens");
  r.counted_scheme = token_scheme_from_string(j.value("counted_scheme", std::string("whitespace")));
  const auto& s = j.at("sampling");
  r.sampling.temperature = s.at("temperature").get<double>();
  r.sampling.max_tokens = s.at("max_tokens").get<std::int64_t>();
  if (const auto& seed = s.at("seed"); !seed.is_null()) r.sampling.seed = seed.get<std::uint64_t>();
  r.endpoint = j.value("endpoint", std::string{});
  r.model = j.value("model", std::string{});
  r.attempts = j.value("attempts", std::size_t{1});
  return r;
}

}  // namespace batchcot
