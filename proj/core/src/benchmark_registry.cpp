#include "batchcot/benchmark_registry.hpp"

#include <algorithm>
#include <cctype>

#include "batchcot/error.hpp"

namespace batchcot {

void BenchmarkSpec::validate() const {
  if (samples_per_question < 1) throw InvalidInput("samples_per_question must be >= 1");
  if (name.empty()) throw InvalidInput("benchmark needs a name");
}

const std::vector<BenchmarkSpec>& benchmark_registry() {
  static const std::vector<BenchmarkSpec> registry = {
      {"GSM8K", {}, 1, "Grade-school arithmetic word problems.", AnswerKind::Numeric, 0},
      {"MATH-500", {}, 1, "500 competition-style problems across algebra, geometry and number theory.",
       AnswerKind::Numeric, 500},
      {"AIME 2024", {}, 5, "AIME 2024, 30 integer-answer problems.", AnswerKind::Numeric, 30},
      {"AIME 2025", {}, 5, "AIME 2025, 30 integer-answer problems.", AnswerKind::Numeric, 30},
      {"AMC 2023", {}, 1, "40 AMC 2023 problems.", AnswerKind::Numeric, 40},
      {"GPQA-Diamond", {}, 1, "Graduate-level multiple-choice science questions (diamond subset).",
       AnswerKind::ChoiceLetter, 198},
  };
  return registry;
}

std::optional<BenchmarkSpec> find_benchmark(std::string_view name) {
  auto fold = [](std::string_view s) {
    std::string out;
    for (char c : s) {
      if (c == ' ' || c == '-' || c == '_') continue;
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
  };
  const auto key = fold(name);
  for (const auto& spec : benchmark_registry()) {
    if (fold(spec.name) == key) return spec;
  }
  return std::nullopt;
}

}  // namespace batchcot
