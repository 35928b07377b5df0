#include "batchcot/chains.hpp"

#include <algorithm>
#include <cctype>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "batchcot/boxed.hpp"
#include "batchcot/error.hpp"

namespace batchcot {

namespace {

bool is_emphasis(char c) { return c == '*' || c == '_' || c == '#' || c == '>' || c == '`'; }
bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Lowercase, drop emphasis characters, collapse whitespace runs.
std::string squash(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (is_emphasis(c)) continue;
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

bool phrase_matches(std::string_view inner, std::string_view phrase) {
  std::string s = squash(inner);
  while (!s.empty() && (s.back() == ':' || s.back() == ' ')) s.pop_back();
  if (s == phrase) return true;
  return s.size() == phrase.size() + 1 && s.starts_with(phrase) && s.back() == 's';
}

struct Line {
  std::size_t begin;
  std::size_t end;  // excludes '\n'
};

std::vector<Line> lines_of(std::string_view text, std::size_t from, std::size_t to) {
  std::vector<Line> lines;
  std::size_t start = from;
  while (start < to) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos || nl > to) nl = to;
    lines.push_back({start, nl});
    start = nl + 1;
  }
  return lines;
}

// All spans of a marker phrase in either bracketed or own-line form.
std::vector<MarkerSpan> find_markers(std::string_view text, std::string_view phrase) {
  std::vector<MarkerSpan> spans;
  for (std::size_t open = text.find('['); open != std::string_view::npos;
       open = text.find('[', open + 1)) {
    const std::size_t close = text.find(']', open);
    if (close == std::string_view::npos) break;
    const std::string_view inner = text.substr(open + 1, close - open - 1);
    if (inner.size() > 40 || inner.find('\n') != std::string_view::npos) continue;
    if (!phrase_matches(inner, phrase)) continue;
    std::size_t begin = open;
    while (begin > 0 && is_emphasis(text[begin - 1])) --begin;
    std::size_t end = close + 1;
    while (end < text.size() && (is_emphasis(text[end]) || text[end] == ':')) ++end;
    spans.push_back({begin, end});
  }
  for (const auto& line : lines_of(text, 0, text.size())) {
    const std::string_view body = text.substr(line.begin, line.end - line.begin);
    if (body.find('[') != std::string_view::npos) continue;
    if (body.size() <= 60 && phrase_matches(body, phrase)) spans.push_back({line.begin, line.end});
  }
  std::sort(spans.begin(), spans.end(),
            [](const MarkerSpan& a, const MarkerSpan& b) { return a.begin < b.begin; });
  return spans;
}

struct Heading {
  std::size_t line_begin;
  std::size_t number;
  bool prefixed;
};

std::optional<Heading> parse_heading(std::string_view text, const Line& line) {
  std::string_view s = text.substr(line.begin, line.end - line.begin);
  std::size_t i = 0;
  auto skip_decor = [&] {
    while (i < s.size() && (is_blank(s[i]) || is_emphasis(s[i]))) ++i;
  };
  skip_decor();
  bool prefixed = false;
  for (std::string_view word : {std::string_view("problem"), std::string_view("question")}) {
    if (s.size() - i >= word.size()) {
      std::string head(s.substr(i, word.size()));
      std::transform(head.begin(), head.end(), head.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      if (head == word) {
        prefixed = true;
        i += word.size();
        skip_decor();
        if (i < s.size() && s[i] == '#') ++i;
        break;
      }
    }
  }
  const std::size_t digits_begin = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == digits_begin || i - digits_begin > 4) return std::nullopt;
  const auto number = static_cast<std::size_t>(std::stoul(std::string(s.substr(digits_begin, i - digits_begin))));
  while (i < s.size() && (s[i] == '*' || s[i] == '_')) ++i;
  if (prefixed && (i >= s.size() || is_blank(s[i]))) return Heading{line.begin, number, prefixed};
  if (i >= s.size() || (s[i] != '.' && s[i] != ')' && s[i] != ':')) return std::nullopt;
  ++i;
  // "1.5 + 2" is arithmetic, not a heading.
  if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
  return Heading{line.begin, number, prefixed};
}

std::optional<std::string> last_boxed(std::string_view text) {
  auto all = extract_boxed(text);
  if (all.empty()) return std::nullopt;
  return std::move(all.back());
}

std::size_t batch_size_of(const CompletionRecord& record) {
  if (!record.envelope.mode.is_batch()) throw InvalidInput("record is not a batch completion");
  return record.envelope.mode.size;
}

}  // namespace

std::string to_string(ChainOrigin::Kind kind) {
  return kind == ChainOrigin::Kind::Vanilla ? "vanilla" : "batch";
}

std::optional<MarkerSpan> find_final_answer_marker(std::string_view text) {
  auto spans = find_markers(text, "final answer");
  if (spans.empty()) return std::nullopt;
  return spans.back();
}

std::optional<MarkerSpan> find_solution_marker(std::string_view text, std::size_t before) {
  std::optional<MarkerSpan> last;
  for (const auto& span : find_markers(text.substr(0, before), "solution process")) last = span;
  return last;
}

FinalAnswers parse_final_answers(std::string_view text, std::size_t k) {
  FinalAnswers out;
  const auto marker = find_final_answer_marker(text);
  if (!marker) {
    out.fallback = true;
    auto boxed = extract_boxed(text);
    const std::size_t take = std::min(k, boxed.size());
    for (std::size_t i = 0; i < take; ++i) {
      out.entries.push_back({i + 1, std::move(boxed[boxed.size() - take + i])});
    }
    return out;
  }
  std::size_t last_position = 0;
  for (auto& m : find_boxed(text.substr(marker->end))) {
    const std::string_view before = text.substr(marker->end, m.begin);
    // Walk back from "\boxed" over spacing, emphasis and "$" to "<n>[.):]".
    std::size_t j = before.size();
    auto skip = [&] {
      while (j > 0 && (is_blank(before[j - 1]) || is_emphasis(before[j - 1]) || before[j - 1] == '$'))
        --j;
    };
    skip();
    if (j == 0 || (before[j - 1] != '.' && before[j - 1] != ')' && before[j - 1] != ':')) continue;
    --j;
    while (j > 0 && (before[j - 1] == '*' || before[j - 1] == '_')) --j;
    std::size_t digits_end = j;
    while (j > 0 && std::isdigit(static_cast<unsigned char>(before[j - 1]))) --j;
    if (j == digits_end || digits_end - j > 4) continue;
    const auto position = static_cast<std::size_t>(std::stoul(std::string(before.substr(j, digits_end - j))));
    if (position < 1 || position > k || position <= last_position) continue;
    last_position = position;
    out.entries.push_back({position, std::move(m.content)});
  }
  return out;
}

FinalAnswers parse_final_answers(const CompletionRecord& record) {
  return parse_final_answers(record.raw_text, batch_size_of(record));
}

BatchSplit split_batch(const CompletionRecord& record, TokenScheme scheme) {
  const std::size_t k = batch_size_of(record);
  const std::string_view text = record.raw_text;

  BatchSplit split;
  const auto final_marker = find_final_answer_marker(text);
  split.region_end = final_marker ? final_marker->begin : text.size();
  if (const auto solution = find_solution_marker(text, split.region_end)) {
    split.region_begin = solution->end;
  }

  std::vector<Heading> prefixed;
  std::vector<Heading> bare;
  for (const auto& line : lines_of(text, split.region_begin, split.region_end)) {
    if (auto h = parse_heading(text, line)) (h->prefixed ? prefixed : bare).push_back(*h);
  }
  const auto& headings = prefixed.empty() ? bare : prefixed;
  std::vector<std::size_t> numbers;
  for (const auto& h : headings) numbers.push_back(h.number);
  bool ordered = numbers.size() == k;
  for (std::size_t i = 0; ordered && i < numbers.size(); ++i) ordered = numbers[i] == i + 1;
  if (!ordered) {
    throw UnsplittableError(
        fmt::format("expected headings 1..{}, found [{}]", k, fmt::join(numbers, ", ")), numbers);
  }

  const FinalAnswers answers = parse_final_answers(text, k);
  split.answers_fallback = answers.fallback;
  for (std::size_t i = 0; i < k; ++i) {
    ReasoningChain chain;
    chain.question_id = record.envelope.question_ids.at(i);
    chain.origin = ChainOrigin::batch(k, i + 1);
    chain.begin = i == 0 ? split.region_begin : headings[i].line_begin;
    chain.end = i + 1 < k ? headings[i + 1].line_begin : split.region_end;
    chain.text = std::string(text.substr(chain.begin, chain.end - chain.begin));
    const auto entry = std::find_if(answers.entries.begin(), answers.entries.end(),
                                    [&](const FinalAnswerEntry& e) { return e.position == i + 1; });
    chain.predicted_answer = entry != answers.entries.end() ? std::optional(entry->answer)
                                                            : last_boxed(chain.text);
    chain.token_count = count_tokens(chain.text, scheme);
    chain.token_scheme = scheme;
    split.chains.push_back(std::move(chain));
  }
  return split;
}

std::vector<ReasoningChain> split_batch_chains(const CompletionRecord& record, TokenScheme scheme) {
  return split_batch(record, scheme).chains;
}

ReasoningChain vanilla_chain(const CompletionRecord& record, TokenScheme scheme) {
  if (record.envelope.mode.is_batch()) throw InvalidInput("record is a batch completion");
  ReasoningChain chain;
  chain.question_id = record.envelope.question_ids.at(0);
  chain.text = record.raw_text;
  chain.origin = ChainOrigin::vanilla();
  chain.predicted_answer = last_boxed(record.raw_text);
  chain.begin = 0;
  chain.end = record.raw_text.size();
  chain.token_count = count_tokens(chain.text, scheme);
  chain.token_scheme = scheme;
  return chain;
}

Json to_json(const ReasoningChain& chain) {
  Json origin{{"kind", to_string(chain.origin.kind)},
              {"size", chain.origin.size},
              {"position", chain.origin.position}};
  Json j{{"question_id", chain.question_id},
         {"text", chain.text},
         {"origin", origin},
         {"predicted_answer", chain.predicted_answer ? Json(*chain.predicted_answer) : Json(nullptr)},
         {"span", Json::array({chain.begin, chain.end})},
         {"token_count", chain.token_count},
         {"token_scheme", to_string(chain.token_scheme)}};
  if (chain.verdict) j["verdict"] = to_string(*chain.verdict);
  return j;
}

ReasoningChain chain_from_json(const Json& j) {
  ReasoningChain chain;
  chain.question_id = j.at("question_id").get<std::string>();
  chain.text = j.at("text").get<std::string>();
  const auto& origin = j.at("origin");
  const auto kind = origin.at("kind").get<std::string>();
  if (kind == "vanilla") {
    chain.origin = ChainOrigin::vanilla();
  } else if (kind == "batch") {
    chain.origin = ChainOrigin::batch(origin.at("size").get<std::size_t>(),
                                      origin.at("position").get<std::size_t>());
    if (chain.origin.position < 1 || chain.origin.position > chain.origin.size) {
      throw InvalidInput("chain position outside its batch");
    }
  } else {
    throw InvalidInput("unknown chain origin: " + kind);
  }
  if (const auto& p = j.at("predicted_answer"); !p.is_null()) chain.predicted_answer = p.get<std::string>();
  if (j.contains("span")) {
    chain.begin = j["span"].at(0).get<std::size_t>();
    chain.end = j["span"].at(1).get<std::size_t>();
  }
  chain.token_count = j.value("token_count", std::int64_t{0});
  chain.token_scheme = token_scheme_from_string(j.value("token_scheme", std::string("whitespace")));
  if (j.contains("verdict")) chain.verdict = verdict_from_string(j["verdict"].get<std::string>());
  return chain;
}

}  // namespace batchcot
