#include "batchcot/boxed.hpp"

#include <cctype>

namespace batchcot {

std::vector<BoxedMatch> find_boxed(std::string_view text) {
  constexpr std::string_view kCommand = "\\boxed";
  std::vector<BoxedMatch> matches;
  std::size_t pos = 0;
  while ((pos = text.find(kCommand, pos)) != std::string_view::npos) {
    std::size_t open = pos + kCommand.size();
    while (open < text.size() && (text[open] == ' ' || text[open] == '\t')) ++open;
    if (open >= text.size() || text[open] != '{') {
      pos += kCommand.size();
      continue;
    }
    int depth = 0;
    std::size_t close = std::string_view::npos;
    for (std::size_t i = open; i < text.size(); ++i) {
      if (text[i] == '{') {
        ++depth;
      } else if (text[i] == '}' && --depth == 0) {
        close = i;
        break;
      }
    }
    if (close == std::string_view::npos) {
      pos += kCommand.size();
      continue;
    }
    matches.push_back({pos, close + 1, std::string(text.substr(open + 1, close - open - 1))});
    pos = close + 1;
  }
  return matches;
}

std::vector<std::string> extract_boxed(std::string_view text) {
  std::vector<std::string> out;
  for (auto& m : find_boxed(text)) out.push_back(std::move(m.content));
  return out;
}

}  // namespace batchcot
