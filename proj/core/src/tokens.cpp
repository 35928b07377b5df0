#include "batchcot/tokens.hpp"

#include <cctype>

#include "batchcot/error.hpp"

namespace batchcot {

std::string to_string(TokenScheme scheme) {
  return scheme == TokenScheme::Whitespace ? "whitespace" : "bytes_over_4";
}

TokenScheme token_scheme_from_string(const std::string& name) {
  if (name == "whitespace") return TokenScheme::Whitespace;
  if (name == "bytes_over_4") return TokenScheme::BytesOver4;
  throw InvalidInput("unknown token scheme: " + name);
}

std::int64_t count_tokens(std::string_view text, TokenScheme scheme) {
  if (scheme == TokenScheme::BytesOver4) return static_cast<std::int64_t>((text.size() + 3) / 4);
  std::int64_t runs = 0;
  bool in_run = false;
  for (char c : text) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_run) ++runs;
    in_run = !space;
  }
  return runs;
}

}  // namespace batchcot
