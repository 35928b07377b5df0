#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace batchcot {

enum class TokenScheme { Whitespace, BytesOver4 };

std::string to_string(TokenScheme scheme);
TokenScheme token_scheme_from_string(const std::string& name);

/// Whitespace: number of maximal non-whitespace runs.
/// BytesOver4: ceil(bytes / 4).
std::int64_t count_tokens(std::string_view text, TokenScheme scheme);

}  // namespace batchcot
