#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace batchcot {

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

/// Stable prompt fingerprint: 16 lowercase hex digits of fnv1a64.
std::string prompt_fingerprint(std::string_view prompt_text);

}  // namespace batchcot
