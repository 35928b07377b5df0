#include "batchcot/fingerprint.hpp"

#include <fmt/format.h>

namespace batchcot {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string prompt_fingerprint(std::string_view prompt_text) {
  return fmt::format("{:016x}", fnv1a64(prompt_text));
}

}  // namespace batchcot
