#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace batchcot {

struct BoxedMatch {
  std::size_t begin = 0;  // offset of the backslash in "\boxed"
  std::size_t end = 0;    // one past the closing brace
  std::string content;
};

/// Every terminated \boxed{...} group, left to right, non-overlapping.
/// Braces are matched by depth so nested groups are kept verbatim; a group
/// whose brace never closes is skipped and scanning resumes after it.
std::vector<BoxedMatch> find_boxed(std::string_view text);

std::vector<std::string> extract_boxed(std::string_view text);

}  // namespace batchcot
