#pragma once

#include <string>

namespace batchcot {

/// Unparseable means the predicted answer was missing or did not normalize.
enum class Verdict { Correct, Incorrect, Unparseable };

std::string to_string(Verdict verdict);
Verdict verdict_from_string(const std::string& name);

}  // namespace batchcot
