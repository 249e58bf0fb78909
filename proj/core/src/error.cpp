#include "hjnet/error.hpp"

namespace hjnet {

const char* to_string(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::parse: return "parse";
    case ErrorCategory::validation: return "validation";
    case ErrorCategory::admissibility: return "admissibility";
    case ErrorCategory::level: return "level";
    case ErrorCategory::consistency: return "consistency";
    case ErrorCategory::misuse: return "misuse";
    case ErrorCategory::domain: return "domain";
  }
  return "unknown";
}

int exit_code(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::parse:
    case ErrorCategory::validation: return 2;
    case ErrorCategory::admissibility: return 3;
    case ErrorCategory::level: return 4;
    case ErrorCategory::consistency: return 5;
    default: return 1;
  }
}

}  // namespace hjnet
