#pragma once

#include <stdexcept>
#include <string>

namespace hjnet {

/// Failure categories. The CLI maps each category to a distinct exit code.
enum class ErrorCategory {
  parse,          // malformed input files
  validation,     // inputs that parse but violate a structural requirement
  admissibility,  // boundary data that cannot be extended
  level,          // a level below the admissible floor for an operation
  consistency,    // an internal certificate failed
  misuse,         // API called outside its preconditions
  domain,         // argument outside its mathematical domain
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(ErrorCategory::parse, what) {}
};
struct ValidationError : Error {
  explicit ValidationError(const std::string& what) : Error(ErrorCategory::validation, what) {}
};
struct AdmissibilityError : Error {
  explicit AdmissibilityError(const std::string& what) : Error(ErrorCategory::admissibility, what) {}
};
struct LevelError : Error {
  explicit LevelError(const std::string& what) : Error(ErrorCategory::level, what) {}
};
struct ConsistencyError : Error {
  explicit ConsistencyError(const std::string& what) : Error(ErrorCategory::consistency, what) {}
};
struct MisuseError : Error {
  explicit MisuseError(const std::string& what) : Error(ErrorCategory::misuse, what) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorCategory::domain, what) {}
};

const char* to_string(ErrorCategory category) noexcept;

/// Process exit code for a failure category: parse=2, admissibility=3,
/// level=4, consistency=5, validation=2, anything else=1.
int exit_code(ErrorCategory category) noexcept;

}  // namespace hjnet
