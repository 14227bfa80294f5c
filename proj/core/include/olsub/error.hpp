#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace olsub {

enum class ErrorCode {
  ConflictingDeclaration,
  ArityMismatch,
  MalformedTerm,
  SyntaxError,
  UndeclaredSymbol,
  DuplicateDefinition,
  NegationPresent,
  VarianceMismatch,
  RecursiveDefinition,
  NotProvable,
  MissingInterpretation,
  AxiomsNotSupported,
  BadN,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `position` is a byte offset into the
/// parsed text for syntax-level errors, and `line` is set when the text was a
/// multi-line source file.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> position = std::nullopt,
        std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> position() const noexcept { return position_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
  std::optional<std::size_t> line_;
};

}  // namespace olsub
