#include "olsub/error.hpp"

namespace olsub {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConflictingDeclaration: return "ConflictingDeclaration";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::MalformedTerm: return "MalformedTerm";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UndeclaredSymbol: return "UndeclaredSymbol";
    case ErrorCode::DuplicateDefinition: return "DuplicateDefinition";
    case ErrorCode::NegationPresent: return "NegationPresent";
    case ErrorCode::VarianceMismatch: return "VarianceMismatch";
    case ErrorCode::RecursiveDefinition: return "RecursiveDefinition";
    case ErrorCode::NotProvable: return "NotProvable";
    case ErrorCode::MissingInterpretation: return "MissingInterpretation";
    case ErrorCode::AxiomsNotSupported: return "AxiomsNotSupported";
    case ErrorCode::BadN: return "BadN";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message,
                     std::optional<std::size_t> position,
                     std::optional<std::size_t> line) {
  std::string out(to_string(code));
  if (line) out += " at line " + std::to_string(*line);
  if (position) out += (line ? ", column " : " at offset ") + std::to_string(*position);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> position, std::optional<std::size_t> line)
    : std::runtime_error(decorate(code, message, position, line)),
      code_(code),
      position_(position),
      line_(line) {}

}  // namespace olsub
