#include "parem/error.hpp"

namespace parem {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::TrailingBackslash: return "TrailingBackslash";
    case ErrorCode::StrayRangeDots: return "StrayRangeDots";
    case ErrorCode::InvalidCharacter: return "InvalidCharacter";
    case ErrorCode::UnbalancedParen: return "UnbalancedParen";
    case ErrorCode::EmptySubexpression: return "EmptySubexpression";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::StateExplosion: return "StateExplosion";
    case ErrorCode::LiteralNotInAlphabet: return "LiteralNotInAlphabet";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::SymbolNotInAlphabet: return "SymbolNotInAlphabet";
    case ErrorCode::MissingRoute: return "MissingRoute";
    case ErrorCode::PlantOverflow: return "PlantOverflow";
    case ErrorCode::ResultMismatch: return "ResultMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> position)
    : std::runtime_error(message), code_(code), position_(position) {}

}  // namespace parem
