#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace parem {

enum class ErrorCode {
  // regex frontend
  TrailingBackslash,
  StrayRangeDots,
  InvalidCharacter,
  UnbalancedParen,
  EmptySubexpression,
  InvalidRange,
  // automata
  StateExplosion,
  LiteralNotInAlphabet,
  ParseError,
  InvariantViolation,
  // matcher
  SymbolNotInAlphabet,
  MissingRoute,
  // generator / bench
  PlantOverflow,
  ResultMismatch,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. `position` is a byte offset into the pattern or
/// input text, or a 1-based line number for table parse errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> position = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
};

}  // namespace parem
