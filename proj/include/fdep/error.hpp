#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fdep {

enum class ErrorKind {
  kInvalidVertex,
  kInvalidGraph,
  kNoValidCut,
  kSyntax,
  kIncompleteAssignment,
  kIncompleteGame,
  kInvalidStrategy,
  kTooLarge,
  kNotSparse,
  kNoProof,
  kNoCounterexample,
  kInternalSoundness,
  kFormat,
};

const char* ErrorKindName(ErrorKind kind);

// All library failures are reported through this one exception type; the kind
// lets callers (and the CLI exit-code mapping) tell them apart.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error(ErrorKind::kSyntax,
              "syntax error at position " + std::to_string(position) + ": " +
                  message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace fdep
