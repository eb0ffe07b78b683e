#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cvqe {

enum class ErrorKind {
  InvalidInput,
  OutOfRange,
  Domain,
  DegenerateAnsatz,
  ArchiveMismatch,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Exception type for all library failures. The kind is stable and is what
/// the CLI reports in its machine-readable error record.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cvqe
