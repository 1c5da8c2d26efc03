#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rocaudit {

enum class ErrorKind {
  MissingColumn,
  BadLabel,
  BadScore,
  EmptyInput,
  SingleClass,
  ZeroBaseline,
  ScoreOutsideDomain,
  EmptySample,
  IoFailure,
  InvalidArgument,
};

std::string_view error_name(ErrorKind kind);

// All library failures are reported through this type. `row` is the 1-based
// data row (header excluded) for ingest errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> row = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> row() const noexcept { return row_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> row_;
};

}  // namespace rocaudit
