#include "rocaudit/error.hpp"

namespace rocaudit {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingColumn: return "MissingColumn";
    case ErrorKind::BadLabel: return "BadLabel";
    case ErrorKind::BadScore: return "BadScore";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::SingleClass: return "SingleClass";
    case ErrorKind::ZeroBaseline: return "ZeroBaseline";
    case ErrorKind::ScoreOutsideDomain: return "ScoreOutsideDomain";
    case ErrorKind::EmptySample: return "EmptySample";
    case ErrorKind::IoFailure: return "IoFailure";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& message,
                     std::optional<std::size_t> row) {
  std::string out(error_name(kind));
  if (row) out += " at row " + std::to_string(*row);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<std::size_t> row)
    : std::runtime_error(decorate(kind, message, row)), kind_(kind), row_(row) {}

}  // namespace rocaudit
