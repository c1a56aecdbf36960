#include "isospec/error.hpp"

namespace isospec {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::schema: return "schema-violation";
    case ErrorKind::io: return "io";
    case ErrorKind::grid: return "grid";
    case ErrorKind::integration_overflow: return "integration-overflow";
    case ErrorKind::search_failure: return "search-failure";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::consistency: return "consistency";
    case ErrorKind::admissibility: return "admissibility";
    case ErrorKind::coverage: return "coverage";
    case ErrorKind::domain: return "domain";
    case ErrorKind::solvability: return "solvability";
    case ErrorKind::hypothesis: return "hypothesis";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what, std::optional<int> index)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + what),
      kind_(kind),
      message_(what),
      index_(index) {}

void rethrow_with_stage(const Error& e, std::string_view stage) {
  throw Error(e.kind(), "[" + std::string(stage) + "] " + e.message(), e.index());
}

}  // namespace isospec
