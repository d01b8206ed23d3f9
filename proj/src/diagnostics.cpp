#include "unlgen/diagnostics.hpp"

#include <sstream>

namespace unlgen {

std::string severity_name(Severity s) {
  switch (s) {
    case Severity::Note: return "note";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
  }
  return "unknown";
}

std::string Diagnostic::format() const {
  std::ostringstream out;
  if (line > 0) {
    out << line;
    if (column > 0) out << ":" << column;
    out << ": ";
  }
  out << severity_name(severity) << ": [" << code << "] " << message;
  return out.str();
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.severity == Severity::Error) return true;
  return false;
}

namespace {
std::string compose_message(const std::string& kind, const std::string& message,
                            int line, int column) {
  std::ostringstream out;
  if (line > 0) {
    out << line;
    if (column > 0) out << ":" << column;
    out << ": ";
  }
  out << kind << ": " << message;
  return out.str();
}
}  // namespace

ParseError::ParseError(std::string kind, const std::string& message, int line,
                       int column)
    : std::runtime_error(compose_message(kind, message, line, column)),
      kind_(std::move(kind)),
      line_(line),
      column_(column) {}

}  // namespace unlgen
