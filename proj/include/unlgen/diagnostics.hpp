#ifndef UNLGEN_DIAGNOSTICS_HPP
#define UNLGEN_DIAGNOSTICS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace unlgen {

enum class Severity { Note, Warning, Error };

/// A non-fatal finding attached to an input file or a generation run.
/// Fatal conditions are thrown as ParseError instead.
struct Diagnostic {
  Severity severity = Severity::Warning;
  std::string code;     // stable machine-readable kind, e.g. "UnknownRelationLabel"
  std::string message;
  int line = 0;         // 1-based; 0 = not tied to a source line
  int column = 0;

  std::string format() const;
};

std::string severity_name(Severity s);

bool has_errors(const std::vector<Diagnostic>& diags);

/// Hard rejection of an input text. Carries the error kind (one of the
/// enumerated names per format: "UnbalancedBlock", "MalformedRelation",
/// "EmptyUW", "MalformedEntry", "SyntaxError", "UnboundVariable",
/// "EmptyRule", "EmptyCondition", ...) plus a 1-based position.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string kind, const std::string& message, int line, int column = 0);

  const std::string& kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string kind_;
  int line_;
  int column_;
};

}  // namespace unlgen

#endif
