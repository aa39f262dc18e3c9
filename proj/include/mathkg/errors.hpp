#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mathkg {

enum class ParseErrorKind { Lex, Syntax, Prefix, Datatype, Unsupported };

std::string_view parse_error_kind_name(ParseErrorKind kind) noexcept;

// A positioned error from any of the text front ends (Turtle, query language,
// documentation templates). Line and column are 1-based; columns count code
// points.
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, int column, std::string message);

  ParseErrorKind kind() const noexcept { return kind_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  ParseErrorKind kind_;
  int line_;
  int column_;
  std::string message_;
};

}  // namespace mathkg
