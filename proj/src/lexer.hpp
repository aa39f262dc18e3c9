#pragma once

// Tokenizer shared by the Turtle and query-language parsers.

#include <string>
#include <string_view>

#include "mathkg/errors.hpp"

namespace mathkg::detail {

enum class Tok {
  End,
  IriRef,    // <...>, text = IRI without brackets
  PName,     // prefix:local, text = whole name, prefix/local split
  Var,       // ?x or $x, text = name without sigil
  String,    // text = unescaped value
  Integer,
  Decimal,
  At,        // @word, text = word
  Name,      // bare word: keywords, `a`, true/false
  Punct,     // text = the punctuation (single char or "^^", "&&", "||", "!=")
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::string prefix;
  std::string local;
  int line = 1;
  int column = 1;
};

struct LexerOptions {
  bool variables = false;   // accept ?x / $x
  bool at_keywords = true;  // accept @prefix / @lang
};

class Lexer {
 public:
  Lexer(std::string_view text, LexerOptions options);

  const Token& peek();
  Token next();
  // Position just past the last consumed token, for "unexpected end" errors.
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

  [[noreturn]] void fail(ParseErrorKind kind, const Token& at, std::string message) const;

 private:
  Token lex();
  [[noreturn]] void fail_here(ParseErrorKind kind, std::string message) const;

  char cur() const noexcept { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char at(size_t offset) const noexcept {
    return pos_ + offset < text_.size() ? text_[pos_ + offset] : '\0';
  }
  bool eof() const noexcept { return pos_ >= text_.size(); }
  void advance();
  void skip_ws_and_comments();
  void read_utf8_into(std::string& out);
  Token read_string(Token tok);
  Token read_number(Token tok);
  Token read_iriref(Token tok);
  void read_local(std::string& out);
  void read_escape(std::string& out);
  void append_codepoint(std::string& out, unsigned long cp);

  std::string_view text_;
  LexerOptions options_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  bool has_peek_ = false;
  Token peeked_;
};

}  // namespace mathkg::detail
