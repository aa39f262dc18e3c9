#include "lexer.hpp"

#include <cctype>

namespace mathkg {

std::string_view parse_error_kind_name(ParseErrorKind kind) noexcept {
  switch (kind) {
    case ParseErrorKind::Lex: return "lex";
    case ParseErrorKind::Syntax: return "syntax";
    case ParseErrorKind::Prefix: return "prefix";
    case ParseErrorKind::Datatype: return "datatype";
    case ParseErrorKind::Unsupported: return "unsupported";
  }
  return "syntax";
}

ParseError::ParseError(ParseErrorKind kind, int line, int column, std::string message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " +
                         std::string(parse_error_kind_name(kind)) + " error: " + message),
      kind_(kind),
      line_(line),
      column_(column),
      message_(std::move(message)) {}

namespace detail {

namespace {

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Lexer::Lexer(std::string_view text, LexerOptions options) : text_(text), options_(options) {
  // A leading byte-order mark is not content.
  if (text_.starts_with("\xEF\xBB\xBF")) pos_ = 3;
}

void Lexer::fail(ParseErrorKind kind, const Token& at, std::string message) const {
  throw ParseError(kind, at.line, at.column, std::move(message));
}

void Lexer::fail_here(ParseErrorKind kind, std::string message) const {
  throw ParseError(kind, line_, column_, std::move(message));
}

void Lexer::advance() {
  if (eof()) return;
  auto b = static_cast<unsigned char>(text_[pos_]);
  ++pos_;
  if (b == '\n') {
    ++line_;
    column_ = 1;
  } else if ((b & 0xC0) != 0x80) {
    ++column_;
  }
}

void Lexer::skip_ws_and_comments() {
  while (!eof()) {
    char c = cur();
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      advance();
    } else if (c == '#') {
      while (!eof() && cur() != '\n') advance();
    } else {
      break;
    }
  }
}

const Token& Lexer::peek() {
  if (!has_peek_) {
    peeked_ = lex();
    has_peek_ = true;
  }
  return peeked_;
}

Token Lexer::next() {
  if (has_peek_) {
    has_peek_ = false;
    return std::move(peeked_);
  }
  return lex();
}

void Lexer::append_codepoint(std::string& out, unsigned long cp) {
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    fail_here(ParseErrorKind::Lex, "escape denotes an invalid code point");
  }
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

void Lexer::read_utf8_into(std::string& out) {
  auto b0 = static_cast<unsigned char>(cur());
  if (b0 < 0x80) {
    out += static_cast<char>(b0);
    advance();
    return;
  }
  int extra;
  unsigned long cp;
  if ((b0 & 0xE0) == 0xC0) {
    extra = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    extra = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    extra = 3;
    cp = b0 & 0x07;
  } else {
    fail_here(ParseErrorKind::Lex, "invalid UTF-8 byte");
  }
  for (int i = 1; i <= extra; ++i) {
    auto b = static_cast<unsigned char>(at(static_cast<size_t>(i)));
    if ((b & 0xC0) != 0x80) fail_here(ParseErrorKind::Lex, "truncated UTF-8 sequence");
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr unsigned long kMin[] = {0, 0x80, 0x800, 0x10000};
  if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    fail_here(ParseErrorKind::Lex, "invalid UTF-8 sequence");
  }
  for (int i = 0; i <= extra; ++i) {
    out += cur();
    advance();
  }
}

void Lexer::read_escape(std::string& out) {
  // cur() == '\\'
  advance();
  char c = cur();
  switch (c) {
    case 't': out += '\t'; break;
    case 'b': out += '\b'; break;
    case 'n': out += '\n'; break;
    case 'r': out += '\r'; break;
    case 'f': out += '\f'; break;
    case '"': out += '"'; break;
    case '\'': out += '\''; break;
    case '\\': out += '\\'; break;
    case 'u':
    case 'U': {
      int digits = c == 'u' ? 4 : 8;
      unsigned long cp = 0;
      for (int i = 1; i <= digits; ++i) {
        int v = hex_value(at(static_cast<size_t>(i)));
        if (v < 0) fail_here(ParseErrorKind::Lex, "malformed \\u escape");
        cp = cp * 16 + static_cast<unsigned long>(v);
      }
      append_codepoint(out, cp);
      for (int i = 0; i < digits; ++i) advance();
      break;
    }
    default:
      fail_here(ParseErrorKind::Lex, "unknown escape sequence");
  }
  advance();
}

Token Lexer::read_string(Token tok) {
  char quote = cur();
  bool long_form = at(1) == quote && at(2) == quote;
  advance();
  if (long_form) {
    advance();
    advance();
  }
  std::string value;
  while (true) {
    if (eof()) fail(ParseErrorKind::Lex, tok, "unterminated string literal");
    char c = cur();
    if (c == quote) {
      if (!long_form) {
        advance();
        break;
      }
      if (at(1) == quote && at(2) == quote) {
        advance();
        advance();
        advance();
        break;
      }
      value += c;
      advance();
    } else if (c == '\\') {
      read_escape(value);
    } else if ((c == '\n' || c == '\r') && !long_form) {
      fail_here(ParseErrorKind::Lex, "line break in string literal");
    } else {
      read_utf8_into(value);
    }
  }
  tok.kind = Tok::String;
  tok.text = std::move(value);
  return tok;
}

Token Lexer::read_number(Token tok) {
  std::string text;
  if (cur() == '+' || cur() == '-') {
    text += cur();
    advance();
  }
  while (is_digit(cur())) {
    text += cur();
    advance();
  }
  bool decimal = false;
  if (cur() == '.' && is_digit(at(1))) {
    decimal = true;
    text += '.';
    advance();
    while (is_digit(cur())) {
      text += cur();
      advance();
    }
  }
  if (cur() == 'e' || cur() == 'E') {
    fail(ParseErrorKind::Datatype, tok, "double literals are not supported");
  }
  tok.kind = decimal ? Tok::Decimal : Tok::Integer;
  tok.text = std::move(text);
  return tok;
}

Token Lexer::read_iriref(Token tok) {
  advance();  // '<'
  std::string value;
  while (true) {
    if (eof()) fail(ParseErrorKind::Lex, tok, "unterminated IRI");
    char c = cur();
    if (c == '>') {
      advance();
      break;
    }
    auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
        c == '`' || c == '\\') {
      fail_here(ParseErrorKind::Lex, "invalid character in IRI");
    }
    read_utf8_into(value);
  }
  tok.kind = Tok::IriRef;
  tok.text = std::move(value);
  return tok;
}

void Lexer::read_local(std::string& out) {
  while (true) {
    char c = cur();
    if (is_name_char(c)) {
      out += c;
      advance();
    } else if (c == '.' && is_name_char(at(1)) && !out.empty()) {
      out += c;
      advance();
    } else {
      break;
    }
  }
}

Token Lexer::lex() {
  skip_ws_and_comments();
  Token tok;
  tok.line = line_;
  tok.column = column_;
  if (eof()) return tok;

  char c = cur();
  if (c == '<') {
    if (options_.variables && (at(1) == '=' || at(1) == ' ')) {
      fail_here(ParseErrorKind::Unsupported, "comparison operators are not in the supported subset");
    }
    return read_iriref(std::move(tok));
  }
  if (c == '"' || c == '\'') return read_string(std::move(tok));
  if (is_digit(c) || ((c == '+' || c == '-') && (is_digit(at(1)) || (at(1) == '.' && is_digit(at(2))))) ||
      (c == '.' && is_digit(at(1)))) {
    return read_number(std::move(tok));
  }
  if ((c == '?' || c == '$') && options_.variables) {
    advance();
    std::string name;
    while (is_name_char(cur()) && cur() != '-') {
      name += cur();
      advance();
    }
    if (name.empty()) fail(ParseErrorKind::Lex, tok, "empty variable name");
    tok.kind = Tok::Var;
    tok.text = std::move(name);
    return tok;
  }
  if (c == '@') {
    if (!options_.at_keywords) fail_here(ParseErrorKind::Lex, "unexpected '@'");
    advance();
    std::string word;
    while (std::isalnum(static_cast<unsigned char>(cur())) || cur() == '-') {
      word += cur();
      advance();
    }
    if (word.empty()) fail(ParseErrorKind::Lex, tok, "expected a word after '@'");
    tok.kind = Tok::At;
    tok.text = std::move(word);
    return tok;
  }
  if (is_name_start(c) || c == ':') {
    std::string word;
    while (is_name_char(cur()) || (cur() == '.' && is_name_char(at(1)) && !word.empty())) {
      word += cur();
      advance();
    }
    if (cur() == ':') {
      advance();
      tok.kind = Tok::PName;
      tok.prefix = word;
      read_local(tok.local);
      tok.text = tok.prefix + ":" + tok.local;
      return tok;
    }
    tok.kind = Tok::Name;
    tok.text = std::move(word);
    return tok;
  }
  if (c == '^' && at(1) == '^') {
    advance();
    advance();
    tok.kind = Tok::Punct;
    tok.text = "^^";
    return tok;
  }
  if ((c == '&' && at(1) == '&') || (c == '|' && at(1) == '|') || (c == '!' && at(1) == '=')) {
    tok.kind = Tok::Punct;
    tok.text = std::string{c, at(1)};
    advance();
    advance();
    return tok;
  }
  switch (c) {
    case '{': case '}': case '(': case ')': case '[': case ']': case '.': case ';': case ',':
    case '*': case '!': case '=': case '/': case '|': case '^': case '+': case '-': case '>':
      advance();
      tok.kind = Tok::Punct;
      tok.text = std::string(1, c);
      return tok;
    default:
      break;
  }
  if (static_cast<unsigned char>(c) >= 0x80) {
    std::string ignored;
    read_utf8_into(ignored);  // reports invalid UTF-8 precisely
    fail(ParseErrorKind::Lex, tok, "unexpected character '" + ignored + "'");
  }
  fail_here(ParseErrorKind::Lex, std::string("unexpected character '") +
                                     (std::isprint(static_cast<unsigned char>(c)) ? std::string(1, c)
                                                                                  : "\\x??") +
                                     "'");
}

}  // namespace detail
}  // namespace mathkg
