#include "mathkg/turtle.hpp"

#include <set>
#include <sstream>

#include "lexer.hpp"

namespace mathkg::turtle {

namespace {

using detail::Lexer;
using detail::Tok;
using detail::Token;

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text, {.variables = false, .at_keywords = true}) {}

  Document run() {
    while (lex_.peek().kind != Tok::End) statement();
    return std::move(doc_);
  }

 private:
  void statement() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::At) {
      Token at = lex_.next();
      if (at.text == "prefix") {
        prefix_directive(true);
      } else if (at.text == "base") {
        lex_.fail(ParseErrorKind::Syntax, at, "@base is not supported");
      } else {
        lex_.fail(ParseErrorKind::Syntax, at, "unknown directive '@" + at.text + "'");
      }
      return;
    }
    if (t.kind == Tok::Name && iequals(t.text, "PREFIX")) {
      lex_.next();
      prefix_directive(false);
      return;
    }
    if (t.kind == Tok::Name && iequals(t.text, "BASE")) {
      lex_.fail(ParseErrorKind::Syntax, t, "BASE is not supported");
    }
    Iri subject = subject_term();
    predicate_object_list(subject);
    expect_punct(".");
  }

  void prefix_directive(bool turtle_style) {
    Token name = lex_.next();
    if (name.kind != Tok::PName || !name.local.empty()) {
      unexpected(name, "a prefix name such as 'ex:'");
    }
    Token iri = lex_.next();
    if (iri.kind != Tok::IriRef) unexpected(iri, "a namespace IRI in angle brackets");
    if (!Iri::is_absolute(iri.text)) {
      lex_.fail(ParseErrorKind::Syntax, iri, "namespace IRI must be absolute");
    }
    doc_.prefixes[name.prefix] = iri.text;
    if (turtle_style) expect_punct(".");
  }

  Iri subject_term() {
    Token t = lex_.next();
    switch (t.kind) {
      case Tok::IriRef:
      case Tok::PName:
        return resolve(t);
      case Tok::Punct:
        if (t.text == "[") lex_.fail(ParseErrorKind::Syntax, t, "blank nodes are not supported");
        if (t.text == "(") lex_.fail(ParseErrorKind::Syntax, t, "collections are not supported");
        break;
      default:
        break;
    }
    unexpected(t, "a subject IRI");
  }

  void predicate_object_list(const Iri& subject) {
    Iri predicate = verb();
    object_list(subject, predicate);
    while (is_punct(lex_.peek(), ";")) {
      lex_.next();
      while (is_punct(lex_.peek(), ";")) lex_.next();
      const Token& t = lex_.peek();
      if (is_punct(t, ".") || t.kind == Tok::End) break;
      predicate = verb();
      object_list(subject, predicate);
    }
  }

  Iri verb() {
    Token t = lex_.next();
    if (t.kind == Tok::Name && t.text == "a") return rdf_type();
    if (t.kind == Tok::IriRef || t.kind == Tok::PName) return resolve(t);
    unexpected(t, "a predicate");
  }

  void object_list(const Iri& subject, const Iri& predicate) {
    doc_.triples.push_back({subject, predicate, object()});
    while (is_punct(lex_.peek(), ",")) {
      lex_.next();
      doc_.triples.push_back({subject, predicate, object()});
    }
  }

  Term object() {
    Token t = lex_.next();
    switch (t.kind) {
      case Tok::IriRef:
      case Tok::PName:
        return resolve(t);
      case Tok::String:
        return string_literal(t);
      case Tok::Integer:
        return make_literal(t, t.text, Datatype::Integer);
      case Tok::Decimal:
        return make_literal(t, t.text, Datatype::Decimal);
      case Tok::Name:
        if (t.text == "true" || t.text == "false") {
          return make_literal(t, t.text, Datatype::Boolean);
        }
        break;
      case Tok::Punct:
        if (t.text == "[") lex_.fail(ParseErrorKind::Syntax, t, "blank nodes are not supported");
        if (t.text == "(") lex_.fail(ParseErrorKind::Syntax, t, "collections are not supported");
        break;
      default:
        break;
    }
    unexpected(t, "an object");
  }

  Term string_literal(const Token& str) {
    const Token& next = lex_.peek();
    if (next.kind == Tok::At) {
      Token lang = lex_.next();
      return make_literal(str, str.text, Datatype::String, lang.text);
    }
    if (is_punct(next, "^^")) {
      lex_.next();
      Token dt = lex_.next();
      if (dt.kind != Tok::IriRef && dt.kind != Tok::PName) unexpected(dt, "a datatype IRI");
      Iri dt_iri = resolve(dt);
      auto datatype = datatype_from_iri(dt_iri.str());
      if (!datatype) {
        lex_.fail(ParseErrorKind::Datatype, dt, "unsupported datatype <" + dt_iri.str() + ">");
      }
      return make_literal(str, str.text, *datatype);
    }
    return make_literal(str, str.text, Datatype::String);
  }

  Literal make_literal(const Token& at, std::string lexical, Datatype dt, std::string lang = {}) {
    try {
      return Literal(std::move(lexical), dt, std::move(lang));
    } catch (const std::invalid_argument& e) {
      lex_.fail(ParseErrorKind::Datatype, at, e.what());
    }
  }

  Iri resolve(const Token& t) {
    if (t.kind == Tok::IriRef) {
      if (!Iri::is_absolute(t.text)) {
        lex_.fail(ParseErrorKind::Syntax, t, "relative IRI <" + t.text + "> (no base resolution)");
      }
      return Iri(t.text);
    }
    if (t.prefix == "_") lex_.fail(ParseErrorKind::Syntax, t, "blank nodes are not supported");
    auto it = doc_.prefixes.find(t.prefix);
    if (it == doc_.prefixes.end()) {
      lex_.fail(ParseErrorKind::Prefix, t, "undeclared prefix '" + t.prefix + ":'");
    }
    std::string full = it->second + t.local;
    if (!Iri::is_absolute(full)) lex_.fail(ParseErrorKind::Syntax, t, "invalid IRI " + full);
    return Iri(std::move(full));
  }

  static bool is_punct(const Token& t, std::string_view p) {
    return t.kind == Tok::Punct && t.text == p;
  }

  void expect_punct(std::string_view p) {
    Token t = lex_.next();
    if (!is_punct(t, p)) unexpected(t, "'" + std::string(p) + "'");
  }

  [[noreturn]] void unexpected(const Token& t, const std::string& expected) {
    if (t.kind == Tok::End) {
      lex_.fail(ParseErrorKind::Syntax, t, "unexpected end of input, expected " + expected);
    }
    lex_.fail(ParseErrorKind::Syntax, t, "expected " + expected + ", found '" + describe(t) + "'");
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::IriRef: return "<" + t.text + ">";
      case Tok::String: return "\"" + t.text.substr(0, 20) + "\"";
      case Tok::Var: return "?" + t.text;
      case Tok::At: return "@" + t.text;
      default: return t.text;
    }
  }

  Lexer lex_;
  Document doc_;
};

}  // namespace

Document parse_document(std::string_view text) { return Parser(text).run(); }

std::string serialize(const Graph& graph) {
  const auto& prefixes = graph.prefixes();
  std::set<std::string> used;
  auto note = [&](const Iri& iri) {
    if (auto c = compact_iri(iri, prefixes)) used.insert(c->substr(0, c->find(':')));
  };
  auto render = [&](const Term& t) {
    if (const auto* iri = t.as_iri()) {
      note(*iri);
    } else if (t.literal().datatype() == Datatype::Latex ||
               t.literal().datatype() == Datatype::ExternalId) {
      note(Iri(datatype_iri(t.literal().datatype())));
    }
    return to_turtle(t, prefixes);
  };

  std::ostringstream body;
  const auto& triples = graph.triples();
  for (auto it = triples.begin(); it != triples.end();) {
    const Iri& subject = it->subject;
    if (it != triples.begin()) body << "\n";
    body << render(Term(subject));
    bool first_predicate = true;
    while (it != triples.end() && it->subject == subject) {
      const Iri& predicate = it->predicate;
      body << (first_predicate ? " " : " ;\n    ");
      first_predicate = false;
      body << (predicate == rdf_type() ? std::string("a") : render(Term(predicate)));
      bool first_object = true;
      while (it != triples.end() && it->subject == subject && it->predicate == predicate) {
        body << (first_object ? " " : ", ") << render(it->object);
        first_object = false;
        ++it;
      }
    }
    body << " .\n";
  }

  std::string out;
  for (const auto& p : used) {
    out += "@prefix " + p + ": <" + prefixes.find(p)->second + "> .\n";
  }
  if (!used.empty() && !triples.empty()) out += "\n";
  out += body.str();
  return out;
}

}  // namespace mathkg::turtle
