#include <algorithm>
#include <cctype>
#include <set>

#include "lexer.hpp"
#include "mathkg/query.hpp"

namespace mathkg::query {

namespace {

using detail::Lexer;
using detail::Tok;
using detail::Token;

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

bool is_keyword(const Token& t, std::string_view kw) {
  return t.kind == Tok::Name && upper(t.text) == kw;
}

bool is_punct(const Token& t, std::string_view p) { return t.kind == Tok::Punct && t.text == p; }

// Recognised SPARQL keywords outside the subset.
const std::set<std::string, std::less<>>& unsupported_keywords() {
  static const std::set<std::string, std::less<>> kws = {
      "OPTIONAL", "UNION",  "MINUS",    "BIND",   "VALUES", "GRAPH",     "SERVICE",
      "ORDER",    "GROUP",  "HAVING",   "LIMIT",  "OFFSET", "CONSTRUCT", "ASK",
      "DESCRIBE", "INSERT", "DELETE",   "LOAD",   "CLEAR",  "DROP",      "CREATE",
      "WITH",     "FROM",   "REDUCED",  "REGEX",  "LANG",   "LANGMATCHES", "DATATYPE",
      "BOUND",    "IF",     "COALESCE", "IN",     "ISIRI",    "ISURI",
      "ISBLANK",  "ISLITERAL", "ISNUMERIC", "STRSTARTS", "STRENDS", "STRLEN", "SUBSTR",
      "UCASE",    "LCASE",  "CONCAT",   "REPLACE", "COUNT", "SUM",       "MIN",
      "MAX",      "AVG",    "SAMPLE",   "GROUP_CONCAT", "SELECT", "AS", "IRI", "URI",
      "BNODE",    "RAND",   "ABS",      "CEIL",   "FLOOR",  "ROUND",     "NOW",
      "STRDT",    "STRLANG", "UUID",    "STRUUID", "MD5",   "SHA1",      "SHA256",
      "ENCODE_FOR_URI", "SAMETERM", "BASE",
  };
  return kws;
}

class Parser {
 public:
  explicit Parser(std::string_view text)
      : lex_(text, {.variables = true, .at_keywords = false}) {}

  SelectQuery run() {
    prologue();
    Token select = lex_.next();
    if (!is_keyword(select, "SELECT")) {
      if (select.kind == Tok::Name && unsupported_keywords().contains(upper(select.text))) {
        unsupported(select, upper(select.text) + " queries");
      }
      unexpected(select, "SELECT");
    }
    if (is_keyword(lex_.peek(), "DISTINCT")) lex_.next();  // rows are distinct anyway

    bool select_all = false;
    std::vector<Token> vars;
    if (is_punct(lex_.peek(), "*")) {
      lex_.next();
      select_all = true;
    } else {
      while (lex_.peek().kind == Tok::Var) vars.push_back(lex_.next());
      const Token& t = lex_.peek();
      if (is_punct(t, "(")) unsupported(t, "projection expressions");
      if (vars.empty()) unexpected(t, "a projected variable or '*'");
    }

    const Token& where_tok = lex_.peek();
    if (is_keyword(where_tok, "FROM")) unsupported(where_tok, "FROM clauses");
    if (is_keyword(where_tok, "WHERE")) lex_.next();
    query_.where = group();

    const Token& tail = lex_.peek();
    if (tail.kind != Tok::End) {
      if (tail.kind == Tok::Name && unsupported_keywords().contains(upper(tail.text))) {
        unsupported(tail, upper(tail.text));
      }
      unexpected(tail, "end of query");
    }

    auto mentioned = variables_in(query_.where);
    if (select_all) {
      query_.projection = top_level_variables(query_.where);
    } else {
      std::set<std::string> seen;
      for (const auto& v : vars) {
        if (std::find(mentioned.begin(), mentioned.end(), v.text) == mentioned.end()) {
          lex_.fail(ParseErrorKind::Syntax, v,
                    "projected variable ?" + v.text + " does not appear in WHERE");
        }
        if (seen.insert(v.text).second) query_.projection.push_back(v.text);
      }
    }
    return std::move(query_);
  }

 private:
  void prologue() {
    while (true) {
      const Token& t = lex_.peek();
      if (is_keyword(t, "PREFIX")) {
        lex_.next();
        Token name = lex_.next();
        if (name.kind != Tok::PName || !name.local.empty()) {
          unexpected(name, "a prefix name such as 'ex:'");
        }
        Token iri = lex_.next();
        if (iri.kind != Tok::IriRef) unexpected(iri, "a namespace IRI in angle brackets");
        if (!Iri::is_absolute(iri.text)) {
          lex_.fail(ParseErrorKind::Syntax, iri, "namespace IRI must be absolute");
        }
        query_.prefixes[name.prefix] = iri.text;
      } else if (is_keyword(t, "BASE")) {
        unsupported(t, "BASE");
      } else {
        return;
      }
    }
  }

  GroupPattern group() {
    expect_punct("{");
    GroupPattern g;
    while (true) {
      const Token& t = lex_.peek();
      if (is_punct(t, "}")) {
        lex_.next();
        return g;
      }
      if (t.kind == Tok::End) unexpected(t, "'}'");
      if (is_punct(t, ".")) {
        lex_.next();
        continue;
      }
      if (is_keyword(t, "FILTER")) {
        lex_.next();
        g.filters.push_back(constraint());
        continue;
      }
      if (is_punct(t, "{")) unsupported(t, "nested group patterns");
      if (is_punct(t, "[") || (t.kind == Tok::PName && t.prefix == "_")) {
        unsupported(t, "blank nodes");
      }
      if (t.kind == Tok::Name && unsupported_keywords().contains(upper(t.text))) {
        unsupported(t, upper(t.text));
      }
      triples_block(g);
      const Token& after = lex_.peek();
      if (!is_punct(after, ".") && !is_punct(after, "}") && !is_keyword(after, "FILTER")) {
        if (after.kind == Tok::Name && unsupported_keywords().contains(upper(after.text))) {
          unsupported(after, upper(after.text));
        }
        unexpected(after, "'.' or '}'");
      }
    }
  }

  void triples_block(GroupPattern& g) {
    PatternSlot subject = term_or_var("a subject");
    PatternSlot predicate = verb();
    object_list(g, subject, predicate);
    while (is_punct(lex_.peek(), ";")) {
      lex_.next();
      while (is_punct(lex_.peek(), ";")) lex_.next();
      const Token& t = lex_.peek();
      if (is_punct(t, ".") || is_punct(t, "}") || is_keyword(t, "FILTER")) break;
      predicate = verb();
      object_list(g, subject, predicate);
    }
  }

  void object_list(GroupPattern& g, const PatternSlot& subject, const PatternSlot& predicate) {
    g.patterns.push_back({subject, predicate, term_or_var("an object")});
    while (is_punct(lex_.peek(), ",")) {
      lex_.next();
      g.patterns.push_back({subject, predicate, term_or_var("an object")});
    }
  }

  PatternSlot verb() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Name && t.text == "a") {
      lex_.next();
      check_no_path();
      return PatternSlot::bound(Term(rdf_type()));
    }
    if (is_punct(t, "^") || is_punct(t, "(") || is_punct(t, "!")) unsupported(t, "property paths");
    PatternSlot slot = term_or_var("a predicate");
    if (!slot.is_variable() && !slot.term->is_iri()) {
      lex_.fail(ParseErrorKind::Syntax, last_, "a predicate must be an IRI or a variable");
    }
    check_no_path();
    return slot;
  }

  void check_no_path() {
    const Token& t = lex_.peek();
    if (is_punct(t, "/") || is_punct(t, "|") || is_punct(t, "*") || is_punct(t, "+") ||
        is_punct(t, "^")) {
      unsupported(t, "property paths");
    }
  }

  PatternSlot term_or_var(const std::string& what) {
    Token t = lex_.next();
    last_ = t;
    if (t.kind == Tok::Var) return PatternSlot::var(t.text);
    if (auto term = constant(t)) return PatternSlot::bound(std::move(*term));
    if (is_punct(t, "[") || (t.kind == Tok::PName && t.prefix == "_")) unsupported(t, "blank nodes");
    if (is_punct(t, "(")) unsupported(t, "collections");
    unexpected(t, what);
  }

  // IRI or literal constant starting at `t`, if any.
  std::optional<Term> constant(const Token& t) {
    switch (t.kind) {
      case Tok::IriRef:
        if (!Iri::is_absolute(t.text)) {
          lex_.fail(ParseErrorKind::Syntax, t, "relative IRI <" + t.text + ">");
        }
        return Term(Iri(t.text));
      case Tok::PName: {
        if (t.prefix == "_") return std::nullopt;
        try {
          return Term(expand_prefix(t.text, query_.prefixes));
        } catch (const UnknownPrefix&) {
          lex_.fail(ParseErrorKind::Prefix, t, "undeclared prefix '" + t.prefix + ":'");
        } catch (const std::exception& e) {
          lex_.fail(ParseErrorKind::Syntax, t, e.what());
        }
        return std::nullopt;
      }
      case Tok::String: {
        const Token& next = lex_.peek();
        if (is_punct(next, "^^")) {
          lex_.next();
          Token dt = lex_.next();
          auto dt_term = constant(dt);
          if (!dt_term || !dt_term->is_iri()) unexpected(dt, "a datatype IRI");
          auto datatype = datatype_from_iri(dt_term->iri().str());
          if (!datatype) {
            lex_.fail(ParseErrorKind::Datatype, dt,
                      "unsupported datatype <" + dt_term->iri().str() + ">");
          }
          return make_literal(t, t.text, *datatype);
        }
        return make_literal(t, t.text, Datatype::String);
      }
      case Tok::Integer:
        return make_literal(t, t.text, Datatype::Integer);
      case Tok::Decimal:
        return make_literal(t, t.text, Datatype::Decimal);
      case Tok::Name:
        if (t.text == "true" || t.text == "false") return make_literal(t, t.text, Datatype::Boolean);
        return std::nullopt;
      default:
        return std::nullopt;
    }
  }

  Term make_literal(const Token& at, std::string lexical, Datatype dt) {
    try {
      return Literal(std::move(lexical), dt);
    } catch (const std::invalid_argument& e) {
      lex_.fail(ParseErrorKind::Datatype, at, e.what());
    }
  }

  FilterExpr constraint() {
    const Token& t = lex_.peek();
    if (is_punct(t, "(")) {
      lex_.next();
      FilterExpr e = expression();
      expect_punct(")");
      return e;
    }
    if (is_keyword(t, "NOT") || is_keyword(t, "EXISTS") || is_keyword(t, "CONTAINS") ||
        is_keyword(t, "STR")) {
      return primary();
    }
    if (t.kind == Tok::Name && unsupported_keywords().contains(upper(t.text))) {
      unsupported(t, upper(t.text));
    }
    unexpected(t, "a filter constraint");
  }

  FilterExpr expression() {
    FilterExpr e = primary();
    const Token& t = lex_.peek();
    if (t.kind == Tok::Punct &&
        (t.text == "&&" || t.text == "||" || t.text == "=" || t.text == "!=" || t.text == ">" ||
         t.text == "+" || t.text == "-" || t.text == "*" || t.text == "/")) {
      unsupported(t, "operator '" + t.text + "'");
    }
    if (is_keyword(t, "IN") || is_keyword(t, "NOT")) unsupported(t, "IN / NOT IN");
    return e;
  }

  FilterExpr primary() {
    Token t = lex_.next();
    FilterExpr e;
    e.line = t.line;
    e.column = t.column;
    if (is_punct(t, "(")) {
      e = expression();
      expect_punct(")");
      return e;
    }
    if (is_keyword(t, "NOT")) {
      Token ex = lex_.next();
      if (!is_keyword(ex, "EXISTS")) {
        if (is_keyword(ex, "IN")) unsupported(ex, "NOT IN");
        unexpected(ex, "EXISTS");
      }
      e.kind = FilterExpr::Kind::NotExists;
      e.group = std::make_shared<const GroupPattern>(group());
      return e;
    }
    if (is_keyword(t, "EXISTS")) {
      e.kind = FilterExpr::Kind::Exists;
      e.group = std::make_shared<const GroupPattern>(group());
      return e;
    }
    if (is_keyword(t, "CONTAINS")) {
      e.kind = FilterExpr::Kind::Contains;
      expect_punct("(");
      e.args.push_back(expression());
      expect_punct(",");
      e.args.push_back(expression());
      expect_punct(")");
      return e;
    }
    if (is_keyword(t, "STR")) {
      e.kind = FilterExpr::Kind::Str;
      expect_punct("(");
      e.args.push_back(expression());
      expect_punct(")");
      return e;
    }
    if (t.kind == Tok::Var) {
      e.kind = FilterExpr::Kind::Variable;
      e.variable = t.text;
      return e;
    }
    if (is_punct(t, "!")) unsupported(t, "operator '!'");
    if (is_punct(t, "-") || is_punct(t, "+")) unsupported(t, "arithmetic");
    if (t.kind == Tok::Name && unsupported_keywords().contains(upper(t.text))) {
      unsupported(t, upper(t.text));
    }
    if (auto c = constant(t)) {
      e.kind = FilterExpr::Kind::Constant;
      e.constant = std::move(*c);
      return e;
    }
    if (t.kind == Tok::Name || (t.kind == Tok::PName && is_punct(lex_.peek(), "("))) {
      unsupported(t, "function '" + t.text + "'");
    }
    unexpected(t, "an expression");
  }

  static void collect_top_level(const GroupPattern& g, std::vector<std::string>& out) {
    auto add = [&](const PatternSlot& s) {
      if (s.is_variable() && std::find(out.begin(), out.end(), s.variable) == out.end()) {
        out.push_back(s.variable);
      }
    };
    for (const auto& p : g.patterns) {
      add(p.subject);
      add(p.predicate);
      add(p.object);
    }
  }

  static std::vector<std::string> top_level_variables(const GroupPattern& g) {
    std::vector<std::string> out;
    collect_top_level(g, out);
    return out;
  }

  void expect_punct(std::string_view p) {
    Token t = lex_.next();
    if (!is_punct(t, p)) unexpected(t, "'" + std::string(p) + "'");
  }

  [[noreturn]] void unsupported(const Token& t, const std::string& feature) {
    lex_.fail(ParseErrorKind::Unsupported, t, feature + " not in subset");
  }

  [[noreturn]] void unexpected(const Token& t, const std::string& expected) {
    if (t.kind == Tok::End) {
      lex_.fail(ParseErrorKind::Syntax, t, "unexpected end of query, expected " + expected);
    }
    std::string found = t.kind == Tok::Var      ? "?" + t.text
                        : t.kind == Tok::IriRef ? "<" + t.text + ">"
                        : t.kind == Tok::String ? "\"" + t.text + "\""
                                                : t.text;
    lex_.fail(ParseErrorKind::Syntax, t, "expected " + expected + ", found '" + found + "'");
  }

  Lexer lex_;
  SelectQuery query_;
  Token last_;
};

void collect_variables(const GroupPattern& g, std::vector<std::string>& out);

void collect_expr_variables(const FilterExpr& e, std::vector<std::string>& out) {
  if (e.kind == FilterExpr::Kind::Variable &&
      std::find(out.begin(), out.end(), e.variable) == out.end()) {
    out.push_back(e.variable);
  }
  if (e.group) collect_variables(*e.group, out);
  for (const auto& a : e.args) collect_expr_variables(a, out);
}

void collect_variables(const GroupPattern& g, std::vector<std::string>& out) {
  auto add = [&](const PatternSlot& s) {
    if (s.is_variable() && std::find(out.begin(), out.end(), s.variable) == out.end()) {
      out.push_back(s.variable);
    }
  };
  for (const auto& p : g.patterns) {
    add(p.subject);
    add(p.predicate);
    add(p.object);
  }
  for (const auto& f : g.filters) collect_expr_variables(f, out);
}

}  // namespace

std::vector<std::string> variables_in(const GroupPattern& group) {
  std::vector<std::string> out;
  collect_variables(group, out);
  return out;
}

SelectQuery parse_query(std::string_view text) { return Parser(text).run(); }

}  // namespace mathkg::query
