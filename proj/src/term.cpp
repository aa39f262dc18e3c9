#include "mathkg/term.hpp"

#include <array>
#include <cctype>
#include <cstdio>

namespace mathkg {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!is_digit(c)) return false;
  }
  return true;
}

std::string_view strip_sign(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  return s;
}

bool valid_language_tag(std::string_view tag) {
  // [a-zA-Z]+ ('-' [a-zA-Z0-9]+)*
  if (tag.empty()) return false;
  size_t i = 0;
  size_t run = 0;
  bool first = true;
  for (; i <= tag.size(); ++i) {
    if (i == tag.size() || tag[i] == '-') {
      if (run == 0) return false;
      run = 0;
      first = false;
      continue;
    }
    auto c = static_cast<unsigned char>(tag[i]);
    if (first ? !std::isalpha(c) : !std::isalnum(c)) return false;
    ++run;
  }
  return true;
}

const std::array<std::string, 6>& datatype_iris() {
  static const std::array<std::string, 6> iris = {
      std::string(ns::kXsd) + "string",        std::string(ns::kXsd) + "integer",
      std::string(ns::kXsd) + "boolean",       std::string(ns::kXsd) + "decimal",
      std::string(ns::kDatatype) + "latex",    std::string(ns::kDatatype) + "externalId",
  };
  return iris;
}

}  // namespace

bool Iri::is_absolute(std::string_view value) noexcept {
  if (value.empty()) return false;
  for (char ch : value) {
    auto c = static_cast<unsigned char>(ch);
    if (c <= 0x20) return false;
    switch (c) {
      case '<': case '>': case '"': case '{': case '}':
      case '|': case '^': case '`': case '\\':
        return false;
      default:
        break;
    }
  }
  if (value.find("://") != std::string_view::npos) {
    // scheme must be [A-Za-z][A-Za-z0-9+.-]*
    auto scheme = value.substr(0, value.find("://"));
    if (scheme.empty() || !std::isalpha(static_cast<unsigned char>(scheme.front()))) return false;
    for (char c : scheme) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '.' && c != '-') {
        return false;
      }
    }
    return value.size() > scheme.size() + 3;
  }
  return (value.starts_with("urn:") && value.size() > 4) ||
         (value.starts_with("mailto:") && value.size() > 7);
}

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (!is_absolute(value_)) {
    throw std::invalid_argument("not an absolute IRI: '" + value_ + "'");
  }
}

std::string_view datatype_name(Datatype dt) noexcept {
  switch (dt) {
    case Datatype::String: return "string";
    case Datatype::Integer: return "integer";
    case Datatype::Boolean: return "boolean";
    case Datatype::Decimal: return "decimal";
    case Datatype::Latex: return "latex-expression";
    case Datatype::ExternalId: return "external-id";
  }
  return "string";
}

const std::string& datatype_iri(Datatype dt) { return datatype_iris()[static_cast<size_t>(dt)]; }

std::optional<Datatype> datatype_from_iri(std::string_view iri) noexcept {
  const auto& iris = datatype_iris();
  for (size_t i = 0; i < iris.size(); ++i) {
    if (iris[i] == iri) return static_cast<Datatype>(i);
  }
  return std::nullopt;
}

bool valid_lexical(Datatype dt, std::string_view lexical) noexcept {
  switch (dt) {
    case Datatype::Integer:
      return all_digits(strip_sign(lexical));
    case Datatype::Decimal: {
      auto body = strip_sign(lexical);
      auto dot = body.find('.');
      if (dot == std::string_view::npos) return false;
      auto whole = body.substr(0, dot);
      auto frac = body.substr(dot + 1);
      return (whole.empty() || all_digits(whole)) && all_digits(frac);
    }
    case Datatype::Boolean:
      return lexical == "true" || lexical == "false";
    case Datatype::String:
    case Datatype::Latex:
    case Datatype::ExternalId:
      return true;
  }
  return false;
}

Literal::Literal(std::string lexical, Datatype datatype, std::string language)
    : lexical_(std::move(lexical)), datatype_(datatype), language_(std::move(language)) {
  if (!valid_lexical(datatype_, lexical_)) {
    throw std::invalid_argument("invalid " + std::string(datatype_name(datatype_)) +
                                " lexical form '" + lexical_ + "'");
  }
  if (!language_.empty()) {
    if (datatype_ != Datatype::String) {
      throw std::invalid_argument("language tag on a non-string literal");
    }
    if (!valid_language_tag(language_)) {
      throw std::invalid_argument("invalid language tag '" + language_ + "'");
    }
  }
}

Iri mmdb(std::string_view local) { return Iri(std::string(ns::kMmdb) + std::string(local)); }
Iri madb(std::string_view local) { return Iri(std::string(ns::kMadb) + std::string(local)); }

Iri rdf_type() {
  static const Iri type(std::string(ns::kRdf) + "type");
  return type;
}
Iri rdfs_label() {
  static const Iri label(std::string(ns::kRdfs) + "label");
  return label;
}
Iri rdfs_comment() {
  static const Iri comment(std::string(ns::kRdfs) + "comment");
  return comment;
}

PrefixMap default_prefixes() {
  return {
      {"madb", std::string(ns::kMadb)}, {"mkdt", std::string(ns::kDatatype)},
      {"mmdb", std::string(ns::kMmdb)}, {"rdf", std::string(ns::kRdf)},
      {"rdfs", std::string(ns::kRdfs)}, {"xsd", std::string(ns::kXsd)},
  };
}

Iri expand_prefix(std::string_view qname, const PrefixMap& prefixes) {
  auto colon = qname.find(':');
  if (colon == std::string_view::npos) {
    throw MalformedQName("malformed prefixed name '" + std::string(qname) + "': missing ':'");
  }
  auto prefix = qname.substr(0, colon);
  auto local = qname.substr(colon + 1);
  if (local.find(':') != std::string_view::npos) {
    throw MalformedQName("malformed prefixed name '" + std::string(qname) + "': more than one ':'");
  }
  auto it = prefixes.find(prefix);
  if (it == prefixes.end()) throw UnknownPrefix(std::string(prefix));
  return Iri(it->second + std::string(local));
}

Iri parse_iri_argument(std::string_view text, const PrefixMap& prefixes) {
  if (text.size() >= 2 && text.front() == '<' && text.back() == '>') {
    return Iri(std::string(text.substr(1, text.size() - 2)));
  }
  auto colon = text.find(':');
  if (colon != std::string_view::npos && prefixes.find(text.substr(0, colon)) != prefixes.end()) {
    return expand_prefix(text, prefixes);
  }
  if (Iri::is_absolute(text)) return Iri(std::string(text));
  return expand_prefix(text, prefixes);
}

bool is_valid_local_name(std::string_view local) noexcept {
  // Conservative subset of PN_LOCAL: [A-Za-z0-9_] then [A-Za-z0-9_-]*.
  if (local.empty()) return false;
  for (size_t i = 0; i < local.size(); ++i) {
    auto c = static_cast<unsigned char>(local[i]);
    bool ok = std::isalnum(c) || c == '_' || (i > 0 && c == '-');
    if (!ok) return false;
  }
  return true;
}

std::optional<std::string> compact_iri(const Iri& iri, const PrefixMap& prefixes) {
  const std::string* best_prefix = nullptr;
  size_t best_len = 0;
  for (const auto& [prefix, ns_iri] : prefixes) {
    if (ns_iri.size() > best_len && iri.starts_with(ns_iri) &&
        is_valid_local_name(std::string_view(iri.str()).substr(ns_iri.size()))) {
      best_prefix = &prefix;
      best_len = ns_iri.size();
    }
  }
  if (!best_prefix) return std::nullopt;
  return *best_prefix + ":" + iri.str().substr(best_len);
}

std::string display_iri(const Iri& iri, const PrefixMap& prefixes) {
  if (auto c = compact_iri(iri, prefixes)) return *c;
  return "<" + iri.str() + ">";
}

std::string escape_string(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20 || ch == 0x7f) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned>(static_cast<unsigned char>(ch)));
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

std::string to_turtle(const Term& term, const PrefixMap& prefixes) {
  if (const auto* iri = term.as_iri()) return display_iri(*iri, prefixes);
  const auto& lit = term.literal();
  switch (lit.datatype()) {
    case Datatype::Integer:
    case Datatype::Decimal:
    case Datatype::Boolean:
      return lit.lexical();
    case Datatype::String: {
      std::string out = "\"" + escape_string(lit.lexical()) + "\"";
      if (!lit.language().empty()) out += "@" + lit.language();
      return out;
    }
    case Datatype::Latex:
    case Datatype::ExternalId:
      return "\"" + escape_string(lit.lexical()) + "\"^^" +
             display_iri(Iri(datatype_iri(lit.datatype())), prefixes);
  }
  return {};
}

}  // namespace mathkg
