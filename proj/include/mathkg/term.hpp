#pragma once

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace mathkg {

namespace ns {
inline constexpr std::string_view kMmdb = "https://mardi4nfdi.de/mathmoddb#";
inline constexpr std::string_view kMadb = "https://mardi4nfdi.de/mathalgodb/0.1#";
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
// Datatypes for LaTeX expressions and opaque external identifiers.
inline constexpr std::string_view kDatatype = "https://mardi4nfdi.de/mathkg/datatype#";
}  // namespace ns

class Iri {
 public:
  Iri() = default;
  // Throws std::invalid_argument unless the value is an absolute IRI.
  explicit Iri(std::string value);

  const std::string& str() const noexcept { return value_; }
  bool starts_with(std::string_view prefix) const noexcept {
    return std::string_view(value_).starts_with(prefix);
  }

  auto operator<=>(const Iri&) const = default;

  static bool is_absolute(std::string_view value) noexcept;

 private:
  std::string value_;
};

enum class Datatype { String, Integer, Boolean, Decimal, Latex, ExternalId };

std::string_view datatype_name(Datatype dt) noexcept;
const std::string& datatype_iri(Datatype dt);
std::optional<Datatype> datatype_from_iri(std::string_view iri) noexcept;
// True if `lexical` is a valid lexical form for `dt`.
bool valid_lexical(Datatype dt, std::string_view lexical) noexcept;

class Literal {
 public:
  Literal() = default;
  // Throws std::invalid_argument on a lexical form that does not parse under
  // its datatype, or on a language tag attached to a non-string literal.
  Literal(std::string lexical, Datatype datatype, std::string language = {});

  static Literal string(std::string s, std::string lang = {}) {
    return Literal(std::move(s), Datatype::String, std::move(lang));
  }
  static Literal integer(long long v) { return Literal(std::to_string(v), Datatype::Integer); }
  static Literal boolean(bool v) { return Literal(v ? "true" : "false", Datatype::Boolean); }
  static Literal latex(std::string s) { return Literal(std::move(s), Datatype::Latex); }
  static Literal external_id(std::string s) { return Literal(std::move(s), Datatype::ExternalId); }

  const std::string& lexical() const noexcept { return lexical_; }
  Datatype datatype() const noexcept { return datatype_; }
  const std::string& language() const noexcept { return language_; }

  auto operator<=>(const Literal&) const = default;

 private:
  std::string lexical_;
  Datatype datatype_ = Datatype::String;
  std::string language_;
};

// An IRI or a literal. IRIs order before literals.
class Term {
 public:
  Term() = default;
  Term(Iri iri) : value_(std::move(iri)) {}          // NOLINT(google-explicit-constructor)
  Term(Literal lit) : value_(std::move(lit)) {}      // NOLINT(google-explicit-constructor)

  bool is_iri() const noexcept { return std::holds_alternative<Iri>(value_); }
  bool is_literal() const noexcept { return std::holds_alternative<Literal>(value_); }
  const Iri& iri() const { return std::get<Iri>(value_); }
  const Literal& literal() const { return std::get<Literal>(value_); }
  const Iri* as_iri() const noexcept { return std::get_if<Iri>(&value_); }
  const Literal* as_literal() const noexcept { return std::get_if<Literal>(&value_); }

  // Full IRI string, or the literal's lexical form.
  const std::string& lexical() const noexcept {
    return is_iri() ? iri().str() : literal().lexical();
  }

  auto operator<=>(const Term&) const = default;

 private:
  std::variant<Iri, Literal> value_;
};

struct Triple {
  Iri subject;
  Iri predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;
};

Iri mmdb(std::string_view local);
Iri madb(std::string_view local);
Iri rdf_type();
Iri rdfs_label();
Iri rdfs_comment();

class UnknownPrefix : public std::runtime_error {
 public:
  explicit UnknownPrefix(std::string prefix)
      : std::runtime_error("unknown prefix '" + prefix + ":'"), prefix_(std::move(prefix)) {}
  const std::string& prefix() const noexcept { return prefix_; }

 private:
  std::string prefix_;
};

class MalformedQName : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// prefix (without the colon) -> namespace IRI
using PrefixMap = std::map<std::string, std::string, std::less<>>;

PrefixMap default_prefixes();

Iri expand_prefix(std::string_view qname, const PrefixMap& prefixes);
// Longest-namespace compaction; nullopt when no registered namespace yields a
// local name that can be written back as a prefixed name.
std::optional<std::string> compact_iri(const Iri& iri, const PrefixMap& prefixes);
// Compacted form when possible, otherwise "<iri>".
std::string display_iri(const Iri& iri, const PrefixMap& prefixes);
bool is_valid_local_name(std::string_view local) noexcept;
// Accepts "<iri>", an absolute IRI or a prefixed name. Throws UnknownPrefix,
// MalformedQName or std::invalid_argument.
Iri parse_iri_argument(std::string_view text, const PrefixMap& prefixes);

// Turtle rendering of a term, compacting IRIs where possible.
std::string to_turtle(const Term& term, const PrefixMap& prefixes);
std::string escape_string(std::string_view s);

}  // namespace mathkg
