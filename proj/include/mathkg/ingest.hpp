#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mathkg/graph.hpp"

namespace mathkg {

class IngestError : public std::runtime_error {
 public:
  enum class Kind { EmptyTemplate, UnresolvableReference, InvalidField };
  IngestError(Kind kind, int line, const std::string& message);
  Kind kind() const noexcept { return kind_; }
  int line() const noexcept { return line_; }  // 0 when not tied to a line

 private:
  Kind kind_;
  int line_;
};

struct DraftField {
  std::string key;  // as written, trimmed
  std::string value;
  int line = 0;
};

struct DraftEntity {
  OntologyClass cls = OntologyClass::MathematicalModel;
  std::string name;
  Iri iri;
  std::vector<DraftField> fields;  // everything except name
  int first_line = 0;
  int last_line = 0;
};

// A "subject | key | value" bullet from the Relations or Properties section.
struct DraftStatement {
  std::string subject;
  std::string key;
  std::string value;
  int line = 0;
};

struct TemplateDraft {
  std::string source;
  std::vector<DraftEntity> entities;
  std::vector<DraftStatement> relations;
  std::vector<DraftStatement> properties;
  std::map<std::string, Iri> proposed_iris;  // entity name -> minted IRI
  std::vector<std::string> warnings;
};

// Throws IngestError(EmptyTemplate) when no recognised section is present.
TemplateDraft parse_template(std::string_view markdown, std::string source = "<input>");

// Concatenates drafts so references resolve across templates.
TemplateDraft combine_drafts(const std::vector<TemplateDraft>& drafts);

// References resolve against the draft first, then against `context`.
// Throws IngestError(UnresolvableReference / InvalidField).
std::vector<Triple> draft_to_triples(const TemplateDraft& draft, const Graph* context = nullptr);

enum class MergeMode { Additive, Strict };

struct MergeConflict {
  Iri subject;
  Iri predicate;
  Term existing;
  Term incoming;
};

struct MergeReport {
  size_t incoming = 0;
  size_t added = 0;
  size_t skipped = 0;  // already present
  std::vector<MergeConflict> conflicts;
};

// Strict mode skips every triple of a subject whose functional property
// (label, LaTeX expression, external id) differs from the stored value.
MergeReport merge(Graph& graph, const std::vector<Triple>& triples, MergeMode mode);

std::string merge_report_to_json(const MergeReport& report);

}  // namespace mathkg
