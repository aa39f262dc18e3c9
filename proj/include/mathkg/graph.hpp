#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mathkg/schema.hpp"
#include "mathkg/term.hpp"

namespace mathkg {

// One position of a TriplePattern: a bound term or a named variable.
struct PatternSlot {
  std::optional<Term> term;
  std::string variable;

  static PatternSlot bound(Term t) { return {std::move(t), {}}; }
  static PatternSlot var(std::string name) { return {std::nullopt, std::move(name)}; }
  bool is_variable() const noexcept { return !term.has_value(); }
};

struct TriplePattern {
  PatternSlot subject;
  PatternSlot predicate;
  PatternSlot object;
};

using Binding = std::map<std::string, Term>;

namespace detail {
// Bound prefix of a key in some index order, used for range scans.
struct Probe {
  const Term* first = nullptr;
  const Term* second = nullptr;
  int length = 0;
};
struct SpoLess {
  using is_transparent = void;
  bool operator()(const Triple& a, const Triple& b) const { return a < b; }
  bool operator()(const Triple& a, const Probe& p) const;
  bool operator()(const Probe& p, const Triple& a) const;
};
struct PosLess {
  using is_transparent = void;
  bool operator()(const Triple* a, const Triple* b) const;
  bool operator()(const Triple* a, const Probe& p) const;
  bool operator()(const Probe& p, const Triple* a) const;
};
struct OspLess {
  using is_transparent = void;
  bool operator()(const Triple* a, const Triple* b) const;
  bool operator()(const Triple* a, const Probe& p) const;
  bool operator()(const Probe& p, const Triple* a) const;
};
}  // namespace detail

using TripleSet = std::set<Triple, detail::SpoLess>;
using PropertyPair = std::pair<Iri, Term>;
using PropertySet = std::set<PropertyPair>;

// In-memory triple set with SPO, POS and OSP indexes. Iteration is always in
// lexicographic term order. Not internally synchronized: many readers or one
// writer.
class Graph {
 public:
  Graph();
  explicit Graph(PrefixMap prefixes);
  Graph(const Graph& other);
  Graph& operator=(const Graph& other);
  Graph(Graph&&) noexcept;
  Graph& operator=(Graph&&) noexcept;
  ~Graph();

  // Returns false when the triple was already present.
  bool insert(Triple triple);
  bool remove(const Triple& triple);
  bool contains(const Triple& triple) const;
  size_t size() const noexcept { return spo_.size(); }
  bool empty() const noexcept { return spo_.empty(); }
  void clear();

  const PrefixMap& prefixes() const noexcept { return prefixes_; }
  PrefixMap& prefixes() noexcept { return prefixes_; }

  // All triples in SPO order.
  const TripleSet& triples() const noexcept { return spo_; }

  // Calls `fn` for every triple unifying with the (s, p, o) constraints, where
  // nullptr means unconstrained. Order follows the index chosen. Returning
  // false from `fn` stops the scan.
  void scan(const Term* s, const Term* p, const Term* o,
            const std::function<bool(const Triple&)>& fn) const;
  size_t count(const Term* s, const Term* p, const Term* o) const;

  std::vector<Binding> match(const TriplePattern& pattern) const;

  std::vector<Term> objects(const Iri& subject, const Iri& predicate) const;
  std::vector<Iri> subjects(const Iri& predicate, const Term& object) const;
  bool has_type(const Iri& subject, OntologyClass cls) const;
  std::vector<OntologyClass> types_of(const Iri& subject) const;
  std::vector<Iri> instances_of(OntologyClass cls) const;
  std::optional<std::string> label(const Iri& subject) const;
  // True when the IRI occurs as a subject or object anywhere.
  bool mentions(const Iri& iri) const;

  // (predicate, object) pairs of `subject` whose predicate starts with
  // `namespace_filter`.
  PropertySet properties_of(const Iri& subject, std::string_view namespace_filter) const;

  // Cardinality of each index; all three are equal at all times.
  struct IndexSizes {
    size_t spo, pos, osp;
  };
  IndexSizes index_sizes() const noexcept { return {spo_.size(), pos_.size(), osp_.size()}; }
  // Index contents in each index's own order, for consistency checks.
  std::vector<Triple> dump_pos() const;
  std::vector<Triple> dump_osp() const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.spo_ == b.spo_; }

 private:
  void rebuild_secondary();

  TripleSet spo_;
  std::set<const Triple*, detail::PosLess> pos_;
  std::set<const Triple*, detail::OspLess> osp_;
  PrefixMap prefixes_;
};

Graph graph_from(const std::vector<Triple>& triples, PrefixMap prefixes = default_prefixes());

}  // namespace mathkg
