#include "mathkg/graph.hpp"

#include <algorithm>

namespace mathkg {

namespace detail {
namespace {

int three_way(const Iri& x, const Term& t) {
  const Iri* other = t.as_iri();
  if (!other) return -1;  // IRIs order before literals
  int c = x.str().compare(other->str());
  return (c > 0) - (c < 0);
}

int three_way(const Term& x, const Term& t) {
  auto c = x <=> t;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

// Compare the bound prefix of a key (k0, k1) against a probe. Returns the sign
// of key - probe over the first `length` components.
template <typename K0, typename K1>
int compare_prefix(const K0& k0, const K1& k1, const Probe& p) {
  if (p.length >= 1) {
    if (int c = three_way(k0, *p.first)) return c;
  }
  if (p.length >= 2) {
    if (int c = three_way(k1, *p.second)) return c;
  }
  return 0;
}

bool pos_less(const Triple& a, const Triple& b) {
  if (a.predicate != b.predicate) return a.predicate < b.predicate;
  if (a.object != b.object) return a.object < b.object;
  return a.subject < b.subject;
}

bool osp_less(const Triple& a, const Triple& b) {
  if (a.object != b.object) return a.object < b.object;
  if (a.subject != b.subject) return a.subject < b.subject;
  return a.predicate < b.predicate;
}

}  // namespace

bool SpoLess::operator()(const Triple& a, const Probe& p) const {
  return compare_prefix(a.subject, a.predicate, p) < 0;
}
bool SpoLess::operator()(const Probe& p, const Triple& a) const {
  return compare_prefix(a.subject, a.predicate, p) > 0;
}
bool PosLess::operator()(const Triple* a, const Triple* b) const { return pos_less(*a, *b); }
bool PosLess::operator()(const Triple* a, const Probe& p) const {
  return compare_prefix(a->predicate, a->object, p) < 0;
}
bool PosLess::operator()(const Probe& p, const Triple* a) const {
  return compare_prefix(a->predicate, a->object, p) > 0;
}
bool OspLess::operator()(const Triple* a, const Triple* b) const { return osp_less(*a, *b); }
bool OspLess::operator()(const Triple* a, const Probe& p) const {
  return compare_prefix(a->object, a->subject, p) < 0;
}
bool OspLess::operator()(const Probe& p, const Triple* a) const {
  return compare_prefix(a->object, a->subject, p) > 0;
}

}  // namespace detail

Graph::Graph() : prefixes_(default_prefixes()) {}
Graph::Graph(PrefixMap prefixes) : prefixes_(std::move(prefixes)) {}

Graph::Graph(const Graph& other) : spo_(other.spo_), prefixes_(other.prefixes_) {
  rebuild_secondary();
}

Graph& Graph::operator=(const Graph& other) {
  if (this != &other) {
    spo_ = other.spo_;
    prefixes_ = other.prefixes_;
    rebuild_secondary();
  }
  return *this;
}

// std::set move keeps node addresses, so the pointer indexes stay valid.
Graph::Graph(Graph&&) noexcept = default;
Graph& Graph::operator=(Graph&&) noexcept = default;
Graph::~Graph() = default;

void Graph::rebuild_secondary() {
  pos_.clear();
  osp_.clear();
  for (const auto& t : spo_) {
    pos_.insert(&t);
    osp_.insert(&t);
  }
}

bool Graph::insert(Triple triple) {
  auto [it, inserted] = spo_.insert(std::move(triple));
  if (inserted) {
    pos_.insert(&*it);
    osp_.insert(&*it);
  }
  return inserted;
}

bool Graph::remove(const Triple& triple) {
  auto it = spo_.find(triple);
  if (it == spo_.end()) return false;
  pos_.erase(&*it);
  osp_.erase(&*it);
  spo_.erase(it);
  return true;
}

bool Graph::contains(const Triple& triple) const { return spo_.contains(triple); }

void Graph::clear() {
  pos_.clear();
  osp_.clear();
  spo_.clear();
}

void Graph::scan(const Term* s, const Term* p, const Term* o,
                 const std::function<bool(const Triple&)>& fn) const {
  auto accept = [&](const Triple& t) {
    if (s && !(s->is_iri() && t.subject == s->iri())) return true;
    if (p && !(p->is_iri() && t.predicate == p->iri())) return true;
    if (o && t.object != *o) return true;
    return fn(t);
  };

  if (s && (p || !o)) {
    detail::Probe probe{s, p, p ? 2 : 1};
    auto [lo, hi] = spo_.equal_range(probe);
    for (auto it = lo; it != hi; ++it) {
      if (!accept(*it)) return;
    }
  } else if (p) {
    detail::Probe probe{p, o, o ? 2 : 1};
    auto [lo, hi] = pos_.equal_range(probe);
    for (auto it = lo; it != hi; ++it) {
      if (!accept(**it)) return;
    }
  } else if (o) {
    detail::Probe probe{o, s, s ? 2 : 1};
    auto [lo, hi] = osp_.equal_range(probe);
    for (auto it = lo; it != hi; ++it) {
      if (!accept(**it)) return;
    }
  } else {
    for (const auto& t : spo_) {
      if (!fn(t)) return;
    }
  }
}

size_t Graph::count(const Term* s, const Term* p, const Term* o) const {
  size_t n = 0;
  scan(s, p, o, [&](const Triple&) {
    ++n;
    return true;
  });
  return n;
}

std::vector<Binding> Graph::match(const TriplePattern& pattern) const {
  const Term* s = pattern.subject.term ? &*pattern.subject.term : nullptr;
  const Term* p = pattern.predicate.term ? &*pattern.predicate.term : nullptr;
  const Term* o = pattern.object.term ? &*pattern.object.term : nullptr;

  std::vector<Binding> out;
  scan(s, p, o, [&](const Triple& t) {
    Binding b;
    auto bind = [&](const PatternSlot& slot, Term value) {
      if (!slot.is_variable()) return true;
      auto [it, inserted] = b.emplace(slot.variable, value);
      return inserted || it->second == value;
    };
    if (bind(pattern.subject, Term(t.subject)) && bind(pattern.predicate, Term(t.predicate)) &&
        bind(pattern.object, t.object)) {
      out.push_back(std::move(b));
    }
    return true;
  });
  return out;
}

std::vector<Term> Graph::objects(const Iri& subject, const Iri& predicate) const {
  std::vector<Term> out;
  Term s(subject), p(predicate);
  scan(&s, &p, nullptr, [&](const Triple& t) {
    out.push_back(t.object);
    return true;
  });
  return out;
}

std::vector<Iri> Graph::subjects(const Iri& predicate, const Term& object) const {
  std::vector<Iri> out;
  Term p(predicate);
  scan(nullptr, &p, &object, [&](const Triple& t) {
    out.push_back(t.subject);
    return true;
  });
  return out;
}

bool Graph::has_type(const Iri& subject, OntologyClass cls) const {
  return contains(Triple{subject, rdf_type(), Term(class_iri(cls))});
}

std::vector<OntologyClass> Graph::types_of(const Iri& subject) const {
  std::vector<OntologyClass> out;
  for (const auto& o : objects(subject, rdf_type())) {
    if (const auto* iri = o.as_iri()) {
      if (auto c = class_from_iri(*iri)) out.push_back(*c);
    }
  }
  return out;
}

std::vector<Iri> Graph::instances_of(OntologyClass cls) const {
  return subjects(rdf_type(), Term(class_iri(cls)));
}

std::optional<std::string> Graph::label(const Iri& subject) const {
  for (const auto& o : objects(subject, rdfs_label())) {
    if (o.is_literal()) return o.literal().lexical();
  }
  return std::nullopt;
}

bool Graph::mentions(const Iri& iri) const {
  Term t(iri);
  bool found = false;
  scan(&t, nullptr, nullptr, [&](const Triple&) {
    found = true;
    return false;
  });
  if (found) return true;
  scan(nullptr, nullptr, &t, [&](const Triple&) {
    found = true;
    return false;
  });
  return found;
}

PropertySet Graph::properties_of(const Iri& subject, std::string_view namespace_filter) const {
  PropertySet out;
  Term s(subject);
  scan(&s, nullptr, nullptr, [&](const Triple& t) {
    if (t.predicate.starts_with(namespace_filter)) out.emplace(t.predicate, t.object);
    return true;
  });
  return out;
}

std::vector<Triple> Graph::dump_pos() const {
  std::vector<Triple> out;
  out.reserve(pos_.size());
  for (const auto* t : pos_) out.push_back(*t);
  return out;
}

std::vector<Triple> Graph::dump_osp() const {
  std::vector<Triple> out;
  out.reserve(osp_.size());
  for (const auto* t : osp_) out.push_back(*t);
  return out;
}

Graph graph_from(const std::vector<Triple>& triples, PrefixMap prefixes) {
  Graph g(std::move(prefixes));
  for (const auto& t : triples) g.insert(t);
  return g;
}

}  // namespace mathkg
