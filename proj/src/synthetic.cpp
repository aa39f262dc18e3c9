#include "mathkg/synthetic.hpp"

#include <array>
#include <random>

namespace mathkg {

namespace {

using C = OntologyClass;

class Generator {
 public:
  Generator(size_t entities, uint64_t seed) : rng_(seed) {
    // Share of each class in per-mille; the remainder goes to algorithms.
    const std::array<std::pair<C, size_t>, kClassCount> shares = {{
        {C::ResearchField, 10},    {C::ResearchProblem, 50},        {C::MathematicalModel, 100},
        {C::MathematicalFormulation, 200}, {C::Quantity, 200},      {C::QuantityKind, 20},
        {C::ComputationalTask, 100}, {C::AlgorithmicTask, 40},      {C::Software, 40},
        {C::Benchmark, 20},        {C::Publication, 20},            {C::Algorithm, 0},
    }};
    size_t used = 0;
    for (auto [cls, share] : shares) {
      size_t n = cls == C::Algorithm ? entities - used : std::max<size_t>(1, entities * share / 1000);
      used += n;
      auto& list = ids_[static_cast<size_t>(cls)];
      for (size_t i = 0; i < n; ++i) list.push_back(mint(cls, i));
    }
  }

  Graph run(size_t triples) {
    for (auto cls : kAllClasses) {
      size_t i = 0;
      for (const auto& e : of(cls)) {
        g_.insert({e, rdf_type(), Term(class_iri(cls))});
        g_.insert({e, rdfs_label(),
                   Term(Literal::string("Synthetic " + std::string(class_display_name(cls)) + " " +
                                        std::to_string(i++)))});
      }
    }

    const auto& fields = of(C::ResearchField);
    const auto& problems = of(C::ResearchProblem);
    const auto& models = of(C::MathematicalModel);
    const auto& forms = of(C::MathematicalFormulation);
    const auto& quantities = of(C::Quantity);
    const auto& kinds = of(C::QuantityKind);
    const auto& cts = of(C::ComputationalTask);
    const auto& ats = of(C::AlgorithmicTask);
    const auto& algs = of(C::Algorithm);
    const auto& software = of(C::Software);
    const auto& benchmarks = of(C::Benchmark);
    const auto& pubs = of(C::Publication);

    const size_t patterns = std::max<size_t>(1, forms.size() / 10);
    const size_t plain_forms = forms.size() > patterns ? forms.size() - patterns : forms.size();
    const size_t pattern_begin = plain_forms < forms.size() ? plain_forms : 0;

    for (const auto& p : problems) link("containsProblem", pick(fields), p);
    for (size_t i = 0; i < models.size(); ++i) {
      link("modeledBy", problems[i % problems.size()], models[i]);
      if (coin()) link("modeledBy", pick(problems), models[i]);
    }
    for (size_t i = 0; i < plain_forms; ++i) {
      const Iri& f = forms[i];
      link("containsFormulation", models[i % models.size()], f);
      for (int k = 0, n = between(2, 3); k < n; ++k) link("containsQuantity", f, pick(quantities));
      for (int k = 0, n = between(0, 3); k < n; ++k) flag(f);
    }
    for (size_t i = plain_forms; i < forms.size(); ++i) {
      for (int k = 0, n = between(1, 2); k < n; ++k) flag(forms[i]);
    }
    for (const auto& q : quantities) link("isKindOf", q, pick(kinds));
    for (size_t i = 0; i < cts.size(); ++i) {
      link("appliedByTask", models[i % models.size()], cts[i]);
      link("equivalentTo", cts[i], pick(ats));
    }
    for (const auto& a : algs) {
      for (int k = 0, n = between(1, 2); k < n; ++k) link("solves", a, pick(ats));
      for (int k = 0, n = between(0, 2); k < n; ++k) {
        static const std::array<const char*, 3> rels = {"requires", "recommends", "precludes"};
        const Iri& pattern = forms[pattern_begin + index(forms.size() - pattern_begin)];
        link(rels[index(rels.size())], a, pattern);
      }
      link("implementedBy", a, pick(software));
    }
    for (const auto& s : software) link("testedBy", s, pick(benchmarks));
    for (const auto& t : ats) link("instantiatedBy", t, pick(benchmarks));
    for (size_t i = 0; i < pubs.size() * 5; ++i) {
      const auto& cls = kAllClasses[index(kClassCount)];
      link("documentedIn", pick(of(cls)), pick(pubs));
    }

    size_t note = 0;
    while (g_.size() < triples) {
      const auto& cls = kAllClasses[index(kClassCount)];
      g_.insert({pick(of(cls)), rdfs_comment(), Term(Literal::string("note " + std::to_string(note++)))});
    }
    return std::move(g_);
  }

 private:
  static Iri mint(C cls, size_t i) {
    if (cls == C::ResearchProblem && i == 0) return mmdb("GravitationalEffectsOnFruit");
    std::string local = "Syn" + std::string(class_name(cls)) + std::to_string(i);
    return is_mathalgodb_class(cls) ? madb(local) : mmdb(local);
  }

  const std::vector<Iri>& of(C cls) const { return ids_[static_cast<size_t>(cls)]; }

  size_t index(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng_); }
  int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return between(0, 1) == 1; }
  const Iri& pick(const std::vector<Iri>& list) { return list[index(list.size())]; }

  void link(const std::string& local, const Iri& s, const Iri& o) {
    const RelationSpec* spec = schema().find(mmdb(local));
    if (!spec) spec = schema().find(madb(local));
    g_.insert({s, spec->forward, Term(o)});
    if (spec->inverse) g_.insert({o, *spec->inverse, Term(s)});
  }

  void flag(const Iri& f) {
    static const std::array<const char*, 8> flags = {"isStiff",  "isLinear",   "isSymmetric",
                                                     "isSparse", "isToeplitz", "isSmooth",
                                                     "isPositiveDefinite", "isHighDimensional"};
    if (between(0, 4) == 0) {
      g_.insert({f, mmdb("smoothnessOrder"), Term(Literal::integer(between(1, 6)))});
    } else {
      g_.insert({f, mmdb(flags[index(flags.size())]), Term(Literal::boolean(coin()))});
    }
  }

  std::mt19937_64 rng_;
  std::array<std::vector<Iri>, kClassCount> ids_;
  Graph g_;
};

}  // namespace

Graph synthetic_graph(size_t entities, size_t triples, uint64_t seed) {
  return Generator(std::max<size_t>(entities, kClassCount), seed).run(triples);
}

}  // namespace mathkg
