#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "mathkg/query.hpp"

namespace mathkg::query {

namespace {

// A pattern position after variable resolution: a constant or a variable slot.
struct Slot {
  int var = -1;
  const Term* constant = nullptr;
};

struct CompiledPattern {
  Slot s, p, o;
};

struct CompiledGroup;

struct CompiledExpr {
  FilterExpr::Kind kind;
  const CompiledGroup* group = nullptr;
  std::vector<CompiledExpr> args;
  int var = -1;
  const Term* constant = nullptr;
};

struct CompiledGroup {
  std::vector<CompiledPattern> patterns;
  std::vector<CompiledExpr> filters;
};

using Bindings = std::vector<std::optional<Term>>;

class Compiler {
 public:
  const CompiledGroup* compile(const GroupPattern& g) {
    auto& out = groups_.emplace_back();
    for (const auto& p : g.patterns) {
      out.patterns.push_back({slot(p.subject), slot(p.predicate), slot(p.object)});
    }
    for (const auto& f : g.filters) out.filters.push_back(expr(f));
    return &out;
  }

  int variable(const std::string& name) {
    auto [it, inserted] = vars_.emplace(name, static_cast<int>(vars_.size()));
    return it->second;
  }

  size_t variable_count() const { return vars_.size(); }

 private:
  Slot slot(const PatternSlot& s) {
    if (s.is_variable()) return {variable(s.variable), nullptr};
    return {-1, &*s.term};
  }

  CompiledExpr expr(const FilterExpr& e) {
    CompiledExpr c;
    c.kind = e.kind;
    switch (e.kind) {
      case FilterExpr::Kind::Exists:
      case FilterExpr::Kind::NotExists:
        c.group = compile(*e.group);
        break;
      case FilterExpr::Kind::Variable:
        c.var = variable(e.variable);
        break;
      case FilterExpr::Kind::Constant:
        c.constant = &*e.constant;
        break;
      case FilterExpr::Kind::Contains:
      case FilterExpr::Kind::Str:
        for (const auto& a : e.args) c.args.push_back(expr(a));
        break;
    }
    return c;
  }

  std::deque<CompiledGroup> groups_;
  std::map<std::string, int> vars_;
};

struct Value {
  enum class Kind { Error, Bool, Str, TermRef } kind = Kind::Error;
  bool boolean = false;
  std::string str;
  const Term* term = nullptr;
};

bool string_like(const Literal& lit) {
  return lit.datatype() == Datatype::String || lit.datatype() == Datatype::Latex ||
         lit.datatype() == Datatype::ExternalId;
}

class Evaluator {
 public:
  Evaluator(const Graph& graph, bool reorder) : graph_(graph), reorder_(reorder) {}

  using SolutionFn = std::function<bool(const Bindings&)>;

  // Enumerates solutions of `g` extending `row`. With `apply_filters` the
  // group's filters are checked at each leaf. Returns false if `fn` stopped
  // the enumeration.
  bool solve(const CompiledGroup& g, Bindings& row, bool apply_filters, const SolutionFn& fn) const {
    auto order = join_order(g, row);
    return extend(g, order, 0, row, apply_filters, fn);
  }

  bool passes(const CompiledGroup& g, Bindings& row) const {
    for (const auto& f : g.filters) {
      if (effective_boolean(eval(f, row)) != std::optional<bool>(true)) return false;
    }
    return true;
  }

 private:
  std::vector<size_t> join_order(const CompiledGroup& g, const Bindings& row) const {
    std::vector<size_t> order(g.patterns.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (!reorder_ || order.size() < 2) return order;

    std::vector<char> bound(row.size());
    for (size_t v = 0; v < row.size(); ++v) bound[v] = row[v].has_value();
    auto is_bound = [&](const Slot& s) { return s.constant || bound[static_cast<size_t>(s.var)]; };

    std::vector<size_t> result;
    std::vector<char> used(order.size(), 0);
    for (size_t step = 0; step < order.size(); ++step) {
      int best_score = -1;
      size_t best = 0;
      for (size_t i = 0; i < order.size(); ++i) {
        if (used[i]) continue;
        const auto& p = g.patterns[i];
        int score = 3 * is_bound(p.s) + 2 * is_bound(p.o) + is_bound(p.p);
        if (score > best_score) {
          best_score = score;
          best = i;
        }
      }
      used[best] = 1;
      result.push_back(best);
      const auto& p = g.patterns[best];
      for (const Slot* s : {&p.s, &p.p, &p.o}) {
        if (s->var >= 0) bound[static_cast<size_t>(s->var)] = 1;
      }
    }
    return result;
  }

  const Term* resolve(const Slot& s, const Bindings& row) const {
    if (s.constant) return s.constant;
    const auto& b = row[static_cast<size_t>(s.var)];
    return b ? &*b : nullptr;
  }

  bool extend(const CompiledGroup& g, const std::vector<size_t>& order, size_t depth,
              Bindings& row, bool apply_filters, const SolutionFn& fn) const {
    if (depth == order.size()) {
      if (apply_filters && !passes(g, row)) return true;
      return fn(row);
    }
    const auto& p = g.patterns[order[depth]];
    const Term* s = resolve(p.s, row);
    const Term* pr = resolve(p.p, row);
    const Term* o = resolve(p.o, row);

    bool keep_going = true;
    graph_.scan(s, pr, o, [&](const Triple& t) {
      std::vector<int> newly;
      auto bind = [&](const Slot& slot, const Term& value) {
        if (slot.var < 0) return true;
        auto& cell = row[static_cast<size_t>(slot.var)];
        if (cell) return *cell == value;
        cell = value;
        newly.push_back(slot.var);
        return true;
      };
      bool ok = bind(p.s, Term(t.subject)) && bind(p.p, Term(t.predicate)) && bind(p.o, t.object);
      if (ok) keep_going = extend(g, order, depth + 1, row, apply_filters, fn);
      for (int v : newly) row[static_cast<size_t>(v)].reset();
      return keep_going;
    });
    return keep_going;
  }

  bool exists(const CompiledGroup& g, Bindings& row) const {
    bool found = false;
    solve(g, row, true, [&](const Bindings&) {
      found = true;
      return false;
    });
    return found;
  }

  static std::optional<std::string> as_string(const Value& v) {
    switch (v.kind) {
      case Value::Kind::Str:
        return v.str;
      case Value::Kind::TermRef:
        if (const auto* lit = v.term->as_literal(); lit && string_like(*lit)) return lit->lexical();
        return std::nullopt;
      default:
        return std::nullopt;
    }
  }

  Value eval(const CompiledExpr& e, Bindings& row) const {
    Value v;
    switch (e.kind) {
      case FilterExpr::Kind::Exists:
        v.kind = Value::Kind::Bool;
        v.boolean = exists(*e.group, row);
        break;
      case FilterExpr::Kind::NotExists:
        v.kind = Value::Kind::Bool;
        v.boolean = !exists(*e.group, row);
        break;
      case FilterExpr::Kind::Variable: {
        const auto& cell = row[static_cast<size_t>(e.var)];
        if (cell) {
          v.kind = Value::Kind::TermRef;
          v.term = &*cell;
        }
        break;
      }
      case FilterExpr::Kind::Constant:
        v.kind = Value::Kind::TermRef;
        v.term = e.constant;
        break;
      case FilterExpr::Kind::Str: {
        Value arg = eval(e.args[0], row);
        if (arg.kind == Value::Kind::TermRef) {
          v.kind = Value::Kind::Str;
          v.str = arg.term->lexical();
        } else if (arg.kind == Value::Kind::Str) {
          v = std::move(arg);
        } else if (arg.kind == Value::Kind::Bool) {
          v.kind = Value::Kind::Str;
          v.str = arg.boolean ? "true" : "false";
        }
        break;
      }
      case FilterExpr::Kind::Contains: {
        auto haystack = as_string(eval(e.args[0], row));
        auto needle = as_string(eval(e.args[1], row));
        if (haystack && needle) {
          v.kind = Value::Kind::Bool;
          v.boolean = haystack->find(*needle) != std::string::npos;
        }
        break;
      }
    }
    return v;
  }

  static std::optional<bool> effective_boolean(const Value& v) {
    switch (v.kind) {
      case Value::Kind::Error:
        return std::nullopt;
      case Value::Kind::Bool:
        return v.boolean;
      case Value::Kind::Str:
        return !v.str.empty();
      case Value::Kind::TermRef: {
        const auto* lit = v.term->as_literal();
        if (!lit) return std::nullopt;
        switch (lit->datatype()) {
          case Datatype::Boolean:
            return lit->lexical() == "true";
          case Datatype::Integer:
          case Datatype::Decimal:
            return lit->lexical().find_first_of("123456789") != std::string::npos;
          default:
            return !lit->lexical().empty();
        }
      }
    }
    return std::nullopt;
  }

  const Graph& graph_;
  bool reorder_;
};

bool in_top_level_patterns(const GroupPattern& g, const std::string& var) {
  for (const auto& p : g.patterns) {
    for (const PatternSlot* s : {&p.subject, &p.predicate, &p.object}) {
      if (s->is_variable() && s->variable == var) return true;
    }
  }
  return false;
}

}  // namespace

ResultTable evaluate(const Graph& graph, const SelectQuery& query, EvaluateOptions options) {
  Compiler compiler;
  const CompiledGroup* root = compiler.compile(query.where);
  std::vector<int> projected;
  for (const auto& v : query.projection) projected.push_back(compiler.variable(v));

  ResultTable table;
  table.header = query.projection;
  for (const auto& v : query.projection) {
    if (!in_top_level_patterns(query.where, v)) {
      table.warnings.push_back("projected variable ?" + v + " is never bound");
    }
  }

  Evaluator evaluator(graph, options.reorder);

  // Join the top-level patterns first, then run the filters per candidate.
  std::vector<Bindings> candidates;
  Bindings row(compiler.variable_count());
  evaluator.solve(*root, row, false, [&](const Bindings& b) {
    candidates.push_back(b);
    return true;
  });

  std::vector<char> keep(candidates.size(), 0);
  const auto n = static_cast<long>(candidates.size());
  if (options.execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < n; ++i) {
      keep[static_cast<size_t>(i)] = evaluator.passes(*root, candidates[static_cast<size_t>(i)]);
    }
  } else {
    for (long i = 0; i < n; ++i) {
      keep[static_cast<size_t>(i)] = evaluator.passes(*root, candidates[static_cast<size_t>(i)]);
    }
  }

  std::set<Row> distinct;
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (!keep[i]) continue;
    Row out;
    out.reserve(projected.size());
    for (int v : projected) out.push_back(candidates[i][static_cast<size_t>(v)]);
    distinct.insert(std::move(out));
  }
  table.rows.assign(distinct.begin(), distinct.end());
  return table;
}

}  // namespace mathkg::query
