#include "txinfer/unify.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace txinfer {

namespace {

bool is_object(const Type& t) { return t.is_class() && t.name == kObject; }

bool mentions(const Constraint& c, const std::string& tph) {
  return c.lhs.contains_tph(tph) || c.rhs.contains_tph(tph);
}

Constraint substituted(const TphMap& map, const Constraint& c) {
  return {c.kind, substitute(map, c.lhs), substitute(map, c.rhs), c.origin};
}

struct State {
  std::deque<Constraint> todo;
  ConstraintSet pairs;     // placeholder < placeholder
  ConstraintSet deferred;  // branch points: one side a placeholder, the other not
  TphMap sigma;
  std::size_t next_fresh = 0;
};

/// A way to discharge a branch point: bind `tph` and add `extra`.
struct Branch {
  std::string tph;
  Type binding;
  ConstraintSet extra;
};

class Unifier {
 public:
  Unifier(const ConstraintSet& input, const ClassTable& table, const UnifyOptions& options)
      : table_(table), options_(options) {
    for (const auto& name : tphs_of(input)) inputs_.insert(name);
    std::set<std::pair<int, std::string>> seen;
    auto note_vars = [&](const Type& t, auto&& self) -> void {
      if (t.is_var() && seen.insert({t.scope, t.name}).second) vars_.push_back(t);
      for (const auto& a : t.args) self(a, self);
    };
    for (const auto& c : input) {
      note_vars(c.lhs, note_vars);
      note_vars(c.rhs, note_vars);
    }
    for (const auto& [key, bound] : options_.bounds) {
      note_vars(Type::var(key.second, key.first), note_vars);
      note_vars(bound, note_vars);
    }
  }

  UnifyOutcome run(const ConstraintSet& input) {
    State s;
    for (const auto& c : input) s.todo.push_back(c);
    search(std::move(s));
    UnifyOutcome out;
    out.solutions = prune_instances(std::move(found_), inputs_, table_, options_.bounds);
    out.failure = best_failure_;
    out.step_limit_hit = step_limit_hit_;
    return out;
  }

 private:
  // ---- declared type parameters -------------------------------------------

  std::optional<Type> bound_of(const Type& var) const {
    auto it = options_.bounds.find({var.scope, var.name});
    if (it == options_.bounds.end()) return std::nullopt;
    return it->second;
  }

  /// X, its bound, the bound's bound, ..., then the class chain to Object.
  std::vector<Type> chain(const Type& start) const {
    std::vector<Type> out;
    std::optional<Type> cur = start;
    while (cur && out.size() < 64) {
      out.push_back(*cur);
      if (cur->is_var()) {
        cur = bound_of(*cur);
        if (!cur) cur = object_type();
      } else if (cur->is_class()) {
        cur = table_.direct_super(*cur);
      } else {
        cur.reset();
      }
    }
    if (out.empty() || !is_object(out.back())) out.push_back(object_type());
    return out;
  }

  // ---- failure bookkeeping ------------------------------------------------

  bool fail(const State& s, const Constraint& c, std::string reason) {
    const std::size_t unresolved = s.todo.size() + s.deferred.size() + 1;
    if (!best_failure_ || unresolved < best_failure_->unresolved) {
      best_failure_ = UnifyFailure{c, std::move(reason), unresolved};
    }
    return false;
  }

  // ---- deterministic rules ------------------------------------------------

  Type fresh(std::size_t& counter) const {
    return Type::tph(std::string(1, kInternalTphPrefix) + std::to_string(counter++));
  }

  bool bind(State& s, const std::string& tph, const Type& image, const Constraint& origin) {
    if (image.contains_tph(tph)) return fail(s, origin, "occurs check failed");
    if (image.depth() > options_.max_type_depth) return fail(s, origin, "type grows too deep");
    const TphMap one{{tph, image}};
    for (auto& [k, v] : s.sigma) v = substitute(one, v);
    s.sigma[tph] = image;
    for (auto& c : s.todo) c = substituted(one, c);
    auto requeue = [&](ConstraintSet& from) {
      ConstraintSet keep;
      for (auto& c : from) {
        if (mentions(c, tph)) {
          s.todo.push_back(substituted(one, c));
        } else {
          keep.push_back(std::move(c));
        }
      }
      from = std::move(keep);
    };
    requeue(s.pairs);
    requeue(s.deferred);
    return true;
  }

  void push_variance(State& s, const Type& x, const Type& y, Variance v, SourcePos pos) {
    switch (v) {
      case Variance::Invariant: s.todo.push_back(Constraint::eq(x, y, pos)); break;
      case Variance::Covariant: s.todo.push_back(Constraint::less(x, y, pos)); break;
      case Variance::Contravariant: s.todo.push_back(Constraint::less(y, x, pos)); break;
    }
  }

  bool equate(State& s, const Constraint& c) {
    const Type& a = c.lhs;
    const Type& b = c.rhs;
    if (a == b) return true;
    if (a.is_tph() || b.is_tph()) {
      // Keep the caller's placeholders visible: bind the internal one.
      if (a.is_tph() && b.is_tph()) {
        if (is_internal_tph(b.name) && !is_internal_tph(a.name)) return bind(s, b.name, a, c);
        return bind(s, a.name, b, c);
      }
      return a.is_tph() ? bind(s, a.name, b, c) : bind(s, b.name, a, c);
    }
    if (a.kind != b.kind || a.args.size() != b.args.size()) {
      return fail(s, c, "types do not match");
    }
    if (a.is_class() && a.name != b.name) return fail(s, c, "types do not match");
    if (a.is_var() || a.is_void()) return fail(s, c, "types do not match");
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      s.todo.push_back(Constraint::eq(a.args[i], b.args[i], c.origin));
    }
    return true;
  }

  /// `a < b` with neither side a placeholder and `b` not Object.
  bool reduce(State& s, const Constraint& c) {
    const Type& a = c.lhs;
    const Type& b = c.rhs;
    if (a.is_ground() && b.is_ground()) {
      return is_subtype(a, b, table_, options_.bounds) ? true : fail(s, c, "not a subtype");
    }
    if (a.is_void() || b.is_void()) return fail(s, c, "void is only a subtype of itself");
    if (a.is_var()) {
      if (b.is_var() && a == b) return true;
      s.todo.push_back(Constraint::less(bound_of(a).value_or(object_type()), b, c.origin));
      return true;
    }
    if (b.is_var()) return fail(s, c, "only type parameters are below a type parameter");
    if (a.is_function() || b.is_function()) {
      if (a.kind != b.kind || a.fun_arity() != b.fun_arity()) {
        return fail(s, c, "function types do not match");
      }
      const FunFamily& fam =
          a.kind == TypeKind::Fun ? table_.fun_family() : table_.fun_void_family();
      for (std::size_t i = 0; i < a.fun_arity(); ++i) {
        push_variance(s, a.args[i], b.args[i], fam.param_variance, c.origin);
      }
      if (a.kind == TypeKind::Fun) {
        push_variance(s, a.args.back(), b.args.back(), fam.return_variance, c.origin);
      }
      return true;
    }
    const auto inst = table_.as_instance_of(a, b.name);
    if (!inst) return fail(s, c, "not a subtype");
    const auto* entry = table_.find(b.name);
    for (std::size_t i = 0; i < b.args.size(); ++i) {
      push_variance(s, inst->args[i], b.args[i], entry->variance[i], c.origin);
    }
    return true;
  }

  bool simplify(State& s) {
    while (!s.todo.empty()) {
      if (++steps_ > options_.max_steps) {
        step_limit_hit_ = true;
        return false;
      }
      Constraint c = std::move(s.todo.front());
      s.todo.pop_front();
      if (c.kind == ConstraintKind::DotEq) {
        if (!equate(s, c)) return false;
        continue;
      }
      const Type& a = c.lhs;
      const Type& b = c.rhs;
      if (a == b) continue;
      if (a.is_tph() && b.is_tph()) {
        s.pairs.push_back(std::move(c));
        continue;
      }
      if (is_object(b)) {
        if (a.is_void()) return fail(s, c, "void is only a subtype of itself");
        continue;
      }
      if (a.is_tph() || b.is_tph()) {
        s.deferred.push_back(std::move(c));
        continue;
      }
      if (!reduce(s, c)) return false;
    }
    return true;
  }

  // ---- branch points ------------------------------------------------------

  Type fresh_instance(const Type& like, std::size_t& counter) const {
    Type out = like;
    for (auto& a : out.args) a = fresh(counter);
    return out;
  }

  bool has_variance(const Type& t) const {
    if (t.is_function()) return true;
    if (!t.is_class()) return false;
    const auto* e = table_.find(t.name);
    if (!e) return false;
    return std::any_of(e->variance.begin(), e->variance.end(),
                       [](Variance v) { return v != Variance::Invariant; });
  }

  /// `T < b`: T becomes some type below b.
  std::vector<Branch> below(const std::string& tph, const Type& b, std::size_t& counter) const {
    std::vector<Branch> out;
    if (b.is_void()) {
      out.push_back({tph, b, {}});
      return out;
    }
    if (b.is_class()) {
      for (const auto* d : table_.subclasses_of(b.name)) {
        const Type inst = fresh_instance(d->self_type(), counter);
        out.push_back({tph, inst, {Constraint::less(inst, b)}});
      }
    } else if (b.is_function()) {
      const Type inst = fresh_instance(b, counter);
      out.push_back({tph, inst, {Constraint::less(inst, b)}});
    }
    for (const auto& v : vars_) {
      bool reaches = false;
      for (const auto& link : chain(v)) {
        if (b.is_var()) {
          reaches = reaches || link == b;
        } else if (b.is_class() && link.is_class()) {
          reaches = table_.as_instance_of(link, b.name).has_value();
          break;
        } else if (b.is_function() && !link.is_var()) {
          reaches = link.kind == b.kind && link.fun_arity() == b.fun_arity();
          break;
        }
      }
      if (reaches) out.push_back({tph, v, {Constraint::less(v, b)}});
    }
    return out;
  }

  /// `a < T`: T becomes some type above a.
  std::vector<Branch> above(const Type& a, const std::string& tph, std::size_t& counter) const {
    std::vector<Branch> out;
    if (a.is_void()) {
      out.push_back({tph, a, {}});
      return out;
    }
    if (a.is_function()) {
      const Type inst = fresh_instance(a, counter);
      out.push_back({tph, inst, {Constraint::less(a, inst)}});
      out.push_back({tph, object_type(), {}});
      return out;
    }
    for (const auto& link : chain(a)) {
      if (has_variance(link)) {
        const Type inst = fresh_instance(link, counter);
        out.push_back({tph, inst, {Constraint::less(a, inst)}});
      } else {
        out.push_back({tph, link, {}});
      }
    }
    return out;
  }

  std::vector<Branch> branches(const Constraint& c, std::size_t& counter) const {
    if (c.lhs.is_tph()) return below(c.lhs.name, c.rhs, counter);
    return above(c.lhs, c.rhs.name, counter);
  }

  void search(State s) {
    if (!simplify(s)) return;
    if (s.deferred.empty()) {
      found_.push_back(finish(s));
      return;
    }
    std::size_t best = 0;
    std::size_t best_count = SIZE_MAX;
    for (std::size_t i = 0; i < s.deferred.size(); ++i) {
      std::size_t scratch = s.next_fresh;
      const std::size_t n = branches(s.deferred[i], scratch).size();
      if (n < best_count) {
        best = i;
        best_count = n;
      }
      if (n <= 1) break;
    }
    const Constraint chosen = s.deferred[best];
    s.deferred.erase(s.deferred.begin() + static_cast<std::ptrdiff_t>(best));
    auto options = branches(chosen, s.next_fresh);
    if (options.empty()) {
      fail(s, chosen, "no type in the universe fits");
      return;
    }
    for (auto& br : options) {
      if (step_limit_hit_) return;
      State next = s;
      if (!bind(next, br.tph, br.binding, chosen)) continue;
      for (auto& e : br.extra) {
        e.origin = chosen.origin;
        next.todo.push_back(substituted(next.sigma, e));
      }
      search(std::move(next));
    }
  }

  Solution finish(const State& s) const {
    Solution sol;
    for (const auto& [k, v] : s.sigma) {
      if (inputs_.count(k)) sol.sigma[k] = v;
    }
    sol.remaining = s.pairs;
    normalize(sol.remaining);
    // Canonical names for placeholders created while solving.
    TphMap rename;
    std::size_t next = 0;
    auto visit = [&](const Type& t) {
      for (const auto& name : tphs_of(t)) {
        if (is_internal_tph(name) && !rename.count(name)) rename[name] = fresh(next);
      }
    };
    for (const auto& [k, v] : sol.sigma) visit(v);
    for (const auto& c : sol.remaining) {
      visit(c.lhs);
      visit(c.rhs);
    }
    for (auto& [k, v] : sol.sigma) v = substitute(rename, v);
    for (auto& c : sol.remaining) c = substituted(rename, c);
    normalize(sol.remaining);
    return sol;
  }

  const ClassTable& table_;
  const UnifyOptions& options_;
  std::set<std::string> inputs_;
  std::vector<Type> vars_;
  std::vector<Solution> found_;
  std::optional<UnifyFailure> best_failure_;
  std::size_t steps_ = 0;
  bool step_limit_hit_ = false;
};

bool match(const Type& pattern, const Type& target, TphMap& theta) {
  if (pattern.is_tph()) {
    auto [it, inserted] = theta.emplace(pattern.name, target);
    return inserted || it->second == target;
  }
  if (pattern.kind != target.kind || pattern.name != target.name ||
      pattern.scope != target.scope || pattern.args.size() != target.args.size()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    if (!match(pattern.args[i], target.args[i], theta)) return false;
  }
  return true;
}

bool closed_over(const Type& t, const TphMap& theta) {
  for (const auto& name : tphs_of(t)) {
    if (!theta.count(name)) return false;
  }
  return true;
}

/// Subtype-or-equal comparison used to rank alternative solutions.
bool leaf_leq(const Type& a, const Type& b, const ClassTable& table, const VarBounds& bounds) {
  if (a == b) return true;
  if (is_object(b)) return !a.is_void();
  if (a.kind != b.kind) {
    if (a.is_ground() && b.is_ground() && !a.is_void() && !b.is_void() && (a.is_var() || b.is_var())) {
      return is_subtype(a, b, table, bounds);
    }
    return false;
  }
  switch (a.kind) {
    case TypeKind::Class:
      if (a.name == b.name && a.args.size() == b.args.size()) break;
      return a.is_ground() && b.is_ground() && is_subtype(a, b, table, bounds);
    case TypeKind::Fun:
    case TypeKind::FunVoid:
      if (a.args.size() != b.args.size()) return false;
      break;
    case TypeKind::Var:
      return a.is_ground() && b.is_ground() && is_subtype(a, b, table, bounds);
    default:
      return false;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!leaf_leq(a.args[i], b.args[i], table, bounds)) return false;
  }
  return true;
}

bool solution_leq(const Solution& x, const Solution& y, const ClassTable& table,
                  const VarBounds& bounds) {
  if (!(x.remaining == y.remaining) || x.sigma.size() != y.sigma.size()) return false;
  for (const auto& [k, v] : x.sigma) {
    auto it = y.sigma.find(k);
    if (it == y.sigma.end() || !leaf_leq(v, it->second, table, bounds)) return false;
  }
  return true;
}

}  // namespace

UnifyOutcome unify(const ConstraintSet& constraints, const ClassTable& table,
                   const UnifyOptions& options) {
  return Unifier(constraints, table, options).run(constraints);
}

TphRelation tph_relation(const ConstraintSet& cs) {
  TphRelation rel;
  for (const auto& c : cs) {
    if (c.kind == ConstraintKind::LessDot && c.lhs.is_tph() && c.rhs.is_tph()) {
      rel.insert({c.lhs.name, c.rhs.name});
    }
  }
  return rel;
}

TphRelation transitive_closure(const TphRelation& rel) {
  std::set<std::string> nodes;
  std::map<std::string, std::set<std::string>> succ;
  for (const auto& [a, b] : rel) {
    nodes.insert(a);
    nodes.insert(b);
    succ[a].insert(b);
  }
  TphRelation out;
  for (const auto& start : nodes) {
    std::vector<std::string> stack{start};
    std::set<std::string> seen{start};
    while (!stack.empty()) {
      const std::string cur = stack.back();
      stack.pop_back();
      out.insert({start, cur});
      for (const auto& n : succ[cur]) {
        if (seen.insert(n).second) stack.push_back(n);
      }
    }
  }
  return out;
}

std::vector<std::string> tphs_of(const ConstraintSet& cs) {
  std::vector<std::string> out;
  for (const auto& c : cs) {
    collect_tphs(c.lhs, out);
    collect_tphs(c.rhs, out);
  }
  return out;
}

bool is_instance_of(const Solution& specific, const Solution& general,
                    const std::set<std::string>& inputs, const ClassTable& table,
                    const VarBounds& bounds) {
  TphMap theta;
  for (const auto& x : inputs) {
    auto g = general.sigma.find(x);
    auto s = specific.sigma.find(x);
    const Type pattern = g == general.sigma.end() ? Type::tph(x) : g->second;
    const Type target = s == specific.sigma.end() ? Type::tph(x) : s->second;
    if (!match(pattern, target, theta)) return false;
  }
  const TphRelation closure = transitive_closure(tph_relation(specific.remaining));
  for (const auto& c : general.remaining) {
    if (!closed_over(c.lhs, theta) || !closed_over(c.rhs, theta)) return false;
    const Type a = substitute(theta, c.lhs);
    const Type b = substitute(theta, c.rhs);
    if (a == b || (is_object(b) && !a.is_void())) continue;
    if (a.is_tph() && b.is_tph() && closure.count({a.name, b.name})) continue;
    if (a.is_ground() && b.is_ground() && is_subtype(a, b, table, bounds)) continue;
    return false;
  }
  return true;
}

std::vector<Solution> prune_instances(std::vector<Solution> solutions,
                                      const std::set<std::string>& inputs,
                                      const ClassTable& table, const VarBounds& bounds) {
  // A placeholder-free binding of the general solution only matches the very
  // same term, so candidates are looked up by those positions.
  const std::vector<std::string> keys(inputs.begin(), inputs.end());
  auto binding = [](const Solution& s, const std::string& x) {
    auto it = s.sigma.find(x);
    return it == s.sigma.end() ? Type::tph(x) : it->second;
  };
  std::map<std::vector<bool>, std::map<std::vector<Type>, std::vector<std::size_t>>> index;
  for (std::size_t j = 0; j < solutions.size(); ++j) {
    std::vector<bool> fixed;
    std::vector<Type> terms;
    for (const auto& x : keys) {
      auto t = binding(solutions[j], x);
      const bool closed = tphs_of(t).empty();
      fixed.push_back(closed);
      if (closed) terms.push_back(std::move(t));
    }
    index[fixed][terms].push_back(j);
  }
  auto candidates = [&](std::size_t i) {
    std::vector<std::size_t> out;
    for (const auto& [fixed, by_terms] : index) {
      std::vector<Type> terms;
      for (std::size_t k = 0; k < keys.size(); ++k) {
        if (fixed[k]) terms.push_back(binding(solutions[i], keys[k]));
      }
      if (auto it = by_terms.find(terms); it != by_terms.end()) {
        out.insert(out.end(), it->second.begin(), it->second.end());
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  std::vector<bool> drop(solutions.size(), false);
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    for (std::size_t j : candidates(i)) {
      if (drop[i]) break;
      if (i == j || drop[j]) continue;
      if (!is_instance_of(solutions[i], solutions[j], inputs, table, bounds)) continue;
      // Equivalent solutions keep the first; strict instances always go.
      if (j < i || !is_instance_of(solutions[j], solutions[i], inputs, table, bounds)) {
        drop[i] = true;
      }
    }
  }
  std::vector<Solution> out;
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    if (!drop[i]) out.push_back(std::move(solutions[i]));
  }
  return out;
}

std::vector<Solution> select_tightest(const std::vector<Solution>& solutions,
                                      const ClassTable& table, const VarBounds& bounds) {
  std::vector<Solution> out;
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < solutions.size() && !dominated; ++j) {
      if (i == j) continue;
      dominated = solution_leq(solutions[j], solutions[i], table, bounds) &&
                  !solution_leq(solutions[i], solutions[j], table, bounds);
    }
    const bool duplicate = std::find(out.begin(), out.end(), solutions[i]) != out.end();
    if (!dominated && !duplicate) out.push_back(solutions[i]);
  }
  return out;
}

std::string dump(const std::vector<Solution>& solutions) {
  std::ostringstream os;
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    if (i) os << "\n";
    os << "solution " << i + 1 << "\n";
    os << "remaining:\n";
    for (const auto& c : solutions[i].remaining) {
      os << "  " << to_string(c, Naming::Qualified) << "\n";
    }
    os << "sigma:\n";
    for (const auto& [k, v] : solutions[i].sigma) {
      os << "  " << k << " -> " << to_string(v, Naming::Qualified) << "\n";
    }
  }
  return os.str();
}

}  // namespace txinfer
