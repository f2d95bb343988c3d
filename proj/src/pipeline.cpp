#include "txinfer/pipeline.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "txinfer/frontend.hpp"

namespace txinfer {

Type ClassTyping::resolve(const Type& t) const {
  TphMap hmap;
  for (const auto& [from, to] : h) hmap[from] = Type::tph(to);
  return substitute(hmap, substitute(solution.sigma, t));
}

const ClassResult& UnitResult::of(std::string_view class_name) const {
  for (const auto& c : classes) {
    if (c.name == class_name) return c;
  }
  throw CompileError(ErrorKind::UnknownType, "no class '" + std::string(class_name) + "'");
}

namespace {

void rename_tphs(Type& t, const TphMap& map) { t = substitute(map, t); }

// Leaves of a term as presentation ranks, left to right.
void rank_leaves(const Type& t, std::vector<int>& out) {
  static constexpr std::array<std::string_view, 4> kOrder{kInteger, kDouble, kString, kBoolean};
  if (t.is_class()) {
    auto it = std::find(kOrder.begin(), kOrder.end(), t.name);
    out.push_back(it == kOrder.end() ? static_cast<int>(kOrder.size()) : static_cast<int>(it - kOrder.begin()));
  }
  for (const auto& a : t.args) rank_leaves(a, out);
}

std::string typing_text(const MethodTyping& t) {
  std::string s;
  for (const auto& g : t.generics) {
    s += g.name;
    if (g.bound) s += "<" + to_string(*g.bound, Naming::Qualified);
    s += ";";
  }
  for (const auto& p : t.params) s += to_string(p, Naming::Qualified) + ",";
  return s + "->" + to_string(t.ret, Naming::Qualified);
}

std::pair<std::vector<int>, std::string> typing_key(const MethodTyping& t) {
  std::vector<int> ranks;
  for (const auto& p : t.params) rank_leaves(p, ranks);
  rank_leaves(t.ret, ranks);
  return {ranks, typing_text(t)};
}

Type to_var(const Type& t, const std::map<std::string, Type>& vars) {
  return map_leaves(t, [&](const Type& leaf) -> const Type* {
    if (!leaf.is_tph()) return nullptr;
    auto it = vars.find(leaf.name);
    return it == vars.end() ? nullptr : &it->second;
  });
}

std::optional<Type> declared_bound(const AnnotatedClass& ac, int scope, const std::string& name) {
  auto it = ac.declared_bounds.find({scope, name});
  if (it == ac.declared_bounds.end()) return std::nullopt;
  return it->second;
}

class UnitInference {
 public:
  UnitInference(Program program, const PipelineOptions& options)
      : options_(options), catalog_(options.catalog ? *options.catalog : ClassTable::bundled()) {
    result_.program = std::move(program);
  }

  UnitResult run() {
    result_.table = build_class_table(result_.program, catalog_);
    const auto order = class_inference_order(result_.program);
    std::vector<std::optional<ClassResult>> done(result_.program.classes.size());
    for (auto ci : order) {
      done[ci] = infer_class(ci);
      const auto& decl = result_.program.classes[ci];
      summaries_[decl.name] = summarize(*done[ci], decl);
      update_table(summaries_[decl.name]);
    }
    for (auto& c : done) result_.classes.push_back(std::move(*c));
    return std::move(result_);
  }

 private:
  ClassResult infer_class(std::size_t ci) {
    const auto& decl = result_.program.classes[ci];
    ClassResult cr;
    cr.class_index = ci;
    cr.name = decl.name;
    cr.annotated = generate_constraints(result_.program, ci, result_.table, fresh_, summaries_);
    cr.candidates = flatten_constraints(cr.annotated.constraints, result_.table);

    UnifyOptions uo = options_.unify;
    for (const auto& [k, v] : cr.annotated.declared_bounds) uo.bounds.emplace(k, v);

    std::vector<Solution> pool;
    std::optional<UnifyFailure> best;
    bool limit = false;
    std::set<std::string> inputs;
    for (const auto& cs : cr.candidates) {
      for (const auto& n : tphs_of(cs)) inputs.insert(n);
      auto out = unify(cs, result_.table, uo);
      limit = limit || out.step_limit_hit;
      for (auto& s : out.solutions) pool.push_back(std::move(s));
      if (out.failure && (!best || out.failure->unresolved < best->unresolved)) best = out.failure;
    }
    if (pool.empty()) {
      std::string msg = "class " + decl.name + " has no typing";
      SourcePos pos = decl.pos;
      if (best) {
        msg += ": cannot solve " + to_string(best->constraint) + " (" + best->reason + ")";
        if (best->constraint.origin.known()) pos = best->constraint.origin;
      } else if (limit) {
        msg += ": search limit reached";
      } else if (cr.candidates.empty()) {
        msg += ": operators have no alternative that fits";
      }
      throw CompileError(ErrorKind::Untypable, msg, pos);
    }
    pool = prune_instances(std::move(pool), inputs, result_.table, uo.bounds);
    cr.unifiers = select_tightest(pool, result_.table, uo.bounds);

    for (const auto& u : cr.unifiers) cr.typings.push_back(generics_for(cr.annotated, u));
    assemble_signatures(cr, decl);
    return cr;
  }

  ClassTyping generics_for(const AnnotatedClass& ac, const Solution& unifier) {
    ClassTyping t;
    t.solution = unifier;
    // Internal placeholders continue the unit's fresh sequence.
    TphMap rename;
    auto visit = [&](const Type& ty) {
      for (const auto& n : tphs_of(ty)) {
        if (is_internal_tph(n) && !rename.count(n)) rename[n] = fresh_.next();
      }
    };
    for (const auto& [k, v] : t.solution.sigma) visit(v);
    for (const auto& c : t.solution.remaining) {
      visit(c.lhs);
      visit(c.rhs);
    }
    for (auto& [k, v] : t.solution.sigma) rename_tphs(v, rename);
    for (auto& c : t.solution.remaining) {
      rename_tphs(c.lhs, rename);
      rename_tphs(c.rhs, rename);
    }
    normalize(t.solution.remaining);

    anchor_class_bounds(ac, t.solution);
    t.fgg = build_fgg(ac, t.solution);
    t.cfgg = complete_fgg(t.fgg, ac, t.solution);
    auto conf = enforce_java_conformance(t.cfgg, fresh_);
    t.family = std::move(conf.family);
    t.h = std::move(conf.h);
    return t;
  }

  static std::optional<Type> first_bound(const GenericsMember& m, const std::string& p) {
    auto bs = m.bounds_of(p);
    if (bs.empty()) return std::nullopt;
    return Type::tph(bs.front());
  }

  void assemble_signatures(ClassResult& cr, const ClassDecl& decl) {
    const auto& ac = cr.annotated;
    std::vector<std::vector<MethodTyping>> per_method(decl.methods.size());
    for (const auto& t : cr.typings) {
      for (std::size_t j = 0; j < decl.methods.size(); ++j) {
        const int scope = static_cast<int>(j) + 1;
        MethodTyping mt;
        for (const auto& p : ac.method_params[j]) mt.params.push_back(t.resolve(p));
        mt.ret = t.resolve(ac.method_returns[j]);
        // Declared parameters, then the header's leaves, then the bounds they reach.
        std::vector<Type> todo;
        for (const auto& g : decl.methods[j].generics) todo.push_back(Type::var(g.name, scope));
        std::function<void(const Type&)> leaves = [&](const Type& ty) {
          if (ty.is_tph() || ty.is_var()) todo.push_back(ty);
          for (const auto& a : ty.args) leaves(a);
        };
        for (const auto& p : mt.params) leaves(p);
        leaves(mt.ret);
        std::set<std::string> seen;
        for (std::size_t k = 0; k < todo.size(); ++k) {
          const Type leaf = todo[k];
          if (!seen.insert(leaf.name).second) continue;
          std::optional<Type> b;
          if (leaf.is_var()) {
            b = declared_bound(ac, leaf.scope, leaf.name);
          } else {
            const GenericsMember& m = t.family.methods[j].has(leaf.name) ? t.family.methods[j] : t.family.cls;
            b = first_bound(m, leaf.name);
          }
          if (b) leaves(*b);
          mt.generics.push_back({leaf.name, b});
        }
        per_method[j].push_back(canonical_typing(mt));
      }
    }
    for (std::size_t j = 0; j < decl.methods.size(); ++j) {
      auto& ts = per_method[j];
      sort_typings(ts);
      ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
      cr.signatures.push_back({decl.name, decl.methods[j].name, j, ts});
    }

    // Representative: the typing whose method typings come first in order.
    std::vector<std::pair<std::vector<std::pair<std::vector<int>, std::string>>, std::size_t>> keys;
    for (std::size_t i = 0; i < cr.typings.size(); ++i) {
      std::vector<std::pair<std::vector<int>, std::string>> key;
      for (std::size_t j = 0; j < decl.methods.size(); ++j) {
        MethodTyping mt;
        for (const auto& p : ac.method_params[j]) mt.params.push_back(cr.typings[i].resolve(p));
        mt.ret = cr.typings[i].resolve(ac.method_returns[j]);
        key.push_back(typing_key(canonical_typing(mt)));
      }
      keys.emplace_back(std::move(key), i);
    }
    cr.representative = std::min_element(keys.begin(), keys.end())->second;
  }

  ClassSummary summarize(const ClassResult& cr, const ClassDecl& decl) {
    const auto& ac = cr.annotated;
    const auto& rep = cr.typings[cr.representative];
    ClassSummary s;
    s.name = decl.name;
    for (const auto& g : decl.generics) s.generics.push_back({g.name, declared_bound(ac, kClassScope, g.name)});

    std::map<std::string, Type> class_vars;
    for (const auto& p : rep.family.cls.params) class_vars[p] = Type::var(p, kClassScope);
    for (const auto& p : rep.family.cls.params) {
      auto b = first_bound(rep.family.cls, p);
      s.generics.push_back({p, b ? std::optional<Type>(to_var(*b, class_vars)) : std::nullopt});
    }
    for (std::size_t f = 0; f < decl.fields.size(); ++f) {
      s.fields.emplace_back(decl.fields[f].name, to_var(rep.resolve(ac.field_types[f]), class_vars));
    }
    for (std::size_t j = 0; j < decl.methods.size(); ++j) {
      s.method_names.push_back(decl.methods[j].name);
      std::vector<MethodTyping> typings;
      for (const auto& t : cr.typings) {
        const int scope = static_cast<int>(j) + 1;
        const bool same_class = t.family.cls == rep.family.cls;
        MethodTyping mt;
        for (const auto& g : decl.methods[j].generics) {
          mt.generics.push_back({g.name, declared_bound(ac, scope, g.name)});
        }
        std::vector<Type> params;
        for (const auto& p : ac.method_params[j]) params.push_back(t.resolve(p));
        Type ret = t.resolve(ac.method_returns[j]);

        // Everything not in the shared class parameters becomes a method parameter.
        std::vector<std::string> mine;
        std::vector<std::string> used;
        for (const auto& p : params) collect_tphs(p, used);
        collect_tphs(ret, used);
        for (const auto& n : used) {
          if (!(same_class && class_vars.count(n)) && std::find(mine.begin(), mine.end(), n) == mine.end()) {
            mine.push_back(n);
          }
        }
        std::map<std::string, Type> vars = same_class ? class_vars : std::map<std::string, Type>{};
        for (std::size_t k = 0; k < mine.size(); ++k) {
          const std::string n = mine[k];
          vars[n] = Type::var(n, scope);
          const GenericsMember& m = t.family.methods[j].has(n) ? t.family.methods[j] : t.family.cls;
          if (auto b = first_bound(m, n)) {
            if (!vars.count(b->name) && std::find(mine.begin(), mine.end(), b->name) == mine.end()) {
              mine.push_back(b->name);
            }
          }
        }
        for (const auto& n : mine) {
          const GenericsMember& m = t.family.methods[j].has(n) ? t.family.methods[j] : t.family.cls;
          auto b = first_bound(m, n);
          mt.generics.push_back({n, b ? std::optional<Type>(to_var(*b, vars)) : std::nullopt});
        }
        for (const auto& p : params) mt.params.push_back(to_var(p, vars));
        mt.ret = to_var(ret, vars);
        if (std::find(typings.begin(), typings.end(), mt) == typings.end()) typings.push_back(std::move(mt));
      }
      s.methods.push_back(std::move(typings));
    }
    return s;
  }

  void update_table(const ClassSummary& s) {
    const auto* old = result_.table.find(s.name);
    ClassEntry e = old ? *old : ClassEntry{};
    e.name = s.name;
    e.builtin = false;
    e.params.clear();
    e.variance.clear();
    for (const auto& g : s.generics) {
      e.params.push_back(g.name);
      e.variance.push_back(Variance::Invariant);
    }
    e.fields.clear();
    for (const auto& [n, t] : s.fields) e.fields.push_back({n, t});
    result_.table.replace(std::move(e));
  }

  const PipelineOptions& options_;
  const ClassTable& catalog_;
  UnitResult result_;
  FreshNames fresh_{0};
  std::map<std::string, ClassSummary> summaries_;
};

}  // namespace

MethodTyping canonical_typing(const MethodTyping& typing) {
  // Placeholders and declared parameters alike become A, B, ... placeholders.
  std::vector<std::string> order;
  std::function<void(const Type&)> visit = [&](const Type& t) {
    if (t.is_tph() || t.is_var()) order.push_back(t.name);
    for (const auto& a : t.args) visit(a);
  };
  for (const auto& p : typing.params) visit(p);
  visit(typing.ret);
  for (const auto& g : typing.generics) {
    order.push_back(g.name);
    if (g.bound) visit(*g.bound);
  }
  std::map<std::string, Type> names;
  for (const auto& n : order) {
    if (!names.count(n)) names.emplace(n, Type::tph(alpha_name(names.size())));
  }
  auto rename = [&](const Type& t) {
    return map_leaves(t, [&](const Type& leaf) -> const Type* {
      if (!leaf.is_tph() && !leaf.is_var()) return nullptr;
      auto it = names.find(leaf.name);
      return it == names.end() ? nullptr : &it->second;
    });
  };
  MethodTyping out;
  for (const auto& g : typing.generics) {
    std::optional<Type> bound;
    if (g.bound) bound = rename(*g.bound);
    out.generics.push_back({names.at(g.name).name, bound});
  }
  std::sort(out.generics.begin(), out.generics.end(), [](const GenericVar& a, const GenericVar& b) {
    return std::make_pair(a.name.size(), a.name) < std::make_pair(b.name.size(), b.name);
  });
  for (const auto& p : typing.params) out.params.push_back(rename(p));
  out.ret = rename(typing.ret);
  return out;
}

void sort_typings(std::vector<MethodTyping>& typings) {
  std::stable_sort(typings.begin(), typings.end(), [](const MethodTyping& a, const MethodTyping& b) {
    return typing_key(a) < typing_key(b);
  });
}

UnitResult infer_program(Program program, const PipelineOptions& options) {
  return UnitInference(std::move(program), options).run();
}

UnitResult infer_source(std::string_view source, const PipelineOptions& options) {
  return infer_program(parse(source), options);
}

}  // namespace txinfer
