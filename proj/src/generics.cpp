#include "txinfer/generics.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace txinfer {

bool GenericsMember::has(const std::string& p) const {
  return std::find(params.begin(), params.end(), p) != params.end();
}

std::vector<std::string> GenericsMember::bounds_of(const std::string& p) const {
  std::vector<std::string> out;
  for (const auto& [lo, hi] : bounds) {
    if (lo == p) out.push_back(hi);
  }
  return out;
}

std::set<std::string> GenericsMember::pairs() const {
  std::set<std::string> out;
  for (const auto& p : params) {
    auto bs = bounds_of(p);
    if (bs.empty()) out.insert(p + " < Object");
    for (const auto& b : bs) out.insert(p + " < " + b);
  }
  return out;
}

namespace {

void add_unique(std::vector<std::string>& v, const std::string& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

std::vector<std::string> resolved_tphs(const AnnotatedClass& cls, const Solution& sol,
                                       const std::vector<SlotId>& slots) {
  std::vector<std::string> out;
  for (SlotId id : slots) {
    auto it = cls.slot_types.find(id);
    if (it == cls.slot_types.end()) continue;
    for (const auto& n : tphs_of(substitute(sol.sigma, it->second))) add_unique(out, n);
  }
  return out;
}

std::vector<std::string> resolved_tphs(const Solution& sol, const Type& t) {
  return tphs_of(substitute(sol.sigma, t));
}

using Adjacency = std::map<std::string, std::vector<std::string>>;

Adjacency upward(const TphRelation& rel) {
  Adjacency adj;
  for (const auto& [a, b] : rel) adj[a].push_back(b);
  return adj;
}

bool related(const TphRelation& closure, const std::string& a, const std::string& b) {
  return a == b || closure.count({a, b}) > 0;
}

// Breadth-first distance from `from` to `to` along the pairs, or SIZE_MAX.
std::size_t distance(const Adjacency& adj, const std::string& from, const std::string& to) {
  std::map<std::string, std::size_t> dist{{from, 0}};
  std::deque<std::string> queue{from};
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    if (cur == to) return dist[cur];
    auto it = adj.find(cur);
    if (it == adj.end()) continue;
    for (const auto& n : it->second) {
      if (dist.emplace(n, dist[cur] + 1).second) queue.push_back(n);
    }
  }
  return SIZE_MAX;
}

TphRelation member_relation(const GenericsMember& m) {
  return TphRelation(m.bounds.begin(), m.bounds.end());
}

}  // namespace

std::map<std::string, Owner> assign_owners(const AnnotatedClass& cls, const Solution& solution) {
  std::map<std::string, Owner> owner;
  const auto rel = tph_relation(solution.remaining);
  const auto adj = upward(rel);

  // The class: its slots, closed under upper bounds.
  std::deque<std::string> queue;
  for (const auto& n : resolved_tphs(cls, solution, cls.class_slots)) {
    if (owner.emplace(n, std::nullopt).second) queue.push_back(n);
  }
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    auto it = adj.find(cur);
    if (it == adj.end()) continue;
    for (const auto& n : it->second) {
      if (owner.emplace(n, std::nullopt).second) queue.push_back(n);
    }
  }
  for (std::size_t m = 0; m < cls.method_decl_slots.size(); ++m) {
    for (const auto& n : resolved_tphs(cls, solution, cls.method_decl_slots[m])) {
      owner.emplace(n, m);
    }
  }
  for (std::size_t m = 0; m < cls.method_expr_slots.size(); ++m) {
    for (const auto& n : resolved_tphs(cls, solution, cls.method_expr_slots[m])) {
      owner.emplace(n, m);
    }
  }
  // Placeholders only reachable through open pairs.
  std::vector<std::string> orphans;
  for (const auto& n : tphs_of(solution.remaining)) {
    if (!owner.count(n)) orphans.push_back(n);
  }
  bool progress = true;
  while (progress && !orphans.empty()) {
    progress = false;
    for (auto it = orphans.begin(); it != orphans.end();) {
      std::optional<Owner> found;
      for (const auto& [a, b] : rel) {
        const std::string* other = a == *it ? &b : (b == *it ? &a : nullptr);
        if (!other) continue;
        if (auto o = owner.find(*other); o != owner.end()) {
          found = o->second;
          break;
        }
      }
      if (found) {
        owner[*it] = *found;
        it = orphans.erase(it);
        progress = true;
      } else {
        ++it;
      }
    }
  }
  for (const auto& n : orphans) owner[n] = std::nullopt;
  return owner;
}

void anchor_class_bounds(const AnnotatedClass& cls, Solution& solution) {
  for (;;) {
    const auto class_tphs = resolved_tphs(cls, solution, cls.class_slots);
    std::set<std::string> method_tphs;
    for (const auto& slots : cls.method_decl_slots) {
      for (const auto& n : resolved_tphs(cls, solution, slots)) method_tphs.insert(n);
    }
    const std::set<std::string> in_class(class_tphs.begin(), class_tphs.end());
    const auto rel = tph_relation(solution.remaining);
    std::map<std::string, int> lower_count;
    for (const auto& [a, b] : rel) ++lower_count[b];

    std::optional<std::pair<std::string, std::string>> pick;
    for (const auto& [a, b] : rel) {
      if (in_class.count(a) && !in_class.count(b) && method_tphs.count(b) &&
          lower_count[b] == 1) {
        pick = std::make_pair(a, b);
        break;
      }
    }
    if (!pick) return;
    const auto& [keep, drop] = *pick;
    const TphMap h{{drop, Type::tph(keep)}};
    for (auto& [k, v] : solution.sigma) v = substitute(h, v);
    if (!solution.sigma.count(drop)) solution.sigma[drop] = Type::tph(keep);
    ConstraintSet next;
    for (auto c : solution.remaining) {
      c.lhs = substitute(h, c.lhs);
      c.rhs = substitute(h, c.rhs);
      if (c.lhs == c.rhs) continue;
      next.push_back(std::move(c));
    }
    normalize(next);
    solution.remaining = std::move(next);
  }
}

GenericsFamily build_fgg(const AnnotatedClass& cls, const Solution& solution) {
  const auto owner = assign_owners(cls, solution);
  GenericsFamily fam;
  fam.methods.resize(cls.method_decl_slots.size());

  auto member_of = [&](const Owner& o) -> GenericsMember& {
    return o ? fam.methods.at(*o) : fam.cls;
  };
  // Parameter order: slots first, then the remaining owned placeholders.
  for (const auto& n : resolved_tphs(cls, solution, cls.class_slots)) {
    if (owner.at(n) == std::nullopt) add_unique(fam.cls.params, n);
  }
  for (std::size_t m = 0; m < fam.methods.size(); ++m) {
    for (const auto* slots : {&cls.method_decl_slots[m], &cls.method_expr_slots[m]}) {
      for (const auto& n : resolved_tphs(cls, solution, *slots)) {
        if (owner.at(n) == Owner{m}) add_unique(fam.methods[m].params, n);
      }
    }
  }
  for (const auto& n : tphs_of(solution.remaining)) add_unique(member_of(owner.at(n)).params, n);
  for (const auto& [n, o] : owner) add_unique(member_of(o).params, n);

  for (const auto& [a, b] : tph_relation(solution.remaining)) {
    const auto& oa = owner.at(a);
    const auto& ob = owner.at(b);
    if (ob == oa || ob == std::nullopt) member_of(oa).bounds.insert({a, b});
  }
  return fam;
}

GenericsFamily complete_fgg(GenericsFamily fgg, const AnnotatedClass& cls,
                            const Solution& solution) {
  const auto cs_rel = tph_relation(solution.remaining);
  const auto cs_star = transitive_closure(cs_rel);
  const auto cs_adj = upward(cs_rel);

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& call : cls.calls) {
      auto& caller = fgg.methods.at(call.caller);
      const auto callee_star = transitive_closure(member_relation(fgg.methods.at(call.callee)));
      const auto& callee_params = cls.method_params.at(call.callee);
      std::vector<std::string> callee_ret = resolved_tphs(solution, cls.method_returns.at(call.callee));

      // Placeholders the caller may use as bounds, in declaration order.
      std::vector<std::string> targets = caller.params;
      for (const auto& p : fgg.cls.params) targets.push_back(p);

      for (std::size_t i = 0; i < call.args.size() && i < callee_params.size(); ++i) {
        for (const auto& t : resolved_tphs(solution, call.args[i])) {
          if (!caller.has(t) || !caller.bounds_of(t).empty()) continue;
          std::vector<std::pair<std::string, std::size_t>> candidates;  // (R, distance)
          for (const auto& tp : resolved_tphs(solution, callee_params[i])) {
            if (!related(cs_star, t, tp)) continue;
            for (const auto& rp : callee_ret) {
              if (!related(callee_star, tp, rp)) continue;
              for (const auto& r : targets) {
                if (r == t || !related(cs_star, rp, r)) continue;
                candidates.emplace_back(r, distance(cs_adj, rp, r));
              }
            }
          }
          if (candidates.empty()) continue;
          // Keep minimal ones, then the nearest.
          std::vector<std::pair<std::string, std::size_t>> minimal;
          for (const auto& c : candidates) {
            bool below = std::any_of(candidates.begin(), candidates.end(), [&](const auto& d) {
              return d.first != c.first && related(cs_star, d.first, c.first) &&
                     !related(cs_star, c.first, d.first);
            });
            if (!below) minimal.push_back(c);
          }
          auto best = std::min_element(minimal.begin(), minimal.end(), [](const auto& a, const auto& b) {
            return a.second < b.second;
          });
          caller.bounds.insert({t, best->first});
          changed = true;
        }
      }
    }
  }
  return fgg;
}

GenericsFamily rename(const GenericsFamily& family, const RenamingMap& h) {
  auto image = [&](const std::string& n) {
    auto it = h.find(n);
    return it == h.end() ? n : it->second;
  };
  auto member = [&](const GenericsMember& m) {
    GenericsMember out;
    for (const auto& p : m.params) add_unique(out.params, image(p));
    for (const auto& [a, b] : m.bounds) {
      auto ia = image(a);
      auto ib = image(b);
      if (ia != ib) out.bounds.insert({ia, ib});
    }
    return out;
  };
  GenericsFamily out;
  out.cls = member(family.cls);
  for (const auto& m : family.methods) out.methods.push_back(member(m));
  return out;
}

namespace {

// Strongly connected components of the bound graph with more than one node.
std::vector<std::vector<std::string>> nontrivial_sccs(const GenericsMember& m) {
  const auto adj = upward(member_relation(m));
  std::map<std::string, int> index;
  std::map<std::string, int> low;
  std::set<std::string> on_stack;
  std::vector<std::string> stack;
  std::vector<std::vector<std::string>> out;
  int counter = 0;

  std::function<void(const std::string&)> visit = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    if (auto it = adj.find(v); it != adj.end()) {
      for (const auto& w : it->second) {
        if (!index.count(w)) {
          visit(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack.count(w)) {
          low[v] = std::min(low[v], index[w]);
        }
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> comp;
      std::string w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        comp.push_back(w);
      } while (w != v);
      if (comp.size() > 1) out.push_back(std::move(comp));
    }
  };
  std::vector<std::string> nodes = m.params;
  for (const auto& [a, b] : m.bounds) {
    add_unique(nodes, a);
    add_unique(nodes, b);
  }
  for (const auto& n : nodes) {
    if (!index.count(n)) visit(n);
  }
  return out;
}

std::optional<std::vector<std::string>> infimum(const GenericsMember& m) {
  for (const auto& p : m.params) {
    auto bs = m.bounds_of(p);
    if (bs.size() < 2) continue;
    std::vector<std::string> group{p};
    for (const auto& b : bs) add_unique(group, b);
    return group;
  }
  return std::nullopt;
}

}  // namespace

ConformResult enforce_java_conformance(GenericsFamily family, FreshNames& fresh) {
  RenamingMap h;
  auto collapse = [&](const std::vector<std::string>& group) {
    const std::string x = fresh.next_name();
    const std::set<std::string> members(group.begin(), group.end());
    for (auto& [k, v] : h) {
      if (members.count(v)) v = x;
    }
    for (const auto& g : group) {
      if (!h.count(g)) h[g] = x;
    }
    RenamingMap step;
    for (const auto& g : group) step[g] = x;
    family = rename(family, step);
  };
  auto members = [&] {
    std::vector<const GenericsMember*> out{&family.cls};
    for (const auto& m : family.methods) out.push_back(&m);
    return out;
  };

  for (;;) {
    bool acted = false;
    for (const auto* m : members()) {
      auto sccs = nontrivial_sccs(*m);
      if (!sccs.empty()) {
        collapse(sccs.front());
        acted = true;
        break;
      }
    }
    if (acted) continue;
    for (const auto* m : members()) {
      if (auto group = infimum(*m)) {
        collapse(*group);
        acted = true;
        break;
      }
    }
    if (!acted) break;
  }
  return {std::move(family), std::move(h)};
}

std::string dump(const GenericsFamily& family, const ClassDecl& decl) {
  std::ostringstream os;
  auto member = [&](const GenericsMember& m) {
    std::vector<std::string> lines;
    for (const auto& p : m.params) {
      auto bs = m.bounds_of(p);
      if (bs.empty()) lines.push_back(p + " extends Object");
      for (const auto& b : bs) lines.push_back(p + " extends " + b);
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) os << "  " << l << '\n';
  };
  os << "class " << decl.name << ":\n";
  member(family.cls);
  for (std::size_t i = 0; i < family.methods.size(); ++i) {
    os << "method " << decl.name << '.'
       << (i < decl.methods.size() ? decl.methods[i].name : std::to_string(i)) << ":\n";
    member(family.methods[i]);
  }
  return os.str();
}

}  // namespace txinfer
