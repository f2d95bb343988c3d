#include <set>

#include "txinfer/frontend.hpp"

namespace txinfer {

namespace {

void collect_generic_names(const Program& p, std::set<std::string>& out) {
  for (const auto& c : p.classes) {
    for (const auto& g : c.generics) out.insert(g.name);
    for (const auto& m : c.methods) {
      for (const auto& g : m.generics) out.insert(g.name);
    }
  }
}

struct Bijection {
  Renaming fwd;
  Renaming bwd;

  bool bind(const std::string& a, const std::string& b) {
    auto f = fwd.find(a);
    auto r = bwd.find(b);
    if (f != fwd.end() || r != bwd.end()) {
      return f != fwd.end() && r != bwd.end() && f->second == b && r->second == a;
    }
    fwd.emplace(a, b);
    bwd.emplace(b, a);
    return true;
  }
};

class AlphaMatcher {
 public:
  AlphaMatcher(const Program& a, const Program& b) {
    collect_generic_names(a, vars_a_);
    collect_generic_names(b, vars_b_);
  }

  std::optional<Renaming> run(const Program& a, const Program& b) {
    if (a.imports.size() != b.imports.size() || a.classes.size() != b.classes.size()) {
      return std::nullopt;
    }
    for (std::size_t i = 0; i < a.imports.size(); ++i) {
      if (a.imports[i].name != b.imports[i].name) return std::nullopt;
    }
    for (std::size_t i = 0; i < a.classes.size(); ++i) {
      if (!cls(a.classes[i], b.classes[i])) return std::nullopt;
    }
    // Generic parameter lists last: by now most names are pinned by use sites.
    for (const auto& [ga, gb] : generic_lists_) {
      if (!generic_set(*ga, *gb, map_)) return std::nullopt;
    }
    return map_.fwd;
  }

 private:
  bool type_in(const TypeSyntax& a, const TypeSyntax& b, Bijection& m) const {
    const bool va = vars_a_.count(a.name) > 0;
    const bool vb = vars_b_.count(b.name) > 0;
    if (va != vb) return false;
    if (va) {
      if (!a.args.empty() || !b.args.empty()) return false;
      return m.bind(a.name, b.name);
    }
    if (a.name != b.name || a.diamond != b.diamond || a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (!type_in(a.args[i], b.args[i], m)) return false;
    }
    return true;
  }

  bool type(const TypeSyntax& a, const TypeSyntax& b) { return type_in(a, b, map_); }

  bool opt_type(const std::optional<TypeSyntax>& a, const std::optional<TypeSyntax>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || type(*a, *b);
  }

  bool generic_set(const std::vector<GenericParam>& a, const std::vector<GenericParam>& b,
                   Bijection& m) const {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    return match_generic(a, b, 0, used, m);
  }

  bool match_generic(const std::vector<GenericParam>& a, const std::vector<GenericParam>& b,
                     std::size_t i, std::vector<bool>& used, Bijection& m) const {
    if (i == a.size()) return true;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      Bijection trial = m;
      if (!trial.bind(a[i].name, b[j].name)) continue;
      if (a[i].bound.has_value() != b[j].bound.has_value()) continue;
      if (a[i].bound && !type_in(*a[i].bound, *b[j].bound, trial)) continue;
      used[j] = true;
      if (match_generic(a, b, i + 1, used, trial)) {
        m = std::move(trial);
        return true;
      }
      used[j] = false;
    }
    return false;
  }

  bool cls(const ClassDecl& a, const ClassDecl& b) {
    if (a.name != b.name || a.fields.size() != b.fields.size() ||
        a.methods.size() != b.methods.size()) {
      return false;
    }
    generic_lists_.emplace_back(&a.generics, &b.generics);
    for (std::size_t i = 0; i < a.fields.size(); ++i) {
      const auto& fa = a.fields[i];
      const auto& fb = b.fields[i];
      if (fa.name != fb.name || !opt_type(fa.type, fb.type) || !opt_expr(fa.init, fb.init)) {
        return false;
      }
    }
    for (std::size_t i = 0; i < a.methods.size(); ++i) {
      const auto& ma = a.methods[i];
      const auto& mb = b.methods[i];
      if (ma.name != mb.name || !opt_type(ma.ret, mb.ret) || !params(ma.params, mb.params) ||
          !stmts(ma.body, mb.body)) {
        return false;
      }
      generic_lists_.emplace_back(&ma.generics, &mb.generics);
    }
    return true;
  }

  bool params(const std::vector<Param>& a, const std::vector<Param>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].name != b[i].name || !opt_type(a[i].type, b[i].type)) return false;
    }
    return true;
  }

  bool stmts(const std::vector<StmtPtr>& a, const std::vector<StmtPtr>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!stmt(*a[i], *b[i])) return false;
    }
    return true;
  }

  bool stmt(const Stmt& a, const Stmt& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& na) -> bool {
          using T = std::decay_t<decltype(na)>;
          const auto& nb = std::get<T>(b.node);
          if constexpr (std::is_same_v<T, LocalVar>) {
            return na.name == nb.name && opt_type(na.type, nb.type) && opt_expr(na.init, nb.init);
          } else if constexpr (std::is_same_v<T, ExprStmt>) {
            return expr(*na.expr, *nb.expr);
          } else if constexpr (std::is_same_v<T, While>) {
            return expr(*na.cond, *nb.cond) && stmts(na.body, nb.body);
          } else if constexpr (std::is_same_v<T, Return>) {
            return expr(*na.value, *nb.value);
          } else {
            return stmts(na.body, nb.body);
          }
        },
        a.node);
  }

  bool opt_expr(const ExprPtr& a, const ExprPtr& b) {
    if (static_cast<bool>(a) != static_cast<bool>(b)) return false;
    return !a || expr(*a, *b);
  }

  bool exprs(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!expr(*a[i], *b[i])) return false;
    }
    return true;
  }

  bool expr(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& na) -> bool {
          using T = std::decay_t<decltype(na)>;
          const auto& nb = std::get<T>(b.node);
          if constexpr (std::is_same_v<T, IntLit> || std::is_same_v<T, StringLit>) {
            return na.text == nb.text;
          } else if constexpr (std::is_same_v<T, BoolLit>) {
            return na.value == nb.value;
          } else if constexpr (std::is_same_v<T, NameRef>) {
            return na.id == nb.id;
          } else if constexpr (std::is_same_v<T, This>) {
            return true;
          } else if constexpr (std::is_same_v<T, FieldAccess>) {
            return na.field == nb.field && expr(*na.receiver, *nb.receiver);
          } else if constexpr (std::is_same_v<T, Call>) {
            return na.method == nb.method && opt_expr(na.receiver, nb.receiver) &&
                   exprs(na.args, nb.args);
          } else if constexpr (std::is_same_v<T, New>) {
            return type(na.type, nb.type) && exprs(na.args, nb.args);
          } else if constexpr (std::is_same_v<T, Binary>) {
            return na.op == nb.op && expr(*na.lhs, *nb.lhs) && expr(*na.rhs, *nb.rhs);
          } else if constexpr (std::is_same_v<T, Assign>) {
            return expr(*na.target, *nb.target) && expr(*na.value, *nb.value);
          } else if constexpr (std::is_same_v<T, Increment>) {
            return expr(*na.target, *nb.target);
          } else {
            return params(na.params, nb.params) && opt_expr(na.body_expr, nb.body_expr) &&
                   stmts(na.body_block, nb.body_block);
          }
        },
        a.node);
  }

  std::set<std::string> vars_a_;
  std::set<std::string> vars_b_;
  Bijection map_;
  std::vector<std::pair<const std::vector<GenericParam>*, const std::vector<GenericParam>*>>
      generic_lists_;
};

}  // namespace

std::optional<Renaming> alpha_renaming(const Program& a, const Program& b) {
  return AlphaMatcher(a, b).run(a, b);
}

}  // namespace txinfer
