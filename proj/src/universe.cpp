// Assembling the per-program universe from the built-in catalog.
#include <regex>
#include <set>

#include "txinfer/class_table.hpp"
#include "txinfer/diagnostics.hpp"

namespace txinfer {

namespace {

struct Usage {
  std::set<std::string> type_names;  // written in annotations or `new`
  std::set<std::size_t> fun_arities;
  bool needs_boolean = false;
  bool needs_string = false;
  bool needs_integer = false;
  bool needs_number = false;
};

class UsageScanner {
 public:
  Usage run(const Program& p) {
    for (const auto& c : p.classes) {
      for (const auto& g : c.generics) opt_type(g.bound);
      for (const auto& f : c.fields) {
        opt_type(f.type);
        if (f.init) expr(*f.init);
      }
      for (const auto& m : c.methods) {
        for (const auto& g : m.generics) opt_type(g.bound);
        opt_type(m.ret);
        for (const auto& prm : m.params) opt_type(prm.type);
        stmts(m.body);
      }
    }
    return std::move(usage_);
  }

 private:
  void type(const TypeSyntax& t) {
    static const std::regex fun_re(R"(^Fun(Void)?(\d+)\$\$$)");
    std::smatch m;
    if (std::regex_match(t.name, m, fun_re)) {
      usage_.fun_arities.insert(std::stoul(m[2].str()));
    } else {
      usage_.type_names.insert(t.name);
    }
    for (const auto& a : t.args) type(a);
  }
  void opt_type(const std::optional<TypeSyntax>& t) {
    if (t) type(*t);
  }
  void stmts(const std::vector<StmtPtr>& body) {
    for (const auto& s : body) stmt(*s);
  }
  void stmt(const Stmt& s) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, LocalVar>) {
            opt_type(n.type);
            if (n.init) expr(*n.init);
          } else if constexpr (std::is_same_v<T, ExprStmt>) {
            expr(*n.expr);
          } else if constexpr (std::is_same_v<T, While>) {
            usage_.needs_boolean = true;
            expr(*n.cond);
            stmts(n.body);
          } else if constexpr (std::is_same_v<T, Return>) {
            expr(*n.value);
          } else {
            stmts(n.body);
          }
        },
        s.node);
  }
  void expr(const Expr& e) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, IntLit>) {
            usage_.needs_integer = true;
          } else if constexpr (std::is_same_v<T, BoolLit>) {
            usage_.needs_boolean = true;
          } else if constexpr (std::is_same_v<T, StringLit>) {
            usage_.needs_string = true;
          } else if constexpr (std::is_same_v<T, FieldAccess>) {
            expr(*n.receiver);
          } else if constexpr (std::is_same_v<T, Call>) {
            if (n.receiver) expr(*n.receiver);
            for (const auto& a : n.args) expr(*a);
            if (n.method == "apply") usage_.fun_arities.insert(n.args.size());
          } else if constexpr (std::is_same_v<T, New>) {
            usage_.type_names.insert(n.type.name);
            for (const auto& a : n.type.args) type(a);
            for (const auto& a : n.args) expr(*a);
          } else if constexpr (std::is_same_v<T, Binary>) {
            if (n.op == BinaryOp::LessEq || n.op == BinaryOp::Or) usage_.needs_boolean = true;
            if (n.op == BinaryOp::LessEq) usage_.needs_number = true;
            expr(*n.lhs);
            expr(*n.rhs);
          } else if constexpr (std::is_same_v<T, Assign>) {
            expr(*n.target);
            expr(*n.value);
          } else if constexpr (std::is_same_v<T, Increment>) {
            usage_.needs_integer = true;
            expr(*n.target);
          } else if constexpr (std::is_same_v<T, Lambda>) {
            usage_.fun_arities.insert(n.params.size());
            for (const auto& p : n.params) opt_type(p.type);
            if (n.body_expr) expr(*n.body_expr);
            stmts(n.body_block);
          }
        },
        e.node);
  }

  Usage usage_;
};

}  // namespace

ClassTable build_class_table(const Program& program, const ClassTable& catalog) {
  std::set<std::string> wanted;
  auto want_with_supers = [&](const ClassEntry* e) {
    while (e) {
      wanted.insert(e->name);
      e = e->super ? catalog.find(e->super->name) : nullptr;
    }
  };
  want_with_supers(catalog.find(kObject));

  std::set<std::string> user_names;
  for (const auto& c : program.classes) {
    if (!user_names.insert(c.name).second || catalog.find(c.name)) {
      throw CompileError(ErrorKind::DuplicateClass, "duplicate class '" + c.name + "'", c.pos);
    }
  }

  for (const auto& imp : program.imports) {
    const auto* e = catalog.find(imp.name);
    if (!e || e->name != imp.name) {
      // Simple-name imports of catalog classes without a package are fine too.
      if (!e || simple_name(e->name) != imp.name || e->name.find('.') != std::string::npos) {
        throw CompileError(ErrorKind::UnknownImport, "cannot resolve import '" + imp.name + "'",
                           imp.pos);
      }
    }
    want_with_supers(e);
  }

  const Usage usage = UsageScanner().run(program);
  for (const auto& name : usage.type_names) {
    if (user_names.count(name)) continue;
    if (const auto* e = catalog.find(name)) want_with_supers(e);
  }
  if (usage.needs_boolean) want_with_supers(catalog.find(kBoolean));
  if (usage.needs_string) want_with_supers(catalog.find(kString));
  if (usage.needs_integer) want_with_supers(catalog.find(kInteger));
  if (usage.needs_number) want_with_supers(catalog.find(kNumber));

  // Classes mentioned inside member signatures of a wanted class come along.
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& e : catalog.entries()) {
      if (!wanted.count(e.name)) continue;
      std::vector<Type> mentioned;
      for (const auto& m : e.methods) {
        mentioned.insert(mentioned.end(), m.params.begin(), m.params.end());
        mentioned.push_back(m.ret);
      }
      for (const auto& f : e.fields) mentioned.push_back(f.type);
      for (const auto& t : mentioned) {
        auto visit = [&](const Type& x, auto&& self) -> void {
          if (x.is_class() && !wanted.count(x.name)) {
            want_with_supers(catalog.find(x.name));
            grew = true;
          }
          for (const auto& a : x.args) self(a, self);
        };
        visit(t, visit);
      }
    }
  }

  ClassTable table;
  for (const auto& e : catalog.entries()) {
    if (wanted.count(e.name)) table.add(e);
  }
  for (const auto n : usage.fun_arities) {
    if (catalog.has_fun(n)) table.add_fun_arity(n);
    if (catalog.has_fun_void(n)) table.add_fun_void_arity(n);
  }

  for (const auto& c : program.classes) {
    ClassEntry e;
    e.name = c.name;
    e.builtin = false;
    for (const auto& g : c.generics) {
      e.params.push_back(g.name);
      e.variance.push_back(Variance::Invariant);
    }
    e.super = object_type();
    for (const auto& f : c.fields) e.fields.push_back({f.name, Type::void_type()});
    for (const auto& m : c.methods) {
      MethodSig sig;
      sig.name = m.name;
      sig.params.assign(m.params.size(), Type::void_type());
      e.methods.push_back(std::move(sig));
    }
    table.add(std::move(e));
  }
  return table;
}

}  // namespace txinfer
