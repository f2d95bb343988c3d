#include "txinfer/constraint_gen.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace txinfer {

namespace {

using VarKey = std::pair<int, std::string>;
using VarMap = std::map<VarKey, Type>;

Type instantiate(const Type& t, const VarMap& vars) {
  return map_leaves(t, [&](const Type& leaf) -> const Type* {
    if (!leaf.is_var()) return nullptr;
    auto it = vars.find({leaf.scope, leaf.name});
    return it == vars.end() ? nullptr : &it->second;
  });
}

bool has_return(const std::vector<StmtPtr>& body) {
  for (const auto& s : body) {
    if (std::holds_alternative<Return>(s->node)) return true;
    if (const auto* w = std::get_if<While>(&s->node); w && has_return(w->body)) return true;
    if (const auto* b = std::get_if<Block>(&s->node); b && has_return(b->body)) return true;
  }
  return false;
}

/// One way of typing a member access: optional receiver shape, parameter
/// types, result type and side constraints (bounds of fresh instances).
struct Candidate {
  std::optional<Type> receiver;
  std::vector<Type> params;
  Type result;
  ConstraintSet extra;
  std::optional<std::size_t> own_method;  // same-class callee typed by its own slots
};

class Generator {
 public:
  Generator(const Program& program, std::size_t class_index, const ClassTable& table,
            FreshNames& fresh, const std::map<std::string, ClassSummary>& summaries)
      : cls_(program.classes.at(class_index)),
        table_(table),
        fresh_(fresh),
        summaries_(summaries) {
    out_.class_index = class_index;
    out_.name = cls_.name;
  }

  AnnotatedClass run() {
    for (const auto& g : cls_.generics) class_generics_[g.name] = Type::var(g.name, kClassScope);
    for (const auto& g : cls_.generics) {
      if (g.bound) out_.declared_bounds[{kClassScope, g.name}] = resolve(*g.bound, class_generics_);
    }
    declare_fields();
    declare_methods();

    // Field initializers form the class-level pass.
    decl_slots_ = &out_.class_slots;
    expr_slots_ = &out_.class_slots;
    generics_ = class_generics_;
    for (std::size_t i = 0; i < cls_.fields.size(); ++i) {
      const auto& f = cls_.fields[i];
      if (!f.init) continue;
      const Type t = expr(*f.init);
      add(Constraint::less(t, out_.field_types[i], f.init->pos));
    }

    for (std::size_t i = 0; i < cls_.methods.size(); ++i) method_body(i);
    return std::move(out_);
  }

 private:
  // ---- declarations -------------------------------------------------------

  Type resolve(const TypeSyntax& syntax, const std::map<std::string, Type>& generics) const {
    return resolve_type(syntax, table_, generics);
  }

  Type slot_type(SlotId slot, const std::optional<TypeSyntax>& written) {
    Type t = written ? resolve(*written, generics_) : fresh_.next();
    out_.slot_types[slot] = t;
    decl_slots_->push_back(slot);
    return t;
  }

  void declare_fields() {
    std::set<std::string> names;
    generics_ = class_generics_;
    decl_slots_ = &out_.class_slots;
    for (const auto& f : cls_.fields) {
      if (!names.insert(f.name).second) {
        throw CompileError(ErrorKind::SyntaxError,
                           "field '" + f.name + "' is declared twice in class " + cls_.name, f.pos);
      }
      out_.field_types.push_back(slot_type(f.slot, f.type));
    }
  }

  void declare_methods() {
    out_.method_decl_slots.resize(cls_.methods.size());
    out_.method_expr_slots.resize(cls_.methods.size());
    for (std::size_t i = 0; i < cls_.methods.size(); ++i) {
      const auto& m = cls_.methods[i];
      const int scope = static_cast<int>(i) + 1;
      auto gens = class_generics_;
      for (const auto& g : m.generics) gens[g.name] = Type::var(g.name, scope);
      for (const auto& g : m.generics) {
        if (g.bound) out_.declared_bounds[{scope, g.name}] = resolve(*g.bound, gens);
      }
      method_generics_.push_back(gens);
      generics_ = gens;
      decl_slots_ = &out_.method_decl_slots[i];

      std::set<std::string> seen;
      std::vector<Type> params;
      for (const auto& p : m.params) {
        if (!seen.insert(p.name).second) {
          throw CompileError(ErrorKind::SyntaxError,
                             "parameter '" + p.name + "' is declared twice", p.pos);
        }
        params.push_back(slot_type(p.slot, p.type));
      }
      Type ret;
      if (m.ret) {
        ret = resolve(*m.ret, gens);
      } else {
        ret = has_return(m.body) ? fresh_.next() : Type::void_type();
      }
      out_.slot_types[m.ret_slot] = ret;
      decl_slots_->push_back(m.ret_slot);
      out_.method_params.push_back(std::move(params));
      out_.method_returns.push_back(ret);
    }
  }

  void method_body(std::size_t index) {
    const auto& m = cls_.methods[index];
    method_ = index;
    generics_ = method_generics_[index];
    decl_slots_ = &out_.method_decl_slots[index];
    expr_slots_ = &out_.method_expr_slots[index];
    scopes_.clear();
    scopes_.emplace_back();
    for (std::size_t i = 0; i < m.params.size(); ++i) {
      scopes_.back()[m.params[i].name] = out_.method_params[index][i];
    }
    returns_.clear();
    returns_.push_back({out_.method_returns[index], false});
    stmts(m.body);
    method_.reset();
  }

  // ---- statements ---------------------------------------------------------

  void stmts(const std::vector<StmtPtr>& body) {
    scopes_.emplace_back();
    for (const auto& s : body) stmt(*s);
    scopes_.pop_back();
  }

  void stmt(const Stmt& s) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, LocalVar>) {
            const Type t = slot_type(n.slot, n.type);
            if (n.init) add(Constraint::less(expr(*n.init), t, n.init->pos));
            scopes_.back()[n.name] = t;
          } else if constexpr (std::is_same_v<T, ExprStmt>) {
            expr(*n.expr);
          } else if constexpr (std::is_same_v<T, While>) {
            const Type c = expr(*n.cond);
            add(Constraint::eq(builtin(kBoolean, n.cond->pos), c, n.cond->pos));
            stmts(n.body);
          } else if constexpr (std::is_same_v<T, Return>) {
            if (returns_.empty()) {
              throw CompileError(ErrorKind::SyntaxError, "return outside of a method", s.pos);
            }
            const Type t = expr(*n.value);
            add(Constraint::less(t, returns_.back().target, n.value->pos));
            returns_.back().seen = true;
          } else {
            stmts(n.body);
          }
        },
        s.node);
  }

  // ---- expressions --------------------------------------------------------

  Type record(const Expr& e, Type t) {
    out_.slot_types[e.slot] = t;
    expr_slots_->push_back(e.slot);
    return t;
  }

  Type builtin(std::string_view name, SourcePos pos) const {
    const auto* e = table_.find(name);
    if (!e) {
      throw CompileError(ErrorKind::UnknownType,
                         simple_name(std::string(name)) + " is not part of the type universe", pos);
    }
    return Type::cls(e->name);
  }

  Type literal(const Expr& e, std::string_view type_name) {
    const Type t = fresh_.next();
    add(Constraint::eq(builtin(type_name, e.pos), t, e.pos));
    return record(e, t);
  }

  Type expr(const Expr& e) {
    return std::visit(
        [&](const auto& n) -> Type {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, IntLit>) {
            return literal(e, kInteger);
          } else if constexpr (std::is_same_v<T, BoolLit>) {
            return literal(e, kBoolean);
          } else if constexpr (std::is_same_v<T, StringLit>) {
            return literal(e, kString);
          } else if constexpr (std::is_same_v<T, NameRef>) {
            return record(e, lookup(n.id, e.pos));
          } else if constexpr (std::is_same_v<T, This>) {
            return record(e, self_type());
          } else if constexpr (std::is_same_v<T, FieldAccess>) {
            return record(e, field_access(n, e.pos));
          } else if constexpr (std::is_same_v<T, Call>) {
            return record(e, call(n, e.pos));
          } else if constexpr (std::is_same_v<T, New>) {
            return record(e, construct(n, e.pos));
          } else if constexpr (std::is_same_v<T, Binary>) {
            return record(e, binary(n, e.pos));
          } else if constexpr (std::is_same_v<T, Assign>) {
            const Type target = expr(*n.target);
            const Type value = expr(*n.value);
            add(Constraint::less(value, target, n.value->pos));
            return record(e, target);
          } else if constexpr (std::is_same_v<T, Increment>) {
            return record(e, increment(n, e.pos));
          } else {
            return record(e, lambda(n));
          }
        },
        e.node);
  }

  Type self_type() const {
    std::vector<Type> args;
    for (const auto& g : cls_.generics) args.push_back(Type::var(g.name, kClassScope));
    return Type::cls(cls_.name, std::move(args));
  }

  std::optional<std::size_t> own_field(const std::string& name) const {
    for (std::size_t i = 0; i < cls_.fields.size(); ++i) {
      if (cls_.fields[i].name == name) return i;
    }
    return std::nullopt;
  }

  Type lookup(const std::string& id, SourcePos pos) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      if (auto f = it->find(id); f != it->end()) return f->second;
    }
    if (auto f = own_field(id)) return out_.field_types[*f];
    throw CompileError(ErrorKind::UnknownIdentifier, "unknown identifier '" + id + "'", pos);
  }

  static bool is_this(const ExprPtr& e) { return e && std::holds_alternative<This>(e->node); }

  /// Fresh arguments for the parameters of a class, keyed as class variables.
  VarMap fresh_class_args(const std::vector<std::string>& params, std::vector<Type>& args) {
    VarMap vars;
    for (const auto& p : params) {
      Type f = fresh_.next();
      vars[{kClassScope, p}] = f;
      args.push_back(f);
    }
    return vars;
  }

  /// Adds fresh instances for the generics of a typing to `vars` and returns
  /// the bound constraints they carry.
  ConstraintSet instantiate_generics(const std::vector<GenericVar>& generics, int scope,
                                     VarMap& vars, SourcePos pos) {
    for (const auto& g : generics) vars[{scope, g.name}] = fresh_.next();
    ConstraintSet extra;
    for (const auto& g : generics) {
      if (g.bound && !(g.bound->is_class() && g.bound->name == kObject)) {
        extra.push_back(Constraint::less(vars[{scope, g.name}], instantiate(*g.bound, vars), pos));
      }
    }
    return extra;
  }

  /// Candidate for a method of this class typed by its own slots; declared
  /// method generics are instantiated afresh.
  Candidate own_method(std::size_t index, bool with_receiver, SourcePos pos) {
    Candidate c;
    const auto& m = cls_.methods[index];
    VarMap vars;
    std::vector<GenericVar> generics;
    const int scope = static_cast<int>(index) + 1;
    for (const auto& g : m.generics) {
      auto b = out_.declared_bounds.find({scope, g.name});
      generics.push_back({g.name, b == out_.declared_bounds.end()
                                      ? std::nullopt
                                      : std::optional<Type>(b->second)});
    }
    c.extra = instantiate_generics(generics, scope, vars, pos);
    for (const auto& p : out_.method_params[index]) c.params.push_back(instantiate(p, vars));
    c.result = instantiate(out_.method_returns[index], vars);
    if (m.generics.empty()) c.own_method = index;
    if (with_receiver) c.receiver = self_type();
    return c;
  }

  /// Candidates from a class of the table (built-in members).
  void table_candidates(const std::string& method, std::size_t arity,
                        std::vector<Candidate>& out, bool& name_seen, SourcePos pos) {
    for (const auto& entry : table_.entries()) {
      if (!entry.builtin) continue;
      for (const auto& sig : entry.methods) {
        if (sig.name != method) continue;
        name_seen = true;
        if (sig.params.size() != arity) continue;
        Candidate c;
        std::vector<Type> args;
        VarMap vars = fresh_class_args(entry.params, args);
        c.receiver = Type::cls(entry.name, std::move(args));
        for (const auto& p : sig.params) c.params.push_back(instantiate(p, vars));
        c.result = instantiate(sig.ret, vars);
        out.push_back(std::move(c));
      }
    }
    (void)pos;
  }

  void summary_candidates(const std::string& method, std::size_t arity,
                          std::vector<Candidate>& out, bool& name_seen, SourcePos pos) {
    for (const auto& [name, summary] : summaries_) {
      if (name == cls_.name) continue;
      for (std::size_t j = 0; j < summary.method_names.size(); ++j) {
        if (summary.method_names[j] != method) continue;
        name_seen = true;
        for (const auto& typing : summary.methods[j]) {
          if (typing.params.size() != arity) continue;
          Candidate c;
          VarMap vars;
          c.extra = instantiate_generics(summary.generics, kClassScope, vars, pos);
          std::vector<Type> args;
          for (const auto& g : summary.generics) args.push_back(vars[{kClassScope, g.name}]);
          auto more = instantiate_generics(typing.generics, static_cast<int>(j) + 1, vars, pos);
          c.extra.insert(c.extra.end(), more.begin(), more.end());
          c.receiver = Type::cls(summary.name, std::move(args));
          for (const auto& p : typing.params) c.params.push_back(instantiate(p, vars));
          c.result = instantiate(typing.ret, vars);
          out.push_back(std::move(c));
        }
      }
    }
  }

  void function_candidates(const std::string& method, std::size_t arity,
                           std::vector<Candidate>& out, bool& name_seen) {
    if (table_.has_fun(arity) && method == table_.fun_family().method) {
      name_seen = true;
      Candidate c;
      for (std::size_t i = 0; i < arity; ++i) c.params.push_back(fresh_.next());
      c.result = fresh_.next();
      c.receiver = Type::fun(c.params, c.result);
      out.push_back(std::move(c));
    }
    if (table_.has_fun_void(arity) && method == table_.fun_void_family().method) {
      name_seen = true;
      Candidate c;
      for (std::size_t i = 0; i < arity; ++i) c.params.push_back(fresh_.next());
      c.result = Type::void_type();
      c.receiver = Type::fun_void(c.params);
      out.push_back(std::move(c));
    }
    if (!name_seen && (method == table_.fun_family().method ||
                       method == table_.fun_void_family().method)) {
      // The method name exists for other arities of the function families.
      name_seen = !table_.fun_arities().empty() || !table_.fun_void_arities().empty();
    }
  }

  Type call(const Call& n, SourcePos pos) {
    std::vector<Type> args;
    std::optional<Type> receiver;
    if (n.receiver && !is_this(n.receiver)) receiver = expr(*n.receiver);
    if (is_this(n.receiver)) expr(*n.receiver);
    for (const auto& a : n.args) args.push_back(expr(*a));

    std::vector<Candidate> cands;
    bool name_seen = false;
    const bool own_only = !receiver;
    for (std::size_t i = 0; i < cls_.methods.size(); ++i) {
      if (cls_.methods[i].name != n.method) continue;
      name_seen = true;
      if (cls_.methods[i].params.size() != args.size()) continue;
      cands.push_back(own_method(i, !own_only, pos));
    }
    if (!own_only) {
      table_candidates(n.method, args.size(), cands, name_seen, pos);
      summary_candidates(n.method, args.size(), cands, name_seen, pos);
      function_candidates(n.method, args.size(), cands, name_seen);
    }
    if (cands.empty()) {
      if (name_seen) {
        throw CompileError(ErrorKind::ArityMismatch,
                           "no method '" + n.method + "' takes " + std::to_string(args.size()) +
                               " arguments",
                           pos);
      }
      throw CompileError(ErrorKind::UnknownMember, "unknown method '" + n.method + "'", pos);
    }
    return apply_candidates("call " + n.method, cands, receiver, args, pos);
  }

  Type apply_candidates(const std::string& label, std::vector<Candidate>& cands,
                        const std::optional<Type>& receiver, const std::vector<Type>& args,
                        SourcePos pos) {
    auto alternative = [&](Candidate& c, const std::optional<Type>& result) {
      ConstraintSet cs = std::move(c.extra);
      if (receiver && c.receiver) cs.push_back(Constraint::eq(*c.receiver, *receiver, pos));
      for (std::size_t i = 0; i < args.size(); ++i) {
        cs.push_back(Constraint::less(args[i], c.params[i], pos));
      }
      if (result) cs.push_back(Constraint::eq(c.result, *result, pos));
      return cs;
    };
    auto record_call = [&](const Candidate& c, const Type& result) {
      if (c.own_method && method_) {
        out_.calls.push_back({*method_, *c.own_method, args, result});
      }
    };
    if (cands.size() == 1) {
      for (auto& c : alternative(cands.front(), std::nullopt)) add(std::move(c));
      record_call(cands.front(), cands.front().result);
      return cands.front().result;
    }
    const Type result = fresh_.next();
    OrGroup group{label, pos, {}};
    for (auto& c : cands) {
      record_call(c, result);
      group.alternatives.push_back(alternative(c, result));
    }
    out_.constraints.groups.push_back(std::move(group));
    return result;
  }

  Type field_access(const FieldAccess& n, SourcePos pos) {
    if (is_this(n.receiver)) {
      expr(*n.receiver);
      if (auto f = own_field(n.field)) return out_.field_types[*f];
      throw CompileError(ErrorKind::UnknownMember,
                         "class " + cls_.name + " has no field '" + n.field + "'", pos);
    }
    const Type receiver = expr(*n.receiver);
    std::vector<Candidate> cands;
    if (auto f = own_field(n.field)) {
      Candidate c;
      c.receiver = self_type();
      c.result = out_.field_types[*f];
      cands.push_back(std::move(c));
    }
    for (const auto& entry : table_.entries()) {
      if (!entry.builtin) continue;
      for (const auto& f : entry.fields) {
        if (f.name != n.field) continue;
        Candidate c;
        std::vector<Type> args;
        VarMap vars = fresh_class_args(entry.params, args);
        c.receiver = Type::cls(entry.name, std::move(args));
        c.result = instantiate(f.type, vars);
        cands.push_back(std::move(c));
      }
    }
    for (const auto& [name, summary] : summaries_) {
      if (name == cls_.name) continue;
      for (const auto& [fname, ftype] : summary.fields) {
        if (fname != n.field) continue;
        Candidate c;
        VarMap vars;
        c.extra = instantiate_generics(summary.generics, kClassScope, vars, pos);
        std::vector<Type> args;
        for (const auto& g : summary.generics) args.push_back(vars[{kClassScope, g.name}]);
        c.receiver = Type::cls(summary.name, std::move(args));
        c.result = instantiate(ftype, vars);
        cands.push_back(std::move(c));
      }
    }
    if (cands.empty()) {
      throw CompileError(ErrorKind::UnknownMember, "unknown field '" + n.field + "'", pos);
    }
    return apply_candidates("field " + n.field, cands, receiver, {}, pos);
  }

  Type construct(const New& n, SourcePos pos) {
    const auto* entry = table_.find(n.type.name);
    if (!entry) {
      throw CompileError(ErrorKind::UnknownType, "unknown class '" + n.type.name + "'", n.type.pos);
    }
    std::vector<Type> args;
    for (const auto& a : n.args) args.push_back(expr(*a));

    std::vector<Type> type_args;
    VarMap vars;
    ConstraintSet bounds;
    if (n.type.diamond) {
      vars = fresh_class_args(entry->params, type_args);
      if (const auto s = summaries_.find(entry->name); s != summaries_.end()) {
        for (const auto& g : s->second.generics) {
          if (g.bound) bounds.push_back(Constraint::less(vars[{kClassScope, g.name}],
                                                         instantiate(*g.bound, vars), pos));
        }
      }
    } else {
      const Type t = resolve(n.type, generics_);
      type_args = t.args;
      for (std::size_t i = 0; i < entry->params.size(); ++i) {
        vars[{kClassScope, entry->params[i]}] = type_args[i];
      }
    }
    const Type result = Type::cls(entry->name, type_args);
    for (auto& c : bounds) add(std::move(c));

    std::vector<Candidate> cands;
    if (entry->constructors.empty()) {
      if (!args.empty()) {
        throw CompileError(ErrorKind::ArityMismatch,
                           simple_name(entry->name) + " has only a constructor without arguments",
                           pos);
      }
      return result;
    }
    for (const auto& ctor : entry->constructors) {
      if (ctor.size() != args.size()) continue;
      Candidate c;
      for (const auto& p : ctor) c.params.push_back(instantiate(p, vars));
      c.result = result;
      cands.push_back(std::move(c));
    }
    if (cands.empty()) {
      throw CompileError(ErrorKind::ArityMismatch,
                         "no constructor of " + simple_name(entry->name) + " takes " +
                             std::to_string(args.size()) + " arguments",
                         pos);
    }
    if (cands.size() == 1) {
      for (std::size_t i = 0; i < args.size(); ++i) {
        add(Constraint::less(args[i], cands.front().params[i], pos));
      }
      return result;
    }
    OrGroup group{"new " + simple_name(entry->name), pos, {}};
    for (const auto& c : cands) {
      ConstraintSet cs;
      for (std::size_t i = 0; i < args.size(); ++i) {
        cs.push_back(Constraint::less(args[i], c.params[i], pos));
      }
      group.alternatives.push_back(std::move(cs));
    }
    out_.constraints.groups.push_back(std::move(group));
    return result;
  }

  std::vector<Type> operand_types(BinaryOp op, SourcePos pos) const {
    std::vector<std::string_view> names;
    if (op == BinaryOp::Plus) names = {kInteger, kDouble, kString};
    if (op == BinaryOp::Times) names = {kInteger, kDouble};
    std::vector<Type> out;
    for (auto n : names) {
      if (table_.find(n)) out.push_back(Type::cls(std::string(n)));
    }
    if (out.empty()) {
      throw CompileError(ErrorKind::Untypable,
                         "operator " + std::string(binary_op_text(op)) +
                             " has no typing over the imported types",
                         pos);
    }
    return out;
  }

  Type binary(const Binary& n, SourcePos pos) {
    const Type a = expr(*n.lhs);
    const Type b = expr(*n.rhs);
    const Type res = fresh_.next();
    switch (n.op) {
      case BinaryOp::LessEq: {
        const Type number = builtin(kNumber, pos);
        add(Constraint::less(a, number, pos));
        add(Constraint::less(b, number, pos));
        add(Constraint::eq(builtin(kBoolean, pos), res, pos));
        break;
      }
      case BinaryOp::Or: {
        const Type boolean = builtin(kBoolean, pos);
        add(Constraint::less(a, boolean, pos));
        add(Constraint::less(b, boolean, pos));
        add(Constraint::eq(boolean, res, pos));
        break;
      }
      case BinaryOp::Plus:
      case BinaryOp::Times: {
        OrGroup group{"operator " + std::string(binary_op_text(n.op)), pos, {}};
        for (const auto& t : operand_types(n.op, pos)) {
          group.alternatives.push_back({Constraint::less(a, t, pos), Constraint::less(b, t, pos),
                                        Constraint::eq(t, res, pos)});
        }
        add_group(std::move(group));
        break;
      }
    }
    return res;
  }

  // `x++` is typed as `x = x + 1`.
  Type increment(const Increment& n, SourcePos pos) {
    const Type x = expr(*n.target);
    const Type one = builtin(kInteger, pos);
    OrGroup group{"operator ++", pos, {}};
    for (const auto& t : operand_types(BinaryOp::Plus, pos)) {
      group.alternatives.push_back(
          {Constraint::less(x, t, pos), Constraint::less(one, t, pos), Constraint::less(t, x, pos)});
    }
    add_group(std::move(group));
    return x;
  }

  Type lambda(const Lambda& n) {
    scopes_.emplace_back();
    std::vector<Type> params;
    std::set<std::string> seen;
    for (const auto& p : n.params) {
      if (!seen.insert(p.name).second) {
        throw CompileError(ErrorKind::SyntaxError, "parameter '" + p.name + "' is declared twice",
                           p.pos);
      }
      params.push_back(slot_type(p.slot, p.type));
      scopes_.back()[p.name] = params.back();
    }
    Type t;
    if (n.body_expr) {
      t = Type::fun(params, expr(*n.body_expr));
    } else {
      returns_.push_back({fresh_.next(), false});
      stmts(n.body_block);
      const auto r = returns_.back();
      returns_.pop_back();
      t = r.seen ? Type::fun(params, r.target) : Type::fun_void(params);
    }
    scopes_.pop_back();
    return t;
  }

  // ---- output -------------------------------------------------------------

  void add(Constraint c) { out_.constraints.base.push_back(std::move(c)); }

  void add_group(OrGroup group) {
    if (group.alternatives.size() == 1) {
      for (auto& c : group.alternatives.front()) add(std::move(c));
    } else {
      out_.constraints.groups.push_back(std::move(group));
    }
  }

  struct ReturnTarget {
    Type target;
    bool seen = false;
  };

  const ClassDecl& cls_;
  const ClassTable& table_;
  FreshNames& fresh_;
  const std::map<std::string, ClassSummary>& summaries_;
  AnnotatedClass out_;

  std::map<std::string, Type> class_generics_;
  std::vector<std::map<std::string, Type>> method_generics_;
  std::map<std::string, Type> generics_;
  std::vector<SlotId>* decl_slots_ = nullptr;
  std::vector<SlotId>* expr_slots_ = nullptr;
  std::vector<std::map<std::string, Type>> scopes_;
  std::vector<ReturnTarget> returns_;
  std::optional<std::size_t> method_;
};

// ---- class dependencies ---------------------------------------------------

struct NameUse {
  std::set<std::string> types;
  std::set<std::string> members;  // names used behind a receiver other than `this`
};

void collect_type(const TypeSyntax& t, NameUse& use) {
  use.types.insert(t.name);
  for (const auto& a : t.args) collect_type(a, use);
}

void collect_stmts(const std::vector<StmtPtr>& body, NameUse& use);

void collect_expr(const Expr& e, NameUse& use) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, FieldAccess>) {
          if (!std::holds_alternative<This>(n.receiver->node)) use.members.insert(n.field);
          collect_expr(*n.receiver, use);
        } else if constexpr (std::is_same_v<T, Call>) {
          if (n.receiver) {
            if (!std::holds_alternative<This>(n.receiver->node)) use.members.insert(n.method);
            collect_expr(*n.receiver, use);
          }
          for (const auto& a : n.args) collect_expr(*a, use);
        } else if constexpr (std::is_same_v<T, New>) {
          collect_type(n.type, use);
          for (const auto& a : n.args) collect_expr(*a, use);
        } else if constexpr (std::is_same_v<T, Binary>) {
          collect_expr(*n.lhs, use);
          collect_expr(*n.rhs, use);
        } else if constexpr (std::is_same_v<T, Assign>) {
          collect_expr(*n.target, use);
          collect_expr(*n.value, use);
        } else if constexpr (std::is_same_v<T, Increment>) {
          collect_expr(*n.target, use);
        } else if constexpr (std::is_same_v<T, Lambda>) {
          for (const auto& p : n.params) {
            if (p.type) collect_type(*p.type, use);
          }
          if (n.body_expr) collect_expr(*n.body_expr, use);
          collect_stmts(n.body_block, use);
        }
      },
      e.node);
}

void collect_stmts(const std::vector<StmtPtr>& body, NameUse& use) {
  for (const auto& s : body) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, LocalVar>) {
            if (n.type) collect_type(*n.type, use);
            if (n.init) collect_expr(*n.init, use);
          } else if constexpr (std::is_same_v<T, ExprStmt>) {
            collect_expr(*n.expr, use);
          } else if constexpr (std::is_same_v<T, While>) {
            collect_expr(*n.cond, use);
            collect_stmts(n.body, use);
          } else if constexpr (std::is_same_v<T, Return>) {
            collect_expr(*n.value, use);
          } else {
            collect_stmts(n.body, use);
          }
        },
        s->node);
  }
}

NameUse collect_class(const ClassDecl& c) {
  NameUse use;
  for (const auto& g : c.generics) {
    if (g.bound) collect_type(*g.bound, use);
  }
  for (const auto& f : c.fields) {
    if (f.type) collect_type(*f.type, use);
    if (f.init) collect_expr(*f.init, use);
  }
  for (const auto& m : c.methods) {
    for (const auto& g : m.generics) {
      if (g.bound) collect_type(*g.bound, use);
    }
    if (m.ret) collect_type(*m.ret, use);
    for (const auto& p : m.params) {
      if (p.type) collect_type(*p.type, use);
    }
    collect_stmts(m.body, use);
  }
  return use;
}

}  // namespace

AnnotatedClass generate_constraints(const Program& program, std::size_t class_index,
                                    const ClassTable& table, FreshNames& fresh,
                                    const std::map<std::string, ClassSummary>& summaries) {
  return Generator(program, class_index, table, fresh, summaries).run();
}

std::vector<std::size_t> class_inference_order(const Program& program) {
  const std::size_t n = program.classes.size();
  std::vector<std::set<std::size_t>> deps(n);
  for (std::size_t i = 0; i < n; ++i) {
    const NameUse use = collect_class(program.classes[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto& other = program.classes[j];
      bool uses = use.types.count(other.name) > 0;
      for (const auto& f : other.fields) uses = uses || use.members.count(f.name);
      for (const auto& m : other.methods) uses = uses || use.members.count(m.name);
      if (uses) deps[i].insert(j);
    }
  }
  std::vector<std::size_t> order;
  std::vector<bool> done(n, false);
  while (order.size() < n) {
    bool progress = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const bool ready = std::all_of(deps[i].begin(), deps[i].end(),
                                     [&](std::size_t d) { return done[d]; });
      if (ready) {
        done[i] = true;
        order.push_back(i);
        progress = true;
        break;
      }
    }
    if (!progress) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!done[i]) {
          throw CompileError(ErrorKind::UnsupportedFeature,
                             "classes that use each other are not supported (" +
                                 program.classes[i].name + ")",
                             program.classes[i].pos);
        }
      }
    }
  }
  return order;
}

}  // namespace txinfer
