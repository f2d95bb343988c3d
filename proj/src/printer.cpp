#include <sstream>

#include "txinfer/frontend.hpp"

namespace txinfer {

namespace {

constexpr int kLambdaPrec = 0;
constexpr int kAssignPrec = 1;
constexpr int kPostfixPrec = 6;
constexpr int kPrimaryPrec = 7;

int binary_prec(BinaryOp op) {
  switch (op) {
    case BinaryOp::Or: return 2;
    case BinaryOp::LessEq: return 3;
    case BinaryOp::Plus: return 4;
    case BinaryOp::Times: return 5;
  }
  return 0;
}

int precedence(const Expr& e) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Binary>) return binary_prec(n.op);
        if constexpr (std::is_same_v<T, Assign>) return kAssignPrec;
        if constexpr (std::is_same_v<T, Lambda>) return kLambdaPrec;
        if constexpr (std::is_same_v<T, FieldAccess> || std::is_same_v<T, Call> ||
                      std::is_same_v<T, Increment>)
          return kPostfixPrec;
        return kPrimaryPrec;
      },
      e.node);
}

class Printer {
 public:
  explicit Printer(const PrintHooks& hooks) : hooks_(hooks) {}

  std::string run(const Program& prog) {
    for (const auto& imp : prog.imports) out_ << "import " << imp.name << ";\n";
    if (!prog.imports.empty()) out_ << "\n";
    for (std::size_t i = 0; i < prog.classes.size(); ++i) {
      if (i) out_ << "\n";
      print_class(prog.classes[i]);
    }
    return out_.str();
  }

 private:
  std::optional<std::string> slot_text(SlotId slot, const std::optional<TypeSyntax>& written) {
    if (hooks_.slot_type) {
      if (auto t = hooks_.slot_type(slot)) return t;
    }
    if (written) return to_string(*written);
    return std::nullopt;
  }

  static std::string generics_text(const std::vector<GenericParam>& gs) {
    std::string out;
    for (std::size_t i = 0; i < gs.size(); ++i) {
      if (i) out += ", ";
      out += gs[i].name;
      if (gs[i].bound) out += " extends " + to_string(*gs[i].bound);
    }
    return out;
  }

  void print_class(const ClassDecl& cls) {
    out_ << "class " << cls.name;
    std::optional<std::string> gens;
    if (hooks_.class_generics) gens = hooks_.class_generics(cls);
    if (!gens && !cls.generics.empty()) gens = generics_text(cls.generics);
    if (gens && !gens->empty()) out_ << "<" << *gens << ">";
    out_ << " {\n";
    for (const auto& f : cls.fields) {
      indent(1);
      if (auto t = slot_text(f.slot, f.type)) out_ << *t << " ";
      out_ << f.name;
      if (f.init) {
        out_ << " = ";
        expr(*f.init, 1);
      }
      out_ << ";\n";
    }
    for (std::size_t i = 0; i < cls.methods.size(); ++i) {
      if (i || !cls.fields.empty()) out_ << "\n";
      print_method(cls, i);
    }
    out_ << "}\n";
  }

  void print_method(const ClassDecl& cls, std::size_t index) {
    const auto& m = cls.methods[index];
    if (hooks_.method_comments) {
      for (const auto& line : hooks_.method_comments(cls, index)) {
        indent(1);
        out_ << "// " << line << "\n";
      }
    }
    indent(1);
    std::optional<std::string> gens;
    if (hooks_.method_generics) gens = hooks_.method_generics(cls, index);
    if (!gens && !m.generics.empty()) gens = generics_text(m.generics);
    if (gens && !gens->empty()) out_ << "<" << *gens << "> ";
    if (auto t = slot_text(m.ret_slot, m.ret)) out_ << *t << " ";
    out_ << m.name << "(";
    params(m.params);
    out_ << ") ";
    block(m.body, 1);
    out_ << "\n";
  }

  void params(const std::vector<Param>& ps) {
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (i) out_ << ", ";
      if (auto t = slot_text(ps[i].slot, ps[i].type)) out_ << *t << " ";
      out_ << ps[i].name;
    }
  }

  void block(const std::vector<StmtPtr>& body, int depth) {
    out_ << "{\n";
    for (const auto& s : body) stmt(*s, depth + 1);
    indent(depth);
    out_ << "}";
  }

  void stmt(const Stmt& s, int depth) {
    indent(depth);
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, LocalVar>) {
            if (auto t = slot_text(n.slot, n.type)) {
              out_ << *t;
            } else {
              out_ << "var";
            }
            out_ << " " << n.name;
            if (n.init) {
              out_ << " = ";
              expr(*n.init, depth);
            }
            out_ << ";\n";
          } else if constexpr (std::is_same_v<T, ExprStmt>) {
            expr(*n.expr, depth);
            out_ << ";\n";
          } else if constexpr (std::is_same_v<T, While>) {
            out_ << "while (";
            expr(*n.cond, depth);
            out_ << ") ";
            block(n.body, depth);
            out_ << "\n";
          } else if constexpr (std::is_same_v<T, Return>) {
            out_ << "return ";
            expr(*n.value, depth);
            out_ << ";\n";
          } else if constexpr (std::is_same_v<T, Block>) {
            block(n.body, depth);
            out_ << "\n";
          }
        },
        s.node);
  }

  void operand(const Expr& e, int min_prec, int depth) {
    if (precedence(e) < min_prec) {
      out_ << "(";
      expr(e, depth);
      out_ << ")";
    } else {
      expr(e, depth);
    }
  }

  void args(const std::vector<ExprPtr>& as, int depth) {
    out_ << "(";
    for (std::size_t i = 0; i < as.size(); ++i) {
      if (i) out_ << ", ";
      expr(*as[i], depth);
    }
    out_ << ")";
  }

  void expr(const Expr& e, int depth) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, IntLit>) {
            out_ << n.text;
          } else if constexpr (std::is_same_v<T, BoolLit>) {
            out_ << (n.value ? "true" : "false");
          } else if constexpr (std::is_same_v<T, StringLit>) {
            out_ << '"' << n.text << '"';
          } else if constexpr (std::is_same_v<T, NameRef>) {
            out_ << n.id;
          } else if constexpr (std::is_same_v<T, This>) {
            out_ << "this";
          } else if constexpr (std::is_same_v<T, FieldAccess>) {
            operand(*n.receiver, kPostfixPrec, depth);
            out_ << "." << n.field;
          } else if constexpr (std::is_same_v<T, Call>) {
            if (n.receiver) {
              operand(*n.receiver, kPostfixPrec, depth);
              out_ << ".";
            }
            out_ << n.method;
            args(n.args, depth);
          } else if constexpr (std::is_same_v<T, New>) {
            out_ << "new " << to_string(n.type);
            args(n.args, depth);
          } else if constexpr (std::is_same_v<T, Binary>) {
            const int p = binary_prec(n.op);
            const bool non_assoc = n.op == BinaryOp::LessEq;
            operand(*n.lhs, non_assoc ? p + 1 : p, depth);
            out_ << " " << binary_op_text(n.op) << " ";
            operand(*n.rhs, p + 1, depth);
          } else if constexpr (std::is_same_v<T, Assign>) {
            operand(*n.target, kPostfixPrec, depth);
            out_ << " = ";
            expr(*n.value, depth);
          } else if constexpr (std::is_same_v<T, Increment>) {
            operand(*n.target, kPostfixPrec, depth);
            out_ << "++";
          } else if constexpr (std::is_same_v<T, Lambda>) {
            lambda(n, depth);
          }
        },
        e.node);
  }

  void lambda(const Lambda& lam, int depth) {
    bool any_type = false;
    std::vector<std::optional<std::string>> types;
    for (const auto& p : lam.params) {
      types.push_back(slot_text(p.slot, p.type));
      any_type = any_type || types.back().has_value();
    }
    const bool parens = lam.parenthesized || any_type || lam.params.size() != 1;
    if (parens) out_ << "(";
    for (std::size_t i = 0; i < lam.params.size(); ++i) {
      if (i) out_ << ", ";
      if (types[i]) out_ << *types[i] << " ";
      out_ << lam.params[i].name;
    }
    if (parens) out_ << ")";
    out_ << " -> ";
    if (lam.body_expr) {
      expr(*lam.body_expr, depth);
    } else {
      block(lam.body_block, depth);
    }
  }

  void indent(int depth) {
    for (int i = 0; i < depth; ++i) out_ << "    ";
  }

  const PrintHooks& hooks_;
  std::ostringstream out_;
};

}  // namespace

std::string print_program(const Program& program, const PrintHooks& hooks) {
  return Printer(hooks).run(program);
}

}  // namespace txinfer
