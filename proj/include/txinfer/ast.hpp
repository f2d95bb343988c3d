// txinfer/ast.hpp - syntax tree of the untyped Java subset
//
// Every expression and every declaration that can carry a type owns a slot
// id. A slot is either annotated in the source (TypeSyntax present) or left
// to inference.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "txinfer/diagnostics.hpp"

namespace txinfer {

using SlotId = int;

struct TypeSyntax {
  std::string name;  // as written: `Integer`, `java.lang.Integer`, `Fun1$$`, `void`
  std::vector<TypeSyntax> args;
  bool diamond = false;  // `Pair<>`
  SourcePos pos;
};

struct Expr;
struct Stmt;
using ExprPtr = std::unique_ptr<Expr>;
using StmtPtr = std::unique_ptr<Stmt>;

struct Param {
  std::string name;
  std::optional<TypeSyntax> type;
  SlotId slot = -1;
  SourcePos pos;
};

struct GenericParam {
  std::string name;
  std::optional<TypeSyntax> bound;
  SourcePos pos;
};

enum class BinaryOp { Plus, Times, LessEq, Or };

std::string_view binary_op_text(BinaryOp op);

struct IntLit {
  std::string text;
};
struct BoolLit {
  bool value = false;
};
struct StringLit {
  std::string text;  // body between the quotes, escapes as written
};
struct NameRef {
  std::string id;
};
struct This {};
struct FieldAccess {
  ExprPtr receiver;
  std::string field;
};
struct Call {
  ExprPtr receiver;  // null for an unqualified call
  std::string method;
  std::vector<ExprPtr> args;
};
struct New {
  TypeSyntax type;
  std::vector<ExprPtr> args;
};
struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct Assign {
  ExprPtr target;
  ExprPtr value;
};
struct Increment {
  ExprPtr target;
};
struct Lambda {
  std::vector<Param> params;
  bool parenthesized = true;
  ExprPtr body_expr;  // set when the body is a single expression
  std::vector<StmtPtr> body_block;
};

struct Expr {
  SourcePos pos;
  SlotId slot = -1;
  std::variant<IntLit, BoolLit, StringLit, NameRef, This, FieldAccess, Call, New, Binary,
               Assign, Increment, Lambda>
      node;
};

struct LocalVar {
  std::string name;
  std::optional<TypeSyntax> type;  // empty for `var`
  ExprPtr init;
  SlotId slot = -1;
};
struct ExprStmt {
  ExprPtr expr;
};
struct While {
  ExprPtr cond;
  std::vector<StmtPtr> body;
};
struct Return {
  ExprPtr value;
};
struct Block {
  std::vector<StmtPtr> body;
};

struct Stmt {
  SourcePos pos;
  std::variant<LocalVar, ExprStmt, While, Return, Block> node;
};

struct FieldDecl {
  std::string name;
  std::optional<TypeSyntax> type;
  ExprPtr init;
  SlotId slot = -1;
  SourcePos pos;
};

struct MethodDecl {
  std::string name;
  std::vector<GenericParam> generics;
  std::optional<TypeSyntax> ret;  // `void` is a TypeSyntax named "void"
  std::vector<Param> params;
  std::vector<StmtPtr> body;
  SlotId ret_slot = -1;
  SourcePos pos;
};

struct ClassDecl {
  std::string name;
  std::vector<GenericParam> generics;
  std::vector<FieldDecl> fields;
  std::vector<MethodDecl> methods;
  SourcePos pos;
};

struct Import {
  std::string name;
  SourcePos pos;
};

struct Program {
  std::vector<Import> imports;
  std::vector<ClassDecl> classes;
  int slot_count = 0;
};

}  // namespace txinfer
