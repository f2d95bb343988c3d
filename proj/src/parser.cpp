#include <cctype>
#include <set>
#include <string>
#include <vector>

#include "txinfer/frontend.hpp"

namespace txinfer {

std::string_view binary_op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::Plus: return "+";
    case BinaryOp::Times: return "*";
    case BinaryOp::LessEq: return "<=";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

namespace {

enum class Tok {
  Ident,
  Int,
  String,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Lt,
  Gt,
  Comma,
  Semi,
  Dot,
  Assign,
  Plus,
  Star,
  LessEq,
  OrOr,
  PlusPlus,
  Arrow,
  Question,
  Eof,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

const std::set<std::string, std::less<>> kUnsupportedKeywords = {
    "try",    "catch",    "finally",   "throw",  "throws",    "interface", "static",
    "if",     "else",     "for",       "do",     "switch",    "case",      "break",
    "continue", "instanceof", "super", "implements", "abstract", "final", "public",
    "private", "protected", "enum",   "package", "synchronized", "default"};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool is_ident_continue(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      const SourcePos pos{line_, col_};
      if (at_end()) {
        out.push_back({Tok::Eof, "", pos});
        return out;
      }
      const char c = peek();
      if (is_ident_start(c)) {
        std::string text;
        while (!at_end() && is_ident_continue(peek())) text += advance();
        out.push_back({Tok::Ident, std::move(text), pos});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string text;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) text += advance();
        if (!at_end() && peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
          throw CompileError(ErrorKind::UnsupportedFeature,
                             "floating-point literals are not supported", pos);
        }
        out.push_back({Tok::Int, std::move(text), pos});
        continue;
      }
      if (c == '"') {
        advance();
        std::string text;
        while (!at_end() && peek() != '"') {
          if (peek() == '\n') throw CompileError(ErrorKind::SyntaxError, "unterminated string", pos);
          if (peek() == '\\') text += advance();
          if (at_end()) break;
          text += advance();
        }
        if (at_end()) throw CompileError(ErrorKind::SyntaxError, "unterminated string", pos);
        advance();
        out.push_back({Tok::String, std::move(text), pos});
        continue;
      }
      out.push_back(punct(pos));
    }
  }

 private:
  Token punct(SourcePos pos) {
    const char c = advance();
    auto tok = [&](Tok k, std::string text) { return Token{k, std::move(text), pos}; };
    switch (c) {
      case '{': return tok(Tok::LBrace, "{");
      case '}': return tok(Tok::RBrace, "}");
      case '(': return tok(Tok::LParen, "(");
      case ')': return tok(Tok::RParen, ")");
      case ',': return tok(Tok::Comma, ",");
      case ';': return tok(Tok::Semi, ";");
      case '.': return tok(Tok::Dot, ".");
      case '*': return tok(Tok::Star, "*");
      case '>': return tok(Tok::Gt, ">");
      case '?': return tok(Tok::Question, "?");
      case '<':
        if (!at_end() && peek() == '=') {
          advance();
          return tok(Tok::LessEq, "<=");
        }
        return tok(Tok::Lt, "<");
      case '=':
        if (!at_end() && peek() == '=') break;
        return tok(Tok::Assign, "=");
      case '+':
        if (!at_end() && peek() == '+') {
          advance();
          return tok(Tok::PlusPlus, "++");
        }
        if (!at_end() && peek() == '=') break;
        return tok(Tok::Plus, "+");
      case '|':
        if (!at_end() && peek() == '|') {
          advance();
          return tok(Tok::OrOr, "||");
        }
        break;
      case '-':
        if (!at_end() && peek() == '>') {
          advance();
          return tok(Tok::Arrow, "->");
        }
        break;
      case '/': case '%': case '!': case '&': case '[': case ']': case '@': case '\'':
      case '^': case '~': case ':':
        break;
      default:
        throw CompileError(ErrorKind::SyntaxError,
                           std::string("unexpected character '") + c + "'", pos);
    }
    throw CompileError(ErrorKind::UnsupportedFeature,
                       std::string("operator or token starting with '") + c + "' is not supported",
                       pos);
  }

  void skip_space_and_comments() {
    for (;;) {
      while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
      if (!at_end() && peek() == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
        continue;
      }
      if (!at_end() && peek() == '/' && peek(1) == '*') {
        const SourcePos start{line_, col_};
        advance();
        advance();
        while (!at_end() && !(peek() == '*' && peek(1) == '/')) advance();
        if (at_end()) throw CompileError(ErrorKind::SyntaxError, "unterminated comment", start);
        advance();
        advance();
        continue;
      }
      return;
    }
  }

  [[nodiscard]] bool at_end() const { return pos_ >= src_.size(); }
  [[nodiscard]] char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program program() {
    Program prog;
    while (is_keyword("import")) {
      const auto pos = next().pos;
      Import imp{qualified_name(), pos};
      expect(Tok::Semi, "';' after import");
      prog.imports.push_back(std::move(imp));
    }
    while (!at(Tok::Eof)) {
      reject_unsupported_keyword();
      if (!is_keyword("class")) fail("expected 'class'");
      prog.classes.push_back(class_decl());
    }
    prog.slot_count = next_slot_;
    return prog;
  }

  TypeSyntax standalone_type() {
    auto t = type();
    if (!at(Tok::Eof)) fail("trailing input after type");
    return t;
  }

 private:
  // --- declarations -------------------------------------------------------

  ClassDecl class_decl() {
    ClassDecl cls;
    cls.pos = next().pos;  // 'class'
    cls.name = identifier("class name");
    if (at(Tok::Lt)) cls.generics = generic_params();
    if (is_keyword("extends") || is_keyword("implements")) {
      throw CompileError(ErrorKind::UnsupportedFeature, "class inheritance is not supported",
                         peek().pos);
    }
    expect(Tok::LBrace, "'{' after class header");
    while (!at(Tok::RBrace)) {
      if (at(Tok::Eof)) fail("unexpected end of input in class body");
      member(cls);
    }
    next();
    return cls;
  }

  void member(ClassDecl& cls) {
    reject_unsupported_keyword();
    const SourcePos start = peek().pos;
    std::vector<GenericParam> generics;
    if (at(Tok::Lt)) generics = generic_params();

    if (at(Tok::Ident) && !is_keyword("void") && peek(1).kind == Tok::LParen) {
      cls.methods.push_back(method(std::move(generics), std::nullopt, start));
      return;
    }
    if (generics.empty() && at(Tok::Ident) &&
        (peek(1).kind == Tok::Assign || peek(1).kind == Tok::Semi)) {
      check_not_keyword(peek());
      cls.fields.push_back(field(std::nullopt, start));
      return;
    }
    TypeSyntax t = type_or_void();
    if (at(Tok::Ident) && peek(1).kind == Tok::LParen) {
      cls.methods.push_back(method(std::move(generics), std::move(t), start));
      return;
    }
    if (!generics.empty()) fail("type parameters are only allowed on methods");
    if (t.name == "void") fail("field cannot have type void");
    cls.fields.push_back(field(std::move(t), start));
  }

  FieldDecl field(std::optional<TypeSyntax> t, SourcePos pos) {
    FieldDecl f;
    f.pos = pos;
    f.type = std::move(t);
    f.name = identifier("field name");
    f.slot = new_slot();
    if (at(Tok::Assign)) {
      next();
      f.init = expression();
    }
    expect(Tok::Semi, "';' after field");
    return f;
  }

  MethodDecl method(std::vector<GenericParam> generics, std::optional<TypeSyntax> ret,
                    SourcePos pos) {
    MethodDecl m;
    m.pos = pos;
    m.generics = std::move(generics);
    m.ret = std::move(ret);
    m.name = identifier("method name");
    m.ret_slot = new_slot();
    expect(Tok::LParen, "'('");
    if (!at(Tok::RParen)) {
      do {
        m.params.push_back(param());
      } while (accept(Tok::Comma));
    }
    expect(Tok::RParen, "')'");
    std::set<std::string> seen;
    for (const auto& p : m.params) {
      if (!seen.insert(p.name).second) {
        throw CompileError(ErrorKind::SyntaxError, "duplicate parameter '" + p.name + "'", p.pos);
      }
    }
    m.body = block();
    return m;
  }

  Param param() {
    Param p;
    p.pos = peek().pos;
    if (at(Tok::Ident) && (peek(1).kind == Tok::Comma || peek(1).kind == Tok::RParen)) {
      p.name = identifier("parameter name");
    } else {
      p.type = type();
      p.name = identifier("parameter name");
    }
    p.slot = new_slot();
    return p;
  }

  std::vector<GenericParam> generic_params() {
    expect(Tok::Lt, "'<'");
    std::vector<GenericParam> out;
    do {
      GenericParam g;
      g.pos = peek().pos;
      g.name = identifier("type parameter");
      if (is_keyword("extends")) {
        next();
        g.bound = type();
      }
      out.push_back(std::move(g));
    } while (accept(Tok::Comma));
    expect(Tok::Gt, "'>'");
    return out;
  }

  // --- types --------------------------------------------------------------

  TypeSyntax type_or_void() {
    if (is_keyword("void")) {
      TypeSyntax t;
      t.pos = next().pos;
      t.name = "void";
      return t;
    }
    return type();
  }

  TypeSyntax type() {
    if (at(Tok::Question)) {
      throw CompileError(ErrorKind::UnsupportedFeature, "wildcard types are not supported",
                         peek().pos);
    }
    TypeSyntax t;
    t.pos = peek().pos;
    t.name = qualified_name();
    if (at(Tok::Lt)) {
      next();
      if (accept(Tok::Gt)) {
        t.diamond = true;
        return t;
      }
      do {
        t.args.push_back(type());
      } while (accept(Tok::Comma));
      expect(Tok::Gt, "'>' closing type arguments");
    }
    return t;
  }

  std::string qualified_name() {
    std::string name = identifier("name");
    while (at(Tok::Dot) && peek(1).kind == Tok::Ident) {
      next();
      name += "." + identifier("name");
    }
    return name;
  }

  // Speculative: does a local declaration `Type name` start here?
  bool looks_like_local_decl() {
    if (!at(Tok::Ident)) return false;
    const auto saved = pos_;
    bool ok = false;
    try {
      type();
      ok = at(Tok::Ident) && (peek(1).kind == Tok::Assign || peek(1).kind == Tok::Semi);
    } catch (const CompileError&) {
      ok = false;
    }
    pos_ = saved;
    return ok;
  }

  // --- statements ---------------------------------------------------------

  std::vector<StmtPtr> block() {
    expect(Tok::LBrace, "'{'");
    std::vector<StmtPtr> out;
    while (!at(Tok::RBrace)) {
      if (at(Tok::Eof)) fail("unexpected end of input in block");
      out.push_back(statement());
    }
    next();
    return out;
  }

  StmtPtr statement() {
    reject_unsupported_keyword();
    auto stmt = std::make_unique<Stmt>();
    stmt->pos = peek().pos;
    if (at(Tok::LBrace)) {
      stmt->node = Block{block()};
    } else if (is_keyword("while")) {
      next();
      expect(Tok::LParen, "'(' after while");
      While w;
      w.cond = expression();
      expect(Tok::RParen, "')'");
      if (at(Tok::LBrace)) {
        w.body = block();
      } else {
        w.body.push_back(statement());
      }
      stmt->node = std::move(w);
    } else if (is_keyword("return")) {
      next();
      if (at(Tok::Semi)) fail("return without a value is not supported");
      stmt->node = Return{expression()};
      expect(Tok::Semi, "';' after return");
    } else if (is_keyword("var")) {
      next();
      LocalVar v;
      v.name = identifier("variable name");
      v.slot = new_slot();
      if (accept(Tok::Assign)) v.init = expression();
      expect(Tok::Semi, "';' after declaration");
      stmt->node = std::move(v);
    } else if (looks_like_local_decl()) {
      LocalVar v;
      v.type = type();
      v.name = identifier("variable name");
      v.slot = new_slot();
      if (accept(Tok::Assign)) v.init = expression();
      expect(Tok::Semi, "';' after declaration");
      stmt->node = std::move(v);
    } else {
      auto e = expression();
      expect(Tok::Semi, "';' after expression");
      stmt->node = ExprStmt{std::move(e)};
    }
    return stmt;
  }

  // --- expressions --------------------------------------------------------

  ExprPtr make(SourcePos pos, auto node) {
    auto e = std::make_unique<Expr>();
    e->pos = pos;
    e->node = std::move(node);
    e->slot = new_slot();
    return e;
  }

  ExprPtr expression() { return assignment(); }

  ExprPtr assignment() {
    auto lhs = or_expr();
    if (at(Tok::Assign)) {
      const auto pos = next().pos;
      if (!std::holds_alternative<NameRef>(lhs->node) &&
          !std::holds_alternative<FieldAccess>(lhs->node)) {
        throw CompileError(ErrorKind::SyntaxError, "invalid assignment target", pos);
      }
      auto rhs = assignment();
      const auto start = lhs->pos;
      return make(start, Assign{std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr or_expr() {
    auto lhs = le_expr();
    while (at(Tok::OrOr)) {
      next();
      auto rhs = le_expr();
      const auto start = lhs->pos;
      lhs = make(start, Binary{BinaryOp::Or, std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr le_expr() {
    auto lhs = add_expr();
    if (at(Tok::LessEq)) {
      next();
      auto rhs = add_expr();
      const auto start = lhs->pos;
      lhs = make(start, Binary{BinaryOp::LessEq, std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr add_expr() {
    auto lhs = mul_expr();
    while (at(Tok::Plus)) {
      next();
      auto rhs = mul_expr();
      const auto start = lhs->pos;
      lhs = make(start, Binary{BinaryOp::Plus, std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr mul_expr() {
    auto lhs = postfix();
    while (at(Tok::Star)) {
      next();
      auto rhs = postfix();
      const auto start = lhs->pos;
      lhs = make(start, Binary{BinaryOp::Times, std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr postfix() {
    auto e = primary();
    for (;;) {
      if (at(Tok::Dot)) {
        next();
        const auto name_tok = peek();
        std::string name = identifier("member name");
        if (at(Tok::LParen)) {
          auto args = arguments();
          const auto start = e->pos;
          e = make(start, Call{std::move(e), std::move(name), std::move(args)});
        } else {
          const auto start = e->pos;
          e = make(start, FieldAccess{std::move(e), std::move(name)});
        }
        (void)name_tok;
      } else if (at(Tok::PlusPlus)) {
        const auto pos = next().pos;
        if (!std::holds_alternative<NameRef>(e->node) &&
            !std::holds_alternative<FieldAccess>(e->node)) {
          throw CompileError(ErrorKind::SyntaxError, "'++' needs a variable", pos);
        }
        const auto start = e->pos;
        e = make(start, Increment{std::move(e)});
      } else {
        return e;
      }
    }
  }

  std::vector<ExprPtr> arguments() {
    expect(Tok::LParen, "'('");
    std::vector<ExprPtr> args;
    if (!at(Tok::RParen)) {
      do {
        args.push_back(expression());
      } while (accept(Tok::Comma));
    }
    expect(Tok::RParen, "')'");
    return args;
  }

  bool lambda_ahead() {
    if (at(Tok::Ident) && peek(1).kind == Tok::Arrow) return true;
    if (!at(Tok::LParen)) return false;
    int depth = 0;
    for (std::size_t i = pos_; i < toks_.size(); ++i) {
      if (toks_[i].kind == Tok::LParen) ++depth;
      if (toks_[i].kind == Tok::RParen && --depth == 0) {
        return i + 1 < toks_.size() && toks_[i + 1].kind == Tok::Arrow;
      }
      if (toks_[i].kind == Tok::Eof) return false;
    }
    return false;
  }

  ExprPtr lambda() {
    const auto start = peek().pos;
    Lambda lam;
    if (at(Tok::Ident)) {
      lam.parenthesized = false;
      Param p;
      p.pos = peek().pos;
      p.name = identifier("lambda parameter");
      p.slot = new_slot();
      lam.params.push_back(std::move(p));
    } else {
      expect(Tok::LParen, "'('");
      if (!at(Tok::RParen)) {
        do {
          lam.params.push_back(param());
        } while (accept(Tok::Comma));
      }
      expect(Tok::RParen, "')'");
    }
    expect(Tok::Arrow, "'->'");
    if (at(Tok::LBrace)) {
      lam.body_block = block();
    } else {
      lam.body_expr = expression();
    }
    return make(start, std::move(lam));
  }

  ExprPtr primary() {
    const Token& t = peek();
    const auto pos = t.pos;
    if (lambda_ahead()) return lambda();
    switch (t.kind) {
      case Tok::Int: {
        auto text = next().text;
        return make(pos, IntLit{std::move(text)});
      }
      case Tok::String: {
        auto text = next().text;
        return make(pos, StringLit{std::move(text)});
      }
      case Tok::LParen: {
        next();
        auto e = expression();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident:
        break;
      default:
        fail("expected an expression");
    }
    reject_unsupported_keyword();
    if (is_keyword("true") || is_keyword("false")) {
      const bool v = next().text == "true";
      return make(pos, BoolLit{v});
    }
    if (is_keyword("this")) {
      next();
      return make(pos, This{});
    }
    if (is_keyword("new")) {
      next();
      New n;
      n.type = type();
      n.args = arguments();
      return make(pos, std::move(n));
    }
    check_not_keyword(t);
    std::string name = next().text;
    if (at(Tok::LParen)) {
      auto args = arguments();
      return make(pos, Call{nullptr, std::move(name), std::move(args)});
    }
    return make(pos, NameRef{std::move(name)});
  }

  // --- token helpers ------------------------------------------------------

  [[nodiscard]] const Token& peek(std::size_t ahead = 0) const {
    const auto i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  [[nodiscard]] bool at(Tok k) const { return peek().kind == k; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (!at(k)) return false;
    next();
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what);
  }
  [[nodiscard]] bool is_keyword(std::string_view kw) const {
    return at(Tok::Ident) && peek().text == kw;
  }
  void reject_unsupported_keyword() {
    if (at(Tok::Ident) && kUnsupportedKeywords.count(peek().text)) {
      throw CompileError(ErrorKind::UnsupportedFeature,
                         "'" + peek().text + "' is not supported", peek().pos);
    }
  }
  void check_not_keyword(const Token& t) {
    static const std::set<std::string, std::less<>> reserved = {
        "class", "import", "var", "while", "return", "new", "this", "true", "false", "void",
        "extends"};
    if (reserved.count(t.text)) {
      throw CompileError(ErrorKind::SyntaxError, "unexpected keyword '" + t.text + "'", t.pos);
    }
    if (kUnsupportedKeywords.count(t.text)) {
      throw CompileError(ErrorKind::UnsupportedFeature, "'" + t.text + "' is not supported",
                         t.pos);
    }
  }
  std::string identifier(const char* what) {
    if (!at(Tok::Ident)) fail(std::string("expected ") + what);
    check_not_keyword(peek());
    return next().text;
  }
  [[noreturn]] void fail(const std::string& msg) {
    const Token& t = peek();
    std::string found = t.kind == Tok::Eof ? "end of input" : "'" + t.text + "'";
    throw CompileError(ErrorKind::SyntaxError, msg + ", found " + found, t.pos);
  }

  SlotId new_slot() { return next_slot_++; }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  SlotId next_slot_ = 0;
};

}  // namespace

Program parse(std::string_view source) {
  Parser p(Lexer(source).run());
  return p.program();
}

TypeSyntax parse_type_syntax(std::string_view text) {
  Parser p(Lexer(text).run());
  return p.standalone_type();
}

std::string to_string(const TypeSyntax& type) {
  std::string out = type.name;
  if (type.diamond) return out + "<>";
  if (!type.args.empty()) {
    out += "<";
    for (std::size_t i = 0; i < type.args.size(); ++i) {
      if (i) out += ", ";
      out += to_string(type.args[i]);
    }
    out += ">";
  }
  return out;
}

}  // namespace txinfer
