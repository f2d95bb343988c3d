#include "txinfer/class_table.hpp"

#include <json.hpp>
#include <regex>

#include "txinfer/diagnostics.hpp"
#include "txinfer/frontend.hpp"

namespace txinfer {

namespace {

Variance parse_variance(const std::string& s) {
  if (s == "covariant") return Variance::Covariant;
  if (s == "contravariant") return Variance::Contravariant;
  if (s == "invariant") return Variance::Invariant;
  throw CompileError(ErrorKind::Config, "unknown variance '" + s + "' in class table");
}

struct FunHead {
  bool is_void = false;
  std::size_t arity = 0;
};

std::optional<FunHead> parse_fun_head(std::string_view name) {
  static const std::regex re(R"(^Fun(Void)?(\d+)\$\$$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(name.begin(), name.end(), m, re)) return std::nullopt;
  return FunHead{m[1].matched, static_cast<std::size_t>(std::stoul(m[2].str()))};
}

}  // namespace

Type object_type() { return Type::cls(std::string(kObject)); }

Type ClassEntry::self_type() const {
  std::vector<Type> args;
  for (const auto& p : params) args.push_back(Type::var(p, kClassScope));
  return Type::cls(name, std::move(args));
}

void ClassTable::add(ClassEntry entry) {
  const auto simple = simple_name(entry.name);
  by_name_[entry.name] = entries_.size();
  simple_to_qualified_.emplace(simple, entry.name);
  entries_.push_back(std::move(entry));
}

void ClassTable::replace(ClassEntry entry) {
  if (auto it = by_name_.find(entry.name); it != by_name_.end()) {
    entries_[it->second] = std::move(entry);
    return;
  }
  add(std::move(entry));
}

const ClassEntry* ClassTable::find(std::string_view name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) {
    auto s = simple_to_qualified_.find(name);
    if (s == simple_to_qualified_.end()) return nullptr;
    it = by_name_.find(s->second);
  }
  return &entries_[it->second];
}

std::optional<std::string> ClassTable::resolve(std::string_view name) const {
  if (const auto* e = find(name)) return e->name;
  return std::nullopt;
}

bool ClassTable::contains(const Type& t) const {
  switch (t.kind) {
    case TypeKind::Class: {
      const auto* e = find(t.name);
      if (!e || e->name != t.name) return false;
      break;
    }
    case TypeKind::Fun:
      if (!has_fun(t.fun_arity())) return false;
      break;
    case TypeKind::FunVoid:
      if (!has_fun_void(t.fun_arity())) return false;
      break;
    default:
      break;
  }
  for (const auto& a : t.args) {
    if (!contains(a)) return false;
  }
  return true;
}

std::vector<const ClassEntry*> ClassTable::subclasses_of(std::string_view name) const {
  std::vector<const ClassEntry*> out;
  for (const auto& e : entries_) {
    const ClassEntry* cur = &e;
    while (cur) {
      if (cur->name == name) {
        out.push_back(&e);
        break;
      }
      cur = cur->super ? find(cur->super->name) : nullptr;
    }
  }
  return out;
}

std::optional<Type> ClassTable::direct_super(const Type& t) const {
  if (t.kind != TypeKind::Class) return std::nullopt;
  const auto* e = find(t.name);
  if (!e || !e->super) return std::nullopt;
  if (e->params.size() != t.args.size()) {
    throw CompileError(ErrorKind::ArityMismatch,
                       "class " + simple_name(t.name) + " expects " +
                           std::to_string(e->params.size()) + " type arguments");
  }
  std::map<std::string, Type> inst;
  for (std::size_t i = 0; i < e->params.size(); ++i) inst.emplace(e->params[i], t.args[i]);
  return map_leaves(*e->super, [&](const Type& leaf) -> const Type* {
    if (leaf.is_var() && leaf.scope == kClassScope) {
      auto it = inst.find(leaf.name);
      if (it != inst.end()) return &it->second;
    }
    return nullptr;
  });
}

std::optional<Type> ClassTable::as_instance_of(const Type& t, std::string_view name) const {
  std::optional<Type> cur = t;
  while (cur) {
    if (cur->kind == TypeKind::Class && cur->name == name) return cur;
    cur = direct_super(*cur);
  }
  return std::nullopt;
}

ClassTable ClassTable::from_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw CompileError(ErrorKind::Config, std::string("class table is not valid JSON: ") + e.what());
  }
  ClassTable table;
  try {
    // Names first so member signatures can refer to any catalog class.
    for (const auto& c : doc.at("classes")) {
      ClassEntry e;
      e.name = c.at("name").get<std::string>();
      for (const auto& p : c.value("params", nlohmann::json::array())) {
        e.params.push_back(p.at("name").get<std::string>());
        e.variance.push_back(parse_variance(p.value("variance", "invariant")));
      }
      table.add(std::move(e));
    }
    auto conv = [&](const ClassEntry& e, const std::string& text) {
      std::map<std::string, Type> gens;
      for (const auto& p : e.params) gens.emplace(p, Type::var(p, kClassScope));
      return resolve_type(parse_type_syntax(text), table, gens);
    };
    std::size_t i = 0;
    for (const auto& c : doc.at("classes")) {
      ClassEntry& e = table.entries_[i++];
      if (c.contains("super") && !c.at("super").is_null()) {
        e.super = conv(e, c.at("super").get<std::string>());
      }
      for (const auto& ctor : c.value("constructors", nlohmann::json::array())) {
        std::vector<Type> ps;
        for (const auto& p : ctor) ps.push_back(conv(e, p.get<std::string>()));
        e.constructors.push_back(std::move(ps));
      }
      for (const auto& f : c.value("fields", nlohmann::json::array())) {
        e.fields.push_back({f.at("name").get<std::string>(), conv(e, f.at("type").get<std::string>())});
      }
      for (const auto& m : c.value("methods", nlohmann::json::array())) {
        MethodSig sig;
        sig.name = m.at("name").get<std::string>();
        for (const auto& p : m.value("params", nlohmann::json::array())) {
          sig.params.push_back(conv(e, p.get<std::string>()));
        }
        sig.ret = conv(e, m.at("returns").get<std::string>());
        e.methods.push_back(std::move(sig));
      }
    }
    if (doc.contains("function_families")) {
      const auto& ff = doc.at("function_families");
      const int max_arity = ff.value("max_arity", 8);
      table.fun_.max_arity = table.fun_void_.max_arity = max_arity;
      if (ff.contains("Fun")) {
        const auto& f = ff.at("Fun");
        table.fun_.param_variance = parse_variance(f.value("param_variance", "contravariant"));
        table.fun_.return_variance = parse_variance(f.value("return_variance", "covariant"));
        table.fun_.method = f.value("method", "apply");
      }
      if (ff.contains("FunVoid")) {
        const auto& f = ff.at("FunVoid");
        table.fun_void_.param_variance = parse_variance(f.value("param_variance", "contravariant"));
        table.fun_void_.method = f.value("method", "apply");
      }
      for (int n = 0; n <= max_arity; ++n) {
        table.fun_arities_.insert(static_cast<std::size_t>(n));
        table.fun_void_arities_.insert(static_cast<std::size_t>(n));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw CompileError(ErrorKind::Config, std::string("malformed class table: ") + e.what());
  }
  if (!table.find(kObject)) {
    throw CompileError(ErrorKind::Config, "class table must define java.lang.Object");
  }
  return table;
}

const ClassTable& ClassTable::bundled() {
  static const ClassTable table = from_json(bundled_table_json());
  return table;
}

Type resolve_type(const TypeSyntax& syntax, const ClassTable& table,
                  const std::map<std::string, Type>& generics) {
  if (syntax.diamond) {
    throw CompileError(ErrorKind::SyntaxError, "diamond is only allowed after 'new'", syntax.pos);
  }
  if (syntax.name == "void") return Type::void_type();
  std::vector<Type> args;
  for (const auto& a : syntax.args) args.push_back(resolve_type(a, table, generics));
  if (auto it = generics.find(syntax.name); it != generics.end()) {
    if (!args.empty()) {
      throw CompileError(ErrorKind::ArityMismatch,
                         "type parameter " + syntax.name + " takes no arguments", syntax.pos);
    }
    return it->second;
  }
  if (auto head = parse_fun_head(syntax.name)) {
    const std::size_t expected = head->is_void ? head->arity : head->arity + 1;
    if (args.size() != expected) {
      throw CompileError(ErrorKind::ArityMismatch,
                         syntax.name + " expects " + std::to_string(expected) + " type arguments",
                         syntax.pos);
    }
    if (head->is_void) return Type::fun_void(std::move(args));
    Type ret = args.back();
    args.pop_back();
    return Type::fun(std::move(args), std::move(ret));
  }
  const auto* entry = table.find(syntax.name);
  if (!entry) {
    throw CompileError(ErrorKind::UnknownType, "unknown type '" + syntax.name + "'", syntax.pos);
  }
  if (entry->params.size() != args.size()) {
    throw CompileError(ErrorKind::ArityMismatch,
                       "class " + simple_name(entry->name) + " expects " +
                           std::to_string(entry->params.size()) + " type arguments",
                       syntax.pos);
  }
  return Type::cls(entry->name, std::move(args));
}

bool is_subtype(const Type& a, const Type& b, const ClassTable& table, const VarBounds& bounds) {
  if (!a.is_ground() || !b.is_ground()) {
    throw std::logic_error("is_subtype expects types without placeholders");
  }
  if (a == b) return true;
  if (a.is_void() || b.is_void()) return false;
  if (b.is_class() && b.name == kObject) return true;
  if (a.is_var()) {
    auto it = bounds.find({a.scope, a.name});
    const Type bound = it == bounds.end() ? object_type() : it->second;
    return is_subtype(bound, b, table, bounds);
  }
  if (b.is_var()) return false;
  if (a.is_function() || b.is_function()) {
    if (a.kind != b.kind || a.fun_arity() != b.fun_arity()) return false;
    const FunFamily& fam = a.kind == TypeKind::Fun ? table.fun_family() : table.fun_void_family();
    auto check = [&](const Type& x, const Type& y, Variance v) {
      switch (v) {
        case Variance::Covariant: return is_subtype(x, y, table, bounds);
        case Variance::Contravariant: return is_subtype(y, x, table, bounds);
        case Variance::Invariant: return x == y;
      }
      return false;
    };
    for (std::size_t i = 0; i < a.fun_arity(); ++i) {
      if (!check(a.args[i], b.args[i], fam.param_variance)) return false;
    }
    if (a.kind == TypeKind::Fun && !check(a.args.back(), b.args.back(), fam.return_variance)) {
      return false;
    }
    return true;
  }
  const auto* eb = table.find(b.name);
  if (!eb) return false;
  if (eb->params.size() != b.args.size()) {
    throw CompileError(ErrorKind::ArityMismatch, "malformed class type " + to_string(b));
  }
  auto inst = table.as_instance_of(a, b.name);
  if (!inst) return false;
  for (std::size_t i = 0; i < b.args.size(); ++i) {
    const Type& x = inst->args[i];
    const Type& y = b.args[i];
    switch (eb->variance[i]) {
      case Variance::Invariant:
        if (!(x == y)) return false;
        break;
      case Variance::Covariant:
        if (!is_subtype(x, y, table, bounds)) return false;
        break;
      case Variance::Contravariant:
        if (!is_subtype(y, x, table, bounds)) return false;
        break;
    }
  }
  return true;
}

}  // namespace txinfer
