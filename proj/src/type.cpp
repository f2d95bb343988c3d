#include "txinfer/type.hpp"

#include <algorithm>

namespace txinfer {

Type Type::cls(std::string name, std::vector<Type> args) {
  Type t;
  t.kind = TypeKind::Class;
  t.name = std::move(name);
  t.args = std::move(args);
  return t;
}

Type Type::tph(std::string id) {
  Type t;
  t.kind = TypeKind::Tph;
  t.name = std::move(id);
  return t;
}

Type Type::var(std::string name, int scope) {
  Type t;
  t.kind = TypeKind::Var;
  t.name = std::move(name);
  t.scope = scope;
  return t;
}

Type Type::fun(std::vector<Type> params, Type ret) {
  Type t;
  t.kind = TypeKind::Fun;
  t.args = std::move(params);
  t.args.push_back(std::move(ret));
  return t;
}

Type Type::fun_void(std::vector<Type> params) {
  Type t;
  t.kind = TypeKind::FunVoid;
  t.args = std::move(params);
  return t;
}

Type Type::void_type() { return Type{}; }

std::size_t Type::fun_arity() const {
  if (kind == TypeKind::Fun) return args.size() - 1;
  if (kind == TypeKind::FunVoid) return args.size();
  return 0;
}

std::vector<Type> Type::fun_params() const {
  return {args.begin(), args.begin() + static_cast<std::ptrdiff_t>(fun_arity())};
}

Type Type::fun_return() const {
  if (kind == TypeKind::Fun) return args.back();
  return void_type();
}

std::string Type::fun_head() const {
  if (kind == TypeKind::Fun) return "Fun" + std::to_string(fun_arity()) + "$$";
  if (kind == TypeKind::FunVoid) return "FunVoid" + std::to_string(fun_arity()) + "$$";
  return {};
}

bool Type::is_ground() const {
  if (kind == TypeKind::Tph) return false;
  return std::all_of(args.begin(), args.end(), [](const Type& a) { return a.is_ground(); });
}

bool Type::is_closed() const {
  if (kind == TypeKind::Tph || kind == TypeKind::Var) return false;
  return std::all_of(args.begin(), args.end(), [](const Type& a) { return a.is_closed(); });
}

bool Type::contains_tph(const std::string& id) const {
  if (kind == TypeKind::Tph) return name == id;
  return std::any_of(args.begin(), args.end(),
                     [&](const Type& a) { return a.contains_tph(id); });
}

int Type::depth() const {
  int d = 0;
  for (const auto& a : args) d = std::max(d, a.depth());
  return d + 1;
}

bool operator==(const Type& a, const Type& b) {
  return a.kind == b.kind && a.name == b.name && a.scope == b.scope && a.args == b.args;
}

std::strong_ordering operator<=>(const Type& a, const Type& b) {
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  if (auto c = a.name <=> b.name; c != 0) return c;
  if (auto c = a.scope <=> b.scope; c != 0) return c;
  const auto n = std::min(a.args.size(), b.args.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.args[i] <=> b.args[i]; c != 0) return c;
  }
  return a.args.size() <=> b.args.size();
}

std::string simple_name(const std::string& qualified) {
  const auto dot = qualified.rfind('.');
  return dot == std::string::npos ? qualified : qualified.substr(dot + 1);
}

std::string to_string(const Type& t, Naming naming) {
  auto join = [&](const std::vector<Type>& args) {
    std::string out = "<";
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out += ", ";
      out += to_string(args[i], naming);
    }
    return out + ">";
  };
  switch (t.kind) {
    case TypeKind::Class: {
      std::string out = naming == Naming::Simple ? simple_name(t.name) : t.name;
      if (!t.args.empty()) out += join(t.args);
      return out;
    }
    case TypeKind::Tph:
    case TypeKind::Var:
      return t.name;
    case TypeKind::Fun:
    case TypeKind::FunVoid:
      return t.fun_head() + (t.args.empty() ? std::string() : join(t.args));
    case TypeKind::Void:
      return "void";
  }
  return {};
}

void collect_tphs(const Type& t, std::vector<std::string>& out) {
  if (t.kind == TypeKind::Tph) {
    if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    return;
  }
  for (const auto& a : t.args) collect_tphs(a, out);
}

std::vector<std::string> tphs_of(const Type& t) {
  std::vector<std::string> out;
  collect_tphs(t, out);
  return out;
}

Type substitute(const TphMap& map, const Type& t) {
  if (t.kind == TypeKind::Tph) {
    auto it = map.find(t.name);
    return it == map.end() ? t : it->second;
  }
  if (t.args.empty()) return t;
  Type out = t;
  for (auto& a : out.args) a = substitute(map, a);
  return out;
}

Type map_leaves(const Type& t, const std::function<const Type*(const Type&)>& replace) {
  if (t.kind == TypeKind::Tph || t.kind == TypeKind::Var) {
    const Type* r = replace(t);
    return r ? *r : t;
  }
  if (t.args.empty()) return t;
  Type out = t;
  for (auto& a : out.args) a = map_leaves(a, replace);
  return out;
}

std::string alpha_name(std::size_t index) {
  std::string out;
  std::size_t n = index + 1;
  while (n > 0) {
    --n;
    out.insert(out.begin(), static_cast<char>('A' + n % 26));
    n /= 26;
  }
  return out;
}

}  // namespace txinfer
