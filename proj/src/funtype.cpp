#include "txinfer/funtype.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace txinfer {

namespace {

std::string dotted_to_dollar(std::string s) {
  std::replace(s.begin(), s.end(), '.', '$');
  return s;
}

void collect(const Type& t, std::set<Type>& out) {
  if (t.is_function()) out.insert(t);
  for (const auto& a : t.args) collect(a, out);
}

std::vector<std::string> split_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = text.find(kMangleSep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(text.substr(start));
      return out;
    }
    out.emplace_back(text.substr(start, pos - start));
    start = pos + kMangleSep.size();
  }
}

// `Fun3$$` -> (false, 3), `FunVoid2$$` -> (true, 2).
std::optional<std::pair<bool, std::size_t>> fun_head(std::string_view tok) {
  bool is_void = false;
  if (tok.starts_with("FunVoid")) {
    is_void = true;
    tok.remove_prefix(7);
  } else if (tok.starts_with("Fun")) {
    tok.remove_prefix(3);
  } else {
    return std::nullopt;
  }
  if (!tok.ends_with("$$")) return std::nullopt;
  tok.remove_suffix(2);
  std::size_t n = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), n);
  if (ec != std::errc{} || p != tok.data() + tok.size() || tok.empty()) return std::nullopt;
  return std::make_pair(is_void, n);
}

class Decoder {
 public:
  Decoder(std::vector<std::string> tokens, const ClassTable& table)
      : tokens_(std::move(tokens)), table_(table) {}

  std::optional<Type> run() {
    auto t = parse();
    if (!t || pos_ != tokens_.size()) return std::nullopt;
    return t;
  }

 private:
  std::optional<Type> parse() {
    if (pos_ >= tokens_.size() || tokens_[pos_].empty()) return std::nullopt;
    const std::string tok = tokens_[pos_++];
    if (auto head = fun_head(tok)) {
      const std::size_t count = head->second + (head->first ? 0 : 1);
      auto args = parse_args(count);
      if (!args) return std::nullopt;
      if (head->first) return Type::fun_void(std::move(*args));
      Type ret = args->back();
      args->pop_back();
      return Type::fun(std::move(*args), std::move(ret));
    }
    const ClassEntry* entry = nullptr;
    for (const auto& e : table_.entries()) {
      if (dotted_to_dollar(e.name) == tok) {
        entry = &e;
        break;
      }
    }
    if (!entry) return std::nullopt;
    if (entry->params.empty()) return Type::cls(entry->name);
    auto args = parse_args(entry->params.size());
    if (!args) return std::nullopt;
    return Type::cls(entry->name, std::move(*args));
  }

  // Arguments followed by the closing separator (an empty token).
  std::optional<std::vector<Type>> parse_args(std::size_t count) {
    std::vector<Type> args;
    for (std::size_t i = 0; i < count; ++i) {
      auto a = parse();
      if (!a) return std::nullopt;
      args.push_back(std::move(*a));
    }
    if (count > 0) {
      // The last argument's trailing separator either ends the input or is
      // followed by the next token of an enclosing list.
      if (pos_ < tokens_.size() && tokens_[pos_].empty()) {
        ++pos_;
      } else {
        return std::nullopt;
      }
    }
    return args;
  }

  std::vector<std::string> tokens_;
  const ClassTable& table_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string mangle_type(const Type& t) {
  std::string head;
  switch (t.kind) {
    case TypeKind::Class:
      head = dotted_to_dollar(t.name);
      break;
    case TypeKind::Fun:
    case TypeKind::FunVoid:
      head = t.fun_head();
      break;
    case TypeKind::Tph:
    case TypeKind::Var:
      return t.name;
    case TypeKind::Void:
      return "void";
  }
  if (t.args.empty()) return head;
  std::string out = head;
  for (const auto& a : t.args) {
    out += kMangleSep;
    out += mangle_type(a);
  }
  out += kMangleSep;
  return out;
}

std::string mangle_fun_type(const Type& t) {
  if (!t.is_closed()) return t.fun_head();
  return mangle_type(t);
}

std::optional<Type> decode_mangled(std::string_view text, const ClassTable& table) {
  auto tokens = split_tokens(text);
  // A trailing separator leaves one empty token that closes the outermost list.
  return Decoder(std::move(tokens), table).run();
}

std::set<Type> collect_used_fun_types(const std::vector<Type>& types) {
  std::set<Type> out;
  for (const auto& t : types) collect(t, out);
  return out;
}

std::vector<FunInterfaceDecl> fun_interface_hierarchy(const std::set<Type>& used,
                                                      const ClassTable& table) {
  std::vector<Type> ground;
  for (const auto& t : used) {
    if (t.is_closed()) ground.push_back(t);
  }
  auto strict_sub = [&](const Type& a, const Type& b) {
    return a != b && a.kind == b.kind && a.args.size() == b.args.size() &&
           is_subtype(a, b, table);
  };
  std::vector<FunInterfaceDecl> out;
  for (const auto& t : ground) {
    FunInterfaceDecl d;
    d.name = mangle_fun_type(t);
    d.root = t.fun_head();
    for (const auto& s : ground) {
      if (!strict_sub(t, s)) continue;
      bool between = std::any_of(ground.begin(), ground.end(), [&](const Type& m) {
        return strict_sub(t, m) && strict_sub(m, s);
      });
      if (!between) d.supers.push_back(mangle_fun_type(s));
    }
    d.supers.push_back(d.root);
    out.push_back(std::move(d));
  }
  return out;
}

std::string dump(const std::vector<FunInterfaceDecl>& decls) {
  std::ostringstream os;
  for (const auto& d : decls) {
    os << d.name << " :";
    for (std::size_t i = 0; i < d.supers.size(); ++i) os << (i ? ", " : " ") << d.supers[i];
    os << '\n';
  }
  return os.str();
}

std::string descriptor_of(const Type& t) {
  switch (t.kind) {
    case TypeKind::Void:
      return "V";
    case TypeKind::Class:
      return "L" + dotted_to_dollar(t.name) + ";";
    case TypeKind::Fun:
    case TypeKind::FunVoid:
      return "L" + mangle_fun_type(t) + ";";
    case TypeKind::Tph:
    case TypeKind::Var:
      break;
  }
  return "L" + dotted_to_dollar(std::string(kObject)) + ";";
}

std::string method_descriptor(const std::vector<Type>& params, const Type& ret) {
  std::string out = "(";
  for (const auto& p : params) out += descriptor_of(p);
  out += ")";
  out += descriptor_of(ret);
  return out;
}

}  // namespace txinfer
