#include "txinfer/emitter.hpp"

#include <map>
#include <sstream>

#include "txinfer/frontend.hpp"

namespace txinfer {

namespace {

std::string generics_text(const std::vector<GenericVar>& gs) {
  std::string out;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (i) out += ", ";
    out += gs[i].name;
    if (gs[i].bound && !(gs[i].bound->is_class() && gs[i].bound->name == kObject)) {
      out += " extends " + to_string(*gs[i].bound);
    }
  }
  return out;
}

// Erasure of a header type: placeholders and parameters become their bound.
Type erase(const Type& t, const std::vector<GenericVar>& generics) {
  Type cur = t;
  for (std::size_t guard = 0; (cur.is_tph() || cur.is_var()) && guard <= generics.size(); ++guard) {
    auto it = std::find_if(generics.begin(), generics.end(),
                           [&](const GenericVar& g) { return g.name == cur.name; });
    if (it == generics.end() || !it->bound) return object_type();
    cur = *it->bound;
  }
  if (cur.is_tph() || cur.is_var()) return object_type();
  return cur;
}

std::string header(const std::string& name, const MethodTyping& t) {
  std::string out;
  if (!t.generics.empty()) out += "<" + generics_text(t.generics) + "> ";
  out += to_string(t.ret) + " " + name + "(";
  for (std::size_t i = 0; i < t.params.size(); ++i) {
    if (i) out += ", ";
    out += to_string(t.params[i]);
  }
  return out + ")";
}

// Display names of one class under its representative typing.
class ClassNames {
 public:
  ClassNames(const ClassResult& cr, const ClassDecl& decl)
      : typing_(cr.typings[cr.representative]) {
    // Display names must not clash with written type parameters.
    std::set<std::string> reserved;
    for (const auto& g : decl.generics) reserved.insert(g.name);
    for (const auto& m : decl.methods) {
      for (const auto& g : m.generics) reserved.insert(g.name);
    }
    const auto& ac = cr.annotated;
    std::vector<std::string> order = typing_.family.cls.params;
    for (SlotId id : ac.class_slots) collect_tphs(typing_.resolve(ac.slot(id)), order);
    for (std::size_t j = 0; j < ac.method_decl_slots.size(); ++j) {
      for (const auto& p : typing_.family.methods[j].params) order.push_back(p);
      for (SlotId id : ac.method_decl_slots[j]) collect_tphs(typing_.resolve(ac.slot(id)), order);
    }
    std::size_t next = 0;
    for (const auto& n : order) {
      if (map_.count(n)) continue;
      while (reserved.count(alpha_name(next))) ++next;
      map_[n] = Type::tph(alpha_name(next++));
    }
  }

  [[nodiscard]] Type show(const Type& t) const { return substitute(map_, typing_.resolve(t)); }
  [[nodiscard]] std::string name(const std::string& tph) const {
    auto it = map_.find(tph);
    return it == map_.end() ? tph : it->second.name;
  }

  [[nodiscard]] std::string member_generics(const GenericsMember& m) const {
    std::vector<GenericVar> gs;
    for (const auto& p : m.params) {
      auto bs = m.bounds_of(p);
      gs.push_back({name(p), bs.empty() ? std::nullopt : std::optional<Type>(Type::tph(name(bs.front())))});
    }
    return generics_text(gs);
  }

  [[nodiscard]] const ClassTyping& typing() const { return typing_; }

 private:
  const ClassTyping& typing_;
  TphMap map_;
};

std::string declared_text(const std::vector<GenericParam>& gs) {
  std::string out;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (i) out += ", ";
    out += gs[i].name;
    if (gs[i].bound) out += " extends " + to_string(*gs[i].bound);
  }
  return out;
}

std::string join_generics(std::string a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + ", " + b;
}

}  // namespace

std::string typing_to_string(const MethodTyping& typing) {
  std::string out;
  if (!typing.generics.empty()) out += "<" + generics_text(typing.generics) + "> ";
  if (typing.params.size() == 1) {
    out += to_string(typing.params.front());
  } else {
    out += "(";
    for (std::size_t i = 0; i < typing.params.size(); ++i) {
      if (i) out += ", ";
      out += to_string(typing.params[i]);
    }
    out += ")";
  }
  return out + " -> " + to_string(typing.ret);
}

std::string emit_typed_source(const UnitResult& unit) {
  std::vector<ClassNames> names;
  std::map<SlotId, std::size_t> slot_owner;
  std::map<std::string, std::size_t> by_class;
  for (std::size_t i = 0; i < unit.classes.size(); ++i) {
    names.emplace_back(unit.classes[i], unit.program.classes[unit.classes[i].class_index]);
    by_class[unit.classes[i].name] = i;
    for (const auto& [id, t] : unit.classes[i].annotated.slot_types) slot_owner[id] = i;
  }

  PrintHooks hooks;
  hooks.slot_type = [&](SlotId id) -> std::optional<std::string> {
    auto it = slot_owner.find(id);
    if (it == slot_owner.end()) return std::nullopt;
    const auto& ac = unit.classes[it->second].annotated;
    return to_string(names[it->second].show(ac.slot(id)));
  };
  hooks.class_generics = [&](const ClassDecl& decl) -> std::optional<std::string> {
    const auto i = by_class.at(decl.name);
    return join_generics(declared_text(decl.generics),
                         names[i].member_generics(names[i].typing().family.cls));
  };
  hooks.method_generics = [&](const ClassDecl& decl, std::size_t j) -> std::optional<std::string> {
    const auto i = by_class.at(decl.name);
    return join_generics(declared_text(decl.methods[j].generics),
                         names[i].member_generics(names[i].typing().family.methods[j]));
  };
  hooks.method_comments = [&](const ClassDecl& decl, std::size_t j) {
    std::vector<std::string> lines;
    const auto& sig = unit.classes[by_class.at(decl.name)].signatures[j];
    if (sig.typings.size() < 2) return lines;
    lines.push_back(decl.methods[j].name + " has " + std::to_string(sig.typings.size()) + " types:");
    for (const auto& t : sig.typings) lines.push_back("  " + typing_to_string(t));
    return lines;
  };
  return print_program(unit.program, hooks);
}

std::string emit_signatures(const UnitResult& unit) {
  std::ostringstream os;
  for (const auto& c : unit.classes) {
    for (const auto& sig : c.signatures) {
      os << c.name << '.' << sig.method << " :";
      for (std::size_t i = 0; i < sig.typings.size(); ++i) {
        os << (i ? " & " : " ") << typing_to_string(sig.typings[i]);
      }
      os << '\n';
    }
  }
  return os.str();
}

std::vector<std::string> emit_descriptors(const UnitResult& unit) {
  std::vector<std::string> lines;
  for (const auto& c : unit.classes) {
    std::map<std::string, std::string> seen;  // name + descriptor -> header
    for (const auto& sig : c.signatures) {
      for (const auto& t : sig.typings) {
        std::vector<Type> params;
        for (const auto& p : t.params) params.push_back(erase(p, t.generics));
        const auto desc = method_descriptor(params, erase(t.ret, t.generics));
        const auto head = header(sig.method, t);
        const auto key = sig.method + desc;
        if (auto it = seen.find(key); it != seen.end()) {
          throw CompileError(ErrorKind::DescriptorCollision,
                             c.name + "." + sig.method + ": '" + it->second + "' and '" + head +
                                 "' share descriptor " + desc,
                             unit.program.classes[c.class_index].methods[sig.index].pos);
        }
        seen.emplace(key, head);
        lines.push_back(c.name + "." + sig.method + ": " + head + "; descriptor:" + desc);
      }
    }
  }
  return lines;
}

std::set<Type> used_fun_types(const UnitResult& unit) {
  std::vector<Type> types;
  for (const auto& c : unit.classes) {
    for (const auto& t : c.typings) {
      for (const auto& [id, ty] : c.annotated.slot_types) types.push_back(t.resolve(ty));
    }
    for (const auto& sig : c.signatures) {
      for (const auto& t : sig.typings) {
        for (const auto& p : t.params) types.push_back(p);
        types.push_back(t.ret);
      }
    }
  }
  return collect_used_fun_types(types);
}

std::string emit_funifaces(const UnitResult& unit) {
  return dump(fun_interface_hierarchy(used_fun_types(unit), unit.table));
}

std::string dump_constraints(const UnitResult& unit) {
  std::ostringstream os;
  for (const auto& c : unit.classes) os << "class " << c.name << ":\n" << dump(c.annotated.constraints);
  return os.str();
}

std::string dump_unifiers(const UnitResult& unit, std::size_t max_solutions) {
  std::ostringstream os;
  for (const auto& c : unit.classes) {
    std::vector<Solution> shown(c.unifiers.begin(),
                                c.unifiers.begin() + static_cast<std::ptrdiff_t>(
                                                         std::min(max_solutions, c.unifiers.size())));
    os << "class " << c.name << ":\n" << dump(shown);
  }
  return os.str();
}

std::string dump_generics(const UnitResult& unit) {
  std::ostringstream os;
  for (const auto& c : unit.classes) {
    const auto& decl = unit.program.classes[c.class_index];
    for (std::size_t i = 0; i < c.typings.size(); ++i) {
      const auto& t = c.typings[i];
      os << "typing " << i + 1 << "\n";
      os << "fgg:\n" << dump(t.fgg, decl);
      os << "cfgg:\n" << dump(t.cfgg, decl);
      os << "generics:\n" << dump(t.family, decl);
    }
  }
  return os.str();
}

}  // namespace txinfer
