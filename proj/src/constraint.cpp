#include "txinfer/constraint.hpp"

#include <algorithm>
#include <sstream>

namespace txinfer {

Constraint Constraint::less(Type lhs, Type rhs, SourcePos origin) {
  return {ConstraintKind::LessDot, std::move(lhs), std::move(rhs), origin};
}

Constraint Constraint::eq(Type lhs, Type rhs, SourcePos origin) {
  if (lhs.is_tph() && !rhs.is_tph()) std::swap(lhs, rhs);
  return {ConstraintKind::DotEq, std::move(lhs), std::move(rhs), origin};
}

void normalize(ConstraintSet& cs) {
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
}

std::string to_string(const Constraint& c, Naming naming) {
  return to_string(c.lhs, naming) + (c.kind == ConstraintKind::LessDot ? " < " : " = ") +
         to_string(c.rhs, naming);
}

namespace {

bool contradictory(const Constraint& c, const ClassTable& table) {
  if (!c.lhs.is_closed() || !c.rhs.is_closed()) return false;
  if (c.kind == ConstraintKind::DotEq) return !(c.lhs == c.rhs);
  return !is_subtype(c.lhs, c.rhs, table);
}

bool any_contradiction(const ConstraintSet& cs, const ClassTable& table) {
  return std::any_of(cs.begin(), cs.end(),
                     [&](const Constraint& c) { return contradictory(c, table); });
}

}  // namespace

std::vector<ConstraintSet> flatten_constraints(const OrConstraintSet& ocs, const ClassTable& table,
                                               std::size_t limit) {
  if (any_contradiction(ocs.base, table)) return {};
  std::vector<ConstraintSet> out{ocs.base};
  for (const auto& group : ocs.groups) {
    std::vector<const ConstraintSet*> viable;
    for (const auto& alt : group.alternatives) {
      if (!any_contradiction(alt, table)) viable.push_back(&alt);
    }
    if (!out.empty() && out.size() * viable.size() > limit) {
      throw CompileError(ErrorKind::Untypable,
                         "too many constraint combinations at " + group.label + " (limit " +
                             std::to_string(limit) + ")",
                         group.origin);
    }
    std::vector<ConstraintSet> next;
    next.reserve(out.size() * viable.size());
    for (const auto& partial : out) {
      for (const auto* alt : viable) {
        ConstraintSet cs = partial;
        cs.insert(cs.end(), alt->begin(), alt->end());
        next.push_back(std::move(cs));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::string dump(const OrConstraintSet& ocs) {
  std::ostringstream os;
  ConstraintSet base = ocs.base;
  normalize(base);
  os << "base:\n";
  for (const auto& c : base) os << "  " << to_string(c) << "\n";
  for (const auto& g : ocs.groups) {
    os << "or " << g.label << ":\n";
    for (std::size_t i = 0; i < g.alternatives.size(); ++i) {
      ConstraintSet alt = g.alternatives[i];
      normalize(alt);
      os << "  alternative " << i + 1 << ":\n";
      for (const auto& c : alt) os << "    " << to_string(c) << "\n";
    }
  }
  return os.str();
}

}  // namespace txinfer
