// Randomized and exhaustive property checks, shared by unit tests and the
// acceptance runner. Each returns the list of counterexamples.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "txinfer/emitter.hpp"
#include "txinfer/frontend.hpp"
#include "txinfer/funtype.hpp"
#include "txinfer/unify.hpp"

namespace property {

using Failures = std::vector<std::string>;

// ---- unification against brute force ----------------------------------

struct RandomProblem {
  std::vector<std::string> tphs;
  txinfer::ConstraintSet constraints;
};

inline RandomProblem random_problem(std::mt19937& rng) {
  const auto& ground = oracle::ground_types();
  RandomProblem p;
  const int n_tph = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int i = 0; i < n_tph; ++i) p.tphs.push_back(std::string(1, static_cast<char>('P' + i)));
  const int n_cons = std::uniform_int_distribution<int>(1, 4)(rng);
  auto side = [&]() {
    if (std::uniform_int_distribution<int>(0, 9)(rng) < 6) {
      return txinfer::Type::tph(p.tphs[std::uniform_int_distribution<std::size_t>(0, p.tphs.size() - 1)(rng)]);
    }
    const auto& g = ground[std::uniform_int_distribution<std::size_t>(0, ground.size() - 1)(rng)];
    return txinfer::Type::cls(fixture::qualified(g));
  };
  for (int i = 0; i < n_cons; ++i) {
    auto l = side();
    auto r = side();
    if (std::uniform_int_distribution<int>(0, 9)(rng) < 7) {
      p.constraints.push_back(txinfer::Constraint::less(l, r));
    } else {
      p.constraints.push_back(txinfer::Constraint::eq(l, r));
    }
  }
  return p;
}

inline std::string ground_name(const txinfer::Type& t) { return txinfer::simple_name(t.name); }

using Assignment = std::map<std::string, std::string>;

inline std::string value_of(const txinfer::Type& t, const Assignment& a) {
  return t.is_tph() ? a.at(t.name) : ground_name(t);
}

inline bool satisfies(const txinfer::ConstraintSet& cs, const Assignment& a) {
  for (const auto& c : cs) {
    const auto l = value_of(c.lhs, a);
    const auto r = value_of(c.rhs, a);
    if (c.kind == txinfer::ConstraintKind::DotEq ? l != r : !oracle::ground_subtype(l, r)) return false;
  }
  return true;
}

inline void each_assignment(const std::vector<std::string>& names,
                            const std::function<void(const Assignment&)>& f) {
  const auto& ground = oracle::ground_types();
  std::vector<std::size_t> idx(names.size(), 0);
  for (;;) {
    Assignment a;
    for (std::size_t i = 0; i < names.size(); ++i) a[names[i]] = ground[idx[i]];
    f(a);
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == ground.size()) idx[k++] = 0;
    if (k == idx.size()) return;
  }
}

inline std::string describe(const RandomProblem& p) {
  std::string s;
  for (const auto& c : p.constraints) s += txinfer::to_string(c) + "; ";
  return s;
}

/// Every brute-force solution is an instance of a returned unifier and every
/// instance of a returned unifier solves the problem.
inline Failures unify_against_brute_force(int count, unsigned seed) {
  Failures fails;
  std::mt19937 rng(seed);
  for (int n = 0; n < count; ++n) {
    const auto p = random_problem(rng);
    std::set<Assignment> expected;
    each_assignment(p.tphs, [&](const Assignment& a) {
      if (satisfies(p.constraints, a)) expected.insert(a);
    });

    const auto out = txinfer::unify(p.constraints, fixture::ground_table());
    std::set<Assignment> covered;
    bool unsound = false;
    for (const auto& s : out.solutions) {
      std::vector<std::string> free;
      auto note = [&](const txinfer::Type& t) {
        if (t.is_tph() && std::find(free.begin(), free.end(), t.name) == free.end()) free.push_back(t.name);
      };
      for (const auto& t : p.tphs) note(s.sigma.count(t) ? s.sigma.at(t) : txinfer::Type::tph(t));
      for (const auto& c : s.remaining) {
        note(c.lhs);
        note(c.rhs);
      }
      each_assignment(free, [&](const Assignment& theta) {
        if (!satisfies(s.remaining, theta)) return;
        Assignment a;
        for (const auto& t : p.tphs) {
          a[t] = value_of(s.sigma.count(t) ? s.sigma.at(t) : txinfer::Type::tph(t), theta);
        }
        if (!satisfies(p.constraints, a)) unsound = true;
        covered.insert(a);
      });
    }
    if (unsound) fails.push_back("unsound unifier for " + describe(p));
    for (const auto& a : expected) {
      if (!covered.count(a)) {
        fails.push_back("missed solution for " + describe(p));
        break;
      }
    }
  }
  return fails;
}

// ---- conformance repair ----------------------------------------------------

/// Random families over at most eight placeholders: either one method, or a
/// class and a method whose bounds may point into the class.
inline txinfer::GenericsFamily random_family(std::mt19937& rng) {
  const int n = std::uniform_int_distribution<int>(2, 8)(rng);
  std::vector<std::string> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back("N" + std::to_string(i));
  const bool with_class = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
  const int split = with_class ? std::uniform_int_distribution<int>(1, n - 1)(rng) : 0;
  const double density = std::uniform_real_distribution<double>(0.1, 0.5)(rng);
  std::bernoulli_distribution edge(density);

  txinfer::GenericsFamily f;
  f.methods.resize(1);
  for (int i = 0; i < n; ++i) {
    auto& member = i < split ? f.cls : f.methods[0];
    member.params.push_back(nodes[i]);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || !edge(rng)) continue;
      if (i < split && j >= split) continue;  // class bounds stay in the class
      auto& member = i < split ? f.cls : f.methods[0];
      member.bounds.insert({nodes[i], nodes[j]});
    }
  }
  return f;
}

inline Failures conformance_lemma(int count, unsigned seed) {
  Failures fails;
  std::mt19937 rng(seed);
  for (int n = 0; n < count; ++n) {
    const auto before = random_family(rng);
    txinfer::FreshNames fresh(1000);
    const auto res = txinfer::enforce_java_conformance(before, fresh);
    auto h = [&](const std::string& x) {
      auto it = res.h.find(x);
      return it == res.h.end() ? x : it->second;
    };

    oracle::Pairs pre;
    for (const auto& m : fixture::family_pairs(before))
      for (const auto& e : m)
        if (e.second != "Object") pre.insert(e);
    oracle::Pairs post;
    for (const auto& m : fixture::family_pairs(res.family))
      for (const auto& e : m)
        if (e.second != "Object") post.insert(e);
    const auto pre_star = oracle::closure(pre);
    const auto post_star = oracle::closure(post);
    for (const auto& [a, b] : pre_star) {
      if (!oracle::reaches(post_star, h(a), h(b))) {
        fails.push_back("order not preserved: " + a + " < " + b);
        break;
      }
    }

    std::vector<const txinfer::GenericsMember*> members{&res.family.cls, &res.family.methods[0]};
    for (const auto* m : members) {
      oracle::Pairs own;
      for (const auto& e : fixture::to_pairs(*m))
        if (e.second != "Object") own.insert(e);
      const auto star = oracle::closure(own);
      for (const auto& [a, b] : star) {
        if (a == b || star.count({b, a})) {
          fails.push_back("cycle through " + a + " and " + b);
          break;
        }
      }
      for (const auto& p : m->params) {
        std::vector<std::string> ups;
        for (const auto& [a, b] : star)
          if (a == p) ups.push_back(b);
        for (const auto& x : ups)
          for (const auto& y : ups)
            if (x != y && !oracle::reaches(star, x, y) && !oracle::reaches(star, y, x)) {
              fails.push_back(p + " has incomparable bounds " + x + " and " + y);
              goto next_member;
            }
      }
    next_member:;
    }
  }
  return fails;
}

// ---- mangling --------------------------------------------------------------

inline std::vector<txinfer::Type> all_small_fun_types() {
  std::vector<txinfer::Type> g;
  for (const auto& n : oracle::ground_types()) g.push_back(txinfer::Type::cls(fixture::qualified(n)));
  std::vector<txinfer::Type> out;
  for (const auto& a : g) {
    out.push_back(txinfer::Type::fun_void({a}));
    for (const auto& r : g) {
      out.push_back(txinfer::Type::fun({a}, r));
      out.push_back(txinfer::Type::fun_void({a, r}));
      for (const auto& r2 : g) out.push_back(txinfer::Type::fun({a, r}, r2));
    }
  }
  return out;
}

inline Failures mangling_injective_and_decodable() {
  Failures fails;
  std::map<std::string, txinfer::Type> seen;
  for (const auto& t : all_small_fun_types()) {
    const auto name = txinfer::mangle_fun_type(t);
    for (char c : name) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '$' || c == '_')) {
        fails.push_back("illegal character in " + name);
        break;
      }
    }
    if (auto [it, fresh] = seen.emplace(name, t); !fresh) {
      fails.push_back("collision: " + name);
    }
    const auto back = txinfer::decode_mangled(name, fixture::ground_table());
    if (!back || *back != t) fails.push_back("decode mismatch: " + name);
  }
  return fails;
}

// ---- re-check of emitted programs -----------------------------------------

/// Emitted programs infer again without open constraints, and each method's
/// single typing is one of the original typings.
inline Failures recheck(const std::string& file) {
  Failures fails;
  const auto first = fixture::infer_file(file);
  const auto typed = txinfer::emit_typed_source(first);
  txinfer::UnitResult again;
  try {
    again = txinfer::infer_source(typed);
  } catch (const std::exception& e) {
    fails.push_back(file + ": emitted program rejected: " + e.what());
    return fails;
  }
  for (std::size_t c = 0; c < again.classes.size(); ++c) {
    const auto& cr = again.classes[c];
    if (cr.unifiers.empty()) fails.push_back(file + ": " + cr.name + " has no unifier");
    for (const auto& u : cr.unifiers) {
      if (!u.remaining.empty()) fails.push_back(file + ": " + cr.name + " leaves open constraints");
    }
    const auto& orig = first.of(cr.name);
    for (std::size_t j = 0; j < cr.signatures.size(); ++j) {
      const auto& now = cr.signatures[j].typings;
      const auto& was = orig.signatures[j].typings;
      if (now.size() != 1 || std::find(was.begin(), was.end(), now.front()) == was.end()) {
        fails.push_back(file + ": " + cr.name + "." + cr.signatures[j].method + " changed its type");
      }
    }
  }
  return fails;
}

inline const std::vector<std::string>& golden_inputs() {
  static const std::vector<std::string> files = {"Fac.jtx",   "TPHsToGenerics.jtx", "Mutual.jtx",
                                                 "Cycle.jtx", "Infimum.jtx",        "OL.jtx",
                                                 "OLFun.jtx"};
  return files;
}

}  // namespace property
