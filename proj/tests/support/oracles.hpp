// Independent reference implementations used to check the library.
#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Pairs = std::set<std::pair<std::string, std::string>>;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string& rel) { return std::string(TXINFER_TEST_DATA) + "/" + rel; }

/// "A < B, C < Object" -> pairs.
inline Pairs parse_pairs(const std::string& text) {
  Pairs out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::stringstream is(item);
    std::string a, lt, b;
    is >> a >> lt >> b;
    if (!a.empty()) out.insert({a, b});
  }
  return out;
}

/// Non-reflexive transitive closure by repeated squaring of the edge set.
inline Pairs closure(const Pairs& rel) {
  std::set<std::string> nodes;
  for (const auto& [a, b] : rel) {
    nodes.insert(a);
    nodes.insert(b);
  }
  std::vector<std::string> v(nodes.begin(), nodes.end());
  const std::size_t n = v.size();
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) idx[v[i]] = i;
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (const auto& [a, b] : rel) m[idx[a]][idx[b]] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (m[i][k] && m[k][j]) m[i][j] = true;
  Pairs out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m[i][j]) out.insert({v[i], v[j]});
  return out;
}

inline bool reaches(const Pairs& star, const std::string& a, const std::string& b) {
  return a == b || star.count({a, b}) > 0;
}

/// Searches one bijection of names (fixing "Object") mapping every set of
/// `a` onto the set of `b` at the same position.
inline std::optional<std::map<std::string, std::string>> match_families(const std::vector<Pairs>& a,
                                                                        const std::vector<Pairs>& b) {
  if (a.size() != b.size()) return std::nullopt;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].size() != b[i].size()) return std::nullopt;
  auto names = [](const std::vector<Pairs>& f) {
    std::vector<std::string> out;
    for (const auto& s : f)
      for (const auto& [x, y] : s)
        for (const auto& n : {x, y})
          if (n != "Object" && std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    return out;
  };
  // Per name: (set index, out degree, in degree) profile.
  auto profile = [](const std::vector<Pairs>& f, const std::string& n) {
    std::vector<std::pair<int, int>> p;
    for (const auto& s : f) {
      int o = 0, i = 0;
      for (const auto& [x, y] : s) {
        o += x == n;
        i += y == n;
      }
      p.emplace_back(o, i);
    }
    return p;
  };
  const auto na = names(a);
  const auto nb = names(b);
  if (na.size() != nb.size()) return std::nullopt;

  std::map<std::string, std::string> fwd;
  std::set<std::string> used;
  auto image = [&](const std::string& n) -> std::optional<std::string> {
    if (n == "Object") return n;
    auto it = fwd.find(n);
    if (it == fwd.end()) return std::nullopt;
    return it->second;
  };
  auto consistent = [&] {
    for (std::size_t i = 0; i < a.size(); ++i)
      for (const auto& [x, y] : a[i]) {
        auto ix = image(x), iy = image(y);
        if (ix && iy && !b[i].count({*ix, *iy})) return false;
      }
    return true;
  };
  std::function<bool(std::size_t)> go = [&](std::size_t k) {
    if (k == na.size()) return true;
    const auto pa = profile(a, na[k]);
    for (const auto& cand : nb) {
      if (used.count(cand) || profile(b, cand) != pa) continue;
      fwd[na[k]] = cand;
      used.insert(cand);
      if (consistent() && go(k + 1)) return true;
      fwd.erase(na[k]);
      used.erase(cand);
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return fwd;
}

inline bool equal_modulo_renaming(const Pairs& a, const Pairs& b) {
  return match_families({a}, {b}).has_value();
}

/// Declared subtyping among the six ground built-ins, written out by hand.
inline const std::vector<std::string>& ground_types() {
  static const std::vector<std::string> g = {"Object", "Number", "Integer", "Double", "String", "Boolean"};
  return g;
}

inline bool ground_subtype(const std::string& a, const std::string& b) {
  static const std::map<std::string, std::string> parent = {
      {"Number", "Object"}, {"Integer", "Number"}, {"Double", "Number"},
      {"String", "Object"}, {"Boolean", "Object"}};
  for (std::string cur = a;;) {
    if (cur == b) return true;
    auto it = parent.find(cur);
    if (it == parent.end()) return false;
    cur = it->second;
  }
}

}  // namespace oracle
