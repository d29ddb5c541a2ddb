#pragma once

// The metastack: finite stand-ins for the nested hierarchy of sets,
// functions and binary relations across metalevels 1..4, together with the
// three fundamental generic relations (subset, restriction, abridgment),
// specialization to the next lower level, and the functoriality check for
// the inclusion of one level into the next.

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "iffkit/sexpr.hpp"

namespace iffkit::metastack {

class LevelMismatch : public std::runtime_error {
public:
  explicit LevelMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

class ImageEscapesTarget : public std::runtime_error {
public:
  explicit ImageEscapesTarget(const std::string& msg)
      : std::runtime_error(msg) {}
};

struct LeveledSet {
  int level = 1;  // 1..4; the object level holds no metastack data
  std::string id;
  std::set<std::string> elements;
};

struct LeveledFunction {
  int level = 1;
  std::string id;
  LeveledSet source, target;
  std::map<std::string, std::string> map;  // total on source
};

struct LeveledRelation {
  int level = 1;
  std::string id;
  LeveledSet left, right;
  std::set<std::pair<std::string, std::string>> extent;
};

// A partial function carries an explicit definition domain; conversions
// total-ize by domain restriction.
struct LeveledPartialFunction {
  int level = 1;
  std::string id;
  LeveledSet source, target;
  std::set<std::string> defined;  // subset of source
  std::map<std::string, std::string> map;  // total on `defined`
};

inline void validate(const LeveledSet& s) {
  if (s.level < 1 || s.level > 4)
    throw LevelMismatch("set level out of range");
}

inline void validate(const LeveledFunction& f) {
  validate(f.source);
  validate(f.target);
  if (f.source.level != f.level || f.target.level != f.level)
    throw LevelMismatch("function carriers live at a different level");
  for (const auto& x : f.source.elements) {
    auto it = f.map.find(x);
    if (it == f.map.end())
      throw std::invalid_argument("function undefined at '" + x + "'");
    if (!f.target.elements.count(it->second))
      throw ImageEscapesTarget("image of '" + x + "' escapes the target");
  }
  if (f.map.size() != f.source.elements.size())
    throw std::invalid_argument("function defined off its source");
}

inline void validate(const LeveledRelation& r) {
  validate(r.left);
  validate(r.right);
  if (r.left.level != r.level || r.right.level != r.level)
    throw LevelMismatch("relation carriers live at a different level");
  for (const auto& [a, b] : r.extent)
    if (!r.left.elements.count(a) || !r.right.elements.count(b))
      throw std::invalid_argument("extent pair outside the carriers");
}

// ---------------------------------------------------------------------------
// The three fundamental generic relations

namespace detail {
inline void require_adjacent(int lower, int upper, const char* what) {
  if (upper != lower + 1)
    throw LevelMismatch(std::string(what) +
                        ": levels must be adjacent (k, k+1)");
}
inline bool subset(const std::set<std::string>& a,
                   const std::set<std::string>& b) {
  for (const auto& x : a)
    if (!b.count(x)) return false;
  return true;
}
}  // namespace detail

inline bool is_subobject(const LeveledSet& lower, const LeveledSet& upper) {
  detail::require_adjacent(lower.level, upper.level, "subset");
  return detail::subset(lower.elements, upper.elements);
}

// The inclusion square commutes: sources and targets are included and the
// lower function agrees with the upper one pointwise.
inline bool is_restriction(const LeveledFunction& lower,
                           const LeveledFunction& upper) {
  detail::require_adjacent(lower.level, upper.level, "restriction");
  if (!detail::subset(lower.source.elements, upper.source.elements) ||
      !detail::subset(lower.target.elements, upper.target.elements))
    return false;
  for (const auto& x : lower.source.elements)
    if (lower.map.at(x) != upper.map.at(x)) return false;
  return true;
}

// Multipullback condition: the lower extent is exactly the upper extent
// intersected with the lower product.
inline bool is_abridgment(const LeveledRelation& lower,
                          const LeveledRelation& upper) {
  detail::require_adjacent(lower.level, upper.level, "abridgment");
  if (!detail::subset(lower.left.elements, upper.left.elements) ||
      !detail::subset(lower.right.elements, upper.right.elements))
    return false;
  for (const auto& p : lower.extent)
    if (!upper.extent.count(p)) return false;
  for (const auto& [a, b] : upper.extent)
    if (lower.left.elements.count(a) && lower.right.elements.count(b) &&
        !lower.extent.count({a, b}))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Specialization: restrict level-(k+1) data to chosen subsets, producing
// level-k data for which the corresponding fundamental relation holds by
// construction.

inline LeveledSet specialize(const LeveledSet& upper,
                             const std::set<std::string>& chosen) {
  if (upper.level < 2)
    throw LevelMismatch("cannot specialize below level 1");
  if (!detail::subset(chosen, upper.elements))
    throw std::invalid_argument("chosen elements are not a subset");
  return {upper.level - 1, upper.id, chosen};
}

inline LeveledFunction specialize(const LeveledFunction& upper,
                                  const std::set<std::string>& chosen_source,
                                  const std::set<std::string>& chosen_target) {
  if (upper.level < 2)
    throw LevelMismatch("cannot specialize below level 1");
  if (!detail::subset(chosen_source, upper.source.elements) ||
      !detail::subset(chosen_target, upper.target.elements))
    throw std::invalid_argument("chosen carriers are not subsets");
  LeveledFunction out;
  out.level = upper.level - 1;
  out.id = upper.id;
  out.source = {out.level, upper.source.id, chosen_source};
  out.target = {out.level, upper.target.id, chosen_target};
  for (const auto& x : chosen_source) {
    const auto& y = upper.map.at(x);
    if (!chosen_target.count(y))
      throw ImageEscapesTarget("image of '" + x +
                               "' lies outside the chosen target");
    out.map[x] = y;
  }
  return out;
}

inline LeveledRelation specialize(const LeveledRelation& upper,
                                  const std::set<std::string>& chosen_left,
                                  const std::set<std::string>& chosen_right) {
  if (upper.level < 2)
    throw LevelMismatch("cannot specialize below level 1");
  if (!detail::subset(chosen_left, upper.left.elements) ||
      !detail::subset(chosen_right, upper.right.elements))
    throw std::invalid_argument("chosen carriers are not subsets");
  LeveledRelation out;
  out.level = upper.level - 1;
  out.id = upper.id;
  out.left = {out.level, upper.left.id, chosen_left};
  out.right = {out.level, upper.right.id, chosen_right};
  for (const auto& [a, b] : upper.extent)
    if (chosen_left.count(a) && chosen_right.count(b))
      out.extent.insert({a, b});
  return out;
}

// ---------------------------------------------------------------------------
// Composition and inclusion functoriality

inline LeveledFunction compose(const LeveledFunction& f,
                               const LeveledFunction& g) {
  if (f.level != g.level)
    throw LevelMismatch("composing functions at different levels");
  if (f.target.elements != g.source.elements)
    throw std::invalid_argument("functions are not composable");
  LeveledFunction out;
  out.level = f.level;
  out.id = g.id + "*" + f.id;
  out.source = f.source;
  out.target = g.target;
  for (const auto& x : f.source.elements) out.map[x] = g.map.at(f.map.at(x));
  return out;
}

inline LeveledFunction identity_function(const LeveledSet& s) {
  LeveledFunction out;
  out.level = s.level;
  out.id = "1_" + s.id;
  out.source = s;
  out.target = s;
  for (const auto& x : s.elements) out.map[x] = x;
  return out;
}

struct ComposablePair {
  LeveledFunction lower_f, lower_g;  // level k, tgt(lower_f) = src(lower_g)
  LeveledFunction upper_f, upper_g;  // level k+1 counterparts
};

// Inclusions preserve composition and identities: the level-k composite of
// a composable pair is a restriction of the level-(k+1) composite, and
// identities on included carriers restrict to identities.
inline bool verify_inclusion_functoriality(
    const std::vector<ComposablePair>& pairs) {
  for (const auto& p : pairs) {
    detail::require_adjacent(p.lower_f.level, p.upper_f.level,
                             "inclusion functoriality");
    if (!is_restriction(p.lower_f, p.upper_f) ||
        !is_restriction(p.lower_g, p.upper_g))
      return false;
    if (!is_restriction(compose(p.lower_f, p.lower_g),
                        compose(p.upper_f, p.upper_g)))
      return false;
    if (!is_restriction(identity_function(p.lower_f.source),
                        identity_function(p.upper_f.source)))
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Partial-function conversions

inline LeveledFunction to_function(const LeveledPartialFunction& p) {
  LeveledFunction out;
  out.level = p.level;
  out.id = p.id;
  out.source = {p.level, p.source.id, p.defined};
  out.target = p.target;
  for (const auto& x : p.defined) out.map[x] = p.map.at(x);
  return out;
}

inline LeveledRelation to_relation(const LeveledPartialFunction& p) {
  LeveledRelation out;
  out.level = p.level;
  out.id = p.id;
  out.left = p.source;
  out.right = p.target;
  for (const auto& x : p.defined) out.extent.insert({x, p.map.at(x)});
  return out;
}

// ---------------------------------------------------------------------------
// The generic-kernel correspondence: symbols of the kernel picture mapped
// to their vocabulary names. Thirty terms in all.

inline const std::vector<std::pair<std::string, std::string>>&
ur_kernel_terms() {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"thing", "thing"},
      {"Obj", "object"},
      {"Mor", "morphism"},
      {"MorxMor", "morphism-morphism"},
      {"Rel", "relation"},
      {"Sub", "subordinate"},
      {"d0", "source"},
      {"d1", "target"},
      {"rho", "mor2rel"},
      {"mu0", "morphism0"},
      {"mu1", "morphism1"},
      {"o", "composition"},
      {"1", "identity"},
      {"o0", "object0"},
      {"o1", "object1"},
      {"eps", "extent"},
      {"pi0", "projection0"},
      {"pi1", "projection1"},
      {"lambda", "lesser"},
      {"gamma", "greater"},
      {"iota", "inclusion"},
      {"delta", "reflex"},
      {"<=", "subobject"},
      {"bot", "disjoint"},
      {"~=", "isomorphic"},
      {"restr", "restriction"},
      {"abr", "abridgment"},
      {"Mono", "monomorphism"},
      {"Epi", "epimorphism"},
      {"Iso", "isomorphism"},
  };
  return table;
}

// ---------------------------------------------------------------------------
// Corpus serialization:
//   (set <level> <id> (<elem>...))
//   (function <level> <id> <src> <tgt> ((x y)...))
//   (relation <level> <id> <left> <right> ((x y)...))
// Function/relation forms name their carrier sets; a store of named sets
// resolves them.

struct DataStore {
  std::map<std::string, LeveledSet> sets;
  std::map<std::string, LeveledFunction> functions;
  std::map<std::string, LeveledRelation> relations;
};

namespace detail {

inline int parse_level(const sexpr::Node& n) {
  const std::string& t = n.atom();
  if (t.size() != 1 || t[0] < '1' || t[0] > '4')
    throw sexpr::ParseError(sexpr::ParseErrorKind::Syntax, n.span,
                            "expected a metalevel 1..4");
  return t[0] - '0';
}

inline std::set<std::pair<std::string, std::string>> parse_pairs(
    const sexpr::Node& n) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& item : n.list().items) {
    const auto& pair = item.list().items;
    if (pair.size() != 2)
      throw sexpr::ParseError(sexpr::ParseErrorKind::Syntax, item.span,
                              "expected a pair (x y)");
    out.insert({pair[0].atom(), pair[1].atom()});
  }
  return out;
}

}  // namespace detail

inline void load_data(DataStore& store, const sexpr::Node& n) {
  const auto& items = n.list().items;
  const std::string& tag = items.at(0).atom();
  if (tag == "set") {
    LeveledSet s;
    s.level = detail::parse_level(items.at(1));
    s.id = items.at(2).atom();
    for (const auto& e : items.at(3).list().items) s.elements.insert(e.atom());
    validate(s);
    store.sets[s.id] = s;
  } else if (tag == "function") {
    LeveledFunction f;
    f.level = detail::parse_level(items.at(1));
    f.id = items.at(2).atom();
    f.source = store.sets.at(items.at(3).atom());
    f.target = store.sets.at(items.at(4).atom());
    for (const auto& [x, y] : detail::parse_pairs(items.at(5))) f.map[x] = y;
    validate(f);
    store.functions[f.id] = f;
  } else if (tag == "relation") {
    LeveledRelation r;
    r.level = detail::parse_level(items.at(1));
    r.id = items.at(2).atom();
    r.left = store.sets.at(items.at(3).atom());
    r.right = store.sets.at(items.at(4).atom());
    r.extent = detail::parse_pairs(items.at(5));
    validate(r);
    store.relations[r.id] = r;
  } else {
    throw sexpr::ParseError(sexpr::ParseErrorKind::UnknownHead,
                            items.at(0).span,
                            "expected set, function or relation");
  }
}

inline DataStore load_data_text(const std::string& text,
                                const std::string& file = "<input>") {
  DataStore store;
  for (const auto& n : sexpr::read_all(text, file)) load_data(store, n);
  return store;
}

inline std::string print_data(const LeveledSet& s) {
  std::ostringstream os;
  os << "(set " << s.level << ' ' << s.id << " (";
  bool first = true;
  for (const auto& e : s.elements) {
    if (!first) os << ' ';
    os << e;
    first = false;
  }
  os << "))";
  return os.str();
}

inline std::string print_data(const LeveledFunction& f) {
  std::ostringstream os;
  os << "(function " << f.level << ' ' << f.id << ' ' << f.source.id << ' '
     << f.target.id << " (";
  bool first = true;
  for (const auto& [x, y] : f.map) {
    if (!first) os << ' ';
    os << '(' << x << ' ' << y << ')';
    first = false;
  }
  os << "))";
  return os.str();
}

inline std::string print_data(const LeveledRelation& r) {
  std::ostringstream os;
  os << "(relation " << r.level << ' ' << r.id << ' ' << r.left.id << ' '
     << r.right.id << " (";
  bool first = true;
  for (const auto& [x, y] : r.extent) {
    if (!first) os << ' ';
    os << '(' << x << ' ' << y << ')';
    first = false;
  }
  os << "))";
  return os.str();
}

}  // namespace iffkit::metastack
