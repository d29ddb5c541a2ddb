#pragma once

// Finite presented categories, functors and natural transformations, with
// exhaustive law checking and brute-force morphism classification.
//
// A FinCategory carries an explicit composition table. The table is total
// on composable pairs for an ordinary category; depth-bounded fragments may
// list out-of-bound composable pairs in `boundary`, and those pairs are
// exempt from the law checks.

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "iffkit/finset.hpp"

namespace iffkit::cat {

struct FinGraph {
  std::vector<std::string> nodes;
  std::vector<std::string> edges;
  std::map<std::string, std::string> src, tgt;
};

inline void validate(const FinGraph& g) {
  std::set<std::string> nodes(g.nodes.begin(), g.nodes.end());
  for (const auto& e : g.edges)
    if (!nodes.count(g.src.at(e)) || !nodes.count(g.tgt.at(e)))
      throw std::invalid_argument("edge '" + e + "' has loose ends");
}

struct FinCategory {
  std::vector<std::string> objects;
  std::vector<std::string> morphisms;
  std::map<std::string, std::string> src, tgt;
  std::map<std::pair<std::string, std::string>, std::string> comp;  // {g,f}→g∘f
  std::map<std::string, std::string> id;  // object → identity morphism
  std::set<std::pair<std::string, std::string>> boundary;

  bool composable(const std::string& g, const std::string& f) const {
    return src.at(g) == tgt.at(f);
  }
};

class UnknownMorphism : public std::runtime_error {
public:
  explicit UnknownMorphism(const std::string& m)
      : std::runtime_error("unknown morphism '" + m + "'") {}
};

struct LawViolation {
  std::string kind;    // "structure", "identity", "associativity"
  std::string detail;
};

struct LawReport {
  std::vector<LawViolation> violations;
  bool lawful() const { return violations.empty(); }
};

inline LawReport check_category_laws(const FinCategory& c) {
  LawReport report;
  auto bad = [&](const std::string& kind, const std::string& detail) {
    report.violations.push_back({kind, detail});
  };
  std::set<std::string> objects(c.objects.begin(), c.objects.end());
  std::set<std::string> morphisms(c.morphisms.begin(), c.morphisms.end());

  for (const auto& m : c.morphisms) {
    auto s = c.src.find(m), t = c.tgt.find(m);
    if (s == c.src.end() || t == c.tgt.end() || !objects.count(s->second) ||
        !objects.count(t->second))
      bad("structure", "morphism '" + m + "' has loose endpoints");
  }
  for (const auto& o : c.objects) {
    auto it = c.id.find(o);
    if (it == c.id.end() || !morphisms.count(it->second) ||
        c.src.at(it->second) != o || c.tgt.at(it->second) != o) {
      bad("structure", "object '" + o + "' lacks an identity");
      continue;
    }
  }
  if (!report.violations.empty()) return report;  // endpoints unreliable

  // Composition: defined exactly on non-boundary composable pairs, with the
  // right endpoints.
  for (const auto& g : c.morphisms)
    for (const auto& f : c.morphisms) {
      if (!c.composable(g, f)) continue;
      auto key = std::make_pair(g, f);
      auto it = c.comp.find(key);
      if (c.boundary.count(key)) {
        continue;
      }
      if (it == c.comp.end()) {
        bad("structure", "composite of '" + g + "' after '" + f +
                             "' is missing");
        continue;
      }
      const auto& gf = it->second;
      if (!morphisms.count(gf) || c.src.at(gf) != c.src.at(f) ||
          c.tgt.at(gf) != c.tgt.at(g))
        bad("structure", "composite '" + gf + "' has wrong endpoints");
    }

  auto lookup = [&](const std::string& g,
                    const std::string& f) -> const std::string* {
    auto it = c.comp.find({g, f});
    return it == c.comp.end() ? nullptr : &it->second;
  };

  // Identity laws.
  for (const auto& f : c.morphisms) {
    const auto* left = lookup(c.id.at(c.tgt.at(f)), f);
    const auto* right = lookup(f, c.id.at(c.src.at(f)));
    if (!left || *left != f)
      bad("identity", "id∘" + f + " != " + f);
    if (!right || *right != f)
      bad("identity", f + "∘id != " + f);
  }

  // Associativity on triples whose intermediate composites are materialized.
  std::map<std::string, std::vector<std::string>> firsts;  // g → pairs (g,f)
  for (const auto& [key, gf] : c.comp) firsts[key.first].push_back(key.second);
  for (const auto& [key, gf] : c.comp) {
    const auto& [h, g] = key;
    auto it = firsts.find(g);
    if (it == firsts.end()) continue;
    for (const auto& f : it->second) {
      const auto* gfc = lookup(g, f);
      if (!gfc) continue;
      const auto* lhs = lookup(h, *gfc);   // h∘(g∘f)
      const auto* rhs = lookup(gf, f);     // (h∘g)∘f
      if (!lhs || !rhs) continue;  // out of bound
      if (*lhs != *rhs)
        bad("associativity",
            h + "∘(" + g + "∘" + f + ") = " + *lhs + " but (" + h + "∘" + g +
                ")∘" + f + " = " + *rhs);
    }
  }
  return report;
}

struct MorphismTraits {
  bool mono = false, epi = false, iso = false;
};

inline MorphismTraits classify_morphism(const FinCategory& c,
                                        const std::string& m) {
  if (c.src.find(m) == c.src.end()) throw UnknownMorphism(m);
  MorphismTraits out;
  const auto& a = c.src.at(m);
  const auto& b = c.tgt.at(m);

  out.mono = true;
  for (const auto& f : c.morphisms) {
    if (c.tgt.at(f) != a) continue;
    for (const auto& g : c.morphisms) {
      if (c.tgt.at(g) != a || c.src.at(g) != c.src.at(f)) continue;
      if (c.comp.at({m, f}) == c.comp.at({m, g}) && f != g) out.mono = false;
    }
  }
  out.epi = true;
  for (const auto& f : c.morphisms) {
    if (c.src.at(f) != b) continue;
    for (const auto& g : c.morphisms) {
      if (c.src.at(g) != b || c.tgt.at(g) != c.tgt.at(f)) continue;
      if (c.comp.at({f, m}) == c.comp.at({g, m}) && f != g) out.epi = false;
    }
  }
  for (const auto& g : c.morphisms) {
    if (c.src.at(g) != b || c.tgt.at(g) != a) continue;
    if (c.comp.at({g, m}) == c.id.at(a) && c.comp.at({m, g}) == c.id.at(b)) {
      out.iso = true;
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Functors and natural transformations

struct FinFunctor {
  FinCategory source, target;
  std::map<std::string, std::string> on_objects;
  std::map<std::string, std::string> on_morphisms;
};

inline LawReport check_functor(const FinFunctor& F) {
  LawReport report;
  auto bad = [&](const std::string& kind, const std::string& detail) {
    report.violations.push_back({kind, detail});
  };
  std::set<std::string> tobjs(F.target.objects.begin(),
                              F.target.objects.end());
  std::set<std::string> tmors(F.target.morphisms.begin(),
                              F.target.morphisms.end());
  for (const auto& o : F.source.objects) {
    auto it = F.on_objects.find(o);
    if (it == F.on_objects.end() || !tobjs.count(it->second))
      bad("structure", "object '" + o + "' has no image");
  }
  for (const auto& m : F.source.morphisms) {
    auto it = F.on_morphisms.find(m);
    if (it == F.on_morphisms.end() || !tmors.count(it->second)) {
      bad("structure", "morphism '" + m + "' has no image");
      continue;
    }
    const auto& fm = it->second;
    if (F.target.src.at(fm) != F.on_objects.at(F.source.src.at(m)) ||
        F.target.tgt.at(fm) != F.on_objects.at(F.source.tgt.at(m)))
      bad("structure", "image of '" + m + "' has wrong endpoints");
  }
  if (!report.violations.empty()) return report;
  for (const auto& o : F.source.objects)
    if (F.on_morphisms.at(F.source.id.at(o)) !=
        F.target.id.at(F.on_objects.at(o)))
      bad("identity", "identity of '" + o + "' not preserved");
  for (const auto& [key, gf] : F.source.comp) {
    const auto& [g, f] = key;
    auto it = F.target.comp.find(
        {F.on_morphisms.at(g), F.on_morphisms.at(f)});
    if (it == F.target.comp.end()) continue;  // out of bound in the target
    if (it->second != F.on_morphisms.at(gf))
      bad("composition", "composite of ('" + g + "','" + f +
                             "') not preserved");
  }
  return report;
}

inline FinFunctor identity_functor(const FinCategory& c) {
  FinFunctor F{c, c, {}, {}};
  for (const auto& o : c.objects) F.on_objects[o] = o;
  for (const auto& m : c.morphisms) F.on_morphisms[m] = m;
  return F;
}

inline FinFunctor compose_functors(const FinFunctor& G, const FinFunctor& F) {
  FinFunctor out{F.source, G.target, {}, {}};
  for (const auto& [o, fo] : F.on_objects)
    out.on_objects[o] = G.on_objects.at(fo);
  for (const auto& [m, fm] : F.on_morphisms)
    out.on_morphisms[m] = G.on_morphisms.at(fm);
  return out;
}

class ComponentMissing : public std::runtime_error {
public:
  explicit ComponentMissing(const std::string& o)
      : std::runtime_error("missing component at object '" + o + "'") {}
};

struct FinNatTrans {
  FinFunctor source_functor, target_functor;  // shared source/target cats
  std::map<std::string, std::string> components;  // object → target morphism
};

inline bool check_naturality(const FinNatTrans& n) {
  const FinCategory& C = n.source_functor.source;
  const FinCategory& D = n.source_functor.target;
  for (const auto& o : C.objects) {
    auto it = n.components.find(o);
    if (it == n.components.end()) throw ComponentMissing(o);
    const auto& comp = it->second;
    if (D.src.at(comp) != n.source_functor.on_objects.at(o) ||
        D.tgt.at(comp) != n.target_functor.on_objects.at(o))
      return false;
  }
  for (const auto& m : C.morphisms) {
    const auto& a = C.src.at(m);
    const auto& b = C.tgt.at(m);
    const auto& lhs = D.comp.at(
        {n.components.at(b), n.source_functor.on_morphisms.at(m)});
    const auto& rhs = D.comp.at(
        {n.target_functor.on_morphisms.at(m), n.components.at(a)});
    if (lhs != rhs) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// The category generated by finite sets and maps, closed under composition.
// Maps are identified extensionally; generated composites get canonical
// names in discovery order.

struct SetCategory {
  FinCategory cat;
  std::map<std::string, FinSetObj> sets;   // object name → set
  std::map<std::string, FinSetMap> maps;   // morphism name → map
};

inline SetCategory category_from_sets(const std::vector<FinSetObj>& sets,
                                      const std::vector<FinSetMap>& maps) {
  SetCategory out;
  for (const auto& s : sets) {
    if (out.sets.count(s.id))
      throw std::invalid_argument("duplicate set id '" + s.id + "'");
    out.sets[s.id] = s;
    out.cat.objects.push_back(s.id);
  }
  auto find_name = [&](const FinSetMap& m) -> const std::string* {
    for (const auto& [name, existing] : out.maps)
      if (existing == m) return &name;
    return nullptr;
  };
  auto add = [&](FinSetMap m, const std::string& name) {
    out.cat.morphisms.push_back(name);
    out.cat.src[name] = m.source.id;
    out.cat.tgt[name] = m.target.id;
    out.maps[name] = std::move(m);
  };
  for (const auto& s : sets) {
    auto idm = identity_map(s);
    out.cat.id[s.id] = idm.id;
    add(std::move(idm), "id_" + s.id);
  }
  for (const auto& m : maps) {
    validate(m);
    if (!out.sets.count(m.source.id) || !out.sets.count(m.target.id))
      throw std::invalid_argument("map '" + m.id + "' uses unknown sets");
    if (!find_name(m)) add(m, m.id);
  }
  // Close under composition.
  int fresh = 0;
  bool grew = true;
  while (grew) {
    grew = false;
    auto names = out.cat.morphisms;
    for (const auto& g : names)
      for (const auto& f : names) {
        if (!out.cat.composable(g, f)) continue;
        if (out.cat.comp.count({g, f})) continue;
        FinSetMap gf = compose_maps(out.maps.at(g), out.maps.at(f));
        const std::string* existing = find_name(gf);
        std::string name;
        if (existing) {
          name = *existing;
        } else {
          name = "c" + std::to_string(fresh++);
          gf.id = name;
          add(std::move(gf), name);
          grew = true;
        }
        out.cat.comp[{g, f}] = name;
      }
  }
  return out;
}

// The category of all sets of size <= n on a fixed element pool, with every
// map between them. Handy for counterexample searches.
inline SetCategory finset_category(const std::vector<FinSetObj>& sets) {
  std::vector<FinSetMap> maps;
  for (const auto& a : sets)
    for (const auto& b : sets)
      for (auto& m : all_maps(a, b)) {
        m.id = a.id + ">" + b.id + ":" + m.id;
        maps.push_back(std::move(m));
      }
  return category_from_sets(sets, maps);
}

}  // namespace iffkit::cat
