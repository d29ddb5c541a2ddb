#pragma once

// Diagrams of finite sets, their limits and colimits, and brute-force
// verification of the universal properties.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "iffkit/category.hpp"

namespace iffkit::cat {

struct Diagram {
  FinGraph shape;
  std::map<std::string, FinSetObj> objects;  // node → set
  std::map<std::string, FinSetMap> maps;     // edge → map
};

class NotACone : public std::runtime_error {
public:
  explicit NotACone(const std::string& msg) : std::runtime_error(msg) {}
};

inline void validate(const Diagram& d) {
  validate(d.shape);
  for (const auto& n : d.shape.nodes)
    if (!d.objects.count(n))
      throw std::invalid_argument("node '" + n + "' has no set");
  for (const auto& e : d.shape.edges) {
    auto it = d.maps.find(e);
    if (it == d.maps.end())
      throw std::invalid_argument("edge '" + e + "' has no map");
    validate(it->second);
    if (!(it->second.source == d.objects.at(d.shape.src.at(e))) ||
        !(it->second.target == d.objects.at(d.shape.tgt.at(e))))
      throw std::invalid_argument("edge '" + e +
                                  "' does not match its endpoints");
  }
}

struct Cone {
  FinSetObj apex;
  std::map<std::string, FinSetMap> legs;  // node → (apex → F(node))
};

struct Cocone {
  FinSetObj apex;
  std::map<std::string, FinSetMap> legs;  // node → (F(node) → apex)
};

namespace detail {

// Node-indexed families drawn from the diagram's sets that are compatible
// with every edge map. The family for the empty diagram is the empty tuple.
inline std::vector<std::map<std::string, Elem>> compatible_families(
    const Diagram& d) {
  std::vector<std::map<std::string, Elem>> families{{}};
  for (const auto& n : d.shape.nodes) {
    std::vector<std::map<std::string, Elem>> next;
    for (const auto& fam : families)
      for (const auto& e : d.objects.at(n).elements) {
        auto extended = fam;
        extended[n] = e;
        next.push_back(std::move(extended));
      }
    families = std::move(next);
  }
  std::vector<std::map<std::string, Elem>> out;
  for (const auto& fam : families) {
    bool ok = true;
    for (const auto& e : d.shape.edges) {
      if (d.maps.at(e).map.at(fam.at(d.shape.src.at(e))) !=
          fam.at(d.shape.tgt.at(e))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(fam);
  }
  return out;
}

inline Elem family_elem(const Diagram& d,
                        const std::map<std::string, Elem>& fam) {
  std::ostringstream os;
  os << '<';
  bool first = true;
  for (const auto& n : d.shape.nodes) {
    if (!first) os << ',';
    os << fam.at(n);
    first = false;
  }
  os << '>';
  return os.str();
}

inline Elem tagged(const std::string& node, const Elem& e) {
  return node + "." + e;
}

// Merges tagged elements along the edge maps; the representative of each
// class is its least tagged name.
inline std::map<Elem, Elem> colimit_classes(const Diagram& d) {
  std::map<Elem, Elem> parent;
  for (const auto& n : d.shape.nodes)
    for (const auto& e : d.objects.at(n).elements)
      parent[tagged(n, e)] = tagged(n, e);
  auto find = [&](Elem x) {
    while (parent.at(x) != x) {
      parent[x] = parent.at(parent.at(x));
      x = parent.at(x);
    }
    return x;
  };
  auto unite = [&](const Elem& a, const Elem& b) {
    Elem ra = find(a), rb = find(b);
    if (ra == rb) return;
    if (rb < ra) std::swap(ra, rb);
    parent[rb] = ra;  // keep the least name as root
  };
  for (const auto& e : d.shape.edges) {
    const auto& sn = d.shape.src.at(e);
    const auto& tn = d.shape.tgt.at(e);
    for (const auto& [x, y] : d.maps.at(e).map)
      unite(tagged(sn, x), tagged(tn, y));
  }
  std::map<Elem, Elem> out;
  for (const auto& [x, _] : parent) out[x] = find(x);
  return out;
}

}  // namespace detail

// Limit apex: all edge-compatible node-indexed families, with projections.
inline Cone limit(const Diagram& d) {
  validate(d);
  Cone out;
  out.apex.id = "lim";
  auto families = detail::compatible_families(d);
  for (const auto& fam : families)
    out.apex.elements.push_back(detail::family_elem(d, fam));
  std::sort(out.apex.elements.begin(), out.apex.elements.end());
  for (const auto& n : d.shape.nodes) {
    FinSetMap leg{"proj_" + n, out.apex, d.objects.at(n), {}};
    out.legs[n] = std::move(leg);
  }
  for (const auto& fam : families) {
    Elem name = detail::family_elem(d, fam);
    for (const auto& n : d.shape.nodes) out.legs[n].map[name] = fam.at(n);
  }
  return out;
}

// Colimit apex: the disjoint union of the node sets modulo the equivalence
// generated by the edge maps, with injections. Class representatives are
// the least tagged element names.
inline Cocone colimit(const Diagram& d) {
  validate(d);
  Cocone out;
  out.apex.id = "colim";
  auto repr = detail::colimit_classes(d);
  std::set<Elem> classes;
  for (const auto& [_, r] : repr) classes.insert(r);
  out.apex.elements.assign(classes.begin(), classes.end());
  for (const auto& n : d.shape.nodes) {
    FinSetMap leg{"inj_" + n, d.objects.at(n), out.apex, {}};
    for (const auto& e : d.objects.at(n).elements)
      leg.map[e] = repr.at(detail::tagged(n, e));
    out.legs[n] = std::move(leg);
  }
  return out;
}

enum class UniversalKind { limit, colimit };

namespace detail {

inline bool limit_universal(const Diagram& d, const FinSetObj& apex,
                            const std::map<std::string, FinSetMap>& legs,
                            int bound) {
  for (const auto& n : d.shape.nodes) {
    auto it = legs.find(n);
    if (it == legs.end()) return false;  // a leg is missing: no cone
    if (!(it->second.source == apex) ||
        !(it->second.target == d.objects.at(n)))
      return false;
  }
  for (const auto& e : d.shape.edges) {
    const auto& f = d.maps.at(e);
    const auto& src_leg = legs.at(d.shape.src.at(e));
    const auto& tgt_leg = legs.at(d.shape.tgt.at(e));
    for (const auto& x : apex.elements)
      if (f.map.at(src_leg.map.at(x)) != tgt_leg.map.at(x))
        throw NotACone("legs do not commute with edge '" + e + "'");
  }

  // Cones and mediators both factor pointwise over the candidate apex, so
  // the property holds for every apex of size <= bound iff apex elements
  // correspond one-to-one to compatible families through the legs.
  auto families = compatible_families(d);
  std::set<std::string> seen;
  auto key_of = [&](const Elem& x) {
    std::string key;
    for (const auto& n : d.shape.nodes) key += legs.at(n).map.at(x) + ";";
    return key;
  };
  for (const auto& x : apex.elements) {
    if (!seen.insert(key_of(x)).second) return false;  // mediator not unique
  }
  std::set<std::string> family_keys;
  for (const auto& fam : families) {
    std::string key;
    for (const auto& n : d.shape.nodes) key += fam.at(n) + ";";
    family_keys.insert(key);
  }
  if (family_keys.size() != families.size()) return false;
  if (seen != family_keys) return false;  // existence or injectivity fails

  // Small literal sweep: enumerate cones from canonical apexes of size
  // <= bound and count mediating maps explicitly.
  for (int size = 0; size <= bound; ++size) {
    if (size > 0 && families.empty()) continue;  // no cones exist
    double cones = 1;
    for (int i = 0; i < size; ++i) cones *= static_cast<double>(families.size());
    double work = cones * size * static_cast<double>(apex.elements.size() + 1) *
                  static_cast<double>(d.shape.nodes.size() + 1);
    if (work > 200000) break;
    std::vector<std::size_t> choice(size, 0);
    while (true) {
      // Candidate cone: element i of the apex goes to families[choice[i]].
      // The mediator must send it to the unique matching apex element.
      bool mediator_unique = true;
      for (int i = 0; i < size && mediator_unique; ++i) {
        int count = 0;
        for (const auto& x : apex.elements) {
          bool ok = true;
          for (const auto& n : d.shape.nodes)
            if (legs.at(n).map.at(x) != families[choice[i]].at(n)) {
              ok = false;
              break;
            }
          if (ok) ++count;
        }
        if (count != 1) mediator_unique = false;
      }
      if (!mediator_unique) return false;
      if (size == 0) break;
      int i = size;
      bool carried = true;
      while (i > 0 && carried) {
        --i;
        if (++choice[i] < families.size()) {
          carried = false;
        } else {
          choice[i] = 0;
        }
      }
      if (carried) break;
    }
  }
  return true;
}

inline bool colimit_universal(const Diagram& d, const FinSetObj& apex,
                              const std::map<std::string, FinSetMap>& legs,
                              int bound) {
  for (const auto& n : d.shape.nodes) {
    auto it = legs.find(n);
    if (it == legs.end()) return false;
    if (!(it->second.source == d.objects.at(n)) ||
        !(it->second.target == apex))
      return false;
  }
  for (const auto& e : d.shape.edges) {
    const auto& f = d.maps.at(e);
    const auto& src_leg = legs.at(d.shape.src.at(e));
    const auto& tgt_leg = legs.at(d.shape.tgt.at(e));
    for (const auto& [x, y] : f.map)
      if (src_leg.map.at(x) != tgt_leg.map.at(y))
        throw NotACone("legs do not commute with edge '" + e + "'");
  }

  // Cocones factor through the classes of the generated equivalence, so the
  // property holds iff the legs identify exactly the classes and cover the
  // apex.
  auto repr = colimit_classes(d);
  std::map<Elem, Elem> class_to_apex;
  std::set<Elem> hit;
  for (const auto& n : d.shape.nodes)
    for (const auto& e : d.objects.at(n).elements) {
      const Elem& cls = repr.at(tagged(n, e));
      const Elem& ax = legs.at(n).map.at(e);
      auto it = class_to_apex.find(cls);
      if (it == class_to_apex.end())
        class_to_apex[cls] = ax;
      else if (it->second != ax)
        return false;  // legs merge finer than the apex: no mediator
      hit.insert(ax);
    }
  if (hit.size() != class_to_apex.size()) return false;  // merged too much
  for (const auto& x : apex.elements)
    if (!hit.count(x)) return false;  // uncovered apex point: non-unique
  if (hit.size() != apex.elements.size()) return false;

  // Small literal sweep with canonical targets of size <= bound.
  std::size_t total_elems = 0;
  for (const auto& n : d.shape.nodes)
    total_elems += d.objects.at(n).elements.size();
  for (int size = 0; size <= bound; ++size) {
    if (size == 0 && total_elems > 0) continue;
    double cocones = 1;
    for (std::size_t i = 0; i < total_elems; ++i)
      cocones *= static_cast<double>(size);
    double mediators_bound = 1;
    for (std::size_t i = 0; i < apex.elements.size(); ++i)
      mediators_bound *= static_cast<double>(size);
    double work = cocones * (mediators_bound + 1) *
                  static_cast<double>(total_elems + 1);
    if (work > 200000) continue;
    std::vector<Elem> target_elems;
    for (int i = 0; i < size; ++i)
      target_elems.push_back("t" + std::to_string(i));
    // Enumerate all assignments of tagged elements to the target.
    std::vector<Elem> tags;
    for (const auto& n : d.shape.nodes)
      for (const auto& e : d.objects.at(n).elements)
        tags.push_back(tagged(n, e));
    std::vector<std::size_t> choice(tags.size(), 0);
    while (true) {
      std::map<Elem, Elem> assign;
      for (std::size_t i = 0; i < tags.size(); ++i)
        assign[tags[i]] = target_elems.empty() ? Elem{} : target_elems[choice[i]];
      bool is_cocone = true;
      for (const auto& e : d.shape.edges) {
        const auto& sn = d.shape.src.at(e);
        const auto& tn = d.shape.tgt.at(e);
        for (const auto& [x, y] : d.maps.at(e).map)
          if (assign.at(tagged(sn, x)) != assign.at(tagged(tn, y))) {
            is_cocone = false;
            break;
          }
        if (!is_cocone) break;
      }
      if (is_cocone) {
        // Count mediators apex → target commuting with the legs.
        long mediators = 0;
        std::vector<std::size_t> med(apex.elements.size(), 0);
        if (apex.elements.empty()) {
          mediators = 1;  // the empty map
        } else if (!target_elems.empty()) {
          while (true) {
            bool commutes = true;
            for (const auto& n : d.shape.nodes) {
              for (const auto& e : d.objects.at(n).elements) {
                const Elem& ax = legs.at(n).map.at(e);
                std::size_t idx = static_cast<std::size_t>(
                    std::find(apex.elements.begin(), apex.elements.end(), ax) -
                    apex.elements.begin());
                if (target_elems[med[idx]] != assign.at(tagged(n, e))) {
                  commutes = false;
                  break;
                }
              }
              if (!commutes) break;
            }
            if (commutes) ++mediators;
            std::size_t i = apex.elements.size();
            bool carried = true;
            while (i > 0 && carried) {
              --i;
              if (++med[i] < target_elems.size())
                carried = false;
              else
                med[i] = 0;
            }
            if (carried) break;
          }
        }
        if (mediators != 1) return false;
      }
      if (tags.empty() || target_elems.empty()) break;
      std::size_t i = tags.size();
      bool carried = true;
      while (i > 0 && carried) {
        --i;
        if (++choice[i] < target_elems.size())
          carried = false;
        else
          choice[i] = 0;
      }
      if (carried) break;
    }
  }
  return true;
}

}  // namespace detail

// Checks that (apex, legs) is universal among (co)cones with apexes of size
// <= bound. Legs that fail to commute with the diagram raise NotACone;
// missing or mis-typed legs simply fail.
inline bool verify_universal_property(
    const Diagram& d, const FinSetObj& apex,
    const std::map<std::string, FinSetMap>& legs, UniversalKind kind,
    int bound = 4) {
  validate(d);
  if (kind == UniversalKind::limit)
    return detail::limit_universal(d, apex, legs, bound);
  return detail::colimit_universal(d, apex, legs, bound);
}

}  // namespace iffkit::cat
