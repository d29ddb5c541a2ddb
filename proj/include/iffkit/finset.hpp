#pragma once

// Finite sets and total maps, with products, exponents and currying, plus a
// builder that closes a family of maps under composition into a concrete
// category of sets.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace iffkit::cat {

using Elem = std::string;

struct FinSetObj {
  std::string id;
  std::vector<Elem> elements;  // sorted, unique

  static FinSetObj make(std::string id, std::vector<Elem> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return {std::move(id), std::move(elems)};
  }

  bool contains(const Elem& e) const {
    return std::binary_search(elements.begin(), elements.end(), e);
  }

  std::size_t size() const { return elements.size(); }

  friend bool operator==(const FinSetObj& a, const FinSetObj& b) {
    return a.elements == b.elements;
  }
};

struct FinSetMap {
  std::string id;
  FinSetObj source, target;
  std::map<Elem, Elem> map;  // total on source

  const Elem& operator()(const Elem& e) const { return map.at(e); }

  // Extensional equality: same carriers, same assignments.
  friend bool operator==(const FinSetMap& a, const FinSetMap& b) {
    return a.source == b.source && a.target == b.target && a.map == b.map;
  }
};

inline void validate(const FinSetMap& f) {
  if (f.map.size() != f.source.elements.size())
    throw std::invalid_argument("map '" + f.id + "' is not total");
  for (const auto& [x, y] : f.map) {
    if (!f.source.contains(x))
      throw std::invalid_argument("map '" + f.id + "' defined off its source");
    if (!f.target.contains(y))
      throw std::invalid_argument("map '" + f.id + "' escapes its target");
  }
}

inline FinSetMap identity_map(const FinSetObj& s) {
  FinSetMap out{"id_" + s.id, s, s, {}};
  for (const auto& e : s.elements) out.map[e] = e;
  return out;
}

// g after f.
inline FinSetMap compose_maps(const FinSetMap& g, const FinSetMap& f) {
  if (!(f.target == g.source))
    throw std::invalid_argument("maps are not composable");
  FinSetMap out{g.id + "*" + f.id, f.source, g.target, {}};
  for (const auto& [x, y] : f.map) out.map[x] = g.map.at(y);
  return out;
}

inline Elem pair_elem(const Elem& a, const Elem& b) {
  return "(" + a + "," + b + ")";
}

struct ProductResult {
  FinSetObj object;
  FinSetMap proj0, proj1;
};

inline ProductResult product(const FinSetObj& a, const FinSetObj& b) {
  FinSetObj p{a.id + "*" + b.id, {}};
  FinSetMap p0{"p0", p, a, {}}, p1{"p1", p, b, {}};
  for (const auto& x : a.elements)
    for (const auto& y : b.elements) p.elements.push_back(pair_elem(x, y));
  std::sort(p.elements.begin(), p.elements.end());
  p0.source = p;
  p1.source = p;
  for (const auto& x : a.elements)
    for (const auto& y : b.elements) {
      p0.map[pair_elem(x, y)] = x;
      p1.map[pair_elem(x, y)] = y;
    }
  return {p, p0, p1};
}

// Every total map a -> b, in a deterministic order (lexicographic in the
// images over a's sorted elements).
inline std::vector<FinSetMap> all_maps(const FinSetObj& a,
                                       const FinSetObj& b) {
  std::vector<FinSetMap> out;
  if (a.elements.empty()) {
    out.push_back(FinSetMap{"m0", a, b, {}});
    return out;
  }
  if (b.elements.empty()) return out;  // no maps from nonempty to empty
  std::vector<std::size_t> idx(a.elements.size(), 0);
  while (true) {
    FinSetMap m{"m" + std::to_string(out.size()), a, b, {}};
    for (std::size_t i = 0; i < a.elements.size(); ++i)
      m.map[a.elements[i]] = b.elements[idx[i]];
    out.push_back(std::move(m));
    std::size_t i = a.elements.size();
    while (i > 0) {
      --i;
      if (++idx[i] < b.elements.size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
  }
}

inline Elem map_elem(const FinSetMap& f) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [x, y] : f.map) {
    if (!first) os << '|';
    os << x << ':' << y;
    first = false;
  }
  os << '}';
  return os.str();
}

struct ExponentResult {
  FinSetObj object;                 // all maps a -> b, one element per map
  FinSetMap eval;                   // exp * a -> b
  std::map<Elem, FinSetMap> table;  // element name -> the map it denotes
};

inline ExponentResult exponent(const FinSetObj& a, const FinSetObj& b) {
  ExponentResult out;
  out.object.id = b.id + "^" + a.id;
  for (auto& f : all_maps(a, b)) {
    Elem name = map_elem(f);
    out.object.elements.push_back(name);
    out.table.emplace(name, std::move(f));
  }
  std::sort(out.object.elements.begin(), out.object.elements.end());
  auto prod = product(out.object, a);
  out.eval = FinSetMap{"eval", prod.object, b, {}};
  for (const auto& fe : out.object.elements)
    for (const auto& x : a.elements)
      out.eval.map[pair_elem(fe, x)] = out.table.at(fe).map.at(x);
  return out;
}

// curry(f : c*a -> b) : c -> b^a, where c*a uses pair_elem naming.
inline FinSetMap curry(const FinSetMap& f, const FinSetObj& c,
                       const FinSetObj& a, const ExponentResult& exp) {
  FinSetMap out{"curry_" + f.id, c, exp.object, {}};
  for (const auto& z : c.elements) {
    FinSetMap slice{"", a, f.target, {}};
    for (const auto& x : a.elements)
      slice.map[x] = f.map.at(pair_elem(z, x));
    out.map[z] = map_elem(slice);
  }
  return out;
}

inline FinSetMap uncurry(const FinSetMap& g, const FinSetObj& c,
                         const FinSetObj& a, const FinSetObj& b,
                         const ExponentResult& exp) {
  auto prod = product(c, a);
  FinSetMap out{"uncurry_" + g.id, prod.object, b, {}};
  for (const auto& z : c.elements)
    for (const auto& x : a.elements)
      out.map[pair_elem(z, x)] = exp.table.at(g.map.at(z)).map.at(x);
  return out;
}

}  // namespace iffkit::cat
