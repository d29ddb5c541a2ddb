#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "iffkit/limits.hpp"

using namespace iffkit::cat;

namespace {

FinSetObj fs(std::string id, std::initializer_list<Elem> elems) {
  return FinSetObj::make(std::move(id), std::vector<Elem>(elems));
}

FinSetMap fmap(std::string id, FinSetObj src, FinSetObj tgt,
               std::map<Elem, Elem> m) {
  FinSetMap out{std::move(id), std::move(src), std::move(tgt), std::move(m)};
  validate(out);
  return out;
}

// Independent equivalence-class oracle: repeated sweeps over the merge
// constraints until no class changes (no union-find structure involved).
std::size_t naive_class_count(const Diagram& d) {
  std::map<Elem, int> cls;
  int next = 0;
  for (const auto& n : d.shape.nodes)
    for (const auto& e : d.objects.at(n).elements)
      cls[n + "." + e] = next++;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : d.shape.edges) {
      const auto& sn = d.shape.src.at(e);
      const auto& tn = d.shape.tgt.at(e);
      for (const auto& [x, y] : d.maps.at(e).map) {
        int a = cls.at(sn + "." + x);
        int b = cls.at(tn + "." + y);
        if (a != b) {
          int lo = std::min(a, b), hi = std::max(a, b);
          for (auto& [k, v] : cls)
            if (v == hi) v = lo;
          changed = true;
        }
      }
    }
  }
  std::set<int> ids;
  for (const auto& [k, v] : cls) ids.insert(v);
  return ids.size();
}

// The terminal category: one object, its identity.
FinCategory terminal_category() {
  FinCategory c;
  c.objects = {"*"};
  c.morphisms = {"id"};
  c.src["id"] = "*";
  c.tgt["id"] = "*";
  c.id["*"] = "id";
  c.comp[{"id", "id"}] = "id";
  return c;
}

}  // namespace

TEST_CASE("category law checking") {
  CHECK(check_category_laws(terminal_category()).lawful());

  // One loop truncated at length two with a bogus composition table.
  FinCategory c;
  c.objects = {"*"};
  c.morphisms = {"id", "f", "g"};
  for (const auto& m : c.morphisms) {
    c.src[m] = "*";
    c.tgt[m] = "*";
  }
  c.id["*"] = "id";
  auto tot = [&](const std::string& a, const std::string& b,
                 const std::string& r) { c.comp[{a, b}] = r; };
  tot("id", "id", "id");
  tot("id", "f", "f");
  tot("f", "id", "f");
  tot("id", "g", "g");
  tot("g", "id", "g");
  tot("f", "f", "g");
  tot("f", "g", "g");   // wrong: should leave the fragment
  tot("g", "f", "id");  // wrong
  tot("g", "g", "g");
  auto report = check_category_laws(c);
  CHECK_FALSE(report.lawful());
  bool has_assoc = false;
  for (const auto& v : report.violations)
    if (v.kind == "associativity") has_assoc = true;
  CHECK(has_assoc);
}

TEST_CASE("classify_morphism by exhaustive cancellation") {
  auto one = fs("one", {"*"});
  auto two = fs("two", {"1", "2"});
  auto setcat = finset_category({one, two});
  CHECK(check_category_laws(setcat.cat).lawful());

  for (const auto& o : setcat.cat.objects) {
    auto traits = classify_morphism(setcat.cat, setcat.cat.id.at(o));
    CHECK(traits.mono);
    CHECK(traits.epi);
    CHECK(traits.iso);
  }

  // The unique map {1,2} -> {*}: epi, not mono.
  std::string collapse;
  for (const auto& [name, m] : setcat.maps)
    if (m.source == two && m.target == one) collapse = name;
  REQUIRE_FALSE(collapse.empty());
  auto t1 = classify_morphism(setcat.cat, collapse);
  CHECK(t1.epi);
  CHECK_FALSE(t1.mono);
  CHECK_FALSE(t1.iso);

  // The inclusion {*} -> {1,2} as the map sending * to 1: mono, not epi.
  std::string incl;
  for (const auto& [name, m] : setcat.maps)
    if (m.source == one && m.target == two && m.map.at("*") == "1")
      incl = name;
  REQUIRE_FALSE(incl.empty());
  auto t2 = classify_morphism(setcat.cat, incl);
  CHECK(t2.mono);
  CHECK_FALSE(t2.epi);

  CHECK_THROWS_AS(classify_morphism(setcat.cat, "nope"), UnknownMorphism);
}

TEST_CASE("iso implies mono and epi across a generated category") {
  auto a = fs("a", {"x", "y"});
  auto b = fs("b", {"u", "v"});
  auto c = fs("c", {"1"});
  auto setcat = finset_category({a, b, c});
  for (const auto& m : setcat.cat.morphisms) {
    auto t = classify_morphism(setcat.cat, m);
    if (t.iso) {
      CHECK(t.mono);
      CHECK(t.epi);
    }
  }
}

TEST_CASE("pullback of two maps into a point") {
  Diagram d;
  d.shape.nodes = {"a", "b", "s"};
  d.shape.edges = {"f", "g"};
  d.shape.src = {{"f", "a"}, {"g", "b"}};
  d.shape.tgt = {{"f", "s"}, {"g", "s"}};
  auto a = fs("a", {"1", "2"});
  auto b = fs("b", {"3", "4"});
  auto s = fs("s", {"*"});
  d.objects = {{"a", a}, {"b", b}, {"s", s}};
  d.maps = {{"f", fmap("f", a, s, {{"1", "*"}, {"2", "*"}})},
            {"g", fmap("g", b, s, {{"3", "*"}, {"4", "*"}})}};

  auto cone = limit(d);
  CHECK(cone.apex.elements.size() == 4);
  CHECK(verify_universal_property(d, cone.apex, cone.legs,
                                  UniversalKind::limit, 3));
}

TEST_CASE("coequalizer collapses the chain") {
  Diagram d;
  d.shape.nodes = {"p", "q"};
  d.shape.edges = {"f", "g"};
  d.shape.src = {{"f", "p"}, {"g", "p"}};
  d.shape.tgt = {{"f", "q"}, {"g", "q"}};
  auto p = fs("p", {"1", "2"});
  auto q = fs("q", {"x", "y", "z"});
  d.objects = {{"p", p}, {"q", q}};
  d.maps = {{"f", fmap("f", p, q, {{"1", "x"}, {"2", "y"}})},
            {"g", fmap("g", p, q, {{"1", "y"}, {"2", "z"}})}};

  auto cocone = colimit(d);
  // x~y and y~z, plus the p-classes folding in: all of q is one class.
  std::set<Elem> q_images;
  for (const auto& [x, y] : cocone.legs.at("q").map) q_images.insert(y);
  CHECK(q_images.size() == 1);
  CHECK(cocone.apex.elements.size() == naive_class_count(d));
  CHECK(verify_universal_property(d, cocone.apex, cocone.legs,
                                  UniversalKind::colimit, 3));
}

TEST_CASE("empty diagram: terminal limit, initial colimit") {
  Diagram d;
  auto cone = limit(d);
  CHECK(cone.apex.elements.size() == 1);
  CHECK(verify_universal_property(d, cone.apex, cone.legs,
                                  UniversalKind::limit, 4));
  auto cocone = colimit(d);
  CHECK(cocone.apex.elements.empty());
  CHECK(verify_universal_property(d, cocone.apex, cocone.legs,
                                  UniversalKind::colimit, 4));
}

TEST_CASE("pushout over an empty span is the coproduct") {
  Diagram d;
  d.shape.nodes = {"l", "m", "r"};
  d.shape.edges = {"f", "g"};
  d.shape.src = {{"f", "m"}, {"g", "m"}};
  d.shape.tgt = {{"f", "l"}, {"g", "r"}};
  auto l = fs("l", {"a"});
  auto m = fs("m", {});
  auto r = fs("r", {"b"});
  d.objects = {{"l", l}, {"m", m}, {"r", r}};
  d.maps = {{"f", fmap("f", m, l, {})}, {"g", fmap("g", m, r, {})}};
  auto cocone = colimit(d);
  CHECK(cocone.apex.elements.size() == 2);
  CHECK(verify_universal_property(d, cocone.apex, cocone.legs,
                                  UniversalKind::colimit, 3));
}

TEST_CASE("mutated (co)limit data fails the universal property") {
  Diagram d;
  d.shape.nodes = {"a", "b"};
  auto a = fs("a", {"1", "2"});
  auto b = fs("b", {"x"});
  d.objects = {{"a", a}, {"b", b}};

  auto cone = limit(d);
  REQUIRE(cone.apex.elements.size() == 2);

  // Drop one projection: no longer a limit cone.
  auto dropped = cone.legs;
  dropped.erase("b");
  CHECK_FALSE(
      verify_universal_property(d, cone.apex, dropped, UniversalKind::limit, 3));

  // Replace a projection with a constant: mediators stop being unique.
  auto constant = cone.legs;
  for (auto& [k, v] : constant.at("a").map) v = "1";
  CHECK_FALSE(verify_universal_property(d, cone.apex, constant,
                                        UniversalKind::limit, 3));

  auto cocone = colimit(d);
  auto redirected = cocone.legs;
  // Send both elements of a to the same class: legs merge finer than apex.
  auto& amap = redirected.at("a").map;
  amap["2"] = amap["1"];
  CHECK_FALSE(verify_universal_property(d, cocone.apex, redirected,
                                        UniversalKind::colimit, 3));

  // Terminal object versus any singleton is universal.
  Diagram empty;
  CHECK(verify_universal_property(empty, fs("pt", {"only"}), {},
                                  UniversalKind::limit, 4));
}

TEST_CASE("non-commuting legs raise NotACone") {
  Diagram d;
  d.shape.nodes = {"a", "s"};
  d.shape.edges = {"f"};
  d.shape.src = {{"f", "a"}};
  d.shape.tgt = {{"f", "s"}};
  auto a = fs("a", {"1"});
  auto s = fs("s", {"u", "v"});
  d.objects = {{"a", a}, {"s", s}};
  d.maps = {{"f", fmap("f", a, s, {{"1", "u"}})}};
  auto cone = limit(d);
  auto bad = cone.legs;
  for (auto& [k, v] : bad.at("s").map) v = "v";
  CHECK_THROWS_AS(
      verify_universal_property(d, cone.apex, bad, UniversalKind::limit, 3),
      NotACone);
}

TEST_CASE("exponents and currying") {
  auto a = fs("a", {"x", "y"});
  auto b = fs("b", {"1", "2", "3"});
  auto e = exponent(a, b);
  CHECK(e.object.elements.size() == 9);

  auto empty = fs("e", {});
  CHECK(exponent(empty, b).object.elements.size() == 1);

  // Curry/uncurry round-trip over every map c*a -> b with |c| = 2.
  auto c = fs("c", {"p", "q"});
  auto prod = product(c, a);
  auto maps = all_maps(prod.object, b);
  CHECK(maps.size() == 81);  // 3^(2*2)
  for (std::size_t i = 0; i < maps.size(); i += 7) {
    const auto& f = maps[i];
    auto curried = curry(f, c, a, e);
    auto back = uncurry(curried, c, a, b, e);
    CHECK(back.map == f.map);
  }

  // Exponent bijection: |hom(c*a, b)| == |hom(c, b^a)|.
  CHECK(all_maps(prod.object, b).size() ==
        all_maps(c, e.object).size());
}

TEST_CASE("functor and naturality checks") {
  auto one = fs("one", {"*"});
  auto two = fs("two", {"1", "2"});
  auto setcat = finset_category({one, two});

  auto idf = identity_functor(setcat.cat);
  CHECK(check_functor(idf).lawful());

  FinNatTrans idn{idf, idf, {}};
  for (const auto& o : setcat.cat.objects)
    idn.components[o] = setcat.cat.id.at(o);
  CHECK(check_naturality(idn));

  FinNatTrans missing{idf, idf, {}};
  CHECK_THROWS_AS(check_naturality(missing), ComponentMissing);
}

TEST_CASE("functor composition preserves lawfulness and is associative") {
  auto one = fs("one", {"*"});
  auto two = fs("two", {"1", "2"});
  auto setcat = finset_category({one, two});
  auto idf = identity_functor(setcat.cat);
  auto twice = compose_functors(idf, idf);
  CHECK(check_functor(twice).lawful());
  auto three_a = compose_functors(compose_functors(idf, idf), idf);
  auto three_b = compose_functors(idf, compose_functors(idf, idf));
  CHECK(three_a.on_objects == three_b.on_objects);
  CHECK(three_a.on_morphisms == three_b.on_morphisms);
}

TEST_CASE("random diagrams: oracle agreement and universal properties") {
  std::mt19937 rng(2718);
  auto rnd = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  for (int round = 0; round < 120; ++round) {
    Diagram d;
    int nodes = rnd(1, 4);
    for (int i = 0; i < nodes; ++i) {
      std::string name = "n" + std::to_string(i);
      d.shape.nodes.push_back(name);
      std::vector<Elem> elems;
      int size = rnd(0, 4);
      for (int k = 0; k < size; ++k)
        elems.push_back("e" + std::to_string(k));
      d.objects[name] = FinSetObj::make(name, elems);
    }
    int edges = rnd(0, 4);
    for (int i = 0; i < edges; ++i) {
      std::string sn = d.shape.nodes[rnd(0, nodes - 1)];
      std::string tn = d.shape.nodes[rnd(0, nodes - 1)];
      if (d.objects[tn].elements.empty() &&
          !d.objects[sn].elements.empty())
        continue;  // no total map exists
      std::string name = "m" + std::to_string(i);
      FinSetMap m{name, d.objects[sn], d.objects[tn], {}};
      for (const auto& x : d.objects[sn].elements)
        m.map[x] =
            d.objects[tn]
                .elements[rnd(0, static_cast<int>(
                                     d.objects[tn].elements.size()) -
                                     1)];
      d.shape.edges.push_back(name);
      d.shape.src[name] = sn;
      d.shape.tgt[name] = tn;
      d.maps[name] = std::move(m);
    }

    auto cone = limit(d);
    CHECK(verify_universal_property(d, cone.apex, cone.legs,
                                    UniversalKind::limit, 4));
    auto cocone = colimit(d);
    CHECK(cocone.apex.elements.size() == naive_class_count(d));
    CHECK(verify_universal_property(d, cocone.apex, cocone.legs,
                                    UniversalKind::colimit, 4));
  }
}
