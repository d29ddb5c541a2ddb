#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "iffkit/metalang.hpp"

using namespace iffkit;
using namespace iffkit::metalang;

#ifndef IFFKIT_CORPUS_DIR
#define IFFKIT_CORPUS_DIR "corpus"
#endif

static std::string corpus(const std::string& name) {
  return std::string(IFFKIT_CORPUS_DIR) + "/" + name;
}

TEST_CASE("parse_sentence handles the worked forms") {
  auto s1 = parse_sentence("(not (collection collection))");
  auto* n1 = std::get_if<Not>(&s1->node);
  REQUIRE(n1);
  auto* a1 = std::get_if<Atom>(&n1->body->node);
  REQUIRE(a1);
  CHECK(a1->pred.local == "collection");
  REQUIRE(a1->args.size() == 1);
  CHECK(std::holds_alternative<Constant>(a1->args[0]->node));

  auto s2 = parse_sentence("(= underlying graph)");
  auto* e2 = std::get_if<Equal>(&s2->node);
  REQUIRE(e2);
  CHECK(std::get<Constant>(e2->lhs->node).name.local == "underlying");
  CHECK(std::get<Constant>(e2->rhs->node).name.local == "graph");

  auto s3 = parse_sentence("(forall (?x (object ?x)) (thing ?x))");
  auto* q3 = std::get_if<Forall>(&s3->node);
  REQUIRE(q3);
  REQUIRE(q3->bindings.size() == 1);
  CHECK(q3->bindings[0].var == "?x");
  auto* g3 = std::get_if<Atom>(&q3->bindings[0].guard->node);
  REQUIRE(g3);
  CHECK(g3->pred.local == "object");
  auto* b3 = std::get_if<Atom>(&q3->body->node);
  REQUIRE(b3);
  CHECK(b3->pred.local == "thing");

  auto s4 = parse_sentence("(and)");
  auto* c4 = std::get_if<And>(&s4->node);
  REQUIRE(c4);
  CHECK(c4->items.empty());
  CHECK(print_canonical(s4) == "(and)");
}

TEST_CASE("qualified names parse and round-trip") {
  auto s = parse_sentence("(= graph-pair (vlrg.lim.pbk.obj:pairing [graph graph]))");
  auto* e = std::get_if<Equal>(&s->node);
  REQUIRE(e);
  auto* app = std::get_if<Application>(&e->rhs->node);
  REQUIRE(app);
  CHECK(app->head.prefix == std::vector<std::string>{"vlrg", "lim", "pbk", "obj"});
  CHECK(app->head.local == "pairing");
  REQUIRE(app->args.size() == 1);
  CHECK(std::holds_alternative<TermTuple>(app->args[0]->node));
  CHECK(print_canonical(s) ==
        "(= graph-pair (vlrg.lim.pbk.obj:pairing [graph graph]))");

  auto sp = parse_sentence("(SET.LIM.PBK:pullback thing)");
  auto* ap = std::get_if<Atom>(&sp->node);
  REQUIRE(ap);
  CHECK(ap->pred.special);

  CHECK_THROWS_AS(parse_sentence("(Set.lim:foo thing)"), ParseError);
}

TEST_CASE("parse errors carry kinds and spans inside the input") {
  auto check_kind = [](const std::string& text, ParseErrorKind kind) {
    try {
      parse_sentence(text);
      FAIL("expected a parse error for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.kind() == kind);
      CHECK(e.span().line >= 1);
      CHECK(e.span().column >= 1);
    }
  };
  check_kind("(not (collection collection)", ParseErrorKind::UnbalancedParen);
  check_kind("(f (= a b))", ParseErrorKind::UnknownHead);
  check_kind("(?x thing)", ParseErrorKind::UnknownHead);
  check_kind("(thing ?)", ParseErrorKind::BadVariable);
  check_kind("", ParseErrorKind::EmptyInput);
  check_kind("   ; only a comment\n", ParseErrorKind::EmptyInput);
}

TEST_CASE("span soundness: error spans lie within the text") {
  std::vector<std::string> bad = {
      "(not (collection collection)",
      "(and (p) (q)",
      "(thing ?BAD)",
      "(forall (?x) (thing ?x))",
      "))",
  };
  for (const auto& text : bad) {
    try {
      parse_sentence(text);
    } catch (const ParseError& e) {
      int lines = 1;
      for (char c : text)
        if (c == '\n') ++lines;
      CHECK(e.span().line <= lines);
      CHECK(e.span().column <= static_cast<int>(text.size()) + 1);
    }
  }
}

TEST_CASE("parse_file reads corpora in order") {
  auto tco = parse_file(corpus("collection-axioms.iff"));
  REQUIRE(tco.size() == 3);
  auto* first = std::get_if<Atom>(&tco[0]->node);
  REQUIRE(first);
  CHECK(first->pred.qualified() == "ur:object");

  auto core = parse_file(corpus("metastack-core.iff"));
  CHECK(core.size() == 7);
  auto cat = parse_file(corpus("large-category.iff"));
  CHECK(cat.size() == 20);
  auto trm = parse_file(corpus("term-language.iff"));
  CHECK(trm.size() == 24);
  auto iso = parse_file(corpus("collection-isomorphism.iff"));
  CHECK(iso.size() == 1);
}

TEST_CASE("a file with one unbalanced form fails at its span") {
  std::string text = sexpr::slurp_file(corpus("collection-axioms.iff"));
  auto pos = text.rfind(')');
  REQUIRE(pos != std::string::npos);
  text.erase(pos, 1);
  CHECK_THROWS_AS(parse_sentences(text), ParseError);
}

TEST_CASE("empty file parses to no sentences") {
  CHECK(parse_sentences("").empty());
  CHECK(parse_sentences("; nothing here\n").empty());
}

TEST_CASE("print_canonical is a fixed point of parse on the corpora") {
  for (const char* name :
       {"metastack-core.iff", "collection-axioms.iff", "large-category.iff",
        "term-language.iff", "collection-isomorphism.iff"}) {
    for (const auto& s : parse_file(corpus(name))) {
      std::string once = print_canonical(s);
      auto reparsed = parse_sentence(once);
      CHECK(equal(s, reparsed));
      CHECK(print_canonical(reparsed) == once);
    }
  }
}

TEST_CASE("equality of two variables prints canonically") {
  auto s = make_sentence(Equal{make_term(Variable{"?a"}),
                               make_term(Variable{"?b"})});
  CHECK(print_canonical(s) == "(= ?a ?b)");
}

TEST_CASE("free_variables follows scopes") {
  auto s1 = parse_sentence("(thing ?x)");
  CHECK(free_variables(s1) == std::set<std::string>{"?x"});

  auto s2 = parse_sentence("(forall (?x (object ?x)) (thing ?x))");
  CHECK(free_variables(s2).empty());

  // Body of the collection-isomorphism sentence with its binding stripped:
  // the inner exists still binds ?f.
  auto iso = parse_file(corpus("collection-isomorphism.iff")).at(0);
  const auto& body = std::get<Forall>(iso->node).body;
  CHECK(free_variables(body) == std::set<std::string>{"?c0", "?c1"});
}

TEST_CASE("restricted quantification validator") {
  auto ok = parse_sentence("(forall (?x (object ?x)) (thing ?x))");
  CHECK(check_restricted_quantification(ok).empty());

  auto bad = parse_sentence("(forall (?x (object collection)) (thing ?x))");
  auto violations = check_restricted_quantification(bad);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].var == "?x");

  // Every quantified corpus sentence passes.
  for (const char* name : {"metastack-core.iff", "collection-isomorphism.iff"}) {
    for (const auto& s : parse_file(corpus(name)))
      CHECK(check_restricted_quantification(s).empty());
  }
}

TEST_CASE("categorical-design lint") {
  auto cat = parse_file(corpus("large-category.iff"));
  auto report = lint_categorical_design(cat);
  CHECK(report.compliant_count == cat.size());
  CHECK(report.ratio == 1.0);

  auto iso = parse_file(corpus("collection-isomorphism.iff"));
  auto r2 = lint_categorical_design(iso);
  REQUIRE(r2.sentences.size() == 1);
  CHECK_FALSE(r2.sentences[0].compliant);
  auto& off = r2.sentences[0].offending;
  CHECK(std::find(off.begin(), off.end(), "forall") != off.end());
  CHECK(std::find(off.begin(), off.end(), "exists") != off.end());
  CHECK(std::find(off.begin(), off.end(), "iff") != off.end());

  auto r3 = lint_categorical_design({});
  CHECK(r3.ratio == 1.0);
}

TEST_CASE("lint is monotone in compliant sentences") {
  auto base = parse_file(corpus("collection-isomorphism.iff"));
  auto before = lint_categorical_design(base);
  base.push_back(parse_sentence("(= underlying graph)"));
  auto after = lint_categorical_design(base);
  CHECK(after.compliant_count >= before.compliant_count);
}

// ---------------------------------------------------------------------------
// Random-AST round-trip property

namespace {

class AstGen {
public:
  explicit AstGen(unsigned seed) : rng_(seed) {}

  SentencePtr sentence(int depth) {
    int pick = depth <= 0 ? pick_int(0, 1) : pick_int(0, 8);
    switch (pick) {
      case 0: {
        Atom a;
        a.pred = name();
        int n = pick_int(0, 2);
        for (int i = 0; i < n; ++i) a.args.push_back(term(depth - 1));
        return make_sentence(std::move(a));
      }
      case 1:
        return make_sentence(Equal{term(depth - 1), term(depth - 1)});
      case 2:
        return make_sentence(Not{sentence(depth - 1)});
      case 3:
      case 4: {
        std::vector<SentencePtr> items;
        int n = pick_int(0, 3);
        for (int i = 0; i < n; ++i) items.push_back(sentence(depth - 1));
        if (pick == 3) return make_sentence(And{std::move(items)});
        return make_sentence(Or{std::move(items)});
      }
      case 5:
        return make_sentence(
            Implies{sentence(depth - 1), sentence(depth - 1)});
      case 6:
        return make_sentence(Iff{sentence(depth - 1), sentence(depth - 1)});
      default: {
        std::vector<Binding> bindings;
        int n = pick_int(1, 2);
        for (int i = 0; i < n; ++i) {
          std::string v = var();
          Atom guard;
          guard.pred = name();
          guard.args.push_back(make_term(Variable{v}));
          bindings.push_back({v, make_sentence(std::move(guard))});
        }
        auto body = sentence(depth - 1);
        if (pick == 7)
          return make_sentence(Forall{std::move(bindings), std::move(body)});
        return make_sentence(Exists{std::move(bindings), std::move(body)});
      }
    }
  }

private:
  TermPtr term(int depth) {
    int pick = depth <= 0 ? pick_int(0, 1) : pick_int(0, 3);
    switch (pick) {
      case 0:
        return make_term(Variable{var()});
      case 1:
        return make_term(Constant{name()});
      case 2: {
        Application a;
        a.head = name();
        int n = pick_int(1, 3);
        for (int i = 0; i < n; ++i) a.args.push_back(term(depth - 1));
        return make_term(std::move(a));
      }
      default: {
        TermTuple t;
        int n = pick_int(0, 3);
        for (int i = 0; i < n; ++i) t.items.push_back(term(depth - 1));
        return make_term(std::move(t));
      }
    }
  }

  QualifiedName name() {
    static const char* locals[] = {"object", "thing", "graph", "2-cell",
                                   "source"};
    static const char* prefixes[] = {"", "ur", "vlrg.ftn", "lrg.gph.mor",
                                     "2.cat"};
    QualifiedName qn;
    qn.local = locals[pick_int(0, 4)];
    const char* p = prefixes[pick_int(0, 4)];
    if (*p) qn.prefix = metalang::detail::split(p, '.');
    qn.raw = qn.qualified();
    return qn;
  }

  std::string var() {
    static const char* vars[] = {"?a", "?b", "?c0", "?f"};
    return vars[pick_int(0, 3)];
  }

  int pick_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  std::mt19937 rng_;
};

}  // namespace

TEST_CASE("round-trip: parse(print(ast)) == ast for random ASTs") {
  AstGen gen(20260810);
  for (int i = 0; i < 300; ++i) {
    auto s = gen.sentence(6);
    auto printed = print_canonical(s);
    auto reparsed = parse_sentence(printed);
    REQUIRE(equal(s, reparsed));
    REQUIRE(print_canonical(reparsed) == printed);
  }
}
