#pragma once

// Term languages over indicia arities: variables, function symbols with
// variable-subset arities, terms, indexed term tuples, substitution, tuple
// composition, language morphisms, coproducts, expression languages and the
// shared-variable pullback that forms FOL languages.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "iffkit/sexpr.hpp"

namespace iffkit::termlang {

using VarSet = std::set<std::string>;

class IndexMismatch : public std::runtime_error {
public:
  explicit IndexMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

class VariableMismatch : public std::runtime_error {
public:
  explicit VariableMismatch(const std::string& msg)
      : std::runtime_error(msg) {}
};

class NotABijection : public std::runtime_error {
public:
  explicit NotABijection(const std::string& msg) : std::runtime_error(msg) {}
};

struct TermLanguage {
  std::string id;
  std::vector<std::string> variables;       // ordered for determinism
  std::vector<std::string> symbols;
  std::map<std::string, VarSet> arity;      // symbol → indicia

  VarSet variable_set() const {
    return VarSet(variables.begin(), variables.end());
  }
};

inline void validate(const TermLanguage& lang) {
  auto vars = lang.variable_set();
  if (vars.size() != lang.variables.size())
    throw std::invalid_argument("duplicate variables");
  std::set<std::string> syms(lang.symbols.begin(), lang.symbols.end());
  if (syms.size() != lang.symbols.size())
    throw std::invalid_argument("duplicate symbols");
  for (const auto& f : lang.symbols) {
    auto it = lang.arity.find(f);
    if (it == lang.arity.end())
      throw std::invalid_argument("symbol '" + f + "' has no arity");
    for (const auto& v : it->second)
      if (!vars.count(v))
        throw std::invalid_argument("arity of '" + f +
                                    "' uses an unknown variable");
  }
}

// ---------------------------------------------------------------------------
// Terms and tuples

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct VarCase {
  std::string var;
};

struct AppCase {
  std::string symbol;
  std::map<std::string, TermPtr> args;  // keyed exactly by arity(symbol)
};

struct Term {
  std::variant<VarCase, AppCase> node;
};

inline TermPtr var_term(std::string v) {
  auto t = std::make_shared<Term>();
  t->node = VarCase{std::move(v)};
  return t;
}

inline TermPtr app_term(std::string symbol,
                        std::map<std::string, TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->node = AppCase{std::move(symbol), std::move(args)};
  return t;
}

inline bool equal(const TermPtr& a, const TermPtr& b) {
  if (a->node.index() != b->node.index()) return false;
  if (auto* v = std::get_if<VarCase>(&a->node))
    return v->var == std::get<VarCase>(b->node).var;
  const auto& x = std::get<AppCase>(a->node);
  const auto& y = std::get<AppCase>(b->node);
  if (x.symbol != y.symbol || x.args.size() != y.args.size()) return false;
  for (const auto& [k, t] : x.args) {
    auto it = y.args.find(k);
    if (it == y.args.end() || !equal(t, it->second)) return false;
  }
  return true;
}

// The set of variables occurring in a term (its arity).
inline VarSet term_arity(const TermPtr& t) {
  VarSet out;
  if (auto* v = std::get_if<VarCase>(&t->node)) {
    out.insert(v->var);
    return out;
  }
  for (const auto& [k, sub] : std::get<AppCase>(t->node).args)
    for (const auto& v : term_arity(sub)) out.insert(v);
  return out;
}

inline int term_depth(const TermPtr& t) {
  if (std::holds_alternative<VarCase>(t->node)) return 0;
  int deepest = 0;
  for (const auto& [k, sub] : std::get<AppCase>(t->node).args)
    deepest = std::max(deepest, term_depth(sub));
  return 1 + deepest;
}

inline void validate_term(const TermLanguage& lang, const TermPtr& t) {
  if (auto* v = std::get_if<VarCase>(&t->node)) {
    if (!lang.variable_set().count(v->var))
      throw std::invalid_argument("unknown variable '" + v->var + "'");
    return;
  }
  const auto& app = std::get<AppCase>(t->node);
  auto it = lang.arity.find(app.symbol);
  if (it == lang.arity.end())
    throw std::invalid_argument("unknown symbol '" + app.symbol + "'");
  VarSet keys;
  for (const auto& [k, sub] : app.args) {
    keys.insert(k);
    validate_term(lang, sub);
  }
  if (keys != it->second)
    throw std::invalid_argument("arguments of '" + app.symbol +
                                "' do not match its arity");
}

// A tuple of terms indexed by `index`, with all free variables inside
// `domain`. As a Lawvere morphism it runs domain → index.
struct TermTuple {
  VarSet domain;  // I
  VarSet index;   // J
  std::map<std::string, TermPtr> entries;  // keyed exactly by index
};

inline void validate(const TermLanguage& lang, const TermTuple& s) {
  VarSet keys;
  for (const auto& [k, t] : s.entries) {
    keys.insert(k);
    validate_term(lang, t);
    for (const auto& v : term_arity(t))
      if (!s.domain.count(v))
        throw std::invalid_argument("entry arity escapes the tuple domain");
  }
  if (keys != s.index)
    throw std::invalid_argument("tuple entries do not match its index");
}

inline bool equal(const TermTuple& a, const TermTuple& b) {
  if (a.domain != b.domain || a.index != b.index) return false;
  for (const auto& [k, t] : a.entries)
    if (!equal(t, b.entries.at(k))) return false;
  return true;
}

inline TermTuple identity_tuple(const VarSet& vars) {
  TermTuple out{vars, vars, {}};
  for (const auto& v : vars) out.entries[v] = var_term(v);
  return out;
}

inline TermTuple singleton_tuple(const std::string& at, const TermPtr& t,
                                 const VarSet& domain) {
  return TermTuple{domain, {at}, {{at, t}}};
}

// Replaces each variable v of t by s.entries(v); t's arity must lie in
// s.index.
inline TermPtr substitute(const TermPtr& t, const TermTuple& s) {
  for (const auto& v : term_arity(t))
    if (!s.index.count(v))
      throw IndexMismatch("variable '" + v + "' missing from tuple index");
  struct Walk {
    const TermTuple& s;
    TermPtr operator()(const TermPtr& t) const {
      if (auto* v = std::get_if<VarCase>(&t->node))
        return s.entries.at(v->var);
      const auto& app = std::get<AppCase>(t->node);
      std::map<std::string, TermPtr> args;
      for (const auto& [k, sub] : app.args) args[k] = (*this)(sub);
      return app_term(app.symbol, std::move(args));
    }
  };
  return Walk{s}(t);
}

// s : I → J then r : J → K, by substituting s's entries into r's entries.
inline TermTuple tuple_compose(const TermTuple& s, const TermTuple& r) {
  if (r.domain != s.index)
    throw IndexMismatch("tuple composition: inner index != outer domain");
  TermTuple out{s.domain, r.index, {}};
  for (const auto& [k, t] : r.entries) out.entries[k] = substitute(t, s);
  return out;
}

// ---------------------------------------------------------------------------
// Language morphisms: a variable bijection plus an arity-preserving symbol
// map (the commuting set quartet).

struct TermLanguageMorphism {
  TermLanguage source, target;
  std::map<std::string, std::string> var_map;  // bijection V1 → V2
  std::map<std::string, std::string> sym_map;  // F1 → F2
};

inline void validate(const TermLanguageMorphism& m) {
  validate(m.source);
  validate(m.target);
  auto tvars = m.target.variable_set();
  std::set<std::string> images;
  for (const auto& v : m.source.variables) {
    auto it = m.var_map.find(v);
    if (it == m.var_map.end() || !tvars.count(it->second))
      throw NotABijection("variable '" + v + "' has no image");
    images.insert(it->second);
  }
  if (images.size() != m.source.variables.size() ||
      images.size() != tvars.size())
    throw NotABijection("variable map is not a bijection");
  std::set<std::string> tsyms(m.target.symbols.begin(),
                              m.target.symbols.end());
  for (const auto& f : m.source.symbols) {
    auto it = m.sym_map.find(f);
    if (it == m.sym_map.end() || !tsyms.count(it->second))
      throw std::invalid_argument("symbol '" + f + "' has no image");
    VarSet mapped;
    for (const auto& v : m.source.arity.at(f))
      mapped.insert(m.var_map.at(v));
    if (mapped != m.target.arity.at(it->second))
      throw std::invalid_argument("morphism does not preserve the arity of '" +
                                  f + "'");
  }
}

inline TermLanguageMorphism identity_morphism(const TermLanguage& lang) {
  TermLanguageMorphism m{lang, lang, {}, {}};
  for (const auto& v : lang.variables) m.var_map[v] = v;
  for (const auto& f : lang.symbols) m.sym_map[f] = f;
  return m;
}

inline TermLanguageMorphism compose(const TermLanguageMorphism& g,
                                    const TermLanguageMorphism& f) {
  TermLanguageMorphism out{f.source, g.target, {}, {}};
  for (const auto& [v, w] : f.var_map) out.var_map[v] = g.var_map.at(w);
  for (const auto& [a, b] : f.sym_map) out.sym_map[a] = g.sym_map.at(b);
  return out;
}

inline TermPtr apply_morphism(const TermLanguageMorphism& m,
                              const TermPtr& t) {
  if (auto* v = std::get_if<VarCase>(&t->node))
    return var_term(m.var_map.at(v->var));
  const auto& app = std::get<AppCase>(t->node);
  std::map<std::string, TermPtr> args;
  for (const auto& [k, sub] : app.args)
    args[m.var_map.at(k)] = apply_morphism(m, sub);
  return app_term(m.sym_map.at(app.symbol), std::move(args));
}

inline TermTuple apply_morphism(const TermLanguageMorphism& m,
                                const TermTuple& s) {
  TermTuple out;
  for (const auto& v : s.domain) out.domain.insert(m.var_map.at(v));
  for (const auto& v : s.index) out.index.insert(m.var_map.at(v));
  for (const auto& [k, t] : s.entries)
    out.entries[m.var_map.at(k)] = apply_morphism(m, t);
  return out;
}

// ---------------------------------------------------------------------------
// Coproduct of term languages over a shared variable set: the tagged
// disjoint union of symbols, with injection morphisms.

struct LanguageCoproduct {
  TermLanguage language;
  TermLanguageMorphism inl, inr;
};

inline LanguageCoproduct coproduct_languages(const TermLanguage& a,
                                             const TermLanguage& b) {
  if (a.variables != b.variables)
    throw VariableMismatch("coproduct requires a shared variable set");
  LanguageCoproduct out;
  out.language.id = a.id + "+" + b.id;
  out.language.variables = a.variables;
  for (const auto& f : a.symbols) {
    std::string tag = "inl-" + f;
    out.language.symbols.push_back(tag);
    out.language.arity[tag] = a.arity.at(f);
  }
  for (const auto& g : b.symbols) {
    std::string tag = "inr-" + g;
    out.language.symbols.push_back(tag);
    out.language.arity[tag] = b.arity.at(g);
  }
  out.inl.source = a;
  out.inl.target = out.language;
  out.inr.source = b;
  out.inr.target = out.language;
  for (const auto& v : a.variables) {
    out.inl.var_map[v] = v;
    out.inr.var_map[v] = v;
  }
  for (const auto& f : a.symbols) out.inl.sym_map[f] = "inl-" + f;
  for (const auto& g : b.symbols) out.inr.sym_map[g] = "inr-" + g;
  return out;
}

// ---------------------------------------------------------------------------
// Expression languages and the FOL pullback

struct ExpressionLanguage {
  std::string id;
  std::vector<std::string> variables;
  std::vector<std::string> relation_symbols;
  std::map<std::string, VarSet> arity;

  VarSet variable_set() const {
    return VarSet(variables.begin(), variables.end());
  }
};

inline void validate(const ExpressionLanguage& lang) {
  auto vars = lang.variable_set();
  for (const auto& r : lang.relation_symbols) {
    auto it = lang.arity.find(r);
    if (it == lang.arity.end())
      throw std::invalid_argument("relation '" + r + "' has no arity");
    for (const auto& v : it->second)
      if (!vars.count(v))
        throw std::invalid_argument("arity of '" + r +
                                    "' uses an unknown variable");
  }
}

// Term and expression parts over one shared variable set.
struct FOLLanguage {
  std::vector<std::string> variables;
  TermLanguage term_part;
  ExpressionLanguage expr_part;
};

inline void validate(const FOLLanguage& lang) {
  validate(lang.term_part);
  validate(lang.expr_part);
  if (lang.term_part.variables != lang.variables ||
      lang.expr_part.variables != lang.variables)
    throw std::invalid_argument("FOL parts must share the variable set");
}

// Pulls the two parts back over a variable bijection; the term part's
// variables become the canonical shared set and the expression part is
// renamed along the bijection.
inline FOLLanguage pullback_fol(
    const ExpressionLanguage& e, const TermLanguage& t,
    const std::map<std::string, std::string>& var_bijection) {
  std::set<std::string> images;
  auto tvars = t.variable_set();
  for (const auto& v : e.variables) {
    auto it = var_bijection.find(v);
    if (it == var_bijection.end() || !tvars.count(it->second))
      throw NotABijection("expression variable '" + v + "' has no image");
    images.insert(it->second);
  }
  if (images.size() != e.variables.size() || images.size() != tvars.size())
    throw NotABijection("variable map is not a bijection");
  FOLLanguage out;
  out.variables = t.variables;
  out.term_part = t;
  out.expr_part.id = e.id;
  out.expr_part.variables = t.variables;
  out.expr_part.relation_symbols = e.relation_symbols;
  for (const auto& r : e.relation_symbols) {
    VarSet mapped;
    for (const auto& v : e.arity.at(r)) mapped.insert(var_bijection.at(v));
    out.expr_part.arity[r] = mapped;
  }
  validate(out);
  return out;
}

// ---------------------------------------------------------------------------
// Equational presentations. The syntactic quotient of the Lawvere category
// is not computed; equations act semantically through bounded algebras.

struct Equation {
  VarSet over;  // indicia containing both sides' free variables
  TermPtr lhs, rhs;
};

struct EquationalPresentation {
  TermLanguage language;
  std::vector<Equation> equations;
};

inline void validate(const EquationalPresentation& p) {
  validate(p.language);
  for (const auto& eq : p.equations) {
    validate_term(p.language, eq.lhs);
    validate_term(p.language, eq.rhs);
    for (const auto& v : term_arity(eq.lhs))
      if (!eq.over.count(v))
        throw std::invalid_argument("equation lhs escapes its indicia");
    for (const auto& v : term_arity(eq.rhs))
      if (!eq.over.count(v))
        throw std::invalid_argument("equation rhs escapes its indicia");
  }
}

// ---------------------------------------------------------------------------
// Printing and corpus files
//   (term-language <id> (vars x y) (symbol f (arity x y)) ...)
//   terms: a variable prints bare, an application as (f <arg>...) with the
//   arguments in the sorted order of f's arity variables.

inline std::string print_term(const TermPtr& t) {
  if (auto* v = std::get_if<VarCase>(&t->node)) return v->var;
  const auto& app = std::get<AppCase>(t->node);
  std::ostringstream os;
  os << '(' << app.symbol;
  for (const auto& [k, sub] : app.args) os << ' ' << print_term(sub);
  os << ')';
  return os.str();
}

inline std::string print_tuple(const TermTuple& s) {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (const auto& [k, t] : s.entries) {
    if (!first) os << ' ';
    os << '(' << k << " := " << print_term(t) << ')';
    first = false;
  }
  os << ']';
  return os.str();
}

inline TermPtr parse_term(const TermLanguage& lang, const sexpr::Node& n) {
  if (n.is_atom()) {
    if (!lang.variable_set().count(n.atom()))
      throw sexpr::ParseError(sexpr::ParseErrorKind::Syntax, n.span,
                              "unknown variable '" + n.atom() + "'");
    return var_term(n.atom());
  }
  const auto& items = n.list().items;
  if (items.empty() || !items[0].is_atom())
    throw sexpr::ParseError(sexpr::ParseErrorKind::Syntax, n.span,
                            "expected (symbol args...)");
  const std::string& f = items[0].atom();
  auto it = lang.arity.find(f);
  if (it == lang.arity.end())
    throw sexpr::ParseError(sexpr::ParseErrorKind::UnknownHead, items[0].span,
                            "unknown symbol '" + f + "'");
  if (items.size() - 1 != it->second.size())
    throw sexpr::ParseError(sexpr::ParseErrorKind::Syntax, n.span,
                            "wrong argument count for '" + f + "'");
  std::map<std::string, TermPtr> args;
  std::size_t i = 1;
  for (const auto& v : it->second) args[v] = parse_term(lang, items[i++]);
  return app_term(f, std::move(args));
}

inline TermLanguage parse_language(const sexpr::Node& n) {
  const auto& items = n.list().items;
  if (items.empty() || !items[0].is_atom() ||
      items[0].atom() != "term-language")
    throw sexpr::ParseError(sexpr::ParseErrorKind::UnknownHead, n.span,
                            "expected (term-language ...)");
  TermLanguage lang;
  lang.id = items.at(1).atom();
  for (std::size_t i = 2; i < items.size(); ++i) {
    const auto& sub = items[i].list().items;
    const std::string& tag = sub.at(0).atom();
    if (tag == "vars") {
      for (std::size_t k = 1; k < sub.size(); ++k)
        lang.variables.push_back(sub[k].atom());
    } else if (tag == "symbol") {
      const std::string& f = sub.at(1).atom();
      VarSet arity;
      const auto& ar = sub.at(2).list().items;
      if (ar.empty() || ar[0].atom() != "arity")
        throw sexpr::ParseError(sexpr::ParseErrorKind::Syntax, sub.at(2).span,
                                "expected (arity vars...)");
      for (std::size_t k = 1; k < ar.size(); ++k) arity.insert(ar[k].atom());
      lang.symbols.push_back(f);
      lang.arity[f] = std::move(arity);
    } else {
      throw sexpr::ParseError(sexpr::ParseErrorKind::UnknownHead,
                              items[i].span, "unknown section '" + tag + "'");
    }
  }
  validate(lang);
  return lang;
}

inline TermLanguage parse_language_text(const std::string& text,
                                        const std::string& file = "<input>") {
  return parse_language(sexpr::read_one(text, file));
}

inline std::string print_language(const TermLanguage& lang) {
  std::ostringstream os;
  os << "(term-language " << lang.id << " (vars";
  for (const auto& v : lang.variables) os << ' ' << v;
  os << ')';
  for (const auto& f : lang.symbols) {
    os << " (symbol " << f << " (arity";
    for (const auto& v : lang.arity.at(f)) os << ' ' << v;
    os << "))";
  }
  os << ')';
  return os.str();
}

inline Equation parse_equation(const TermLanguage& lang, const sexpr::Node& n) {
  const auto& items = n.list().items;
  if (items.size() != 4 || !items[0].is_atom() ||
      items[0].atom() != "equation")
    throw sexpr::ParseError(sexpr::ParseErrorKind::Syntax, n.span,
                            "expected (equation (over ...) lhs rhs)");
  Equation eq;
  const auto& over = items[1].list().items;
  if (over.empty() || over[0].atom() != "over")
    throw sexpr::ParseError(sexpr::ParseErrorKind::Syntax, items[1].span,
                            "expected (over vars...)");
  for (std::size_t k = 1; k < over.size(); ++k) eq.over.insert(over[k].atom());
  eq.lhs = parse_term(lang, items[2]);
  eq.rhs = parse_term(lang, items[3]);
  return eq;
}

}  // namespace iffkit::termlang
