#pragma once

// The IFF metashell: a lisp-like first-order language with restricted
// quantification and namespaced identifiers. This header covers the
// abstract syntax, the parser, the canonical printer, free-variable
// computation, the restricted-quantification validator, and the
// categorical-design lint.

#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "iffkit/sexpr.hpp"

namespace iffkit::metalang {

using sexpr::ParseError;
using sexpr::ParseErrorKind;
using sexpr::SourceSpan;

// ---------------------------------------------------------------------------
// Names

// A namespaced identifier such as `vlrg.ftn:function`, `2.cat:morphism`,
// `SET.LIM.PBK:pullback` or a bare `collection`. Prefix segments are either
// all lowercase (general form) or all uppercase (special form); the local
// name is always lowercase.
struct QualifiedName {
  std::vector<std::string> prefix;  // namespace segments, possibly empty
  std::string local;
  std::string raw;      // original surface text
  bool special = false; // uppercase (special) prefix form

  std::string qualified() const {
    std::string out;
    for (const auto& seg : prefix) {
      out += seg;
      out += '.';
    }
    if (!out.empty()) out.back() = ':';
    return out + local;
  }

  friend bool operator==(const QualifiedName& a, const QualifiedName& b) {
    return a.prefix == b.prefix && a.local == b.local && a.special == b.special;
  }
  friend bool operator!=(const QualifiedName& a, const QualifiedName& b) {
    return !(a == b);
  }
  friend bool operator<(const QualifiedName& a, const QualifiedName& b) {
    return std::tie(a.prefix, a.local) < std::tie(b.prefix, b.local);
  }
};

namespace detail {

inline bool is_lower_seg(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-'))
      return false;
  return true;
}

inline bool is_upper_seg(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-'))
      return false;
  return true;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace detail

// Parses a surface identifier into a QualifiedName. Throws ParseError when
// the token violates the lexical rules (mixed case, empty segment, ...).
inline QualifiedName parse_name(const std::string& text,
                                const SourceSpan& span) {
  QualifiedName qn;
  qn.raw = text;
  std::string prefix_part, local_part;
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    local_part = text;
  } else {
    prefix_part = text.substr(0, colon);
    local_part = text.substr(colon + 1);
    if (prefix_part.empty() || local_part.find(':') != std::string::npos)
      throw ParseError(ParseErrorKind::Syntax, span,
                       "malformed qualified name '" + text + "'");
  }
  if (!detail::is_lower_seg(local_part))
    throw ParseError(ParseErrorKind::Syntax, span,
                     "invalid identifier '" + local_part + "'");
  qn.local = local_part;
  if (!prefix_part.empty()) {
    qn.prefix = detail::split(prefix_part, '.');
    bool all_lower = true, all_upper = true;
    for (const auto& seg : qn.prefix) {
      if (!detail::is_lower_seg(seg)) all_lower = false;
      if (!detail::is_upper_seg(seg)) all_upper = false;
    }
    if (!all_lower && !all_upper)
      throw ParseError(ParseErrorKind::Syntax, span,
                       "mixed-case namespace prefix '" + prefix_part + "'");
    qn.special = !all_lower && all_upper;
  }
  return qn;
}

// ---------------------------------------------------------------------------
// Terms

struct MetaTerm;
using TermPtr = std::shared_ptr<const MetaTerm>;

struct Variable {
  std::string name;  // includes the leading '?'
};

struct Constant {
  QualifiedName name;
};

struct Application {
  QualifiedName head;
  std::vector<TermPtr> args;  // nonempty
};

struct TermTuple {
  std::vector<TermPtr> items;  // surface [a b ...], possibly empty
};

struct MetaTerm {
  std::variant<Variable, Constant, Application, TermTuple> node;
  SourceSpan span;
};

inline TermPtr make_term(std::variant<Variable, Constant, Application,
                                      TermTuple> node,
                         SourceSpan span = {}) {
  auto t = std::make_shared<MetaTerm>();
  t->node = std::move(node);
  t->span = std::move(span);
  return t;
}

// Structural equality; source spans are ignored.
inline bool equal(const TermPtr& a, const TermPtr& b) {
  if (a->node.index() != b->node.index()) return false;
  if (auto* v = std::get_if<Variable>(&a->node))
    return v->name == std::get<Variable>(b->node).name;
  if (auto* c = std::get_if<Constant>(&a->node))
    return c->name == std::get<Constant>(b->node).name;
  if (auto* ap = std::get_if<Application>(&a->node)) {
    const auto& bp = std::get<Application>(b->node);
    if (ap->head != bp.head || ap->args.size() != bp.args.size()) return false;
    for (std::size_t i = 0; i < ap->args.size(); ++i)
      if (!equal(ap->args[i], bp.args[i])) return false;
    return true;
  }
  const auto& at = std::get<TermTuple>(a->node);
  const auto& bt = std::get<TermTuple>(b->node);
  if (at.items.size() != bt.items.size()) return false;
  for (std::size_t i = 0; i < at.items.size(); ++i)
    if (!equal(at.items[i], bt.items[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Sentences

struct MetaSentence;
using SentencePtr = std::shared_ptr<const MetaSentence>;

struct Atom {
  QualifiedName pred;
  std::vector<TermPtr> args;  // may be empty, e.g. a bare proposition `(p)`
};

struct Equal {
  TermPtr lhs, rhs;
};

struct Not {
  SentencePtr body;
};

struct And {
  std::vector<SentencePtr> items;  // n-ary; empty = vacuous truth
};

struct Or {
  std::vector<SentencePtr> items;
};

struct Implies {
  SentencePtr lhs, rhs;
};

struct Iff {
  SentencePtr lhs, rhs;
};

// One restricted-quantifier binding: a variable and its guard sentence.
struct Binding {
  std::string var;
  SentencePtr guard;
};

struct Forall {
  std::vector<Binding> bindings;
  SentencePtr body;
};

struct Exists {
  std::vector<Binding> bindings;
  SentencePtr body;
};

struct MetaSentence {
  std::variant<Atom, Equal, Not, And, Or, Implies, Iff, Forall, Exists> node;
  SourceSpan span;
};

inline SentencePtr make_sentence(
    std::variant<Atom, Equal, Not, And, Or, Implies, Iff, Forall, Exists> node,
    SourceSpan span = {}) {
  auto s = std::make_shared<MetaSentence>();
  s->node = std::move(node);
  s->span = std::move(span);
  return s;
}

inline bool equal(const SentencePtr& a, const SentencePtr& b);

namespace detail {
inline bool equal_bindings(const std::vector<Binding>& a,
                           const std::vector<Binding>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].var != b[i].var || !equal(a[i].guard, b[i].guard)) return false;
  return true;
}
}  // namespace detail

inline bool equal(const SentencePtr& a, const SentencePtr& b) {
  if (a->node.index() != b->node.index()) return false;
  if (auto* at = std::get_if<Atom>(&a->node)) {
    const auto& bt = std::get<Atom>(b->node);
    if (at->pred != bt.pred || at->args.size() != bt.args.size()) return false;
    for (std::size_t i = 0; i < at->args.size(); ++i)
      if (!equal(at->args[i], bt.args[i])) return false;
    return true;
  }
  if (auto* e = std::get_if<Equal>(&a->node)) {
    const auto& f = std::get<Equal>(b->node);
    return equal(e->lhs, f.lhs) && equal(e->rhs, f.rhs);
  }
  if (auto* n = std::get_if<Not>(&a->node))
    return equal(n->body, std::get<Not>(b->node).body);
  if (auto* c = std::get_if<And>(&a->node)) {
    const auto& d = std::get<And>(b->node);
    if (c->items.size() != d.items.size()) return false;
    for (std::size_t i = 0; i < c->items.size(); ++i)
      if (!equal(c->items[i], d.items[i])) return false;
    return true;
  }
  if (auto* c = std::get_if<Or>(&a->node)) {
    const auto& d = std::get<Or>(b->node);
    if (c->items.size() != d.items.size()) return false;
    for (std::size_t i = 0; i < c->items.size(); ++i)
      if (!equal(c->items[i], d.items[i])) return false;
    return true;
  }
  if (auto* im = std::get_if<Implies>(&a->node)) {
    const auto& jm = std::get<Implies>(b->node);
    return equal(im->lhs, jm.lhs) && equal(im->rhs, jm.rhs);
  }
  if (auto* im = std::get_if<Iff>(&a->node)) {
    const auto& jm = std::get<Iff>(b->node);
    return equal(im->lhs, jm.lhs) && equal(im->rhs, jm.rhs);
  }
  if (auto* q = std::get_if<Forall>(&a->node)) {
    const auto& r = std::get<Forall>(b->node);
    return detail::equal_bindings(q->bindings, r.bindings) &&
           equal(q->body, r.body);
  }
  const auto& q = std::get<Exists>(a->node);
  const auto& r = std::get<Exists>(b->node);
  return detail::equal_bindings(q.bindings, r.bindings) && equal(q.body, r.body);
}

// ---------------------------------------------------------------------------
// Parser

namespace detail {

inline const std::set<std::string>& keywords() {
  static const std::set<std::string> kw = {"and",    "or",     "implies",
                                           "iff",    "not",    "forall",
                                           "exists", "="};
  return kw;
}

inline bool is_variable_token(const std::string& t) {
  return !t.empty() && t[0] == '?';
}

inline std::string parse_variable(const std::string& t,
                                  const SourceSpan& span) {
  if (t.size() < 2 || !is_lower_seg(t.substr(1)))
    throw ParseError(ParseErrorKind::BadVariable, span,
                     "bad variable '" + t + "'");
  return t;
}

inline TermPtr term_from_node(const sexpr::Node& n);
inline SentencePtr sentence_from_node(const sexpr::Node& n);

inline TermPtr term_from_node(const sexpr::Node& n) {
  if (n.is_atom()) {
    const std::string& t = n.atom();
    if (is_variable_token(t))
      return make_term(Variable{parse_variable(t, n.span)}, n.span);
    if (keywords().count(t))
      throw ParseError(ParseErrorKind::UnknownHead, n.span,
                       "keyword '" + t + "' used as a term");
    return make_term(Constant{parse_name(t, n.span)}, n.span);
  }
  const sexpr::List& l = n.list();
  if (l.open == '[') {
    TermTuple tup;
    for (const auto& item : l.items) tup.items.push_back(term_from_node(item));
    return make_term(std::move(tup), n.span);
  }
  if (l.items.empty())
    throw ParseError(ParseErrorKind::Syntax, n.span, "empty application");
  const sexpr::Node& head = l.items[0];
  if (!head.is_atom() || is_variable_token(head.atom()) ||
      keywords().count(head.atom()))
    throw ParseError(ParseErrorKind::UnknownHead, head.span,
                     "expected a function name in application head");
  Application app;
  app.head = parse_name(head.atom(), head.span);
  for (std::size_t i = 1; i < l.items.size(); ++i)
    app.args.push_back(term_from_node(l.items[i]));
  if (app.args.empty())
    throw ParseError(ParseErrorKind::Syntax, n.span,
                     "application needs at least one argument");
  return make_term(std::move(app), n.span);
}

inline std::vector<Binding> bindings_from_node(const sexpr::Node& n) {
  if (!n.is_list() || n.list().open != '(')
    throw ParseError(ParseErrorKind::Syntax, n.span,
                     "expected a quantifier binding list");
  const auto& items = n.list().items;
  if (items.empty() || items.size() % 2 != 0)
    throw ParseError(ParseErrorKind::Syntax, n.span,
                     "binding list must alternate variable/guard pairs");
  std::vector<Binding> out;
  for (std::size_t i = 0; i < items.size(); i += 2) {
    const sexpr::Node& v = items[i];
    if (!v.is_atom() || !is_variable_token(v.atom()))
      throw ParseError(ParseErrorKind::BadVariable, v.span,
                       "expected a bound variable");
    Binding b;
    b.var = parse_variable(v.atom(), v.span);
    b.guard = sentence_from_node(items[i + 1]);
    out.push_back(std::move(b));
  }
  return out;
}

inline SentencePtr sentence_from_node(const sexpr::Node& n) {
  if (!n.is_list() || n.list().open != '(')
    throw ParseError(ParseErrorKind::Syntax, n.span,
                     "expected a sentence (parenthesized form)");
  const auto& items = n.list().items;
  if (items.empty())
    throw ParseError(ParseErrorKind::Syntax, n.span, "empty sentence");
  const sexpr::Node& head = items[0];
  if (!head.is_atom())
    throw ParseError(ParseErrorKind::UnknownHead, head.span,
                     "expected a connective or predicate in head position");
  const std::string& h = head.atom();
  if (is_variable_token(h))
    throw ParseError(ParseErrorKind::UnknownHead, head.span,
                     "variable in head position");
  auto arity_error = [&](const char* what) {
    return ParseError(ParseErrorKind::Syntax, n.span,
                      std::string("'") + h + "' expects " + what);
  };
  if (h == "not") {
    if (items.size() != 2) throw arity_error("exactly one sentence");
    return make_sentence(Not{sentence_from_node(items[1])}, n.span);
  }
  if (h == "and" || h == "or") {
    std::vector<SentencePtr> parts;
    for (std::size_t i = 1; i < items.size(); ++i)
      parts.push_back(sentence_from_node(items[i]));
    if (h == "and") return make_sentence(And{std::move(parts)}, n.span);
    return make_sentence(Or{std::move(parts)}, n.span);
  }
  if (h == "implies" || h == "iff") {
    if (items.size() != 3) throw arity_error("exactly two sentences");
    auto lhs = sentence_from_node(items[1]);
    auto rhs = sentence_from_node(items[2]);
    if (h == "implies")
      return make_sentence(Implies{std::move(lhs), std::move(rhs)}, n.span);
    return make_sentence(Iff{std::move(lhs), std::move(rhs)}, n.span);
  }
  if (h == "forall" || h == "exists") {
    if (items.size() != 3) throw arity_error("a binding list and one body");
    auto bindings = bindings_from_node(items[1]);
    auto body = sentence_from_node(items[2]);
    if (h == "forall")
      return make_sentence(Forall{std::move(bindings), std::move(body)},
                           n.span);
    return make_sentence(Exists{std::move(bindings), std::move(body)}, n.span);
  }
  if (h == "=") {
    if (items.size() != 3) throw arity_error("exactly two terms");
    return make_sentence(
        Equal{term_from_node(items[1]), term_from_node(items[2])}, n.span);
  }
  Atom atom;
  atom.pred = parse_name(h, head.span);
  for (std::size_t i = 1; i < items.size(); ++i)
    atom.args.push_back(term_from_node(items[i]));
  return make_sentence(std::move(atom), n.span);
}

}  // namespace detail

inline SentencePtr parse_sentence(std::string_view text,
                                  const std::string& file = "<input>") {
  return detail::sentence_from_node(sexpr::read_one(text, file));
}

inline std::vector<SentencePtr> parse_sentences(
    std::string_view text, const std::string& file = "<input>") {
  std::vector<SentencePtr> out;
  for (const auto& n : sexpr::read_all(text, file))
    out.push_back(detail::sentence_from_node(n));
  return out;
}

inline std::vector<SentencePtr> parse_file(const std::string& path) {
  return parse_sentences(sexpr::slurp_file(path), path);
}

// ---------------------------------------------------------------------------
// Canonical printer. parse_sentence(print_canonical(s)) == s.

inline void print_term(std::ostream& os, const TermPtr& t) {
  if (auto* v = std::get_if<Variable>(&t->node)) {
    os << v->name;
  } else if (auto* c = std::get_if<Constant>(&t->node)) {
    os << c->name.qualified();
  } else if (auto* a = std::get_if<Application>(&t->node)) {
    os << '(' << a->head.qualified();
    for (const auto& arg : a->args) {
      os << ' ';
      print_term(os, arg);
    }
    os << ')';
  } else {
    const auto& tup = std::get<TermTuple>(t->node);
    os << '[';
    for (std::size_t i = 0; i < tup.items.size(); ++i) {
      if (i) os << ' ';
      print_term(os, tup.items[i]);
    }
    os << ']';
  }
}

inline void print_sentence(std::ostream& os, const SentencePtr& s) {
  auto list = [&](const char* head, const std::vector<SentencePtr>& items) {
    os << '(' << head;
    for (const auto& item : items) {
      os << ' ';
      print_sentence(os, item);
    }
    os << ')';
  };
  if (auto* a = std::get_if<Atom>(&s->node)) {
    os << '(' << a->pred.qualified();
    for (const auto& arg : a->args) {
      os << ' ';
      print_term(os, arg);
    }
    os << ')';
  } else if (auto* e = std::get_if<Equal>(&s->node)) {
    os << "(= ";
    print_term(os, e->lhs);
    os << ' ';
    print_term(os, e->rhs);
    os << ')';
  } else if (auto* n = std::get_if<Not>(&s->node)) {
    os << "(not ";
    print_sentence(os, n->body);
    os << ')';
  } else if (auto* c = std::get_if<And>(&s->node)) {
    list("and", c->items);
  } else if (auto* c = std::get_if<Or>(&s->node)) {
    list("or", c->items);
  } else if (auto* im = std::get_if<Implies>(&s->node)) {
    os << "(implies ";
    print_sentence(os, im->lhs);
    os << ' ';
    print_sentence(os, im->rhs);
    os << ')';
  } else if (auto* im = std::get_if<Iff>(&s->node)) {
    os << "(iff ";
    print_sentence(os, im->lhs);
    os << ' ';
    print_sentence(os, im->rhs);
    os << ')';
  } else {
    const char* head = std::holds_alternative<Forall>(s->node) ? "forall"
                                                               : "exists";
    const auto& bindings = std::holds_alternative<Forall>(s->node)
                               ? std::get<Forall>(s->node).bindings
                               : std::get<Exists>(s->node).bindings;
    const auto& body = std::holds_alternative<Forall>(s->node)
                           ? std::get<Forall>(s->node).body
                           : std::get<Exists>(s->node).body;
    os << '(' << head << " (";
    for (std::size_t i = 0; i < bindings.size(); ++i) {
      if (i) os << ' ';
      os << bindings[i].var << ' ';
      print_sentence(os, bindings[i].guard);
    }
    os << ") ";
    print_sentence(os, body);
    os << ')';
  }
}

inline std::string print_canonical(const SentencePtr& s) {
  std::ostringstream os;
  print_sentence(os, s);
  return os.str();
}

inline std::string print_canonical(const TermPtr& t) {
  std::ostringstream os;
  print_term(os, t);
  return os.str();
}

// ---------------------------------------------------------------------------
// Free variables and restricted quantification

namespace detail {

inline void term_vars(const TermPtr& t, std::set<std::string>& out) {
  if (auto* v = std::get_if<Variable>(&t->node)) {
    out.insert(v->name);
  } else if (auto* a = std::get_if<Application>(&t->node)) {
    for (const auto& arg : a->args) term_vars(arg, out);
  } else if (auto* tup = std::get_if<TermTuple>(&t->node)) {
    for (const auto& item : tup->items) term_vars(item, out);
  }
}

inline void free_vars(const SentencePtr& s, std::set<std::string>& bound,
                      std::set<std::string>& out) {
  if (auto* a = std::get_if<Atom>(&s->node)) {
    std::set<std::string> vs;
    for (const auto& arg : a->args) term_vars(arg, vs);
    for (const auto& v : vs)
      if (!bound.count(v)) out.insert(v);
  } else if (auto* e = std::get_if<Equal>(&s->node)) {
    std::set<std::string> vs;
    term_vars(e->lhs, vs);
    term_vars(e->rhs, vs);
    for (const auto& v : vs)
      if (!bound.count(v)) out.insert(v);
  } else if (auto* n = std::get_if<Not>(&s->node)) {
    free_vars(n->body, bound, out);
  } else if (auto* c = std::get_if<And>(&s->node)) {
    for (const auto& item : c->items) free_vars(item, bound, out);
  } else if (auto* c = std::get_if<Or>(&s->node)) {
    for (const auto& item : c->items) free_vars(item, bound, out);
  } else if (auto* im = std::get_if<Implies>(&s->node)) {
    free_vars(im->lhs, bound, out);
    free_vars(im->rhs, bound, out);
  } else if (auto* im = std::get_if<Iff>(&s->node)) {
    free_vars(im->lhs, bound, out);
    free_vars(im->rhs, bound, out);
  } else {
    const auto& bindings = std::holds_alternative<Forall>(s->node)
                               ? std::get<Forall>(s->node).bindings
                               : std::get<Exists>(s->node).bindings;
    const auto& body = std::holds_alternative<Forall>(s->node)
                           ? std::get<Forall>(s->node).body
                           : std::get<Exists>(s->node).body;
    std::set<std::string> inner = bound;
    for (const auto& b : bindings) inner.insert(b.var);
    for (const auto& b : bindings) free_vars(b.guard, inner, out);
    free_vars(body, inner, out);
  }
}

}  // namespace detail

inline std::set<std::string> free_variables(const SentencePtr& s) {
  std::set<std::string> bound, out;
  detail::free_vars(s, bound, out);
  return out;
}

// A restricted-quantification violation: some binding's guard does not
// mention the bound variable.
struct GuardViolation {
  SourceSpan span;
  std::string var;
};

inline void collect_guard_violations(const SentencePtr& s,
                                     std::vector<GuardViolation>& out) {
  if (auto* n = std::get_if<Not>(&s->node)) {
    collect_guard_violations(n->body, out);
  } else if (auto* c = std::get_if<And>(&s->node)) {
    for (const auto& item : c->items) collect_guard_violations(item, out);
  } else if (auto* c = std::get_if<Or>(&s->node)) {
    for (const auto& item : c->items) collect_guard_violations(item, out);
  } else if (auto* im = std::get_if<Implies>(&s->node)) {
    collect_guard_violations(im->lhs, out);
    collect_guard_violations(im->rhs, out);
  } else if (auto* im = std::get_if<Iff>(&s->node)) {
    collect_guard_violations(im->lhs, out);
    collect_guard_violations(im->rhs, out);
  } else if (std::holds_alternative<Forall>(s->node) ||
             std::holds_alternative<Exists>(s->node)) {
    const auto& bindings = std::holds_alternative<Forall>(s->node)
                               ? std::get<Forall>(s->node).bindings
                               : std::get<Exists>(s->node).bindings;
    const auto& body = std::holds_alternative<Forall>(s->node)
                           ? std::get<Forall>(s->node).body
                           : std::get<Exists>(s->node).body;
    for (const auto& b : bindings) {
      std::set<std::string> bound, mentioned;
      detail::free_vars(b.guard, bound, mentioned);
      if (!mentioned.count(b.var)) out.push_back({s->span, b.var});
      collect_guard_violations(b.guard, out);
    }
    collect_guard_violations(body, out);
  }
}

// Restricted-quantification validator: every binding's guard must mention
// its bound variable.
inline std::vector<GuardViolation> check_restricted_quantification(
    const SentencePtr& s) {
  std::vector<GuardViolation> out;
  collect_guard_violations(s, out);
  return out;
}

// ---------------------------------------------------------------------------
// Categorical-design lint: a sentence complies when it is an atom or an
// equation over variable-free terms; quantifiers, connectives and variables
// are reported as offending constructs.

struct SentenceCompliance {
  std::size_t index = 0;
  SourceSpan span;
  bool compliant = true;
  std::vector<std::string> offending;  // sorted, unique construct names
};

struct ComplianceReport {
  std::vector<SentenceCompliance> sentences;
  std::size_t compliant_count = 0;
  double ratio = 1.0;  // 1.0 when there are no sentences
};

namespace detail {

inline bool has_variables(const TermPtr& t) {
  std::set<std::string> vs;
  term_vars(t, vs);
  return !vs.empty();
}

inline void offending_constructs(const SentencePtr& s,
                                 std::set<std::string>& out) {
  if (auto* a = std::get_if<Atom>(&s->node)) {
    for (const auto& arg : a->args)
      if (has_variables(arg)) out.insert("variable");
  } else if (auto* e = std::get_if<Equal>(&s->node)) {
    if (has_variables(e->lhs) || has_variables(e->rhs)) out.insert("variable");
  } else if (auto* n = std::get_if<Not>(&s->node)) {
    out.insert("not");
    offending_constructs(n->body, out);
  } else if (auto* c = std::get_if<And>(&s->node)) {
    out.insert("and");
    for (const auto& item : c->items) offending_constructs(item, out);
  } else if (auto* c = std::get_if<Or>(&s->node)) {
    out.insert("or");
    for (const auto& item : c->items) offending_constructs(item, out);
  } else if (auto* im = std::get_if<Implies>(&s->node)) {
    out.insert("implies");
    offending_constructs(im->lhs, out);
    offending_constructs(im->rhs, out);
  } else if (auto* im = std::get_if<Iff>(&s->node)) {
    out.insert("iff");
    offending_constructs(im->lhs, out);
    offending_constructs(im->rhs, out);
  } else if (std::holds_alternative<Forall>(s->node)) {
    out.insert("forall");
    out.insert("variable");
    const auto& q = std::get<Forall>(s->node);
    for (const auto& b : q.bindings) offending_constructs(b.guard, out);
    offending_constructs(q.body, out);
  } else {
    out.insert("exists");
    out.insert("variable");
    const auto& q = std::get<Exists>(s->node);
    for (const auto& b : q.bindings) offending_constructs(b.guard, out);
    offending_constructs(q.body, out);
  }
}

}  // namespace detail

inline ComplianceReport lint_categorical_design(
    const std::vector<SentencePtr>& sentences) {
  ComplianceReport report;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    SentenceCompliance sc;
    sc.index = i;
    sc.span = sentences[i]->span;
    std::set<std::string> offending;
    detail::offending_constructs(sentences[i], offending);
    sc.offending.assign(offending.begin(), offending.end());
    sc.compliant = sc.offending.empty();
    if (sc.compliant) ++report.compliant_count;
    report.sentences.push_back(std::move(sc));
  }
  report.ratio = report.sentences.empty()
                     ? 1.0
                     : static_cast<double>(report.compliant_count) /
                           static_cast<double>(report.sentences.size());
  return report;
}

}  // namespace iffkit::metalang
