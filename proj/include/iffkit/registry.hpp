#pragma once

// Metalevels, namespace prefixes, vocabulary inventories and the
// conceptual-warrant check.
//
// A namespace is addressed by four surface forms: the general dotted form
// with a level alias (`lrg.cat`), the numeric form (`2.cat`), the bare
// common-use form (`cat`, requires a declared or unique common level), and
// the uppercase special form (`CAT`). When a top-level concept is registered
// at exactly one metalevel that level is its common level by default; an
// explicit declaration overrides.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "iffkit/metalang.hpp"

namespace iffkit::registry {

enum class TermKind { set, function, relation };

inline const char* kind_name(TermKind k) {
  switch (k) {
    case TermKind::set: return "set";
    case TermKind::function: return "function";
    case TermKind::relation: return "relation";
  }
  return "?";
}

inline std::optional<TermKind> kind_from_name(const std::string& s) {
  if (s == "set") return TermKind::set;
  if (s == "function") return TermKind::function;
  if (s == "relation") return TermKind::relation;
  return std::nullopt;
}

// The five metalevels: 0 object, 1 small, 2 large, 3 very large, 4 ur.
inline constexpr int kMaxLevel = 4;
inline constexpr std::array<const char*, 5> kLevelAliases = {
    "obj", "sml", "lrg", "vlrg", "ur"};

inline std::optional<int> level_from_alias(const std::string& s) {
  for (int i = 0; i <= kMaxLevel; ++i)
    if (s == kLevelAliases[i]) return i;
  if (s.size() == 1 && s[0] >= '0' && s[0] <= '9') {
    int n = s[0] - '0';
    if (n <= kMaxLevel) return n;
    return std::nullopt;  // listed numerically but not axiomatized
  }
  return std::nullopt;
}

enum class RegistryErrorKind {
  DuplicateNamespace,
  SpecialPrefixClash,
  UnknownPrefix,
  NoCommonLevel,
  AmbiguousPrefix,
  UnknownNamespace,
  UnknownTerm,
  DuplicateEntry,
  FormatError,
  IoError,
};

class RegistryError : public std::runtime_error {
public:
  RegistryError(RegistryErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  RegistryErrorKind kind() const { return kind_; }

private:
  RegistryErrorKind kind_;
};

struct Namespace {
  int level = 0;
  std::vector<std::string> path;  // nonempty concept segments
  std::set<std::string> special_prefixes;  // uppercase dotted synonyms
  bool deprecated = false;

  std::string general_prefix() const {
    std::string out = kLevelAliases[level];
    for (const auto& seg : path) {
      out += '.';
      out += seg;
    }
    return out;
  }
};

struct EntryKey {
  int ns = -1;
  std::string term;
  friend auto operator<=>(const EntryKey&, const EntryKey&) = default;
};

struct VocabularyEntry {
  int ns = -1;
  std::string term;
  TermKind kind = TermKind::set;
  std::set<EntryKey> uses;  // (namespace, term) pairs citing this entry
};

struct Resolution {
  int ns = -1;
  bool deprecated_warning = false;
};

struct VocabularyCounts {
  std::size_t sets = 0, functions = 0, relations = 0, total = 0;
};

enum class WarrantClass { usable, supporting, both, orphan };

inline const char* warrant_name(WarrantClass w) {
  switch (w) {
    case WarrantClass::usable: return "usable";
    case WarrantClass::supporting: return "supporting";
    case WarrantClass::both: return "both";
    case WarrantClass::orphan: return "orphan";
  }
  return "?";
}

struct WarrantReport {
  std::map<EntryKey, WarrantClass> classes;
  std::vector<EntryKey> orphans;
};

class Registry {
public:
  int register_namespace(int level, std::vector<std::string> path,
                         std::set<std::string> special_prefixes) {
    if (level < 0 || level > kMaxLevel)
      throw RegistryError(RegistryErrorKind::UnknownPrefix,
                          "metalevel out of range");
    if (path.empty())
      throw RegistryError(RegistryErrorKind::FormatError,
                          "namespace path must be nonempty");
    for (const auto& seg : path)
      if (!metalang::detail::is_lower_seg(seg))
        throw RegistryError(RegistryErrorKind::FormatError,
                            "invalid path segment '" + seg + "'");
    auto key = std::make_pair(level, path);
    if (by_id_.count(key))
      throw RegistryError(RegistryErrorKind::DuplicateNamespace,
                          "namespace already registered: " +
                              Namespace{level, path}.general_prefix());
    for (const auto& sp : special_prefixes) {
      if (!metalang::detail::is_upper_seg(sp) &&
          !all_upper_dotted(sp))
        throw RegistryError(RegistryErrorKind::FormatError,
                            "special prefix must be uppercase: " + sp);
      if (by_special_.count(sp))
        throw RegistryError(RegistryErrorKind::SpecialPrefixClash,
                            "special prefix already taken: " + sp);
    }
    int idx = static_cast<int>(namespaces_.size());
    namespaces_.push_back({level, path, special_prefixes, false});
    by_id_[key] = idx;
    for (const auto& sp : special_prefixes) by_special_[sp] = idx;
    return idx;
  }

  void set_common_level(const std::string& concept_name, int level) {
    common_level_[concept_name] = level;
  }

  void set_deprecated(int ns, bool flag = true) {
    namespaces_.at(ns).deprecated = flag;
  }

  const Namespace& ns(int idx) const { return namespaces_.at(idx); }
  std::size_t namespace_count() const { return namespaces_.size(); }

  // Resolves a surface prefix in any of the four documented forms.
  Resolution resolve(const std::string& surface) const {
    if (surface.empty())
      throw RegistryError(RegistryErrorKind::UnknownPrefix, "empty prefix");
    auto segments = metalang::detail::split(surface, '.');
    bool lower = true, upper = true;
    for (const auto& seg : segments) {
      if (!metalang::detail::is_lower_seg(seg)) lower = false;
      if (!metalang::detail::is_upper_seg(seg)) upper = false;
    }
    if (upper && !lower) {
      auto it = by_special_.find(surface);
      if (it == by_special_.end())
        throw RegistryError(RegistryErrorKind::UnknownPrefix,
                            "unknown special prefix '" + surface + "'");
      return {it->second, namespaces_[it->second].deprecated};
    }
    if (!lower)
      throw RegistryError(RegistryErrorKind::UnknownPrefix,
                          "mixed-case prefix '" + surface + "'");
    // Level-qualified form: `lrg.cat`, `2.cat`, `sml.gph.mor`.
    if (segments.size() >= 2) {
      if (auto level = level_from_alias(segments[0])) {
        std::vector<std::string> path(segments.begin() + 1, segments.end());
        return lookup(*level, path, surface);
      }
      if (segments[0].size() == 1 && segments[0][0] >= '5' &&
          segments[0][0] <= '9')
        throw RegistryError(RegistryErrorKind::UnknownPrefix,
                            "metalevel out of range in '" + surface + "'");
    }
    // Bare common-use form: the first segment is a top-level concept.
    auto level = common_level(segments[0]);
    if (!level)
      throw RegistryError(RegistryErrorKind::NoCommonLevel,
                          "no common level declared for '" + segments[0] +
                              "'");
    return lookup(*level, segments, surface);
  }

  EntryKey add_entry(int ns_idx, const std::string& term, TermKind kind) {
    if (ns_idx < 0 || ns_idx >= static_cast<int>(namespaces_.size()))
      throw RegistryError(RegistryErrorKind::UnknownNamespace,
                          "unknown namespace");
    EntryKey key{ns_idx, term};
    if (entries_.count(key))
      throw RegistryError(RegistryErrorKind::DuplicateEntry,
                          "duplicate vocabulary entry '" + term + "'");
    entries_[key] = {ns_idx, term, kind, {}};
    entry_order_.push_back(key);
    by_term_[term].push_back(key);
    return key;
  }

  bool has_entry(int ns_idx, const std::string& term) const {
    return entries_.count({ns_idx, term}) != 0;
  }

  void remove_entry(const EntryKey& key) {
    entries_.erase(key);
    auto& order = entry_order_;
    order.erase(std::remove(order.begin(), order.end(), key), order.end());
    auto& same = by_term_[key.term];
    same.erase(std::remove(same.begin(), same.end(), key), same.end());
  }

  const VocabularyEntry& entry(const EntryKey& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end())
      throw RegistryError(RegistryErrorKind::UnknownTerm,
                          "unknown term '" + key.term + "'");
    return it->second;
  }

  // Looks a term up either fully qualified (`prefix:term`) or bare. A bare
  // lookup matching entries in two namespaces is ambiguous, never a guess.
  EntryKey resolve_term(const std::string& surface) const {
    auto colon = surface.find(':');
    if (colon != std::string::npos) {
      auto res = resolve(surface.substr(0, colon));
      EntryKey key{res.ns, surface.substr(colon + 1)};
      entry(key);
      return key;
    }
    auto it = by_term_.find(surface);
    if (it == by_term_.end() || it->second.empty())
      throw RegistryError(RegistryErrorKind::UnknownTerm,
                          "unknown term '" + surface + "'");
    if (it->second.size() > 1)
      throw RegistryError(RegistryErrorKind::AmbiguousPrefix,
                          "term '" + surface +
                              "' is registered in several namespaces");
    return it->second.front();
  }

  void add_use(const EntryKey& citing, const EntryKey& cited) {
    auto it = entries_.find(cited);
    if (it == entries_.end())
      throw RegistryError(RegistryErrorKind::UnknownTerm,
                          "unknown cited term '" + cited.term + "'");
    it->second.uses.insert(citing);
  }

  VocabularyCounts vocabulary_report(int ns_idx) const {
    if (ns_idx < 0 || ns_idx >= static_cast<int>(namespaces_.size()))
      throw RegistryError(RegistryErrorKind::UnknownNamespace,
                          "unknown namespace");
    VocabularyCounts c;
    for (const auto& key : entry_order_) {
      if (key.ns != ns_idx) continue;
      switch (entries_.at(key).kind) {
        case TermKind::set: ++c.sets; break;
        case TermKind::function: ++c.functions; break;
        case TermKind::relation: ++c.relations; break;
      }
      ++c.total;
    }
    return c;
  }

  // Conceptual warrant: a term is usable when cited by a term of another
  // namespace at the same metalevel or below, supporting when cited by a
  // different term of its own namespace, orphan when cited by neither.
  WarrantReport warrant_check() const {
    WarrantReport report;
    for (const auto& key : entry_order_) {
      const auto& e = entries_.at(key);
      bool usable = false, supporting = false;
      for (const auto& citing : e.uses) {
        if (citing.ns == key.ns) {
          if (citing.term != key.term) supporting = true;
        } else if (namespaces_.at(citing.ns).level <=
                   namespaces_.at(key.ns).level) {
          usable = true;
        }
      }
      WarrantClass w = usable && supporting ? WarrantClass::both
                       : usable             ? WarrantClass::usable
                       : supporting         ? WarrantClass::supporting
                                            : WarrantClass::orphan;
      report.classes[key] = w;
      if (w == WarrantClass::orphan) report.orphans.push_back(key);
    }
    return report;
  }

  const std::vector<EntryKey>& entry_order() const { return entry_order_; }

private:
  static bool all_upper_dotted(const std::string& s) {
    for (const auto& seg : metalang::detail::split(s, '.'))
      if (!metalang::detail::is_upper_seg(seg)) return false;
    return !s.empty();
  }

  std::optional<int> common_level(const std::string& concept_name) const {
    auto it = common_level_.find(concept_name);
    if (it != common_level_.end()) return it->second;
    // Default rule: unique registration level of the top concept.
    std::set<int> levels;
    for (const auto& ns : namespaces_)
      if (ns.path.front() == concept_name) levels.insert(ns.level);
    if (levels.size() == 1) return *levels.begin();
    return std::nullopt;
  }

  Resolution lookup(int level, const std::vector<std::string>& path,
                    const std::string& surface) const {
    auto it = by_id_.find(std::make_pair(level, path));
    if (it == by_id_.end())
      throw RegistryError(RegistryErrorKind::UnknownPrefix,
                          "unknown namespace '" + surface + "'");
    return {it->second, namespaces_[it->second].deprecated};
  }

  std::vector<Namespace> namespaces_;
  std::map<std::pair<int, std::vector<std::string>>, int> by_id_;
  std::map<std::string, int> by_special_;
  std::map<std::string, int> common_level_;
  std::map<EntryKey, VocabularyEntry> entries_;
  std::vector<EntryKey> entry_order_;  // file/registration order
  std::map<std::string, std::vector<EntryKey>> by_term_;
};

// ---------------------------------------------------------------------------
// Vocabulary files. Line format:
//   level path term kind [special=PREFIX[,PREFIX]]
// with `#` comments. The level is an alias or a digit, the path is dotted.

namespace detail {

inline std::vector<std::string> words(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

}  // namespace detail

inline Registry load_vocabulary_text(const std::string& text,
                                     const std::string& file = "<input>") {
  Registry reg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw RegistryError(RegistryErrorKind::FormatError,
                        file + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto tokens = detail::words(line);
    if (tokens.empty()) continue;
    if (tokens.size() < 4) fail("expected: level path term kind [special=..]");
    auto level = level_from_alias(tokens[0]);
    if (!level) fail("unknown metalevel '" + tokens[0] + "'");
    auto path = metalang::detail::split(tokens[1], '.');
    auto kind = kind_from_name(tokens[3]);
    if (!kind) fail("unknown kind '" + tokens[3] + "'");
    std::set<std::string> specials;
    for (std::size_t i = 4; i < tokens.size(); ++i) {
      if (tokens[i].rfind("special=", 0) != 0)
        fail("unknown option '" + tokens[i] + "'");
      for (const auto& sp :
           metalang::detail::split(tokens[i].substr(8), ','))
        specials.insert(sp);
    }
    int ns;
    try {
      ns = reg.resolve(Namespace{*level, path}.general_prefix()).ns;
      for (const auto& sp : specials) reg.resolve(sp);
    } catch (const RegistryError&) {
      try {
        ns = reg.register_namespace(*level, path, specials);
      } catch (const RegistryError& e) {
        fail(e.what());
        throw;  // unreachable
      }
    }
    try {
      reg.add_entry(ns, tokens[2], *kind);
    } catch (const RegistryError& e) {
      fail(e.what());
    }
  }
  return reg;
}

inline Registry load_vocabulary(const std::string& path) {
  return load_vocabulary_text(sexpr::slurp_file(path), path);
}

// Canonical serialization: registration order, one entry per line, special
// prefixes on a namespace's first line. save(load(f)) is a fixed point.
inline std::string save_vocabulary(const Registry& reg) {
  std::ostringstream os;
  std::set<int> specials_written;
  for (const auto& key : reg.entry_order()) {
    const auto& e = reg.entry(key);
    const auto& ns = reg.ns(e.ns);
    os << kLevelAliases[ns.level] << ' ';
    for (std::size_t i = 0; i < ns.path.size(); ++i)
      os << (i ? "." : "") << ns.path[i];
    os << ' ' << e.term << ' ' << kind_name(e.kind);
    if (!ns.special_prefixes.empty() && !specials_written.count(e.ns)) {
      specials_written.insert(e.ns);
      os << " special=";
      bool first = true;
      for (const auto& sp : ns.special_prefixes) {
        if (!first) os << ',';
        os << sp;
        first = false;
      }
    }
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Corpus scanning for the uses graph. Sentences in declaration style cite
// qualified names; the citing term is the first bare constant in subject
// position when there is one.

namespace detail {

inline void collect_names(const metalang::TermPtr& t,
                          std::vector<metalang::QualifiedName>& out) {
  using namespace metalang;
  if (auto* c = std::get_if<Constant>(&t->node)) {
    out.push_back(c->name);
  } else if (auto* a = std::get_if<Application>(&t->node)) {
    out.push_back(a->head);
    for (const auto& arg : a->args) collect_names(arg, out);
  } else if (auto* tup = std::get_if<TermTuple>(&t->node)) {
    for (const auto& item : tup->items) collect_names(item, out);
  }
}

inline void collect_names(const metalang::SentencePtr& s,
                          std::vector<metalang::QualifiedName>& out) {
  using namespace metalang;
  if (auto* a = std::get_if<Atom>(&s->node)) {
    out.push_back(a->pred);
    for (const auto& arg : a->args) collect_names(arg, out);
  } else if (auto* e = std::get_if<Equal>(&s->node)) {
    collect_names(e->lhs, out);
    collect_names(e->rhs, out);
  } else if (auto* n = std::get_if<Not>(&s->node)) {
    collect_names(n->body, out);
  } else if (auto* c = std::get_if<And>(&s->node)) {
    for (const auto& item : c->items) collect_names(item, out);
  } else if (auto* c = std::get_if<Or>(&s->node)) {
    for (const auto& item : c->items) collect_names(item, out);
  } else if (auto* im = std::get_if<Implies>(&s->node)) {
    collect_names(im->lhs, out);
    collect_names(im->rhs, out);
  } else if (auto* im = std::get_if<Iff>(&s->node)) {
    collect_names(im->lhs, out);
    collect_names(im->rhs, out);
  } else if (auto* q = std::get_if<Forall>(&s->node)) {
    for (const auto& b : q->bindings) collect_names(b.guard, out);
    collect_names(q->body, out);
  } else if (auto* q = std::get_if<Exists>(&s->node)) {
    for (const auto& b : q->bindings) collect_names(b.guard, out);
    collect_names(q->body, out);
  }
}

}  // namespace detail

inline std::string join_prefix(const metalang::QualifiedName& qn) {
  std::string out;
  for (std::size_t i = 0; i < qn.prefix.size(); ++i)
    out += (i ? "." : "") + qn.prefix[i];
  return out;
}

// Adds use edges for one sentence living in namespace `home`. Unresolvable
// names are skipped.
inline void scan_sentence_uses(Registry& reg, int home,
                               const metalang::SentencePtr& s) {
  using namespace metalang;
  std::string subject;
  if (auto* a = std::get_if<Atom>(&s->node)) {
    for (const auto& arg : a->args) {
      if (auto* c = std::get_if<Constant>(&arg->node)) {
        if (c->name.prefix.empty()) {
          subject = c->name.local;
          break;
        }
      }
    }
  }
  EntryKey citing{home, subject};
  std::vector<QualifiedName> names;
  detail::collect_names(s, names);
  for (const auto& qn : names) {
    try {
      EntryKey cited = qn.prefix.empty()
                           ? EntryKey{home, qn.local}
                           : EntryKey{reg.resolve(join_prefix(qn)).ns,
                                      qn.local};
      if (cited == citing) continue;
      if (!reg.has_entry(cited.ns, cited.term)) continue;
      reg.add_use(citing, cited);
    } catch (const RegistryError&) {
      continue;
    }
  }
}

}  // namespace iffkit::registry
