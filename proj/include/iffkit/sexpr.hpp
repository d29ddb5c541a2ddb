#pragma once

// Shared s-expression layer: tokens with source spans, a generic tree
// reader, and a writer. The metashell parser and every corpus file format
// sit on top of this.

#include <cstddef>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace iffkit::sexpr {

struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;
  int length = 0;
};

inline std::string describe(const SourceSpan& s) {
  std::ostringstream os;
  if (!s.file.empty()) os << s.file << ":";
  os << s.line << ":" << s.column;
  return os.str();
}

enum class ParseErrorKind {
  UnbalancedParen,
  UnknownHead,
  BadVariable,
  EmptyInput,
  Syntax,
  Io,
};

class ParseError : public std::runtime_error {
public:
  ParseError(ParseErrorKind kind, SourceSpan span, const std::string& msg)
      : std::runtime_error(describe(span) + ": " + msg),
        kind_(kind),
        span_(std::move(span)) {}

  ParseErrorKind kind() const { return kind_; }
  const SourceSpan& span() const { return span_; }

private:
  ParseErrorKind kind_;
  SourceSpan span_;
};

// A node is either an atom (bare token) or a list delimited by () or [].
struct Node;

struct Atom {
  std::string text;
};

struct List {
  char open = '(';  // '(' or '['
  std::vector<Node> items;
};

struct Node {
  std::variant<Atom, List> data;
  SourceSpan span;

  bool is_atom() const { return std::holds_alternative<Atom>(data); }
  bool is_list() const { return std::holds_alternative<List>(data); }
  const std::string& atom() const { return std::get<Atom>(data).text; }
  const List& list() const { return std::get<List>(data); }
};

namespace detail {

struct Token {
  enum Kind { LParen, RParen, LBrack, RBrack, Word, End } kind;
  std::string text;
  SourceSpan span;
};

class Lexer {
public:
  Lexer(std::string_view text, std::string file)
      : text_(text), file_(std::move(file)) {}

  Token next() {
    skip_ws();
    SourceSpan span{file_, line_, col_, 1};
    if (pos_ >= text_.size()) return {Token::End, "", span};
    char c = text_[pos_];
    switch (c) {
      case '(': advance(); return {Token::LParen, "(", span};
      case ')': advance(); return {Token::RParen, ")", span};
      case '[': advance(); return {Token::LBrack, "[", span};
      case ']': advance(); return {Token::RBrack, "]", span};
      default: {
        std::size_t start = pos_;
        while (pos_ < text_.size() && !is_delim(text_[pos_])) advance();
        span.length = static_cast<int>(pos_ - start);
        return {Token::Word, std::string(text_.substr(start, pos_ - start)),
                span};
      }
    }
  }

private:
  static bool is_delim(char c) {
    return c == '(' || c == ')' || c == '[' || c == ']' || c == ';' ||
           c == ' ' || c == '\t' || c == '\r' || c == '\n';
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Reader {
public:
  Reader(std::string_view text, std::string file) : lex_(text, file) {
    tok_ = lex_.next();
  }

  bool at_end() const { return tok_.kind == Token::End; }

  Node read() {
    switch (tok_.kind) {
      case Token::Word: {
        Node n{Atom{tok_.text}, tok_.span};
        bump();
        return n;
      }
      case Token::LParen:
        return read_list(Token::RParen, '(');
      case Token::LBrack:
        return read_list(Token::RBrack, '[');
      case Token::RParen:
      case Token::RBrack:
        throw ParseError(ParseErrorKind::UnbalancedParen, tok_.span,
                         "unmatched '" + tok_.text + "'");
      case Token::End:
        throw ParseError(ParseErrorKind::EmptyInput, tok_.span,
                         "unexpected end of input");
    }
    throw ParseError(ParseErrorKind::Syntax, tok_.span, "unreachable");
  }

private:
  void bump() { tok_ = lex_.next(); }

  Node read_list(Token::Kind closer, char open) {
    SourceSpan start = tok_.span;
    bump();
    List list{open, {}};
    while (tok_.kind != closer) {
      if (tok_.kind == Token::End)
        throw ParseError(ParseErrorKind::UnbalancedParen, start,
                         std::string("unclosed '") + open + "'");
      if (tok_.kind == Token::RParen || tok_.kind == Token::RBrack)
        throw ParseError(ParseErrorKind::UnbalancedParen, tok_.span,
                         "mismatched '" + tok_.text + "'");
      list.items.push_back(read());
    }
    SourceSpan span = start;
    span.length = tok_.span.column - start.column + 1;
    if (tok_.span.line != start.line) span.length = 1;
    bump();
    return Node{std::move(list), span};
  }

  Lexer lex_;
  Token tok_;
};

}  // namespace detail

// Reads every top-level form in `text`.
inline std::vector<Node> read_all(std::string_view text,
                                  const std::string& file = "<input>") {
  detail::Reader r(text, file);
  std::vector<Node> nodes;
  while (!r.at_end()) nodes.push_back(r.read());
  return nodes;
}

// Reads exactly one form; trailing content is an error.
inline Node read_one(std::string_view text,
                     const std::string& file = "<input>") {
  detail::Reader r(text, file);
  if (r.at_end())
    throw ParseError(ParseErrorKind::EmptyInput, SourceSpan{file, 1, 1, 0},
                     "empty input");
  Node n = r.read();
  if (!r.at_end())
    throw ParseError(ParseErrorKind::Syntax, r.read().span,
                     "trailing content after form");
  return n;
}

inline std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError(ParseErrorKind::Io, SourceSpan{path, 1, 1, 0},
                     "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::vector<Node> read_file(const std::string& path) {
  return read_all(slurp_file(path), path);
}

inline void write(std::ostream& os, const Node& n) {
  if (n.is_atom()) {
    os << n.atom();
    return;
  }
  const List& l = n.list();
  os << l.open;
  for (std::size_t i = 0; i < l.items.size(); ++i) {
    if (i) os << ' ';
    write(os, l.items[i]);
  }
  os << (l.open == '(' ? ')' : ']');
}

inline std::string to_string(const Node& n) {
  std::ostringstream os;
  write(os, n);
  return os.str();
}

}  // namespace iffkit::sexpr
