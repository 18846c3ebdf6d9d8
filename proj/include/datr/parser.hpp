// SPDX-License-Identifier: Apache-2.0
//
// Concrete syntax for .dtr theory files and .dtg goal files.
//
//   theory  := { Node ':' clause { clause } }
//   clause  := path '==' { desc } '.'
//   desc    := atom | Node | Node ':' terms | terms
//            | '"' Node '"' | '"' Node ':' terms '"' | '"' terms '"'
//   terms   := '<' { desc } '>'
//   goal    := Node ':' path ( '=' { atom } '.' | '=' 'UNDEFINED' '.' | '?' )
//
// Identifiers are [A-Za-z0-9_]+; an initial uppercase letter makes a node.
// `%` starts a comment running to end of line. A bare node N on the right
// abbreviates N:<lhs path>; a bare path <...> abbreviates CurrentNode:<...>.

#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "datr/model.hpp"
#include "datr/render.hpp"

namespace datr {

struct SourceSpan {
  int line = 1;
  int column = 1;
  int length = 0;
};

struct Diagnostic {
  enum class Severity { Error, Warning };

  Severity severity = Severity::Error;
  SourceSpan span;
  std::string message;
  std::string code;  // "syntax", "duplicate", "undefined-node"

  [[nodiscard]] bool is_error() const { return severity == Severity::Error; }
};

inline std::string format_diagnostic(const Diagnostic& d, std::string_view file = {}) {
  std::string out;
  if (!file.empty()) {
    out += file;
    out += ':';
  }
  out += std::to_string(d.span.line) + ":" + std::to_string(d.span.column) + ": ";
  out += d.is_error() ? "error" : "warning";
  out += "[" + d.code + "]: " + d.message;
  return out;
}

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.is_error()) return true;
  return false;
}

struct TheoryParse {
  std::optional<Theory> theory;  // absent iff some diagnostic is an error
  std::vector<Diagnostic> diagnostics;
};

struct GoalParse {
  std::vector<GoalSentence> goals;
  std::vector<Diagnostic> diagnostics;
};

namespace detail {

enum class Tok { Node, Atom, LAngle, RAngle, Quote, Colon, DefEq, GoalEq, Dot, Question, Bad, End };

inline const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Node: return "node name";
    case Tok::Atom: return "atom";
    case Tok::LAngle: return "'<'";
    case Tok::RAngle: return "'>'";
    case Tok::Quote: return "'\"'";
    case Tok::Colon: return "':'";
    case Tok::DefEq: return "'=='";
    case Tok::GoalEq: return "'='";
    case Tok::Dot: return "'.'";
    case Tok::Question: return "'?'";
    case Tok::Bad: return "invalid character";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto emit = [&](Tok k, std::size_t len, std::string text = {}) {
    out.push_back(Token{k, std::move(text), SourceSpan{line, col, static_cast<int>(len)}});
    i += len;
    col += static_cast<int>(len);
  };
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };

  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
    } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
      ++i;
      ++col;
    } else if (c == '%') {
      while (i < src.size() && src[i] != '\n') ++i;
    } else if (src.substr(i, 3) == "\xE2\x9F\xA8") {  // U+27E8
      emit(Tok::LAngle, 3);
      col -= 2;
    } else if (src.substr(i, 3) == "\xE2\x9F\xA9") {  // U+27E9
      emit(Tok::RAngle, 3);
      col -= 2;
    } else if (c == '<') {
      emit(Tok::LAngle, 1);
    } else if (c == '>') {
      emit(Tok::RAngle, 1);
    } else if (c == '"') {
      emit(Tok::Quote, 1);
    } else if (c == ':') {
      emit(Tok::Colon, 1);
    } else if (c == '.') {
      emit(Tok::Dot, 1);
    } else if (c == '?') {
      emit(Tok::Question, 1);
    } else if (c == '=') {
      if (i + 1 < src.size() && src[i + 1] == '=')
        emit(Tok::DefEq, 2);
      else
        emit(Tok::GoalEq, 1);
    } else if (ident_char(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string text(src.substr(i, j - i));
      Tok k = std::isupper(static_cast<unsigned char>(c)) ? Tok::Node : Tok::Atom;
      emit(k, j - i, std::move(text));
    } else {
      // One UTF-8 sequence counts as one column.
      std::size_t len = 1;
      auto uc = static_cast<unsigned char>(c);
      if (uc >= 0xF0) len = 4;
      else if (uc >= 0xE0) len = 3;
      else if (uc >= 0xC0) len = 2;
      len = std::min(len, src.size() - i);
      emit(Tok::Bad, len, std::string(src.substr(i, len)));
      col -= static_cast<int>(len) - 1;
    }
  }
  out.push_back(Token{Tok::End, {}, SourceSpan{line, col, 0}});
  return out;
}

struct SyntaxError {
  SourceSpan span;
  std::string message;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  TheoryParse parse_theory() {
    TheoryParse result;
    Theory theory;
    std::optional<NodeSym> current;
    while (peek().kind != Tok::End) {
      try {
        if (peek().kind == Tok::Node && peek(1).kind == Tok::Colon) {
          current = NodeSym{next().text};
          next();
        } else if (peek().kind != Tok::LAngle) {
          fail(peek(), std::string("expected node header or path, found ") + describe(peek()));
        } else if (!current) {
          fail(peek(), "path clause without a preceding node header");
        }
        SourceSpan at = peek().span;
        DefSentence s = parse_clause(*current);
        try {
          theory.add(s);
        } catch (const DuplicateError& e) {
          result.diagnostics.push_back(
              {Diagnostic::Severity::Error, at,
               "conflicting definitions for " + render_node_path(e.node(), e.path()) + ": ==" +
                   render_rhs(e.existing()) + " versus ==" + render_rhs(e.conflicting()),
               "duplicate"});
        }
      } catch (const SyntaxError& e) {
        result.diagnostics.push_back({Diagnostic::Severity::Error, e.span, e.message, "syntax"});
        resync();
      }
    }
    for (const auto& [node, span] : references_) {
      if (!theory.find(node))
        result.diagnostics.push_back({Diagnostic::Severity::Warning, span,
                                      "reference to node " + node.name + " which has no definition",
                                      "undefined-node"});
    }
    if (!has_errors(result.diagnostics)) result.theory = std::move(theory);
    return result;
  }

  GoalParse parse_goals() {
    GoalParse result;
    while (peek().kind != Tok::End) {
      try {
        result.goals.push_back(parse_goal());
      } catch (const SyntaxError& e) {
        result.diagnostics.push_back({Diagnostic::Severity::Error, e.span, e.message, "syntax"});
        resync();
      }
    }
    return result;
  }

  /// `Node:<a b ...>` and nothing else.
  std::pair<NodeSym, Path> parse_query() {
    const Token& n = expect(Tok::Node, "node name");
    expect(Tok::Colon, "':'");
    Path p = parse_atom_path();
    if (peek().kind != Tok::End) fail(peek(), "unexpected " + describe(peek()) + " after query");
    return {NodeSym{n.text}, std::move(p)};
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::pair<NodeSym, SourceSpan>> references_;

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  static std::string describe(const Token& t) {
    if (t.kind == Tok::Node || t.kind == Tok::Atom || t.kind == Tok::Bad)
      return std::string(tok_name(t.kind)) + " '" + t.text + "'";
    return tok_name(t.kind);
  }
  [[noreturn]] static void fail(const Token& t, std::string msg) { throw SyntaxError{t.span, std::move(msg)}; }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(peek(), std::string("expected ") + what + ", found " + describe(peek()));
    return next();
  }

  // Skip past the next sentence terminator.
  void resync() {
    while (peek().kind != Tok::End) {
      Tok k = next().kind;
      if (k == Tok::Dot || k == Tok::Question) return;
    }
  }

  Path parse_atom_path() {
    const Token& open = expect(Tok::LAngle, "'<'");
    Path p;
    while (peek().kind == Tok::Atom) p.atoms.push_back(AtomSym{next().text});
    if (peek().kind != Tok::RAngle) {
      if (peek().kind == Tok::Node || peek().kind == Tok::Quote || peek().kind == Tok::LAngle)
        fail(peek(), "only atoms may appear in this path, found " + describe(peek()));
      throw SyntaxError{open.span, "unterminated path: expected '>' before " + describe(peek())};
    }
    next();
    return p;
  }

  DefSentence parse_clause(const NodeSym& node) {
    DefSentence s{node, parse_atom_path(), {}};
    expect(Tok::DefEq, "'=='");
    while (peek().kind != Tok::Dot) {
      if (peek().kind == Tok::End || peek().kind == Tok::DefEq || peek().kind == Tok::GoalEq ||
          peek().kind == Tok::Question)
        fail(peek(), "missing '.' at end of sentence, found " + describe(peek()));
      s.rhs.push_back(parse_descriptor(s));
    }
    next();
    return s;
  }

  std::vector<Descriptor> parse_terms(const DefSentence& clause) {
    const Token& open = expect(Tok::LAngle, "'<'");
    std::vector<Descriptor> terms;
    while (peek().kind != Tok::RAngle) {
      Tok k = peek().kind;
      if (k != Tok::Atom && k != Tok::Node && k != Tok::LAngle && k != Tok::Quote)
        throw SyntaxError{open.span, "unterminated path: expected '>' before " + describe(peek())};
      terms.push_back(parse_descriptor(clause));
    }
    next();
    return terms;
  }

  NodeSym node_ref(const Token& t) {
    references_.emplace_back(NodeSym{t.text}, t.span);
    return NodeSym{t.text};
  }

  Descriptor parse_descriptor(const DefSentence& clause) {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Atom: return Descriptor::make_atom(AtomSym{next().text});
      case Tok::Node: {
        NodeSym n = node_ref(next());
        if (peek().kind == Tok::Colon) {
          next();
          return Descriptor::local(std::move(n), parse_terms(clause));
        }
        return Descriptor::local(std::move(n), atom_terms(clause.lhs));
      }
      case Tok::LAngle: return Descriptor::local(clause.node, parse_terms(clause));
      case Tok::Quote: {
        next();
        Descriptor d;
        if (peek().kind == Tok::Node) {
          NodeSym n = node_ref(next());
          if (peek().kind == Tok::Colon) {
            next();
            d = Descriptor::global_node_path(std::move(n), parse_terms(clause));
          } else {
            d = Descriptor::global_node(std::move(n));
          }
        } else if (peek().kind == Tok::LAngle) {
          d = Descriptor::global_path(parse_terms(clause));
        } else {
          fail(peek(), "expected node or path after '\"', found " + describe(peek()));
        }
        expect(Tok::Quote, "closing '\"'");
        return d;
      }
      default: fail(t, "expected value descriptor, found " + describe(t));
    }
  }

  GoalSentence parse_goal() {
    GoalSentence g;
    g.node = NodeSym{expect(Tok::Node, "node name").text};
    expect(Tok::Colon, "':'");
    g.path = parse_atom_path();
    if (peek().kind == Tok::Question) {
      next();
      return g;
    }
    expect(Tok::GoalEq, "'=' or '?'");
    if (peek().kind == Tok::Node && peek().text == "UNDEFINED") {
      next();
      g.expect = GoalSentence::Expect::Undefined;
    } else {
      g.expect = GoalSentence::Expect::Value;
      while (peek().kind == Tok::Atom) g.expected.atoms.push_back(AtomSym{next().text});
    }
    if (peek().kind != Tok::Dot) fail(peek(), "expected atom or '.', found " + describe(peek()));
    next();
    return g;
  }
};

}  // namespace detail

/// Parses a theory file, desugaring node-header elision and bare node/path
/// descriptors. Functionality violations and syntax errors are errors;
/// references to undefined nodes are warnings.
inline TheoryParse parse_theory(std::string_view text) { return detail::Parser(text).parse_theory(); }

/// Parses a goal file. Malformed goals produce diagnostics; the rest are kept.
inline GoalParse parse_goals(std::string_view text) { return detail::Parser(text).parse_goals(); }

/// Parses `Node:<a b>` as used on the command line. Throws std::invalid_argument.
inline std::pair<NodeSym, Path> parse_query(std::string_view text) {
  try {
    return detail::Parser(text).parse_query();
  } catch (const detail::SyntaxError& e) {
    throw std::invalid_argument("column " + std::to_string(e.span.column) + ": " + e.message);
  }
}

}  // namespace datr
