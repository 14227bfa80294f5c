#include "olsub/syntax.hpp"

#include <cctype>
#include <optional>
#include <set>

#include "olsub/error.hpp"

namespace olsub::syntax {
namespace {

enum class Tok {
  Ident,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Colon,
  Amp,
  Bar,
  Tilde,
  Plus,
  Minus,
  Leq,
  Geq,
  Eq,
  SubOf,
  SupOf,
  End,
};

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t offset;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto two = [&](char a, char b) { return i + 1 < text.size() && text[i] == a && text[i + 1] == b; };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      while (j < text.size() && text[j] == '\'') ++j;
      out.push_back({Tok::Ident, text.substr(i, j - i), i});
      i = j;
      continue;
    }
    if (two('<', '=')) { out.push_back({Tok::Leq, text.substr(i, 2), i}); i += 2; continue; }
    if (two('>', '=')) { out.push_back({Tok::Geq, text.substr(i, 2), i}); i += 2; continue; }
    if (two('<', ':')) { out.push_back({Tok::SubOf, text.substr(i, 2), i}); i += 2; continue; }
    if (two('>', ':')) { out.push_back({Tok::SupOf, text.substr(i, 2), i}); i += 2; continue; }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case ',': kind = Tok::Comma; break;
      case ':': kind = Tok::Colon; break;
      case '&': kind = Tok::Amp; break;
      case '|': kind = Tok::Bar; break;
      case '~': kind = Tok::Tilde; break;
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '=': kind = Tok::Eq; break;
      default:
        throw Error(ErrorCode::SyntaxError, std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({kind, text.substr(i, 1), i});
    ++i;
  }
  out.push_back({Tok::End, {}, text.size()});
  return out;
}

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::Tilde: return "'~'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Leq: return "'<='";
    case Tok::Geq: return "'>='";
    case Tok::Eq: return "'='";
    case Tok::SubOf: return "'<:'";
    case Tok::SupOf: return "'>:'";
    case Tok::End: return "end of input";
  }
  return "token";
}

class Parser {
 public:
  Parser(std::string_view text, TermUniverse& u) : toks_(lex(text)), u_(u) {}

  /// Name of the symbol being defined; mentioning it is a recursive definition.
  std::string_view defining;

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& advance() { return toks_[pos_++]; }

  const Token& expect(Tok k) {
    if (!at(k)) {
      throw Error(ErrorCode::SyntaxError,
                  std::string("expected ") + describe(k) + ", found " + describe(peek().kind),
                  peek().offset);
    }
    return advance();
  }

  void expect_end() { expect(Tok::End); }

  TermId term() {
    std::vector<TermId> ops{meet()};
    while (at(Tok::Bar)) {
      advance();
      ops.push_back(meet());
    }
    return ops.size() == 1 ? ops.front() : u_.join(ops);
  }

  TermId meet() {
    std::vector<TermId> ops{unary()};
    while (at(Tok::Amp)) {
      advance();
      ops.push_back(unary());
    }
    return ops.size() == 1 ? ops.front() : u_.meet(ops);
  }

  TermId unary() {
    if (at(Tok::Tilde)) {
      advance();
      return u_.negation(unary());
    }
    return atom();
  }

  TermId atom() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      advance();
      TermId inner = term();
      expect(Tok::RParen);
      return inner;
    }
    if (t.kind != Tok::Ident) {
      throw Error(ErrorCode::SyntaxError,
                  std::string("expected a term, found ") + describe(t.kind), t.offset);
    }
    advance();
    if (t.text == "top") return u_.top();
    if (t.text == "bot") return u_.bot();
    if (!defining.empty() && t.text == defining) {
      throw Error(ErrorCode::RecursiveDefinition,
                  "definition of '" + std::string(defining) + "' mentions itself", t.offset);
    }
    std::optional<SymbolId> sym = u_.find_symbol(t.text);
    if (!sym) {
      if (at(Tok::LParen)) {
        throw Error(ErrorCode::UndeclaredSymbol,
                    "constructor '" + std::string(t.text) + "' is not declared", t.offset);
      }
      return u_.var(t.text);
    }
    std::vector<TermId> args;
    if (at(Tok::LParen)) {
      advance();
      if (!at(Tok::RParen)) {
        args.push_back(term());
        while (at(Tok::Comma)) {
          advance();
          args.push_back(term());
        }
      }
      expect(Tok::RParen);
    }
    const SymbolDecl& decl = u_.symbol(*sym);
    if (args.size() != decl.arity()) {
      throw Error(ErrorCode::ArityMismatch,
                  "'" + decl.name + "' expects " + std::to_string(decl.arity()) +
                      " argument(s), got " + std::to_string(args.size()),
                  t.offset);
    }
    return u_.app(*sym, args);
  }

  Relation relation() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Leq: advance(); return Relation::Leq;
      case Tok::Geq: advance(); return Relation::Geq;
      case Tok::Eq: advance(); return Relation::Eq;
      default:
        throw Error(ErrorCode::SyntaxError,
                    std::string("expected '<=', '>=' or '=', found ") + describe(t.kind), t.offset);
    }
  }

  Query query() {
    Query q;
    q.lhs = term();
    q.relation = relation();
    q.rhs = term();
    expect_end();
    return q;
  }

  std::vector<Variance> variance_list() {
    expect(Tok::LParen);
    std::vector<Variance> out;
    if (at(Tok::RParen)) {
      advance();
      return out;
    }
    for (;;) {
      const Token& t = advance();
      if (t.kind == Tok::Plus) {
        out.push_back(Variance::Covariant);
      } else if (t.kind == Tok::Minus) {
        out.push_back(Variance::Contravariant);
      } else if (t.kind == Tok::Ident && t.text == "o") {
        out.push_back(Variance::Invariant);
      } else {
        throw Error(ErrorCode::SyntaxError, "expected a variance 'o', '+' or '-'", t.offset);
      }
      if (at(Tok::RParen)) {
        advance();
        return out;
      }
      expect(Tok::Comma);
    }
  }

  SymbolId declaration() {
    if (at(Tok::Ident) && peek().text == "fun" && toks_[pos_ + 1].kind == Tok::Ident) advance();
    const Token& name = expect(Tok::Ident);
    if (name.text == "top" || name.text == "bot") {
      throw Error(ErrorCode::SyntaxError, "'top'/'bot' cannot name a constructor", name.offset);
    }
    expect(Tok::Colon);
    std::vector<Variance> vs = variance_list();
    expect_end();
    try {
      return u_.declare_symbol(name.text, std::move(vs));
    } catch (const Error& e) {
      throw Error(e.code(), "cannot declare '" + std::string(name.text) + "'", name.offset);
    }
  }

  std::size_t offset() const { return peek().offset; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  TermUniverse& u_;
};

void collect_vars(const TermUniverse& u, TermId t, std::set<std::string>& out) {
  for (TermId s : u.subterms(t)) {
    TermKind k = u.kind(s);
    if (k == TermKind::Var || k == TermKind::NegVar) out.emplace(u.var_name(s));
  }
}

defs::Definition parse_definition(std::string_view line, TermUniverse& u) {
  // type NAME [ '[' A {, A} ']' ] (<: | >:) TERM
  Parser p(line, u);
  p.advance();  // 'type'
  const Token name = p.expect(Tok::Ident);
  std::vector<std::string> params;
  if (p.at(Tok::LBracket)) {
    p.advance();
    if (!p.at(Tok::RBracket)) {
      for (;;) {
        const Token& a = p.expect(Tok::Ident);
        for (const auto& existing : params) {
          if (existing == a.text) {
            throw Error(ErrorCode::SyntaxError, "duplicate parameter '" + existing + "'", a.offset);
          }
        }
        params.emplace_back(a.text);
        if (!p.at(Tok::Comma)) break;
        p.advance();
      }
    }
    p.expect(Tok::RBracket);
  }
  defs::BoundKind kind;
  if (p.at(Tok::SubOf)) {
    kind = defs::BoundKind::Upper;
  } else if (p.at(Tok::SupOf)) {
    kind = defs::BoundKind::Lower;
  } else {
    throw Error(ErrorCode::SyntaxError, "expected '<:' or '>:'", p.offset());
  }
  p.advance();
  p.defining = name.text;
  std::size_t bound_offset = p.offset();
  TermId bound = p.term();
  p.expect_end();

  std::set<std::string> free;
  collect_vars(u, bound, free);
  for (const std::string& v : free) {
    bool ok = false;
    for (const auto& prm : params) ok = ok || prm == v;
    if (!ok) {
      throw Error(ErrorCode::MalformedTerm,
                  "bound mentions '" + v + "' which is not a parameter of '" +
                      std::string(name.text) + "'",
                  bound_offset);
    }
  }

  std::optional<SymbolId> sym = u.find_symbol(name.text);
  if (!sym) {
    sym = u.declare_symbol(name.text, defs::infer_variances(u, bound, params));
  } else if (u.symbol(*sym).arity() != params.size()) {
    throw Error(ErrorCode::ArityMismatch,
                "'" + std::string(name.text) + "' was declared with arity " +
                    std::to_string(u.symbol(*sym).arity()),
                name.offset);
  }
  return defs::Definition{*sym, std::move(params), bound, kind};
}

std::string_view strip_comment(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  return line;
}

bool starts_with_word(std::string_view line, std::string_view word) {
  std::size_t i = 0;
  while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  if (line.substr(i, word.size()) != word) return false;
  std::size_t j = i + word.size();
  return j < line.size() && std::isspace(static_cast<unsigned char>(line[j]));
}

// ---------------------------------------------------------------------------
// Printing

int precedence(TermKind k) {
  switch (k) {
    case TermKind::Join: return 1;
    case TermKind::Meet: return 2;
    default: return 3;
  }
}

void print_into(const TermUniverse& u, TermId t, int context, const PrintOptions& opts,
                std::string& out) {
  const TermNode& n = u.node(t);
  const bool parens = precedence(n.kind) < context;
  if (parens) out += '(';
  switch (n.kind) {
    case TermKind::Var:
      out += u.name(n.label);
      break;
    case TermKind::NegVar:
      out += '~';
      out += u.name(n.label);
      break;
    case TermKind::Top:
      out += "top";
      break;
    case TermKind::Bot:
      out += "bot";
      break;
    case TermKind::Join:
    case TermKind::Meet: {
      const char* sep = n.kind == TermKind::Join ? " | " : " & ";
      // Operands one level tighter, so a nested same-kind node keeps its
      // parentheses and is not silently re-flattened.
      const int inner = precedence(n.kind) + 1;
      bool first = true;
      for (TermId c : n.children) {
        if (!first) out += sep;
        first = false;
        print_into(u, c, inner, opts, out);
      }
      break;
    }
    case TermKind::Not:
      out += '~';
      print_into(u, n.children.front(), 3, opts, out);
      break;
    case TermKind::App: {
      const SymbolDecl& decl = u.symbol(SymbolId{n.label});
      if (decl.is_dual()) out += '~';
      out += (decl.internal && !opts.show_internals) ? decl.public_name : decl.name;
      if (!n.children.empty()) {
        out += '(';
        bool first = true;
        for (TermId c : n.children) {
          if (!first) out += ", ";
          first = false;
          print_into(u, c, 0, opts, out);
        }
        out += ')';
      }
      break;
    }
  }
  if (parens) out += ')';
}

}  // namespace

TermId parse_term(std::string_view text, TermUniverse& u) {
  Parser p(text, u);
  TermId t = p.term();
  p.expect_end();
  return t;
}

Query parse_query(std::string_view text, TermUniverse& u) {
  Parser p(text, u);
  return p.query();
}

SymbolId parse_declaration(std::string_view text, TermUniverse& u) {
  Parser p(text, u);
  return p.declaration();
}

SourceFile parse_source(std::string_view text, TermUniverse& u) {
  SourceFile out;
  std::set<std::uint32_t> defined;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::string_view line = strip_comment(raw);
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    try {
      if (starts_with_word(line, "fun")) {
        out.symbols.push_back(parse_declaration(line, u));
      } else if (starts_with_word(line, "type")) {
        defs::Definition d = parse_definition(line, u);
        if (!defined.insert(d.symbol.value).second) {
          throw Error(ErrorCode::DuplicateDefinition,
                      "'" + u.symbol(d.symbol).name + "' is defined twice", std::size_t{0});
        }
        out.definitions.push_back(std::move(d));
      } else {
        Query q = parse_query(line, u);
        switch (q.relation) {
          case Relation::Leq: out.axioms.add_leq(q.lhs, q.rhs); break;
          case Relation::Geq: out.axioms.add_leq(q.rhs, q.lhs); break;
          case Relation::Eq: out.axioms.add_eq(q.lhs, q.rhs); break;
        }
      }
    } catch (const Error& e) {
      // Re-anchor to line/column (1-based column).
      std::string what = e.what();
      if (auto colon = what.find(": "); colon != std::string::npos) what = what.substr(colon + 2);
      throw Error(e.code(), what, e.position().value_or(0) + 1, line_no);
    }
    if (end == text.size()) break;
  }
  return out;
}

std::string print_term(const TermUniverse& u, TermId t, PrintOptions options) {
  std::string out;
  print_into(u, t, 0, options, out);
  return out;
}

}  // namespace olsub::syntax
