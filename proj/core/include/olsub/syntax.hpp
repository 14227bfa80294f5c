#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "olsub/axioms.hpp"
#include "olsub/defs.hpp"
#include "olsub/term.hpp"

namespace olsub::syntax {

// Grammar (ASCII):
//   term  := meet ('|' meet)*
//   meet  := unary ('&' unary)*
//   unary := '~' unary | atom
//   atom  := '(' term ')' | 'top' | 'bot' | IDENT | SYMBOL '(' term {',' term} ')'
// An identifier is a constructor application iff it names a declared symbol;
// nullary symbols may omit the parentheses.

/// Parses a single term. Throws SyntaxError / UndeclaredSymbol / ArityMismatch
/// carrying the byte offset of the offending token.
TermId parse_term(std::string_view text, TermUniverse& u);

enum class Relation { Leq, Geq, Eq };

struct Query {
  TermId lhs;
  TermId rhs;
  Relation relation = Relation::Leq;
};

/// `TERM <= TERM`, `TERM >= TERM` or `TERM = TERM`.
Query parse_query(std::string_view text, TermUniverse& u);

/// Parses a `NAME : (v, ...)` declaration body (the `fun` keyword is optional)
/// and declares the symbol.
SymbolId parse_declaration(std::string_view text, TermUniverse& u);

struct SourceFile {
  std::vector<SymbolId> symbols;
  AxiomSet axioms;
  std::vector<defs::Definition> definitions;
};

/// Line-oriented source:
///   # comment
///   fun NAME : (V{,V}*)         V in {o,+,-}
///   TERM <= TERM | TERM = TERM
///   type NAME[A{,A}*] <: TERM   (or >: for a lower bound)
/// Errors report the 1-based line and column.
SourceFile parse_source(std::string_view text, TermUniverse& u);

struct PrintOptions {
  bool show_internals = false;
};

/// Minimal-parenthesis rendering. For base-signature terms
/// parse_term(print_term(t)) == t. Negated variables print as ~x and dual
/// symbols as ~F(...), so extended terms read back as their negation form.
std::string print_term(const TermUniverse& u, TermId t, PrintOptions options = {});

}  // namespace olsub::syntax
