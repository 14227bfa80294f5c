#pragma once

#include <string>
#include <utility>
#include <vector>

#include "olsub/axioms.hpp"
#include "olsub/term.hpp"

namespace olsub::defs {

enum class BoundKind { Upper, Lower };

/// `type NAME[A1, ...] <: BOUND` (or `>:` for a lower bound). `bound` only
/// mentions the parameters as free variables.
struct Definition {
  SymbolId symbol;
  std::vector<std::string> params;
  TermId bound;
  BoundKind kind = BoundKind::Upper;
};

/// Replacement for every application of one symbol: `body` with the variables
/// named in `params` standing for the argument holes.
struct Substitution {
  SymbolId symbol;
  std::vector<std::string> params;
  TermId body;
};

/// Syntactic variance of each parameter inside `body`: covariant if it only
/// occurs positively, contravariant if only negatively, invariant when mixed
/// or under an invariant argument. Absent parameters count as covariant.
std::vector<Variance> infer_variances(const TermUniverse& u, TermId body,
                                      const std::vector<std::string>& params);

/// Whether a hole used with `used` polarity may stand for an argument declared
/// `declared`.
bool variance_compatible(Variance declared, Variance used);

/// Replace every App(symbol, args) in `t`, innermost first, by the template
/// instantiated with the substituted arguments. Throws VarianceMismatch if the
/// template's hole polarities contradict the symbol's declared variances.
TermId substitute(TermUniverse& u, TermId t, const Substitution& s);

struct Desugared {
  TermId lhs;
  TermId rhs;
  AxiomSet axioms;
  /// The fresh unconstrained symbol introduced per definition, in order.
  std::vector<SymbolId> fresh_symbols;
};

/// Eliminates the bounded definitions: for `T[A] <: F` introduce a fresh T'
/// with T's variances and substitute T := F & T'(A) (or F | T'(A) for a lower
/// bound) throughout the goal, the axioms and later definitions. Throws
/// RecursiveDefinition if a bound mentions its own or a later symbol.
Desugared desugar(TermUniverse& u, const std::vector<Definition>& definitions, TermId lhs,
                  TermId rhs, const AxiomSet& axioms);

}  // namespace olsub::defs
