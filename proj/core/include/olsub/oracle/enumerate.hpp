#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "olsub/entail.hpp"
#include "olsub/term.hpp"

namespace olsub::oracle {

enum class TermLanguage {
  /// Variables, top, bot, meet, join and the given symbols.
  Lattice,
  /// Lattice plus Not.
  Ortho,
  /// Lattice plus negated-variable leaves (the pseudo-negation-normal shapes).
  Extended,
};

/// Every term of size <= max_size exactly once, ordered by size and then by
/// construction order. Meets and joins are built from binary combinations, so
/// n-ary flattened terms appear once. Practical ceiling: max_size 8.
std::vector<TermId> enumerate_terms(TermUniverse& u, const std::vector<std::string>& vars,
                                    const std::vector<SymbolId>& symbols, std::size_t max_size,
                                    TermLanguage language);

/// A smallest term of `candidates` provably equivalent to `t` (axiom-free),
/// or `t` itself if no candidate is smaller.
TermId min_equivalent(const TermUniverse& u, TermId t, const std::vector<TermId>& candidates,
                      entail::Logic logic = entail::Logic::Ortho);

}  // namespace olsub::oracle
