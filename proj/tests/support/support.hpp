#pragma once

// Hand-rolled generators shared by the unit and acceptance suites.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "olsub/axioms.hpp"
#include "olsub/term.hpp"

namespace olsub::testing {

struct GenConfig {
  std::vector<std::string> vars{"x", "y", "z"};
  std::vector<SymbolId> symbols;
  bool negation = true;   // Not nodes
  bool neg_vars = false;  // NegVar leaves
  bool constants = true;  // top / bot leaves
};

/// Uniform-ish random terms of an exact size, built top-down by splitting
/// the remaining size between operands.
class TermGen {
 public:
  TermGen(TermUniverse& u, std::uint64_t seed, GenConfig cfg = {});

  TermId exact(std::size_t size);
  TermId up_to(std::size_t max_size);
  TermId leaf();
  AxiomSet axioms(std::size_t max_count, std::size_t max_size);
  std::mt19937_64& rng() { return rng_; }
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

 private:
  TermUniverse& u_;
  std::mt19937_64 rng_;
  GenConfig cfg_;
};

/// Rewrites one randomly chosen position of `t` by one instance of a law of
/// ortholattices (either direction where the shape allows), so the result is
/// equivalent to `t`. Returns the law's name through `law` when given.
TermId apply_random_law(TermUniverse& u, TermId t, TermGen& gen, std::string* law = nullptr);

/// Declares F : (+) and Arrow : (-,+) and returns them.
std::vector<SymbolId> declare_standard_symbols(TermUniverse& u);

}  // namespace olsub::testing
