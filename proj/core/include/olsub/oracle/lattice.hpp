#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "olsub/term.hpp"

namespace olsub::oracle {

using Element = std::uint8_t;

/// Finite bounded lattice given by its order; meet and join tables are
/// derived. With a complement table the ortholattice laws are verified
/// exhaustively at construction.
class FiniteLattice {
 public:
  /// `leq[a][b]` is a <= b. Throws std::invalid_argument if the order is not a
  /// bounded lattice or the complement breaks an ortholattice law.
  FiniteLattice(std::string name, std::vector<std::string> labels,
                std::vector<std::vector<bool>> leq,
                std::optional<std::vector<Element>> complement = std::nullopt);

  static FiniteLattice boolean2();
  /// Hexagon 0 < a < b < 1, 0 < ~b < ~a < 1: orthocomplemented, not modular.
  static FiniteLattice o6();
  static FiniteLattice boolean4();
  /// Diamond and pentagon; no complement (bounded lattices only).
  static FiniteLattice m3();
  static FiniteLattice n5();

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(Element e) const { return labels_[e]; }
  Element bottom() const noexcept { return bottom_; }
  Element top() const noexcept { return top_; }
  bool leq(Element a, Element b) const { return leq_[a * size() + b]; }
  Element meet(Element a, Element b) const { return meet_[a * size() + b]; }
  Element join(Element a, Element b) const { return join_[a * size() + b]; }
  bool has_complement() const noexcept { return complement_.has_value(); }
  /// Throws MissingInterpretation when the lattice has no complement.
  Element complement(Element a) const;
  /// Some triple with x & (y | z) != (x & y) | (x & z).
  bool is_distributive() const;

 private:
  bool ortho_laws_hold() const;

  std::string name_;
  std::vector<std::string> labels_;
  std::vector<char> leq_;
  std::vector<Element> meet_;
  std::vector<Element> join_;
  std::optional<std::vector<Element>> complement_;
  Element bottom_ = 0;
  Element top_ = 0;
};

/// Function table over a finite carrier; argument tuple (a0, a1, ...) is
/// stored at a0 + a1*n + a2*n^2 + ...
struct FnTable {
  std::size_t arity = 0;
  std::vector<Element> values;

  Element operator()(const FiniteLattice& m, std::span<const Element> args) const;
};

/// Whether the table is monotone / antitone / unconstrained per argument as
/// the variances say, checked on every single-argument step of the carrier.
bool satisfies_v10(const FiniteLattice& m, const FnTable& table,
                   const std::vector<Variance>& variances);

/// Random table repaired to respect `variances`: each entry becomes the join
/// of the random values at all argument tuples below it in the variance
/// order (or, chosen at random, the meet over the tuples above it). Arguments
/// compare covariantly, contravariantly or for equality.
FnTable sample_monotone_table(const FiniteLattice& m, const std::vector<Variance>& variances,
                              std::mt19937_64& rng);

struct Interpretation {
  std::map<std::string, Element, std::less<>> valuation;
  std::map<SymbolId, FnTable> tables;
};

/// A random valuation of `vars` plus a sampled table for every non-dual
/// symbol of the universe.
Interpretation random_interpretation(const TermUniverse& u, const FiniteLattice& m,
                                     const std::vector<std::string>& vars, std::mt19937_64& rng);

/// Homomorphic evaluation; NegVar and Not use the complement and a dual
/// symbol evaluates as the complement of its base symbol's table. Throws
/// MissingInterpretation for an unassigned variable or symbol.
Element eval(const TermUniverse& u, TermId t, const FiniteLattice& m, const Interpretation& i);

}  // namespace olsub::oracle
