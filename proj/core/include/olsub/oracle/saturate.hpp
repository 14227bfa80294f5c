#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "olsub/axioms.hpp"
#include "olsub/entail.hpp"
#include "olsub/term.hpp"

namespace olsub::oracle {

/// Least set of sequents over the subterm closure of the goal terms and the
/// axioms that is closed under every rule of the cut-restricted calculus,
/// computed by semi-naive forward chaining (each new fact fires only the rule
/// instances it is a premise of).
///
/// Negated variables and dual-symbol applications are first rewritten to
/// Not nodes over the base signature, so the saturation only knows Not.
class Saturation {
 public:
  Saturation(TermUniverse& u, std::span<const TermId> goal_terms, const AxiomSet& axioms);

  /// Whether the sequent over goal subterms is derivable. Sequents mentioning
  /// terms outside the closure are reported as not derivable.
  bool contains(entail::Sequent s) const;
  bool provable(TermId lhs, TermId rhs) const { return contains(entail::Sequent::leq(lhs, rhs)); }

  std::size_t term_count() const noexcept { return terms_.size(); }
  std::size_t fact_count() const noexcept { return facts_; }

 private:
  using Slot = std::uint32_t;  // closure index * 2 + side

  void run(const AxiomSet& lowered);
  void add(Slot a, Slot b);
  bool has(Slot a, Slot b) const { return bits_[a * slots_ + b] != 0; }
  void fire(Slot p, Slot g);

  std::vector<TermId> terms_;
  std::unordered_map<TermId, std::uint32_t> index_;
  std::unordered_map<TermId, TermId> lowered_;
  std::vector<std::vector<std::uint32_t>> parents_;
  std::vector<std::pair<Slot, Slot>> axiom_slots_;  // (U^R, V^L)
  // F-rule instances indexed by each premise sequent.
  struct Congruence {
    Slot conclusion_l;
    Slot conclusion_r;
    std::vector<std::pair<Slot, Slot>> premises;
  };
  std::vector<Congruence> congruences_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> congruence_index_;

  const TermUniverse& u_;
  std::size_t slots_ = 0;
  std::vector<char> bits_;
  std::vector<std::pair<Slot, Slot>> queue_;
  std::size_t facts_ = 0;
};

inline Saturation saturate(TermUniverse& u, std::span<const TermId> goal_terms,
                           const AxiomSet& axioms) {
  return Saturation(u, goal_terms, axioms);
}

}  // namespace olsub::oracle
