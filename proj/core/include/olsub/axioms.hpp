#pragma once

#include <cstddef>
#include <vector>

#include "olsub/term.hpp"

namespace olsub {

/// Ground inequation lhs <= rhs.
struct Axiom {
  TermId lhs;
  TermId rhs;
  friend bool operator==(const Axiom&, const Axiom&) = default;
};

/// Finite presentation. An equation is stored as its two inequations.
class AxiomSet {
 public:
  AxiomSet() = default;
  AxiomSet(std::initializer_list<Axiom> axioms) : axioms_(axioms) {}

  void add_leq(TermId lhs, TermId rhs) { axioms_.push_back({lhs, rhs}); }
  void add_eq(TermId lhs, TermId rhs) {
    add_leq(lhs, rhs);
    add_leq(rhs, lhs);
  }

  bool contains(TermId lhs, TermId rhs) const {
    for (const Axiom& a : axioms_) {
      if (a.lhs == lhs && a.rhs == rhs) return true;
    }
    return false;
  }

  std::size_t size() const noexcept { return axioms_.size(); }
  bool empty() const noexcept { return axioms_.empty(); }
  const Axiom& operator[](std::size_t i) const { return axioms_[i]; }
  auto begin() const noexcept { return axioms_.begin(); }
  auto end() const noexcept { return axioms_.end(); }

 private:
  std::vector<Axiom> axioms_;
};

}  // namespace olsub
